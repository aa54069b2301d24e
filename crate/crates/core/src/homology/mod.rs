//! Free resolutions, Ext and Tor, local (co)homology as limits of Ext/Tor
//! towers, a Čech-style oracle and homological dimensions.

mod complex;
mod dims;
mod local;
mod resolution;

pub use complex::{ext, ext_all, tor, tor_all};
pub use dims::{
    dimension_bounds, flat_dimension, projective_dimension, DegreeProfile, DimBound,
    DimensionReport,
};
pub use local::{
    cech_h, local_cohomology, local_cohomology_profile, local_homology, local_homology_profile,
    CechResult,
};
pub use resolution::{free_resolution, lift_chain_map, Resolution};
