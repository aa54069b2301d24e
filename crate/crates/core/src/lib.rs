pub mod error;
pub mod functors;
pub mod homology;
pub mod lab;
pub mod linalg;
pub mod module;
pub mod ring;
pub mod session;

pub use error::{Error, Result};

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/rings-and-ideals.md")]
    pub mod rings_and_ideals {}
    #[doc = include_str!("../../../book/src/modules.md")]
    pub mod modules {}
    #[doc = include_str!("../../../book/src/limit-functors.md")]
    pub mod limit_functors {}
    #[doc = include_str!("../../../book/src/ext-tor-local-cohomology.md")]
    pub mod ext_tor_local_cohomology {}
    #[doc = include_str!("../../../book/src/theorem-audits.md")]
    pub mod theorem_audits {}
    #[doc = include_str!("../../../book/src/sessions.md")]
    pub mod sessions {}
}
