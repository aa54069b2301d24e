//! Finitely presented modules over a ring `R = A/(m)`.
//!
//! A module is the cokernel of its presentation matrix: rows index
//! generators, columns are relations. Internally every computation runs over
//! the Euclidean cover `A`, with the relations `m·e_i` appended (the lift);
//! since `R`-modules are exactly the `A`-modules killed by `m`, kernels,
//! images, Hom and tensor products agree over `A` and over `R`.

mod hom;
mod morphism;
mod ops;
mod tensor;

use std::fmt;
use std::sync::{Arc, OnceLock};

pub use hom::{hom_module, hom_post, hom_pre, HomModule};
pub use morphism::{morphism_parts, Morphism, MorphismParts, Submodule};
pub use ops::{
    classify, colon_submodule, ideal_multiple, quotient_by_ideal, restrict_scalars,
    Classification,
};
pub use tensor::{tensor_map, tensor_module, TensorModule};

use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, Mat, SnfResult};
use crate::ring::{Cover, Elem, Ideal, Ring};

#[derive(Clone, Debug)]
pub struct FpModule {
    ring: Ring,
    relations: Mat,
    torsion: Vec<Elem>,
    free_rank: usize,
    lift_snf: OnceLock<Arc<SnfResult>>,
}

impl PartialEq for FpModule {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.relations == other.relations
    }
}

impl Eq for FpModule {}

/// A module rebuilt on a smaller diagonal presentation, with the generator
/// change in both directions (`to · from ≡ id` modulo relations).
#[derive(Clone, Debug)]
pub struct Simplified {
    pub module: FpModule,
    /// New generators in terms of old: `new_gens × old_gens`.
    pub to: Mat,
    /// Old generators in terms of new: `old_gens × new_gens`.
    pub from: Mat,
}

impl FpModule {
    /// The cokernel of `matrix` (rows = generators, columns = relations).
    pub fn from_presentation(ring: &Ring, matrix: &Mat) -> Result<FpModule> {
        let c = ring.cover();
        if matrix.cover() != c {
            return Err(Error::RingMismatch(format!("{:?}", matrix.cover()), ring.to_string()));
        }
        for i in 0..matrix.rows() {
            for j in 0..matrix.cols() {
                if !c.contains(&matrix[(i, j)]) {
                    return Err(Error::NotInRing {
                        elem: matrix[(i, j)].to_string(),
                        ring: ring.to_string(),
                    });
                }
            }
        }
        Ok(FpModule::build(ring, matrix.map(|_, e| ring.reduce(e))))
    }

    pub(crate) fn build(ring: &Ring, relations: Mat) -> FpModule {
        let mut module = FpModule {
            ring: ring.clone(),
            relations,
            torsion: Vec::new(),
            free_rank: 0,
            lift_snf: OnceLock::new(),
        };
        let snf = module.lift_snf().clone();
        let c = ring.cover();
        module.torsion = snf.diagonal().into_iter().filter(|d| !c.is_unit(d)).collect();
        module.free_rank = module.gens() - snf.rank;
        module
    }

    pub fn free(ring: &Ring, rank: usize) -> FpModule {
        FpModule::build(ring, Mat::zeros(ring.cover(), rank, 0))
    }

    pub fn zero(ring: &Ring) -> FpModule {
        FpModule::free(ring, 0)
    }

    /// `R/I`.
    pub fn cyclic(ideal: &Ideal) -> FpModule {
        let ring = ideal.ring();
        FpModule::build(ring, Mat::from_rows(ring.cover(), vec![vec![ideal.generator()]]))
    }

    /// `R/(d)` for a cover element `d`.
    pub fn cyclic_elem(ring: &Ring, d: &Elem) -> FpModule {
        FpModule::build(ring, Mat::from_rows(ring.cover(), vec![vec![ring.reduce(d)]]))
    }

    pub fn direct_sum(&self, other: &FpModule) -> Result<FpModule> {
        self.same_ring(other)?;
        Ok(FpModule::build(&self.ring, self.relations.block_diag(&other.relations)))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn cover(&self) -> Cover {
        self.ring.cover()
    }

    pub fn gens(&self) -> usize {
        self.relations.rows()
    }

    pub fn relations(&self) -> &Mat {
        &self.relations
    }

    /// Invariant factors of the lift: canonical nonunit divisors, each
    /// dividing the next. Zero diagonal entries are counted by
    /// [`FpModule::free_rank`] instead.
    pub fn invariant_factors(&self) -> &[Elem] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_zero(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    pub fn cardinality(&self) -> Option<u128> {
        if self.free_rank > 0 {
            return None;
        }
        let c = self.cover();
        self.torsion.iter().try_fold(1u128, |acc, d| acc.checked_mul(c.quotient_size(d)?))
    }

    pub fn is_isomorphic(&self, other: &FpModule) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self.torsion == other.torsion && self.free_rank == other.free_rank)
    }

    pub(crate) fn same_ring(&self, other: &FpModule) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        Ok(())
    }

    /// Relations over the cover, including `m·e_i` for a quotient ring.
    pub fn lifted(&self) -> Mat {
        lift_relations(&self.ring, &self.relations)
    }

    pub(crate) fn lift_snf(&self) -> &Arc<SnfResult> {
        self.lift_snf.get_or_init(|| Arc::new(smith_normal_form(&self.lifted())))
    }

    /// Whether a vector of generator coefficients is zero in the module.
    pub fn is_zero_vector(&self, v: &[Elem]) -> bool {
        self.lift_snf().solve(v).is_some()
    }

    /// Same module on its invariant-factor presentation.
    pub fn simplify(&self) -> Simplified {
        simplify_lifted(&self.ring, &self.lifted(), Some(self.lift_snf()))
    }

    pub fn describe(&self) -> String {
        let c = self.cover();
        let base = match c {
            Cover::Integers => "Z".to_string(),
            Cover::PolyOver(p) => format!("GF({p})[x]"),
        };
        let mut parts: Vec<String> = self
            .torsion
            .iter()
            .map(|d| match c {
                Cover::Integers => format!("Z/{d}"),
                Cover::PolyOver(_) => format!("{base}/({d})"),
            })
            .collect();
        parts.extend(std::iter::repeat(base).take(self.free_rank));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for FpModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coker {}", self.relations)
    }
}

pub(crate) fn lift_relations(ring: &Ring, relations: &Mat) -> Mat {
    let c = ring.cover();
    if !ring.is_finite() {
        return relations.clone();
    }
    let m = ring.modulus();
    let g = relations.rows();
    let diagonal = relations.cols() == g
        && (0..g).all(|i| {
            (0..g).all(|j| i == j || c.is_zero(&relations[(i, j)]))
                && (c.is_zero(&relations[(i, i)]) || c.divides(&relations[(i, i)], m))
        });
    if diagonal {
        let mut out = relations.clone();
        for i in 0..g {
            if c.is_zero(&out[(i, i)]) {
                out[(i, i)] = m.clone();
            }
        }
        return out;
    }
    relations.hcat(&Mat::scalar(c, g, m))
}

pub(crate) fn reduce_mat(ring: &Ring, m: &Mat) -> Mat {
    if ring.is_finite() {
        m.map(|_, e| ring.reduce(e))
    } else {
        m.clone()
    }
}

pub(crate) fn reduce_vec(ring: &Ring, v: &[Elem]) -> Vec<Elem> {
    v.iter().map(|e| ring.reduce(e)).collect()
}

/// Diagonalizes the cokernel of a lifted relation matrix, dropping unit
/// factors.
pub(crate) fn simplify_lifted(ring: &Ring, lifted: &Mat, snf: Option<&Arc<SnfResult>>) -> Simplified {
    let owned;
    let snf = match snf {
        Some(s) => s.as_ref(),
        None => {
            owned = smith_normal_form(lifted);
            &owned
        }
    };
    let c = ring.cover();
    let g = lifted.rows();
    let kept: Vec<usize> =
        (0..g).filter(|&i| i >= snf.rank || !c.is_unit(&snf.d[(i, i)])).collect();
    let diag: Vec<Elem> = kept
        .iter()
        .map(|&i| if i < snf.rank { ring.reduce(&snf.d[(i, i)]) } else { c.zero() })
        .collect();
    let module = FpModule::build(ring, Mat::diagonal(c, &diag));
    Simplified {
        module,
        to: reduce_mat(ring, &snf.u.select_rows(&kept)),
        from: reduce_mat(ring, &snf.u_inv.select_cols(&kept)),
    }
}

/// Relations among generator columns `gens` of a module with lifted
/// relations `lifted`: the `z` with `gens · z` zero in the module.
pub(crate) fn relations_among(ring: &Ring, gens: &Mat, lifted: &Mat) -> Mat {
    let s = gens.cols();
    let k = smith_normal_form(&gens.hcat(lifted)).kernel();
    reduce_mat(ring, &k.top_rows(s))
}

/// `R`-module generators of `{x ∈ R^c : B x = 0}`.
pub(crate) fn kernel_generators(ring: &Ring, b: &Mat) -> Mat {
    let c = b.cols();
    let lifted = lift_relations(ring, &Mat::zeros(ring.cover(), b.rows(), 0));
    let k = smith_normal_form(&b.hcat(&lifted)).kernel();
    prune_generators(ring, &k.top_rows(c))
}

/// A small generating set for the submodule of `R^n` spanned by the columns
/// of `gens`.
pub(crate) fn prune_generators(ring: &Ring, gens: &Mat) -> Mat {
    let n = gens.rows();
    let cv = ring.cover();
    if !ring.is_finite() {
        let snf = smith_normal_form(gens);
        // column span of gens = column span of U^{-1} D
        let cols: Vec<Vec<Elem>> = (0..snf.rank)
            .map(|i| snf.u_inv.col(i).iter().map(|e| cv.mul(e, &snf.d[(i, i)])).collect())
            .collect();
        return Mat::from_cols(cv, n, &cols);
    }
    let m = ring.modulus();
    let snf = smith_normal_form(&gens.hcat(&Mat::scalar(cv, n, m)));
    let cols: Vec<Vec<Elem>> = (0..snf.rank)
        .filter(|&i| snf.d[(i, i)] != *m)
        .map(|i| snf.u_inv.col(i).iter().map(|e| ring.reduce(&cv.mul(e, &snf.d[(i, i)]))).collect())
        .collect();
    Mat::from_cols(cv, n, &cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i128) -> Ring {
        Ring::integers_mod(n)
    }

    #[test]
    fn presentation_examples() {
        let zz = Ring::integers();
        let m = FpModule::from_presentation(&zz, &Mat::from_ints(Cover::Integers, &[&[2, 0], &[0, 3]]))
            .unwrap();
        assert_eq!(m.invariant_factors(), &[Elem::int(6)]);
        let z6 = FpModule::cyclic_elem(&zz, &Elem::int(6));
        assert!(m.is_isomorphic(&z6).unwrap());

        let r = z(12);
        let free = FpModule::free(&r, 1);
        assert_eq!(free.invariant_factors(), &[Elem::int(12)]);
        assert_eq!(free.free_rank(), 0);
        let q = FpModule::from_presentation(&r, &Mat::from_ints(Cover::Integers, &[&[4]])).unwrap();
        assert_eq!(q.cardinality(), Some(4));
        assert!(FpModule::zero(&r).invariant_factors().is_empty());

        let m = FpModule::from_presentation(&zz, &Mat::from_ints(Cover::Integers, &[&[6, 4]])).unwrap();
        assert_eq!(m.invariant_factors(), &[Elem::int(2)]);
        assert_eq!(m.free_rank(), 0);
    }

    #[test]
    fn isomorphism_by_invariants() {
        let zz = Ring::integers();
        let z2 = FpModule::cyclic_elem(&zz, &Elem::int(2));
        let z3 = FpModule::cyclic_elem(&zz, &Elem::int(3));
        let z4 = FpModule::cyclic_elem(&zz, &Elem::int(4));
        let z6 = FpModule::cyclic_elem(&zz, &Elem::int(6));
        assert!(z6.is_isomorphic(&z2.direct_sum(&z3).unwrap()).unwrap());
        assert!(!z4.is_isomorphic(&z2.direct_sum(&z2).unwrap()).unwrap());
        assert!(z4.is_isomorphic(&z4).unwrap());
        assert!(z4.is_isomorphic(&FpModule::free(&z(4), 1)).is_err());
    }

    #[test]
    fn entries_must_live_in_the_ring() {
        let r = Ring::poly_over(2).unwrap();
        let bad = Mat::from_ints(Cover::Integers, &[&[1]]);
        assert!(FpModule::from_presentation(&r, &bad).is_err());
    }

    #[test]
    fn simplify_preserves_type() {
        let r = z(12);
        let m = FpModule::from_presentation(&r, &Mat::from_ints(Cover::Integers, &[&[2, 4], &[6, 3]]))
            .unwrap();
        let s = m.simplify();
        assert!(s.module.is_isomorphic(&m).unwrap());
        assert_eq!(s.to.cols(), m.gens());
        assert_eq!(s.from.rows(), m.gens());
    }
}
