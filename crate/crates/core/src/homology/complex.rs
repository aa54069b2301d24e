use super::resolution::{free_resolution, Resolution};
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, Mat, SnfResult};
use crate::module::{
    lift_relations, prune_generators, reduce_mat, relations_among, simplify_lifted, FpModule,
    Morphism,
};
use crate::ring::{Elem, Ring};

/// `(Z + K + B) / (K + B)` inside a free cover module, where `K` holds the
/// ambient relations and `B` the boundaries.
#[derive(Clone, Debug)]
pub(crate) struct Subquotient {
    pub module: FpModule,
    reps: Mat,
    span: SnfResult,
}

impl Subquotient {
    pub fn new(ring: &Ring, cycles: &Mat, relations: &Mat, boundaries: &Mat) -> Subquotient {
        let denom = relations.hcat(boundaries);
        let rels = relations_among(ring, cycles, &denom);
        let s = simplify_lifted(ring, &lift_relations(ring, &rels), None);
        let reps = reduce_mat(ring, &cycles.mul(&s.from));
        let span = smith_normal_form(&reps.hcat(&denom));
        Subquotient { module: s.module, reps, span }
    }

    fn coords(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        let x = self
            .span
            .solve(v)
            .ok_or_else(|| Error::Invariant("image is not a cycle".into()))?;
        Ok(x[..self.module.gens()].iter().map(|e| self.module.ring().reduce(e)).collect())
    }

    /// The map induced by an ambient matrix sending cycles to cycles.
    pub fn induced(&self, to: &Subquotient, ambient: &Mat) -> Result<Morphism> {
        let c = self.module.cover();
        let images = ambient.mul(&self.reps);
        let cols = (0..images.cols())
            .map(|j| to.coords(&images.col(j)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism::unchecked(&self.module, &to.module, &Mat::from_cols(c, to.module.gens(), &cols)))
    }
}

/// Terms `N^(r_j)` of `Hom(F, N)` or `F ⊗ N`; element `(c, t)` sits at
/// index `t + gens(N)·c`.
fn term_relations(res: &Resolution, n: &FpModule, j: usize) -> Mat {
    Mat::identity(n.cover(), res.rank(j)).kron(&n.lifted())
}

/// Cocycles of `δ : C → C'` modulo the relations of `C'`.
fn cycles(ring: &Ring, map: &Mat, target_relations: &Mat) -> Mat {
    let k = smith_normal_form(&map.hcat(target_relations)).kernel();
    prune_generators(ring, &k.top_rows(map.cols()))
}

/// `δ^j : Hom(F_j, N) → Hom(F_(j+1), N)`.
pub(crate) fn cochain_map(res: &Resolution, n: &FpModule, j: usize) -> Mat {
    res.differential(j + 1).transpose().kron(&Mat::identity(n.cover(), n.gens()))
}

/// `∂_j : F_j ⊗ N → F_(j-1) ⊗ N`.
pub(crate) fn chain_map(res: &Resolution, n: &FpModule, j: usize) -> Mat {
    res.differential(j).kron(&Mat::identity(n.cover(), n.gens()))
}

/// `H^i(Hom(F, N))` for `i ≤ top`; `res` must reach degree `top + 1`.
pub(crate) fn ext_groups(res: &Resolution, n: &FpModule, top: usize) -> Vec<Subquotient> {
    let ring = n.ring();
    (0..=top)
        .map(|i| {
            let z = cycles(ring, &cochain_map(res, n, i), &term_relations(res, n, i + 1));
            let b = if i == 0 {
                Mat::zeros(n.cover(), res.rank(0) * n.gens(), 0)
            } else {
                cochain_map(res, n, i - 1)
            };
            Subquotient::new(ring, &z, &term_relations(res, n, i), &b)
        })
        .collect()
}

/// `H_i(F ⊗ N)` for `i ≤ top`; `res` must reach degree `top + 1`.
pub(crate) fn tor_groups(res: &Resolution, n: &FpModule, top: usize) -> Vec<Subquotient> {
    let ring = n.ring();
    (0..=top)
        .map(|i| {
            let z = if i == 0 {
                Mat::identity(n.cover(), res.rank(0) * n.gens())
            } else {
                cycles(ring, &chain_map(res, n, i), &term_relations(res, n, i - 1))
            };
            Subquotient::new(ring, &z, &term_relations(res, n, i), &chain_map(res, n, i + 1))
        })
        .collect()
}

fn same_ring(m: &FpModule, n: &FpModule) -> Result<()> {
    if m.ring() != n.ring() {
        return Err(Error::RingMismatch(m.ring().to_string(), n.ring().to_string()));
    }
    Ok(())
}

/// `Ext^i(M, N)` for `0 ≤ i ≤ top`.
pub fn ext_all(top: usize, m: &FpModule, n: &FpModule) -> Result<Vec<FpModule>> {
    same_ring(m, n)?;
    let res = free_resolution(m, top + 1);
    Ok(ext_groups(&res, n, top).into_iter().map(|s| s.module).collect())
}

pub fn ext(i: usize, m: &FpModule, n: &FpModule) -> Result<FpModule> {
    Ok(ext_all(i, m, n)?.pop().expect("nonempty"))
}

/// `Tor_i(M, N)` for `0 ≤ i ≤ top`.
pub fn tor_all(top: usize, m: &FpModule, n: &FpModule) -> Result<Vec<FpModule>> {
    same_ring(m, n)?;
    let res = free_resolution(m, top + 1);
    Ok(tor_groups(&res, n, top).into_iter().map(|s| s.module).collect())
}

pub fn tor(i: usize, m: &FpModule, n: &FpModule) -> Result<FpModule> {
    Ok(tor_all(i, m, n)?.pop().expect("nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{hom_module, tensor_module};

    fn cyc(r: &Ring, d: i128) -> FpModule {
        FpModule::cyclic_elem(r, &Elem::int(d))
    }

    #[test]
    fn periodic_ext_and_tor() {
        let r = Ring::integers_mod(4);
        let k = cyc(&r, 2);
        for g in ext_all(6, &k, &k).unwrap() {
            assert_eq!(g.cardinality(), Some(2));
        }
        for g in tor_all(6, &k, &k).unwrap() {
            assert_eq!(g.cardinality(), Some(2));
        }
    }

    #[test]
    fn over_the_integers() {
        let zz = Ring::integers();
        let k = cyc(&zz, 2);
        let e = ext_all(2, &k, &k).unwrap();
        assert_eq!(e[1].cardinality(), Some(2));
        assert!(e[2].is_zero());
        let t = tor_all(2, &k, &k).unwrap();
        assert_eq!(t[1].cardinality(), Some(2));
        assert!(t[2].is_zero());
        let z = FpModule::free(&zz, 1);
        assert!(ext(1, &k, &z).unwrap().is_isomorphic(&k).unwrap());
        assert!(ext(0, &k, &z).unwrap().is_zero());
    }

    #[test]
    fn free_modules_are_acyclic() {
        let r = Ring::integers_mod(12);
        let f = FpModule::free(&r, 1);
        let n = cyc(&r, 6);
        for i in 1..4 {
            assert!(ext(i, &f, &n).unwrap().is_zero());
            assert!(tor(i, &f, &n).unwrap().is_zero());
        }
    }

    #[test]
    fn degree_zero_matches_hom_and_tensor() {
        let r = Ring::integers_mod(12);
        let m = cyc(&r, 4).direct_sum(&cyc(&r, 6)).unwrap();
        let n = cyc(&r, 6);
        let h = hom_module(&m, &n).unwrap().module;
        assert!(ext(0, &m, &n).unwrap().is_isomorphic(&h).unwrap());
        let t = tensor_module(&m, &n).unwrap().module;
        assert!(tor(0, &m, &n).unwrap().is_isomorphic(&t).unwrap());
    }
}
