use super::{
    lift_relations, reduce_mat, reduce_vec, relations_among, simplify_lifted, FpModule, Morphism,
};
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, Mat, SnfResult};
use crate::ring::{Elem, Ring};

/// `Hom(source, target)` as a module, together with the coordinates needed
/// to move between its elements and actual morphisms.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub module: FpModule,
    pub source: FpModule,
    pub target: FpModule,
    /// Column `k`: the vectorized matrix of the map named by generator `k`.
    basis: Mat,
    span: SnfResult,
}

impl HomModule {
    /// The morphism represented by a coordinate vector.
    pub fn decode(&self, coords: &[Elem]) -> Morphism {
        let v = self.basis.mul_vec(coords);
        let mat = Mat::unvectorize(self.source.cover(), self.target.gens(), self.source.gens(), &v);
        Morphism::unchecked(&self.source, &self.target, &mat)
    }

    /// Coordinates of a morphism with the right ends.
    pub fn encode(&self, f: &Morphism) -> Result<Vec<Elem>> {
        if f.domain != self.source || f.codomain != self.target {
            return Err(Error::Shape("morphism does not belong to this Hom".into()));
        }
        let x = self
            .span
            .solve(&f.matrix.vectorize())
            .ok_or_else(|| Error::Invariant("morphism outside Hom span".into()))?;
        Ok(reduce_vec(self.module.ring(), &x[..self.module.gens()]))
    }

    /// One morphism per generator of the Hom module.
    pub fn generators(&self) -> Vec<Morphism> {
        let n = self.module.gens();
        (0..n)
            .map(|k| {
                let mut e = vec![self.module.cover().zero(); n];
                e[k] = self.module.cover().one();
                self.decode(&e)
            })
            .collect()
    }
}

pub fn hom_module(source: &FpModule, target: &FpModule) -> Result<HomModule> {
    source.same_ring(target)?;
    let ring = source.ring();
    let c = ring.cover();
    let (lm, ln) = (source.lifted(), target.lifted());
    let (gm, gn) = (source.gens(), target.gens());
    let (rm, rn) = (lm.cols(), ln.cols());
    // unknowns: vec(F) (gn·gm) then vec(X) (rn·rm); constraint F·LM = LN·X
    let fvars = gn * gm;
    let mut sys = Mat::zeros(c, gn * rm, fvars + rn * rm);
    for col in 0..rm {
        for i in 0..gn {
            let row = i + gn * col;
            for j in 0..gm {
                sys[(row, i + gn * j)] = lm[(j, col)].clone();
            }
            for t in 0..rn {
                sys[(row, fvars + t + rn * col)] = c.neg(&ln[(i, t)]);
            }
        }
    }
    let sols = reduce_mat(ring, &smith_normal_form(&sys).kernel().top_rows(fvars));
    let null_cols: Vec<Vec<Elem>> = (0..gm)
        .flat_map(|j| (0..rn).map(move |t| (j, t)))
        .map(|(j, t)| {
            let mut v = vec![c.zero(); fvars];
            for i in 0..gn {
                v[i + gn * j] = ln[(i, t)].clone();
            }
            v
        })
        .collect();
    let null = Mat::from_cols(c, fvars, &null_cols);
    let rels = relations_among(ring, &sols, &null);
    let s = simplify_lifted(ring, &lift_relations(ring, &rels), None);
    let basis = reduce_mat(ring, &sols.mul(&s.from));
    let span = smith_normal_form(&basis.hcat(&null).hcat(&modulus_block(ring, fvars)));
    Ok(HomModule { module: s.module, source: source.clone(), target: target.clone(), basis, span })
}

fn modulus_block(ring: &Ring, n: usize) -> Mat {
    if ring.is_finite() {
        Mat::scalar(ring.cover(), n, ring.modulus())
    } else {
        Mat::zeros(ring.cover(), n, 0)
    }
}

/// `Hom(f, N)`: precomposition with `f: A → B`, as a map `Hom(B,N) → Hom(A,N)`.
pub fn hom_pre(f: &Morphism, from: &HomModule, to: &HomModule) -> Result<Morphism> {
    if from.source != f.codomain || to.source != f.domain || from.target != to.target {
        return Err(Error::Shape("Hom modules do not match the morphism".into()));
    }
    induced(from, to, |g| g.matrix.mul(&f.matrix))
}

/// `Hom(M, f)`: postcomposition with `f: A → B`, as `Hom(M,A) → Hom(M,B)`.
pub fn hom_post(f: &Morphism, from: &HomModule, to: &HomModule) -> Result<Morphism> {
    if from.target != f.domain || to.target != f.codomain || from.source != to.source {
        return Err(Error::Shape("Hom modules do not match the morphism".into()));
    }
    induced(from, to, |g| f.matrix.mul(&g.matrix))
}

fn induced(from: &HomModule, to: &HomModule, act: impl Fn(&Morphism) -> Mat) -> Result<Morphism> {
    let c = from.module.cover();
    let cols = from
        .generators()
        .iter()
        .map(|g| {
            let image = Morphism::unchecked(&to.source, &to.target, &act(g));
            to.encode(&image)
        })
        .collect::<Result<Vec<_>>>()?;
    let mat = Mat::from_cols(c, to.module.gens(), &cols);
    Ok(Morphism::unchecked(&from.module, &to.module, &mat))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    #[test]
    fn hom_into_ring() {
        let r = Ring::integers_mod(12);
        let q = FpModule::cyclic_elem(&r, &Elem::int(4));
        let h = hom_module(&q, &FpModule::free(&r, 1)).unwrap();
        assert!(h.module.is_isomorphic(&FpModule::cyclic_elem(&r, &Elem::int(4))).unwrap());
        for g in h.generators() {
            assert!(Morphism::new(&g.domain, &g.codomain, &g.matrix).is_ok());
        }
    }

    #[test]
    fn hom_over_integers() {
        let zz = Ring::integers();
        let z4 = FpModule::cyclic_elem(&zz, &Elem::int(4));
        let z6 = FpModule::cyclic_elem(&zz, &Elem::int(6));
        let h = hom_module(&z4, &z6).unwrap();
        assert_eq!(h.module.cardinality(), Some(2));
        assert!(hom_module(&z4, &FpModule::free(&zz, 1)).unwrap().module.is_zero());
        let h = hom_module(&FpModule::free(&zz, 2), &z6).unwrap();
        assert_eq!(h.module.cardinality(), Some(36));
    }

    #[test]
    fn encode_decode_round_trip() {
        let r = Ring::integers_mod(12);
        let m = FpModule::free(&r, 1);
        let h = hom_module(&m, &m).unwrap();
        let f = Morphism::scalar(&m, &Elem::int(5));
        let x = h.encode(&f).unwrap();
        assert!(h.decode(&x).equals(&f));
    }

    #[test]
    fn precomposition() {
        let r = Ring::integers_mod(12);
        let m = FpModule::free(&r, 1);
        let three = Morphism::scalar(&m, &Elem::int(3));
        let h = hom_module(&m, &m).unwrap();
        let pre = hom_pre(&three, &h, &h).unwrap();
        let parts = super::super::morphism_parts(&pre);
        assert_eq!(parts.cokernel.cardinality(), Some(3));
    }
}
