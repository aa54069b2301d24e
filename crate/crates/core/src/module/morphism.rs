use super::{lift_relations, reduce_mat, relations_among, FpModule};
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, Mat};
use crate::ring::Elem;

/// A module map given by the images of the domain generators (columns).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub domain: FpModule,
    pub codomain: FpModule,
    pub matrix: Mat,
}

impl Morphism {
    /// Checks that every relation of the domain maps to zero.
    pub fn new(domain: &FpModule, codomain: &FpModule, matrix: &Mat) -> Result<Morphism> {
        domain.same_ring(codomain)?;
        if matrix.shape() != (codomain.gens(), domain.gens()) {
            return Err(Error::Shape(format!(
                "expected {}x{}, got {}x{}",
                codomain.gens(),
                domain.gens(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        let images = matrix.mul(domain.relations());
        for j in 0..images.cols() {
            if !codomain.is_zero_vector(&images.col(j)) {
                return Err(Error::IllDefinedMorphism);
            }
        }
        Ok(Morphism::unchecked(domain, codomain, matrix))
    }

    pub(crate) fn unchecked(domain: &FpModule, codomain: &FpModule, matrix: &Mat) -> Morphism {
        Morphism {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: reduce_mat(domain.ring(), matrix),
        }
    }

    pub fn identity(m: &FpModule) -> Morphism {
        Morphism::unchecked(m, m, &Mat::identity(m.cover(), m.gens()))
    }

    pub fn zero(domain: &FpModule, codomain: &FpModule) -> Morphism {
        Morphism::unchecked(domain, codomain, &Mat::zeros(domain.cover(), codomain.gens(), domain.gens()))
    }

    /// Multiplication by a scalar on `m`.
    pub fn scalar(m: &FpModule, s: &Elem) -> Morphism {
        Morphism::unchecked(m, m, &Mat::scalar(m.cover(), m.gens(), s))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Morphism) -> Result<Morphism> {
        if self.codomain != next.domain {
            return Err(Error::Shape("composition of non-adjacent maps".into()));
        }
        Ok(Morphism::unchecked(&self.domain, &next.codomain, &next.matrix.mul(&self.matrix)))
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::Shape("sum of maps with different ends".into()));
        }
        Ok(Morphism::unchecked(&self.domain, &self.codomain, &self.matrix.add(&other.matrix)))
    }

    pub fn is_zero(&self) -> bool {
        (0..self.matrix.cols()).all(|j| self.codomain.is_zero_vector(&self.matrix.col(j)))
    }

    pub fn equals(&self, other: &Morphism) -> bool {
        self.domain == other.domain
            && self.codomain == other.codomain
            && (0..self.matrix.cols())
                .all(|j| self.codomain.is_zero_vector(&self.matrix.sub(&other.matrix).col(j)))
    }

    pub fn apply(&self, v: &[Elem]) -> Vec<Elem> {
        let ring = self.domain.ring();
        self.matrix.mul_vec(v).iter().map(|e| ring.reduce(e)).collect()
    }

    pub fn is_injective(&self) -> bool {
        morphism_parts(self).kernel.module().is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        morphism_parts(self).cokernel.is_zero()
    }

    pub fn is_isomorphism(&self) -> bool {
        let parts = morphism_parts(self);
        parts.kernel.module().is_zero() && parts.cokernel.is_zero()
    }
}

/// A submodule of `ambient`, carried as an injective map from its own
/// presentation.
#[derive(Clone, Debug)]
pub struct Submodule {
    pub ambient: FpModule,
    pub inclusion: Morphism,
}

impl Submodule {
    /// The submodule generated by the columns of `gens`.
    pub fn generated(ambient: &FpModule, gens: &Mat) -> Submodule {
        let ring = ambient.ring();
        let gens = reduce_mat(ring, gens);
        let rels = relations_among(ring, &gens, &ambient.lifted());
        let raw = FpModule::build(ring, rels);
        let s = raw.simplify();
        let images = reduce_mat(ring, &gens.mul(&s.from));
        Submodule {
            ambient: ambient.clone(),
            inclusion: Morphism::unchecked(&s.module, ambient, &images),
        }
    }

    pub fn module(&self) -> &FpModule {
        &self.inclusion.domain
    }

    pub fn generators(&self) -> &Mat {
        &self.inclusion.matrix
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Submodule) -> bool {
        let span = smith_normal_form(&self.generators().hcat(&self.ambient.lifted()));
        let g = other.generators();
        (0..g.cols()).all(|j| span.solve(&g.col(j)).is_some())
    }

    pub fn contains_vector(&self, v: &[Elem]) -> bool {
        self.coords(v).is_some()
    }

    /// Coordinates of an ambient vector in the submodule's own generators.
    pub fn coords(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        let n = self.module().gens();
        let x = smith_normal_form(&self.generators().hcat(&self.ambient.lifted())).solve(v)?;
        Some(x[..n].iter().map(|e| self.ambient.ring().reduce(e)).collect())
    }

    pub fn same_as(&self, other: &Submodule) -> bool {
        self.contains(other) && other.contains(self)
    }

    pub fn is_everything(&self) -> bool {
        self.same_as(&Submodule::generated(
            &self.ambient,
            &Mat::identity(self.ambient.cover(), self.ambient.gens()),
        ))
    }

    /// `ambient / self` with the projection, on the ambient generators.
    pub fn quotient(&self) -> (FpModule, Morphism) {
        let q = FpModule::build(self.ambient.ring(), self.ambient.relations().hcat(self.generators()));
        let p = Morphism::unchecked(&self.ambient, &q, &Mat::identity(q.cover(), q.gens()));
        (q, p)
    }
}

#[derive(Clone, Debug)]
pub struct MorphismParts {
    pub kernel: Submodule,
    pub image: Submodule,
    pub cokernel: FpModule,
    pub projection: Morphism,
}

pub fn morphism_parts(f: &Morphism) -> MorphismParts {
    let ring = f.domain.ring();
    let cover = ring.cover();
    let g = f.domain.gens();
    let target = lift_relations(ring, f.codomain.relations());
    let k = smith_normal_form(&f.matrix.hcat(&target)).kernel();
    let kernel = Submodule::generated(&f.domain, &k.top_rows(g));
    let image = Submodule::generated(&f.codomain, &f.matrix);
    let cokernel = FpModule::build(ring, f.codomain.relations().hcat(&f.matrix));
    let projection =
        Morphism::unchecked(&f.codomain, &cokernel, &Mat::identity(cover, f.codomain.gens()));
    MorphismParts { kernel, image, cokernel, projection }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Cover, Ring};

    #[test]
    fn multiplication_by_three_on_z12() {
        let r = Ring::integers_mod(12);
        let m = FpModule::free(&r, 1);
        let f = Morphism::scalar(&m, &Elem::int(3));
        let parts = morphism_parts(&f);
        let z3 = FpModule::cyclic_elem(&r, &Elem::int(3));
        let z4 = FpModule::cyclic_elem(&r, &Elem::int(4));
        assert!(parts.kernel.module().is_isomorphic(&z3).unwrap());
        assert!(parts.image.module().is_isomorphic(&z4).unwrap());
        assert!(parts.cokernel.is_isomorphic(&z3).unwrap());
        assert!(!f.is_injective());
    }

    #[test]
    fn ill_defined_maps_are_rejected() {
        let zz = Ring::integers();
        let z2 = FpModule::cyclic_elem(&zz, &Elem::int(2));
        let z3 = FpModule::cyclic_elem(&zz, &Elem::int(3));
        let one = Mat::from_ints(Cover::Integers, &[&[1]]);
        assert_eq!(Morphism::new(&z2, &z3, &one), Err(Error::IllDefinedMorphism));
        let z4 = FpModule::cyclic_elem(&zz, &Elem::int(4));
        let two = Mat::from_ints(Cover::Integers, &[&[2]]);
        let f = Morphism::new(&z2, &z4, &two).unwrap();
        assert!(f.is_injective());
        assert!(!f.is_surjective());
    }

    #[test]
    fn composition_and_equality() {
        let r = Ring::integers_mod(12);
        let m = FpModule::free(&r, 1);
        let f = Morphism::scalar(&m, &Elem::int(4));
        let g = Morphism::scalar(&m, &Elem::int(3));
        assert!(f.then(&g).unwrap().is_zero());
        assert!(Morphism::scalar(&m, &Elem::int(13)).equals(&Morphism::identity(&m)));
        assert!(Morphism::scalar(&m, &Elem::int(5)).is_isomorphism());
    }

    #[test]
    fn submodule_order() {
        let r = Ring::integers_mod(12);
        let m = FpModule::free(&r, 1);
        let two = Submodule::generated(&m, &Mat::from_ints(Cover::Integers, &[&[2]]));
        let four = Submodule::generated(&m, &Mat::from_ints(Cover::Integers, &[&[4]]));
        let ten = Submodule::generated(&m, &Mat::from_ints(Cover::Integers, &[&[10]]));
        assert!(two.contains(&four));
        assert!(!four.contains(&two));
        assert!(two.same_as(&ten));
        assert_eq!(two.module().cardinality(), Some(6));
        let (q, _) = two.quotient();
        assert_eq!(q.cardinality(), Some(2));
    }
}
