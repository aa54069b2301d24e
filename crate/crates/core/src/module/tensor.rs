use super::{simplify_lifted, FpModule, Morphism};
use crate::error::Result;
use crate::linalg::Mat;

/// `M ⊗ N` on a simplified presentation; `to` and `from` relate its
/// generators to the pure tensors `e_i ⊗ f_j` (index `i·gens(N) + j`).
#[derive(Clone, Debug)]
pub struct TensorModule {
    pub module: FpModule,
    pub left: FpModule,
    pub right: FpModule,
    pub to: Mat,
    pub from: Mat,
}

pub fn tensor_module(left: &FpModule, right: &FpModule) -> Result<TensorModule> {
    left.same_ring(right)?;
    let ring = left.ring();
    let c = ring.cover();
    let (gm, gn) = (left.gens(), right.gens());
    let rels = left
        .lifted()
        .kron(&Mat::identity(c, gn))
        .hcat(&Mat::identity(c, gm).kron(&right.lifted()));
    let s = simplify_lifted(ring, &rels, None);
    Ok(TensorModule { module: s.module, left: left.clone(), right: right.clone(), to: s.to, from: s.from })
}

/// `u ⊗ v` between two tensor modules.
pub fn tensor_map(u: &Morphism, v: &Morphism, from: &TensorModule, to: &TensorModule) -> Morphism {
    assert!(from.left == u.domain && from.right == v.domain, "tensor source mismatch");
    assert!(to.left == u.codomain && to.right == v.codomain, "tensor target mismatch");
    let mat = to.to.mul(&u.matrix.kron(&v.matrix)).mul(&from.from);
    Morphism::unchecked(&from.module, &to.module, &mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Elem, Ring};

    #[test]
    fn cyclic_tensor() {
        let zz = Ring::integers();
        let z4 = FpModule::cyclic_elem(&zz, &Elem::int(4));
        let z6 = FpModule::cyclic_elem(&zz, &Elem::int(6));
        let t = tensor_module(&z4, &z6).unwrap();
        assert!(t.module.is_isomorphic(&FpModule::cyclic_elem(&zz, &Elem::int(2))).unwrap());
        let f = FpModule::free(&zz, 2);
        let t = tensor_module(&f, &z6).unwrap();
        assert_eq!(t.module.cardinality(), Some(36));
    }

    #[test]
    fn tensoring_a_scalar() {
        let r = Ring::integers_mod(12);
        let m = FpModule::free(&r, 1);
        let n = FpModule::cyclic_elem(&r, &Elem::int(6));
        let t = tensor_module(&m, &n).unwrap();
        let f = tensor_map(&Morphism::scalar(&m, &Elem::int(2)), &Morphism::identity(&n), &t, &t);
        let parts = crate::module::morphism_parts(&f);
        assert_eq!(parts.cokernel.cardinality(), Some(2));
    }
}
