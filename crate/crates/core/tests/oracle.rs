mod common;

use common::{hom_signature, signature_of, tensor_signature, Enumerated};
use lochom::linalg::Mat;
use lochom::module::{hom_module, tensor_module, FpModule};
use lochom::ring::Ring;

#[test]
fn hand_checked_cardinalities() {
    let r = Ring::integers_mod(12);
    let m = FpModule::from_presentation(&r, &Mat::from_ints(r.cover(), &[&[2, 0], &[0, 3]])).unwrap();
    assert_eq!(Enumerated::of(&m).size(), 6);
    let z4 = FpModule::cyclic_elem(&r, &r.int(4).rep);
    let z6 = FpModule::cyclic_elem(&r, &r.int(6).rep);
    // Hom(Z/4, Z/6) = Z/2 and Z/4 ⊗ Z/6 = Z/2.
    assert_eq!(Enumerated::of(&hom_module(&z4, &z6).unwrap().module).size(), 2);
    assert_eq!(hom_signature(&z4, &z6), signature_of(&hom_module(&z4, &z6).unwrap().module));
    assert_eq!(tensor_signature(&z4, &z6), signature_of(&tensor_module(&z4, &z6).unwrap().module));
    assert_eq!(Enumerated::of(&tensor_module(&z4, &z6).unwrap().module).size(), 2);
}

#[test]
fn polynomial_quotient_enumeration() {
    let r = Ring::poly_mod(2, &[0, 0, 1]).unwrap();
    let x = r.parse_element("x").unwrap().rep;
    let m = FpModule::cyclic_elem(&r, &x);
    assert_eq!(Enumerated::of(&m).size(), 2);
    assert_eq!(Enumerated::of(&FpModule::free(&r, 2)).size(), 16);
}

#[test]
fn presentation_matches_enumeration() {
    let s = common::enumeration_oracle();
    assert!(s.comparisons > 5000, "only {} comparisons", s.comparisons);
    assert!(s.failures.is_empty(), "{:#?}", &s.failures[..s.failures.len().min(10)]);
}
