use super::{FpModule, Morphism, Submodule};
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, Mat};
use crate::ring::{all_ideals, annihilator, Ideal, Ring, RingElement};

fn check_ring(m: &FpModule, i: &Ideal) -> Result<()> {
    if m.ring() != i.ring() {
        return Err(Error::RingMismatch(m.ring().to_string(), i.ring().to_string()));
    }
    Ok(())
}

/// `(0 :_M I) = {v ∈ M : I v = 0}`.
pub fn colon_submodule(m: &FpModule, i: &Ideal) -> Result<Submodule> {
    check_ring(m, i)?;
    let g = m.gens();
    let c = m.cover();
    let a = Mat::scalar(c, g, &i.generator());
    let k = smith_normal_form(&a.hcat(&m.lifted())).kernel();
    Ok(Submodule::generated(m, &k.top_rows(g)))
}

/// `I M`.
pub fn ideal_multiple(i: &Ideal, m: &FpModule) -> Result<Submodule> {
    check_ring(m, i)?;
    Ok(Submodule::generated(m, &Mat::scalar(m.cover(), m.gens(), &i.generator())))
}

/// `M / I M` with its projection.
pub fn quotient_by_ideal(m: &FpModule, i: &Ideal) -> Result<(FpModule, Morphism)> {
    Ok(ideal_multiple(i, m)?.quotient())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    /// `None` when the ring is infinite and the Baer test is not run.
    pub injective: Option<bool>,
    pub projective: bool,
    pub flat: bool,
}

pub fn classify(m: &FpModule) -> Result<Classification> {
    let ring = m.ring();
    let c = ring.cover();
    if !ring.is_finite() {
        let free = m.invariant_factors().is_empty();
        return Ok(Classification { injective: None, projective: free, flat: free });
    }
    let modulus = ring.modulus();
    let projective = m
        .invariant_factors()
        .iter()
        .all(|d| c.is_unit(&c.gcd(d, &c.exact_div(modulus, d))));
    let mut injective = true;
    for ideal in all_ideals(ring)? {
        let a = ideal.generator();
        let killed = colon_submodule(m, &annihilator(ring, &a))?;
        if !killed.same_as(&ideal_multiple(&ideal, m)?) {
            injective = false;
            break;
        }
    }
    Ok(Classification { injective: Some(injective), projective, flat: projective })
}

/// Views an `R`-module as an `S`-module along `S → S/(x) = R`.
pub fn restrict_scalars(m: &FpModule, s: &Ring, x: &RingElement) -> Result<FpModule> {
    let r = m.ring();
    if x.ring != *s || s.cover() != r.cover() || s.quotient_by(&x.rep) != *r {
        return Err(Error::QuotientMismatch {
            ring: r.to_string(),
            cover: s.to_string(),
            x: x.rep.to_string(),
        });
    }
    let rels = m.lifted().hcat(&Mat::scalar(s.cover(), m.gens(), &x.rep));
    FpModule::from_presentation(s, &rels.map(|_, e| s.reduce(e)))
}
