use std::fmt;

use serde::Serialize;

use super::complex::tor_all;
use super::local::{local_cohomology_profile, local_homology_profile};
use super::resolution::free_resolution;
use crate::error::{Error, Result};
use crate::module::{classify, FpModule};
use crate::ring::{Elem, Ideal};

/// A homological dimension known up to a degree window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DimBound {
    /// The zero module.
    NegInfinity,
    Exact(u32),
    /// Larger than every degree examined; possibly infinite.
    AtLeast(u32),
}

impl fmt::Display for DimBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimBound::NegInfinity => write!(f, "-inf"),
            DimBound::Exact(n) => write!(f, "{n}"),
            DimBound::AtLeast(n) => write!(f, ">={n} (possibly inf)"),
        }
    }
}

/// Smallest `n ≤ top` whose syzygy is projective.
pub fn projective_dimension(m: &FpModule, top: u32) -> Result<DimBound> {
    if m.is_zero() {
        return Ok(DimBound::NegInfinity);
    }
    let res = free_resolution(m, top as usize + 1);
    for n in 0..=top {
        if classify(&res.syzygy(n as usize))?.projective {
            return Ok(DimBound::Exact(n));
        }
    }
    Ok(DimBound::AtLeast(top + 1))
}

/// Cyclic test modules detecting flatness: `R/(d)` for every divisor of the
/// modulus, or over a cover for every divisor of an invariant factor of `m`.
fn test_modules(m: &FpModule) -> Vec<FpModule> {
    let ring = m.ring();
    let c = ring.cover();
    let mut divisors: Vec<Elem> = if ring.is_finite() {
        c.divisors(ring.modulus())
    } else {
        m.invariant_factors().iter().flat_map(|d| c.divisors(d)).collect()
    };
    divisors.sort_by(|a, b| c.cmp_canonical(a, b));
    divisors.dedup();
    let mut out: Vec<FpModule> = divisors.iter().map(|d| FpModule::cyclic_elem(ring, d)).collect();
    if !ring.is_finite() {
        out.push(FpModule::free(ring, 1));
    }
    out
}

/// Smallest `n ≤ top` with `Tor_(n+1)(M, T) = 0` for every cyclic `T`.
pub fn flat_dimension(m: &FpModule, top: u32) -> Result<DimBound> {
    if m.is_zero() {
        return Ok(DimBound::NegInfinity);
    }
    let tests = test_modules(m);
    let tors = tests
        .iter()
        .map(|t| tor_all(top as usize + 1, m, t))
        .collect::<Result<Vec<_>>>()?;
    for n in 0..=top as usize {
        if tors.iter().all(|groups| groups[n + 1].is_zero()) {
            return Ok(DimBound::Exact(n as u32));
        }
    }
    Ok(DimBound::AtLeast(top + 1))
}

/// Per-degree verdict: `Some(true)` nonzero, `Some(false)` zero, `None`
/// when the tower did not settle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub module: String,
    pub nonzero: Vec<Option<bool>>,
}

impl DegreeProfile {
    /// Largest nonzero degree in the window.
    pub fn top(&self) -> DimBound {
        match self.nonzero.iter().rposition(|v| *v == Some(true)) {
            Some(d) => DimBound::Exact(d as u32),
            None => DimBound::NegInfinity,
        }
    }

    pub fn determinate(&self) -> bool {
        self.nonzero.iter().all(Option::is_some)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub degree: u32,
    pub pd: DimBound,
    pub fd: DimBound,
    pub cd_profile: Vec<DegreeProfile>,
    pub hd_profile: Vec<DegreeProfile>,
    /// Suprema over the family only: lower bounds for the ring-wide values.
    pub cd_family: DimBound,
    pub hd_family: DimBound,
    pub determinate: bool,
}

fn sup(profiles: &[DegreeProfile]) -> DimBound {
    profiles.iter().map(DegreeProfile::top).fold(DimBound::NegInfinity, |acc, b| match (acc, b) {
        (DimBound::Exact(a), DimBound::Exact(b)) => DimBound::Exact(a.max(b)),
        (DimBound::NegInfinity, x) | (x, DimBound::NegInfinity) => x,
        (x, _) => x,
    })
}

/// `pd(R/I)`, `fd(R/I)` and the local (co)homology profiles of a family.
pub fn dimension_bounds(i: &Ideal, family: &[FpModule], top: u32, k_max: u32) -> Result<DimensionReport> {
    if family.is_empty() {
        return Err(Error::Unsupported("empty module family".into()));
    }
    let quotient = FpModule::cyclic(i);
    let pd = projective_dimension(&quotient, top)?;
    let fd = flat_dimension(&quotient, top)?;
    let mut cd_profile = Vec::new();
    let mut hd_profile = Vec::new();
    for m in family {
        let verdicts = |rs: Vec<crate::functors::LimitResult>| -> Vec<Option<bool>> {
            rs.iter().map(|r| r.value.as_ref().map(|v| !v.is_zero())).collect()
        };
        let h = local_cohomology_profile(top as usize, i, m, k_max)?;
        cd_profile.push(DegreeProfile { module: m.describe(), nonzero: verdicts(h) });
        let h = local_homology_profile(top as usize, i, m, k_max)?;
        hd_profile.push(DegreeProfile { module: m.describe(), nonzero: verdicts(h) });
    }
    let determinate = cd_profile.iter().chain(&hd_profile).all(DegreeProfile::determinate);
    Ok(DimensionReport {
        degree: top,
        pd,
        fd,
        cd_family: sup(&cd_profile),
        hd_family: sup(&hd_profile),
        cd_profile,
        hd_profile,
        determinate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::DEFAULT_KMAX;
    use crate::ring::{ideal_of, Ring};

    #[test]
    fn idempotent_in_z12() {
        let r = Ring::integers_mod(12);
        let i = ideal_of(&r, &[r.int(4)]).unwrap();
        let fam = vec![FpModule::free(&r, 1), FpModule::cyclic_elem(&r, &Elem::int(6))];
        let d = dimension_bounds(&i, &fam, 4, DEFAULT_KMAX).unwrap();
        assert_eq!(d.pd, DimBound::Exact(0));
        assert_eq!(d.fd, DimBound::Exact(0));
        assert_eq!(d.cd_family, DimBound::Exact(0));
        assert_eq!(d.hd_family, DimBound::Exact(0));
        assert!(d.determinate);
    }

    #[test]
    fn periodic_quotient_never_terminates() {
        let r = Ring::integers_mod(4);
        let i = ideal_of(&r, &[r.int(2)]).unwrap();
        for n in [1, 3, 5] {
            assert_eq!(projective_dimension(&FpModule::cyclic(&i), n).unwrap(), DimBound::AtLeast(n + 1));
        }
    }

    #[test]
    fn integers() {
        let zz = Ring::integers();
        let i = ideal_of(&zz, &[zz.int(2)]).unwrap();
        let q = FpModule::cyclic(&i);
        assert_eq!(projective_dimension(&q, 4).unwrap(), DimBound::Exact(1));
        assert_eq!(flat_dimension(&q, 4).unwrap(), DimBound::Exact(1));
        assert_eq!(projective_dimension(&FpModule::zero(&zz), 4).unwrap(), DimBound::NegInfinity);
    }
}
