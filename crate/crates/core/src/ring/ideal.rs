use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Elem, Ring, RingElement};
use crate::error::{Error, Result};

/// A principal ideal, stored through a canonical divisor of the modulus
/// (or a canonical generator when the ring is a cover). The zero ideal of a
/// quotient `A/(m)` has divisor `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ideal {
    ring: Ring,
    divisor: Elem,
}

impl Ideal {
    pub(crate) fn from_cover_elem(ring: &Ring, e: &Elem) -> Ideal {
        let c = ring.cover();
        let divisor = if ring.is_finite() { c.gcd(e, ring.modulus()) } else { c.canonical(e) };
        Ideal { ring: ring.clone(), divisor }
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::from_cover_elem(ring, &ring.zero())
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::from_cover_elem(ring, &ring.cover().one())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Canonical divisor in the cover; `cover / (divisor) ≅ R/I`.
    pub fn divisor(&self) -> &Elem {
        &self.divisor
    }

    /// Canonical generator as an element of the ring.
    pub fn generator(&self) -> Elem {
        self.ring.reduce(&self.divisor)
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.divisor)
    }

    pub fn is_unit(&self) -> bool {
        self.ring.cover().is_unit(&self.divisor)
    }

    pub fn power(&self, k: u32) -> Ideal {
        let c = self.ring.cover();
        if !self.ring.is_finite() {
            return Ideal::from_cover_elem(&self.ring, &c.pow(&self.divisor, k));
        }
        let mut acc = c.one();
        for _ in 0..k {
            acc = c.gcd(&c.mul(&acc, &self.divisor), self.ring.modulus());
        }
        Ideal { ring: self.ring.clone(), divisor: acc }
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let c = self.ring.cover();
        Ideal::from_cover_elem(&self.ring, &c.mul(&self.divisor, &other.divisor))
    }

    pub fn is_idempotent(&self) -> bool {
        self.power(2) == *self
    }

    pub fn contains(&self, e: &Elem) -> bool {
        let c = self.ring.cover();
        if self.ring.is_finite() {
            c.divides(&self.divisor, &c.gcd(e, self.ring.modulus()))
        } else {
            c.divides(&self.divisor, e)
        }
    }

    /// First `k ≥ 1` with `I^(k+1) = I^k`. Always exists for finite rings;
    /// over a cover only the zero and unit ideals stabilize.
    pub fn stabilization_index(&self) -> Option<u32> {
        if !self.ring.is_finite() {
            return (self.is_zero() || self.is_unit()).then_some(1);
        }
        let mut k = 1;
        let mut cur = self.clone();
        loop {
            let next = cur.product(self);
            if next == cur {
                return Some(k);
            }
            cur = next;
            k += 1;
        }
    }

    /// `|R/I|` when finite.
    pub fn quotient_size(&self) -> Option<u128> {
        self.ring.cover().quotient_size(&self.divisor)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.generator())
    }
}

pub fn ideal_of(ring: &Ring, gens: &[RingElement]) -> Result<Ideal> {
    let c = ring.cover();
    let mut g = c.zero();
    for e in gens {
        if e.ring != *ring {
            return Err(Error::NotInRing { elem: e.rep.to_string(), ring: ring.to_string() });
        }
        g = c.gcd(&g, &e.rep);
    }
    Ok(Ideal::from_cover_elem(ring, &g))
}

pub fn ideal_power(ideal: &Ideal, k: u32) -> Ideal {
    ideal.power(k)
}

/// `ann(a) = {r : r a = 0}`.
pub fn annihilator(ring: &Ring, a: &Elem) -> Ideal {
    let c = ring.cover();
    if !ring.is_finite() {
        return if c.is_zero(a) { Ideal::unit(ring) } else { Ideal::zero(ring) };
    }
    let m = ring.modulus();
    let g = c.gcd(a, m);
    Ideal::from_cover_elem(ring, &c.exact_div(m, &g))
}

/// Every ideal of a finite ring, one per canonical divisor of the modulus.
pub fn all_ideals(ring: &Ring) -> Result<Vec<Ideal>> {
    if !ring.is_finite() {
        return Err(Error::NotFinite(ring.to_string()));
    }
    let c = ring.cover();
    Ok(c.divisors(ring.modulus())
        .into_iter()
        .map(|d| Ideal { ring: ring.clone(), divisor: d })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalStructure {
    pub is_local: bool,
    pub max_ideal: Option<Ideal>,
}

pub fn local_structure(ring: &Ring) -> LocalStructure {
    if !ring.is_finite() {
        return LocalStructure { is_local: false, max_ideal: None };
    }
    let factors = ring.cover().factorize(ring.modulus());
    match factors.as_slice() {
        [(prime, _)] => LocalStructure {
            is_local: true,
            max_ideal: Some(Ideal::from_cover_elem(ring, prime)),
        },
        _ => LocalStructure { is_local: false, max_ideal: None },
    }
}

/// `(x, y)` with `ann(x) = (y)` and `ann(y) = (x)` in a local ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactZeroDivisorPair {
    pub ring: Ring,
    pub x: Elem,
    pub y: Elem,
}

/// All exact zero-divisor pairs up to unit multiples, with `x` running over
/// canonical generators of the proper nonzero ideals.
pub fn exact_zero_divisor_pairs(ring: &Ring) -> Result<Vec<ExactZeroDivisorPair>> {
    if !ring.is_finite() {
        return Err(Error::NotFinite(ring.to_string()));
    }
    let local = local_structure(ring);
    let Some(max) = local.max_ideal else {
        return Err(Error::NotLocal(ring.to_string()));
    };
    let mut out = Vec::new();
    for ideal in all_ideals(ring)? {
        if ideal.is_zero() || ideal.is_unit() {
            continue;
        }
        let x = ideal.generator();
        debug_assert!(max.contains(&x));
        let ann_x = annihilator(ring, &x);
        let y = ann_x.generator();
        if annihilator(ring, &y) == ideal {
            out.push(ExactZeroDivisorPair { ring: ring.clone(), x, y });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i128) -> Ring {
        Ring::integers_mod(n)
    }

    fn int(n: i128) -> Elem {
        Elem::int(n)
    }

    #[test]
    fn ideal_generation() {
        let r = z(12);
        let i = ideal_of(&r, &[r.int(8), r.int(6)]).unwrap();
        assert_eq!(i.generator(), int(2));
        assert!(ideal_of(&r, &[]).unwrap().is_zero());
        assert_eq!(ideal_of(&r, &[r.int(16)]).unwrap().generator(), int(4));
        let other = z(7);
        assert!(ideal_of(&r, &[other.int(1)]).is_err());
    }

    #[test]
    fn powers_in_z12() {
        let r = z(12);
        let four = ideal_of(&r, &[r.int(4)]).unwrap();
        assert_eq!(four.power(2), four);
        assert!(four.is_idempotent());
        let two = ideal_of(&r, &[r.int(2)]).unwrap();
        assert_eq!(two.power(2).generator(), int(4));
        assert_eq!(two.power(0), Ideal::unit(&r));
        assert_eq!(two.stabilization_index(), Some(2));
        assert_eq!(four.stabilization_index(), Some(1));
    }

    #[test]
    fn annihilators() {
        assert_eq!(annihilator(&z(9), &int(3)).generator(), int(3));
        assert!(annihilator(&Ring::integers(), &int(2)).is_zero());
        let r = Ring::poly_mod(2, &[0, 0, 0, 1]).unwrap();
        let t = r.cover().var();
        assert_eq!(annihilator(&r, &t).generator(), r.cover().pow(&t, 2));
        assert!(annihilator(&z(12), &int(0)).is_unit());
        assert!(annihilator(&z(12), &int(5)).is_zero());
    }

    #[test]
    fn locality() {
        let l = local_structure(&z(9));
        assert!(l.is_local);
        assert_eq!(l.max_ideal.unwrap().generator(), int(3));
        assert!(!local_structure(&z(12)).is_local);
        let r = Ring::poly_mod(2, &[0, 0, 0, 1]).unwrap();
        assert_eq!(local_structure(&r).max_ideal.unwrap().generator(), r.cover().var());
        assert!(!local_structure(&Ring::integers()).is_local);
    }

    #[test]
    fn exact_pairs() {
        let pairs = exact_zero_divisor_pairs(&z(9)).unwrap();
        assert!(pairs.iter().any(|p| p.x == int(3) && p.y == int(3)));
        let r = Ring::poly_mod(2, &[0, 0, 0, 1]).unwrap();
        let c = r.cover();
        let (t, t2) = (c.var(), c.pow(&c.var(), 2));
        let pairs = exact_zero_divisor_pairs(&r).unwrap();
        assert!(pairs.iter().any(|p| p.x == t && p.y == t2));
        assert!(pairs.iter().any(|p| p.x == t2 && p.y == t));
        assert!(exact_zero_divisor_pairs(&z(3)).unwrap().is_empty());
        assert!(matches!(exact_zero_divisor_pairs(&z(12)), Err(Error::NotLocal(_))));
        assert!(matches!(exact_zero_divisor_pairs(&Ring::integers()), Err(Error::NotFinite(_))));
    }
}
