//! Rings of the form `A` or `A/(m)` with `A` the integers or `GF(p)[x]`.

mod cover;
mod ideal;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use cover::{is_prime, Cover, Elem, Poly};
pub use ideal::{
    all_ideals, annihilator, exact_zero_divisor_pairs, ideal_of, ideal_power, local_structure,
    ExactZeroDivisorPair, Ideal, LocalStructure,
};

use crate::error::{Error, Result};

/// A cover ring or its quotient by a canonical modulus; modulus zero means
/// no quotient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ring {
    cover: Cover,
    modulus: Elem,
}

/// An element together with the ring it lives in; `rep` is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    pub ring: Ring,
    pub rep: Elem,
}

impl Ring {
    pub fn new(cover: Cover, modulus: Elem) -> Result<Ring> {
        if let Cover::PolyOver(p) = cover {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
        }
        if !cover.contains(&modulus) {
            return Err(Error::MalformedModulus(modulus.to_string()));
        }
        Ok(Ring { cover, modulus: cover.canonical(&modulus) })
    }

    pub fn integers() -> Ring {
        Ring { cover: Cover::Integers, modulus: Elem::int(0) }
    }

    pub fn integers_mod(n: i128) -> Ring {
        Ring { cover: Cover::Integers, modulus: Elem::int(n.abs()) }
    }

    pub fn poly_over(p: u64) -> Result<Ring> {
        Ring::new(Cover::PolyOver(p), Elem::Poly(Poly::default()))
    }

    /// `GF(p)[x]/(f)` with `f` given by little-endian coefficients.
    pub fn poly_mod(p: u64, coeffs: &[u64]) -> Result<Ring> {
        let f = Cover::PolyOver(p).reduce_coeffs(coeffs);
        Ring::new(Cover::PolyOver(p), f)
    }

    pub fn cover(&self) -> Cover {
        self.cover
    }

    pub fn modulus(&self) -> &Elem {
        &self.modulus
    }

    pub fn is_finite(&self) -> bool {
        !self.cover.is_zero(&self.modulus)
    }

    pub fn cardinality(&self) -> Option<u128> {
        self.cover.quotient_size(&self.modulus)
    }

    /// The underlying cover viewed as a ring (modulus zero).
    pub fn cover_ring(&self) -> Ring {
        Ring { cover: self.cover, modulus: self.cover.zero() }
    }

    /// Canonical representative of a cover element in this ring.
    pub fn reduce(&self, e: &Elem) -> Elem {
        if self.is_finite() {
            self.cover.rem(e, &self.modulus)
        } else {
            e.clone()
        }
    }

    pub fn zero(&self) -> Elem {
        self.cover.zero()
    }

    pub fn one(&self) -> Elem {
        self.reduce(&self.cover.one())
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        self.reduce(&self.cover.add(a, b))
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.reduce(&self.cover.sub(a, b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.reduce(&self.cover.mul(a, b))
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        self.cover.is_zero(&self.reduce(a))
    }

    pub fn element(&self, e: &Elem) -> Result<RingElement> {
        if !self.cover.contains(e) {
            return Err(Error::NotInRing { elem: e.to_string(), ring: self.to_string() });
        }
        Ok(RingElement { ring: self.clone(), rep: self.reduce(e) })
    }

    pub fn int(&self, n: i64) -> RingElement {
        let e = self.cover.from_i64(n);
        RingElement { ring: self.clone(), rep: self.reduce(&e) }
    }

    /// All canonical elements of a finite ring.
    pub fn elements(&self) -> Result<Vec<Elem>> {
        if !self.is_finite() {
            return Err(Error::NotFinite(self.to_string()));
        }
        Ok(self.cover.residues(&self.modulus))
    }

    /// `self / (x)` for an element `x` of this ring.
    pub fn quotient_by(&self, x: &Elem) -> Ring {
        let m = self.cover.gcd(x, &self.modulus);
        Ring { cover: self.cover, modulus: m }
    }

    pub fn parse_element(&self, text: &str) -> Result<RingElement> {
        let e = parse_elem(self.cover, text)?;
        self.element(&e)
    }
}

impl Cover {
    fn reduce_coeffs(self, coeffs: &[u64]) -> Elem {
        let Cover::PolyOver(p) = self else { panic!("not a polynomial cover") };
        let mut c: Vec<u64> = coeffs.iter().map(|&c| c % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        Elem::Poly(Poly(c))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.cover {
            Cover::Integers if self.is_finite() => write!(f, "Z/{}", self.modulus),
            Cover::Integers => write!(f, "Z"),
            Cover::PolyOver(p) if self.is_finite() => write!(f, "GF({p})[x]/({})", self.modulus),
            Cover::PolyOver(p) => write!(f, "GF({p})[x]"),
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

/// Parses an integer or a polynomial expression in `x`.
pub fn parse_elem(cover: Cover, text: &str) -> Result<Elem> {
    let bad = || Error::MalformedElement(text.to_string());
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad());
    }
    match cover {
        Cover::Integers => s.parse::<i128>().map(Elem::int).map_err(|_| bad()),
        Cover::PolyOver(_) => {
            let mut terms = Vec::new();
            let mut cur = String::new();
            for (i, ch) in s.chars().enumerate() {
                if (ch == '+' || ch == '-') && i > 0 {
                    terms.push(std::mem::take(&mut cur));
                }
                cur.push(ch);
            }
            terms.push(cur);
            let mut acc = cover.zero();
            for term in terms {
                let (neg, body) = match term.strip_prefix('-') {
                    Some(b) => (true, b),
                    None => (false, term.strip_prefix('+').unwrap_or(&term)),
                };
                if body.is_empty() {
                    return Err(bad());
                }
                let (coef, power) = match body.find('x') {
                    None => (body.parse::<i64>().map_err(|_| bad())?, 0u32),
                    Some(pos) => {
                        let c = body[..pos].trim_end_matches('*');
                        let c = if c.is_empty() { 1 } else { c.parse::<i64>().map_err(|_| bad())? };
                        let rest = &body[pos + 1..];
                        let k = if rest.is_empty() {
                            1
                        } else {
                            rest.strip_prefix('^').ok_or_else(bad)?.parse::<u32>().map_err(|_| bad())?
                        };
                        (c, k)
                    }
                };
                let mut t = cover.mul(&cover.from_i64(coef), &cover.pow(&cover.var(), power));
                if neg {
                    t = cover.neg(&t);
                }
                acc = cover.add(&acc, &t);
            }
            Ok(acc)
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(text: &str) -> Result<Ring> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let (base, modulus) = match s.split_once('/') {
            Some((b, m)) => (b, Some(m)),
            None => (s.as_str(), None),
        };
        let cover = if base == "Z" {
            Cover::Integers
        } else if let Some(rest) = base.strip_prefix("GF(") {
            let (p, tail) = rest.split_once(')').ok_or_else(|| Error::UnsupportedCover(text.into()))?;
            if tail != "[x]" {
                return Err(Error::UnsupportedCover(text.into()));
            }
            let p: u64 = p.parse().map_err(|_| Error::UnsupportedCover(text.into()))?;
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            Cover::PolyOver(p)
        } else {
            return Err(Error::UnsupportedCover(text.into()));
        };
        let modulus = match modulus {
            None => cover.zero(),
            Some(m) => {
                let inner = m
                    .strip_prefix('(')
                    .and_then(|m| m.strip_suffix(')'))
                    .unwrap_or(m);
                parse_elem(cover, inner).map_err(|_| Error::MalformedModulus(m.to_string()))?
            }
        };
        Ring::new(cover, modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let r: Ring = "Z/12".parse().unwrap();
        assert_eq!(r, Ring::integers_mod(12));
        let z: Ring = "Z".parse().unwrap();
        assert_eq!(z, Ring::integers());
        assert!(!z.is_finite());
        let g: Ring = "GF(2)[x]/(x^3+x+1)".parse().unwrap();
        assert_eq!(g, Ring::poly_mod(2, &[1, 1, 0, 1]).unwrap());
        assert_eq!(g.cardinality(), Some(8));
    }

    #[test]
    fn printed_form_reparses() {
        for s in ["Z", "Z/12", "GF(2)[x]", "GF(5)[x]/(x^2+4x+1)", "GF(3)[x]/(x^3)"] {
            let r: Ring = s.parse().unwrap();
            assert_eq!(r.to_string().parse::<Ring>().unwrap(), r);
            assert_eq!(r.to_string(), s);
        }
    }

    #[test]
    fn rejects_bad_rings() {
        assert!(matches!("Q".parse::<Ring>(), Err(Error::UnsupportedCover(_))));
        assert!(matches!("GF(4)[x]".parse::<Ring>(), Err(Error::NotPrime(4))));
        assert!(matches!("Z/(x)".parse::<Ring>(), Err(Error::MalformedModulus(_))));
    }

    #[test]
    fn non_monic_modulus_is_normalized() {
        let r: Ring = "GF(3)[x]/(2x^2+1)".parse().unwrap();
        assert_eq!(r.to_string(), "GF(3)[x]/(x^2+2)");
        assert_eq!("Z/-6".parse::<Ring>().unwrap(), Ring::integers_mod(6));
    }

    #[test]
    fn element_parsing() {
        let r = Ring::poly_mod(2, &[0, 0, 0, 1]).unwrap();
        let t = r.parse_element("x^4 + x").unwrap();
        // x^4 = x * x^3 = 0
        assert_eq!(t.rep, Cover::PolyOver(2).var());
        assert_eq!(Ring::integers_mod(12).parse_element("16").unwrap().rep, Elem::int(4));
        assert!(Ring::integers().parse_element("x").is_err());
    }
}
