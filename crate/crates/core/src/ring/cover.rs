//! Euclidean cover arithmetic: the integers and univariate polynomials over a
//! prime field. Every ring the workbench handles is one of these covers or a
//! quotient of one by a single modulus.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Dense polynomial over a prime field, little-endian coefficients, no
/// trailing zeros. The zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Poly(pub Vec<u64>);

impl Poly {
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.0.last().copied().unwrap_or(0)
    }

    fn trim(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }
}

/// An element of a cover ring. Which variant is valid depends on the
/// [`Cover`] the element is used with.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Elem {
    Int(BigInt),
    Poly(Poly),
}

impl Elem {
    /// An integer element.
    pub fn int(n: impl Into<BigInt>) -> Elem {
        Elem::Int(n.into())
    }

    /// The integer value, when it is an integer that fits in `i128`.
    pub fn as_i128(&self) -> Option<i128> {
        match self {
            Elem::Int(n) => n.to_i128(),
            Elem::Poly(_) => None,
        }
    }
}

/// The Euclidean domain underlying a ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Cover {
    Integers,
    PolyOver(u64),
}

fn mod_pow(base: u64, mut exp: u64, p: u64) -> u64 {
    let m = p as u128;
    let mut acc = 1u128;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Cover {
    pub fn zero(self) -> Elem {
        match self {
            Cover::Integers => Elem::Int(BigInt::zero()),
            Cover::PolyOver(_) => Elem::Poly(Poly::default()),
        }
    }

    pub fn one(self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Elem {
        match self {
            Cover::Integers => Elem::int(n),
            Cover::PolyOver(p) => {
                let c = n.rem_euclid(p as i64) as u64;
                Elem::Poly(Poly(vec![c]).trim())
            }
        }
    }

    /// The indeterminate `x`; only meaningful for polynomial covers.
    pub fn var(self) -> Elem {
        match self {
            Cover::Integers => panic!("the integer cover has no indeterminate"),
            Cover::PolyOver(_) => Elem::Poly(Poly(vec![0, 1])),
        }
    }

    pub fn contains(self, e: &Elem) -> bool {
        match (self, e) {
            (Cover::Integers, Elem::Int(_)) => true,
            (Cover::PolyOver(p), Elem::Poly(q)) => {
                q.0.iter().all(|&c| c < p) && q.0.last() != Some(&0)
            }
            _ => false,
        }
    }

    fn int(e: &Elem) -> &BigInt {
        match e {
            Elem::Int(n) => n,
            Elem::Poly(_) => panic!("polynomial used in the integer cover"),
        }
    }

    fn poly(e: &Elem) -> &Poly {
        match e {
            Elem::Poly(q) => q,
            Elem::Int(_) => panic!("integer used in a polynomial cover"),
        }
    }

    pub fn is_zero(self, e: &Elem) -> bool {
        match e {
            Elem::Int(n) => n.is_zero(),
            Elem::Poly(q) => q.0.is_empty(),
        }
    }

    pub fn is_one(self, e: &Elem) -> bool {
        *e == self.one()
    }

    pub fn add(self, a: &Elem, b: &Elem) -> Elem {
        match self {
            Cover::Integers => Elem::Int(Self::int(a) + Self::int(b)),
            Cover::PolyOver(p) => {
                let (a, b) = (Self::poly(a), Self::poly(b));
                let n = a.0.len().max(b.0.len());
                let c = (0..n)
                    .map(|i| {
                        (a.0.get(i).copied().unwrap_or(0) + b.0.get(i).copied().unwrap_or(0)) % p
                    })
                    .collect();
                Elem::Poly(Poly(c).trim())
            }
        }
    }

    pub fn neg(self, a: &Elem) -> Elem {
        match self {
            Cover::Integers => Elem::Int(-Self::int(a)),
            Cover::PolyOver(p) => {
                let c = Self::poly(a).0.iter().map(|&c| (p - c) % p).collect();
                Elem::Poly(Poly(c).trim())
            }
        }
    }

    pub fn sub(self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(self, a: &Elem, b: &Elem) -> Elem {
        match self {
            Cover::Integers => Elem::Int(Self::int(a) * Self::int(b)),
            Cover::PolyOver(p) => {
                let (a, b) = (Self::poly(a), Self::poly(b));
                if a.0.is_empty() || b.0.is_empty() {
                    return self.zero();
                }
                let mut c = vec![0u128; a.0.len() + b.0.len() - 1];
                let m = p as u128;
                for (i, &x) in a.0.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in b.0.iter().enumerate() {
                        c[i + j] = (c[i + j] + x as u128 * y as u128) % m;
                    }
                }
                Elem::Poly(Poly(c.into_iter().map(|v| v as u64).collect()).trim())
            }
        }
    }

    /// Multiply-accumulate `acc + a * b`.
    pub fn mul_add(self, acc: &Elem, a: &Elem, b: &Elem) -> Elem {
        if self.is_zero(a) || self.is_zero(b) {
            return acc.clone();
        }
        self.add(acc, &self.mul(a, b))
    }

    pub fn pow(self, a: &Elem, k: u32) -> Elem {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Euclidean division. For integers the remainder lies in `[0, |b|)`.
    /// Panics on division by zero.
    pub fn div_rem(self, a: &Elem, b: &Elem) -> (Elem, Elem) {
        match self {
            Cover::Integers => {
                let (a, b) = (Self::int(a), Self::int(b));
                assert!(!b.is_zero(), "division by zero");
                let r = a.mod_floor(&b.abs());
                let q = (a - &r) / b;
                (Elem::Int(q), Elem::Int(r))
            }
            Cover::PolyOver(p) => {
                let (a, b) = (Self::poly(a), Self::poly(b));
                let db = b.degree().expect("division by zero");
                let inv = mod_inv(b.lead(), p);
                let mut r = a.0.clone();
                let mut q = vec![0u64; r.len().saturating_sub(db).max(1)];
                while r.len() > db && !r.is_empty() {
                    let shift = r.len() - 1 - db;
                    let c = (*r.last().unwrap() as u128 * inv as u128 % p as u128) as u64;
                    q[shift] = c;
                    for (i, &bc) in b.0.iter().enumerate() {
                        let sub = (c as u128 * bc as u128 % p as u128) as u64;
                        r[shift + i] = (r[shift + i] + p - sub) % p;
                    }
                    while r.last() == Some(&0) {
                        r.pop();
                    }
                }
                (Elem::Poly(Poly(q).trim()), Elem::Poly(Poly(r).trim()))
            }
        }
    }

    pub fn rem(self, a: &Elem, b: &Elem) -> Elem {
        self.div_rem(a, b).1
    }

    pub fn divides(self, d: &Elem, a: &Elem) -> bool {
        if self.is_zero(d) {
            return self.is_zero(a);
        }
        self.is_zero(&self.rem(a, d))
    }

    /// `a / d`, assuming `d` divides `a` exactly.
    pub fn exact_div(self, a: &Elem, d: &Elem) -> Elem {
        let (q, r) = self.div_rem(a, d);
        debug_assert!(self.is_zero(&r), "inexact division");
        q
    }

    /// Size measure used for pivoting: absolute value (saturating), or
    /// degree + 1.
    pub fn norm(self, e: &Elem) -> u128 {
        match e {
            Elem::Int(n) => n.abs().to_u128().unwrap_or(u128::MAX),
            Elem::Poly(q) => q.0.len() as u128,
        }
    }

    pub fn is_unit(self, e: &Elem) -> bool {
        match e {
            Elem::Int(n) => n.abs().is_one(),
            Elem::Poly(q) => q.0.len() == 1,
        }
    }

    pub fn unit_inverse(self, u: &Elem) -> Elem {
        match self {
            Cover::Integers => u.clone(),
            Cover::PolyOver(p) => Elem::Poly(Poly(vec![mod_inv(Self::poly(u).lead(), p)])),
        }
    }

    /// Returns `(c, u)` with `c = u * e` the canonical associate of `e`
    /// (non-negative, or monic) and `u` a unit.
    pub fn normalize(self, e: &Elem) -> (Elem, Elem) {
        match e {
            Elem::Int(n) if n.is_negative() => (Elem::Int(-n), Elem::int(-1)),
            Elem::Int(_) => (e.clone(), Elem::int(1)),
            Elem::Poly(q) => {
                if q.0.is_empty() {
                    return (e.clone(), self.one());
                }
                let Cover::PolyOver(p) = self else { unreachable!() };
                let inv = Elem::Poly(Poly(vec![mod_inv(q.lead(), p)]));
                (self.mul(e, &inv), inv)
            }
        }
    }

    pub fn canonical(self, e: &Elem) -> Elem {
        self.normalize(e).0
    }

    pub fn is_canonical(self, e: &Elem) -> bool {
        self.canonical(e) == *e
    }

    pub fn gcd(self, a: &Elem, b: &Elem) -> Elem {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !self.is_zero(&b) {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.canonical(&a)
    }

    /// Extended gcd: `(g, s, t)` with `s*a + t*b = g`, `g` canonical.
    pub fn xgcd(self, a: &Elem, b: &Elem) -> (Elem, Elem, Elem) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !self.is_zero(&r1) {
            let (q, r) = self.div_rem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        let (g, u) = self.normalize(&r0);
        (g, self.mul(&s0, &u), self.mul(&t0, &u))
    }

    /// `|cover / (d)|`, or `None` when the quotient is infinite.
    pub fn quotient_size(self, d: &Elem) -> Option<u128> {
        if self.is_zero(d) {
            return None;
        }
        match self {
            Cover::Integers => Self::int(d).abs().to_u128(),
            Cover::PolyOver(p) => {
                let deg = Self::poly(d).degree().unwrap() as u32;
                (p as u128).checked_pow(deg)
            }
        }
    }

    /// Canonical residues modulo a nonzero `m`, in a fixed order.
    pub fn residues(self, m: &Elem) -> Vec<Elem> {
        match self {
            Cover::Integers => {
                let n = Self::int(m).abs().to_i128().expect("modulus too large to enumerate");
                (0..n).map(Elem::int).collect()
            }
            Cover::PolyOver(p) => {
                let deg = Self::poly(m).degree().expect("nonzero modulus");
                let total = (p as usize).pow(deg as u32);
                (0..total)
                    .map(|mut idx| {
                        let mut c = Vec::with_capacity(deg);
                        for _ in 0..deg {
                            c.push((idx % p as usize) as u64);
                            idx /= p as usize;
                        }
                        Elem::Poly(Poly(c).trim())
                    })
                    .collect()
            }
        }
    }

    /// Monic polynomials of the given degree (polynomial covers only).
    pub fn monic_of_degree(self, deg: usize) -> Vec<Elem> {
        let Cover::PolyOver(p) = self else { return Vec::new() };
        let total = (p as usize).pow(deg as u32);
        (0..total)
            .map(|mut idx| {
                let mut c = Vec::with_capacity(deg + 1);
                for _ in 0..deg {
                    c.push((idx % p as usize) as u64);
                    idx /= p as usize;
                }
                c.push(1);
                Elem::Poly(Poly(c))
            })
            .collect()
    }

    /// Canonical prime factorization `[(prime, exponent)]` of a nonzero,
    /// canonical element. Units factor as the empty product.
    pub fn factorize(self, e: &Elem) -> Vec<(Elem, u32)> {
        assert!(!self.is_zero(e), "cannot factor zero");
        let mut rest = self.canonical(e);
        let mut out = Vec::new();
        match self {
            Cover::Integers => {
                let mut n = Self::int(&rest).clone();
                let mut d = BigInt::from(2);
                while &d * &d <= n {
                    let mut k = 0;
                    while n.is_multiple_of(&d) {
                        n /= &d;
                        k += 1;
                    }
                    if k > 0 {
                        out.push((Elem::Int(d.clone()), k));
                    }
                    d += 1;
                }
                if n > BigInt::one() {
                    out.push((Elem::Int(n), 1));
                }
            }
            Cover::PolyOver(_) => {
                let mut deg = 1;
                while let Some(total) = Self::poly(&rest).degree() {
                    if total == 0 {
                        break;
                    }
                    if 2 * deg > total {
                        out.push((rest.clone(), 1));
                        break;
                    }
                    for f in self.monic_of_degree(deg) {
                        let mut k = 0;
                        while self.divides(&f, &rest) {
                            rest = self.exact_div(&rest, &f);
                            k += 1;
                        }
                        if k > 0 {
                            out.push((f, k));
                        }
                    }
                    deg += 1;
                }
                out.sort_by(|a, b| self.cmp_canonical(&a.0, &b.0));
            }
        }
        out
    }

    /// Canonical divisors of a nonzero element, sorted by [`Cover::cmp_canonical`].
    pub fn divisors(self, e: &Elem) -> Vec<Elem> {
        let mut divs = vec![self.one()];
        for (prime, k) in self.factorize(e) {
            let mut next = Vec::new();
            for d in &divs {
                let mut pw = d.clone();
                next.push(pw.clone());
                for _ in 0..k {
                    pw = self.mul(&pw, &prime);
                    next.push(pw.clone());
                }
            }
            divs = next;
        }
        divs.sort_by(|a, b| self.cmp_canonical(a, b));
        divs
    }

    /// Total order: by norm, then structurally.
    pub fn cmp_canonical(self, a: &Elem, b: &Elem) -> Ordering {
        self.norm(a).cmp(&self.norm(b)).then_with(|| match (a, b) {
            (Elem::Poly(x), Elem::Poly(y)) => x.0.iter().rev().cmp(y.0.iter().rev()),
            _ => a.cmp(b),
        })
    }

    pub fn display(self, e: &Elem) -> String {
        ElemDisplay(e).to_string()
    }
}

struct ElemDisplay<'a>(&'a Elem);

impl fmt::Display for ElemDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Elem::Int(n) => write!(f, "{n}"),
            Elem::Poly(q) => {
                if q.0.is_empty() {
                    return write!(f, "0");
                }
                let mut first = true;
                for (i, &c) in q.0.iter().enumerate().rev() {
                    if c == 0 {
                        continue;
                    }
                    if !first {
                        write!(f, "+")?;
                    }
                    first = false;
                    match (i, c) {
                        (0, c) => write!(f, "{c}")?,
                        (1, 1) => write!(f, "x")?,
                        (1, c) => write!(f, "{c}x")?,
                        (i, 1) => write!(f, "x^{i}")?,
                        (i, c) => write!(f, "{c}x^{i}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        ElemDisplay(self).fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[u64]) -> Elem {
        Elem::Poly(Poly(c.to_vec()))
    }

    #[test]
    fn integer_xgcd_identity() {
        let z = Cover::Integers;
        for a in -20..20i64 {
            for b in -20..20i64 {
                let (g, s, t) = z.xgcd(&Elem::int(a as i128), &Elem::int(b as i128));
                let lhs = z.add(&z.mul(&s, &Elem::int(a as i128)), &z.mul(&t, &Elem::int(b as i128)));
                assert_eq!(lhs, g);
                assert!(z.is_canonical(&g));
            }
        }
    }

    #[test]
    fn poly_division_and_gcd() {
        let f2 = Cover::PolyOver(2);
        // x^3 + x + 1 is irreducible over GF(2)
        let f = poly(&[1, 1, 0, 1]);
        assert_eq!(f2.factorize(&f), vec![(f.clone(), 1)]);
        // x^2 + 1 = (x+1)^2
        assert_eq!(f2.factorize(&poly(&[1, 0, 1])), vec![(poly(&[1, 1]), 2)]);
        let (q, r) = f2.div_rem(&f, &poly(&[1, 1]));
        assert_eq!(f2.add(&f2.mul(&q, &poly(&[1, 1])), &r), f);
        assert_eq!(f2.gcd(&poly(&[0, 0, 1]), &poly(&[0, 1, 1])), poly(&[0, 1]));
    }

    #[test]
    fn normalize_makes_monic() {
        let f5 = Cover::PolyOver(5);
        let (c, u) = f5.normalize(&poly(&[1, 3]));
        assert_eq!(c, poly(&[2, 1]));
        assert_eq!(f5.mul(&u, &poly(&[1, 3])), c);
    }

    #[test]
    fn divisors_of_twelve() {
        let z = Cover::Integers;
        let d: Vec<_> = z.divisors(&Elem::int(12)).into_iter().collect();
        assert_eq!(d, [1, 2, 3, 4, 6, 12].map(Elem::int).to_vec());
    }

    #[test]
    fn residue_enumeration() {
        assert_eq!(Cover::PolyOver(3).residues(&poly(&[0, 0, 1])).len(), 9);
        assert_eq!(Cover::Integers.residues(&Elem::int(7)).len(), 7);
        assert_eq!(Cover::PolyOver(2).display(&poly(&[1, 1, 0, 1])), "x^3+x+1");
    }
}
