use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::Mat;
use crate::module::FpModule;
use crate::ring::{Cover, Elem, Ring};

/// FNV-1a, used to derive per-ring seeds that do not depend on the
/// platform's hasher.
pub(crate) fn fnv(text: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in text.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

pub(crate) fn rng_for(seed: u64, tag: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ fnv(tag))
}

/// `Z/n` for `n` in the range, then `GF(2)[x]/(x^e)` for `e ≤ poly_exp`.
pub fn ring_grid(max_n: i128, poly_exp: usize) -> Vec<Ring> {
    let mut out: Vec<Ring> = (2..=max_n).map(Ring::integers_mod).collect();
    for e in 1..=poly_exp {
        let mut coeffs = vec![0; e + 1];
        coeffs[e] = 1;
        out.push(Ring::poly_mod(2, &coeffs).expect("prime"));
    }
    out
}

pub(crate) fn random_elem(ring: &Ring, rng: &mut ChaCha8Rng) -> Elem {
    let c = ring.cover();
    match c {
        Cover::Integers if ring.is_finite() => {
            let m = ring.modulus().as_i128().expect("small modulus");
            Elem::int(rng.gen_range(0..m))
        }
        Cover::Integers => Elem::int(rng.gen_range(-12..=12)),
        Cover::PolyOver(p) => {
            let deg = if ring.is_finite() { c.norm(ring.modulus()) as usize - 1 } else { 3 };
            let coeffs: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..p)).collect();
            let e = (0..deg).fold(c.zero(), |acc, k| {
                c.add(&acc, &c.mul(&c.from_i64(coeffs[k] as i64), &c.pow(&c.var(), k as u32)))
            });
            ring.reduce(&e)
        }
    }
}

pub(crate) fn random_module(ring: &Ring, rng: &mut ChaCha8Rng) -> FpModule {
    let g = rng.gen_range(1..=2);
    let r = rng.gen_range(1..=2);
    let rows = (0..g).map(|_| (0..r).map(|_| random_elem(ring, rng)).collect()).collect();
    FpModule::from_presentation(ring, &Mat::from_rows(ring.cover(), rows)).expect("entries in ring")
}

/// `count` modules: `R`, a few cyclic quotients, `R²`, then random
/// presentations with at most two generators and two relations.
pub fn sample_modules(ring: &Ring, count: usize, rng: &mut ChaCha8Rng) -> Vec<FpModule> {
    let c = ring.cover();
    let mut out = vec![FpModule::free(ring, 1)];
    if ring.is_finite() {
        let mut divisors: Vec<Elem> = c
            .divisors(ring.modulus())
            .into_iter()
            .filter(|d| !c.is_unit(d) && d != ring.modulus())
            .collect();
        divisors.shuffle(rng);
        out.extend(divisors.iter().take(4).map(|d| FpModule::cyclic_elem(ring, d)));
    }
    out.push(FpModule::free(ring, 2));
    while out.len() < count {
        out.push(random_module(ring, rng));
    }
    out.truncate(count);
    out
}

/// Session literal for a module: `free g` or `coker [[..]]`.
pub fn module_literal(m: &FpModule) -> String {
    if m.relations().cols() == 0 {
        format!("free {}", m.gens())
    } else {
        format!("coker {}", m.relations())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic() {
        let r = Ring::integers_mod(36);
        let a = sample_modules(&r, 10, &mut rng_for(7, "Z/36"));
        let b = sample_modules(&r, 10, &mut rng_for(7, "Z/36"));
        assert_eq!(a, b);
        assert_eq!(a.len(), 10);
        let c = sample_modules(&r, 10, &mut rng_for(8, "Z/36"));
        assert_ne!(a, c);
    }

    #[test]
    fn grid_contents() {
        let g = ring_grid(60, 4);
        assert_eq!(g.len(), 59 + 4);
        assert_eq!(g.last().unwrap().to_string(), "GF(2)[x]/(x^4)");
    }

    #[test]
    fn fnv_is_stable() {
        assert_eq!(fnv(""), 0xcbf2_9ce4_8422_2325);
        assert_eq!(fnv("a"), 0xaf63_dc4c_8601_ec8c);
    }
}
