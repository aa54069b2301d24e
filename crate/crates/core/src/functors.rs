//! The limit functors `Γ_I`, `Λ_I`, `D_I`, `F_I` and the reduced/coreduced
//! predicates.
//!
//! Over a finite ring the powers `I^k` stabilize, so every tower is constant
//! from some index on and the limit is an honest finite computation. Over a
//! cover the chains `(0 :_M I^k)` and `I^k M` still settle as soon as two
//! consecutive terms agree; the towers for `D_I` and `F_I` are reported as
//! non-stabilizing.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::module::{
    colon_submodule, hom_module, hom_pre, ideal_multiple, morphism_parts, tensor_map, tensor_module,
    FpModule, Morphism, Submodule,
};
use crate::ring::{Elem, Ideal};

pub const DEFAULT_KMAX: u32 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Stabilization {
    At(u32),
    NonStabilizing(u32),
}

impl Stabilization {
    pub fn is_stable(&self) -> bool {
        matches!(self, Stabilization::At(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub stage: u32,
    pub module: String,
    /// Whether the map to the next stage is an isomorphism.
    pub connecting_iso: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct LimitResult {
    pub value: Option<FpModule>,
    pub stabilization: Stabilization,
    pub trace: Vec<TraceEntry>,
    /// Only meaningful for inverse systems.
    pub mittag_leffler: Option<bool>,
    /// `Γ → M`, `M → Λ`, `M → D` or `F → M`, when a value exists.
    pub canonical: Option<Morphism>,
}

impl LimitResult {
    fn closed(value: FpModule, canonical: Morphism, inverse: bool) -> LimitResult {
        LimitResult {
            trace: vec![TraceEntry { stage: 1, module: value.describe(), connecting_iso: Some(true) }],
            value: Some(value),
            stabilization: Stabilization::At(1),
            mittag_leffler: inverse.then_some(true),
            canonical: Some(canonical),
        }
    }

    fn open(k_max: u32, trace: Vec<TraceEntry>) -> LimitResult {
        LimitResult {
            value: None,
            stabilization: Stabilization::NonStabilizing(k_max),
            trace,
            mittag_leffler: None,
            canonical: None,
        }
    }
}

fn check(m: &FpModule, i: &Ideal, k_max: u32) -> Result<()> {
    if m.ring() != i.ring() {
        return Err(Error::RingMismatch(m.ring().to_string(), i.ring().to_string()));
    }
    if k_max == 0 {
        return Err(Error::Unsupported("k_max must be at least 1".into()));
    }
    Ok(())
}

/// Generators `d_k` of `I^k` acting on `m`: over a finite ring the ideal
/// powers themselves; over a cover, powers reduced modulo the exponent of the
/// torsion of `m` (the action on torsion only sees them mod that exponent).
struct Powers {
    a: Elem,
    modulus: Elem,
    cur: Elem,
    k: u32,
}

impl Powers {
    fn new(m: &FpModule, i: &Ideal) -> Powers {
        let ring = m.ring();
        let c = ring.cover();
        let modulus = if ring.is_finite() {
            ring.modulus().clone()
        } else {
            m.invariant_factors().last().cloned().unwrap_or_else(|| c.zero())
        };
        Powers { a: i.divisor().clone(), modulus, cur: c.one(), k: 0 }
    }

    fn next(&mut self, m: &FpModule) -> Elem {
        let c = m.cover();
        self.cur = c.gcd(&c.mul(&self.cur, &self.a), &self.modulus);
        self.k += 1;
        self.cur.clone()
    }
}

/// The submodule `Γ_I(M) ⊆ M` and its chain index, when the chain settles.
fn torsion_chain(m: &FpModule, i: &Ideal, k_max: u32) -> (Option<(Submodule, u32)>, Vec<TraceEntry>) {
    let mut powers = Powers::new(m, i);
    let mut trace = Vec::new();
    let mut prev = annihilated(m, &powers.next(m));
    for k in 1..=k_max {
        let next = annihilated(m, &powers.next(m));
        let iso = prev.same_as(&next);
        trace.push(TraceEntry { stage: k, module: prev.module().describe(), connecting_iso: Some(iso) });
        if iso {
            return (Some((prev, k)), trace);
        }
        prev = next;
    }
    (None, trace)
}

/// `(0 :_M d)` for a cover element `d`.
fn annihilated(m: &FpModule, d: &Elem) -> Submodule {
    let ideal = crate::ring::ideal_of(m.ring(), &[m.ring().element(d).expect("cover element")])
        .expect("same ring");
    colon_submodule(m, &ideal).expect("same ring")
}

/// `d M` for a cover element `d`.
fn multiplied(m: &FpModule, d: &Elem) -> Submodule {
    Submodule::generated(m, &Mat::scalar(m.cover(), m.gens(), d))
}

pub fn torsion_gamma(m: &FpModule, i: &Ideal, k_max: u32) -> Result<LimitResult> {
    check(m, i, k_max)?;
    if i.is_zero() {
        return Ok(LimitResult::closed(m.clone(), Morphism::identity(m), false));
    }
    if i.is_unit() {
        let z = FpModule::zero(m.ring());
        return Ok(LimitResult::closed(z.clone(), Morphism::zero(&z, m), false));
    }
    let (found, trace) = torsion_chain(m, i, k_max);
    Ok(match found {
        Some((sub, k)) => LimitResult {
            value: Some(sub.module().clone()),
            stabilization: Stabilization::At(k),
            trace,
            mittag_leffler: None,
            canonical: Some(sub.inclusion.clone()),
        },
        None => LimitResult::open(k_max, trace),
    })
}

/// `Γ_I(M)` as a submodule of `M`, when its chain settles within `k_max`.
pub fn torsion_submodule(m: &FpModule, i: &Ideal, k_max: u32) -> Result<Option<Submodule>> {
    check(m, i, k_max)?;
    Ok(torsion_chain(m, i, k_max).0.map(|(s, _)| s))
}

pub fn completion_lambda(m: &FpModule, i: &Ideal, k_max: u32) -> Result<LimitResult> {
    check(m, i, k_max)?;
    if i.is_zero() {
        return Ok(LimitResult::closed(m.clone(), Morphism::identity(m), true));
    }
    if i.is_unit() {
        let z = FpModule::zero(m.ring());
        return Ok(LimitResult::closed(z.clone(), Morphism::zero(m, &z), true));
    }
    if m.free_rank() > 0 {
        // a^k F strictly decreases on a free summand F
        let mut r = LimitResult::open(k_max, Vec::new());
        r.mittag_leffler = Some(true);
        return Ok(r);
    }
    let mut powers = Powers::new(m, i);
    let mut trace = Vec::new();
    let mut prev = multiplied(m, &powers.next(m));
    for k in 1..=k_max {
        let next = multiplied(m, &powers.next(m));
        let iso = prev.same_as(&next);
        let (q, p) = prev.quotient();
        trace.push(TraceEntry { stage: k, module: q.describe(), connecting_iso: Some(iso) });
        if iso {
            return Ok(LimitResult {
                value: Some(q),
                stabilization: Stabilization::At(k),
                trace,
                mittag_leffler: Some(true),
                canonical: Some(p),
            });
        }
        prev = next;
    }
    let mut r = LimitResult::open(k_max, trace);
    r.mittag_leffler = Some(true);
    Ok(r)
}

/// `I^k` as the cyclic module `R/ann(d_k)` with generator `d_k`.
pub(crate) fn power_module(i: &Ideal, k: u32) -> (FpModule, Elem) {
    let ring = i.ring();
    let c = ring.cover();
    let d = i.power(k).divisor().clone();
    (FpModule::cyclic_elem(ring, &c.exact_div(ring.modulus(), &d)), d)
}

/// Inclusion `I^(k+1) ⊆ I^k` between power modules.
fn power_inclusion(i: &Ideal, k: u32) -> (Morphism, FpModule, FpModule) {
    power_map(i, k + 1, k)
}

/// Inclusion `I^a ⊆ I^b` for `a ≥ b`, with both power modules.
pub(crate) fn power_map(i: &Ideal, a: u32, b: u32) -> (Morphism, FpModule, FpModule) {
    let c = i.ring().cover();
    let (small, ds) = power_module(i, a);
    let (big, db) = power_module(i, b);
    let mat = Mat::from_rows(c, vec![vec![c.exact_div(&ds, &db)]]);
    (Morphism::unchecked(&small, &big, &mat), small, big)
}

/// Smallest index from which every connecting map is an isomorphism.
pub(crate) fn settle(maps: &[Morphism]) -> (usize, Vec<bool>) {
    let isos: Vec<bool> = maps.iter().map(is_iso).collect();
    let mut k = isos.len();
    while k > 0 && isos[k - 1] {
        k -= 1;
    }
    (k, isos)
}

pub(crate) fn is_iso(f: &Morphism) -> bool {
    let p = morphism_parts(f);
    p.kernel.module().is_zero() && p.cokernel.is_zero()
}

fn trace_of(stages: &[FpModule], isos: &[bool]) -> Vec<TraceEntry> {
    stages
        .iter()
        .enumerate()
        .map(|(n, s)| TraceEntry {
            stage: n as u32 + 1,
            module: s.describe(),
            connecting_iso: isos.get(n).copied(),
        })
        .collect()
}

pub fn transform_d(m: &FpModule, i: &Ideal, k_max: u32) -> Result<LimitResult> {
    check(m, i, k_max)?;
    if i.is_zero() {
        let z = FpModule::zero(m.ring());
        return Ok(LimitResult::closed(z.clone(), Morphism::zero(m, &z), false));
    }
    if i.is_unit() {
        return Ok(LimitResult::closed(m.clone(), Morphism::identity(m), false));
    }
    let Some(s) = i.stabilization_index().filter(|_| m.ring().is_finite()) else {
        return Ok(LimitResult::open(k_max, Vec::new()));
    };
    if s > k_max {
        return Ok(LimitResult::open(k_max, Vec::new()));
    }
    let homs = (1..=s + 1)
        .map(|k| hom_module(&power_module(i, k).0, m))
        .collect::<Result<Vec<_>>>()?;
    let maps = (1..=s)
        .map(|k| hom_pre(&power_inclusion(i, k).0, &homs[k as usize - 1], &homs[k as usize]))
        .collect::<Result<Vec<_>>>()?;
    let (idx, isos) = settle(&maps);
    let stages: Vec<FpModule> = homs.iter().map(|h| h.module.clone()).collect();
    let h = &homs[idx];
    // M → Hom(I^k, M): v ↦ (d_k ↦ d_k v)
    let (pk, dk) = power_module(i, idx as u32 + 1);
    let c = m.cover();
    let cols = (0..m.gens())
        .map(|j| {
            let mut col = Mat::zeros(c, m.gens(), 1);
            col[(j, 0)] = dk.clone();
            h.encode(&Morphism::unchecked(&pk, m, &col))
        })
        .collect::<Result<Vec<_>>>()?;
    let canonical = Morphism::unchecked(m, &h.module, &Mat::from_cols(c, h.module.gens(), &cols));
    Ok(LimitResult {
        value: Some(h.module.clone()),
        stabilization: Stabilization::At(idx as u32 + 1),
        trace: trace_of(&stages, &isos),
        mittag_leffler: None,
        canonical: Some(canonical),
    })
}

pub fn cotransform_f(m: &FpModule, i: &Ideal, k_max: u32) -> Result<LimitResult> {
    check(m, i, k_max)?;
    if i.is_zero() {
        let z = FpModule::zero(m.ring());
        return Ok(LimitResult::closed(z.clone(), Morphism::zero(&z, m), true));
    }
    if i.is_unit() {
        return Ok(LimitResult::closed(m.clone(), Morphism::identity(m), true));
    }
    let Some(s) = i.stabilization_index().filter(|_| m.ring().is_finite()) else {
        return Ok(LimitResult::open(k_max, Vec::new()));
    };
    if s > k_max {
        return Ok(LimitResult::open(k_max, Vec::new()));
    }
    let tensors = (1..=s + 1)
        .map(|k| tensor_module(&power_module(i, k).0, m))
        .collect::<Result<Vec<_>>>()?;
    let id = Morphism::identity(m);
    let maps: Vec<Morphism> = (1..=s)
        .map(|k| {
            let (incl, _, _) = power_inclusion(i, k);
            tensor_map(&incl, &id, &tensors[k as usize], &tensors[k as usize - 1])
        })
        .collect();
    let (idx, isos) = settle(&maps);
    let stages: Vec<FpModule> = tensors.iter().map(|t| t.module.clone()).collect();
    let t = &tensors[idx];
    let (_, dk) = power_module(i, idx as u32 + 1);
    // I^k ⊗ M → R ⊗ M = M on pure tensors is d_k times the identity
    let canonical = Morphism::unchecked(&t.module, m, &t.from.scale(&dk));
    Ok(LimitResult {
        value: Some(t.module.clone()),
        stabilization: Stabilization::At(idx as u32 + 1),
        trace: trace_of(&stages, &isos),
        mittag_leffler: Some(true),
        canonical: Some(canonical),
    })
}

pub fn is_reduced(m: &FpModule, i: &Ideal) -> Result<bool> {
    check(m, i, 1)?;
    Ok(colon_submodule(m, &i.power(2))?.same_as(&colon_submodule(m, i)?))
}

pub fn is_coreduced(m: &FpModule, i: &Ideal) -> Result<bool> {
    check(m, i, 1)?;
    Ok(ideal_multiple(&i.power(2), m)?.same_as(&ideal_multiple(i, m)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FunctorClass {
    /// `None` when the underlying limit did not settle.
    pub torsion: Option<bool>,
    pub torsionfree: Option<bool>,
    pub complete: Option<bool>,
}

pub fn functor_class(m: &FpModule, i: &Ideal, k_max: u32) -> Result<FunctorClass> {
    let g = torsion_gamma(m, i, k_max)?;
    let l = completion_lambda(m, i, k_max)?;
    let torsion = g.value.as_ref().map(|v| v.is_isomorphic(m)).transpose()?;
    let torsionfree = g.value.as_ref().map(FpModule::is_zero);
    let complete = match (&l.value, &l.canonical) {
        (Some(_), Some(p)) => Some(is_iso(p)),
        _ => None,
    };
    Ok(FunctorClass { torsion, torsionfree, complete })
}
