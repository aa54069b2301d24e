use super::complex::{ext_groups, tor_groups};
use super::resolution::{free_resolution, lift_chain_map};
use crate::error::{Error, Result};
use crate::functors::{
    completion_lambda, settle, torsion_gamma, LimitResult, Stabilization, TraceEntry,
};
use crate::linalg::Mat;
use crate::module::{morphism_parts, FpModule, Morphism, Submodule};
use crate::ring::{Elem, Ideal};

fn check(m: &FpModule, i: &Ideal, k_max: u32) -> Result<()> {
    if m.ring() != i.ring() {
        return Err(Error::RingMismatch(m.ring().to_string(), i.ring().to_string()));
    }
    if k_max == 0 {
        return Err(Error::Unsupported("k_max must be at least 1".into()));
    }
    Ok(())
}

fn fixed(value: FpModule) -> LimitResult {
    LimitResult {
        trace: vec![TraceEntry { stage: 1, module: value.describe(), connecting_iso: Some(true) }],
        value: Some(value),
        stabilization: Stabilization::At(1),
        mittag_leffler: None,
        canonical: None,
    }
}

fn unsettled(k_max: u32) -> LimitResult {
    LimitResult {
        value: None,
        stabilization: Stabilization::NonStabilizing(k_max),
        trace: Vec::new(),
        mittag_leffler: None,
        canonical: None,
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Cohomology,
    Homology,
}

/// Degrees `0..=top` of the tower `Ext^i(R/I^k, M)` (direct) or
/// `Tor_i(R/I^k, M)` (inverse), `k = 1..=s+1`.
fn tower(kind: Kind, top: usize, i: &Ideal, m: &FpModule, k_max: u32) -> Result<Vec<LimitResult>> {
    check(m, i, k_max)?;
    let ring = m.ring();
    let zero = FpModule::zero(ring);
    if i.is_unit() {
        return Ok((0..=top).map(|_| fixed(zero.clone())).collect());
    }
    if i.is_zero() {
        // Γ_0 = Λ_0 = identity, an exact functor
        return Ok((0..=top).map(|d| fixed(if d == 0 { m.clone() } else { zero.clone() })).collect());
    }
    let stable = i.stabilization_index().filter(|&s| ring.is_finite() && s <= k_max);
    let Some(s) = stable else {
        // only degree 0 is decidable, through the submodule chains
        let mut out = vec![match kind {
            Kind::Cohomology => torsion_gamma(m, i, k_max)?,
            Kind::Homology => completion_lambda(m, i, k_max)?,
        }];
        out.extend((1..=top).map(|_| unsettled(k_max)));
        return Ok(out);
    };
    let c = ring.cover();
    let stages = s as usize + 1;
    let quotients: Vec<FpModule> =
        (1..=stages as u32).map(|k| FpModule::cyclic(&i.power(k))).collect();
    let resolutions: Vec<_> = quotients.iter().map(|q| free_resolution(q, top + 1)).collect();
    let groups: Vec<_> = resolutions
        .iter()
        .map(|r| match kind {
            Kind::Cohomology => ext_groups(r, m, top),
            Kind::Homology => tor_groups(r, m, top),
        })
        .collect();
    let one = Mat::from_rows(c, vec![vec![c.one()]]);
    let id = Mat::identity(c, m.gens());
    // per degree, the connecting maps between stages k and k+1
    let mut maps: Vec<Vec<Morphism>> = vec![Vec::new(); top + 1];
    for k in 0..stages - 1 {
        let p = Morphism::new(&quotients[k + 1], &quotients[k], &one)?;
        let lifts = lift_chain_map(&p, &resolutions[k + 1], &resolutions[k], top + 1)?;
        for d in 0..=top {
            let f = match kind {
                Kind::Cohomology => {
                    groups[k][d].induced(&groups[k + 1][d], &lifts[d].transpose().kron(&id))?
                }
                Kind::Homology => groups[k + 1][d].induced(&groups[k][d], &lifts[d].kron(&id))?,
            };
            maps[d].push(f);
        }
    }
    Ok((0..=top)
        .map(|d| {
            let (idx, isos) = settle(&maps[d]);
            let trace = (0..stages)
                .map(|k| TraceEntry {
                    stage: k as u32 + 1,
                    module: groups[k][d].module.describe(),
                    connecting_iso: isos.get(k).copied(),
                })
                .collect();
            LimitResult {
                value: Some(groups[idx][d].module.clone()),
                stabilization: Stabilization::At(idx as u32 + 1),
                trace,
                mittag_leffler: (kind == Kind::Homology).then_some(true),
                canonical: None,
            }
        })
        .collect())
}

/// `H^d_I(M)` for `d = 0..=top`.
pub fn local_cohomology_profile(top: usize, i: &Ideal, m: &FpModule, k_max: u32) -> Result<Vec<LimitResult>> {
    tower(Kind::Cohomology, top, i, m, k_max)
}

/// `H^I_d(M)` for `d = 0..=top`.
pub fn local_homology_profile(top: usize, i: &Ideal, m: &FpModule, k_max: u32) -> Result<Vec<LimitResult>> {
    tower(Kind::Homology, top, i, m, k_max)
}

pub fn local_cohomology(deg: usize, i: &Ideal, m: &FpModule, k_max: u32) -> Result<LimitResult> {
    Ok(local_cohomology_profile(deg, i, m, k_max)?.pop().expect("nonempty"))
}

pub fn local_homology(deg: usize, i: &Ideal, m: &FpModule, k_max: u32) -> Result<LimitResult> {
    Ok(local_homology_profile(deg, i, m, k_max)?.pop().expect("nonempty"))
}

#[derive(Clone, Debug)]
pub struct CechResult {
    pub h0: FpModule,
    pub h1: FpModule,
    /// Exponent `s` with `a^s M = a^(s+1) M`.
    pub exponent: u32,
}

/// Kernel and cokernel of `M → M_a`, with `M_a` the stable image of
/// multiplication by `a`.
pub fn cech_h(i: &Ideal, m: &FpModule) -> Result<CechResult> {
    check(m, i, 1)?;
    let ring = m.ring();
    if !ring.is_finite() {
        return Err(Error::Unsupported(format!("Cech oracle over {ring}")));
    }
    let c = ring.cover();
    let a = i.generator();
    let scaled = |e: &Elem| Submodule::generated(m, &Mat::scalar(c, m.gens(), e));
    let mut power = a.clone();
    let mut cur = scaled(&power);
    let mut s = 1;
    loop {
        let next_power = ring.mul(&power, &a);
        let next = scaled(&next_power);
        if next.same_as(&cur) {
            break;
        }
        power = next_power;
        cur = next;
        s += 1;
    }
    // M → a^s M, v ↦ a^s v, written in the generators of a^s M
    let span = crate::linalg::smith_normal_form(&cur.generators().hcat(&m.lifted()));
    let n = cur.module().gens();
    let cols = (0..m.gens())
        .map(|j| {
            let mut v = vec![c.zero(); m.gens()];
            v[j] = power.clone();
            span.solve(&v)
                .map(|x| x[..n].to_vec())
                .ok_or_else(|| Error::Invariant("a^s M does not contain a^s v".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let f = Morphism::unchecked(m, cur.module(), &Mat::from_cols(c, n, &cols));
    let parts = morphism_parts(&f);
    Ok(CechResult { h0: parts.kernel.module().clone(), h1: parts.cokernel, exponent: s })
}
