//! Instance-level audits. Each check evaluates its hypotheses first and
//! only then its conclusion; every conclusion compares values produced by
//! two different routes through the library.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::functors::{
    completion_lambda, cotransform_f, functor_class, is_coreduced, is_reduced, power_map,
    power_module, torsion_gamma, torsion_submodule, transform_d, LimitResult, Stabilization,
};
use crate::homology::{
    dimension_bounds, ext_all, local_cohomology, local_cohomology_profile, local_homology_profile,
    tor_all, DimBound,
};
use crate::linalg::Mat;
use crate::module::{
    classify, colon_submodule, hom_module, hom_post, hom_pre, ideal_multiple, morphism_parts,
    quotient_by_ideal, restrict_scalars, tensor_map, tensor_module, FpModule, Morphism,
};
use crate::ring::{annihilator, ideal_of, Elem, Ideal, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
    Indeterminate,
    /// A reading of a statement that does not hold on the instance; not a
    /// defect of the implementation.
    Finding,
}

#[derive(Clone, Copy, Debug)]
pub struct Context {
    pub degree: u32,
    pub k_max: u32,
}

/// One audited configuration. `base` is `(S, x)` with `ring = S/(x)`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub ring: Ring,
    pub ideal: Ideal,
    pub modules: Vec<FpModule>,
    pub base: Option<(Ring, Elem)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub hypotheses: Vec<(String, bool)>,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Default)]
struct Audit {
    hyps: Vec<(String, bool)>,
}

impl Audit {
    fn hyp(&mut self, name: &str, held: bool) -> bool {
        self.hyps.push((name.to_string(), held));
        held
    }

    fn held(&self) -> bool {
        self.hyps.iter().all(|(_, h)| *h)
    }

    fn done(self, verdict: Verdict, detail: String) -> Outcome {
        Outcome { hypotheses: self.hyps, verdict, detail }
    }

    fn skip(self) -> Outcome {
        let failed: Vec<&str> =
            self.hyps.iter().filter(|(_, h)| !h).map(|(n, _)| n.as_str()).collect();
        let detail = format!("hypothesis failed: {}", failed.join(", "));
        self.done(Verdict::Skip, detail)
    }

    fn conclude(self, ok: Option<bool>, detail: String) -> Outcome {
        let v = match ok {
            Some(true) => Verdict::Pass,
            Some(false) => Verdict::Fail,
            None => Verdict::Indeterminate,
        };
        self.done(v, detail)
    }
}

pub const SUITES: &[(&str, &[&str])] = &[
    (
        "representability",
        &["gamma_hom", "lambda_tensor", "prop_p", "cor_p", "prop_p1", "cor_p1", "cor_radical"],
    ),
    ("exact_sequences", &["prop_p3", "cor_p3", "prop_p4", "cor_p4", "prop_ll"]),
    (
        "main_theorems",
        &["thm_t1", "thm_t2", "t_vanishing", "dims", "idempotence_equiv", "projective_quotients"],
    ),
    ("coherence", &["coh_gamma", "coh_lambda", "coh_d", "coh_f"]),
    ("descent", &["ext_descent", "tor_descent", "lt1_ext", "lt2_tor", "lt1_audit", "lt2_audit"]),
];

/// Names of every check, in suite order.
pub fn check_names() -> Vec<&'static str> {
    SUITES.iter().flat_map(|(_, names)| names.iter().copied()).collect()
}

/// Number of modules a check reads from its instance; `None` means any
/// nonempty family.
pub fn arity(name: &str) -> Option<usize> {
    match name {
        "idempotence_equiv" => Some(0),
        "dims" | "projective_quotients" => None,
        "coh_gamma" | "coh_lambda" | "coh_d" | "coh_f" | "ext_descent" | "tor_descent" => Some(2),
        _ => Some(1),
    }
}

pub fn needs_base(name: &str) -> bool {
    matches!(
        name,
        "ext_descent" | "tor_descent" | "lt1_ext" | "lt2_tor" | "lt1_audit" | "lt2_audit"
    )
}

/// Runs a named check. Library errors become failing outcomes.
pub fn run_check(name: &str, ctx: &Context, inst: &Instance) -> Result<Outcome> {
    if !check_names().contains(&name) {
        return Err(Error::Unsupported(format!("unknown check `{name}`")));
    }
    let want = arity(name);
    let have = inst.modules.len();
    if want.map_or(have == 0, |n| n != have) {
        return Err(Error::Shape(format!("check `{name}` got {have} modules")));
    }
    if needs_base(name) != inst.base.is_some() {
        return Err(Error::Shape(format!("check `{name}` base ring mismatch")));
    }
    let out = dispatch(name, ctx, inst).unwrap_or_else(|e| Outcome {
        hypotheses: Vec::new(),
        verdict: Verdict::Fail,
        detail: format!("error: {e}"),
    });
    Ok(out)
}

fn dispatch(name: &str, ctx: &Context, inst: &Instance) -> Result<Outcome> {
    let i = &inst.ideal;
    let ms = &inst.modules;
    let k = ctx.k_max;
    match name {
        "gamma_hom" => gamma_hom(i, &ms[0], k),
        "lambda_tensor" => lambda_tensor(i, &ms[0], k),
        "prop_p" => prop_p(i, &ms[0], k),
        "cor_p" => cor_p(i, &ms[0], k),
        "prop_p1" => prop_p1(i, &ms[0], k),
        "cor_p1" => cor_p1(i, &ms[0], k),
        "cor_radical" => cor_radical(i, &ms[0], k),
        "prop_p3" => prop_p3(i, &ms[0], k),
        "cor_p3" => cor_p3(i, &ms[0], k),
        "prop_p4" => prop_p4(i, &ms[0], k),
        "cor_p4" => cor_p4(i, &ms[0], k),
        "prop_ll" => prop_ll(i, &ms[0], k),
        "thm_t1" => thm_t(true, i, &ms[0], ctx),
        "thm_t2" => thm_t(false, i, &ms[0], ctx),
        "t_vanishing" => t_vanishing(i, &ms[0], ctx),
        "dims" => dims(i, ms, ctx),
        "idempotence_equiv" => idempotence_equiv(i),
        "projective_quotients" => projective_quotients(i, ms),
        "coh_gamma" => coh_gamma(i, &ms[0], &ms[1], k),
        "coh_lambda" => coh_lambda(i, &ms[0], &ms[1], k),
        "coh_d" => coh_d(i, &ms[0], &ms[1], k),
        "coh_f" => coh_f(i, &ms[0], &ms[1], k),
        "ext_descent" | "tor_descent" => {
            let (s, x) = inst.base.as_ref().expect("checked");
            descent(name == "ext_descent", s, x, &ms[0], &ms[1], ctx.degree)
        }
        "lt1_ext" | "lt2_tor" => {
            let (s, x) = inst.base.as_ref().expect("checked");
            jorgensen(name == "lt1_ext", s, x, i, &ms[0], ctx.degree)
        }
        "lt1_audit" | "lt2_audit" => {
            let (s, x) = inst.base.as_ref().expect("checked");
            lt_audit(name == "lt1_audit", s, x, i, &ms[0], ctx)
        }
        _ => unreachable!("names are validated"),
    }
}

fn value(r: &LimitResult) -> Option<&FpModule> {
    r.value.as_ref()
}

fn show(m: Option<&FpModule>) -> String {
    m.map_or_else(|| "unsettled".to_string(), FpModule::describe)
}

fn iso(a: Option<&FpModule>, b: &FpModule) -> Result<Option<bool>> {
    a.map(|a| a.is_isomorphic(b)).transpose()
}

fn injective(m: &FpModule) -> Result<bool> {
    Ok(classify(m)?.injective == Some(true))
}

fn and(a: Option<bool>, b: Option<bool>) -> Option<bool> {
    match (a, b) {
        (Some(false), _) | (_, Some(false)) => Some(false),
        (Some(true), Some(true)) => Some(true),
        _ => None,
    }
}

fn gamma_hom(i: &Ideal, m: &FpModule, k: u32) -> Result<Outcome> {
    let mut a = Audit::default();
    if !a.hyp("M is I-reduced", is_reduced(m, i)?) {
        return Ok(a.skip());
    }
    let g = torsion_gamma(m, i, k)?;
    let hom = hom_module(&FpModule::cyclic(i), m)?.module;
    let colon = colon_submodule(m, i)?.module().clone();
    let ok = and(iso(value(&g), &hom)?, iso(value(&g), &colon)?)
        .map(|b| b && g.stabilization == Stabilization::At(1));
    Ok(a.conclude(ok, format!("Gamma = {}, Hom(R/I, M) = {}", show(value(&g)), hom.describe())))
}

fn lambda_tensor(i: &Ideal, m: &FpModule, k: u32) -> Result<Outcome> {
    let mut a = Audit::default();
    if !a.hyp("M is I-coreduced", is_coreduced(m, i)?) {
        return Ok(a.skip());
    }
    let l = completion_lambda(m, i, k)?;
    let t = tensor_module(&FpModule::cyclic(i), m)?.module;
    let q = quotient_by_ideal(m, i)?.0;
    let ok = and(iso(value(&l), &t)?, iso(value(&l), &q)?)
        .map(|b| b && l.stabilization == Stabilization::At(1));
    Ok(a.conclude(ok, format!("Lambda = {}, R/I (x) M = {}", show(value(&l)), t.describe())))
}

fn prop_p(i: &Ideal, m: &FpModule, k: u32) -> Result<Outcome> {
    let mut a = Audit::default();
    a.hyp("M injective", injective(m)?);
    a.hyp("M is I-reduced", is_reduced(m, i)?);
    if !a.held() {
        return Ok(a.skip());
    }
    let d = transform_d(m, i, k)?;
    let hom = hom_module(&power_module(i, 1).0, m)?.module;
    let q = colon_submodule(m, i)?.quotient().0;
    let ok = and(iso(value(&d), &hom)?, iso(value(&d), &q)?);
    Ok(a.conclude(ok, format!("D = {}, Hom(I, M) = {}", show(value(&d)), hom.describe())))
}

fn cor_p(i: &Ideal, m: &FpModule, k: u32) -> Result<Outcome> {
    let mut a = Audit::default();
    a.hyp("M injective", injective(m)?);
    a.hyp("M is I-reduced", is_reduced(m, i)?);
    if !a.held() {
        return Ok(a.skip());
    }
    let d = transform_d(m, i, k)?;
    let Some(dv) = value(&d) else {
        return Ok(a.conclude(None, "D unsettled".into()));
    };
    let g = torsion_gamma(dv, i, k)?;
    let ok = value(&g).map(FpModule::is_zero);
    Ok(a.conclude(ok, format!("Gamma(D(M)) = {}", show(value(&g)))))
}

fn prop_p1(i: &Ideal, m: &FpModule, k: u32) -> Result<Outcome> {
    let mut a = Audit::default();
    a.hyp("M flat", classify(m)?.flat);
    a.hyp("M is I-coreduced", is_coreduced(m, i)?);
    if !a.held() {
        return Ok(a.skip());
    }
    let f = cotransform_f(m, i, k)?;
    let t = tensor_module(&power_module(i, 1).0, m)?.module;
    let im = ideal_multiple(i, m)?.module().clone();
    let ok = and(iso(value(&f), &t)?, iso(value(&f), &im)?);
    Ok(a.conclude(ok, format!("F = {}, I (x) M = {}", show(value(&f)), t.describe())))
}

fn cor_p1(i: &Ideal, m: &FpModule, k: u32) -> Result<Outcome> {
    let mut a = Audit::default();
    a.hyp("M flat", classify(m)?.flat);
    a.hyp("M is I-coreduced", is_coreduced(m, i)?);
    if !a.held() {
        return Ok(a.skip());
    }
    let f = cotransform_f(m, i, k)?;
    let Some(fv) = value(&f) else {
        return Ok(a.conclude(None, "F unsettled".into()));
    };
    let l = completion_lambda(fv, i, k)?;
    let ok = value(&l).map(FpModule::is_zero);
    Ok(a.conclude(ok, format!("Lambda(F(M)) = {}", show(value(&l)))))
}

fn cor_radical(i: &Ideal, m: &FpModule, k: u32) -> Result<Outcome> {
    let a = Audit::default();
    let Some(sub) = torsion_submodule(m, i, k)? else {
        return Ok(a.conclude(None, "Gamma unsettled".into()));
    };
    let (q, _) = sub.quotient();
    let g = torsion_gamma(&q, i, k)?;
    let ok = value(&g).map(FpModule::is_zero);
    Ok(a.conclude(ok, format!("M/Gamma(M) = {}, Gamma of it = {}", q.describe(), show(value(&g)))))
}

/// `0 → A → M → B → 0` given by `incl` and `proj`.
fn short_exact(incl: &Morphism, proj: &Morphism) -> bool {
    let p = morphism_parts(proj);
    let q = morphism_parts(incl);
    q.kernel.module().is_zero() && p.cokernel.is_zero() && p.kernel.same_as(&q.image)
}

fn prop_p3(i: &Ideal, m: &FpModule, k: u32) -> Result<Outcome> {
    let mut a = Audit::default();
    if !a.hyp("M injective", injective(m)?) {
        return Ok(a.skip());
    }
    let g = torsion_gamma(m, i, k)?;
    let d = transform_d(m, i, k)?;
    let (Some(incl), Some(proj)) = (&g.canonical, &d.canonical) else {
        return Ok(a.conclude(None, "limit unsettled".into()));
    };
    let ok = short_exact(incl, proj);
    Ok(a.conclude(
        Some(ok),
        format!("0 -> {} -> {} -> {} -> 0", show(value(&g)), m.describe(), show(value(&d))),
    ))
}

fn cor_p3(i: &Ideal, m: &FpModule, k: u32) -> Result<Outcome> {
    let mut a = Audit::default();
    if !a.hyp("M injective", injective(m)?) {
        return Ok(a.skip());
    }
    let torsion = functor_class(m, i, k)?.torsion;
    let d = transform_d(m, i, k)?;
    let vanishes = value(&d).map(FpModule::is_zero);
    let ok = torsion.zip(vanishes).map(|(t, z)| t == z);
    Ok(a.conclude(ok, format!("torsion = {torsion:?}, D = {}", show(value(&d)))))
}

fn flat_ml(a: &mut Audit, m: &FpModule, f: &LimitResult) -> Result<bool> {
    a.hyp("M flat", classify(m)?.flat);
    a.hyp("Mittag-Leffler", f.mittag_leffler == Some(true));
    Ok(a.held())
}

fn prop_p4(i: &Ideal, m: &FpModule, k: u32) -> Result<Outcome> {
    let mut a = Audit::default();
    let f = cotransform_f(m, i, k)?;
    if !flat_ml(&mut a, m, &f)? {
        return Ok(a.skip());
    }
    let l = completion_lambda(m, i, k)?;
    let (Some(incl), Some(proj)) = (&f.canonical, &l.canonical) else {
        return Ok(a.conclude(None, "limit unsettled".into()));
    };
    let ok = short_exact(incl, proj);
    Ok(a.conclude(
        Some(ok),
        format!("0 -> {} -> {} -> {} -> 0", show(value(&f)), m.describe(), show(value(&l))),
    ))
}

fn cor_p4(i: &Ideal, m: &FpModule, k: u32) -> Result<Outcome> {
    let mut a = Audit::default();
    let f = cotransform_f(m, i, k)?;
    if !flat_ml(&mut a, m, &f)? {
        return Ok(a.skip());
    }
    let complete = functor_class(m, i, k)?.complete;
    let vanishes = value(&f).map(FpModule::is_zero);
    let ok = complete.zip(vanishes).map(|(c, z)| c == z);
    Ok(a.conclude(ok, format!("complete = {complete:?}, F = {}", show(value(&f)))))
}

fn prop_ll(i: &Ideal, m: &FpModule, k: u32) -> Result<Outcome> {
    let mut a = Audit::default();
    if !a.hyp("M injective", injective(m)?) {
        return Ok(a.skip());
    }
    let d = transform_d(m, i, k)?;
    let Some(dv) = value(&d) else {
        return Ok(a.conclude(None, "D unsettled".into()));
    };
    let h = local_cohomology(1, i, dv, k)?;
    let ok = value(&h).map(FpModule::is_zero);
    Ok(a.conclude(ok, format!("D = {}, H^1(D) = {}", dv.describe(), show(value(&h)))))
}

fn thm_t(cohomology: bool, i: &Ideal, m: &FpModule, ctx: &Context) -> Result<Outcome> {
    let mut a = Audit::default();
    if !a.hyp("I idempotent", i.is_idempotent()) {
        return Ok(a.skip());
    }
    let top = ctx.degree as usize;
    let q = FpModule::cyclic(i);
    let (tower, direct) = if cohomology {
        (local_cohomology_profile(top, i, m, ctx.k_max)?, ext_all(top, &q, m)?)
    } else {
        (local_homology_profile(top, i, m, ctx.k_max)?, tor_all(top, &q, m)?)
    };
    let mut ok = Some(true);
    let mut parts = Vec::new();
    for (d, (t, e)) in tower.iter().zip(&direct).enumerate() {
        let same = iso(value(t), e)?.map(|b| b && t.stabilization == Stabilization::At(1));
        ok = and(ok, same);
        parts.push(format!("{d}: {} / {}", show(value(t)), e.describe()));
    }
    Ok(a.conclude(ok, parts.join("; ")))
}

fn t_vanishing(i: &Ideal, m: &FpModule, ctx: &Context) -> Result<Outcome> {
    let mut a = Audit::default();
    if !a.hyp("I idempotent", i.is_idempotent()) {
        return Ok(a.skip());
    }
    let top = ctx.degree as usize;
    let class = classify(&FpModule::cyclic(i))?;
    let higher_zero = |rs: Vec<LimitResult>| -> Option<bool> {
        rs[1..].iter().try_fold(true, |acc, r| value(r).map(|v| acc && v.is_zero()))
    };
    let c = higher_zero(local_cohomology_profile(top, i, m, ctx.k_max)?);
    let h = higher_zero(local_homology_profile(top, i, m, ctx.k_max)?);
    // projective forces vanishing for every M; a single sample cannot refute
    // the converse, so only the forward direction is judged
    let ok = and(
        c.map(|z| !class.projective || z),
        h.map(|z| !class.flat || z),
    );
    Ok(a.conclude(
        ok,
        format!("R/I projective = {}, higher H^i zero = {c:?}, H_i zero = {h:?}", class.projective),
    ))
}

fn dims(i: &Ideal, family: &[FpModule], ctx: &Context) -> Result<Outcome> {
    let mut a = Audit::default();
    if !a.hyp("I idempotent", i.is_idempotent()) {
        return Ok(a.skip());
    }
    let r = dimension_bounds(i, family, ctx.degree, ctx.k_max)?;
    let detail =
        format!("pd = {}, fd = {}, cd >= {}, hd >= {}", r.pd, r.fd, r.cd_family, r.hd_family);
    if !r.determinate {
        return Ok(a.conclude(None, detail));
    }
    let ok = r.pd == r.fd && r.fd == r.cd_family && r.cd_family == r.hd_family;
    let finite = !matches!(r.pd, DimBound::AtLeast(_));
    Ok(a.conclude(Some(ok && finite), detail))
}

fn idempotence_equiv(i: &Ideal) -> Result<Outcome> {
    let a = Audit::default();
    let ring = i.ring();
    let idem = i.is_idempotent();
    let witness = FpModule::cyclic(&i.power(2));
    let red = is_reduced(&witness, i)?;
    let cor = is_coreduced(&witness.direct_sum(&FpModule::free(ring, 1))?, i)?;
    Ok(a.conclude(
        Some(idem == red && red == cor),
        format!("idempotent = {idem}, R/I^2 reduced = {red}, R/I^2 + R coreduced = {cor}"),
    ))
}

fn projective_quotients(i: &Ideal, family: &[FpModule]) -> Result<Outcome> {
    let mut a = Audit::default();
    let ring = i.ring();
    a.hyp("R/I projective", classify(&FpModule::cyclic(i))?.projective);
    a.hyp("R/I^2 projective", classify(&FpModule::cyclic(&i.power(2)))?.projective);
    a.hyp("R is I-reduced", is_reduced(&FpModule::free(ring, 1), i)?);
    if !a.held() {
        return Ok(a.skip());
    }
    let mut bad = Vec::new();
    for m in family {
        if !is_coreduced(m, i)? {
            bad.push(m.describe());
        }
    }
    let detail = if bad.is_empty() {
        format!("{} modules coreduced", family.len())
    } else {
        format!("not coreduced: {}", bad.join(", "))
    };
    Ok(a.conclude(Some(bad.is_empty()), detail))
}

/// The sampled morphisms `M → N`: Hom generators, their sum, zero, and the
/// identity when the ends agree.
pub fn sample_morphisms(m: &FpModule, n: &FpModule) -> Result<Vec<Morphism>> {
    let mut out = hom_module(m, n)?.generators();
    if let Some(first) = out.first() {
        let sum = out[1..].iter().try_fold(first.clone(), |acc, f| acc.add(f))?;
        out.push(sum);
    }
    out.push(Morphism::zero(m, n));
    if m == n {
        out.push(Morphism::identity(m));
    }
    Ok(out)
}

/// Checks `η_N ∘ left(f) = right(f) ∘ η_M` for every sampled `f`, and that
/// both `η` are isomorphisms.
fn naturality(
    a: Audit,
    m: &FpModule,
    n: &FpModule,
    eta_m: &Morphism,
    eta_n: &Morphism,
    mut square: impl FnMut(&Morphism) -> Result<(Morphism, Morphism)>,
) -> Result<Outcome> {
    if !eta_m.is_isomorphism() || !eta_n.is_isomorphism() {
        return Ok(a.conclude(Some(false), "comparison map is not bijective".into()));
    }
    let fs = sample_morphisms(m, n)?;
    for (idx, f) in fs.iter().enumerate() {
        let (left, right) = square(f)?;
        if !left.equals(&right) {
            return Ok(a.conclude(Some(false), format!("square {idx} does not commute")));
        }
    }
    Ok(a.conclude(Some(true), format!("{} squares commute", fs.len())))
}

fn coh_gamma(i: &Ideal, m: &FpModule, n: &FpModule, k: u32) -> Result<Outcome> {
    let mut a = Audit::default();
    a.hyp("M is I-reduced", is_reduced(m, i)?);
    a.hyp("N is I-reduced", is_reduced(n, i)?);
    if !a.held() {
        return Ok(a.skip());
    }
    let (Some(gm), Some(gn)) = (torsion_submodule(m, i, k)?, torsion_submodule(n, i, k)?) else {
        return Ok(a.conclude(None, "Gamma unsettled".into()));
    };
    let q = FpModule::cyclic(i);
    let (hm, hn) = (hom_module(&q, m)?, hom_module(&q, n)?);
    // φ ↦ φ(1), written in the generators of Γ
    let eta = |h: &crate::module::HomModule, g: &crate::module::Submodule| -> Result<Morphism> {
        let c = h.module.cover();
        let cols = h
            .generators()
            .iter()
            .map(|phi| {
                g.coords(&phi.matrix.col(0))
                    .ok_or_else(|| Error::Invariant("phi(1) outside Gamma".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(&h.module, g.module(), &Mat::from_cols(c, g.module().gens(), &cols))
    };
    let (em, en) = (eta(&hm, &gm)?, eta(&hn, &gn)?);
    let c = m.cover();
    naturality(a, m, n, &em, &en, |f| {
        let restricted = f.matrix.mul(gm.generators());
        let cols = (0..restricted.cols())
            .map(|j| {
                gn.coords(&restricted.col(j))
                    .ok_or_else(|| Error::Invariant("f does not preserve Gamma".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let gf = Morphism::new(gm.module(), gn.module(), &Mat::from_cols(c, gn.module().gens(), &cols))?;
        Ok((em.then(&gf)?, hom_post(f, &hm, &hn)?.then(&en)?))
    })
}

/// `Λ(f)` on the quotients `M → Λ(M)` produced by `completion_lambda`.
fn lambda_map(f: &Morphism, pm: &Morphism, pn: &Morphism) -> Result<Morphism> {
    let c = f.domain.cover();
    if pm.matrix == Mat::identity(c, f.domain.gens()) {
        Morphism::new(&pm.codomain, &pn.codomain, &pn.matrix.mul(&f.matrix))
    } else if pm.codomain.gens() == 0 {
        Ok(Morphism::zero(&pm.codomain, &pn.codomain))
    } else {
        Err(Error::Invariant("completion is not presented on the generators of M".into()))
    }
}

fn coh_lambda(i: &Ideal, m: &FpModule, n: &FpModule, k: u32) -> Result<Outcome> {
    let mut a = Audit::default();
    a.hyp("M is I-coreduced", is_coreduced(m, i)?);
    a.hyp("N is I-coreduced", is_coreduced(n, i)?);
    if !a.held() {
        return Ok(a.skip());
    }
    let (lm, ln) = (completion_lambda(m, i, k)?, completion_lambda(n, i, k)?);
    let (Some(pm), Some(pn)) = (lm.canonical, ln.canonical) else {
        return Ok(a.conclude(None, "Lambda unsettled".into()));
    };
    let q = FpModule::cyclic(i);
    let (tm, tn) = (tensor_module(&q, m)?, tensor_module(&q, n)?);
    // 1 ⊗ v ↦ p(v); the pure tensor 1 ⊗ e_j has index j
    let em = Morphism::new(&tm.module, &pm.codomain, &pm.matrix.mul(&tm.from))?;
    let en = Morphism::new(&tn.module, &pn.codomain, &pn.matrix.mul(&tn.from))?;
    let id = Morphism::identity(&q);
    naturality(a, m, n, &em, &en, |f| {
        let lf = lambda_map(f, &pm, &pn)?;
        Ok((em.then(&lf)?, tensor_map(&id, f, &tm, &tn).then(&en)?))
    })
}

fn stage(r: &LimitResult) -> Option<u32> {
    match r.stabilization {
        Stabilization::At(s) if r.value.is_some() => Some(s),
        _ => None,
    }
}

fn coh_d(i: &Ideal, m: &FpModule, n: &FpModule, k: u32) -> Result<Outcome> {
    let mut a = Audit::default();
    a.hyp("M injective", injective(m)?);
    a.hyp("N injective", injective(n)?);
    a.hyp("M is I-reduced", is_reduced(m, i)?);
    a.hyp("N is I-reduced", is_reduced(n, i)?);
    if !a.held() {
        return Ok(a.skip());
    }
    let (dm, dn) = (transform_d(m, i, k)?, transform_d(n, i, k)?);
    let (Some(sm), Some(sn)) = (stage(&dm), stage(&dn)) else {
        return Ok(a.conclude(None, "D unsettled".into()));
    };
    let one = power_module(i, 1).0;
    let (h1m, h1n) = (hom_module(&one, m)?, hom_module(&one, n)?);
    let (hkm, hkn) = (hom_module(&power_module(i, sm).0, m)?, hom_module(&power_module(i, sn).0, n)?);
    if iso(value(&dm), &hkm.module)? != Some(true) || iso(value(&dn), &hkn.module)? != Some(true) {
        return Ok(a.conclude(Some(false), "D differs from its stage Hom(I^k, -)".into()));
    }
    // restriction along I^k ⊆ I
    let em = hom_pre(&power_map(i, sm, 1).0, &h1m, &hkm)?;
    let en = hom_pre(&power_map(i, sn, 1).0, &h1n, &hkn)?;
    // D(f) on the later stage, through the connecting restriction if needed
    let top = sm.max(sn);
    let htm = hom_module(&power_module(i, top).0, m)?;
    let htn = hom_module(&power_module(i, top).0, n)?;
    let to_top_m = hom_pre(&power_map(i, top, sm).0, &hkm, &htm)?;
    let to_top_n = hom_pre(&power_map(i, top, sn).0, &hkn, &htn)?;
    naturality(a, m, n, &em, &en, |f| {
        let left = em.then(&to_top_m)?.then(&hom_post(f, &htm, &htn)?)?;
        let right = hom_post(f, &h1m, &h1n)?.then(&en)?.then(&to_top_n)?;
        Ok((left, right))
    })
}

fn coh_f(i: &Ideal, m: &FpModule, n: &FpModule, k: u32) -> Result<Outcome> {
    let mut a = Audit::default();
    a.hyp("M flat", classify(m)?.flat);
    a.hyp("N flat", classify(n)?.flat);
    a.hyp("M is I-coreduced", is_coreduced(m, i)?);
    a.hyp("N is I-coreduced", is_coreduced(n, i)?);
    if !a.held() {
        return Ok(a.skip());
    }
    let (fm, fn_) = (cotransform_f(m, i, k)?, cotransform_f(n, i, k)?);
    let (Some(sm), Some(sn)) = (stage(&fm), stage(&fn_)) else {
        return Ok(a.conclude(None, "F unsettled".into()));
    };
    let one = power_module(i, 1).0;
    let (t1m, t1n) = (tensor_module(&one, m)?, tensor_module(&one, n)?);
    let top = sm.max(sn);
    let (ptop, _) = power_module(i, top);
    let (ttm, ttn) = (tensor_module(&ptop, m)?, tensor_module(&ptop, n)?);
    let tkm = tensor_module(&power_module(i, sm).0, m)?;
    let tkn = tensor_module(&power_module(i, sn).0, n)?;
    if iso(value(&fm), &tkm.module)? != Some(true) || iso(value(&fn_), &tkn.module)? != Some(true) {
        return Ok(a.conclude(Some(false), "F differs from its stage I^k (x) -".into()));
    }
    let (idm, idn) = (Morphism::identity(m), Morphism::identity(n));
    // I^k ⊗ M → I ⊗ M from the inclusion
    let em = tensor_map(&power_map(i, sm, 1).0, &idm, &tkm, &t1m);
    let en = tensor_map(&power_map(i, sn, 1).0, &idn, &tkn, &t1n);
    let from_top_m = tensor_map(&power_map(i, top, sm).0, &idm, &ttm, &tkm);
    let from_top_n = tensor_map(&power_map(i, top, sn).0, &idn, &ttn, &tkn);
    let id_one = Morphism::identity(&one);
    let id_top = Morphism::identity(&ptop);
    naturality(a, m, n, &em, &en, |f| {
        let left = from_top_m.then(&em)?.then(&tensor_map(&id_one, f, &t1m, &t1n))?;
        let right = tensor_map(&id_top, f, &ttm, &ttn).then(&from_top_n)?.then(&en)?;
        Ok((left, right))
    })
}

fn restrict(m: &FpModule, s: &Ring, x: &Elem) -> Result<FpModule> {
    restrict_scalars(m, s, &s.element(x)?)
}

/// Regular-element descent of `Ext`/`Tor` vanishing from `R = S/(x)` to `S`.
fn descent(ext: bool, s: &Ring, x: &Elem, m: &FpModule, n: &FpModule, degree: u32) -> Result<Outcome> {
    let mut a = Audit::default();
    let top = degree as usize;
    let groups = |p: &FpModule, q: &FpModule| if ext { ext_all(top, p, q) } else { tor_all(top, p, q) };
    a.hyp("x regular in S", annihilator(s, x).is_zero());
    let over_r = groups(m, n)?;
    a.hyp("vanishing over R in degrees 1..n", over_r[1..].iter().all(FpModule::is_zero));
    if !a.held() {
        return Ok(a.skip());
    }
    let over_s = groups(&restrict(m, s, x)?, &restrict(n, s, x)?)?;
    let ok = over_s[2..].iter().all(FpModule::is_zero);
    let shown: Vec<String> = over_s.iter().map(FpModule::describe).collect();
    Ok(a.conclude(Some(ok), format!("over S: [{}]", shown.join(", "))))
}

/// Exact zero-divisor hypotheses shared by the `Ext`/`Tor` level checks.
fn zero_divisor_hyps(a: &mut Audit, s: &Ring, x: &Elem, m: &FpModule) -> Result<Elem> {
    let y = annihilator(s, x).generator();
    let exact = ideal_of(s, &[s.element(x)?])? == annihilator(s, &y);
    a.hyp("(x, y) exact zero-divisors", exact && !s.is_zero(x));
    let y_in_r = m.ring().reduce(&y);
    let killed = ideal_multiple(&ideal_of(m.ring(), &[m.ring().element(&y_in_r)?])?, m)?;
    a.hyp("yM = 0", killed.module().is_zero());
    Ok(y)
}

/// Ext/Tor level: vanishing over `R` in degrees `1..n` gives
/// `Ext^i_S(R/I, M) ≅ Hom_S(R/I, M)` (or `Tor^S_i ≅ ⊗`) for `1 ≤ i < n`.
fn jorgensen(ext: bool, s: &Ring, x: &Elem, i: &Ideal, m: &FpModule, degree: u32) -> Result<Outcome> {
    let mut a = Audit::default();
    zero_divisor_hyps(&mut a, s, x, m)?;
    let top = degree as usize;
    let q = FpModule::cyclic(i);
    let groups = |p: &FpModule, n: &FpModule| if ext { ext_all(top, p, n) } else { tor_all(top, p, n) };
    let over_r = groups(&q, m)?;
    a.hyp("vanishing over R in degrees 1..n", over_r[1..].iter().all(FpModule::is_zero));
    if !a.held() {
        return Ok(a.skip());
    }
    let (qs, ms) = (restrict(&q, s, x)?, restrict(m, s, x)?);
    let over_s = groups(&qs, &ms)?;
    let base = &over_s[0];
    let mut ok = true;
    for g in &over_s[1..top] {
        ok &= g.is_isomorphic(base)?;
    }
    let shown: Vec<String> = over_s.iter().map(FpModule::describe).collect();
    Ok(a.conclude(Some(ok), format!("over S: [{}]", shown.join(", "))))
}

/// Evaluates the local (co)homology statement over `S` under two readings
/// of the ideal: its preimage in `S` and the literal lift of its generator.
fn lt_audit(cohomology: bool, s: &Ring, x: &Elem, i: &Ideal, m: &FpModule, ctx: &Context) -> Result<Outcome> {
    let mut a = Audit::default();
    zero_divisor_hyps(&mut a, s, x, m)?;
    let every_module = if cohomology {
        is_reduced(&FpModule::cyclic(&i.power(2)), i)?
    } else {
        is_coreduced(&FpModule::cyclic(&i.power(2)).direct_sum(&FpModule::free(i.ring(), 1))?, i)?
    };
    a.hyp(if cohomology { "every R-module I-reduced" } else { "every R-module I-coreduced" }, every_module);
    let top = ctx.degree as usize;
    let profile = |j: &Ideal, n: &FpModule| {
        if cohomology {
            local_cohomology_profile(top, j, n, ctx.k_max)
        } else {
            local_homology_profile(top, j, n, ctx.k_max)
        }
    };
    let over_r = profile(i, m)?;
    let vanish = over_r[1..].iter().all(|r| value(r).is_some_and(FpModule::is_zero));
    a.hyp("H over R vanishes in degrees 1..n", vanish);
    if !a.held() {
        return Ok(a.skip());
    }
    let g = i.generator();
    let qs = restrict(&FpModule::cyclic(i), s, x)?;
    let ms = restrict(m, s, x)?;
    let target = if cohomology { hom_module(&qs, &ms)?.module } else { tensor_module(&qs, &ms)?.module };
    let mut found = Vec::new();
    let mut notes = Vec::new();
    for (label, gens) in [("preimage", vec![g.clone(), x.clone()]), ("literal", vec![g])] {
        let elems = gens.iter().map(|e| s.element(&s.reduce(e))).collect::<Result<Vec<_>>>()?;
        let j = ideal_of(s, &elems)?;
        let h = profile(&j, &ms)?;
        let mut holds = Some(true);
        for r in &h[1..top] {
            holds = and(holds, iso(value(r), &target)?);
        }
        let shown: Vec<String> = h.iter().map(|r| show(value(r))).collect();
        notes.push(format!(
            "{label} J = ({}) idempotent = {}: H = [{}] vs {} -> {holds:?}",
            j.generator(),
            j.is_idempotent(),
            shown.join(", "),
            target.describe()
        ));
        if holds == Some(true) {
            found.push(label);
        }
    }
    let verdict = if found.is_empty() { Verdict::Finding } else { Verdict::Pass };
    Ok(a.done(verdict, notes.join("; ")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::DEFAULT_KMAX;

    const CTX: Context = Context { degree: 4, k_max: DEFAULT_KMAX };

    fn inst(n: i128, g: i64, ds: &[i128]) -> Instance {
        let r = Ring::integers_mod(n);
        let ideal = ideal_of(&r, &[r.int(g)]).unwrap();
        let modules = ds
            .iter()
            .map(|&d| if d == 0 { FpModule::free(&r, 1) } else { FpModule::cyclic_elem(&r, &Elem::int(d)) })
            .collect();
        Instance { ring: r, ideal, modules, base: None }
    }

    fn verdict(name: &str, i: &Instance) -> Verdict {
        run_check(name, &CTX, i).unwrap().verdict
    }

    #[test]
    fn representability_examples() {
        assert_eq!(verdict("gamma_hom", &inst(12, 4, &[0])), Verdict::Pass);
        assert_eq!(verdict("prop_p", &inst(12, 2, &[0])), Verdict::Skip);
        for name in ["gamma_hom", "lambda_tensor", "prop_p", "prop_p1", "cor_radical"] {
            assert_eq!(verdict(name, &inst(12, 1, &[0])), Verdict::Pass, "{name}");
        }
    }

    #[test]
    fn exact_sequence_examples() {
        for name in ["prop_p3", "cor_p3", "prop_ll"] {
            assert_eq!(verdict(name, &inst(12, 2, &[0])), Verdict::Pass, "{name}");
            assert_eq!(verdict(name, &inst(4, 2, &[0])), Verdict::Pass, "{name}");
        }
        assert_eq!(verdict("prop_p4", &inst(12, 4, &[0])), Verdict::Pass);
    }

    #[test]
    fn main_theorem_examples() {
        assert_eq!(verdict("thm_t1", &inst(12, 4, &[0])), Verdict::Pass);
        assert_eq!(verdict("thm_t2", &inst(12, 4, &[6])), Verdict::Pass);
        assert_eq!(verdict("thm_t1", &inst(12, 2, &[0])), Verdict::Skip);
        assert_eq!(verdict("idempotence_equiv", &inst(12, 2, &[])), Verdict::Pass);
        assert_eq!(verdict("dims", &inst(12, 4, &[0, 6])), Verdict::Pass);
        assert_eq!(verdict("dims", &inst(12, 1, &[0])), Verdict::Pass);
    }

    #[test]
    fn coherence_examples() {
        assert_eq!(verdict("coh_gamma", &inst(12, 4, &[0, 6])), Verdict::Pass);
        assert_eq!(verdict("coh_lambda", &inst(12, 4, &[0, 0])), Verdict::Pass);
        assert_eq!(verdict("coh_d", &inst(12, 4, &[0, 4])), Verdict::Pass);
        assert_eq!(verdict("coh_f", &inst(12, 4, &[0, 0])), Verdict::Pass);
    }

    #[test]
    fn descent_examples() {
        let zz = Ring::integers();
        let r = Ring::integers_mod(2);
        let k = FpModule::free(&r, 1);
        let i = Instance {
            ring: r.clone(),
            ideal: Ideal::zero(&r),
            modules: vec![k.clone(), k.clone()],
            base: Some((zz, Elem::int(2))),
        };
        assert_eq!(verdict("ext_descent", &i), Verdict::Pass);
        assert_eq!(verdict("tor_descent", &i), Verdict::Pass);

        let s = Ring::integers_mod(9);
        let r = Ring::integers_mod(3);
        let i = Instance {
            ring: r.clone(),
            ideal: Ideal::zero(&r),
            modules: vec![FpModule::free(&r, 1)],
            base: Some((s, Elem::int(3))),
        };
        assert_eq!(verdict("lt1_ext", &i), Verdict::Pass);
        assert_eq!(verdict("lt2_tor", &i), Verdict::Pass);
        assert_eq!(verdict("lt1_audit", &i), Verdict::Finding);
        let unit = Instance { ideal: Ideal::unit(&r), ..i };
        assert_eq!(verdict("lt1_audit", &unit), Verdict::Pass);
    }

    #[test]
    fn arity_is_enforced() {
        assert!(run_check("gamma_hom", &CTX, &inst(12, 4, &[])).is_err());
        assert!(run_check("nope", &CTX, &inst(12, 4, &[0])).is_err());
    }
}
