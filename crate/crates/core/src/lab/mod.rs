//! Audit suites over seeded instance grids.

mod checks;
mod sample;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

pub use checks::{
    arity, check_names, needs_base, run_check, sample_morphisms, Context, Instance, Outcome,
    Verdict, SUITES,
};
pub use sample::{module_literal, ring_grid, sample_modules};

use crate::error::{Error, Result};
use crate::functors::DEFAULT_KMAX;
use crate::module::{quotient_by_ideal, FpModule};
use crate::ring::{all_ideals, annihilator, exact_zero_divisor_pairs, ideal_of, Elem, Ideal, Ring};
use sample::rng_for;

pub const SUITE_NAMES: &[&str] =
    &["representability", "exact_sequences", "main_theorems", "coherence", "descent", "all"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Cap on the number of records; `None` runs the whole grid.
    pub budget: Option<usize>,
    pub degree: u32,
    pub k_max: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, budget: None, degree: 4, k_max: DEFAULT_KMAX }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub check: String,
    pub ring: String,
    pub ideal: String,
    pub modules: Vec<String>,
    /// `S` and `x` for descent instances.
    pub base: Option<(String, String)>,
    pub hypotheses: Vec<(String, bool)>,
    pub verdict: Verdict,
    pub detail: String,
    /// A session that re-runs this single instance.
    pub reproducer: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub indeterminate: usize,
    pub finding: usize,
}

impl Counts {
    fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::Skip => self.skip += 1,
            Verdict::Indeterminate => self.indeterminate += 1,
            Verdict::Finding => self.finding += 1,
        }
    }

    /// Instances whose hypotheses held.
    pub fn evaluated(&self) -> usize {
        self.pass + self.fail + self.indeterminate + self.finding
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub degree: u32,
    pub k_max: u32,
    pub instances: usize,
    pub counts: Counts,
    pub per_check: BTreeMap<String, Counts>,
    pub records: Vec<Record>,
}

impl SuiteReport {
    fn new(suite: &str, cfg: &SuiteConfig, mut records: Vec<Record>) -> SuiteReport {
        if let Some(b) = cfg.budget {
            records.truncate(b);
        }
        records.sort_by(|a, b| {
            (&a.check, &a.ring, &a.ideal, &a.modules, &a.base)
                .cmp(&(&b.check, &b.ring, &b.ideal, &b.modules, &b.base))
        });
        let mut counts = Counts::default();
        let mut per_check: BTreeMap<String, Counts> = BTreeMap::new();
        for r in &records {
            counts.add(r.verdict);
            per_check.entry(r.check.clone()).or_default().add(r.verdict);
        }
        SuiteReport {
            suite: suite.to_string(),
            seed: cfg.seed,
            degree: cfg.degree,
            k_max: cfg.k_max,
            instances: records.len(),
            counts,
            per_check,
            records,
        }
    }

    /// 3 when a counterexample was found, 2 when some verdict is
    /// indeterminate, 0 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.counts.fail > 0 {
            3
        } else if self.counts.indeterminate > 0 {
            2
        } else {
            0
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.verdict == Verdict::Fail)
    }
}

/// Single-instance session text for a check.
pub fn reproducer(name: &str, ctx: &Context, inst: &Instance) -> String {
    let mut s = String::new();
    if let Some((base, x)) = &inst.base {
        let _ = writeln!(s, "ring S = {base}");
        let _ = writeln!(s, "ring R = {}", inst.ring);
        let _ = writeln!(s, "ideal X = ({x}) in S");
    } else {
        let _ = writeln!(s, "ring R = {}", inst.ring);
    }
    let _ = writeln!(s, "ideal I = {} in R", inst.ideal);
    let mut args = vec!["I".to_string()];
    for (n, m) in inst.modules.iter().enumerate() {
        let _ = writeln!(s, "module M{n} = {} in R", module_literal(m));
        args.push(format!("M{n}"));
    }
    if inst.base.is_some() {
        args.push("over X".into());
    }
    let _ = writeln!(s, "check {name} {} --degree {} --kmax {}", args.join(" "), ctx.degree, ctx.k_max);
    s
}

fn record(name: &str, ctx: &Context, inst: &Instance) -> Result<Record> {
    let out = run_check(name, ctx, inst)?;
    Ok(Record {
        check: name.to_string(),
        ring: inst.ring.to_string(),
        ideal: inst.ideal.to_string(),
        modules: inst.modules.iter().map(module_literal).collect(),
        base: inst.base.as_ref().map(|(s, x)| (s.to_string(), x.to_string())),
        hypotheses: out.hypotheses,
        verdict: out.verdict,
        detail: out.detail,
        reproducer: reproducer(name, ctx, inst),
    })
}

fn ctx(cfg: &SuiteConfig) -> Context {
    Context { degree: cfg.degree, k_max: cfg.k_max }
}

fn single(ring: &Ring, ideal: &Ideal, m: &FpModule) -> Instance {
    Instance { ring: ring.clone(), ideal: ideal.clone(), modules: vec![m.clone()], base: None }
}

/// Every ideal against every sampled module, for single-module checks.
fn grid_suite(suite: &str, names: &[&str], rings: &[Ring], cfg: &SuiteConfig) -> Result<Vec<Record>> {
    let c = ctx(cfg);
    let mut out = Vec::new();
    for ring in rings {
        let mut rng = rng_for(cfg.seed, &format!("{suite}:{ring}"));
        let modules = sample_modules(ring, 10, &mut rng);
        for ideal in all_ideals(ring)? {
            for m in &modules {
                for name in names {
                    out.push(record(name, &c, &single(ring, &ideal, m))?);
                }
            }
        }
    }
    Ok(out)
}

pub fn suite_representability(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let names = checks_of("representability");
    let records = grid_suite("representability", names, &ring_grid(60, 4), cfg)?;
    Ok(SuiteReport::new("representability", cfg, records))
}

pub fn suite_exact_sequences(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let names = checks_of("exact_sequences");
    let records = grid_suite("exact_sequences", names, &ring_grid(60, 4), cfg)?;
    Ok(SuiteReport::new("exact_sequences", cfg, records))
}

pub fn suite_main_theorems(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let c = ctx(cfg);
    let mut records = Vec::new();
    for ring in ring_grid(100, 4) {
        let mut rng = rng_for(cfg.seed, &format!("main_theorems:{ring}"));
        let modules = sample_modules(&ring, 10, &mut rng);
        for ideal in all_ideals(&ring)? {
            let family = Instance { ring: ring.clone(), ideal: ideal.clone(), modules: modules.clone(), base: None };
            records.push(record("dims", &c, &family)?);
            records.push(record("projective_quotients", &c, &family)?);
            for m in &modules {
                for name in ["thm_t1", "thm_t2", "t_vanishing"] {
                    records.push(record(name, &c, &single(&ring, &ideal, m))?);
                }
            }
        }
    }
    for ring in ring_grid(200, 4) {
        for ideal in all_ideals(&ring)? {
            let bare = Instance { ring: ring.clone(), ideal, modules: Vec::new(), base: None };
            records.push(record("idempotence_equiv", &c, &bare)?);
        }
    }
    Ok(SuiteReport::new("main_theorems", cfg, records))
}

pub fn suite_coherence(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let c = ctx(cfg);
    let mut records = Vec::new();
    for ring in ring_grid(36, 3) {
        let mut rng = rng_for(cfg.seed, &format!("coherence:{ring}"));
        let modules = sample_modules(&ring, 10, &mut rng);
        // five endomorphism diagrams and ten maps between neighbours
        let mut pairs: Vec<(usize, usize)> = (0..5).map(|j| (j, j)).collect();
        pairs.extend((0..10).map(|j| (j, (j + 1) % 10)));
        for ideal in all_ideals(&ring)? {
            for &(a, b) in &pairs {
                let inst = Instance {
                    ring: ring.clone(),
                    ideal: ideal.clone(),
                    modules: vec![modules[a].clone(), modules[b].clone()],
                    base: None,
                };
                for name in checks_of("coherence") {
                    records.push(record(name, &c, &inst)?);
                }
            }
        }
    }
    Ok(SuiteReport::new("coherence", cfg, records))
}

/// Regular-element bases and exact zero-divisor bases.
fn regular_bases() -> Vec<(Ring, Elem)> {
    let zz = Ring::integers();
    let f2 = Ring::poly_over(2).expect("prime");
    let c = f2.cover();
    vec![
        (zz.clone(), Elem::int(2)),
        (zz, Elem::int(3)),
        (f2.clone(), c.var()),
        (f2, c.add(&c.var(), &c.one())),
    ]
}

fn local_bases() -> Vec<Ring> {
    vec![
        Ring::integers_mod(9),
        Ring::integers_mod(25),
        Ring::poly_mod(2, &[0, 0, 0, 1]).expect("prime"),
    ]
}

pub fn suite_descent(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let c = ctx(cfg);
    let mut records = Vec::new();
    let top = Context { degree: cfg.degree.max(5), ..c };
    for (s, x) in regular_bases() {
        let r = s.quotient_by(&x);
        let mut rng = rng_for(cfg.seed, &format!("descent:{s}:{x}"));
        let modules = sample_modules(&r, 5, &mut rng);
        let pairs = modules.iter().flat_map(|m| modules.iter().map(move |n| (m, n))).take(20);
        for (m, n) in pairs {
            let inst = Instance {
                ring: r.clone(),
                ideal: Ideal::zero(&r),
                modules: vec![m.clone(), n.clone()],
                base: Some((s.clone(), x.clone())),
            };
            records.push(record("ext_descent", &top, &inst)?);
            records.push(record("tor_descent", &top, &inst)?);
        }
    }
    for s in local_bases() {
        for pair in exact_zero_divisor_pairs(&s)? {
            let r = s.quotient_by(&pair.x);
            let y = r.element(&r.reduce(&pair.y))?;
            let y_ideal = ideal_of(&r, &[y])?;
            let mut rng = rng_for(cfg.seed, &format!("descent:{s}:{}", pair.x));
            let mut modules: Vec<FpModule> = Vec::new();
            for m in sample_modules(&r, 10, &mut rng) {
                let q = quotient_by_ideal(&m, &y_ideal)?.0.simplify().module;
                if !contains_iso(&modules, &q)? {
                    modules.push(q);
                }
            }
            // Modules killed by y are often forced to be sums of the residue
            // field; pad with larger sums so each base sees ten distinct ones.
            let field = FpModule::cyclic(&y_ideal).simplify().module;
            let mut sum = field.clone();
            while modules.len() < 10 {
                if !contains_iso(&modules, &sum)? {
                    modules.push(sum.clone());
                }
                sum = sum.direct_sum(&field)?.simplify().module;
            }
            for ideal in all_ideals(&r)? {
                for m in &modules {
                    let inst = Instance {
                        ring: r.clone(),
                        ideal: ideal.clone(),
                        modules: vec![m.clone()],
                        base: Some((s.clone(), pair.x.clone())),
                    };
                    for name in ["lt1_ext", "lt2_tor", "lt1_audit", "lt2_audit"] {
                        records.push(record(name, &c, &inst)?);
                    }
                }
            }
        }
    }
    Ok(SuiteReport::new("descent", cfg, records))
}

fn contains_iso(family: &[FpModule], m: &FpModule) -> Result<bool> {
    for n in family {
        if n.is_isomorphic(m)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn checks_of(suite: &str) -> &'static [&'static str] {
    SUITES.iter().find(|(s, _)| *s == suite).map(|(_, n)| *n).expect("known suite")
}

/// Runs a suite by name; `all` concatenates the five suites.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    match name {
        "representability" => suite_representability(cfg),
        "exact_sequences" => suite_exact_sequences(cfg),
        "main_theorems" => suite_main_theorems(cfg),
        "coherence" => suite_coherence(cfg),
        "descent" => suite_descent(cfg),
        "all" => {
            let full = SuiteConfig { budget: None, ..*cfg };
            let mut records = Vec::new();
            for s in &SUITE_NAMES[..5] {
                records.extend(run_suite(s, &full)?.records);
            }
            Ok(SuiteReport::new("all", cfg, records))
        }
        "fuzz" => fuzz_campaign(cfg.seed, cfg.budget.unwrap_or(100), cfg),
        _ => Err(Error::Unsupported(format!("unknown suite `{name}`"))),
    }
}

/// `budget` random instances drawn across all suites' checks.
pub fn fuzz_campaign(seed: u64, budget: usize, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let cfg = SuiteConfig { seed, budget: None, ..*cfg };
    let mut rng = rng_for(seed, "fuzz");
    let rings = ring_grid(60, 4);
    let locals = local_bases();
    let regular = regular_bases();
    let mut records = Vec::with_capacity(budget);
    let names = check_names();
    while records.len() < budget {
        let name = *names.choose(&mut rng).expect("nonempty");
        let c = Context { degree: rng.gen_range(1..=cfg.degree.max(1)), k_max: cfg.k_max };
        let inst = if needs_base(name) {
            let (s, x) = if matches!(name, "ext_descent" | "tor_descent") {
                regular.choose(&mut rng).expect("nonempty").clone()
            } else {
                let s = locals.choose(&mut rng).expect("nonempty").clone();
                let pairs = exact_zero_divisor_pairs(&s)?;
                let x = pairs.choose(&mut rng).expect("local bases have pairs").x.clone();
                (s, x)
            };
            let r = s.quotient_by(&x);
            let y = annihilator(&s, &x).generator();
            let count = arity(name).unwrap_or(1);
            let mut modules = Vec::new();
            for _ in 0..count {
                let m = sample::random_module(&r, &mut rng);
                let m = if matches!(name, "ext_descent" | "tor_descent") {
                    m
                } else {
                    let yi = ideal_of(&r, &[r.element(&r.reduce(&y))?])?;
                    quotient_by_ideal(&m, &yi)?.0.simplify().module
                };
                modules.push(m);
            }
            let ideals = all_ideals(&r)?;
            let ideal = ideals.choose(&mut rng).expect("nonempty").clone();
            Instance { ring: r, ideal, modules, base: Some((s, x)) }
        } else {
            let ring = rings.choose(&mut rng).expect("nonempty").clone();
            let ideals = all_ideals(&ring)?;
            let ideal = ideals.choose(&mut rng).expect("nonempty").clone();
            let count = arity(name).unwrap_or_else(|| rng.gen_range(1..=3));
            let modules = (0..count).map(|_| sample::random_module(&ring, &mut rng)).collect();
            Instance { ring, ideal, modules, base: None }
        };
        records.push(record(name, &c, &inst)?);
    }
    Ok(SuiteReport::new("fuzz", &cfg, records))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fuzz_is_deterministic() {
        let cfg = SuiteConfig::default();
        let a = fuzz_campaign(3, 15, &cfg).unwrap();
        let b = fuzz_campaign(3, 15, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.instances, 15);
        assert_eq!(a.counts.fail, 0, "{:?}", a.failures().collect::<Vec<_>>());
        assert_eq!(fuzz_campaign(3, 0, &cfg).unwrap().instances, 0);
    }

    #[test]
    fn budget_caps_records() {
        let cfg = SuiteConfig { budget: Some(7), ..SuiteConfig::default() };
        assert_eq!(suite_descent(&cfg).unwrap().instances, 7);
    }

    #[test]
    fn reproducer_text() {
        let r = Ring::integers_mod(12);
        let i = ideal_of(&r, &[r.int(4)]).unwrap();
        let inst = single(&r, &i, &FpModule::free(&r, 1));
        let text = reproducer("gamma_hom", &Context { degree: 4, k_max: 20 }, &inst);
        assert_eq!(
            text,
            "ring R = Z/12\nideal I = (4) in R\nmodule M0 = free 1 in R\ncheck gamma_hom I M0 --degree 4 --kmax 20\n"
        );
    }
}
