use std::collections::HashMap;

use serde::Serialize;
use serde_json::{json, Value};

use super::parse::{Command, Flags, Functor, Session, Statement};
use crate::functors::{
    completion_lambda, cotransform_f, is_coreduced, is_reduced, torsion_gamma, transform_d, LimitResult,
    Stabilization, DEFAULT_KMAX,
};
use crate::homology::{dimension_bounds, ext, local_cohomology, local_homology, tor, DimBound};
use crate::lab::{run_check, run_suite, Context, Instance, SuiteConfig, Verdict};
use crate::module::FpModule;
use crate::ring::Ideal;
use crate::Result;

/// Session-wide defaults; commands may override `degree` and `kmax`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Options {
    pub kmax: u32,
    pub degree: u32,
    pub seed: u64,
    /// Raw value of the default-kmax environment variable, if set.
    pub kmax_env: Option<String>,
}

impl Default for Options {
    fn default() -> Self {
        Options { kmax: DEFAULT_KMAX, degree: 4, seed: 0, kmax_env: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// A value was computed.
    Ok,
    Pass,
    Skip,
    Finding,
    Indeterminate,
    /// The library refused the computation.
    Error,
    Fail,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Pass => "pass",
            Status::Skip => "skip",
            Status::Finding => "finding",
            Status::Indeterminate => "indeterminate",
            Status::Error => "error",
            Status::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommandResult {
    pub line: usize,
    pub command: String,
    pub status: Status,
    pub summary: String,
    pub payload: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub version: String,
    pub echo: String,
    pub options: Options,
    pub results: Vec<CommandResult>,
    pub exit_code: i32,
}

pub fn module_json(m: &FpModule) -> Value {
    let c = m.cover();
    json!({
        "describe": m.describe(),
        "invariant_factors": m.invariant_factors().iter().map(|e| c.display(e)).collect::<Vec<_>>(),
        "free_rank": m.free_rank(),
        "presentation": m.simplify().module.relations().to_string(),
    })
}

fn stabilization_json(s: Stabilization) -> Value {
    match s {
        Stabilization::At(k) => json!({ "stabilized_at": k }),
        Stabilization::NonStabilizing(k) => json!({ "non_stabilizing": k }),
    }
}

fn limit(r: &LimitResult) -> (Status, String, Value) {
    let payload = json!({
        "value": r.value.as_ref().map(module_json),
        "stabilization": stabilization_json(r.stabilization),
        "trace": r.trace,
        "mittag_leffler": r.mittag_leffler,
    });
    match (&r.value, r.stabilization) {
        (Some(v), Stabilization::At(k)) => (Status::Ok, format!("{} (stabilized at {k})", v.describe()), payload),
        (_, Stabilization::NonStabilizing(k)) => {
            (Status::Indeterminate, format!("NonStabilizing({k})"), payload)
        }
        (None, Stabilization::At(k)) => (Status::Indeterminate, format!("no value (stabilized at {k})"), payload),
    }
}

fn value(m: &FpModule) -> (Status, String, Value) {
    (Status::Ok, m.describe(), json!({ "value": module_json(m) }))
}

fn verdict_status(v: Verdict) -> Status {
    match v {
        Verdict::Pass => Status::Pass,
        Verdict::Fail => Status::Fail,
        Verdict::Skip => Status::Skip,
        Verdict::Indeterminate => Status::Indeterminate,
        Verdict::Finding => Status::Finding,
    }
}

struct Env {
    ideals: HashMap<String, Ideal>,
    modules: HashMap<String, FpModule>,
}

fn execute(env: &Env, cmd: &Command, flags: &Flags, opts: &Options) -> Result<(Status, String, Value)> {
    let kmax = flags.kmax.unwrap_or(opts.kmax);
    let degree = flags.degree.unwrap_or(opts.degree);
    let ideal = |n: &String| &env.ideals[n];
    let module = |n: &String| &env.modules[n];
    Ok(match cmd {
        Command::Limit { functor, ideal: i, module: m } => {
            let f = match functor {
                Functor::Gamma => torsion_gamma,
                Functor::Lambda => completion_lambda,
                Functor::D => transform_d,
                Functor::F => cotransform_f,
            };
            limit(&f(module(m), ideal(i), kmax)?)
        }
        Command::Ext { degree, left, right } => value(&ext(*degree, module(left), module(right))?),
        Command::Tor { degree, left, right } => value(&tor(*degree, module(left), module(right))?),
        Command::LocalCohomology { degree, ideal: i, module: m } => {
            limit(&local_cohomology(*degree, ideal(i), module(m), kmax)?)
        }
        Command::LocalHomology { degree, ideal: i, module: m } => {
            limit(&local_homology(*degree, ideal(i), module(m), kmax)?)
        }
        Command::Dims { ideal: i, modules } => {
            let fam: Vec<FpModule> = modules.iter().map(|m| module(m).clone()).collect();
            let d = dimension_bounds(ideal(i), &fam, degree, kmax)?;
            let status = if d.determinate { Status::Ok } else { Status::Indeterminate };
            let bound = |b: DimBound| b.to_string();
            let summary = format!(
                "pd {}, fd {}, cd >= {}, hd >= {}",
                bound(d.pd),
                bound(d.fd),
                bound(d.cd_family),
                bound(d.hd_family)
            );
            (status, summary, serde_json::to_value(&d).expect("serializable"))
        }
        Command::Reduced { ideal: i, module: m } | Command::Coreduced { ideal: i, module: m } => {
            let held = if matches!(cmd, Command::Reduced { .. }) {
                is_reduced(module(m), ideal(i))?
            } else {
                is_coreduced(module(m), ideal(i))?
            };
            (Status::Ok, held.to_string(), json!({ "value": held }))
        }
        Command::Check { name, ideal: i, modules, over } => {
            let ideal = ideal(i).clone();
            let inst = Instance {
                ring: ideal.ring().clone(),
                modules: modules.iter().map(|m| module(m).clone()).collect(),
                base: over.as_ref().map(|x| {
                    let xi = &env.ideals[x];
                    (xi.ring().clone(), xi.generator())
                }),
                ideal,
            };
            let out = run_check(name, &Context { degree, k_max: kmax }, &inst)?;
            let summary = format!("{}: {}", verdict_status(out.verdict).label(), out.detail);
            (verdict_status(out.verdict), summary, serde_json::to_value(&out).expect("serializable"))
        }
        Command::Suite { name } => {
            let cfg = SuiteConfig {
                seed: flags.seed.unwrap_or(opts.seed),
                budget: flags.budget,
                degree,
                k_max: kmax,
            };
            let rep = run_suite(name, &cfg)?;
            let c = rep.counts;
            let status = match rep.exit_code() {
                3 => Status::Fail,
                2 => Status::Indeterminate,
                _ => Status::Pass,
            };
            let summary = format!(
                "{} instances: {} pass, {} fail, {} skip, {} indeterminate, {} finding",
                rep.instances, c.pass, c.fail, c.skip, c.indeterminate, c.finding
            );
            (status, summary, serde_json::to_value(&rep).expect("serializable"))
        }
    })
}

/// Executes every command in order. Library errors become `error`
/// entries; the session always runs to the end.
pub fn run_session(session: &Session, opts: &Options) -> Report {
    let mut env = Env { ideals: HashMap::new(), modules: HashMap::new() };
    let mut results = Vec::new();
    for (stmt, &line) in session.statements.iter().zip(&session.lines) {
        match stmt {
            Statement::Ring { .. } => {}
            Statement::Ideal { name, ideal, .. } => {
                env.ideals.insert(name.clone(), ideal.clone());
            }
            Statement::Module { name, module, .. } => {
                env.modules.insert(name.clone(), module.clone());
            }
            Statement::Command { command, flags } => {
                let (status, summary, payload) = execute(&env, command, flags, opts).unwrap_or_else(|e| {
                    (Status::Error, format!("error: {e}"), json!({ "error": e.to_string() }))
                });
                results.push(CommandResult { line, command: stmt.to_string(), status, summary, payload });
            }
        }
    }
    let worst = results.iter().map(|r| r.status).max();
    let exit_code = match worst {
        Some(Status::Fail) => 3,
        Some(Status::Indeterminate | Status::Error) => 2,
        _ => 0,
    };
    Report {
        version: env!("CARGO_PKG_VERSION").to_string(),
        echo: session.to_string(),
        options: opts.clone(),
        results,
        exit_code,
    }
}
