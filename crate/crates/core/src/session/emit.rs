use serde_json::json;

use super::run::Report;
use super::SCHEMA_VERSION;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Renders a report. Both formats are pure functions of the report.
pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Text => {
            let mut s = format!("workbench {}\n", report.version);
            for r in &report.results {
                s += &format!("line {}: {} -> [{}] {}\n", r.line, r.command, r.status.label(), r.summary);
            }
            s += &format!("status {}\n", report.exit_code);
            s
        }
        Format::Json => {
            let o = &report.options;
            let doc = json!({
                "version": { "schema": SCHEMA_VERSION, "tool": report.version },
                "session": {
                    "text": report.echo,
                    "kmax": o.kmax,
                    "degree": o.degree,
                    "seed": o.seed,
                    "kmax_env": o.kmax_env,
                },
                "results": report.results,
                "status": report.exit_code,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::session::{parse_session, run_session, Options};

    const TEXT: &str = "ring R = Z/12\nideal I = (4)\nmodule M = free 1\ncompute gamma I M\ncompute D I M\ncheck reduced I M\n";

    #[test]
    fn text_has_one_line_per_command() {
        let r = run_session(&parse_session(TEXT).unwrap(), &Options::default());
        let out = emit(&r, Format::Text);
        assert_eq!(out.lines().filter(|l| l.starts_with("line ")).count(), 3);
        assert!(out.contains("line 4: compute gamma I M -> [ok] Z/4 (stabilized at 1)"));
        assert!(out.ends_with("status 0\n"));
    }

    #[test]
    fn json_schema_and_round_trip() {
        let s = parse_session(TEXT).unwrap();
        let r = run_session(&s, &Options::default());
        let a = emit(&r, Format::Json);
        let b = emit(&run_session(&s, &Options::default()), Format::Json);
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["results", "session", "status", "version"]);
        let echoed = parse_session(v["session"]["text"].as_str().unwrap()).unwrap();
        assert_eq!(echoed, s);
        assert_eq!(v["results"][0]["payload"]["value"]["describe"], "Z/4");
    }
}
