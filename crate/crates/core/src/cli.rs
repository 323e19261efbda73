//! The `skein` command line.

use std::path::PathBuf;
use std::str::FromStr;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::catalog;
use crate::diagram::{adequacy, parse_pd, PDCode};
use crate::jones::{bracket, colored_reduced, Budget, JonesError};
use crate::poly::LaurentPoly;
use crate::tail::{extract, stabilization_check, Side, TailError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_VIOLATION: i32 = 4;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "skein", version, about = "Kauffman brackets, colored Jones polynomials and their stable tails")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Largest sweep boundary width.
    #[arg(long, global = true, env = "SKEIN_MAX_WIDTH")]
    pub max_width: Option<usize>,
    /// Largest crossing count for exhaustive state sums.
    #[arg(long, global = true, env = "SKEIN_MAX_CROSSINGS")]
    pub max_crossings: Option<usize>,
    /// Largest number of simultaneous sweep states.
    #[arg(long, global = true, env = "SKEIN_MAX_STATES")]
    pub max_states: Option<usize>,
    /// Wall-clock limit in seconds.
    #[arg(long, global = true, env = "SKEIN_TIME_LIMIT_SECS")]
    pub time_limit: Option<u64>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Kauffman bracket in A (a crossing-free circle is -A^2-A^-2).
    Bracket { input: String },
    /// Jones polynomial (the N = 2 colored Jones polynomial).
    Jones { input: String },
    /// Colored Jones polynomial J_N.
    Cjones {
        input: String,
        /// Polynomial index N >= 2 (N = 2 is the Jones polynomial).
        #[arg(long)]
        color: u32,
    },
    /// A- and B-adequacy of the diagram.
    Adequacy { input: String },
    /// First coefficients of the stable tail (or head with --head).
    Tail {
        input: String,
        #[arg(long)]
        terms: usize,
        #[arg(long)]
        head: bool,
    },
    /// Checks J_N against J_(N+1) to order N for N = 2..max-1.
    VerifyStability {
        input: String,
        #[arg(long)]
        max: u32,
        #[arg(long)]
        head: bool,
    },
    /// Lists bundled diagrams, or shows one.
    Catalog { name: Option<String> },
}

/// Everything a single invocation needs.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub budget: Budget,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let mut budget = Budget::default();
        if let Some(w) = cli.max_width.filter(|&w| w > 0) {
            budget.max_width = w;
        }
        if let Some(c) = cli.max_crossings.filter(|&c| c > 0) {
            budget.max_brute_crossings = c;
        }
        if let Some(s) = cli.max_states.filter(|&s| s > 0) {
            budget.max_states = s;
        }
        if let Some(t) = cli.time_limit.filter(|&t| t > 0) {
            budget.time_limit = Some(Duration::from_secs(t));
        }
        RunConfig {
            command: cli.command,
            format: cli.format,
            budget,
        }
    }
}

/// Exit status and the text destined for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, msg: impl Into<String>) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }
}

fn jones_failure(e: JonesError) -> Outcome {
    let code = if e.is_budget() {
        EXIT_BUDGET
    } else if matches!(e, JonesError::Color { .. }) {
        EXIT_PARSE
    } else {
        EXIT_INTERNAL
    };
    Outcome::fail(code, format!("error: {e}"))
}

fn tail_failure(e: TailError) -> Outcome {
    match e {
        TailError::Jones(e) => jones_failure(e),
        TailError::Violation { n, index } => Outcome::fail(
            EXIT_VIOLATION,
            format!("error: stabilization fails: J_{n} and J_{} differ at coefficient {index}", n + 1),
        ),
        TailError::Zero => Outcome::fail(EXIT_INTERNAL, "error: zero polynomial"),
    }
}

/// Reads `catalog:NAME` or a PD file.
pub fn load_input(input: &str) -> Result<PDCode, String> {
    if let Some(name) = input.strip_prefix("catalog:") {
        return catalog::lookup(name).map_err(|e| e.to_string());
    }
    let path = PathBuf::from(input);
    let text = std::fs::read_to_string(&path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_pd(&text).map_err(|e| format!("{}:{e}", path.display()))
}

fn number(c: &BigInt) -> Value {
    Value::Number(serde_json::Number::from_str(&c.to_string()).expect("integers are JSON numbers"))
}

/// `{"exponents": [...], "coefficients": [...]}` in increasing `A`-degree.
pub fn a_polynomial_json(p: &LaurentPoly) -> Value {
    json!({
        "variable": "A",
        "exponents": p.terms().iter().map(|(e, _)| *e).collect::<Vec<_>>(),
        "coefficients": p.terms().iter().map(|(_, c)| number(c)).collect::<Vec<_>>(),
    })
}

/// The `q`-series record plus the exact `A` form.
pub fn polynomial_json(p: &LaurentPoly) -> Value {
    let mut v = match p.to_q() {
        Ok(q) => json!({
            "variable": "q",
            "sign": q.sign,
            "min_exponent": q.min_exponent_halves(),
            "step": q.step_halves(),
            "coefficients": q.coeffs.iter().map(number).collect::<Vec<_>>(),
        }),
        Err(_) => json!({ "variable": "q", "sign": 1, "min_exponent": 0, "step": 2, "coefficients": [] }),
    };
    v["A_polynomial"] = a_polynomial_json(p);
    v
}

fn big(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string()).ok(),
        _ => None,
    }
}

/// Inverse of [`a_polynomial_json`].
pub fn a_polynomial_from_json(v: &Value) -> Option<LaurentPoly> {
    let exps = v.get("exponents")?.as_array()?;
    let coeffs = v.get("coefficients")?.as_array()?;
    if exps.len() != coeffs.len() {
        return None;
    }
    let terms: Option<Vec<(i64, BigInt)>> = exps.iter().zip(coeffs).map(|(e, c)| Some((e.as_i64()?, big(c)?))).collect();
    Some(LaurentPoly::from_terms(terms?))
}

/// Rebuilds the polynomial from the `q`-series fields of [`polynomial_json`].
pub fn q_polynomial_from_json(v: &Value) -> Option<LaurentPoly> {
    let sign = v.get("sign")?.as_i64()?;
    let min = v.get("min_exponent")?.as_i64()?;
    let step = v.get("step")?.as_i64()?;
    let coeffs = v.get("coefficients")?.as_array()?;
    let terms: Option<Vec<(i64, BigInt)>> = coeffs
        .iter()
        .enumerate()
        // q^(h/2) = A^(-2h)
        .map(|(i, c)| Some((-2 * (min + step * i as i64), big(c)? * sign)))
        .collect();
    Some(LaurentPoly::from_terms(terms?))
}

fn render(format: Format, text: String, value: Value) -> String {
    match format {
        Format::Text => text + "\n",
        Format::Json => serde_json::to_string_pretty(&value).expect("valid JSON") + "\n",
    }
}

fn render_coeffs(c: &[BigInt]) -> String {
    c.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

pub fn run(config: &RunConfig) -> Outcome {
    let budget = &config.budget;
    let fmt = config.format;
    let load = |input: &str| load_input(input).map_err(|e| Outcome::fail(EXIT_PARSE, format!("error: {e}")));
    let result = (|| -> Result<String, Outcome> {
        Ok(match &config.command {
            Command::Bracket { input } => {
                let d = load(input)?;
                let b = bracket(&d, budget).map_err(jones_failure)?;
                render(fmt, b.to_string(), json!({ "input": input, "bracket": a_polynomial_json(&b) }))
            }
            Command::Jones { input } => {
                let d = load(input)?;
                let r = colored_reduced(&d, 2, budget).map_err(jones_failure)?;
                render(fmt, r.q_form.to_string(), json!({ "input": input, "N": 2, "jones": polynomial_json(&r.reduced) }))
            }
            Command::Cjones { input, color } => {
                if *color < 2 {
                    return Err(Outcome::fail(EXIT_PARSE, format!("error: --color must be at least 2, got {color}")));
                }
                let d = load(input)?;
                let r = colored_reduced(&d, *color, budget).map_err(jones_failure)?;
                render(
                    fmt,
                    r.q_form.to_string(),
                    json!({
                        "input": input,
                        "N": color,
                        "colored_jones": polynomial_json(&r.reduced),
                        "unreduced": a_polynomial_json(&r.unreduced),
                    }),
                )
            }
            Command::Adequacy { input } => {
                let d = load(input)?;
                let a = adequacy(&d);
                render(
                    fmt,
                    format!("A_adequate: {}\nB_adequate: {}", a.a_adequate, a.b_adequate),
                    json!({
                        "input": input,
                        "A_adequate": a.a_adequate,
                        "B_adequate": a.b_adequate,
                        "alternating": d.is_alternating(),
                    }),
                )
            }
            Command::Tail { input, terms, head } => {
                let d = load(input)?;
                let side = if *head { Side::Head } else { Side::Tail };
                let c = extract(&d, *terms, side, budget).map_err(tail_failure)?;
                let name = if *head { "head" } else { "tail" };
                render(
                    fmt,
                    render_coeffs(&c),
                    json!({ "input": input, "side": name, "coefficients": c.iter().map(number).collect::<Vec<_>>() }),
                )
            }
            Command::VerifyStability { input, max, head } => {
                if *max < 3 {
                    return Err(Outcome::fail(EXIT_PARSE, format!("error: --max must be at least 3, got {max}")));
                }
                let d = load(input)?;
                let side = if *head { Side::Head } else { Side::Tail };
                let report = stabilization_check(&d, *max, side, budget).map_err(tail_failure)?;
                let mut text = String::new();
                for v in &report.verdicts {
                    let detail = match v.first_mismatch {
                        Some(i) => format!("differs at coefficient {i}"),
                        None => "agrees".to_string(),
                    };
                    text += &format!("J_{} vs J_{} to order {}: {detail} ({:.3}s)\n", v.n, v.n + 1, v.n, v.seconds);
                }
                if let Some(e) = &report.error {
                    text += &format!("incomplete: {e}\n");
                }
                let out = render(fmt, text.trim_end().to_string(), serde_json::to_value(&report).expect("report serializes"));
                let code = if !report.verdicts.iter().all(|v| v.agrees) {
                    EXIT_VIOLATION
                } else if !report.complete {
                    EXIT_BUDGET
                } else {
                    EXIT_OK
                };
                if code != EXIT_OK {
                    // flagged partial or failing reports are still printed
                    return Err(Outcome {
                        code,
                        stdout: out,
                        stderr: String::new(),
                    });
                }
                out
            }
            Command::Catalog { name: None } => {
                let entries = catalog::entries();
                let text = entries
                    .iter()
                    .map(|e| format!("{:<12} {}", e.name, e.notes.first().map(String::as_str).unwrap_or("")))
                    .collect::<Vec<_>>()
                    .join("\n");
                let value = json!(entries
                    .iter()
                    .map(|e| json!({ "name": e.name, "notes": e.notes, "pd": e.pd }))
                    .collect::<Vec<_>>());
                render(fmt, text, value)
            }
            Command::Catalog { name: Some(name) } => {
                let entry = catalog::entries().into_iter().find(|e| &e.name == name);
                let Some(e) = entry else {
                    let err = catalog::lookup(name).expect_err("entry is missing");
                    return Err(Outcome::fail(EXIT_PARSE, format!("error: {err}")));
                };
                let d = e.diagram().map_err(|err| Outcome::fail(EXIT_INTERNAL, format!("error: {err}")))?;
                let text = e.notes.iter().map(|n| format!("# {n}\n")).collect::<String>() + &d.to_pd_string();
                render(
                    fmt,
                    text,
                    json!({
                        "name": e.name,
                        "notes": e.notes,
                        "pd": d.to_pd_string(),
                        "crossings": d.crossing_count(),
                        "components": d.component_count() + d.extra_circles(),
                        "writhe": d.writhe(),
                    }),
                )
            }
        })
    })();
    match result {
        Ok(stdout) => Outcome::ok(stdout),
        Err(o) => o,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(command: Command) -> RunConfig {
        RunConfig {
            command,
            format: Format::Text,
            budget: Budget::default(),
        }
    }

    #[test]
    fn unknot_bracket_text() {
        let o = run(&cfg(Command::Bracket {
            input: "catalog:unknot".into(),
        }));
        assert_eq!(o.code, EXIT_OK);
        assert_eq!(o.stdout, "-A^-2-A^2\n");
    }

    #[test]
    fn json_round_trip() {
        for s in ["-A^-2-A^2", "A^-16+3*A^4", "-A^-10-A^-2", "1"] {
            let p: LaurentPoly = s.parse().unwrap();
            let v = polynomial_json(&p);
            assert_eq!(q_polynomial_from_json(&v), Some(p.clone()));
            assert_eq!(a_polynomial_from_json(&v["A_polynomial"]), Some(p));
        }
    }

    #[test]
    fn unknown_catalog_entry_is_a_parse_error() {
        let o = run(&cfg(Command::Jones {
            input: "catalog:nope".into(),
        }));
        assert_eq!(o.code, EXIT_PARSE);
        assert!(o.stdout.is_empty());
        assert!(o.stderr.contains("6_2"));
    }
}
