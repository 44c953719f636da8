//! Command-line driver. [`run`] does all the work so it can be exercised
//! without spawning a process; the binary only parses flags and reads the
//! input file.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::arrangement::{decone, parse_arrangement, Arrangement, Kind};
use crate::error::{Error, Result};
use crate::flats::{build_intersection_poset, IntersectionPoset, DEFAULT_CAP};
use crate::mvbetti::{betti_for_every_infinity, compute_betti, BettiOptions, BettiReport, EPage};
use crate::ss::{
    cohomology_dims, pages, parse_double_complex, total_complex, verify_convergence, Filtration,
    PageTable,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subcommand {
    Betti,
    Poset,
    E1,
    E2,
    Oracle,
    Check,
    Ss,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub subcommand: Subcommand,
    /// Hyperplane at infinity for projective input, 1-based.
    pub infinity_index: Option<usize>,
    pub enumeration_cap: usize,
    pub output: OutputFormat,
    pub verbose: bool,
    pub oracle: bool,
}

impl RunConfig {
    pub fn new(subcommand: Subcommand) -> Self {
        RunConfig {
            subcommand,
            infinity_index: None,
            enumeration_cap: DEFAULT_CAP,
            output: OutputFormat::Text,
            verbose: false,
            oracle: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(config: &RunConfig, input: &str) -> RunOutcome {
    let mut stdout = String::new();
    match dispatch(config, input, &mut stdout) {
        Ok(code) => RunOutcome {
            exit_code: code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => RunOutcome {
            exit_code: e.exit_code(),
            stdout,
            stderr: format!("error: {e}\n"),
        },
    }
}

fn dispatch(config: &RunConfig, input: &str, out: &mut String) -> Result<i32> {
    if config.enumeration_cap < 1 {
        return Err(Error::Invalid("--cap must be at least 1".into()));
    }
    if config.subcommand == Subcommand::Ss {
        return run_ss(config, input, out);
    }

    let arrangement = parse_arrangement(input)?;
    let infinity = match (config.infinity_index, arrangement.kind()) {
        (None, _) => None,
        (Some(_), Kind::Affine) => {
            return Err(Error::Invalid(
                "--infinity only applies to projective input".into(),
            ))
        }
        (Some(0), Kind::Projective) => return Err(Error::Invalid("--infinity is 1-based".into())),
        (Some(k), Kind::Projective) => Some(k - 1),
    };
    let with_oracles = config.oracle || config.subcommand == Subcommand::Check;
    let options = BettiOptions {
        cap: config.enumeration_cap,
        infinity_index: infinity,
        mobius_oracle: with_oracles,
        whitney_oracle: with_oracles,
    };
    let json = config.output == OutputFormat::Json;

    match config.subcommand {
        Subcommand::Poset => {
            let affine = affine_part(&arrangement, infinity)?;
            let poset = build_intersection_poset(&affine, config.enumeration_cap)?;
            if json {
                push_json(out, &poset_json(&poset));
            } else {
                write_poset(out, &poset, config.verbose);
            }
            Ok(0)
        }
        Subcommand::Oracle => {
            let report = compute_betti(
                &arrangement,
                &BettiOptions {
                    mobius_oracle: true,
                    whitney_oracle: true,
                    ..options
                },
            )?;
            if json {
                push_json(out, &report_json(&report, false));
            } else {
                let o = report.oracle.as_ref().expect("oracles requested");
                writeln!(
                    out,
                    "mobius: {}",
                    join(o.mobius.as_deref().unwrap_or_default())
                )
                .unwrap();
                writeln!(
                    out,
                    "whitney: {}",
                    join(o.whitney.as_deref().unwrap_or_default())
                )
                .unwrap();
                writeln!(out, "pipeline: {}", join(&report.betti)).unwrap();
                writeln!(out, "agreement: {}", report.agreement == Some(true)).unwrap();
            }
            Ok(if report.agreement == Some(true) { 0 } else { 3 })
        }
        Subcommand::Check => {
            let mut report = compute_betti(&arrangement, &options)?;
            if arrangement.kind() == Kind::Projective {
                let all = betti_for_every_infinity(&arrangement, &options)?;
                let same = all.iter().all(|b| *b == report.betti);
                report.checks.push(crate::mvbetti::Check {
                    name: "infinity invariance".into(),
                    passed: same,
                    detail: format!("{all:?}"),
                });
            }
            if json {
                push_json(out, &report_json(&report, true));
            } else {
                for c in &report.checks {
                    let tag = if c.passed { "PASS" } else { "FAIL" };
                    writeln!(out, "{tag} {}: {}", c.name, c.detail).unwrap();
                }
                writeln!(out, "betti: {}", join(&report.betti)).unwrap();
                writeln!(out, "agreement: {}", report.agreement == Some(true)).unwrap();
            }
            Ok(if report.all_checks_passed() { 0 } else { 3 })
        }
        Subcommand::Betti | Subcommand::E1 | Subcommand::E2 => {
            let report = compute_betti(&arrangement, &options)?;
            if json {
                push_json(out, &report_json(&report, false));
            } else {
                match config.subcommand {
                    Subcommand::Betti => write_betti(out, &report, config.verbose),
                    Subcommand::E1 => write_page(out, &report.e1),
                    _ => write_page(out, &report.e2),
                }
            }
            Ok(if report.agreement == Some(false) {
                3
            } else {
                0
            })
        }
        Subcommand::Ss => unreachable!(),
    }
}

fn affine_part(a: &Arrangement, infinity: Option<usize>) -> Result<Arrangement> {
    match a.kind() {
        Kind::Affine => Ok(a.clone()),
        Kind::Projective if a.is_empty() => Err(Error::Invalid(
            "a projective arrangement needs at least one hyperplane".into(),
        )),
        Kind::Projective => decone(a, infinity.unwrap_or(a.len() - 1)),
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn push_json(out: &mut String, v: &Value) {
    out.push_str(&serde_json::to_string_pretty(v).expect("json values serialize"));
    out.push('\n');
}

pub fn poincare_string(coeffs: &[u64]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| match (k, c) {
            (0, c) => c.to_string(),
            (1, 1) => "t".into(),
            (1, c) => format!("{c}t"),
            (k, 1) => format!("t^{k}"),
            (k, c) => format!("{c}t^{k}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn write_betti(out: &mut String, report: &BettiReport, verbose: bool) {
    writeln!(out, "betti: {}", join(&report.betti)).unwrap();
    writeln!(out, "poincare: {}", poincare_string(&report.poincare)).unwrap();
    if let Some(agree) = report.agreement {
        writeln!(out, "oracle agreement: {agree}").unwrap();
    }
    if verbose {
        writeln!(
            out,
            "kind: {}, n = {}, r = {}",
            report.kind, report.n, report.r
        )
        .unwrap();
        writeln!(
            out,
            "essential rank: {}, shift: {}",
            report.essential_rank, report.shift
        )
        .unwrap();
        writeln!(out, "general position: {}", report.general_position).unwrap();
        let graded: Vec<String> = report
            .graded
            .iter()
            .map(|(i, v)| format!("H^{i} = {v}"))
            .collect();
        writeln!(out, "pushforward grading: {}", graded.join(", ")).unwrap();
    }
}

fn write_grid(out: &mut String, entries: &BTreeMap<(i64, i64), u64>) {
    if entries.is_empty() {
        writeln!(out, "(empty)").unwrap();
        return;
    }
    let ps: Vec<i64> = {
        let lo = entries.keys().map(|k| k.0).min().unwrap();
        let hi = entries.keys().map(|k| k.0).max().unwrap();
        (lo..=hi).collect()
    };
    let (qlo, qhi) = (
        entries.keys().map(|k| k.1).min().unwrap(),
        entries.keys().map(|k| k.1).max().unwrap(),
    );
    let width = entries
        .values()
        .map(|v| v.to_string().len())
        .chain(ps.iter().map(|p| p.to_string().len()))
        .max()
        .unwrap()
        .max(3);
    write!(out, "{:>5}", "q\\p").unwrap();
    for p in &ps {
        write!(out, " {p:>width$}").unwrap();
    }
    out.push('\n');
    for q in (qlo..=qhi).rev() {
        write!(out, "{q:>5}").unwrap();
        for &p in &ps {
            match entries.get(&(p, q)) {
                Some(v) if *v > 0 => write!(out, " {v:>width$}").unwrap(),
                _ => write!(out, " {:>width$}", ".").unwrap(),
            }
        }
        out.push('\n');
    }
}

fn write_page(out: &mut String, page: &EPage) {
    writeln!(out, "E{} (n = {}, r = {})", page.page_index, page.n, page.r).unwrap();
    write_grid(out, &page.dims);
}

fn write_poset(out: &mut String, poset: &IntersectionPoset, verbose: bool) {
    writeln!(out, "flats: {}", poset.len()).unwrap();
    writeln!(
        out,
        "{:>4} {:>4} {:>6} {:>6}  hyperplanes",
        "#", "dim", "codim", "mu"
    )
    .unwrap();
    for (i, e) in poset.elements.iter().enumerate() {
        let hs = if e.hyperplanes.is_empty() {
            "-".to_string()
        } else {
            e.hyperplanes
                .iter()
                .map(|h| (h + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        writeln!(
            out,
            "{i:>4} {:>4} {:>6} {:>6}  {hs}",
            poset.n - e.codim,
            e.codim,
            e.mobius
        )
        .unwrap();
        if verbose {
            for line in e.flat.system().to_string().lines() {
                writeln!(out, "{:>10}[{line}]", "").unwrap();
            }
        }
    }
}

fn page_json(page: &EPage) -> Value {
    Value::Array(
        page.dims
            .iter()
            .map(|(&(p, q), &d)| json!({ "p": p, "q": q, "dim": d }))
            .collect(),
    )
}

fn report_json(report: &BettiReport, with_checks: bool) -> Value {
    let oracle = report
        .oracle
        .as_ref()
        .map(|o| json!({ "mobius": o.mobius, "whitney": o.whitney }));
    let mut v = json!({
        "kind": report.kind.to_string(),
        "n": report.n,
        "r": report.r,
        "essential_rank": report.essential_rank,
        "shift": report.shift,
        "betti": report.betti,
        "poincare": report.poincare,
        "e1": page_json(&report.e1),
        "e2": page_json(&report.e2),
        "oracle": oracle,
        "agreement": report.agreement,
    });
    if with_checks {
        v["checks"] = Value::Array(
            report
                .checks
                .iter()
                .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
                .collect(),
        );
    }
    v
}

fn poset_json(poset: &IntersectionPoset) -> Value {
    json!({
        "n": poset.n,
        "flats": poset.elements.iter().enumerate().map(|(i, e)| json!({
            "index": i,
            "dim": poset.n - e.codim,
            "codim": e.codim,
            "mobius": e.mobius,
            "hyperplanes": e.hyperplanes.iter().map(|h| h + 1).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn run_ss(config: &RunConfig, input: &str, out: &mut String) -> Result<i32> {
    let c = parse_double_complex(input)?;
    let h = cohomology_dims(&total_complex(&c)?);
    let span = |f: fn(&(i64, i64)) -> i64| {
        let vals: Vec<i64> = c.dims().keys().map(f).collect();
        match (vals.iter().min(), vals.iter().max()) {
            (Some(lo), Some(hi)) => (hi - lo + 1) as usize,
            _ => 0,
        }
    };
    let r_max = (span(|k| k.0).max(span(|k| k.1)) + 1).max(2);

    let tables: Vec<PageTable> = [Filtration::Horizontal, Filtration::Vertical]
        .into_iter()
        .map(|f| pages(&c, f, r_max))
        .collect::<Result<_>>()?;
    let converges: Vec<bool> = tables.iter().map(|t| verify_convergence(t, &h)).collect();

    if config.output == OutputFormat::Json {
        let as_u64 = |m: &BTreeMap<(i64, i64), usize>| -> Value {
            Value::Array(
                m.iter()
                    .map(|(&(p, q), &d)| json!({ "p": p, "q": q, "dim": d }))
                    .collect(),
            )
        };
        let filtrations: Vec<Value> = tables
            .iter()
            .zip(&converges)
            .map(|(t, ok)| {
                json!({
                    "filtration": t.filtration.to_string(),
                    "stable_at": t.stable_at,
                    "pages": (0..=t.r_max).map(|r| json!({ "r": r, "entries": as_u64(&t.page(r)) })).collect::<Vec<_>>(),
                    "limit": as_u64(t.limit()),
                    "converges": ok,
                })
            })
            .collect();
        push_json(
            out,
            &json!({
                "cohomology": h.iter().map(|(&n, &d)| json!({ "degree": n, "dim": d })).collect::<Vec<_>>(),
                "filtrations": filtrations,
            }),
        );
    } else {
        let hs: Vec<String> = h.iter().map(|(n, d)| format!("H^{n} = {d}")).collect();
        writeln!(
            out,
            "total cohomology: {}",
            if hs.is_empty() {
                "0".into()
            } else {
                hs.join(", ")
            }
        )
        .unwrap();
        for (t, ok) in tables.iter().zip(&converges) {
            writeln!(
                out,
                "\n{} filtration (stable at r = {})",
                t.filtration, t.stable_at
            )
            .unwrap();
            let last = if config.verbose {
                t.r_max
            } else {
                t.stable_at.clamp(1, t.r_max)
            };
            for r in 0..=last {
                writeln!(out, "E{r}").unwrap();
                let page = t.page(r).into_iter().map(|(k, v)| (k, v as u64)).collect();
                write_grid(out, &page);
            }
            writeln!(out, "converges: {ok}").unwrap();
        }
    }
    Ok(if converges.iter().all(|&b| b) { 0 } else { 3 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poincare_formatting() {
        assert_eq!(poincare_string(&[1, 3, 2, 0]), "1 + 3t + 2t^2");
        assert_eq!(poincare_string(&[1, 1, 0, 1]), "1 + t + t^3");
        assert_eq!(poincare_string(&[]), "0");
    }

    #[test]
    fn betti_text_output() {
        let out = run(
            &RunConfig::new(Subcommand::Betti),
            "affine 3\n1 0 0 0\n0 1 0 0\n0 0 1 0\n",
        );
        assert_eq!(out.exit_code, 0);
        assert!(out.stdout.starts_with("betti: 1 3 3 1\n"));
    }

    #[test]
    fn validation_errors_exit_one() {
        let out = run(
            &RunConfig::new(Subcommand::Betti),
            "affine 2\n1 0 0\n0 0 4\n",
        );
        assert_eq!(out.exit_code, 1);
        assert!(out.stderr.contains("line 3"));
    }

    #[test]
    fn cap_exceeded_exits_two() {
        let mut cfg = RunConfig::new(Subcommand::Betti);
        cfg.enumeration_cap = 1;
        let out = run(&cfg, "affine 2\n1 0 0\n0 1 0\n");
        assert_eq!(out.exit_code, 2);
    }
}
