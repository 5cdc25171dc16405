//! Command implementations. Nothing here touches the process: output is
//! collected into an [`Outcome`] so tests can run commands in-process.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use medlat_core::logic::{
    axiom, countermodel_search, is_valid_with, CheckOptions, Designation, Sampling, ValidityReport, Verdict, AXIOMS,
};
use medlat_core::poset::{enumerate_posets, max_antichain_size, PosetFile};
use medlat_core::{parse, BrouwerAlgebra, Poset};

use crate::verify::{run_suite, VerifyOptions};
use crate::{AlgebraSpec, Cli, Command, Designate, EnumerateKind, EvalArgs, BUDGET_ENV};

/// What a command printed and how it wants the process to exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }

    fn error(err: &anyhow::Error) -> Self {
        Outcome { code: 2, stdout: String::new(), stderr: format!("error: {err:#}\n") }
    }
}

/// Run a parsed command line on a pool of `cli.parallel` workers.
pub fn run(cli: &Cli) -> Outcome {
    let threads = cli.parallel.max(1);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => return Outcome::error(&anyhow::Error::new(e)),
    };
    pool.install(|| dispatch(cli, threads > 1)).unwrap_or_else(|e| Outcome::error(&e))
}

fn dispatch(cli: &Cli, parallel: bool) -> Result<Outcome> {
    match &cli.command {
        Command::Check { formula, algebra, json, eval } => {
            check(formula, algebra, *json, &check_options(eval, parallel)?)
        }
        Command::Countermodel { formula, max_size, json, dot, eval } => {
            countermodel(formula, *max_size, *json, *dot, &check_options(eval, parallel)?)
        }
        Command::Report { algebra, json, eval } => {
            let a = algebra.build()?;
            let r = report(&a, &check_options(eval, parallel)?);
            let code = if r.rows.iter().all(|row| row.valid.is_some()) { 0 } else { 2 };
            let out = if *json { to_json(&r) } else { r.render() };
            Ok(Outcome::ok(code, out))
        }
        Command::Verify { suite, max_poset, max_n, json } => {
            let check = CheckOptions { parallel, budget: budget()?, ..CheckOptions::default() };
            let opts = VerifyOptions { max_n: *max_n, max_poset: *max_poset, check };
            let r = run_suite(suite, &opts)?;
            let out = if *json {
                to_json(&r)
            } else {
                let mut s = String::new();
                for c in &r.checks {
                    let mark = if c.passed { "pass" } else { "FAIL" };
                    let _ = writeln!(s, "[{mark}] {} ({} cases)", c.name, c.cases);
                    if let Some(w) = &c.witness {
                        let _ = writeln!(s, "       witness: {w}");
                    }
                }
                let passed = r.checks.iter().filter(|c| c.passed).count();
                let _ = writeln!(s, "{}: {passed}/{} checks passed", r.suite, r.checks.len());
                s
            };
            Ok(Outcome::ok(if r.passed { 0 } else { 1 }, out))
        }
        Command::Enumerate { what, size, json } => enumerate(*what, *size, *json),
        Command::Export { algebra, json: _, dot, output } => {
            let a = algebra.build()?;
            let text = if *dot { a.to_dot() } else { to_json(&a.to_json_value()) };
            match output {
                Some(path) => {
                    std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
                    Ok(Outcome::ok(0, String::new()))
                }
                None => Ok(Outcome::ok(0, text)),
            }
        }
    }
}

/// The evaluation budget, possibly overridden from the environment.
pub fn budget() -> Result<u64> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v.trim().parse().with_context(|| format!("{BUDGET_ENV}={v:?} is not a number")),
        Err(_) => Ok(medlat_core::logic::DEFAULT_BUDGET),
    }
}

pub fn check_options(eval: &EvalArgs, parallel: bool) -> Result<CheckOptions> {
    Ok(CheckOptions {
        budget: budget()?,
        designation: match eval.designate {
            Designate::Bottom => Designation::Bottom,
            Designate::Top => Designation::Top,
        },
        parallel,
        sampling: eval.samples.map(|samples| Sampling { samples, seed: eval.seed }),
    })
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes") + "\n"
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Valid => 0,
        Verdict::Invalid => 1,
        Verdict::Unknown => 2,
    }
}

fn check(formula: &str, spec: &AlgebraSpec, json: bool, opts: &CheckOptions) -> Result<Outcome> {
    let f = parse(formula)?;
    let a = spec.build()?;
    let r = is_valid_with(&f, &a, opts)?;
    let out = if json { to_json(&r) } else { render_validity(&r, a.size()) };
    Ok(Outcome::ok(verdict_code(r.verdict), out))
}

fn render_validity(r: &ValidityReport, size: usize) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "formula: {}", r.formula);
    let _ = writeln!(s, "algebra: {} ({size} elements)", r.algebra);
    let verdict = match r.verdict {
        Verdict::Valid => "valid",
        Verdict::Invalid => "invalid",
        Verdict::Unknown => "unknown (no countermodel among samples)",
    };
    let _ = writeln!(s, "verdict: {verdict}");
    if let Some(cm) = &r.countermodel {
        let _ = writeln!(s, "countermodel: {}", render_assignment(&cm.labels));
        let _ = writeln!(s, "value: {}", cm.value_label);
    }
    let how = if r.sampled { "sampled" } else { "checked" };
    let _ = writeln!(s, "valuations {how}: {}", r.valuations_checked);
    s
}

fn render_assignment(labels: &BTreeMap<String, String>) -> String {
    labels.iter().map(|(k, v)| format!("{k} = {v}")).collect::<Vec<_>>().join(", ")
}

#[derive(Debug, Serialize)]
struct CountermodelJson<'a> {
    formula: &'a str,
    max_size: usize,
    posets_checked: usize,
    poset: Option<PosetFile>,
    report: Option<&'a ValidityReport>,
}

fn countermodel(formula: &str, max_size: usize, json: bool, dot: bool, opts: &CheckOptions) -> Result<Outcome> {
    let f = parse(formula)?;
    let s = countermodel_search(&f, max_size, opts)?;
    let code = if s.found.is_some() { 0 } else { 1 };
    if json {
        let j = CountermodelJson {
            formula: &s.formula,
            max_size,
            posets_checked: s.posets_checked,
            poset: s.found.as_ref().map(|c| c.poset.to_file_format()),
            report: s.found.as_ref().map(|c| &c.report),
        };
        return Ok(Outcome::ok(code, to_json(&j)));
    }
    let Some(found) = &s.found else {
        return Ok(Outcome::ok(code, format!("none within bound {max_size} ({} posets checked)\n", s.posets_checked)));
    };
    if dot {
        return Ok(Outcome::ok(code, found.poset.to_dot()));
    }
    let mut out = String::new();
    let p = &found.poset;
    let _ =
        writeln!(out, "countermodel in B(P), P = {} ({} elements, {} opens)", p.name(), p.size(), found.algebra.size());
    out.push_str(&p.to_dot());
    if let Some(cm) = &found.report.countermodel {
        let _ = writeln!(out, "valuation: {}", render_assignment(&cm.labels));
        let _ = writeln!(out, "value: {}", cm.value_label);
    }
    Ok(Outcome::ok(code, out))
}

/// One named axiom in one algebra.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub name: String,
    pub formula: String,
    /// `None` when the check did not finish (budget) or was inconclusive.
    pub valid: Option<bool>,
    pub countermodel: Option<BTreeMap<String, String>>,
    pub valuations_checked: u64,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraReport {
    pub algebra: String,
    pub size: usize,
    pub max_antichain: usize,
    pub all_negations_meet_irreducible: bool,
    pub rows: Vec<ReportRow>,
}

impl AlgebraReport {
    pub fn row(&self, name: &str) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.name == name)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{}: {} elements, max antichain {}, negations meet-irreducible: {}",
            self.algebra,
            self.size,
            self.max_antichain,
            if self.all_negations_meet_irreducible { "yes" } else { "no" }
        );
        for r in &self.rows {
            let status = match (r.valid, &r.error) {
                (Some(true), _) => "valid".to_string(),
                (Some(false), _) => {
                    format!("invalid  {}", render_assignment(r.countermodel.as_ref().expect("countermodel")))
                }
                (None, Some(e)) => format!("not decided: {e}"),
                (None, None) => "not decided".to_string(),
            };
            let _ = writeln!(s, "  {:<12} {status}", r.name);
        }
        s
    }
}

/// Check every named axiom; failures to decide are recorded per row.
pub fn report(a: &BrouwerAlgebra, opts: &CheckOptions) -> AlgebraReport {
    let rows = AXIOMS
        .iter()
        .map(|(name, _)| {
            let f = axiom(name).expect("named axiom parses");
            let mut row = ReportRow {
                name: name.to_string(),
                formula: f.to_string(),
                valid: None,
                countermodel: None,
                valuations_checked: 0,
                error: None,
            };
            match is_valid_with(&f, a, opts) {
                Ok(r) => {
                    row.valuations_checked = r.valuations_checked;
                    if r.verdict != Verdict::Unknown {
                        row.valid = Some(r.valid);
                    }
                    row.countermodel = r.countermodel.map(|c| c.labels);
                }
                Err(e) => row.error = Some(e.to_string()),
            }
            row
        })
        .collect();
    AlgebraReport {
        algebra: a.provenance().to_string(),
        size: a.size(),
        max_antichain: max_antichain_size(a.order()).unwrap_or(0),
        all_negations_meet_irreducible: a.all_negations_meet_irreducible(),
        rows,
    }
}

#[derive(Debug, Serialize)]
struct PosetSummary {
    name: String,
    size: usize,
    covers: Vec<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    algebra_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_antichain: Option<usize>,
}

fn covers(p: &Poset) -> Vec<[usize; 2]> {
    let n = p.size();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x != y && p.leq(x, y) && !(0..n).any(|z| z != x && z != y && p.leq(x, z) && p.leq(z, y)) {
                out.push([x, y]);
            }
        }
    }
    out
}

fn enumerate(what: EnumerateKind, size: usize, json: bool) -> Result<Outcome> {
    if size == 0 {
        bail!("--size must be at least 1");
    }
    let mut rows = Vec::new();
    for p in enumerate_posets(size)? {
        let (algebra_size, max_antichain) = match what {
            EnumerateKind::Posets => (None, None),
            EnumerateKind::Algebras => {
                let a = BrouwerAlgebra::from_poset(&p)?;
                (Some(a.size()), Some(max_antichain_size(a.order())?))
            }
        };
        rows.push(PosetSummary {
            name: p.name().to_string(),
            size: p.size(),
            covers: covers(&p),
            algebra_size,
            max_antichain,
        });
    }
    if json {
        return Ok(Outcome::ok(0, to_json(&rows)));
    }
    let mut s = String::new();
    for r in &rows {
        let cov: Vec<String> = r.covers.iter().map(|[x, y]| format!("{x}<{y}")).collect();
        let _ = write!(s, "{}  covers: {}", r.name, if cov.is_empty() { "-".to_string() } else { cov.join(" ") });
        if let (Some(m), Some(w)) = (r.algebra_size, r.max_antichain) {
            let _ = write!(s, "  |B(P)| = {m}, max antichain {w}");
        }
        s.push('\n');
    }
    let _ = writeln!(s, "{} posets of size {size}", rows.len());
    Ok(Outcome::ok(0, s))
}
