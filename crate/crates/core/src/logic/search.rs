//! Theory-level questions: classical validity, the `B_n` hierarchy,
//! countermodel search over small posets, and the KP experiment.

use serde::Serialize;

use super::axioms::axiom;
use super::eval::{is_valid_with, CheckOptions, ValidityReport, Verdict};
use super::formula::Formula;
use crate::algebra::{bn, BrouwerAlgebra, BN_CAP};
use crate::error::{Error, Result};
use crate::poset::{enumerate_posets, Poset, MAX_ENUMERATION_SIZE};

/// Variables accepted by [`classical_tautology`].
pub const MAX_CLASSICAL_VARS: usize = 20;

fn truth(f: &Formula, vars: &[String], row: u32) -> bool {
    match f {
        Formula::Var(x) => {
            let i = vars.binary_search(x).expect("collected variable");
            row >> i & 1 == 1
        }
        Formula::Top => true,
        Formula::Bot => false,
        Formula::And(a, b) => truth(a, vars, row) && truth(b, vars, row),
        Formula::Or(a, b) => truth(a, vars, row) || truth(b, vars, row),
        Formula::Imp(a, b) => !truth(a, vars, row) || truth(b, vars, row),
        Formula::Not(a) => !truth(a, vars, row),
    }
}

/// Truth-table validity, i.e. validity in the two-element algebra.
pub fn classical_tautology(f: &Formula) -> Result<bool> {
    let vars = f.variables();
    if vars.len() > MAX_CLASSICAL_VARS {
        return Err(Error::input(format!(
            "{} variables exceed the truth-table limit {MAX_CLASSICAL_VARS}",
            vars.len()
        )));
    }
    Ok((0..1u32 << vars.len()).all(|row| truth(f, &vars, row)))
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelResult {
    pub n: usize,
    pub report: Option<ValidityReport>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LmReport {
    pub formula: String,
    pub levels: Vec<LevelResult>,
    /// Valid in every `B_n` checked.
    pub member_up_to_level: bool,
}

/// Validity in `B_1, ..., B_N`. `B_5` is only accepted for formulas with at
/// most one variable.
pub fn lm_member(f: &Formula, levels: usize, opts: &CheckOptions) -> Result<LmReport> {
    if levels == 0 || levels > BN_CAP {
        return Err(Error::input(format!("levels must be 1..={BN_CAP}")));
    }
    if levels == BN_CAP && f.variables().len() > 1 {
        return Err(Error::input(format!("B_{BN_CAP} is only checked for one-variable formulas")));
    }
    let mut out = Vec::new();
    for n in 1..=levels {
        let a = bn(n)?;
        match is_valid_with(f, &a, opts) {
            Ok(r) => out.push(LevelResult { n, report: Some(r), error: None }),
            Err(e @ Error::Resource { .. }) => out.push(LevelResult { n, report: None, error: Some(e.to_string()) }),
            Err(e) => return Err(e),
        }
    }
    let member = out.iter().all(|l| l.report.as_ref().is_some_and(|r| r.verdict == Verdict::Valid));
    Ok(LmReport { formula: f.to_string(), levels: out, member_up_to_level: member })
}

#[derive(Debug, Clone)]
pub struct FoundCountermodel {
    pub poset: Poset,
    pub algebra: BrouwerAlgebra,
    pub report: ValidityReport,
}

#[derive(Debug, Clone)]
pub struct CountermodelSearch {
    pub formula: String,
    pub max_poset_size: usize,
    pub posets_checked: usize,
    /// `None` means no countermodel within the bound, which proves nothing.
    pub found: Option<FoundCountermodel>,
}

/// Try `B(P)` for every poset `P` of size `1..=max_poset_size` in canonical
/// order and return the first refuting algebra.
pub fn countermodel_search(f: &Formula, max_poset_size: usize, opts: &CheckOptions) -> Result<CountermodelSearch> {
    if max_poset_size > MAX_ENUMERATION_SIZE {
        return Err(Error::resource("countermodel poset size", MAX_ENUMERATION_SIZE as u64));
    }
    let mut checked = 0;
    for n in 1..=max_poset_size {
        for p in enumerate_posets(n)? {
            checked += 1;
            let a = BrouwerAlgebra::from_poset(&p)?;
            let r = is_valid_with(f, &a, opts)?;
            if r.verdict == Verdict::Invalid {
                return Ok(CountermodelSearch {
                    formula: f.to_string(),
                    max_poset_size,
                    posets_checked: checked,
                    found: Some(FoundCountermodel { poset: p, algebra: a, report: r }),
                });
            }
        }
    }
    Ok(CountermodelSearch { formula: f.to_string(), max_poset_size, posets_checked: checked, found: None })
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoryRow {
    pub name: String,
    pub formula: String,
    pub first: Option<bool>,
    pub second: Option<bool>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoryComparison {
    pub first: String,
    pub second: String,
    pub rows: Vec<TheoryRow>,
    /// `Th(first) ∩ corpus ⊆ Th(second)`, over rows without errors.
    pub first_in_second: bool,
    pub second_in_first: bool,
    /// Valid in the first algebra only.
    pub first_only: Vec<String>,
    pub second_only: Vec<String>,
}

fn decide(f: &Formula, a: &BrouwerAlgebra, opts: &CheckOptions) -> Result<Option<bool>> {
    let r = is_valid_with(f, a, opts)?;
    Ok(match r.verdict {
        Verdict::Valid => Some(true),
        Verdict::Invalid => Some(false),
        Verdict::Unknown => None,
    })
}

pub fn theory_compare(
    a1: &BrouwerAlgebra,
    a2: &BrouwerAlgebra,
    corpus: &[(String, Formula)],
    opts: &CheckOptions,
) -> Result<TheoryComparison> {
    let mut rows = Vec::new();
    for (name, f) in corpus {
        let mut row = TheoryRow { name: name.clone(), formula: f.to_string(), first: None, second: None, error: None };
        match (decide(f, a1, opts), decide(f, a2, opts)) {
            (Ok(x), Ok(y)) => {
                row.first = x;
                row.second = y;
            }
            (Err(e), _) | (_, Err(e)) => row.error = Some(e.to_string()),
        }
        rows.push(row);
    }
    let decided = || rows.iter().filter_map(|r| Some((r, r.first?, r.second?)));
    let first_only: Vec<String> = decided().filter(|&(_, x, y)| x && !y).map(|(r, ..)| r.name.clone()).collect();
    let second_only: Vec<String> = decided().filter(|&(_, x, y)| !x && y).map(|(r, ..)| r.name.clone()).collect();
    Ok(TheoryComparison {
        first: a1.provenance().to_string(),
        second: a2.provenance().to_string(),
        first_in_second: first_only.is_empty(),
        second_in_first: second_only.is_empty(),
        rows,
        first_only,
        second_only,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct KpClassReport {
    pub max_poset_size: usize,
    pub algebras: usize,
    /// Algebras whose negations are all meet-irreducible.
    pub positive: usize,
    pub negative: usize,
    /// Positive-class algebras refuting KP; the characterization says none.
    pub positive_failures: Vec<String>,
    pub negative_kp_valid: usize,
    pub negative_kp_invalid: usize,
    /// First algebra (in enumeration order) with a meet-reducible negation,
    /// and the element whose negation it is.
    pub first_negative: Option<(String, String)>,
}

impl KpClassReport {
    pub fn holds(&self) -> bool {
        self.positive > 0 && self.positive_failures.is_empty()
    }
}

pub const MAX_KP_CLASS_POSET: usize = 6;

pub fn kp_class_check(max_poset_size: usize, opts: &CheckOptions) -> Result<KpClassReport> {
    if max_poset_size > MAX_KP_CLASS_POSET {
        return Err(Error::resource("KP class poset size", MAX_KP_CLASS_POSET as u64));
    }
    let kp = axiom("kp")?;
    let mut rep = KpClassReport {
        max_poset_size,
        algebras: 0,
        positive: 0,
        negative: 0,
        positive_failures: Vec::new(),
        negative_kp_valid: 0,
        negative_kp_invalid: 0,
        first_negative: None,
    };
    for n in 1..=max_poset_size {
        for p in enumerate_posets(n)? {
            let a = BrouwerAlgebra::from_poset(&p)?;
            rep.algebras += 1;
            let valid = is_valid_with(&kp, &a, opts)?.verdict == Verdict::Valid;
            match a.negation_witness() {
                None => {
                    rep.positive += 1;
                    if !valid {
                        rep.positive_failures.push(a.provenance().to_string());
                    }
                }
                Some(x) => {
                    rep.negative += 1;
                    if valid {
                        rep.negative_kp_valid += 1;
                    } else {
                        rep.negative_kp_invalid += 1;
                    }
                    if rep.first_negative.is_none() {
                        rep.first_negative = Some((a.provenance().to_string(), a.label(x).to_string()));
                    }
                }
            }
        }
    }
    Ok(rep)
}

#[derive(Debug, Clone, Serialize)]
pub struct Spectrum {
    /// For each element `p`, the sorted values reachable from `p`.
    pub per_element: Vec<Vec<usize>>,
    pub max_size: usize,
}

pub const MAX_SPECTRUM_DEPTH: usize = 8;

/// Values of one-variable formulas of nesting depth at most `depth`, for
/// each choice of `p`: start from `{p}` and close `depth` times under
/// negation and the binary operations on values already found.
pub fn one_variable_spectrum(a: &BrouwerAlgebra, depth: usize) -> Result<Spectrum> {
    if depth > MAX_SPECTRUM_DEPTH {
        return Err(Error::input(format!("spectrum depth must be <= {MAX_SPECTRUM_DEPTH}")));
    }
    let m = a.size();
    let per_element: Vec<Vec<usize>> = (0..m)
        .map(|p| {
            let mut member = vec![false; m];
            member[p] = true;
            let mut found = vec![p];
            for _ in 0..depth {
                let current = found.clone();
                let mut add = |x: usize| {
                    if !member[x] {
                        member[x] = true;
                        found.push(x);
                    }
                };
                for &x in &current {
                    add(a.neg(x));
                    for &y in &current {
                        add(a.join(x, y));
                        add(a.meet(x, y));
                        add(a.imp(x, y));
                    }
                }
            }
            found.sort_unstable();
            found
        })
        .collect();
    let max_size = per_element.iter().map(Vec::len).max().unwrap_or(0);
    Ok(Spectrum { per_element, max_size })
}
