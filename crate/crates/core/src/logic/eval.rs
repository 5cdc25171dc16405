//! Evaluation and validity checking.
//!
//! `∧ ↦ +`, `∨ ↦ ×`, `→ ↦ →`, `¬ ↦ ¬`, `T ↦ bottom`, `F ↦ top`. A formula is
//! valid when every valuation sends it to the designated element, by default
//! the bottom.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::formula::Formula;
use crate::algebra::BrouwerAlgebra;
use crate::error::{Error, Result};

/// Default evaluation budget: valuations times formula nodes.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Designation {
    /// The least element (the reading under which `Th(2) = CPC`).
    #[default]
    Bottom,
    /// The greatest element; kept for comparison only.
    Top,
}

impl Designation {
    pub fn element(self, a: &BrouwerAlgebra) -> usize {
        match self {
            Designation::Bottom => a.bottom(),
            Designation::Top => a.top(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Valuation {
    pub assignment: BTreeMap<String, usize>,
}

impl Valuation {
    pub fn new(pairs: impl IntoIterator<Item = (String, usize)>) -> Self {
        Valuation { assignment: pairs.into_iter().collect() }
    }

    pub fn get(&self, var: &str) -> Option<usize> {
        self.assignment.get(var).copied()
    }
}

/// Plain structural recursion; the reference semantics.
pub fn eval(f: &Formula, a: &BrouwerAlgebra, v: &Valuation) -> Result<usize> {
    Ok(match f {
        Formula::Var(x) => {
            let e = v.get(x).ok_or_else(|| Error::input(format!("variable {x} is unbound")))?;
            a.check_element(e)?
        }
        Formula::Top => a.bottom(),
        Formula::Bot => a.top(),
        Formula::And(l, r) => a.join(eval(l, a, v)?, eval(r, a, v)?),
        Formula::Or(l, r) => a.meet(eval(l, a, v)?, eval(r, a, v)?),
        Formula::Imp(l, r) => a.imp(eval(l, a, v)?, eval(r, a, v)?),
        Formula::Not(x) => a.neg(eval(x, a, v)?),
    })
}

#[derive(Debug, Clone, Copy)]
enum Op {
    Var(usize),
    Bottom,
    Top,
    And(usize, usize),
    Or(usize, usize),
    Imp(usize, usize),
    Not(usize),
}

/// A formula flattened to post-order, with per-variable recomputation
/// schedules: after variables `k..` change, only nodes mentioning one of them
/// are re-evaluated.
#[derive(Debug, Clone)]
pub struct CompiledFormula {
    vars: Vec<String>,
    ops: Vec<Op>,
    schedule: Vec<Vec<usize>>,
}

impl CompiledFormula {
    pub fn new(f: &Formula) -> Self {
        let vars = f.variables();
        let mut ops = Vec::new();
        let mut maxvar = Vec::new();
        fn go(f: &Formula, vars: &[String], ops: &mut Vec<Op>, maxvar: &mut Vec<usize>) -> usize {
            let (op, mv) = match f {
                Formula::Var(x) => {
                    let i = vars.binary_search(x).expect("variable collected");
                    (Op::Var(i), i)
                }
                Formula::Top => (Op::Bottom, 0),
                Formula::Bot => (Op::Top, 0),
                Formula::Not(x) => {
                    let c = go(x, vars, ops, maxvar);
                    (Op::Not(c), maxvar[c])
                }
                Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                    let a = go(l, vars, ops, maxvar);
                    let b = go(r, vars, ops, maxvar);
                    let op = match f {
                        Formula::And(..) => Op::And(a, b),
                        Formula::Or(..) => Op::Or(a, b),
                        _ => Op::Imp(a, b),
                    };
                    (op, maxvar[a].max(maxvar[b]))
                }
            };
            ops.push(op);
            maxvar.push(mv);
            ops.len() - 1
        }
        go(f, &vars, &mut ops, &mut maxvar);
        let schedule = (0..vars.len().max(1)).map(|k| (0..ops.len()).filter(|&i| maxvar[i] >= k).collect()).collect();
        CompiledFormula { vars, ops, schedule }
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn node_count(&self) -> usize {
        self.ops.len()
    }

    fn root(&self) -> usize {
        self.ops.len() - 1
    }

    #[inline]
    fn step(&self, a: &BrouwerAlgebra, vals: &[usize], cache: &mut [usize], i: usize) {
        cache[i] = match self.ops[i] {
            Op::Var(k) => vals[k],
            Op::Bottom => a.bottom(),
            Op::Top => a.top(),
            Op::And(l, r) => a.join(cache[l], cache[r]),
            Op::Or(l, r) => a.meet(cache[l], cache[r]),
            Op::Imp(l, r) => a.imp(cache[l], cache[r]),
            Op::Not(x) => a.neg(cache[x]),
        };
    }

    fn recompute(&self, a: &BrouwerAlgebra, vals: &[usize], cache: &mut [usize], from_var: usize) {
        for &i in &self.schedule[from_var] {
            self.step(a, vals, cache, i);
        }
    }

    /// Value under `vals` (indexed like [`CompiledFormula::variables`]).
    pub fn eval(&self, a: &BrouwerAlgebra, vals: &[usize]) -> usize {
        let mut cache = vec![0; self.ops.len()];
        for i in 0..self.ops.len() {
            self.step(a, vals, &mut cache, i);
        }
        cache[self.root()]
    }

    /// First valuation (in mixed-radix order, first variable most
    /// significant) with the first variable fixed to `first`, whose value is
    /// not `designated`.
    fn scan_block(&self, a: &BrouwerAlgebra, designated: usize, first: usize) -> Option<(Vec<usize>, usize)> {
        let k = self.vars.len();
        let m = a.size();
        let mut vals = vec![0; k];
        if k > 0 {
            vals[0] = first;
        }
        let mut cache = vec![0; self.ops.len()];
        self.recompute(a, &vals, &mut cache, 0);
        let root = self.root();
        loop {
            if cache[root] != designated {
                return Some((vals, cache[root]));
            }
            let mut pos = k;
            loop {
                if pos <= 1 {
                    return None;
                }
                pos -= 1;
                vals[pos] += 1;
                if vals[pos] < m {
                    break;
                }
                vals[pos] = 0;
            }
            self.recompute(a, &vals, &mut cache, pos);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Sampling {
    pub samples: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CheckOptions {
    /// Upper bound on valuations × formula nodes for exhaustive checking.
    pub budget: u64,
    pub designation: Designation,
    /// Split the valuation space over the current rayon pool.
    pub parallel: bool,
    /// Fallback when the exhaustive cost exceeds the budget.
    pub sampling: Option<Sampling>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { budget: DEFAULT_BUDGET, designation: Designation::Bottom, parallel: false, sampling: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Valid,
    Invalid,
    /// Sampling found no countermodel; nothing is claimed.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Countermodel {
    pub valuation: Valuation,
    /// Element labels, by variable.
    pub labels: BTreeMap<String, String>,
    pub value: usize,
    pub value_label: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidityReport {
    pub formula: String,
    pub algebra: String,
    pub designation: Designation,
    pub verdict: Verdict,
    pub valid: bool,
    pub countermodel: Option<Countermodel>,
    /// Valuations examined; for an exhaustive refutation this is the rank of
    /// the countermodel in valuation order, so it does not depend on the
    /// number of workers.
    pub valuations_checked: u64,
    pub sampled: bool,
}

fn countermodel(c: &CompiledFormula, a: &BrouwerAlgebra, vals: &[usize], value: usize) -> Countermodel {
    Countermodel {
        valuation: Valuation::new(c.vars.iter().cloned().zip(vals.iter().copied())),
        labels: c.vars.iter().cloned().zip(vals.iter().map(|&x| a.label(x).to_string())).collect(),
        value,
        value_label: a.label(value).to_string(),
    }
}

/// Number of valuations `m^k`, saturating.
pub fn valuation_count(m: usize, k: usize) -> u64 {
    (m as u64).checked_pow(k as u32).unwrap_or(u64::MAX)
}

pub fn is_valid(f: &Formula, a: &BrouwerAlgebra) -> Result<ValidityReport> {
    is_valid_with(f, a, &CheckOptions::default())
}

pub fn is_valid_with(f: &Formula, a: &BrouwerAlgebra, opts: &CheckOptions) -> Result<ValidityReport> {
    let c = CompiledFormula::new(f);
    let m = a.size();
    let k = c.vars.len();
    let designated = opts.designation.element(a);
    let total = valuation_count(m, k);
    let cost = total.saturating_mul(c.node_count() as u64);
    let mut report = ValidityReport {
        formula: f.to_string(),
        algebra: a.provenance().to_string(),
        designation: opts.designation,
        verdict: Verdict::Valid,
        valid: true,
        countermodel: None,
        valuations_checked: total,
        sampled: false,
    };

    if cost > opts.budget {
        let Some(s) = opts.sampling else {
            return Err(Error::resource(
                format!("{m}^{k} = {total} valuations x {} nodes = {cost} evaluation steps", c.node_count()),
                opts.budget,
            ));
        };
        let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
        let mut vals = vec![0; k];
        report.sampled = true;
        report.verdict = Verdict::Unknown;
        report.valid = false;
        report.valuations_checked = s.samples;
        for i in 0..s.samples {
            for v in vals.iter_mut() {
                *v = rng.gen_range(0..m);
            }
            let value = c.eval(a, &vals);
            if value != designated {
                report.verdict = Verdict::Invalid;
                report.countermodel = Some(countermodel(&c, a, &vals, value));
                report.valuations_checked = i + 1;
                break;
            }
        }
        return Ok(report);
    }

    let found = if k == 0 {
        c.scan_block(a, designated, 0)
    } else if opts.parallel {
        (0..m).into_par_iter().find_map_first(|first| c.scan_block(a, designated, first))
    } else {
        (0..m).find_map(|first| c.scan_block(a, designated, first))
    };
    if let Some((vals, value)) = found {
        let rank = vals.iter().fold(0u64, |acc, &x| acc * m as u64 + x as u64);
        report.verdict = Verdict::Invalid;
        report.valid = false;
        report.valuations_checked = rank + 1;
        report.countermodel = Some(countermodel(&c, a, &vals, value));
    }
    Ok(report)
}
