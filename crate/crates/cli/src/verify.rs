//! Batch property suites behind `medlat verify`.

use anyhow::{bail, Result};
use serde::Serialize;

use medlat_core::algebra::is_isomorphic;
use medlat_core::freedist::{
    free_algebra, free_enumerate, free_imp, generator_negations, independence_check, iso_to_bn,
};
use medlat_core::logic::{kp_class_check, CheckOptions};
use medlat_core::poset::{enumerate_posets, open_sets, powerset_poset};
use medlat_core::{bn, BrouwerAlgebra};

pub const SUITES: &[&str] = &["iso", "arrow", "factor", "hom", "kp", "free", "all"];

/// One checked property. `witness` holds the first failure, if any.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: u64,
    pub witness: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>) -> Self {
        Check { name: name.into(), passed: true, cases: 0, witness: None }
    }

    /// Count a case; keep the first failure as the witness.
    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.passed {
            self.passed = false;
            self.witness = Some(witness());
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Largest free/`B_n` level, at most 4.
    pub max_n: usize,
    /// Largest poset for the factor and KP sweeps.
    pub max_poset: usize,
    pub check: CheckOptions,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_n: 4, max_poset: 4, check: CheckOptions::default() }
    }
}

pub fn run_suite(suite: &str, opts: &VerifyOptions) -> Result<SuiteReport> {
    let checks = match suite {
        "iso" => iso(opts)?,
        "arrow" => arrow(opts)?,
        "factor" => factor(opts)?,
        "hom" => hom()?,
        "kp" => kp(opts)?,
        "free" => free(opts)?,
        "all" => {
            let mut all = Vec::new();
            for s in &SUITES[..SUITES.len() - 1] {
                all.extend(run_suite(s, opts)?.checks);
            }
            all
        }
        _ => bail!("unknown suite {suite:?} (expected one of {})", SUITES.join(", ")),
    };
    Ok(SuiteReport { suite: suite.to_string(), passed: checks.iter().all(|c| c.passed), checks })
}

fn iso(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut sizes = Check::new("|F_n| = |Op(2^n - {0})|");
    let mut iso = Check::new("F_n -> B_n is a B-isomorphism");
    for n in 1..=opts.max_n {
        let free = free_enumerate(n)?.len();
        let opens = open_sets(&powerset_poset(n)?)?.len();
        sizes.record(free == opens, || format!("n = {n}: {free} normal forms, {opens} opens"));
        let r = iso_to_bn(n)?;
        iso.record(r.is_verified(), || {
            let why = match &r.homomorphism {
                Err(v) => v.to_string(),
                Ok(()) => "not bijective".to_string(),
            };
            format!("n = {n}: {why}")
        });
    }
    Ok(vec![sizes, iso])
}

fn arrow(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut c = Check::new("free -> equals the residuation min-scan in B_n");
    for n in 1..=opts.max_n {
        let fa = free_algebra(n)?;
        let r = iso_to_bn(n)?;
        let b = bn(n)?;
        for (i, x) in fa.elements.iter().enumerate() {
            for (j, y) in fa.elements.iter().enumerate() {
                let k = fa.index_of(&free_imp(x, y)?).expect("closed");
                let scan = b.imp_by_min_scan(r.map.apply(i), r.map.apply(j));
                c.record(scan == Some(r.map.apply(k)), || format!("n = {n}: ({x}) -> ({y}) = {}", fa.elements[k]));
            }
        }
    }
    Ok(vec![c])
}

fn factor(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut c = Check::new("A/[a) is isomorphic to [0, a]");
    for n in 1..=opts.max_poset {
        for p in enumerate_posets(n)? {
            let a = BrouwerAlgebra::from_poset(&p)?;
            for x in 0..a.size() {
                let f = a.factor_by_principal_filter(x)?;
                let i = a.interval(a.bottom(), x)?;
                let ok = f.algebra.validate().is_ok()
                    && (f.iso_to_interval.is_some() || is_isomorphic(&f.algebra, &i).is_some());
                c.record(ok, || format!("{} modulo [{})", p.name(), a.label(x)));
            }
        }
    }
    Ok(vec![c])
}

fn hom() -> Result<Vec<Check>> {
    let mut c = Check::new("u -> u + a maps [0, c] onto [a, c + a] homomorphically");
    let b = bn(3)?;
    for x in 0..b.size() {
        for y in 0..b.size() {
            let m = b.plus_a_map(x, y)?;
            let h = m.check_homomorphism();
            c.record(h.is_ok() && m.surjective, || {
                let why = h.err().map_or("not surjective".to_string(), |v| v.to_string());
                format!("a = {}, c = {}: {why}", b.label(x), b.label(y))
            });
        }
    }
    Ok(vec![c])
}

fn kp(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut c = Check::new("negations meet-irreducible => KP valid");
    let r = kp_class_check(opts.max_poset.max(1), &opts.check)?;
    c.cases = r.positive as u64;
    if !r.holds() {
        c.passed = false;
        c.witness = r.positive_failures.first().cloned();
    }
    Ok(vec![c])
}

fn free(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut neg = Check::new("generator negations in F_n");
    let mut ind = Check::new("no generator lies below a join of the others");
    for n in 2..=opts.max_n.max(2) {
        let r = generator_negations(n)?;
        neg.record(r.all_hold(), || {
            let row = r.rows.iter().find(|g| !(g.neg_is_other_generators && g.double_neg_fixed)).expect("failing row");
            format!("n = {n}, a{}: ~a = {}, ~~a = {}", row.i, row.neg, row.neg_neg)
        });
        for i in 0..n {
            for set in 1u32..1 << n {
                if set >> i & 1 == 1 {
                    continue;
                }
                let dependent = independence_check(n, i, set)?;
                ind.record(!dependent, || format!("n = {n}: a{i} <= join of mask {set:#b}"));
            }
        }
    }
    Ok(vec![neg, ind])
}
