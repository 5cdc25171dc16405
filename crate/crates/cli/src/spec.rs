//! Textual algebra selectors.
//!
//! ```text
//! bn:<n> | free:<n> | chain:<m> | poset:<file>
//! interval:<spec>,<a>,<b> | factor:<spec>,<a>
//! ```
//!
//! Nested selectors are allowed (`factor:interval:bn:3,#0,#5,top`). Element
//! arguments are split off from the right at commas outside braces, so labels
//! such as `{0,1}` need no quoting.

use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use medlat_core::freedist::free_algebra;
use medlat_core::{bn, BrouwerAlgebra, Poset};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraSpec {
    Bn(usize),
    Free(usize),
    Chain(usize),
    Poset(PathBuf),
    Interval(Box<AlgebraSpec>, String, String),
    Factor(Box<AlgebraSpec>, String),
}

impl AlgebraSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (kind, rest) = text.split_once(':').ok_or_else(|| anyhow!("algebra spec {text:?} has no ':'"))?;
        let number = |what: &str| -> Result<usize> {
            rest.trim().parse().with_context(|| format!("{what} needs a number, got {rest:?}"))
        };
        Ok(match kind {
            "bn" => AlgebraSpec::Bn(number("bn")?),
            "free" => AlgebraSpec::Free(number("free")?),
            "chain" => AlgebraSpec::Chain(number("chain")?),
            "poset" => {
                if rest.is_empty() {
                    bail!("poset: needs a file path");
                }
                AlgebraSpec::Poset(PathBuf::from(rest))
            }
            "interval" => {
                let (inner, mut elts) = split_elements(rest, 2)?;
                let b = elts.pop().expect("two elements");
                let a = elts.pop().expect("two elements");
                AlgebraSpec::Interval(Box::new(Self::parse(inner)?), a, b)
            }
            "factor" => {
                let (inner, mut elts) = split_elements(rest, 1)?;
                AlgebraSpec::Factor(Box::new(Self::parse(inner)?), elts.pop().expect("one element"))
            }
            _ => bail!("unknown algebra kind {kind:?} (expected bn, free, chain, poset, interval, factor)"),
        })
    }

    pub fn build(&self) -> Result<Arc<BrouwerAlgebra>> {
        Ok(match self {
            AlgebraSpec::Bn(n) => bn(*n)?,
            AlgebraSpec::Free(n) => Arc::new(free_algebra(*n)?.algebra),
            AlgebraSpec::Chain(m) => Arc::new(BrouwerAlgebra::chain(*m)?),
            AlgebraSpec::Poset(path) => {
                let p = Poset::load(path).with_context(|| format!("loading {}", path.display()))?;
                Arc::new(BrouwerAlgebra::from_poset(&p)?)
            }
            AlgebraSpec::Interval(inner, a, b) => {
                let parent = inner.build()?;
                let (a, b) = (parent.resolve_element(a)?, parent.resolve_element(b)?);
                Arc::new(parent.interval(a, b)?.with_provenance(self.to_string()))
            }
            AlgebraSpec::Factor(inner, a) => {
                let parent = inner.build()?;
                let a = parent.resolve_element(a)?;
                Arc::new(parent.factor_by_principal_filter(a)?.algebra.with_provenance(self.to_string()))
            }
        })
    }
}

impl std::fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AlgebraSpec::Bn(n) => write!(f, "bn:{n}"),
            AlgebraSpec::Free(n) => write!(f, "free:{n}"),
            AlgebraSpec::Chain(m) => write!(f, "chain:{m}"),
            AlgebraSpec::Poset(p) => write!(f, "poset:{}", p.display()),
            AlgebraSpec::Interval(inner, a, b) => write!(f, "interval:{inner},{a},{b}"),
            AlgebraSpec::Factor(inner, a) => write!(f, "factor:{inner},{a}"),
        }
    }
}

impl std::str::FromStr for AlgebraSpec {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Split the last `k` top-level comma-separated fields off `text`.
fn split_elements(text: &str, k: usize) -> Result<(&str, Vec<String>)> {
    let mut depth = 0i32;
    let mut cuts = Vec::new();
    for (i, ch) in text.char_indices() {
        match ch {
            '{' | '(' | '[' => depth += 1,
            '}' | ')' | ']' => depth -= 1,
            ',' if depth == 0 => cuts.push(i),
            _ => {}
        }
    }
    if cuts.len() < k {
        bail!("{text:?} needs an algebra followed by {k} element argument(s)");
    }
    let first = cuts[cuts.len() - k];
    let mut elts = Vec::with_capacity(k);
    let mut bounds: Vec<usize> = cuts[cuts.len() - k..].to_vec();
    bounds.push(text.len());
    for w in bounds.windows(2) {
        let e = text[w[0] + 1..w[1]].trim();
        if e.is_empty() {
            bail!("empty element argument in {text:?}");
        }
        elts.push(e.to_string());
    }
    Ok((&text[..first], elts))
}
