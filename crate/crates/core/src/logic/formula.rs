use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::parser::{parse, ParseError};

/// Propositional formula over named variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Var(String),
    /// Logical truth; evaluates to the algebra's bottom.
    Top,
    /// Logical falsity; evaluates to the algebra's top.
    Bot,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Not(Box<Formula>),
}

impl Formula {
    pub fn var(name: &str) -> Self {
        Formula::Var(name.to_string())
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Self {
        Formula::Not(Box::new(a))
    }

    /// Distinct variable names, sorted.
    pub fn variables(&self) -> Vec<String> {
        let mut set = BTreeSet::new();
        self.collect_vars(&mut set);
        set.into_iter().map(str::to_string).collect()
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Formula::Var(v) => {
                out.insert(v);
            }
            Formula::Top | Formula::Bot => {}
            Formula::Not(a) => a.collect_vars(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Top | Formula::Bot => 1,
            Formula::Not(a) => 1 + a.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Top | Formula::Bot => 1,
            Formula::Not(a) => 1 + a.node_count(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.node_count() + b.node_count(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Imp(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Not(_) => 4,
            _ => 5,
        }
    }

    fn fmt_child(&self, f: &mut fmt::Formatter<'_>, parens: bool) -> fmt::Result {
        if parens {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

/// ASCII rendering with the fewest parentheses that reparse to the same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Var(v) => f.write_str(v),
            Formula::Top => f.write_str("T"),
            Formula::Bot => f.write_str("F"),
            Formula::Not(a) => {
                f.write_str("~")?;
                a.fmt_child(f, a.precedence() < 4)
            }
            Formula::Imp(a, b) => {
                a.fmt_child(f, a.precedence() <= 1)?;
                f.write_str(" -> ")?;
                b.fmt_child(f, b.precedence() < 1)
            }
            Formula::Or(a, b) | Formula::And(a, b) => {
                let (p, op) = if matches!(self, Formula::Or(..)) { (2, " | ") } else { (3, " & ") };
                a.fmt_child(f, a.precedence() < p)?;
                f.write_str(op)?;
                b.fmt_child(f, b.precedence() <= p)
            }
        }
    }
}

impl FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering_minimizes_parentheses() {
        let p = || Formula::var("p");
        let q = || Formula::var("q");
        assert_eq!(Formula::imp(Formula::imp(p(), q()), p()).to_string(), "(p -> q) -> p");
        assert_eq!(Formula::imp(p(), Formula::imp(q(), p())).to_string(), "p -> q -> p");
        assert_eq!(Formula::or(p(), Formula::or(q(), p())).to_string(), "p | (q | p)");
        assert_eq!(Formula::or(Formula::or(p(), q()), p()).to_string(), "p | q | p");
        assert_eq!(Formula::not(Formula::and(p(), q())).to_string(), "~(p & q)");
        assert_eq!(Formula::and(Formula::or(p(), q()), Formula::not(Formula::not(p()))).to_string(), "(p | q) & ~~p");
    }

    #[test]
    fn variables_sorted_and_distinct() {
        let f: Formula = "r -> (q | r) & p".parse().unwrap();
        assert_eq!(f.variables(), vec!["p", "q", "r"]);
        assert_eq!(f.node_count(), 7);
        assert_eq!(f.depth(), 4);
    }
}
