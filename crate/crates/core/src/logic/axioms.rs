//! Named axioms and the antichain formulas.

use super::formula::Formula;
use super::parser::parse;
use crate::error::{Error, Result};

/// `(name, text)` for every named axiom.
pub const AXIOMS: &[(&str, &str)] = &[
    ("kp", "(~p -> q | r) -> (~p -> q) | (~p -> r)"),
    ("sc_paper", "((~~p -> p) -> (~p | p)) -> (~~p | p)"),
    ("sc_standard", "((~~p -> p) -> (p | ~p)) -> (~p | ~~p)"),
    ("jan", "~p | ~~p"),
    ("lin", "(p -> q) | (q -> p)"),
    ("lem", "p | ~p"),
];

pub fn axiom_names() -> impl Iterator<Item = &'static str> {
    AXIOMS.iter().map(|&(n, _)| n)
}

pub fn axiom(name: &str) -> Result<Formula> {
    let text = AXIOMS.iter().find(|&&(n, _)| n == name).map(|&(_, t)| t).ok_or_else(|| {
        Error::input(format!("unknown axiom {name:?}; known: {}", axiom_names().collect::<Vec<_>>().join(", ")))
    })?;
    Ok(parse(text).expect("catalogue formulas parse"))
}

/// Variables used by [`antichain_formula`], in order.
pub const ANTICHAIN_VARS: [&str; 6] = ["p", "q", "r", "s", "t", "u"];

/// `⋁_{i<j} ((x_i → x_j) ∨ (x_j → x_i))`, folded to the left: some pair of
/// the `k` values is comparable. For `k = 2` this is the linearity axiom.
pub fn antichain_formula(k: usize) -> Result<Formula> {
    if !(2..=ANTICHAIN_VARS.len()).contains(&k) {
        return Err(Error::input(format!("antichain formula needs 2 <= k <= 6, got {k}")));
    }
    let v = |i: usize| Formula::var(ANTICHAIN_VARS[i]);
    let mut terms = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            terms.push(Formula::or(Formula::imp(v(i), v(j)), Formula::imp(v(j), v(i))));
        }
    }
    let mut it = terms.into_iter();
    let first = it.next().expect("k >= 2");
    Ok(it.fold(first, Formula::or))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_parses() {
        for name in axiom_names() {
            assert!(axiom(name).is_ok());
        }
        assert!(axiom("dummett").unwrap_err().to_string().contains("kp"));
    }

    #[test]
    fn literal_forms() {
        assert_eq!(axiom("lin").unwrap(), parse("(p->q)|(q->p)").unwrap());
        assert_eq!(axiom("jan").unwrap(), parse("~p | ~~p").unwrap());
        assert_eq!(axiom("sc_paper").unwrap(), parse("((¬¬p → p) → (¬p ∨ p)) → (¬¬p ∨ p)").unwrap());
    }

    #[test]
    fn antichain_two_is_lin() {
        assert_eq!(antichain_formula(2).unwrap(), axiom("lin").unwrap());
        assert_eq!(antichain_formula(4).unwrap().variables(), vec!["p", "q", "r", "s"]);
        assert!(antichain_formula(1).is_err());
        assert!(antichain_formula(7).is_err());
    }
}
