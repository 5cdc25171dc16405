//! Exhaustive law checking for table-backed algebras.

use std::fmt;

use serde::Serialize;

use super::BrouwerAlgebra;
use crate::bits::{iter_ones, BitMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Law {
    Reflexive,
    Antisymmetric,
    Transitive,
    BottomLeast,
    TopGreatest,
    JoinUpperBound,
    JoinLeast,
    MeetLowerBound,
    MeetGreatest,
    Distributive,
    ResiduationCovers,
    ResiduationMinimal,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::Reflexive => "order reflexive",
            Law::Antisymmetric => "order antisymmetric",
            Law::Transitive => "order transitive",
            Law::BottomLeast => "bottom <= x",
            Law::TopGreatest => "x <= top",
            Law::JoinUpperBound => "a, b <= a+b",
            Law::JoinLeast => "a+b least upper bound",
            Law::MeetLowerBound => "a*b <= a, b",
            Law::MeetGreatest => "a*b greatest lower bound",
            Law::Distributive => "a*(b+c) = a*b + a*c",
            Law::ResiduationCovers => "a + (a->b) >= b",
            Law::ResiduationMinimal => "a->b <= c whenever a+c >= b",
        };
        f.write_str(s)
    }
}

/// One violated law with the first witness found (element indices).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: Law,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, law: Law) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    fn record(&mut self, law: Law, witness: &[usize]) {
        if !self.violates(law) {
            self.violations.push(Violation { law, witness: witness.to_vec() });
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{} fails at {:?}", v.law, v.witness)?;
        }
        Ok(())
    }
}

/// The least element of `{c : pred(c)}` under `le`, if that set has one.
pub(crate) fn min_scan(le: &BitMatrix, m: usize, pred: impl Fn(usize) -> bool) -> Option<usize> {
    let mut set = vec![0u64; le.words()];
    for c in 0..m {
        if pred(c) {
            set[c / 64] |= 1 << (c % 64);
        }
    }
    let least = iter_ones(&set).find(|&c| set.iter().zip(le.row(c)).all(|(s, r)| s & !r == 0));
    least
}

impl BrouwerAlgebra {
    /// Check every Brouwer-algebra law exhaustively. Cost is cubic in the
    /// carrier size.
    pub fn validate(&self) -> ValidationReport {
        let m = self.size();
        let mut r = ValidationReport::default();
        let le = |a, b| self.leq(a, b);

        for a in 0..m {
            if !le(a, a) {
                r.record(Law::Reflexive, &[a]);
            }
            if !le(self.bottom(), a) {
                r.record(Law::BottomLeast, &[a]);
            }
            if !le(a, self.top()) {
                r.record(Law::TopGreatest, &[a]);
            }
            for b in 0..m {
                if a != b && le(a, b) && le(b, a) {
                    r.record(Law::Antisymmetric, &[a, b]);
                }
                let j = self.join(a, b);
                let mt = self.meet(a, b);
                if !le(a, j) || !le(b, j) {
                    r.record(Law::JoinUpperBound, &[a, b]);
                }
                if !le(mt, a) || !le(mt, b) {
                    r.record(Law::MeetLowerBound, &[a, b]);
                }
                let i = self.imp(a, b);
                if !le(b, self.join(a, i)) {
                    r.record(Law::ResiduationCovers, &[a, b]);
                }
                for c in 0..m {
                    if le(a, b) && le(b, c) && !le(a, c) {
                        r.record(Law::Transitive, &[a, b, c]);
                    }
                    if le(a, c) && le(b, c) && !le(j, c) {
                        r.record(Law::JoinLeast, &[a, b, c]);
                    }
                    if le(c, a) && le(c, b) && !le(c, mt) {
                        r.record(Law::MeetGreatest, &[a, b, c]);
                    }
                    if self.meet(a, self.join(b, c)) != self.join(mt, self.meet(a, c)) {
                        r.record(Law::Distributive, &[a, b, c]);
                    }
                    if le(b, self.join(a, c)) && !le(i, c) {
                        r.record(Law::ResiduationMinimal, &[a, b, c]);
                    }
                }
            }
        }
        r
    }

    /// `a × (b + c) = (a × b) + (a × c)` on all triples; cached.
    pub fn is_distributive(&self) -> bool {
        *self.distributive.get_or_init(|| {
            let m = self.size();
            (0..m).all(|a| {
                (0..m).all(|b| {
                    (0..m).all(|c| self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c)))
                })
            })
        })
    }
}
