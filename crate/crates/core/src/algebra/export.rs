//! JSON and DOT export.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::BrouwerAlgebra;
use crate::bits::BitMatrix;
use crate::error::{Error, Result};

/// Serialized form; `le[i][j]` is `i <= j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub size: usize,
    pub bottom: usize,
    pub top: usize,
    pub le: Vec<Vec<bool>>,
    pub join: Vec<Vec<usize>>,
    pub meet: Vec<Vec<usize>>,
    pub imp: Vec<Vec<usize>>,
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl BrouwerAlgebra {
    pub fn to_json_value(&self) -> AlgebraJson {
        let m = self.size();
        let table = |f: &dyn Fn(usize, usize) -> usize| (0..m).map(|a| (0..m).map(|b| f(a, b)).collect()).collect();
        AlgebraJson {
            size: m,
            bottom: self.bottom(),
            top: self.top(),
            le: (0..m).map(|a| (0..m).map(|b| self.leq(a, b)).collect()).collect(),
            join: table(&|a, b| self.join(a, b)),
            meet: table(&|a, b| self.meet(a, b)),
            imp: table(&|a, b| self.imp(a, b)),
            provenance: self.provenance().to_string(),
            labels: Some(self.labels().to_vec()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("algebra serializes")
    }

    /// Load and validate an exported algebra.
    pub fn from_json_value(j: &AlgebraJson) -> Result<Self> {
        let m = j.size;
        let square = |name: &str, widths: Vec<usize>| -> Result<()> {
            if widths.len() != m || widths.iter().any(|&c| c != m) {
                return Err(Error::input(format!("{name} is not {m}x{m}")));
            }
            Ok(())
        };
        square("le", j.le.iter().map(Vec::len).collect())?;
        for (name, t) in [("join", &j.join), ("meet", &j.meet), ("imp", &j.imp)] {
            square(name, t.iter().map(Vec::len).collect())?;
        }
        let flat = |t: &Vec<Vec<usize>>| t.iter().flatten().copied().collect::<Vec<_>>();
        let labels = j.labels.clone().unwrap_or_else(|| (0..m).map(|i| i.to_string()).collect());
        Self::from_tables(
            BitMatrix::from_fn(m, |a, b| j.le[a][b]),
            flat(&j.join),
            flat(&j.meet),
            flat(&j.imp),
            j.bottom,
            j.top,
            labels,
            j.provenance.clone(),
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_json_value(&serde_json::from_str(text)?)
    }

    /// Hasse diagram (cover edges only, bottom at the bottom); meet-irreducible
    /// elements are drawn as boxes.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph algebra {\n  rankdir=BT;\n");
        for x in 0..self.size() {
            let shape = if self.is_meet_irreducible(x) { "box" } else { "ellipse" };
            let _ = writeln!(out, "  e{x} [label={:?}, shape={shape}];", self.label(x));
        }
        for x in 0..self.size() {
            for y in self.upper_covers(x) {
                let _ = writeln!(out, "  e{x} -> e{y};");
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::bn;

    #[test]
    fn json_round_trip() {
        let a = bn(2).unwrap();
        let text = a.to_json();
        let b = BrouwerAlgebra::from_json(&text).unwrap();
        assert_eq!(b.to_json_value(), a.to_json_value());
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        for key in ["size", "bottom", "top", "le", "join", "meet", "imp", "provenance"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn json_rejects_bad_tables() {
        let mut j = bn(2).unwrap().to_json_value();
        j.join[0].pop();
        assert!(BrouwerAlgebra::from_json_value(&j).is_err());
        let mut j = bn(2).unwrap().to_json_value();
        j.join[1][2] = j.meet[1][2];
        assert!(BrouwerAlgebra::from_json_value(&j).is_err());
    }

    #[test]
    fn dot_has_covers_and_boxes() {
        let a = bn(2).unwrap();
        let dot = a.to_dot();
        // B_2 has 5 cover edges: P < {0,1} < {0}, {1} < {} and the full set only below {0,1}
        assert_eq!(dot.matches("->").count(), 5);
        assert_eq!(dot.matches("shape=box").count(), 4);
    }
}
