//! Propositional formulas and their validity in Brouwer algebras.

mod axioms;
mod eval;
mod formula;
pub(crate) mod parser;
mod search;

pub use axioms::{antichain_formula, axiom, axiom_names, ANTICHAIN_VARS, AXIOMS};
pub use eval::{
    eval, is_valid, is_valid_with, valuation_count, CheckOptions, CompiledFormula, Countermodel, Designation, Sampling,
    ValidityReport, Valuation, Verdict, DEFAULT_BUDGET,
};
pub use formula::Formula;
pub use parser::{parse, ParseError, MAX_DEPTH};
pub use search::{
    classical_tautology, countermodel_search, kp_class_check, lm_member, one_variable_spectrum, theory_compare,
    CountermodelSearch, FoundCountermodel, KpClassReport, LevelResult, LmReport, Spectrum, TheoryComparison, TheoryRow,
    MAX_CLASSICAL_VARS, MAX_KP_CLASS_POSET, MAX_SPECTRUM_DEPTH,
};
