//! Shared workloads for the criterion benches.

use medlat_core::logic::{axiom, Formula};

/// The named axioms, parsed once.
pub fn axioms() -> Vec<(&'static str, Formula)> {
    medlat_core::logic::axiom_names().map(|n| (n, axiom(n).expect("catalogue axiom"))).collect()
}
