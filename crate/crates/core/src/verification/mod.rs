//! Formulas for counts and weights, and a harness that checks them against
//! enumerated families over parameter grids.

mod claims;
mod formulas;
mod grid;

pub use claims::{
    berger_probe, corollary3_check, verify_claim, verify_claim_with, BergerProbe, Cell, ClaimId, GuardRails, Verdict,
    VerificationReport,
};
pub use formulas::{
    fib_count, longest_weight_formula, max_weight_formula, middle_identity_check, self_conjugate_counts, straub_minus,
    straub_plus, CountFunctions, SelfConjugateKind,
};
pub use grid::ParamGrid;
