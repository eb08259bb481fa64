//! Propositional language over profile atoms and its intuitionistic
//! consequence relation.

mod formula;
mod parser;
mod prover;

pub use formula::{Atom, AxiomBase, Formula, Mode, DESIGNATED_ATOM};
pub use parser::{parse_formula, SyntaxError, MAX_NESTING};
pub use prover::{derives, derives_all, Prover, ProverError, DEFAULT_BUDGET};

use crate::profile::Profile;

/// The eight-way conjunction describing a profile.
pub fn profile_formula(p: &Profile, mode: Mode) -> Formula {
    Formula::of_profile(p, mode)
}

pub fn atom_true_at(p: &Profile, a: Atom, mode: Mode) -> bool {
    a.true_at(p, mode)
}
