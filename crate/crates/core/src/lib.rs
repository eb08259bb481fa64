//! Mining intuitionistic implicational invariants from sequences of
//! symbolic test profiles.
//!
//! The pipeline runs from [`profile`] (data model and parsing) through
//! [`miner`] (implication tables and invariant sets) to [`diagram`]
//! (rendering). [`logic`] decides derivability from mined axiom bases,
//! and [`galois`] and [`categories`] build the polarity and
//! transformation machinery on top of it.

pub mod categories;
pub mod diagram;
pub mod galois;
pub mod logic;
pub mod miner;
pub mod profile;

pub use logic::{Atom, AxiomBase, Formula, Mode, Prover, ProverError};
pub use miner::{GroundImplication, ImplicationTable, InvariantSet, PlainAtom};
pub use profile::{Factor, PlainSignature, Profile, ProfileSequence, Signature};
