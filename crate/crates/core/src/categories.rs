//! Transformations of sequence sets and corpus-relative checks of whether
//! they preserve a theory.
//!
//! Membership in a personality category quantifies over every set of
//! sequences, which cannot be checked. Here a candidate is run against a
//! finite family of test sets and either survives or yields a concrete
//! counterexample.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::galois::TheoryHandle;
use crate::logic::{Formula, ProverError};
use crate::profile::{Factor, Profile, ProfileSequence, Signature};

pub type SequenceSet = BTreeSet<ProfileSequence>;

/// A rearrangement of the eight factors: position `i` of the output takes
/// the signature the input has at factor `order[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Factor>", into = "Vec<Factor>")]
pub struct Permutation([Factor; 8]);

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("a factor permutation must list each of the 8 factors exactly once")]
pub struct InvalidPermutation;

impl TryFrom<Vec<Factor>> for Permutation {
    type Error = InvalidPermutation;

    fn try_from(v: Vec<Factor>) -> Result<Self, Self::Error> {
        let order: [Factor; 8] = v.try_into().map_err(|_| InvalidPermutation)?;
        let distinct: BTreeSet<Factor> = order.iter().copied().collect();
        if distinct.len() == 8 {
            Ok(Permutation(order))
        } else {
            Err(InvalidPermutation)
        }
    }
}

impl From<Permutation> for Vec<Factor> {
    fn from(p: Permutation) -> Self {
        p.0.to_vec()
    }
}

impl Permutation {
    pub fn identity() -> Self {
        Permutation(Factor::ALL)
    }

    pub fn apply(&self, p: &Profile) -> Profile {
        let mut sigs = [Signature::Zero; 8];
        for (i, f) in self.0.iter().enumerate() {
            sigs[i] = p.get(*f);
        }
        Profile::new(sigs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Kind {
    Identity,
    /// Extends every sequence one step further into the past.
    AppendProfile { profile: Profile },
    /// Removes the `k` oldest profiles of every sequence longer than `k`.
    DropOldest { k: usize },
    FactorPermutation { order: Permutation },
    /// Rewrites signatures at every factor; unmapped signatures stay.
    SignatureMap { map: BTreeMap<Signature, Signature> },
    UnionConstant { sequences: Vec<ProfileSequence> },
    ReplaceConstant { sequences: Vec<ProfileSequence> },
    /// `steps[0] ∘ steps[1] ∘ …`, so the last step runs first.
    Composite { steps: Vec<Transformation> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transformation {
    #[serde(default)]
    pub name: String,
    #[serde(flatten)]
    pub kind: Kind,
}

impl Transformation {
    pub fn new(name: impl Into<String>, kind: Kind) -> Self {
        Transformation {
            name: name.into(),
            kind,
        }
    }

    pub fn identity() -> Self {
        Transformation::new("id", Kind::Identity)
    }

    pub fn drop_oldest(k: usize) -> Self {
        Transformation::new(format!("drop-oldest({k})"), Kind::DropOldest { k })
    }

    pub fn append_profile(profile: Profile) -> Self {
        Transformation::new("append-profile", Kind::AppendProfile { profile })
    }

    pub fn replace_constant(sequences: Vec<ProfileSequence>) -> Self {
        Transformation::new("replace-constant", Kind::ReplaceConstant { sequences })
    }

    pub fn union_constant(sequences: Vec<ProfileSequence>) -> Self {
        Transformation::new("union-constant", Kind::UnionConstant { sequences })
    }

    pub fn apply(&self, set: &SequenceSet) -> SequenceSet {
        match &self.kind {
            Kind::Identity => set.clone(),
            Kind::AppendProfile { profile } => {
                let prefix = ProfileSequence::single(*profile);
                set.iter().map(|s| prefix.concat(s)).collect()
            }
            Kind::DropOldest { k } => set
                .iter()
                .map(|s| s.drop_oldest(*k).unwrap_or_else(|| s.clone()))
                .collect(),
            Kind::FactorPermutation { order } => set
                .iter()
                .map(|s| s.map_profiles(|p| order.apply(p)))
                .collect(),
            Kind::SignatureMap { map } => set
                .iter()
                .map(|s| {
                    s.map_profiles(|p| {
                        let mut out = *p;
                        for f in Factor::ALL {
                            if let Some(&to) = map.get(&p.get(f)) {
                                out = out.with(f, to);
                            }
                        }
                        out
                    })
                })
                .collect(),
            Kind::UnionConstant { sequences } => {
                let mut out = set.clone();
                out.extend(sequences.iter().cloned());
                out
            }
            Kind::ReplaceConstant { sequences } => sequences.iter().cloned().collect(),
            Kind::Composite { steps } => steps
                .iter()
                .rev()
                .fold(set.clone(), |acc, t| t.apply(&acc)),
        }
    }
}

/// `t1 ∘ t2`: applies `t2` first.
pub fn compose(t1: &Transformation, t2: &Transformation) -> Transformation {
    Transformation::new(
        format!("{} . {}", t1.name, t2.name),
        Kind::Composite {
            steps: vec![t1.clone(), t2.clone()],
        },
    )
}

pub fn parse_transformation(text: &str) -> Result<Transformation, serde_json::Error> {
    serde_json::from_str(text)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    /// No counterexample among the tests; not a proof of membership.
    PreservedOnTests,
    /// `formula` is in the theory of `tests[test_index]` but not in the
    /// theory of its image.
    Violated { test_index: usize, formula: Formula },
}

impl Verdict {
    pub fn is_preserved(&self) -> bool {
        matches!(self, Verdict::PreservedOnTests)
    }
}

/// Whether every `φ ∈ phi` in the theory of a test set stays in the theory
/// of its image under `t`.
pub fn preserves(
    t: &Transformation,
    phi: &[Formula],
    tests: &[SequenceSet],
    budget: u64,
) -> Result<Verdict, ProverError> {
    for (i, test) in tests.iter().enumerate() {
        let before = TheoryHandle::of_sequences(test, budget);
        let image = t.apply(test);
        let after = TheoryHandle::of_sequences(&image, budget);
        for f in phi {
            if before.contains(f)? && !after.contains(f)? {
                return Ok(Verdict::Violated {
                    test_index: i,
                    formula: f.clone(),
                });
            }
        }
    }
    Ok(Verdict::PreservedOnTests)
}

/// Whether `◁𝒫 ⊆ ◁t(𝒫)` for every test set, with a separating formula
/// when it fails.
pub fn preserves_theory(t: &Transformation, tests: &[SequenceSet], budget: u64) -> Verdict {
    for (i, test) in tests.iter().enumerate() {
        let before = TheoryHandle::of_sequences(test, budget);
        let after = TheoryHandle::of_sequences(&t.apply(test), budget);
        if let Some(formula) = before.separating_formula(&after) {
            return Verdict::Violated {
                test_index: i,
                formula,
            };
        }
    }
    Verdict::PreservedOnTests
}

pub fn category_membership_report(
    phi: &[Formula],
    candidates: &[Transformation],
    tests: &[SequenceSet],
    budget: u64,
) -> Result<Vec<(String, Verdict)>, ProverError> {
    candidates
        .iter()
        .map(|t| Ok((t.name.clone(), preserves(t, phi, tests, budget)?)))
        .collect()
}
