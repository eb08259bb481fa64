use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::profile::{Factor, PlainSignature, Profile, Signature};

/// "factor carries signature".
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Atom {
    pub factor: Factor,
    pub signature: Signature,
}

impl Atom {
    pub const fn new(factor: Factor, signature: Signature) -> Self {
        Atom { factor, signature }
    }

    pub fn plain(factor: Factor, signature: PlainSignature) -> Self {
        Atom::new(factor, signature.to_signature())
    }

    /// Dense index in `0..96`.
    pub fn index(self) -> usize {
        self.factor.index() * 12 + self.signature.index()
    }

    pub fn true_at(self, profile: &Profile, mode: Mode) -> bool {
        let actual = profile.get(self.factor);
        match mode {
            Mode::Plain => actual.modulo_quanta() == self.signature.modulo_quanta(),
            Mode::Full => actual == self.signature,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.factor, self.signature)
    }
}

/// How atoms are evaluated at a profile.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Quanta are stripped on both sides before comparison.
    #[default]
    Plain,
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
}

/// Atom used to spell out the falsum and verum macros.
pub const DESIGNATED_ATOM: Atom = Atom::new(Factor::H, Signature::Zero);

impl Formula {
    pub fn atom(a: Atom) -> Self {
        Formula::Atom(a)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
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

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    /// `A & ~A` for the designated atom.
    pub fn bottom() -> Self {
        let a = Formula::Atom(DESIGNATED_ATOM);
        Formula::and(a.clone(), Formula::not(a))
    }

    pub fn top() -> Self {
        Formula::not(Formula::bottom())
    }

    /// Left-nested conjunction; `None` for an empty iterator.
    pub fn conjunction(items: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        items.into_iter().reduce(Formula::and)
    }

    pub fn disjunction(items: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        items.into_iter().reduce(Formula::or)
    }

    /// The conjunction of a profile's eight atoms.
    pub fn of_profile(profile: &Profile, mode: Mode) -> Formula {
        Formula::conjunction(Factor::ALL.iter().map(|&f| {
            let sig = match mode {
                Mode::Plain => profile.plain(f).to_signature(),
                Mode::Full => profile.get(f),
            };
            Formula::Atom(Atom::new(f, sig))
        }))
        .expect("eight factors")
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Not(a) => 1 + a.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::Atom(a) => {
                out.insert(*a);
            }
            Formula::Not(a) => a.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Replaces atoms by formulas, leaving unmapped atoms alone.
    pub fn substitute(&self, sigma: &impl Fn(Atom) -> Option<Formula>) -> Formula {
        match self {
            Formula::Atom(a) => sigma(*a).unwrap_or_else(|| self.clone()),
            Formula::Not(a) => Formula::not(a.substitute(sigma)),
            Formula::And(a, b) => Formula::and(a.substitute(sigma), b.substitute(sigma)),
            Formula::Or(a, b) => Formula::or(a.substitute(sigma), b.substitute(sigma)),
            Formula::Imp(a, b) => Formula::imp(a.substitute(sigma), b.substitute(sigma)),
        }
    }

    /// Classical truth at a single profile.
    pub fn holds_classically(&self, profile: &Profile, mode: Mode) -> bool {
        match self {
            Formula::Atom(a) => a.true_at(profile, mode),
            Formula::Not(a) => !a.holds_classically(profile, mode),
            Formula::And(a, b) => {
                a.holds_classically(profile, mode) && b.holds_classically(profile, mode)
            }
            Formula::Or(a, b) => {
                a.holds_classically(profile, mode) || b.holds_classically(profile, mode)
            }
            Formula::Imp(a, b) => {
                !a.holds_classically(profile, mode) || b.holds_classically(profile, mode)
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Imp(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Not(_) | Formula::Atom(_) => 4,
        }
    }

    fn fmt_child(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl From<Atom> for Formula {
    fn from(a: Atom) -> Self {
        Formula::Atom(a)
    }
}

/// Prints in the ASCII grammar with the fewest parentheses that reparse
/// to the same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Not(a) => {
                f.write_str("~")?;
                a.fmt_child(f, 4)
            }
            Formula::And(a, b) => {
                a.fmt_child(f, 3)?;
                f.write_str(" & ")?;
                b.fmt_child(f, 4)
            }
            Formula::Or(a, b) => {
                a.fmt_child(f, 2)?;
                f.write_str(" | ")?;
                b.fmt_child(f, 3)
            }
            Formula::Imp(a, b) => {
                a.fmt_child(f, 2)?;
                f.write_str(" -> ")?;
                b.fmt_child(f, 1)
            }
        }
    }
}

impl Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        super::parse_formula(&s).map_err(serde::de::Error::custom)
    }
}

/// A finite set of axioms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomBase {
    formulas: BTreeSet<Formula>,
}

impl AxiomBase {
    pub fn new() -> Self {
        AxiomBase::default()
    }

    pub fn insert(&mut self, f: Formula) -> bool {
        self.formulas.insert(f)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Formula> {
        self.formulas.iter()
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.formulas.contains(f)
    }

    pub fn is_subset(&self, other: &AxiomBase) -> bool {
        self.formulas.is_subset(&other.formulas)
    }

    pub fn union(&self, other: &AxiomBase) -> AxiomBase {
        AxiomBase {
            formulas: self.formulas.union(&other.formulas).cloned().collect(),
        }
    }
}

impl FromIterator<Formula> for AxiomBase {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> Self {
        AxiomBase {
            formulas: iter.into_iter().collect(),
        }
    }
}

impl Extend<Formula> for AxiomBase {
    fn extend<I: IntoIterator<Item = Formula>>(&mut self, iter: I) {
        self.formulas.extend(iter)
    }
}
