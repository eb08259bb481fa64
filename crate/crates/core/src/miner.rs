//! Implication tables and simple implicational invariants.
//!
//! [`update`] follows the discount algorithm: every cell of the 8×8 grid of
//! 4×4 subtables starts at the sequence length and is decremented once for
//! each profile at which its material implication holds. Cells left at zero
//! are the invariants. [`oracle_mine`] computes the same set by a direct
//! double loop and serves as ground truth.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::logic::{Atom, AxiomBase, Formula, Mode};
use crate::profile::{Factor, PlainSignature, ProfileSequence};

/// An atom over the plain four-value signature domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PlainAtom {
    pub factor: Factor,
    pub signature: PlainSignature,
}

impl PlainAtom {
    pub const fn new(factor: Factor, signature: PlainSignature) -> Self {
        PlainAtom { factor, signature }
    }

    /// All 32 plain atoms, in factor order then signature code.
    pub fn all() -> impl Iterator<Item = PlainAtom> {
        (0..32).map(PlainAtom::from_index)
    }

    pub fn index(self) -> usize {
        self.factor.index() * 4 + self.signature.code()
    }

    pub fn from_index(i: usize) -> PlainAtom {
        PlainAtom {
            factor: Factor::ALL[i / 4],
            signature: PlainSignature::ALL[i % 4],
        }
    }

    pub fn to_atom(self) -> Atom {
        Atom::plain(self.factor, self.signature)
    }

    pub fn to_formula(self) -> Formula {
        Formula::Atom(self.to_atom())
    }

    pub fn true_at(self, profile: &crate::profile::Profile) -> bool {
        profile.plain(self.factor) == self.signature
    }
}

impl fmt::Display for PlainAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.factor, self.signature)
    }
}

impl TryFrom<Atom> for PlainAtom {
    type Error = Atom;

    /// Fails for atoms whose signature carries quanta or bias.
    fn try_from(a: Atom) -> Result<Self, Atom> {
        let plain = a.signature.modulo_quanta();
        if plain.to_signature() == a.signature {
            Ok(PlainAtom::new(a.factor, plain))
        } else {
            Err(a)
        }
    }
}

/// `antecedent -> consequent` over plain atoms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroundImplication {
    pub antecedent: PlainAtom,
    pub consequent: PlainAtom,
}

impl GroundImplication {
    pub const fn new(antecedent: PlainAtom, consequent: PlainAtom) -> Self {
        GroundImplication {
            antecedent,
            consequent,
        }
    }

    pub fn index(self) -> usize {
        self.antecedent.index() * 32 + self.consequent.index()
    }

    pub fn from_index(i: usize) -> Self {
        GroundImplication::new(PlainAtom::from_index(i / 32), PlainAtom::from_index(i % 32))
    }

    pub fn to_formula(self) -> Formula {
        Formula::imp(self.antecedent.to_formula(), self.consequent.to_formula())
    }

    /// Recognises `A -> B` with plain atoms on both sides.
    pub fn from_formula(f: &Formula) -> Option<Self> {
        match f {
            Formula::Imp(a, b) => match (a.as_ref(), b.as_ref()) {
                (Formula::Atom(a), Formula::Atom(b)) => Some(GroundImplication::new(
                    PlainAtom::try_from(*a).ok()?,
                    PlainAtom::try_from(*b).ok()?,
                )),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn is_reflexive(self) -> bool {
        self.antecedent == self.consequent
    }

    /// Table cell `(antecedent factor, consequent factor, va, vc)`.
    pub fn cell(self) -> Cell {
        Cell {
            antecedent: self.antecedent.factor,
            consequent: self.consequent.factor,
            antecedent_signature: self.antecedent.signature,
            consequent_signature: self.consequent.signature,
        }
    }
}

impl fmt::Display for GroundImplication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.antecedent, self.consequent)
    }
}

const WORDS: usize = 1024 / 64;

/// A set of ground implications over plain atoms.
///
/// Equality ignores the provenance label.
#[derive(Clone, Debug)]
pub struct InvariantSet {
    bits: [u64; WORDS],
    provenance: Option<String>,
}

impl PartialEq for InvariantSet {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits
    }
}

impl Eq for InvariantSet {}

impl std::hash::Hash for InvariantSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.bits.hash(state)
    }
}

impl Default for InvariantSet {
    fn default() -> Self {
        InvariantSet::empty()
    }
}

impl InvariantSet {
    pub fn empty() -> Self {
        InvariantSet {
            bits: [0; WORDS],
            provenance: None,
        }
    }

    /// All 1024 ground implications.
    pub fn full() -> Self {
        InvariantSet {
            bits: [u64::MAX; WORDS],
            provenance: None,
        }
    }

    pub fn with_provenance(mut self, label: impl Into<String>) -> Self {
        self.provenance = Some(label.into());
        self
    }

    pub fn provenance(&self) -> Option<&str> {
        self.provenance.as_deref()
    }

    pub fn insert(&mut self, g: GroundImplication) -> bool {
        let i = g.index();
        let fresh = !self.contains(g);
        self.bits[i / 64] |= 1 << (i % 64);
        fresh
    }

    pub fn remove(&mut self, g: GroundImplication) -> bool {
        let i = g.index();
        let present = self.contains(g);
        self.bits[i / 64] &= !(1 << (i % 64));
        present
    }

    pub fn contains(&self, g: GroundImplication) -> bool {
        let i = g.index();
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = GroundImplication> + '_ {
        (0..1024)
            .filter(|&i| self.bits[i / 64] >> (i % 64) & 1 == 1)
            .map(GroundImplication::from_index)
    }

    fn zip_with(&self, other: &InvariantSet, f: impl Fn(u64, u64) -> u64) -> InvariantSet {
        let mut bits = [0; WORDS];
        for (i, b) in bits.iter_mut().enumerate() {
            *b = f(self.bits[i], other.bits[i]);
        }
        InvariantSet {
            bits,
            provenance: None,
        }
    }

    pub fn union(&self, other: &InvariantSet) -> InvariantSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &InvariantSet) -> InvariantSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &InvariantSet) -> InvariantSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn is_subset(&self, other: &InvariantSet) -> bool {
        self.bits
            .iter()
            .zip(&other.bits)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn to_formulas(&self) -> Vec<Formula> {
        self.iter().map(GroundImplication::to_formula).collect()
    }

    pub fn to_axiom_base(&self) -> AxiomBase {
        self.iter().map(GroundImplication::to_formula).collect()
    }

    /// `A -> A` present for every plain atom.
    pub fn is_reflexively_closed(&self) -> bool {
        PlainAtom::all().all(|a| self.contains(GroundImplication::new(a, a)))
    }

    pub fn is_transitively_closed(&self) -> bool {
        self.iter().all(|ab| {
            PlainAtom::all().all(|c| {
                !self.contains(GroundImplication::new(ab.consequent, c))
                    || self.contains(GroundImplication::new(ab.antecedent, c))
            })
        })
    }
}

impl FromIterator<GroundImplication> for InvariantSet {
    fn from_iter<I: IntoIterator<Item = GroundImplication>>(iter: I) -> Self {
        let mut s = InvariantSet::empty();
        for g in iter {
            s.insert(g);
        }
        s
    }
}

/// Coordinates of one count in an [`ImplicationTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub antecedent: Factor,
    pub consequent: Factor,
    pub antecedent_signature: PlainSignature,
    pub consequent_signature: PlainSignature,
}

impl Cell {
    pub fn implication(self) -> GroundImplication {
        GroundImplication::new(
            PlainAtom::new(self.antecedent, self.antecedent_signature),
            PlainAtom::new(self.consequent, self.consequent_signature),
        )
    }
}

pub type Counts = [[[[u32; 4]; 4]; 8]; 8];

/// Failure counts indexed `[antecedent factor][consequent factor][va][vc]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImplicationTable {
    counts: Counts,
    sequence_length: usize,
}

impl ImplicationTable {
    /// A table with every cell at `sequence_length`, before any discount.
    pub fn initial(sequence_length: usize) -> Self {
        let n = u32::try_from(sequence_length).expect("sequence length fits in u32");
        ImplicationTable {
            counts: [[[[n; 4]; 4]; 8]; 8],
            sequence_length,
        }
    }

    /// Fails if any count exceeds the sequence length or the length is zero.
    pub fn from_counts(counts: Counts, sequence_length: usize) -> Option<Self> {
        let bounded = counts
            .iter()
            .flatten()
            .flatten()
            .flatten()
            .all(|&c| c as usize <= sequence_length);
        (sequence_length > 0 && bounded).then_some(ImplicationTable {
            counts,
            sequence_length,
        })
    }

    pub fn counts(&self) -> &Counts {
        &self.counts
    }

    pub fn sequence_length(&self) -> usize {
        self.sequence_length
    }

    pub fn get(&self, a: Factor, c: Factor, va: PlainSignature, vc: PlainSignature) -> u32 {
        self.counts[a.index()][c.index()][va.code()][vc.code()]
    }

    pub fn distance(&self, cell: Cell) -> u32 {
        self.get(
            cell.antecedent,
            cell.consequent,
            cell.antecedent_signature,
            cell.consequent_signature,
        )
    }

    pub fn count_of(&self, g: GroundImplication) -> u32 {
        self.distance(g.cell())
    }

    fn discount(&mut self, a: usize, c: usize, va: usize, vc: usize) {
        let cell = &mut self.counts[a][c][va][vc];
        debug_assert!(*cell > 0, "cell discounted below zero");
        *cell -= 1;
    }

    /// Zero cells as ground implications.
    pub fn zeros(&self) -> InvariantSet {
        (0..1024)
            .map(GroundImplication::from_index)
            .filter(|g| self.count_of(*g) == 0)
            .collect()
    }

    /// Cellwise combination of two tables; the length is the larger one.
    pub fn zip_with(&self, other: &ImplicationTable, f: impl Fn(u32, u32) -> u32) -> Self {
        let mut out = ImplicationTable::initial(self.sequence_length.max(other.sequence_length));
        for a in 0..8 {
            for c in 0..8 {
                for va in 0..4 {
                    for vc in 0..4 {
                        out.counts[a][c][va][vc] =
                            f(self.counts[a][c][va][vc], other.counts[a][c][va][vc]);
                    }
                }
            }
        }
        out
    }
}

/// Runs the discount algorithm over `seq`.
pub fn update(seq: &ProfileSequence) -> ImplicationTable {
    let mut table = ImplicationTable::initial(seq.len());
    for profile in seq.profiles() {
        for c in 0..8 {
            let cmodq = profile.get(Factor::ALL[c]).modulo_quanta();
            // everything implies truth
            for a in 0..8 {
                for v in 0..4 {
                    table.discount(a, c, v, cmodq.code());
                }
            }
            // falsehood implies everything, also falsehood
            for cc in cmodq.co_set() {
                for a in 0..8 {
                    let amodq = profile.get(Factor::ALL[a]).modulo_quanta();
                    for ca in amodq.co_set() {
                        table.discount(a, c, ca.code(), cc.code());
                    }
                }
            }
        }
    }
    table
}

/// Invariants of `seq`: the zero cells of [`update`].
pub fn mine(seq: &ProfileSequence) -> InvariantSet {
    update(seq).zeros()
}

/// Material implication checked at every profile by a direct double loop.
pub fn oracle_mine(seq: &ProfileSequence) -> InvariantSet {
    oracle_mine_with_mode(seq, Mode::Plain)
        .into_iter()
        .map(|(a, b)| {
            GroundImplication::new(
                PlainAtom::try_from(a).expect("plain atom"),
                PlainAtom::try_from(b).expect("plain atom"),
            )
        })
        .collect()
}

/// Material-implication invariants over the atom domain of `mode`:
/// the 32 plain atoms, or all 96 atoms with exact signature matching.
pub fn oracle_mine_with_mode(seq: &ProfileSequence, mode: Mode) -> Vec<(Atom, Atom)> {
    let atoms: Vec<Atom> = match mode {
        Mode::Plain => PlainAtom::all().map(PlainAtom::to_atom).collect(),
        Mode::Full => Factor::ALL
            .iter()
            .flat_map(|&f| {
                crate::profile::Signature::ALL
                    .iter()
                    .map(move |&s| Atom::new(f, s))
            })
            .collect(),
    };
    let mut out = Vec::new();
    for &a in &atoms {
        for &b in &atoms {
            let holds = seq
                .profiles()
                .iter()
                .all(|p| !a.true_at(p, mode) || b.true_at(p, mode));
            if holds {
                out.push((a, b));
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Class {
    /// The consequent holds at every profile.
    #[serde(rename = "vacuous-consequent")]
    VacuousConsequent,
    /// The antecedent holds at no profile.
    #[serde(rename = "vacuous-antecedent")]
    VacuousAntecedent,
    #[serde(rename = "non-vacuous")]
    NonVacuous,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MinerError {
    #[error("`{0}` is not an invariant of the sequence")]
    NotAnInvariant(GroundImplication),
    #[error("conjunction arity must be in 1..=8, got {0}")]
    Arity(usize),
}

pub fn classify(g: GroundImplication, seq: &ProfileSequence) -> Result<Class, MinerError> {
    let ps = seq.profiles();
    let holds = ps
        .iter()
        .all(|p| !g.antecedent.true_at(p) || g.consequent.true_at(p));
    if !holds {
        return Err(MinerError::NotAnInvariant(g));
    }
    Ok(if ps.iter().all(|p| g.consequent.true_at(p)) {
        Class::VacuousConsequent
    } else if !ps.iter().any(|p| g.antecedent.true_at(p)) {
        Class::VacuousAntecedent
    } else {
        Class::NonVacuous
    })
}

/// Non-vacuous invariants, not counting the reflexive `A -> A` cells.
pub fn non_vacuous_invariants(seq: &ProfileSequence) -> InvariantSet {
    mine(seq)
        .iter()
        .filter(|g| !g.is_reflexive())
        .filter(|&g| classify(g, seq) == Ok(Class::NonVacuous))
        .collect()
}

/// Atoms that non-vacuously imply others and are non-vacuously implied by
/// none, with their number of distinct consequents, highest first.
pub fn causal_factors(seq: &ProfileSequence) -> Vec<(PlainAtom, usize)> {
    let nv = non_vacuous_invariants(seq);
    let mut out_degree = [0usize; 32];
    let mut implied = [false; 32];
    for g in nv.iter() {
        out_degree[g.antecedent.index()] += 1;
        implied[g.consequent.index()] = true;
    }
    let mut ranked: Vec<(PlainAtom, usize)> = (0..32)
        .filter(|&i| out_degree[i] > 0 && !implied[i])
        .map(|i| (PlainAtom::from_index(i), out_degree[i]))
        .collect();
    // stable sort keeps factor/code order among ties
    ranked.sort_by_key(|a| std::cmp::Reverse(a.1));
    ranked
}

/// Per-atom truth masks over the profiles of a sequence.
struct TruthMasks {
    words: usize,
    masks: Vec<Vec<u64>>,
}

impl TruthMasks {
    fn new(seq: &ProfileSequence) -> Self {
        let n = seq.len();
        let words = n.div_ceil(64);
        let mut masks = vec![vec![0u64; words]; 32];
        for (i, p) in seq.profiles().iter().enumerate() {
            for f in Factor::ALL {
                let a = PlainAtom::new(f, p.plain(f));
                masks[a.index()][i / 64] |= 1 << (i % 64);
            }
        }
        TruthMasks { words, masks }
    }

    fn all_profiles(&self, n: usize) -> Vec<u64> {
        let mut v = vec![u64::MAX; self.words];
        let rem = n % 64;
        if rem != 0 {
            v[self.words - 1] = (1u64 << rem) - 1;
        }
        v
    }

    /// Profiles where every atom of `set` is true; `all` for the empty set.
    fn conj(&self, set: &[PlainAtom], all: &[u64]) -> Vec<u64> {
        let mut acc = all.to_vec();
        for a in set {
            for (w, m) in acc.iter_mut().zip(&self.masks[a.index()]) {
                *w &= m;
            }
        }
        acc
    }

    fn within(&self, mask: &[u64], atom: PlainAtom) -> bool {
        mask.iter()
            .zip(&self.masks[atom.index()])
            .all(|(m, c)| m & !c == 0)
    }
}

fn is_empty_mask(m: &[u64]) -> bool {
    m.iter().all(|&w| w == 0)
}

/// `A1 & ... & An -> A'` over plain atoms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ConjunctiveInvariant {
    pub antecedent: BTreeSet<PlainAtom>,
    pub consequent: PlainAtom,
}

impl ConjunctiveInvariant {
    pub fn to_formula(&self) -> Formula {
        let conj = Formula::conjunction(self.antecedent.iter().map(|a| a.to_formula()))
            .unwrap_or_else(Formula::top);
        Formula::imp(conj, self.consequent.to_formula())
    }
}

impl fmt::Display for ConjunctiveInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.antecedent.iter().map(|a| a.to_string()).collect();
        write!(f, "{} -> {}", parts.join(" & "), self.consequent)
    }
}

/// Calls `visit` on every antecedent set with at most one atom per factor
/// and between 1 and `max_arity` atoms, drawn from `allowed`.
fn for_each_antecedent(
    allowed: &[PlainAtom],
    max_arity: usize,
    visit: &mut impl FnMut(&[PlainAtom]),
) {
    fn go(
        allowed: &[PlainAtom],
        from: usize,
        max_arity: usize,
        current: &mut Vec<PlainAtom>,
        visit: &mut impl FnMut(&[PlainAtom]),
    ) {
        for i in from..allowed.len() {
            let a = allowed[i];
            if current.iter().any(|b| b.factor == a.factor) {
                continue;
            }
            current.push(a);
            visit(current);
            if current.len() < max_arity {
                go(allowed, i + 1, max_arity, current, visit);
            }
            current.pop();
        }
    }
    go(allowed, 0, max_arity, &mut Vec::new(), visit);
}

fn check_arity(max_arity: usize) -> Result<(), MinerError> {
    if (1..=8).contains(&max_arity) {
        Ok(())
    } else {
        Err(MinerError::Arity(max_arity))
    }
}

/// Minimal jointly sufficient conjunctions for each consequent (or only for
/// `target`). Sets containing the consequent and sets never jointly true in
/// the sequence are left out.
pub fn mine_conjunctive(
    seq: &ProfileSequence,
    max_arity: usize,
    target: Option<PlainAtom>,
) -> Result<Vec<ConjunctiveInvariant>, MinerError> {
    check_arity(max_arity)?;
    let tm = TruthMasks::new(seq);
    let all = tm.all_profiles(seq.len());
    let atoms: Vec<PlainAtom> = PlainAtom::all().collect();
    let consequents: Vec<PlainAtom> = match target {
        Some(t) => vec![t],
        None => atoms.clone(),
    };
    let mut out = Vec::new();
    for c in consequents {
        if tm.within(&all, c) {
            // the empty antecedent already suffices
            continue;
        }
        let mut scratch = Vec::with_capacity(8);
        for_each_antecedent(&atoms, max_arity, &mut |set| {
            if set.contains(&c) {
                return;
            }
            let joint = tm.conj(set, &all);
            if is_empty_mask(&joint) || !tm.within(&joint, c) {
                return;
            }
            let minimal = (0..set.len()).all(|skip| {
                scratch.clear();
                scratch.extend(set.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, a)| *a));
                !tm.within(&tm.conj(&scratch, &all), c)
            });
            if minimal {
                out.push(ConjunctiveInvariant {
                    antecedent: set.iter().copied().collect(),
                    consequent: c,
                });
            }
        })
    }
    out.sort();
    Ok(out)
}

/// `atom <-> A1 & ... & An`: the conditions are jointly sufficient for and
/// individually necessary for `atom`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Characterisation {
    pub atom: PlainAtom,
    pub conditions: BTreeSet<PlainAtom>,
}

impl Characterisation {
    pub fn sufficiency(&self) -> ConjunctiveInvariant {
        ConjunctiveInvariant {
            antecedent: self.conditions.clone(),
            consequent: self.atom,
        }
    }

    pub fn biconditional(&self) -> Formula {
        let conj = Formula::conjunction(self.conditions.iter().map(|a| a.to_formula()))
            .expect("nonempty conditions");
        Formula::iff(conj, self.atom.to_formula())
    }
}

pub fn equivalence_characterisations(
    seq: &ProfileSequence,
    max_arity: usize,
) -> Result<Vec<Characterisation>, MinerError> {
    check_arity(max_arity)?;
    let invariants = mine(seq);
    let tm = TruthMasks::new(seq);
    let all = tm.all_profiles(seq.len());
    let mut out = Vec::new();
    for target in PlainAtom::all() {
        let necessary: Vec<PlainAtom> = PlainAtom::all()
            .filter(|&x| invariants.contains(GroundImplication::new(target, x)))
            .collect();
        for_each_antecedent(&necessary, max_arity, &mut |set| {
            if tm.within(&tm.conj(set, &all), target) {
                out.push(Characterisation {
                    atom: target,
                    conditions: set.iter().copied().collect(),
                });
            }
        });
    }
    out.sort();
    Ok(out)
}

/// One entry of the invariant-set JSON form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub antecedent: PlainAtom,
    pub consequent: PlainAtom,
    pub count: u32,
    pub class: Class,
}

/// Records for every invariant of `set`, classified against `seq`.
pub fn invariant_records(
    set: &InvariantSet,
    seq: &ProfileSequence,
) -> Result<Vec<InvariantRecord>, MinerError> {
    let table = update(seq);
    set.iter()
        .map(|g| {
            Ok(InvariantRecord {
                antecedent: g.antecedent,
                consequent: g.consequent,
                count: table.count_of(g),
                class: classify(g, seq)?,
            })
        })
        .collect()
}

pub fn invariants_to_json(records: &[InvariantRecord]) -> String {
    serde_json::to_string_pretty(records).expect("records serialize")
}

pub fn parse_invariants_json(text: &str) -> Result<Vec<InvariantRecord>, serde_json::Error> {
    serde_json::from_str(text)
}
