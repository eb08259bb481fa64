//! Polarities between formula sets and sequence sets, relative to a named
//! finite corpus.
//!
//! `▷Φ` is the set of corpus sequences whose mined base derives every
//! formula of `Φ`; `◁𝒫` is the theory of formulas derivable from the mined
//! base of every member of `𝒫`. A theory is infinite, so it is represented
//! by the members' mined bases and decided through the prover.
//!
//! Inclusion of theories is decided exactly: `◁𝒫 ⊆ ◁𝒫′` iff every `P′`
//! in `𝒫′` has some `P` in `𝒫` with `I(P) ⊆ I(P′)`. When that fails, the
//! disjunction of one implication from each `I(P) \ I(P′)` separates the
//! two theories; the disjunction property and the closure of mined sets
//! under ground consequence keep it out of `Cn(I(P′))`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::logic::{Formula, Prover, ProverError, DEFAULT_BUDGET};
use crate::miner::{mine, InvariantSet};
use crate::profile::{parse_sequence_any, ParseError, ProfileSequence};

/// A mined sequence with its prover.
#[derive(Clone)]
struct Entry {
    sequence: ProfileSequence,
    invariants: InvariantSet,
    prover: Prover,
}

impl Entry {
    fn new(sequence: ProfileSequence, budget: u64) -> Self {
        let invariants = mine(&sequence);
        let prover = Prover::new(&invariants.to_axiom_base()).with_budget(budget);
        Entry {
            sequence,
            invariants,
            prover,
        }
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed manifest: {0}")]
    Manifest(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Sequence { path: PathBuf, source: ParseError },
    #[error("unknown sequence name `{0}`")]
    UnknownName(String),
}

/// A named finite set of sequences, each mined once on insertion.
#[derive(Clone)]
pub struct Corpus {
    entries: BTreeMap<String, Entry>,
    budget: u64,
}

impl fmt::Debug for Corpus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Corpus")
            .field("names", &self.entries.keys().collect::<Vec<_>>())
            .field("budget", &self.budget)
            .finish()
    }
}

impl Default for Corpus {
    fn default() -> Self {
        Corpus::new()
    }
}

impl Corpus {
    pub fn new() -> Self {
        Corpus::with_budget(DEFAULT_BUDGET)
    }

    pub fn with_budget(budget: u64) -> Self {
        Corpus {
            entries: BTreeMap::new(),
            budget,
        }
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn from_sequences<S: Into<String>>(items: impl IntoIterator<Item = (S, ProfileSequence)>) -> Self {
        let mut c = Corpus::new();
        for (name, seq) in items {
            c.insert(name, seq);
        }
        c
    }

    /// Replaces any previous entry of the same name.
    pub fn insert(&mut self, name: impl Into<String>, sequence: ProfileSequence) {
        self.entries
            .insert(name.into(), Entry::new(sequence, self.budget));
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn names(&self) -> BTreeSet<String> {
        self.entries.keys().cloned().collect()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.contains_key(name)
    }

    pub fn sequence(&self, name: &str) -> Option<&ProfileSequence> {
        self.entries.get(name).map(|e| &e.sequence)
    }

    pub fn invariants(&self, name: &str) -> Option<&InvariantSet> {
        self.entries.get(name).map(|e| &e.invariants)
    }

    pub fn prover(&self, name: &str) -> Option<&Prover> {
        self.entries.get(name).map(|e| &e.prover)
    }

    fn entry(&self, name: &str) -> Result<&Entry, CorpusError> {
        self.entries
            .get(name)
            .ok_or_else(|| CorpusError::UnknownName(name.to_string()))
    }

    /// Loads a manifest mapping names to sequence files; relative paths
    /// are resolved against the manifest's directory.
    pub fn load_manifest(path: &Path) -> Result<Corpus, CorpusError> {
        Corpus::load_manifest_with_budget(path, DEFAULT_BUDGET)
    }

    pub fn load_manifest_with_budget(path: &Path, budget: u64) -> Result<Corpus, CorpusError> {
        let text = fs::read_to_string(path).map_err(|source| CorpusError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let manifest = parse_manifest(&text)?;
        let dir = path.parent().unwrap_or(Path::new(""));
        let mut corpus = Corpus::with_budget(budget);
        for (name, file) in manifest {
            let file = dir.join(file);
            let text = fs::read_to_string(&file).map_err(|source| CorpusError::Io {
                path: file.clone(),
                source,
            })?;
            let seq = parse_sequence_any(&text).map_err(|source| CorpusError::Sequence {
                path: file.clone(),
                source,
            })?;
            corpus.insert(name, seq);
        }
        Ok(corpus)
    }
}

/// Parses a manifest: a JSON object mapping names to file paths.
pub fn parse_manifest(text: &str) -> Result<BTreeMap<String, PathBuf>, serde_json::Error> {
    serde_json::from_str(text)
}

/// `▷Φ`: names of corpus sequences whose mined base derives all of `phi`.
pub fn right_polarity(phi: &[Formula], c: &Corpus) -> Result<BTreeSet<String>, ProverError> {
    let mut out = BTreeSet::new();
    for (name, e) in &c.entries {
        if all_derive(&e.prover, phi)? {
            out.insert(name.clone());
        }
    }
    Ok(out)
}

fn all_derive(p: &Prover, phi: &[Formula]) -> Result<bool, ProverError> {
    for f in phi {
        if !p.derives(f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A finitely represented theory `◁𝒫`.
#[derive(Clone)]
pub struct TheoryHandle {
    members: BTreeSet<String>,
    ground_base: InvariantSet,
    /// Mined bases of the distinct member sequences.
    bases: Vec<InvariantSet>,
    provers: Vec<Prover>,
}

impl TheoryHandle {
    /// The theory of an arbitrary finite set of sequences.
    pub fn of_sequences<'a>(seqs: impl IntoIterator<Item = &'a ProfileSequence>, budget: u64) -> Self {
        let distinct: BTreeSet<&ProfileSequence> = seqs.into_iter().collect();
        let entries: Vec<Entry> = distinct
            .into_iter()
            .map(|s| Entry::new(s.clone(), budget))
            .collect();
        TheoryHandle::from_entries(BTreeSet::new(), entries.iter())
    }

    fn from_entries<'a>(members: BTreeSet<String>, entries: impl Iterator<Item = &'a Entry>) -> Self {
        let mut bases: Vec<InvariantSet> = Vec::new();
        let mut provers = Vec::new();
        for e in entries {
            // equal mined sets give equal theories
            if !bases.contains(&e.invariants) {
                bases.push(e.invariants.clone());
                provers.push(e.prover.clone());
            }
        }
        let ground_base = bases
            .iter()
            .fold(InvariantSet::full(), |acc, b| acc.intersection(b));
        TheoryHandle {
            members,
            ground_base,
            bases,
            provers,
        }
    }

    /// Names of the selected corpus entries; empty for handles built
    /// directly from sequences.
    pub fn members(&self) -> &BTreeSet<String> {
        &self.members
    }

    /// Ground implications common to every member; all 1024 for the top
    /// theory.
    pub fn ground_base(&self) -> &InvariantSet {
        &self.ground_base
    }

    /// The theory of the empty selection, which contains every formula.
    pub fn is_top(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn contains(&self, phi: &Formula) -> Result<bool, ProverError> {
        for p in &self.provers {
            if !p.derives(phi)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A formula of `self` outside `other`, or `None` when `self ⊆ other`.
    pub fn separating_formula(&self, other: &TheoryHandle) -> Option<Formula> {
        for target in &other.bases {
            if self.bases.iter().any(|b| b.is_subset(target)) {
                continue;
            }
            let picks = self.bases.iter().map(|b| {
                b.difference(target)
                    .iter()
                    .next()
                    .expect("non-subset has a difference")
                    .to_formula()
            });
            return Some(Formula::disjunction(picks).unwrap_or_else(Formula::bottom));
        }
        None
    }

    pub fn is_subtheory_of(&self, other: &TheoryHandle) -> bool {
        self.separating_formula(other).is_none()
    }

    pub fn same_theory(&self, other: &TheoryHandle) -> bool {
        self.is_subtheory_of(other) && other.is_subtheory_of(self)
    }

    /// `▷` of this theory: corpus entries whose mined base derives every
    /// formula of it.
    pub fn right_polarity(&self, c: &Corpus) -> BTreeSet<String> {
        c.entries
            .iter()
            .filter(|(_, e)| self.bases.iter().any(|b| b.is_subset(&e.invariants)))
            .map(|(n, _)| n.clone())
            .collect()
    }
}

/// `◁𝒫` for a selection of corpus names.
pub fn left_polarity(names: &BTreeSet<String>, c: &Corpus) -> Result<TheoryHandle, CorpusError> {
    let entries = names
        .iter()
        .map(|n| c.entry(n))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TheoryHandle::from_entries(names.clone(), entries.into_iter()))
}

#[derive(Debug, Error)]
pub enum GaloisError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Prover(#[from] ProverError),
}

/// Checks `names ⊆ ▷Φ  ⟺  Φ ⊆ ◁names`. It should always hold; the
/// function reports what was observed.
pub fn adjunction_check(
    phi: &[Formula],
    names: &BTreeSet<String>,
    c: &Corpus,
) -> Result<bool, GaloisError> {
    let lhs = names.is_subset(&right_polarity(phi, c)?);
    let theory = left_polarity(names, c)?;
    let mut rhs = true;
    for f in phi {
        if !theory.contains(f)? {
            rhs = false;
            break;
        }
    }
    Ok(lhs == rhs)
}

pub fn kernel_equiv_formulas(phi: &[Formula], psi: &[Formula], c: &Corpus) -> Result<bool, ProverError> {
    Ok(right_polarity(phi, c)? == right_polarity(psi, c)?)
}

/// Whether two selections have the same theory.
pub fn kernel_equiv_sequences(
    a: &BTreeSet<String>,
    b: &BTreeSet<String>,
    c: &Corpus,
) -> Result<bool, CorpusError> {
    Ok(left_polarity(a, c)?.same_theory(&left_polarity(b, c)?))
}

/// `[Φ] ⊔ [Φ′] = [Φ ∪ Φ′]`, returned as a sorted duplicate-free list.
pub fn quotient_join(phi: &[Formula], psi: &[Formula]) -> Vec<Formula> {
    phi.iter()
        .chain(psi)
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Representative of the top class `[L(𝔸)]`.
pub fn top_class() -> Vec<Formula> {
    vec![Formula::bottom()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;
    use crate::profile::{parse_sequence, Factor, Profile, Signature};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn foreground() -> ProfileSequence {
        parse_sequence(include_str!("../tests/fixtures/foreground.txt")).unwrap()
    }

    fn names(xs: &[&str]) -> BTreeSet<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn corpus() -> Corpus {
        let norm = ProfileSequence::single(Profile::NORM);
        let other = ProfileSequence::single(Profile::NORM.with(Factor::E, Signature::Plus));
        Corpus::from_sequences([
            ("fg", foreground()),
            ("fgr", foreground().reversed()),
            ("norm", norm),
            ("other", other),
        ])
    }

    #[test]
    fn right_polarity_examples() {
        let c = corpus();
        assert_eq!(right_polarity(&[], &c).unwrap(), c.names());
        assert!(right_polarity(&[f("s0 -> kpm")], &c).unwrap().contains("fg"));
        assert!(right_polarity(&[Formula::bottom()], &c).unwrap().is_empty());
    }

    #[test]
    fn left_polarity_examples() {
        let c = corpus();
        let t = left_polarity(&names(&["fg"]), &c).unwrap();
        assert_eq!(t.ground_base(), &mine(&foreground()));
        assert!(t.contains(&f("d0 -> m+")).unwrap());
        assert!(t.contains(&f("(e+ | s0 | ppm) -> kpm")).unwrap());
        let top = left_polarity(&BTreeSet::new(), &c).unwrap();
        assert!(top.is_top());
        assert!(top.contains(&Formula::bottom()).unwrap());
        assert!(left_polarity(&names(&["missing"]), &c).is_err());
    }

    #[test]
    fn theory_inclusion_with_witness() {
        let c = corpus();
        let both = left_polarity(&names(&["norm", "other"]), &c).unwrap();
        let norm = left_polarity(&names(&["norm"]), &c).unwrap();
        assert!(both.is_subtheory_of(&norm));
        let w = norm.separating_formula(&both).expect("strictly larger");
        assert!(norm.contains(&w).unwrap());
        assert!(!both.contains(&w).unwrap());

        let top = left_polarity(&BTreeSet::new(), &c).unwrap();
        assert!(norm.is_subtheory_of(&top));
        assert_eq!(top.separating_formula(&norm), Some(Formula::bottom()));
    }

    #[test]
    fn sequence_kernels() {
        let c = corpus();
        assert!(kernel_equiv_sequences(&names(&["fg"]), &names(&["fgr"]), &c).unwrap());
        assert!(!kernel_equiv_sequences(&names(&["fg"]), &names(&["norm"]), &c).unwrap());
    }

    #[test]
    fn formula_kernels() {
        let c = corpus();
        let conj = [Formula::and(f("s0 -> kpm"), f("d0 -> m+"))];
        let split = [f("s0 -> kpm"), f("d0 -> m+")];
        assert!(kernel_equiv_formulas(&conj, &split, &c).unwrap());
        let contradiction = [f("h+"), Formula::not(f("h+"))];
        assert!(kernel_equiv_formulas(&[Formula::bottom()], &contradiction, &c).unwrap());
    }

    #[test]
    fn adjunction_small() {
        let c = corpus();
        assert!(adjunction_check(&[], &names(&["fg"]), &c).unwrap());
        assert!(adjunction_check(&[f("s0 -> kpm")], &names(&["fg"]), &c).unwrap());
        assert!(adjunction_check(&[f("s0 -> kpm")], &names(&["fg", "norm"]), &c).unwrap());
    }

    #[test]
    fn join_is_union() {
        let a = [f("h+ -> s+")];
        assert_eq!(quotient_join(&a, &[]), a.to_vec());
        assert_eq!(quotient_join(&a, &a), a.to_vec());
    }

    #[test]
    fn manifest_parsing() {
        let m = parse_manifest(r#"{"a": "x.txt", "b": "dir/y.json"}"#).unwrap();
        assert_eq!(m.len(), 2);
        assert!(parse_manifest("[1]").is_err());
    }
}
