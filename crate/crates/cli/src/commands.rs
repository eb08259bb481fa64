use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use spp_core::categories::{parse_transformation, preserves, preserves_theory, SequenceSet};
use spp_core::diagram::{render, superpose};
use spp_core::galois::{
    kernel_equiv_formulas, kernel_equiv_sequences, left_polarity, right_polarity, Corpus,
    CorpusError,
};
use spp_core::logic::{parse_formula, Prover};
use spp_core::miner::{
    invariant_records, invariants_to_json, mine, mine_conjunctive, non_vacuous_invariants,
    oracle_mine, oracle_mine_with_mode, update,
};
use spp_core::profile::parse_sequence_any;
use spp_core::{AxiomBase, Formula, Mode, Profile, ProfileSequence, ProverError, Signature};

use crate::{Cli, Command, Direction, KernelArgs, ModeArg, Which};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Budget(#[from] ProverError),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Budget(_) => 4,
        }
    }
}

impl From<CorpusError> for CliError {
    fn from(e: CorpusError) -> Self {
        match e {
            CorpusError::Io { path, source } => CliError::Io { path, source },
            other => CliError::Parse(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_sequence(path: &Path) -> Result<ProfileSequence, CliError> {
    parse_sequence_any(&read(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn formula(text: &str) -> Result<Formula, CliError> {
    parse_formula(text).map_err(|e| CliError::Parse(format!("`{text}`: {e}")))
}

/// One formula per non-blank line; `#` starts a comment.
fn load_formulas(path: &Path) -> Result<Vec<Formula>, CliError> {
    read(path)?
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| formula(l).map_err(|e| CliError::Parse(format!("{}: {e}", path.display()))))
        .collect()
}

fn names(list: &str) -> BTreeSet<String> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes")
}

pub fn run(cli: &Cli) -> Result<u8, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Mine {
            input,
            invariants,
            conjunctive,
        } => {
            if g.mode == ModeArg::Full {
                return Err(CliError::Parse(
                    "implication tables are defined over plain signatures; use `oracle --mode full`".into(),
                ));
            }
            let seq = load_sequence(input)?;
            let out = match (invariants, conjunctive) {
                (Some(which), _) => {
                    let set = match which {
                        Which::All => mine(&seq),
                        Which::NonVacuous => non_vacuous_invariants(&seq),
                    };
                    let records = invariant_records(&set, &seq).expect("mined sets are invariants");
                    invariants_to_json(&records)
                }
                (None, Some(arity)) => {
                    let found = mine_conjunctive(&seq, *arity, None)
                        .map_err(|e| CliError::Parse(e.to_string()))?;
                    let lines: Vec<String> = found.iter().map(|c| c.to_string()).collect();
                    json(&lines)
                }
                (None, None) => render(&update(&seq), g.format.into()),
            };
            print!("{}", with_newline(out));
            Ok(0)
        }
        Command::Derive {
            formula: text,
            from,
            axioms,
        } => {
            let goal = formula(text)?;
            let mut base = AxiomBase::new();
            if let Some(path) = from {
                base.extend(mine(&load_sequence(path)?).to_formulas());
            }
            if let Some(path) = axioms {
                base.extend(load_formulas(path)?);
            }
            let prover = Prover::new(&base).with_budget(g.budget);
            if prover.derives(&goal)? {
                println!("derivable: {goal}");
                Ok(0)
            } else {
                println!("not derivable: {goal}");
                Ok(1)
            }
        }
        Command::Couple { a, b, op } => {
            let (ta, tb) = (update(&load_sequence(a)?), update(&load_sequence(b)?));
            print!("{}", with_newline(render(&superpose(&ta, &tb, (*op).into()), g.format.into())));
            Ok(0)
        }
        Command::Polarity {
            manifest,
            direction,
        } => {
            let c = load_corpus(manifest, g.budget)?;
            match direction {
                Direction::Right { formulas } => {
                    let phi = formulas.iter().map(|f| formula(f)).collect::<Result<Vec<_>, _>>()?;
                    println!("{}", json(&right_polarity(&phi, &c)?));
                }
                Direction::Left { names: selected } => {
                    let selected: BTreeSet<String> = selected.iter().flat_map(|s| names(s)).collect();
                    let theory = left_polarity(&selected, &c)?;
                    let base: Vec<String> = theory.ground_base().iter().map(|g| g.to_string()).collect();
                    #[derive(Serialize)]
                    struct Left<'a> {
                        members: &'a BTreeSet<String>,
                        ground_base: Vec<String>,
                    }
                    println!(
                        "{}",
                        json(&Left {
                            members: theory.members(),
                            ground_base: base,
                        })
                    );
                }
            }
            Ok(0)
        }
        Command::Kernel { manifest, what } => {
            let c = load_corpus(manifest, g.budget)?;
            let same = match what {
                KernelArgs::Formulas { a, b } => {
                    kernel_equiv_formulas(&load_formulas(a)?, &load_formulas(b)?, &c)?
                }
                KernelArgs::Names { a, b } => kernel_equiv_sequences(&names(a), &names(b), &c)?,
            };
            println!("{}", if same { "equivalent" } else { "not equivalent" });
            Ok(if same { 0 } else { 1 })
        }
        Command::CategoryCheck {
            manifest,
            transformations,
            formulas,
            tests,
        } => {
            let c = load_corpus(manifest, g.budget)?;
            let phi = formulas.as_deref().map(load_formulas).transpose()?;
            let mut families: Vec<SequenceSet> = Vec::new();
            for t in tests {
                let mut set = SequenceSet::new();
                for n in names(t) {
                    let seq = c.sequence(&n).ok_or(CorpusError::UnknownName(n.clone()))?;
                    set.insert(seq.clone());
                }
                families.push(set);
            }
            let mut report = BTreeMap::new();
            let mut all = true;
            for path in transformations {
                let t = parse_transformation(&read(path)?)
                    .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
                let verdict = match &phi {
                    Some(phi) => preserves(&t, phi, &families, g.budget)?,
                    None => preserves_theory(&t, &families, g.budget),
                };
                all &= verdict.is_preserved();
                let name = if t.name.is_empty() {
                    path.display().to_string()
                } else {
                    t.name.clone()
                };
                report.insert(name, verdict);
            }
            println!("{}", json(&report));
            Ok(if all { 0 } else { 1 })
        }
        Command::Oracle { inputs } => {
            let mut code = 0;
            for path in inputs {
                let seq = load_sequence(path)?;
                match Mode::from(g.mode) {
                    Mode::Plain => {
                        let (m, o) = (mine(&seq), oracle_mine(&seq));
                        if m == o {
                            println!("{}: agree ({} invariants)", path.display(), m.len());
                        } else {
                            code = 1;
                            println!(
                                "{}: mismatch ({} only mined, {} only oracle)",
                                path.display(),
                                m.difference(&o).len(),
                                o.difference(&m).len()
                            );
                        }
                    }
                    Mode::Full => {
                        let pairs = oracle_mine_with_mode(&seq, Mode::Full);
                        println!("{}: {} invariants over exact signatures", path.display(), pairs.len());
                    }
                }
            }
            Ok(code)
        }
        Command::Gen { count, length, out } => {
            if *count == 0 || *length == 0 {
                return Err(CliError::Parse("count and length must be at least 1".into()));
            }
            fs::create_dir_all(out).map_err(|source| CliError::Io {
                path: out.clone(),
                source,
            })?;
            let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
            let width = count.to_string().len().max(3);
            for i in 0..*count {
                let profiles = (0..*length)
                    .map(|_| {
                        let mut sigs = [Signature::Zero; 8];
                        for s in &mut sigs {
                            *s = *Signature::ALL.choose(&mut rng).expect("nonempty");
                        }
                        Profile::new(sigs)
                    })
                    .collect();
                let seq = ProfileSequence::new(profiles).expect("length at least 1");
                let path = out.join(format!("seq-{i:0width$}.txt"));
                fs::write(&path, seq.to_text()).map_err(|source| CliError::Io { path, source })?;
            }
            Ok(0)
        }
    }
}

fn load_corpus(manifest: &Path, budget: u64) -> Result<Corpus, CliError> {
    Ok(Corpus::load_manifest_with_budget(manifest, budget)?)
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}
