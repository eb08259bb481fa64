#![allow(dead_code)]

pub mod kripke;
pub mod strategies;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spp_core::logic::parse_formula;
use spp_core::miner::GroundImplication;
use spp_core::profile::parse_sequence;
use spp_core::{Factor, Formula, PlainAtom, PlainSignature, Profile, ProfileSequence, Signature};

pub fn foreground() -> ProfileSequence {
    parse_sequence(include_str!("../fixtures/foreground.txt")).unwrap()
}

pub fn f(s: &str) -> Formula {
    parse_formula(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_profile(rng: &mut impl Rng) -> Profile {
    let mut sigs = [Signature::Zero; 8];
    for s in &mut sigs {
        *s = *Signature::ALL.choose(rng).unwrap();
    }
    Profile::new(sigs)
}

/// Uniform over the 12 signatures per factor.
pub fn random_sequence(rng: &mut impl Rng, min_len: usize, max_len: usize) -> ProfileSequence {
    let n = rng.gen_range(min_len..=max_len);
    ProfileSequence::new((0..n).map(|_| random_profile(rng)).collect()).unwrap()
}

/// Each factor draws from a per-sequence pool of at most two plain values,
/// which keeps plenty of non-vacuous invariants around.
pub fn random_structured_sequence(rng: &mut impl Rng, min_len: usize, max_len: usize) -> ProfileSequence {
    let pools: Vec<Vec<PlainSignature>> = (0..8)
        .map(|_| {
            let k = rng.gen_range(1..=2);
            PlainSignature::ALL.choose_multiple(rng, k).copied().collect()
        })
        .collect();
    let n = rng.gen_range(min_len..=max_len);
    let profiles = (0..n)
        .map(|_| {
            let mut sigs = [Signature::Zero; 8];
            for (i, s) in sigs.iter_mut().enumerate() {
                *s = pools[i].choose(rng).unwrap().to_signature();
            }
            Profile::new(sigs)
        })
        .collect();
    ProfileSequence::new(profiles).unwrap()
}

pub fn random_plain_atom(rng: &mut impl Rng) -> PlainAtom {
    PlainAtom::from_index(rng.gen_range(0..32))
}

pub fn random_ground(rng: &mut impl Rng) -> GroundImplication {
    GroundImplication::new(random_plain_atom(rng), random_plain_atom(rng))
}

/// Random formula over the given atoms, depth at most `depth`.
pub fn random_formula(rng: &mut impl Rng, atoms: &[Formula], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return atoms.choose(rng).unwrap().clone();
    }
    let sub = |rng: &mut _| random_formula(rng, atoms, depth - 1);
    match rng.gen_range(0..4) {
        0 => Formula::not(sub(rng)),
        1 => Formula::and(sub(rng), sub(rng)),
        2 => Formula::or(sub(rng), sub(rng)),
        _ => Formula::imp(sub(rng), sub(rng)),
    }
}

/// A handful of plain atoms, mixing ones that do and do not occur in `seq`.
pub fn atom_pool(rng: &mut impl Rng, seq: &ProfileSequence, n: usize) -> Vec<Formula> {
    (0..n)
        .map(|i| {
            if i % 2 == 0 {
                let p = seq.profiles().choose(rng).unwrap();
                let factor = Factor::ALL[rng.gen_range(0..8)];
                PlainAtom::new(factor, p.plain(factor)).to_formula()
            } else {
                random_plain_atom(rng).to_formula()
            }
        })
        .collect()
}
