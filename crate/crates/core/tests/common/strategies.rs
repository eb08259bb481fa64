use proptest::prelude::*;

use spp_core::miner::GroundImplication;
use spp_core::{PlainAtom, PlainSignature, Profile, ProfileSequence, Signature};

pub fn signature() -> impl Strategy<Value = Signature> {
    prop::sample::select(Signature::ALL.to_vec())
}

pub fn profile() -> impl Strategy<Value = Profile> {
    prop::array::uniform8(signature()).prop_map(Profile::new)
}

pub fn sequence(min: usize, max: usize) -> impl Strategy<Value = ProfileSequence> {
    prop::collection::vec(profile(), min..=max).prop_map(|v| ProfileSequence::new(v).unwrap())
}

/// Sequences over at most two plain values per factor, so that many cells
/// are invariant without being vacuous.
pub fn structured_sequence(min: usize, max: usize) -> impl Strategy<Value = ProfileSequence> {
    let pools = prop::array::uniform8((0usize..4, 0usize..4));
    (pools, prop::collection::vec(prop::array::uniform8(any::<bool>()), min..=max)).prop_map(
        |(pools, rows)| {
            let profiles = rows
                .into_iter()
                .map(|pick| {
                    let mut sigs = [Signature::Zero; 8];
                    for i in 0..8 {
                        let code = if pick[i] { pools[i].1 } else { pools[i].0 };
                        sigs[i] = PlainSignature::from_code(code).unwrap().to_signature();
                    }
                    Profile::new(sigs)
                })
                .collect();
            ProfileSequence::new(profiles).unwrap()
        },
    )
}

pub fn plain_atom() -> impl Strategy<Value = PlainAtom> {
    (0usize..32).prop_map(PlainAtom::from_index)
}

pub fn ground() -> impl Strategy<Value = GroundImplication> {
    (0usize..1024).prop_map(GroundImplication::from_index)
}
