//! Counter-based random streams.
//!
//! Every random quantity in an experiment is drawn from a child stream
//! addressed by `(master seed, repetition, purpose)`. The master seed keys a
//! ChaCha20 generator and the pair `(repetition, purpose)` selects one of its
//! 2^64 independent streams, so a repetition can be replayed on its own, on
//! any thread, in any order.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub type Stream = ChaCha20Rng;

/// What a child stream is used for. Distinct purposes never share output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StreamTag {
    Design,
    Noise,
    /// Free slot for callers that need additional streams.
    Auxiliary(u8),
}

impl StreamTag {
    fn code(self) -> u64 {
        match self {
            StreamTag::Design => 0,
            StreamTag::Noise => 1,
            StreamTag::Auxiliary(k) => 16 + k as u64,
        }
    }
}

const TAG_BITS: u32 = 16;

/// Stream for `tag` in repetition `rep` under `master_seed`.
///
/// # Panics
///
/// If `rep >= 2^48`.
pub fn child_stream(master_seed: u64, rep: u64, tag: StreamTag) -> Stream {
    assert!(rep < 1 << (64 - TAG_BITS), "repetition index out of range");
    let mut rng = ChaCha20Rng::seed_from_u64(master_seed);
    rng.set_stream((rep << TAG_BITS) | tag.code());
    rng
}
