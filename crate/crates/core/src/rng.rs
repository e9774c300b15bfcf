//! Seeded random streams for the simulation harnesses.
//!
//! Every trial draws from its own ChaCha8 stream: the key is expanded from
//! the run seed with `SeedableRng::seed_from_u64` (PCG32-based, portable) and
//! the 64-bit stream id selects the trial. Results therefore depend only on
//! `(seed, stream)` and are identical across platforms and schedules.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const ALGORITHM: &str =
    "ChaCha8 (rand_chacha 0.9), key = seed_from_u64(seed), stream = trial id";

pub type TrialRng = ChaCha8Rng;

pub fn trial_rng(seed: u64, stream: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
