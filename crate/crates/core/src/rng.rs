//! Seeded random source shared by planners and the optimizer.
//!
//! All randomness flows through ChaCha8 (`rand_chacha::ChaCha8Rng`), seeded
//! with `seed_from_u64`. ChaCha output is specified independently of
//! platform and word size, so a seed reproduces bit-identical runs anywhere.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type PlannerRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> PlannerRng {
    ChaCha8Rng::seed_from_u64(seed)
}
