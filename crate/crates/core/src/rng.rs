//! Reproducible random streams.
//!
//! Every parallel unit of work (a sample, a trial) draws from its own ChaCha
//! stream keyed by the run seed and the unit index, so results do not depend
//! on scheduling or thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
