//! Named random streams derived from a single scenario seed.
//!
//! Every stochastic subsystem draws from its own [`ChaCha8Rng`] so that
//! adding draws to one subsystem never shifts another.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stream {
    Traffic,
    Mobility(u32),
    MapGen,
}

impl Stream {
    fn tag(self) -> u64 {
        match self {
            Stream::Traffic => 0x7472_6166_0000_0000,
            Stream::MapGen => 0x6d61_7067_0000_0000,
            Stream::Mobility(n) => 0x6d6f_6269_0000_0000 | u64::from(n),
        }
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Deterministic generator for `stream` under `seed`.
pub fn stream(seed: u64, stream: Stream) -> ChaCha8Rng {
    let s = splitmix64(splitmix64(seed) ^ stream.tag());
    ChaCha8Rng::seed_from_u64(s)
}
