//! Seeded random streams.
//!
//! Every random consumer draws from ChaCha8 keyed by `seed` (expanded to a
//! 256-bit key with `rand_core`'s `seed_from_u64`, a PCG32 expansion) on the
//! 64-bit stream id `stream`. Streams with different ids are independent, so
//! restart `k` of a search only ever sees stream `k` of its seed, whatever
//! thread runs it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

pub fn stream_rng(seed: u64, stream: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u64> = (0..4)
            .map({
                let mut r = stream_rng(7, 3);
                move |_| r.random()
            })
            .collect();
        let b: Vec<u64> = (0..4)
            .map({
                let mut r = stream_rng(7, 3);
                move |_| r.random()
            })
            .collect();
        let c: u64 = stream_rng(7, 4).random();
        assert_eq!(a, b);
        assert_ne!(a[0], c);
    }
}
