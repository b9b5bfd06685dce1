//! Seeded, splittable random stream used by every stochastic operation.
//!
//! The generator is xoshiro256++ seeded through the splitmix64 finalizer.
//! Streams are single-owner; parallel work derives an independent child
//! stream per trial index with [`RandomStream::child`], so results are
//! bit-reproducible regardless of how trials are scheduled.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone)]
pub struct RandomStream {
    key: u64,
    state: [u64; 4],
}

impl RandomStream {
    pub fn new(seed: u64) -> Self {
        // splitmix64 expansion; guarantees a nonzero xoshiro state.
        let mut x = seed;
        let mut state = [0u64; 4];
        for word in &mut state {
            x = x.wrapping_add(GOLDEN);
            *word = mix64(x);
        }
        RandomStream { key: seed, state }
    }

    /// Independent child stream for the given index (trial number, task id, ...).
    ///
    /// Children of distinct indices, and children at different nesting
    /// depths, are derived from distinct keys.
    pub fn child(&self, index: u64) -> Self {
        RandomStream::new(mix64(self.key ^ mix64(index)))
    }

    pub fn seed(&self) -> u64 {
        self.key
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let s = &mut self.state;
        let result = s[0]
            .wrapping_add(s[3])
            .rotate_left(23)
            .wrapping_add(s[0]);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        result
    }

    /// Uniform draw in `[0, 1)` with 53 bits of precision.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `[0, n)`.
    #[inline]
    pub fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        (((self.next_u64() as u128) * (n as u128)) >> 64) as usize
    }
}
