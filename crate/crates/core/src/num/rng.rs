//! Counter-based random streams for reproducible (and parallelizable)
//! Monte Carlo.
//!
//! The generator is the splitmix64 finalizer applied to
//! `key + (counter + 1) * GOLDEN`, i.e. random access into a splitmix64
//! sequence. Uniforms map the top 53 bits into the open interval `(0, 1)`,
//! and normal variates go through the high-accuracy inverse CDF, so the
//! stream is identical for any degree of parallelism and any platform.
//!
//! Replication streams are derived with the same construction one level up:
//! `stream_key(seed, rep) = finalize(seed + (rep + 1) * GOLDEN)`. A single
//! simulation is replication 0 of its seed.

use super::normal;

/// The splitmix64 increment (golden-ratio constant).
pub const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// splitmix64 finalizer: two xor-multiply rounds plus a closing xor-shift.
#[inline]
pub fn finalize(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The 64-bit word at position `ctr` of the stream identified by `key`.
#[inline]
pub fn word_at(key: u64, ctr: u64) -> u64 {
    finalize(key.wrapping_add(ctr.wrapping_add(1).wrapping_mul(GOLDEN)))
}

/// Derive the stream key for replication `rep` of a user seed.
#[inline]
pub fn stream_key(seed: u64, rep: u64) -> u64 {
    word_at(seed, rep)
}

/// A counter-based stream of uniforms and standard normals.
#[derive(Debug, Clone)]
pub struct NormalStream {
    key: u64,
    ctr: u64,
}

impl NormalStream {
    /// Stream for a raw key (already mixed).
    pub fn new(key: u64) -> Self {
        NormalStream { key, ctr: 0 }
    }

    /// Stream for replication `rep` of a user-facing seed.
    pub fn for_replication(seed: u64, rep: u64) -> Self {
        NormalStream::new(stream_key(seed, rep))
    }

    /// Next uniform in the open interval `(0, 1)`.
    ///
    /// Uses the top 53 bits plus a half-ulp offset so 0 and 1 are unreachable.
    #[inline]
    pub fn next_uniform(&mut self) -> f64 {
        let z = word_at(self.key, self.ctr);
        self.ctr += 1;
        ((z >> 11) as f64 + 0.5) * (1.0 / 9007199254740992.0)
    }

    /// Next standard normal variate (inverse-CDF of the uniform stream).
    #[inline]
    pub fn next_normal(&mut self) -> f64 {
        normal::inv_cdf(self.next_uniform())
    }

    /// How many variates have been drawn.
    pub fn position(&self) -> u64 {
        self.ctr
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn streams_are_reproducible() {
        let mut a = NormalStream::for_replication(42, 3);
        let mut b = NormalStream::for_replication(42, 3);
        for _ in 0..1000 {
            assert_eq!(a.next_normal().to_bits(), b.next_normal().to_bits());
        }
    }

    #[test]
    fn replications_differ() {
        let a: Vec<u64> = {
            let mut s = NormalStream::for_replication(42, 0);
            (0..16).map(|_| s.next_uniform().to_bits()).collect()
        };
        let b: Vec<u64> = {
            let mut s = NormalStream::for_replication(42, 1);
            (0..16).map(|_| s.next_uniform().to_bits()).collect()
        };
        assert_ne!(a, b);
    }

    #[test]
    fn uniforms_are_strictly_inside_unit_interval() {
        let mut s = NormalStream::new(7);
        for _ in 0..100_000 {
            let u = s.next_uniform();
            assert!(u > 0.0 && u < 1.0);
        }
    }

    #[test]
    fn normal_moments_are_sane() {
        let mut s = NormalStream::for_replication(123, 0);
        let n = 200_000;
        let mut sum = 0.0;
        let mut sum2 = 0.0;
        let mut sum3 = 0.0;
        for _ in 0..n {
            let x = s.next_normal();
            sum += x;
            sum2 += x * x;
            sum3 += x * x * x;
        }
        let nf = n as f64;
        let mean = sum / nf;
        let var = sum2 / nf - mean * mean;
        let skew = sum3 / nf;
        // 5 sigma bands for the sample statistics.
        assert!(mean.abs() < 5.0 / nf.sqrt(), "mean {mean}");
        assert!((var - 1.0).abs() < 5.0 * (2.0f64 / nf).sqrt(), "var {var}");
        assert!(skew.abs() < 5.0 * (15.0f64 / nf).sqrt(), "skew {skew}");
    }

    #[test]
    fn word_at_is_pure_random_access() {
        let key = stream_key(9, 2);
        let mut s = NormalStream::new(key);
        let first = s.next_uniform();
        let again = ((word_at(key, 0) >> 11) as f64 + 0.5) * (1.0 / 9007199254740992.0);
        assert_eq!(first.to_bits(), again.to_bits());
    }
}
