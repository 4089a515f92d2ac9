//! Numerical kernels: special functions, quadrature, ODE integration, root
//! finding, and reproducible random streams.
//!
//! Transcendental functions are routed through `libm` unconditionally so that
//! results are bit-identical between `std` and `no_std` builds and across
//! platforms; `sqrt`/`abs`/rounding lower to the same IEEE operations either
//! way.

pub mod betainc;
pub mod normal;
pub mod ode;
pub mod quad;
pub mod rng;
pub mod root;

/// Float math shim. Everything transcendental goes through `libm` so the
/// crate computes the same bits with or without `std`.
pub(crate) mod fm {
    #[inline]
    pub fn exp(x: f64) -> f64 {
        libm::exp(x)
    }

    #[inline]
    pub fn expm1(x: f64) -> f64 {
        libm::expm1(x)
    }

    #[inline]
    pub fn ln(x: f64) -> f64 {
        libm::log(x)
    }

    #[inline]
    pub fn sinh(x: f64) -> f64 {
        libm::sinh(x)
    }

    #[inline]
    pub fn sqrt(x: f64) -> f64 {
        #[cfg(feature = "std")]
        {
            x.sqrt()
        }
        #[cfg(not(feature = "std"))]
        {
            libm::sqrt(x)
        }
    }

    #[inline]
    pub fn abs(x: f64) -> f64 {
        #[cfg(feature = "std")]
        {
            x.abs()
        }
        #[cfg(not(feature = "std"))]
        {
            libm::fabs(x)
        }
    }

    #[inline]
    pub fn round(x: f64) -> f64 {
        #[cfg(feature = "std")]
        {
            x.round()
        }
        #[cfg(not(feature = "std"))]
        {
            libm::round(x)
        }
    }

    #[inline]
    pub fn powi(x: f64, n: i32) -> f64 {
        #[cfg(feature = "std")]
        {
            x.powi(n)
        }
        #[cfg(not(feature = "std"))]
        {
            libm::pow(x, n as f64)
        }
    }
}

/// Sum a slice by recursive pairwise reduction.
///
/// Error grows like `O(log n)` in the length instead of `O(n)` for the naive
/// left fold, which matters when reducing millions of Monte Carlo terms.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 32 {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_sum_matches_exact_on_integers() {
        let v: alloc::vec::Vec<f64> = (1..=1000).map(|k| k as f64).collect();
        assert_eq!(pairwise_sum(&v), 500500.0);
    }

    #[test]
    fn pairwise_sum_handles_small_slices() {
        assert_eq!(pairwise_sum(&[]), 0.0);
        assert_eq!(pairwise_sum(&[2.5]), 2.5);
    }
}
