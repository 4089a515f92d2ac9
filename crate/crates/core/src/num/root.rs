//! Scalar root finding and one-dimensional maximization.

use super::fm;
use crate::{Error, Result};

/// Find the root of `f` inside a bracket `[lo, hi]` with `f(lo) < 0 < f(hi)`
/// (or the reverse): bisection until the interval is short, then a few secant
/// polishing steps. Stops when `|f| < ftol`.
pub fn bisect_then_secant<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    mut f_lo: f64,
    mut f_hi: f64,
    ftol: f64,
) -> Result<f64> {
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Bracket(alloc::format!(
            "no sign change on [{lo}, {hi}]: f(lo) = {f_lo:e}, f(hi) = {f_hi:e}"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm_ = f(mid)?;
        if fm::abs(fm_) < ftol {
            return Ok(mid);
        }
        if fm_.signum() == f_lo.signum() {
            lo = mid;
            f_lo = fm_;
        } else {
            hi = mid;
            f_hi = fm_;
        }
        // Switch to secant once the bracket is tight enough for it to be safe.
        if hi - lo < 1e-4 * (1.0 + fm::abs(mid)) {
            break;
        }
    }
    let mut x0 = lo;
    let mut x1 = hi;
    let mut y0 = f_lo;
    let mut y1 = f_hi;
    for _ in 0..60 {
        let denom = y1 - y0;
        if denom == 0.0 {
            break;
        }
        let x2 = x1 - y1 * (x1 - x0) / denom;
        let x2 = x2.clamp(lo, hi);
        let y2 = f(x2)?;
        if fm::abs(y2) < ftol {
            return Ok(x2);
        }
        x0 = x1;
        y0 = y1;
        x1 = x2;
        y1 = y2;
    }
    Err(Error::Bracket(alloc::format!(
        "did not reach |f| < {ftol:e} (best |f| = {:e} at {x1})",
        fm::abs(y1)
    )))
}

/// Golden-section maximization of a unimodal `f` on `[a, b]`.
///
/// Returns `(argmax, max)` once the interval is shorter than `xtol`.
pub fn golden_max<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    mut a: f64,
    mut b: f64,
    xtol: f64,
) -> Result<(f64, f64)> {
    const INV_PHI: f64 = 0.6180339887498949;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while b - a > xtol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, f(x)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn finds_cubic_root() {
        let f = |x: f64| Ok(x * x * x - 2.0);
        let r = bisect_then_secant(f, 0.0, 2.0, -2.0, 6.0, 1e-14).unwrap();
        assert_abs_diff_eq!(r, 2.0f64.powf(1.0 / 3.0), epsilon = 1e-16);
    }

    #[test]
    fn rejects_bad_bracket() {
        let f = |x: f64| Ok(x * x + 1.0);
        assert!(bisect_then_secant(f, -1.0, 1.0, 2.0, 2.0, 1e-12).is_err());
    }

    #[test]
    fn golden_finds_parabola_peak() {
        let f = |x: f64| Ok(-(x - 0.37) * (x - 0.37));
        let (x, v) = golden_max(f, 0.0, 2.0, 1e-10).unwrap();
        assert_abs_diff_eq!(x, 0.37, epsilon = 1e-8);
        assert!(v > -1e-15);
    }
}
