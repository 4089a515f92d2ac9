//! ODE integration: adaptive Dormand-Prince 5(4) for production use and a
//! fixed-step classical RK4 kept around as an independent cross-check.

use super::fm;
use crate::{Error, Result};

/// Dormand-Prince 5(4) tableau.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 5179.0 / 57600.0;
const E3: f64 = 7571.0 / 16695.0;
const E4: f64 = 393.0 / 640.0;
const E5: f64 = -92097.0 / 339200.0;
const E6: f64 = 187.0 / 2100.0;
const E7: f64 = 1.0 / 40.0;
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

type V2 = [f64; 2];

#[inline]
fn axpy(y: &V2, h: f64, terms: &[(f64, &V2)]) -> V2 {
    let mut out = *y;
    for &(c, k) in terms {
        out[0] += h * c * k[0];
        out[1] += h * c * k[1];
    }
    out
}

/// Integrate a 2-dimensional first-order system `y' = f(x, y)` from `a` to
/// `b` with adaptive Dormand-Prince 5(4) steps.
///
/// `tol` is used as both absolute and relative tolerance in the mixed error
/// norm. `inspect` sees every accepted `(x, y)` point (including the initial
/// one) and may abort the run by returning an error — the cumulant shot uses
/// that to detect loss of positivity.
pub fn dopri5<F, G>(f: F, a: f64, b: f64, y0: V2, tol: f64, mut inspect: G) -> Result<V2>
where
    F: Fn(f64, &V2) -> V2,
    G: FnMut(f64, &V2) -> Result<()>,
{
    assert!(b > a, "integration interval must be forward");
    let mut x = a;
    let mut y = y0;
    inspect(x, &y)?;
    let mut k1 = f(x, &y);
    let mut h = (b - a) / 64.0;
    let mut steps: u64 = 0;
    const MAX_STEPS: u64 = 4_000_000;
    while x < b {
        steps += 1;
        if steps > MAX_STEPS {
            return Err(Error::Ode(alloc::format!(
                "step budget exhausted at x = {x} (interval [{a}, {b}])"
            )));
        }
        if x + h > b {
            h = b - x;
        }
        let k2 = f(x + C2 * h, &axpy(&y, h, &[(A21, &k1)]));
        let k3 = f(x + C3 * h, &axpy(&y, h, &[(A31, &k1), (A32, &k2)]));
        let k4 = f(x + C4 * h, &axpy(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = f(
            x + C5 * h,
            &axpy(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        );
        let k6 = f(
            x + h,
            &axpy(
                &y,
                h,
                &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
            ),
        );
        let y5 = axpy(&y, h, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
        let k7 = f(x + h, &y5);
        let y4 = axpy(
            &y,
            h,
            &[(E1, &k1), (E3, &k3), (E4, &k4), (E5, &k5), (E6, &k6), (E7, &k7)],
        );
        let mut err: f64 = 0.0;
        for i in 0..2 {
            let scale = tol + tol * fm::abs(y5[i]).max(fm::abs(y[i]));
            let e = (y5[i] - y4[i]) / scale;
            err += e * e;
        }
        let err = fm::sqrt(0.5 * err);
        if err <= 1.0 {
            x += h;
            y = y5;
            k1 = k7; // FSAL
            inspect(x, &y)?;
        }
        // factor = 0.9 * err^(-1/5), clamped to [0.2, 5].
        let factor = (0.9 * fm::exp(-0.2 * fm::ln(err.max(1e-300)))).clamp(0.2, 5.0);
        h *= factor;
        if h < 1e-14 * (b - a) {
            return Err(Error::Ode(alloc::format!(
                "step size underflow at x = {x} (h = {h:e})"
            )));
        }
    }
    Ok(y)
}

/// Fixed-step classical RK4 on a scalar ODE `y' = f(t, y)`. Test oracle.
pub fn rk4_scalar<F: Fn(f64, f64) -> f64>(f: F, a: f64, b: f64, y0: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut t = a;
    let mut y = y0;
    for _ in 0..n {
        let k1 = f(t, y);
        let k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
        let k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
        let k4 = f(t + h, y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn dopri5_integrates_harmonic_oscillator() {
        // y'' = -y  =>  (y, y')' = (y', -y); exact solution cos at t=pi: -1.
        let f = |_x: f64, y: &[f64; 2]| [y[1], -y[0]];
        let end = dopri5(f, 0.0, core::f64::consts::PI, [1.0, 0.0], 1e-12, |_, _| Ok(()))
            .unwrap();
        assert_abs_diff_eq!(end[0], -1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(end[1], 0.0, epsilon = 1e-10);
    }

    #[test]
    fn dopri5_matches_exponential() {
        let f = |_x: f64, y: &[f64; 2]| [y[0], 0.0];
        let end = dopri5(f, 0.0, 3.0, [1.0, 0.0], 1e-11, |_, _| Ok(())).unwrap();
        assert!(((end[0] - libm::exp(3.0)) / libm::exp(3.0)).abs() < 1e-10);
    }

    #[test]
    fn inspect_can_abort() {
        let f = |_x: f64, y: &[f64; 2]| [y[1], y[0]];
        let r = dopri5(f, 0.0, 10.0, [1.0, 1.0], 1e-10, |x, y| {
            if y[0] > 100.0 {
                Err(crate::Error::NonPositiveShot { at: x, psi: 0.0 })
            } else {
                Ok(())
            }
        });
        assert!(r.is_err());
    }

    #[test]
    fn rk4_scalar_exponential_decay() {
        let y = rk4_scalar(|_t, y| -y, 0.0, 1.0, 1.0, 1000);
        assert_abs_diff_eq!(y, (-1.0f64).exp(), epsilon = 1e-12);
    }
}
