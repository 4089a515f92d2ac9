//! Standard normal distribution: density, CDF, survival function (also in
//! log form), and quantile function.
//!
//! The CDF is built on Cody's rational Chebyshev approximations for
//! `erf`/`erfc` (max relative error around 1e-16, so the absolute error of
//! `Phi` stays below 1e-15 everywhere). The quantile is Wichura's PPND16
//! rational approximation (absolute error below 1e-15 on (0,1)). Both are
//! self-contained so the numeric contract of the crate does not depend on a
//! platform math library.

use super::fm;

/// 1/sqrt(2*pi).
pub const INV_SQRT_2PI: f64 = 0.3989422804014326779399460599343818684;
const SQRT_2: f64 = core::f64::consts::SQRT_2;
/// 1/sqrt(pi), used by the large-argument erfc expansion.
const INV_SQRT_PI: f64 = 0.5641895835477562869480794515607725858;

/// Standard normal density.
#[inline]
pub fn pdf(x: f64) -> f64 {
    INV_SQRT_2PI * fm::exp(-0.5 * x * x)
}

/// Error function, Cody's rational approximation.
pub fn erf(x: f64) -> f64 {
    let y = fm::abs(x);
    if y <= 0.46875 {
        let z = y * y;
        let num = (((A[4] * z + A[0]) * z + A[1]) * z + A[2]) * z + A[3];
        let den = (((z + B[0]) * z + B[1]) * z + B[2]) * z + B[3];
        x * num / den
    } else {
        let e = erfc_positive(y);
        if x > 0.0 {
            1.0 - e
        } else {
            e - 1.0
        }
    }
}

// Cody coefficients for |x| <= 0.46875, ordered a1..a5 / b1..b4; the erf
// numerator is (((a5 z + a1) z + a2) z + a3) z + a4 and the denominator is
// (((z + b1) z + b2) z + b3) z + b4.
const A: [f64; 5] = [
    3.16112374387056560e0,
    1.13864154151050156e2,
    3.77485237685302021e2,
    3.20937758913846947e3,
    1.85777706184603153e-1,
];
const B: [f64; 4] = [
    2.36012909523441209e1,
    2.44024637934444173e2,
    1.28261652607737228e3,
    2.84423683343917062e3,
];

/// Complementary error function.
pub fn erfc(x: f64) -> f64 {
    if fm::abs(x) <= 0.46875 {
        1.0 - erf(x)
    } else if x < -6.0 {
        2.0
    } else if x < 0.0 {
        2.0 - erfc_positive(-x)
    } else {
        erfc_positive(x)
    }
}

// 0.46875 <= x <= 4 branch of erfc.
const C: [f64; 9] = [
    5.64188496988670089e-1,
    8.88314979438837594e0,
    6.61191906371416295e1,
    2.98635138197400131e2,
    8.81952221241769090e2,
    1.71204761263407058e3,
    2.05107837782607147e3,
    1.23033935479799725e3,
    2.15311535474403846e-8,
];
const D: [f64; 8] = [
    1.57449261107098347e1,
    1.17693950891312499e2,
    5.37181101862009858e2,
    1.62138957456669019e3,
    3.29079923573345963e3,
    4.36261909014324716e3,
    3.43936767414372164e3,
    1.23033935480374942e3,
];
// x > 4 branch of erfc.
const P: [f64; 6] = [
    3.05326634961232344e-1,
    3.60344899949804439e-1,
    1.25781726111229246e-1,
    1.60837851487422766e-2,
    6.58749161529837803e-4,
    1.63153871373020978e-2,
];
const Q: [f64; 5] = [
    2.56852019228982242e0,
    1.87295284992346047e0,
    5.27905102951428412e-1,
    6.05183413124413191e-2,
    2.33520497626869185e-3,
];

/// erfc for x > 0.46875. Splits exp(-x^2) to preserve accuracy as in Cody's
/// original: exp(-x^2) = exp(-xsq^2) * exp(-(x-xsq)(x+xsq)) with xsq the
/// argument truncated to 1/16ths.
fn erfc_positive(x: f64) -> f64 {
    debug_assert!(x > 0.46);
    if x > 26.6 {
        // exp(-x^2) underflows to zero well before this.
        return 0.0;
    }
    let xsq = (x * 16.0) as i64 as f64 / 16.0;
    let e = fm::exp(-xsq * xsq) * fm::exp(-(x - xsq) * (x + xsq));
    if x <= 4.0 {
        let mut num = C[8] * x;
        let mut den = x;
        for i in 0..7 {
            num = (num + C[i]) * x;
            den = (den + D[i]) * x;
        }
        e * (num + C[7]) / (den + D[7])
    } else {
        let z = 1.0 / (x * x);
        let mut num = P[5] * z;
        let mut den = z;
        for i in 0..4 {
            num = (num + P[i]) * z;
            den = (den + Q[i]) * z;
        }
        let tail = z * (num + P[4]) / (den + Q[4]);
        e * (INV_SQRT_PI - tail) / x
    }
}

/// Standard normal CDF `Phi(x)`.
#[inline]
pub fn cdf(x: f64) -> f64 {
    0.5 * erfc(-x / SQRT_2)
}

/// Standard normal survival function `1 - Phi(x)`, accurate in the far tail.
#[inline]
pub fn sf(x: f64) -> f64 {
    0.5 * erfc(x / SQRT_2)
}

/// `ln(1 - Phi(x))`, valid far beyond where [`sf`] underflows.
///
/// Below the underflow point (about `x = 37.5`) this switches to the
/// asymptotic expansion
/// `ln(sf) = -x^2/2 - ln(x sqrt(2 pi)) + ln(1 - x^-2 + 3 x^-4 - 15 x^-6 + 105 x^-8)`.
pub fn ln_sf(x: f64) -> f64 {
    if x < 20.0 {
        return fm::ln(sf(x));
    }
    let z = 1.0 / (x * x);
    let series = 1.0 + z * (-1.0 + z * (3.0 + z * (-15.0 + z * 105.0)));
    -0.5 * x * x - fm::ln(x / INV_SQRT_2PI) + fm::ln(series)
}

// Wichura's PPND16 coefficients.
const PA: [f64; 8] = [
    3.3871328727963666080e0,
    1.3314166789178437745e2,
    1.9715909503065514427e3,
    1.3731693765509461125e4,
    4.5921953931549871457e4,
    6.7265770927008700853e4,
    3.3430575583588128105e4,
    2.5090809287301226727e3,
];
const PB: [f64; 7] = [
    4.2313330701600911252e1,
    6.8718700749205790830e2,
    5.3941960214247511077e3,
    2.1213794301586595867e4,
    3.9307895800092710610e4,
    2.8729085735721942674e4,
    5.2264952788528545610e3,
];
const PC: [f64; 8] = [
    1.42343711074968357734e0,
    4.63033784615654529590e0,
    5.76949722146069140550e0,
    3.64784832476320460504e0,
    1.27045825245236838258e0,
    2.41780725177450611770e-1,
    2.27238449892691845833e-2,
    7.74545014278341407640e-4,
];
const PD: [f64; 7] = [
    2.05319162663775882187e0,
    1.67638483018380384940e0,
    6.89767334985100004550e-1,
    1.48103976427480074590e-1,
    1.51986665636164571966e-2,
    5.47593808499534494600e-4,
    1.05075007164441684324e-9,
];
const PE: [f64; 8] = [
    6.65790464350110377720e0,
    5.46378491116411436990e0,
    1.78482653991729133580e0,
    2.96560571828504891230e-1,
    2.65321895265761230930e-2,
    1.24266094738807843860e-3,
    2.71155556874348757815e-5,
    2.01033439929228813265e-7,
];
const PF: [f64; 7] = [
    5.99832206555887937690e-1,
    1.36929880922735805310e-1,
    1.48753612908506148525e-2,
    7.86869131145613259100e-4,
    1.84631831751005468180e-5,
    1.42151175831644588870e-7,
    2.04426310338993978564e-15,
];

#[inline]
fn poly8_over_poly7(r: f64, n: &[f64; 8], d: &[f64; 7]) -> f64 {
    let num = ((((((n[7] * r + n[6]) * r + n[5]) * r + n[4]) * r + n[3]) * r + n[2]) * r + n[1])
        * r
        + n[0];
    let den = ((((((d[6] * r + d[5]) * r + d[4]) * r + d[3]) * r + d[2]) * r + d[1]) * r + d[0])
        * r
        + 1.0;
    num / den
}

/// Normal quantile `Phi^{-1}(p)` for `p` in `(0, 1)` (Wichura's PPND16).
///
/// Returns `-inf`/`+inf` at `p = 0`/`p = 1` and NaN outside `[0, 1]`.
pub fn inv_cdf(p: f64) -> f64 {
    if !(0.0..=1.0).contains(&p) {
        return f64::NAN;
    }
    if p == 0.0 {
        return f64::NEG_INFINITY;
    }
    if p == 1.0 {
        return f64::INFINITY;
    }
    let q = p - 0.5;
    if fm::abs(q) <= 0.425 {
        let r = 0.180625 - q * q;
        return q * poly8_over_poly7(r, &PA, &PB);
    }
    let r = if q < 0.0 { p } else { 1.0 - p };
    let r = fm::sqrt(-fm::ln(r));
    let v = if r <= 5.0 {
        poly8_over_poly7(r - 1.6, &PC, &PD)
    } else {
        poly8_over_poly7(r - 5.0, &PE, &PF)
    };
    if q < 0.0 {
        -v
    } else {
        v
    }
}
