//! Complementary error function on the real line.
//!
//! Maclaurin series for erf (summed in double-double, so that erfc = 1 - erf
//! keeps full relative accuracy through the cancellation near x = 2) below
//! x = 2, Legendre continued fraction above. Total function: large arguments
//! underflow to 0 rather than erroring.

use super::dd::{self, Dd};

/// Complementary error function, relative error below ~1e-15 for |x| <= 10.
pub fn erfc(x: f64) -> f64 {
    if x < 0.0 {
        return 2.0 - erfc_nonneg(-x);
    }
    erfc_nonneg(x)
}

fn erfc_nonneg(x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x < 2.0 {
        erfc_series(x)
    } else if x < 27.3 {
        erfc_cf(x)
    } else {
        // erfc(27.3) < 5e-325: below the smallest subnormal
        0.0
    }
}

/// erfc = 1 - (2/sqrt(pi)) sum (-1)^n x^(2n+1) / (n! (2n+1)), in double-double.
fn erfc_series(x: f64) -> f64 {
    let x2 = Dd::prod(x, x).neg();
    let mut term = Dd::from_f64(x);
    let mut sum = Dd::from_f64(x);
    for n in 1..64 {
        term = term.mul(x2).div_f64(n as f64);
        let contrib = term.div_f64(2.0 * n as f64 + 1.0);
        sum = sum.add(contrib);
        if contrib.hi.abs() < 1e-40 {
            break;
        }
    }
    Dd::ONE.sub(sum.mul(dd::TWO_OVER_SQRT_PI)).to_f64()
}

/// Legendre continued fraction
///   erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
/// evaluated by the modified Lentz algorithm.
fn erfc_cf(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0f64;
    for n in 1..200 {
        let a = n as f64 / 2.0;
        d = x + a * d;
        if d == 0.0 {
            d = TINY;
        }
        c = x + a / c;
        if c == 0.0 {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-17 {
            break;
        }
    }
    // e^{-x^2} with the squaring error compensated: x^2 = p + e exactly,
    // e^{-(p+e)} = e^{-p} (1 - e + ...)
    let sq = Dd::prod(x, x);
    let expf = (-sq.hi).exp() * (1.0 - sq.lo);
    expf / (crate::specfun::SQRT_PI * f)
}
