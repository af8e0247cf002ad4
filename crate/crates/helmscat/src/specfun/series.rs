//! Ascending series for J0, J1, Y0, Y1 at complex argument, summed in
//! double-double arithmetic.
//!
//! For Im z > 0 the Hankel combination J + iY is exponentially smaller than J
//! and Y separately (ratio up to e^{2 Im z}), so every intermediate — powers of
//! z, the log term, the harmonic sums — is kept in double-double until the very
//! end. Within |z| <= Z_SWITCH this yields ~1e-15 relative accuracy or better
//! for H0 and H1 on the whole closed right half-plane.

use super::dd::{self, Cdd, Dd};

const MAX_TERMS: usize = 90;

/// All four series values at once. `z = (re, im)` with exact f64 components.
pub(crate) struct SeriesValues {
    pub j0: Cdd,
    pub y0: Cdd,
    pub j1: Cdd,
    pub y1: Cdd,
}

pub(crate) fn bessel_series(re: f64, im: f64) -> SeriesValues {
    // u = z^2/4 exactly rounded to dd
    let z = Cdd::from_f64(re, im);
    let zz = Cdd {
        re: Dd::prod(re, re).sub(Dd::prod(im, im)),
        im: Dd::prod(re, im).mul_f64(2.0),
    };
    let u = zz.div_f64(4.0);

    // ell = ln(z/2) + gamma
    let lnz2 = dd::ln_complex(re / 2.0, im / 2.0);
    // re/2, im/2 are exact (power of two); for subnormal-safe inputs this holds
    let ell = Cdd { re: lnz2.re.add(dd::EULER_GAMMA), im: lnz2.im };

    // J0 = sum (-1)^m u^m / (m!)^2         (term t_m)
    // S0 = sum_{m>=1} (-1)^(m+1) H_m t_m
    // J1 = (z/2) sum (-1)^m u^m / (m!(m+1)!)   (term s_m)
    // S1 = sum (-1)^m (H_m + H_{m+1}) s_m
    let mut t = Cdd::ONE;
    let mut s = Cdd::ONE;
    let mut j0 = Cdd::ONE;
    let mut s0 = Cdd::ZERO;
    let mut jsum = Cdd::ONE;
    let mut s1 = Cdd::ONE; // m = 0: (H_0 + H_1) s_0 = 1
    let mut harm = Dd::ZERO;
    let mut scale = 1.0f64;

    for m in 1..MAX_TERMS {
        let mf = m as f64;
        t = t.mul(u).div_f64(mf * mf).neg();
        s = s.mul(u).div_f64(mf * (mf + 1.0)).neg();
        harm = harm.add(Dd::ONE.div_f64(mf));
        let harm1 = harm.add(Dd::ONE.div_f64(mf + 1.0));

        j0 = j0.add(t);
        s0 = s0.sub(t.mul_dd(harm));
        jsum = jsum.add(s);
        s1 = s1.add(s.mul_dd(harm.add(harm1)));

        let mag = t.abs_hi();
        scale = scale.max(mag);
        if mag < 1e-42 * scale {
            break;
        }
    }

    let half_z = z.div_f64(2.0);
    let j1 = half_z.mul(jsum);

    // Y0 = (2/pi)(ell*J0 + S0)
    let y0 = ell.mul(j0).add(s0).mul_dd(dd::TWO_OVER_PI);
    // Y1 = (2/pi) ell*J1 - 2/(pi z) - (z/(2 pi)) S1
    let two_over_pi_z = z.recip().mul_dd(dd::TWO_OVER_PI);
    let y1 = ell
        .mul(j1)
        .mul_dd(dd::TWO_OVER_PI)
        .sub(two_over_pi_z)
        .sub(half_z.mul(s1).mul_dd(dd::TWO_OVER_PI).div_f64(2.0));

    SeriesValues { j0, y0, j1, y1 }
}
