//! Special functions for the layer-potential kernel: erfc on the real line,
//! Bessel/Hankel functions J0, J1, Y0, Y1, H0, H1 at complex argument, and the
//! principal branch square root.
//!
//! The Hankel evaluation switches between an ascending series summed in
//! double-double arithmetic (|z| <= 17.5) and the large-argument expansion.
//! Both branches stay under ~1e-14 relative error on the closed sector
//! |arg z| <= pi/2 that complexified contours and beam sources produce.

use num_complex::Complex64;

use crate::Error;

mod asympt;
mod dd;
mod erfc;
mod series;

pub use erfc::erfc;

pub(crate) const SQRT_PI: f64 = 1.7724538509055159;

/// Series/asymptotic handoff radius.
pub const Z_SWITCH: f64 = 17.5;

/// Argument slack: points microscopically past the imaginary axis (from
/// rounding in upstream complex arithmetic) are still accepted.
const ARG_SLACK: f64 = 1e-9;

fn check_domain(z: Complex64) -> Result<(), Error> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::SpecFunDomain { what: "hankel1", at: z });
    }
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::SpecFunDomain { what: "hankel1", at: z });
    }
    if z.re < 0.0 && z.re.abs() > ARG_SLACK * z.im.abs() {
        // outside |arg z| <= pi/2 (modulo slack): not reachable from
        // admissible contours, and the asymptotic branch is unsafe there
        return Err(Error::SpecFunDomain { what: "hankel1", at: z });
    }
    Ok(())
}

fn finite_or_overflow(v: Complex64, z: Complex64) -> Result<Complex64, Error> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::SpecFunOverflow { what: "hankel1", at: z })
    }
}

/// Hankel function of the first kind, order 0 or 1.
pub fn hankel1(order: u8, z: Complex64) -> Result<Complex64, Error> {
    assert!(order <= 1, "only orders 0 and 1 are implemented");
    check_domain(z)?;
    let v = if z.norm_sqr() <= Z_SWITCH * Z_SWITCH {
        let v = series::bessel_series(z.re, z.im);
        let (j, y) = if order == 0 { (v.j0, v.y0) } else { (v.j1, v.y1) };
        let h = (
            j.re.add(y.im.neg()),
            j.im.add(y.re),
        );
        Complex64::new(h.0.to_f64(), h.1.to_f64())
    } else {
        asympt::hankel_asymptotic(order, z)?
    };
    finite_or_overflow(v, z)
}

/// Bessel function of the first kind, order 0 or 1, complex argument.
pub fn bessel_j(order: u8, z: Complex64) -> Result<Complex64, Error> {
    assert!(order <= 1);
    check_domain(z)?;
    let v = if z.norm_sqr() <= Z_SWITCH * Z_SWITCH {
        let v = series::bessel_series(z.re, z.im);
        let j = if order == 0 { v.j0 } else { v.j1 };
        Complex64::new(j.re.to_f64(), j.im.to_f64())
    } else {
        // J = (H1(z) + conj(H1(conj z))) / 2
        let h = asympt::hankel_asymptotic(order, z)?;
        let hr = asympt::hankel_asymptotic(order, z.conj())?.conj();
        (h + hr) / 2.0
    };
    finite_or_overflow(v, z)
}

/// Bessel function of the second kind, order 0 or 1, complex argument.
pub fn bessel_y(order: u8, z: Complex64) -> Result<Complex64, Error> {
    assert!(order <= 1);
    check_domain(z)?;
    let v = if z.norm_sqr() <= Z_SWITCH * Z_SWITCH {
        let v = series::bessel_series(z.re, z.im);
        let y = if order == 0 { v.y0 } else { v.y1 };
        Complex64::new(y.re.to_f64(), y.im.to_f64())
    } else {
        // Y = (H1(z) - conj(H1(conj z))) / (2i)
        let h = asympt::hankel_asymptotic(order, z)?;
        let hr = asympt::hankel_asymptotic(order, z.conj())?.conj();
        (h - hr) / Complex64::new(0.0, 2.0)
    };
    finite_or_overflow(v, z)
}

/// Principal branch square root: w with w^2 = z and Re w > 0
/// (Re w = 0, Im w > 0 on the positive imaginary axis boundary case).
///
/// Errors on the branch cut (-inf, 0].
pub fn principal_sqrt(z: Complex64) -> Result<Complex64, Error> {
    if z.im == 0.0 && z.re <= 0.0 {
        return Err(Error::BranchCut { at: z });
    }
    // stable two-branch formula avoiding cancellation
    let m = z.norm();
    let w = if z.re >= 0.0 {
        let re = ((m + z.re) / 2.0).sqrt();
        Complex64::new(re, z.im / (2.0 * re))
    } else {
        let im = ((m - z.re) / 2.0).sqrt().copysign(z.im);
        Complex64::new(z.im / (2.0 * im), im)
    };
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    fn relerr(a: C, b: C) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn hankel_reference_order0() {
        // frozen from the extended-precision ascending series
        let h = hankel1(0, C::new(1.0, 0.0)).unwrap();
        assert!(relerr(h, C::new(0.7651976865579666, 0.0882569642156770)) < 1e-14);
    }

    #[test]
    fn hankel_reference_order1() {
        let h = hankel1(1, C::new(1.0, 0.0)).unwrap();
        assert!(relerr(h, C::new(0.4400505857449335, -0.7812128213002887)) < 1e-14);
    }

    #[test]
    fn real_axis_components_are_j_and_y() {
        for &x in &[0.3, 2.0, 9.5, 17.0] {
            let h = hankel1(0, C::new(x, 0.0)).unwrap();
            let j = bessel_j(0, C::new(x, 0.0)).unwrap();
            let y = bessel_y(0, C::new(x, 0.0)).unwrap();
            assert_eq!(j.im, 0.0);
            assert_eq!(y.im, 0.0);
            assert_eq!(h.re, j.re);
            assert_eq!(h.im, y.re);
        }
    }

    #[test]
    fn branch_agreement_at_switch() {
        // both evaluation routes at |z| = Z_SWITCH, 50 angles
        for i in 0..50 {
            let th = std::f64::consts::FRAC_PI_2 * (i as f64) / 49.0;
            let z = C::from_polar(Z_SWITCH, th);
            for order in [0u8, 1u8] {
                let ser = {
                    let v = series::bessel_series(z.re, z.im);
                    let (j, y) = if order == 0 { (v.j0, v.y0) } else { (v.j1, v.y1) };
                    C::new(j.re.add(y.im.neg()).to_f64(), j.im.add(y.re).to_f64())
                };
                let asy = asympt::hankel_asymptotic(order, z).unwrap();
                assert!(
                    relerr(ser, asy) < 1e-12,
                    "order {order}, theta {th}: {ser} vs {asy}"
                );
            }
        }
    }

    #[test]
    fn derivative_identity_h0_h1() {
        // d/dz H0 = -H1 against central differences
        for &(re, im) in &[(1.0, 0.0), (3.0, 2.0), (0.5, 7.0), (25.0, 5.0), (40.0, -3.0)] {
            let z = C::new(re, im);
            let h = 1e-6 * z.norm();
            let hp = hankel1(0, z + C::new(h, 0.0)).unwrap();
            let hm = hankel1(0, z - C::new(h, 0.0)).unwrap();
            let fd = (hp - hm) / (2.0 * h);
            let h1 = hankel1(1, z).unwrap();
            assert!(relerr(fd, -h1) < 1e-7, "z={z}");
        }
    }

    #[test]
    fn domain_errors() {
        assert!(hankel1(0, C::new(0.0, 0.0)).is_err());
        assert!(hankel1(0, C::new(-3.0, 1.0)).is_err());
        assert!(hankel1(1, C::new(5.0, -900.0)).is_err());
    }

    #[test]
    fn principal_sqrt_examples() {
        assert_eq!(principal_sqrt(C::new(4.0, 0.0)).unwrap(), C::new(2.0, 0.0));
        let z = C::new(5.0, 2.0);
        let w = principal_sqrt(z * z).unwrap();
        assert!(relerr(w, z) < 1e-15);
        let w = principal_sqrt(C::new(0.0, 1.0)).unwrap();
        let r = 0.5f64.sqrt();
        assert!(relerr(w, C::new(r, r)) < 1e-15);
    }

    #[test]
    fn principal_sqrt_branch_cut() {
        assert!(principal_sqrt(C::new(-1.0, 0.0)).is_err());
        assert!(principal_sqrt(C::new(0.0, 0.0)).is_err());
        // just off the cut is fine, lands near +-i
        let w = principal_sqrt(C::new(-1.0, 1e-12)).unwrap();
        assert!(w.re > 0.0 && (w.im - 1.0).abs() < 1e-9);
        let w = principal_sqrt(C::new(-1.0, -1e-12)).unwrap();
        assert!(w.re > 0.0 && (w.im + 1.0).abs() < 1e-9);
    }

    #[test]
    fn sqrt_lands_in_closed_right_half_plane() {
        // branch convention: Re w > 0 away from the cut
        for i in 0..100 {
            let th = -3.1415 + 6.283 * (i as f64) / 99.0;
            let z = C::from_polar(2.5, th);
            let w = principal_sqrt(z).unwrap();
            assert!(w.re > 0.0);
            assert!(relerr(w * w, z) < 1e-14);
        }
    }
}
