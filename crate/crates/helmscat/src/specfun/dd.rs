//! Double-double arithmetic: unevaluated sums `hi + lo` of two `f64`s giving
//! roughly 31 significant decimal digits.
//!
//! The ascending Bessel series mixes terms as large as `e^|z|` while the Hankel
//! combination `J + iY` can be exponentially small, so the series must be summed
//! with more than working precision. Only the handful of operations needed for
//! that (and for the `erfc` tail split) are implemented here.

/// Unevaluated sum of two doubles, `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b|
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = f64::mul_add(a, b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Dd {
        Dd { hi, lo }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// Accurate (Knuth) addition; survives heavy cancellation.
    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, other.hi);
        let (t1, t2) = two_sum(self.lo, other.lo);
        let (s1, mut s2) = quick_two_sum(s1, s2 + t1);
        s2 += t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(other.neg())
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p, mut e) = two_prod(self.hi, other.hi);
        e += self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, mut e) = two_prod(self.hi, b);
        e += self.lo * b;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r = r.sub(other.mul_f64(q2));
        let q3 = r.hi / other.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e }.add(Dd::from_f64(q3))
    }

    #[inline]
    pub fn div_f64(self, b: f64) -> Dd {
        self.div(Dd::from_f64(b))
    }

    #[inline]
    pub fn recip(self) -> Dd {
        Dd::ONE.div(self)
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            self.neg()
        } else {
            self
        }
    }

    /// Product of two doubles, exactly.
    #[inline]
    pub fn prod(a: f64, b: f64) -> Dd {
        let (hi, lo) = two_prod(a, b);
        Dd { hi, lo }
    }
}

// Constants split into hi/lo parts (hi is the nearest double, lo the residual).
pub(crate) const PI: Dd = Dd { hi: 3.141592653589793, lo: 1.2246467991473532e-16 };
pub(crate) const PI_2: Dd = Dd { hi: 1.5707963267948966, lo: 6.123233995736766e-17 };
pub(crate) const LN2: Dd = Dd { hi: 0.6931471805599453, lo: 2.3190468138462996e-17 };
pub(crate) const EULER_GAMMA: Dd = Dd { hi: 0.5772156649015329, lo: -4.942915152430645e-18 };
pub(crate) const TWO_OVER_PI: Dd = Dd { hi: 0.6366197723675814, lo: -3.935735335036497e-17 };
pub(crate) const TWO_OVER_SQRT_PI: Dd = Dd { hi: 1.1283791670955126, lo: 1.533545961316588e-17 };

/// exp(x) for a double-double argument, |x| <= ~700.
pub(crate) fn exp(x: Dd) -> Dd {
    if x.hi < -745.0 {
        return Dd::ZERO;
    }
    let n = (x.hi / LN2.hi).round();
    let r = x.sub(LN2.mul_f64(n));
    // Taylor on |r| <= ln2/2
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    for k in 1..26 {
        term = term.mul(r).div_f64(k as f64);
        sum = sum.add(term);
        if term.hi.abs() < 1e-40 {
            break;
        }
    }
    let scale = f64::powi(2.0, n as i32);
    Dd { hi: sum.hi * scale, lo: sum.lo * scale }
}

/// ln(x) for a double-double argument, x > 0. One Newton step off the f64 log.
pub(crate) fn ln(x: Dd) -> Dd {
    let l0 = x.hi.ln();
    let e = exp(Dd::from_f64(-l0));
    let r = x.mul(e).sub(Dd::ONE);
    // ln(x) = l0 + ln(1+r), r ~ 1e-16
    let corr = r.sub(r.mul(r).div_f64(2.0));
    Dd::from_f64(l0).add(corr)
}

/// sin and cos of a plain double, each to double-double accuracy.
pub(crate) fn sincos(theta: f64) -> (Dd, Dd) {
    let m = (theta / PI_2.hi).round();
    let r = Dd::from_f64(theta).sub(PI_2.mul_f64(m));
    let r2 = r.mul(r);
    // Taylor on |r| <= pi/4
    let mut s = r;
    let mut term = r;
    for k in 1..16 {
        let d = (2 * k) * (2 * k + 1);
        term = term.mul(r2).div_f64(-(d as f64));
        s = s.add(term);
    }
    let mut c = Dd::ONE;
    term = Dd::ONE;
    for k in 1..16 {
        let d = (2 * k - 1) * (2 * k);
        term = term.mul(r2).div_f64(-(d as f64));
        c = c.add(term);
    }
    match (m as i64).rem_euclid(4) {
        0 => (s, c),
        1 => (c, s.neg()),
        2 => (s.neg(), c.neg()),
        _ => (c.neg(), s),
    }
}

/// atan2(y, x) of plain doubles to double-double accuracy.
/// One correction step on the f64 result using the dd sin/cos.
pub(crate) fn atan2(y: f64, x: f64) -> Dd {
    if y == 0.0 {
        return if x >= 0.0 { Dd::ZERO } else { PI };
    }
    if x == 0.0 {
        return if y > 0.0 { PI_2 } else { PI_2.neg() };
    }
    let t0 = f64::atan2(y, x);
    let (s, c) = sincos(t0);
    let num = c.mul_f64(y).sub(s.mul_f64(x));
    let den = c.mul_f64(x).add(s.mul_f64(y));
    let d = num.div(den);
    // third-order term d^3/3 is ~1e-48, ignored
    Dd::from_f64(t0).add(d)
}

/// Complex double-double.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    pub const ZERO: Cdd = Cdd { re: Dd::ZERO, im: Dd::ZERO };
    pub const ONE: Cdd = Cdd { re: Dd::ONE, im: Dd::ZERO };

    #[inline]
    pub fn new(re: Dd, im: Dd) -> Cdd {
        Cdd { re, im }
    }

    #[inline]
    pub fn from_f64(re: f64, im: f64) -> Cdd {
        Cdd { re: Dd::from_f64(re), im: Dd::from_f64(im) }
    }

    #[inline]
    pub fn add(self, o: Cdd) -> Cdd {
        Cdd { re: self.re.add(o.re), im: self.im.add(o.im) }
    }

    #[inline]
    pub fn sub(self, o: Cdd) -> Cdd {
        Cdd { re: self.re.sub(o.re), im: self.im.sub(o.im) }
    }

    #[inline]
    pub fn neg(self) -> Cdd {
        Cdd { re: self.re.neg(), im: self.im.neg() }
    }

    #[inline]
    pub fn mul(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    #[inline]
    pub fn mul_dd(self, s: Dd) -> Cdd {
        Cdd { re: self.re.mul(s), im: self.im.mul(s) }
    }

    #[inline]
    pub fn mul_f64(self, s: f64) -> Cdd {
        Cdd { re: self.re.mul_f64(s), im: self.im.mul_f64(s) }
    }

    #[inline]
    pub fn div_f64(self, s: f64) -> Cdd {
        Cdd { re: self.re.div_f64(s), im: self.im.div_f64(s) }
    }

    /// Multiply by i.
    #[inline]
    pub fn mul_i(self) -> Cdd {
        Cdd { re: self.im.neg(), im: self.re }
    }

    pub fn recip(self) -> Cdd {
        let d = self.re.mul(self.re).add(self.im.mul(self.im));
        Cdd { re: self.re.div(d), im: self.im.neg().div(d) }
    }

    #[inline]
    pub fn abs_hi(self) -> f64 {
        self.re.hi.hypot(self.im.hi)
    }

    pub fn to_complex(self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// Principal log of a complex double (exact f64 components in, dd out).
pub(crate) fn ln_complex(re: f64, im: f64) -> Cdd {
    // |z|^2 exactly as a dd, then ln(|z|^2)/2
    let m2 = Dd::prod(re, re).add(Dd::prod(im, im));
    let lr = ln(m2).div_f64(2.0);
    let th = atan2(im, re);
    Cdd { re: lr, im: th }
}
