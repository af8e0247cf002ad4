//! The scattering interface: a compactly supported perturbation of the real
//! axis, its complexified truncated version, and the panel discretization.
//!
//! The complexified contour keeps the perturbed middle `|t| <= L` real and
//! bends the flat tails into the complex plane through `x1 = t + i phi(t)`
//! with a smooth, odd, monotone imaginary profile built from erfc integrals.
//! Points and panels carry the derived data the Nystrom method needs: analytic
//! derivatives, complex speeds, complexified normals and smooth weights.

use num_complex::Complex64;

use crate::quadrature::{panel_rule, PANEL_ORDER};
use crate::specfun::{erfc, principal_sqrt, SQRT_PI};
use crate::{Error, Result};

/// A point of the complexified boundary (or a source/target location).
/// Both coordinates may be complex; on the contour the second stays real.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPoint {
    pub x1: Complex64,
    pub x2: Complex64,
}

impl ComplexPoint {
    pub fn new(x1: Complex64, x2: Complex64) -> Self {
        ComplexPoint { x1, x2 }
    }

    pub fn real(x1: f64, x2: f64) -> Self {
        ComplexPoint { x1: Complex64::new(x1, 0.0), x2: Complex64::new(x2, 0.0) }
    }

    /// Magnitude sqrt(|x1|^2 + |x2|^2) used in the weighted decay norms.
    pub fn modulus(&self) -> f64 {
        (self.x1.norm_sqr() + self.x2.norm_sqr()).sqrt()
    }
}

/// One term of the trig-Gaussian profile family a e^{-g t^2} cos(w t + p).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigGaussTerm {
    pub amplitude: f64,
    pub gauss: f64,
    pub omega: f64,
    pub phase: f64,
}

/// Perturbation profile before the compact-support window is applied.
#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    /// No perturbation: the interface is the real axis.
    Flat,
    /// Sum of trig-Gaussian terms, windowed by psi_{L-delta}.
    TrigGauss(Vec<TrigGaussTerm>),
}

impl Profile {
    /// Gaussian-damped cosine bump, `e^{-t^2/4} cos t`.
    pub fn smooth_bump() -> Profile {
        Profile::TrigGauss(vec![TrigGaussTerm {
            amplitude: 1.0,
            gauss: 0.25,
            omega: 1.0,
            phase: 0.0,
        }])
    }

    /// Three-frequency cosine sum
    /// `2 cos(2 pi t + 0.8) - cos(10 pi/13 t + 1.5) + 0.6 cos(sqrt(2) pi t + 3.2)`.
    pub fn multi_cosine() -> Profile {
        use std::f64::consts::PI;
        Profile::TrigGauss(vec![
            TrigGaussTerm { amplitude: 2.0, gauss: 0.0, omega: 2.0 * PI, phase: 0.8 },
            TrigGaussTerm { amplitude: -1.0, gauss: 0.0, omega: 10.0 * PI / 13.0, phase: 1.5 },
            TrigGaussTerm { amplitude: 0.6, gauss: 0.0, omega: std::f64::consts::SQRT_2 * PI, phase: 3.2 },
        ])
    }

    fn eval(&self, t: f64) -> (f64, f64) {
        match self {
            Profile::Flat => (0.0, 0.0),
            Profile::TrigGauss(terms) => {
                let mut v = 0.0;
                let mut d = 0.0;
                for term in terms {
                    let e = (-term.gauss * t * t).exp();
                    let arg = term.omega * t + term.phase;
                    let (s, c) = arg.sin_cos();
                    v += term.amplitude * e * c;
                    d += term.amplitude * e * (-2.0 * term.gauss * t * c - term.omega * s);
                }
                (v, d)
            }
        }
    }
}

/// The interface plus complexification and truncation parameters.
#[derive(Debug, Clone)]
pub struct ContourSpec {
    k: f64,
    l: f64,
    delta: f64,
    epsilon: f64,
    alpha: f64,
    profile: Profile,
    t0: f64,
    l_trunc: f64,
}

impl ContourSpec {
    /// Validates 0 < delta < L, eps in (0,1), alpha >= 0, k > 0 and derives
    /// t0 = sqrt(log(1/eps))/2 and L_trunc = L + t0 + log(1/eps)/k (the
    /// alpha = 1 truncation rule; override with [`with_l_trunc`] for sweeps).
    ///
    /// [`with_l_trunc`]: ContourSpec::with_l_trunc
    pub fn new(
        k: f64,
        l: f64,
        delta: f64,
        epsilon: f64,
        alpha: f64,
        profile: Profile,
    ) -> Result<ContourSpec> {
        if !(k > 0.0) {
            return Err(Error::ContourSpec(format!("wavenumber k must be positive, got {k}")));
        }
        if !(l > 0.0) {
            return Err(Error::ContourSpec(format!("half-width L must be positive, got {l}")));
        }
        if !(delta > 0.0 && delta < l) {
            return Err(Error::ContourSpec(format!(
                "flat margin delta must satisfy 0 < delta < L, got delta={delta}, L={l}"
            )));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::ContourSpec(format!(
                "target precision epsilon must lie in (0,1), got {epsilon}"
            )));
        }
        if !(alpha >= 0.0) {
            return Err(Error::ContourSpec(format!(
                "complexification slope alpha must be nonnegative, got {alpha}"
            )));
        }
        let log_inv_eps = (1.0 / epsilon).ln();
        let t0 = log_inv_eps.sqrt() / 2.0;
        let l_trunc = l + t0 + log_inv_eps / k;
        Ok(ContourSpec { k, l, delta, epsilon, alpha, profile, t0, l_trunc })
    }

    /// Override the derived truncation point (used by endpoint sweeps and the
    /// alpha-scaled truncation rule).
    pub fn with_l_trunc(mut self, l_trunc: f64) -> Result<ContourSpec> {
        if !(l_trunc > self.l) {
            return Err(Error::ContourSpec(format!(
                "L_trunc must exceed L = {}, got {l_trunc}",
                self.l
            )));
        }
        self.l_trunc = l_trunc;
        Ok(self)
    }

    /// Truncation point satisfying k * Im x1(L_trunc) >= log(1/eps) for this
    /// spec's slope: L + t0 + log(1/eps)/(alpha k).
    pub fn l_trunc_for_decay(&self) -> Result<f64> {
        if self.alpha <= 0.0 {
            return Err(Error::ContourSpec(
                "decay-based truncation needs alpha > 0".into(),
            ));
        }
        Ok(self.l + self.t0 + (1.0 / self.epsilon).ln() / (self.alpha * self.k))
    }

    /// Gaussian-cosine bump preset (L = 10, delta = 1, eps = 1e-12, alpha = 1).
    pub fn preset_smooth_bump(k: f64) -> ContourSpec {
        ContourSpec::new(k, 10.0, 1.0, 1e-12, 1.0, Profile::smooth_bump())
            .expect("preset parameters are valid")
    }

    /// Multi-cosine rough interface preset (L = 20, delta = 1, eps = 1e-12, alpha = 1).
    pub fn preset_multi_cosine(k: f64) -> ContourSpec {
        ContourSpec::new(k, 20.0, 1.0, 1e-12, 1.0, Profile::multi_cosine())
            .expect("preset parameters are valid")
    }

    /// Fully flat contour (real axis, complexified tails), for limit checks.
    pub fn preset_flat(k: f64) -> ContourSpec {
        ContourSpec::new(k, 10.0, 1.0, 1e-12, 1.0, Profile::Flat)
            .expect("preset parameters are valid")
    }

    pub fn k(&self) -> f64 {
        self.k
    }
    pub fn l(&self) -> f64 {
        self.l
    }
    pub fn delta(&self) -> f64 {
        self.delta
    }
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn profile(&self) -> &Profile {
        &self.profile
    }
    pub fn t0(&self) -> f64 {
        self.t0
    }
    pub fn l_trunc(&self) -> f64 {
        self.l_trunc
    }

    /// Slack in the truncation rule: k * Im x1(L_trunc) - (log(1/eps) - 1).
    /// Nonnegative when the contour decays enough before the cut; sweeps that
    /// deliberately under-truncate report a negative defect.
    pub fn truncation_defect(&self) -> f64 {
        let im_end = phi_i_alpha(self.l_trunc, self);
        self.k * im_end.abs() - ((1.0 / self.epsilon).ln() - 1.0)
    }
}

/// phi(x) = -(1/2) int_x^inf erfc(t) dt = (x erfc(x) - e^{-x^2}/sqrt(pi)) / 2.
pub fn phi(x: f64) -> f64 {
    0.5 * (x * erfc(x) - (-x * x).exp() / SQRT_PI)
}

/// phi'(x) = erfc(x)/2.
pub fn phi_prime(x: f64) -> f64 {
    0.5 * erfc(x)
}

/// Imaginary tail profile phi_{i,alpha}(x) =
/// (alpha/3) (phi(3(x + L + t0)) - phi(3(L + t0 - x))); odd, monotone,
/// below eps inside |x| < L, asymptotically alpha (x - L - t0) to the right.
pub fn phi_i_alpha(x: f64, spec: &ContourSpec) -> f64 {
    let c = spec.l + spec.t0;
    spec.alpha / 3.0 * (phi(3.0 * (x + c)) - phi(3.0 * (c - x)))
}

/// d/dx phi_{i,alpha}(x) = alpha (erfc(3(x+L+t0)) + erfc(3(L+t0-x))) / 2.
pub fn phi_i_alpha_prime(x: f64, spec: &ContourSpec) -> f64 {
    let c = spec.l + spec.t0;
    spec.alpha * (phi_prime(3.0 * (x + c)) + phi_prime(3.0 * (c - x)))
}

/// Window bump psi_s(x) = 2 - erfc(2(x + s - t0)) - erfc(2(s - x - t0));
/// ~2 inside |x| < s - t0, below eps outside |x| > s.
pub fn psi(x: f64, s: f64, spec: &ContourSpec) -> f64 {
    let t0 = spec.t0;
    2.0 - (erfc(2.0 * (x + s - t0)) + erfc(2.0 * (s - x - t0)))
}

/// d/dx psi_s(x) = (4/sqrt(pi)) (e^{-4(x+s-t0)^2} - e^{-4(s-x-t0)^2}).
pub fn psi_prime(x: f64, s: f64, spec: &ContourSpec) -> f64 {
    let t0 = spec.t0;
    let a = 2.0 * (x + s - t0);
    let b = 2.0 * (s - x - t0);
    4.0 / SQRT_PI * ((-a * a).exp() - (-b * b).exp())
}

/// Contour point with its analytic first derivative.
#[derive(Debug, Clone, Copy)]
pub struct GammaPoint {
    pub point: ComplexPoint,
    /// d gamma_1 / dt
    pub d1: Complex64,
    /// d gamma_2 / dt
    pub d2: Complex64,
}

impl GammaPoint {
    /// Complex speed sqrt(gamma_1'^2 + gamma_2'^2), principal branch.
    /// Always off the branch cut for admissible contours (Re gamma_1' > 0).
    pub fn speed(&self) -> Complex64 {
        principal_sqrt(self.d1 * self.d1 + self.d2 * self.d2)
            .expect("admissible contour speed stays off the branch cut")
    }

    /// Complexified normal (gamma_2', -gamma_1') / speed; reduces to (0, -1)
    /// exactly on the flat parts.
    pub fn normal(&self) -> (Complex64, Complex64) {
        let s = self.speed();
        (self.d2 / s, -self.d1 / s)
    }
}

/// Point and analytic derivative of the (complexified) parameterization.
///
/// The perturbation is treated as exactly supported in |t| <= L and the
/// imaginary shift as exactly zero there: the window/profile functions are
/// below target precision in the regions snapped, and the snap is what makes
/// the tail kernel vanish exactly in floating point.
pub fn gamma_eval(t: f64, spec: &ContourSpec, complexified: bool) -> Result<GammaPoint> {
    if complexified && t.abs() > spec.l_trunc * (1.0 + 1e-12) {
        return Err(Error::ParameterRange { t, l_trunc: spec.l_trunc });
    }
    if t.abs() <= spec.l {
        // middle: real coordinate, windowed profile
        let s = spec.l - spec.delta;
        let (p, dp) = spec.profile.eval(t);
        let w = psi(t, s, spec);
        let dw = psi_prime(t, s, spec);
        Ok(GammaPoint {
            point: ComplexPoint::real(t, p * w),
            d1: Complex64::new(1.0, 0.0),
            d2: Complex64::new(dp * w + p * dw, 0.0),
        })
    } else {
        // tail: flat, imaginary shift on the first coordinate
        let (im, dim) = if complexified {
            (phi_i_alpha(t, spec), phi_i_alpha_prime(t, spec))
        } else {
            (0.0, 0.0)
        };
        Ok(GammaPoint {
            point: ComplexPoint::new(Complex64::new(t, im), Complex64::new(0.0, 0.0)),
            d1: Complex64::new(1.0, dim),
            d2: Complex64::new(0.0, 0.0),
        })
    }
}

/// Region tag of a panel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Left,
    Middle,
    Right,
}

impl Region {
    pub fn is_tail(self) -> bool {
        matches!(self, Region::Left | Region::Right)
    }
}

/// One 16-node panel of the discretized contour.
#[derive(Debug, Clone)]
pub struct Panel {
    pub a: f64,
    pub b: f64,
    pub t: [f64; PANEL_ORDER],
    pub points: [ComplexPoint; PANEL_ORDER],
    pub d1: [Complex64; PANEL_ORDER],
    pub d2: [Complex64; PANEL_ORDER],
    pub speeds: [Complex64; PANEL_ORDER],
    pub normals: [(Complex64, Complex64); PANEL_ORDER],
    /// Smooth quadrature weights: Gauss weight x half-length x speed.
    pub weights: [Complex64; PANEL_ORDER],
    pub region: Region,
    /// Relative Legendre tail of the geometry/speed samples.
    pub resolution: f64,
}

impl Panel {
    pub fn len(&self) -> f64 {
        self.b - self.a
    }
}

/// Panel-based Nystrom discretization of the truncated complexified contour.
#[derive(Debug, Clone)]
pub struct DiscretizedContour {
    spec: ContourSpec,
    pub panels: Vec<Panel>,
}

pub const DEFAULT_RESOLUTION_THRESHOLD: f64 = 1e-2;

/// Split [-L_trunc, L_trunc] into `n_panels` panels of near-equal length with
/// +-L always on panel boundaries, and sample the Nystrom data.
pub fn discretize(spec: &ContourSpec, n_panels: usize) -> Result<DiscretizedContour> {
    discretize_with_threshold(spec, n_panels, DEFAULT_RESOLUTION_THRESHOLD)
}

pub fn discretize_with_threshold(
    spec: &ContourSpec,
    n_panels: usize,
    resolution_threshold: f64,
) -> Result<DiscretizedContour> {
    if n_panels < 4 {
        return Err(Error::ContourSpec(format!(
            "need at least 4 panels, got {n_panels}"
        )));
    }
    let counts = panel_counts(spec, n_panels);
    let contour = discretize_with_counts(spec, counts)?;
    for (idx, panel) in contour.panels.iter().enumerate() {
        if panel.resolution > resolution_threshold {
            return Err(Error::Resolution {
                panel: idx,
                tail: panel.resolution,
                threshold: resolution_threshold,
            });
        }
    }
    Ok(contour)
}

/// Panels per region: (tail, middle, tail).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PanelCounts {
    pub tail: usize,
    pub mid: usize,
}

pub fn panel_counts(spec: &ContourSpec, n_panels: usize) -> PanelCounts {
    let tail_len = spec.l_trunc - spec.l;
    let total = 2.0 * spec.l_trunc;
    let ideal = total / n_panels as f64;
    let mut tail = ((tail_len / ideal).round() as usize).max(1);
    while n_panels < 2 * tail + 2 {
        tail -= 1;
    }
    let tail = tail.max(1);
    PanelCounts { tail, mid: n_panels - 2 * tail }
}

/// Discretize with explicit per-region panel counts (used when middle nodes
/// must coincide across contours with different truncation points).
pub fn discretize_with_counts(
    spec: &ContourSpec,
    counts: PanelCounts,
) -> Result<DiscretizedContour> {
    if counts.mid < 2 || counts.tail < 1 {
        return Err(Error::ContourSpec(format!(
            "panel counts too small: {counts:?}"
        )));
    }
    let mut breaks = Vec::with_capacity(counts.mid + 2 * counts.tail + 1);
    let l = spec.l;
    let lt = spec.l_trunc;
    for i in 0..=counts.tail {
        breaks.push(-lt + (lt - l) * i as f64 / counts.tail as f64);
    }
    for i in 1..=counts.mid {
        breaks.push(-l + 2.0 * l * i as f64 / counts.mid as f64);
    }
    for i in 1..=counts.tail {
        breaks.push(l + (lt - l) * i as f64 / counts.tail as f64);
    }

    let rule = panel_rule();
    let mut panels = Vec::with_capacity(breaks.len() - 1);
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let mid = 0.5 * (a + b);
        let region = if mid < -l {
            Region::Left
        } else if mid > l {
            Region::Right
        } else {
            Region::Middle
        };
        let half = 0.5 * (b - a);
        let mut t = [0.0; PANEL_ORDER];
        let mut points = [ComplexPoint::real(0.0, 0.0); PANEL_ORDER];
        let mut d1 = [Complex64::new(0.0, 0.0); PANEL_ORDER];
        let mut d2 = [Complex64::new(0.0, 0.0); PANEL_ORDER];
        let mut speeds = [Complex64::new(0.0, 0.0); PANEL_ORDER];
        let mut normals = [(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)); PANEL_ORDER];
        let mut weights = [Complex64::new(0.0, 0.0); PANEL_ORDER];
        for j in 0..PANEL_ORDER {
            // clamp guards the outermost node against rounding past L_trunc
            let tj = (mid + half * rule.nodes[j]).clamp(-lt, lt);
            let g = gamma_eval(tj, spec, true)?;
            t[j] = tj;
            points[j] = g.point;
            d1[j] = g.d1;
            d2[j] = g.d2;
            speeds[j] = g.speed();
            normals[j] = g.normal();
            weights[j] = speeds[j] * (rule.weights[j] * half);
        }
        let resolution = legendre_tail(&points, &speeds);
        panels.push(Panel {
            a,
            b,
            t,
            points,
            d1,
            d2,
            speeds,
            normals,
            weights,
            region,
            resolution,
        });
    }
    Ok(DiscretizedContour { spec: spec.clone(), panels })
}

/// Relative size of the last two Legendre coefficients of the sampled
/// geometry and speed; the under-resolution signal.
fn legendre_tail(points: &[ComplexPoint; PANEL_ORDER], speeds: &[Complex64; PANEL_ORDER]) -> f64 {
    let mut worst = 0.0f64;
    for component in 0..3 {
        let samples: Vec<Complex64> = (0..PANEL_ORDER)
            .map(|j| match component {
                0 => points[j].x1,
                1 => points[j].x2,
                _ => speeds[j],
            })
            .collect();
        let coefs = legendre_coefficients(&samples);
        let maxc = coefs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
        if maxc > 1e-14 {
            let tail = (coefs[PANEL_ORDER - 2].norm() + coefs[PANEL_ORDER - 1].norm()) / maxc;
            worst = worst.max(tail);
        }
    }
    worst
}

/// Discrete Legendre transform of 16 samples at the panel nodes.
fn legendre_coefficients(samples: &[Complex64]) -> [Complex64; PANEL_ORDER] {
    let rule = panel_rule();
    let mut coefs = [Complex64::new(0.0, 0.0); PANEL_ORDER];
    for (n, coef) in coefs.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..PANEL_ORDER {
            acc += samples[j] * legendre_value(n, rule.nodes[j]) * rule.weights[j];
        }
        *coef = acc * ((2.0 * n as f64 + 1.0) / 2.0);
    }
    coefs
}

fn legendre_value(n: usize, x: f64) -> f64 {
    let mut p0 = 1.0;
    if n == 0 {
        return p0;
    }
    let mut p1 = x;
    for m in 1..n {
        let mf = m as f64;
        let p2 = ((2.0 * mf + 1.0) * x * p1 - mf * p0) / (mf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    p1
}

impl DiscretizedContour {
    pub fn spec(&self) -> &ContourSpec {
        &self.spec
    }

    pub fn node_count(&self) -> usize {
        self.panels.len() * PANEL_ORDER
    }

    #[inline]
    pub fn split_index(&self, node: usize) -> (usize, usize) {
        (node / PANEL_ORDER, node % PANEL_ORDER)
    }

    pub fn node_point(&self, node: usize) -> ComplexPoint {
        let (p, j) = self.split_index(node);
        self.panels[p].points[j]
    }

    pub fn node_parameter(&self, node: usize) -> f64 {
        let (p, j) = self.split_index(node);
        self.panels[p].t[j]
    }

    pub fn node_weight(&self, node: usize) -> Complex64 {
        let (p, j) = self.split_index(node);
        self.panels[p].weights[j]
    }

    pub fn node_normal(&self, node: usize) -> (Complex64, Complex64) {
        let (p, j) = self.split_index(node);
        self.panels[p].normals[j]
    }

    pub fn node_region(&self, node: usize) -> Region {
        let (p, _) = self.split_index(node);
        self.panels[p].region
    }

    /// Near-field criterion: parameter distance below 1.5 source-panel lengths.
    pub fn is_near(&self, t: f64, panel: usize) -> bool {
        let p = &self.panels[panel];
        let d = if t < p.a {
            p.a - t
        } else if t > p.b {
            t - p.b
        } else {
            0.0
        };
        d < 1.5 * p.len()
    }

    /// Worst per-panel Legendre tail (resolution estimate metadata).
    pub fn worst_resolution(&self) -> f64 {
        self.panels.iter().map(|p| p.resolution).fold(0.0, f64::max)
    }

    pub fn middle_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.node_count()).filter(|&i| self.node_region(i) == Region::Middle)
    }

    pub fn tail_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.node_count()).filter(|&i| self.node_region(i).is_tail())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec_smooth() -> ContourSpec {
        ContourSpec::preset_smooth_bump(2.0 * std::f64::consts::PI)
    }

    #[test]
    fn phi_at_zero_closed_form() {
        // phi(0) = -1/(2 sqrt(pi)) = -0.28209479177387814347
        assert!((phi(0.0) + 0.28209479177387814347).abs() < 1e-16);
    }

    #[test]
    fn phi_vanishes_to_the_right() {
        // |phi(6)| = 8.73e-19
        assert!(phi(6.0).abs() < 1e-16);
    }

    #[test]
    fn phi_asymptote_to_the_left() {
        // adaptive integration of -erfc/2 confirms phi(x) -> x as x -> -inf
        assert!((phi(-8.0) + 8.0).abs() < 1e-14);
    }

    #[test]
    fn phi_prime_is_half_erfc() {
        for &x in &[-3.0, -0.4, 0.0, 1.2, 4.0] {
            let h = 1e-6;
            let fd = (phi(x + h) - phi(x - h)) / (2.0 * h);
            assert!((fd - phi_prime(x)).abs() < 1e-9, "x={x}");
        }
    }

    #[test]
    fn phi_i_alpha_odd_and_small_inside() {
        let spec = spec_smooth();
        assert_eq!(phi_i_alpha(0.0, &spec), 0.0);
        for &x in &[1.0, 5.0, 9.0] {
            assert_eq!(phi_i_alpha(-x, &spec), -phi_i_alpha(x, &spec));
            assert!(phi_i_alpha(x, &spec).abs() < spec.epsilon(), "x={x}");
        }
    }

    #[test]
    fn phi_i_alpha_linear_tail() {
        let spec = spec_smooth();
        let x = spec.l() + 2.0 * spec.t0() + 3.0;
        let want = spec.alpha() * (x - spec.l() - spec.t0());
        assert!((phi_i_alpha(x, &spec) - want).abs() < spec.epsilon());
    }

    #[test]
    fn psi_plateau_and_cutoff() {
        let spec = spec_smooth();
        // t0 ~ 2.628; plateau inside |x| < s - t0
        assert!((psi(0.0, 9.0, &spec) - 2.0).abs() < spec.epsilon());
        assert!(psi(9.5, 9.0, &spec).abs() < spec.epsilon());
        let x = 3.7;
        assert_eq!(psi(x, 9.0, &spec), psi(-x, 9.0, &spec));
    }

    #[test]
    fn gamma_at_zero_smooth_bump() {
        let spec = spec_smooth();
        let g = gamma_eval(0.0, &spec, false).unwrap();
        assert_eq!(g.point.x1, Complex64::new(0.0, 0.0));
        // x2(0) = psi_9(0) ~ 2 (cos 0 = 1, e^0 = 1)
        assert!((g.point.x2.re - 2.0).abs() < 2.0 * spec.epsilon());
        assert_eq!(g.point.x2.im, 0.0);
    }

    #[test]
    fn gamma_x2_always_real() {
        let spec = spec_smooth();
        for i in 0..200 {
            let t = -spec.l_trunc() + 2.0 * spec.l_trunc() * (i as f64) / 199.0;
            let g = gamma_eval(t, &spec, true).unwrap();
            assert_eq!(g.point.x2.im, 0.0);
        }
    }

    #[test]
    fn gamma_derivative_matches_finite_differences() {
        let spec = spec_smooth();
        let h = 1e-6;
        // deterministic pseudo-random sample avoiding region boundaries
        let mut state = 0x243F6A8885A308D3u64;
        let mut checked = 0;
        while checked < 100 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let u = (state >> 11) as f64 / (1u64 << 53) as f64;
            let t = -spec.l_trunc() + 2.0 * spec.l_trunc() * u;
            if (t.abs() - spec.l()).abs() < 1e-3 || t.abs() > spec.l_trunc() - 1e-3 {
                continue;
            }
            let gp = gamma_eval(t + h, &spec, true).unwrap();
            let gm = gamma_eval(t - h, &spec, true).unwrap();
            let g = gamma_eval(t, &spec, true).unwrap();
            let fd1 = (gp.point.x1 - gm.point.x1) / (2.0 * h);
            let fd2 = (gp.point.x2 - gm.point.x2) / (2.0 * h);
            assert!((fd1 - g.d1).norm() < 1e-8, "t={t}");
            assert!((fd2 - g.d2).norm() < 1e-8, "t={t}");
            checked += 1;
        }
    }

    #[test]
    fn parameter_range_enforced() {
        let spec = spec_smooth();
        assert!(gamma_eval(spec.l_trunc() + 0.5, &spec, true).is_err());
        assert!(gamma_eval(spec.l_trunc() + 0.5, &spec, false).is_ok());
    }

    #[test]
    fn node_count_arithmetic() {
        let spec = spec_smooth();
        let c = discretize(&spec, 24).unwrap();
        assert_eq!(c.node_count(), 24 * PANEL_ORDER);
    }

    #[test]
    fn alpha_zero_contour_is_real() {
        let spec =
            ContourSpec::new(2.0, 10.0, 1.0, 1e-12, 0.0, Profile::smooth_bump()).unwrap();
        let c = discretize(&spec, 16).unwrap();
        for i in 0..c.node_count() {
            assert_eq!(c.node_point(i).x1.im, 0.0);
            assert_eq!(c.node_point(i).x2.im, 0.0);
        }
    }

    #[test]
    fn tail_normals_exactly_down() {
        let spec = spec_smooth();
        let c = discretize(&spec, 24).unwrap();
        for i in c.tail_nodes() {
            let (n1, n2) = c.node_normal(i);
            assert_eq!(n1, Complex64::new(0.0, 0.0));
            assert_eq!(n2, Complex64::new(-1.0, 0.0));
        }
    }

    #[test]
    fn speeds_right_half_plane() {
        let spec = spec_smooth();
        let c = discretize(&spec, 24).unwrap();
        for p in &c.panels {
            for s in &p.speeds {
                assert!(s.re > 0.0);
            }
        }
    }

    #[test]
    fn class_condition_pairwise() {
        // sgn Re(y1-x1) = sgn Im(y1-x1) whenever either imaginary part is nonzero
        let spec = spec_smooth();
        let c = discretize(&spec, 16).unwrap();
        let pts: Vec<ComplexPoint> = (0..c.node_count()).map(|i| c.node_point(i)).collect();
        for (i, x) in pts.iter().enumerate() {
            for y in pts.iter().skip(i + 1) {
                if x.x1.im != 0.0 || y.x1.im != 0.0 {
                    let dre = y.x1.re - x.x1.re;
                    let dim = y.x1.im - x.x1.im;
                    assert!(
                        dre.signum() == dim.signum() || dim == 0.0 || dre == 0.0,
                        "violated at {x:?}, {y:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn imaginary_part_monotone() {
        let spec = spec_smooth();
        let mut prev = f64::NEG_INFINITY;
        for i in 0..10_000 {
            let t = -spec.l_trunc() + 2.0 * spec.l_trunc() * (i as f64) / 9999.0;
            let g = gamma_eval(t, &spec, true).unwrap();
            assert!(g.point.x1.im >= prev, "t={t}");
            prev = g.point.x1.im;
        }
    }

    #[test]
    fn real_profile_flat_near_edges() {
        let spec = spec_smooth();
        for i in 0..100 {
            let t = spec.l() - spec.delta() + spec.delta() * (i as f64) / 99.0;
            let g = gamma_eval(t, &spec, false).unwrap();
            assert!(g.point.x2.norm() < 10.0 * spec.epsilon(), "t={t}");
        }
    }

    #[test]
    fn truncation_rule_satisfied_by_presets() {
        for spec in [
            ContourSpec::preset_smooth_bump(2.0 * std::f64::consts::PI),
            ContourSpec::preset_multi_cosine(2.0 * std::f64::consts::PI),
        ] {
            assert!(spec.truncation_defect() >= 0.0, "{}", spec.truncation_defect());
        }
    }

    #[test]
    fn oddness_of_imaginary_part_exact() {
        let spec = spec_smooth();
        for i in 1..50 {
            let t = spec.l_trunc() * (i as f64) / 50.0;
            let gp = gamma_eval(t, &spec, true).unwrap();
            let gm = gamma_eval(-t, &spec, true).unwrap();
            assert_eq!(gp.point.x1.im, -gm.point.x1.im);
        }
    }

    #[test]
    fn under_resolution_is_reported() {
        let spec = ContourSpec::preset_multi_cosine(2.0 * std::f64::consts::PI);
        // 4 panels over a 54-unit range with a wavelength-1 profile
        match discretize(&spec, 4) {
            Err(Error::Resolution { .. }) => {}
            other => panic!("expected resolution failure, got {other:?}"),
        }
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(ContourSpec::new(0.0, 10.0, 1.0, 1e-12, 1.0, Profile::Flat).is_err());
        assert!(ContourSpec::new(1.0, 10.0, 11.0, 1e-12, 1.0, Profile::Flat).is_err());
        assert!(ContourSpec::new(1.0, 10.0, 1.0, 2.0, 1.0, Profile::Flat).is_err());
        assert!(ContourSpec::new(1.0, 10.0, 1.0, 1e-12, -0.5, Profile::Flat).is_err());
    }
}
