//! Panel quadrature: Gauss-Legendre rules, adaptive integration with a flagged
//! (at worst logarithmic) singularity, and locally corrected weights for
//! near/self panel interactions of the layer kernel.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::contour::DiscretizedContour;
use crate::kernel::{kernel_g, ComplexPoint};
use crate::{Error, Result};

/// Number of nodes per panel; fixed by the discretization order.
pub const PANEL_ORDER: usize = 16;

/// Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// p-point Gauss-Legendre rule on [-1, 1], nodes strictly increasing.
///
/// Newton iteration on P_p from Chebyshev initial guesses; exact to ~1e-15
/// for p <= 64.
pub fn gauss_legendre(p: usize) -> Result<QuadratureRule> {
    if p == 0 || p > 64 {
        return Err(Error::QuadratureOrder(p));
    }
    let mut nodes = vec![0.0; p];
    let mut weights = vec![0.0; p];
    for i in 0..p.div_ceil(2) {
        // root i (from the +1 end), Chebyshev-like initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (p as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (v, d) = legendre_and_derivative(p, x);
            let dx = v / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_and_derivative(p, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[p - 1 - i] = x;
        weights[p - 1 - i] = w;
        nodes[i] = -x;
        weights[i] = w;
    }
    if p % 2 == 1 {
        nodes[p / 2] = 0.0;
        let (_, d) = legendre_and_derivative(p, 0.0);
        weights[p / 2] = 2.0 / (d * d);
    }
    Ok(QuadratureRule { nodes, weights })
}

fn legendre_and_derivative(p: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for n in 1..p {
        let nf = n as f64;
        let p2 = ((2.0 * nf + 1.0) * x * p1 - nf * p0) / (nf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let d = p as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// The panel rule, constructed once.
pub fn panel_rule() -> &'static QuadratureRule {
    static RULE: OnceLock<QuadratureRule> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(PANEL_ORDER).expect("16 is a valid order"))
}

/// Location of an integrand singularity for adaptive refinement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Singularity {
    None,
    /// Parameter value toward which bisection concentrates. Values inside the
    /// integration interval split it; values outside merely bias refinement.
    At(f64),
}

const MAX_DEPTH: usize = 40;

/// Adaptive integration of a complex-valued function over [a, b] to absolute
/// tolerance `tol`, dyadic bisection with a 16-point Gauss rule per leaf.
///
/// A flagged singular point inside the interval becomes a subdivision point up
/// front so quadrature nodes never sample it.
pub fn adaptive_integrate<F>(f: F, a: f64, b: f64, tol: f64, sing: Singularity) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let mut ranges: Vec<(f64, f64, f64)> = Vec::new(); // (a, b, budget)
    match sing {
        Singularity::At(s) if s > a && s < b => {
            ranges.push((a, s, tol / 2.0));
            ranges.push((s, b, tol / 2.0));
        }
        _ => ranges.push((a, b, tol)),
    }
    let mut total = Complex64::new(0.0, 0.0);
    let mut achieved = 0.0f64;
    let mut converged = true;
    for (ra, rb, budget) in ranges {
        let (v, err, ok) = adapt_rec(&f, ra, rb, budget, 0);
        total += v;
        achieved += err;
        converged &= ok;
    }
    if converged {
        Ok(total)
    } else {
        Err(Error::QuadratureNonconvergence { best: total, achieved, requested: tol })
    }
}

fn gauss_on<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Complex64 {
    let rule = panel_rule();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        acc += f(mid + half * x) * *w;
    }
    acc * half
}

fn adapt_rec<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    depth: usize,
) -> (Complex64, f64, bool) {
    let coarse = gauss_on(f, a, b);
    let mid = 0.5 * (a + b);
    let left = gauss_on(f, a, mid);
    let right = gauss_on(f, mid, b);
    let fine = left + right;
    let err = (fine - coarse).norm();
    if err <= tol || err <= 1e-16 * fine.norm() {
        return (fine, err, true);
    }
    if depth >= MAX_DEPTH {
        return (fine, err, false);
    }
    let (lv, le, lok) = adapt_rec(f, a, mid, tol / 2.0, depth + 1);
    let (rv, re, rok) = adapt_rec(f, mid, b, tol / 2.0, depth + 1);
    (lv + rv, le + re, lok && rok)
}

/// Vector variant used for correction weights: the expensive kernel factor is
/// evaluated once per quadrature point and scattered over all 16 Lagrange
/// basis functions.
fn adapt_weights_rec(
    kernel: &dyn Fn(f64) -> Complex64,
    basis: &PanelBasis,
    a: f64,
    b: f64,
    tol: f64,
    depth: usize,
) -> ([Complex64; PANEL_ORDER], f64, bool) {
    let coarse = gauss_weights_on(kernel, basis, a, b);
    let mid = 0.5 * (a + b);
    let left = gauss_weights_on(kernel, basis, a, mid);
    let right = gauss_weights_on(kernel, basis, mid, b);
    let mut fine = [Complex64::new(0.0, 0.0); PANEL_ORDER];
    let mut err = 0.0f64;
    for j in 0..PANEL_ORDER {
        fine[j] = left[j] + right[j];
        err = err.max((fine[j] - coarse[j]).norm());
    }
    if err <= tol {
        return (fine, err, true);
    }
    if depth >= MAX_DEPTH {
        return (fine, err, false);
    }
    let (lv, le, lok) = adapt_weights_rec(kernel, basis, a, mid, tol / 2.0, depth + 1);
    let (rv, re, rok) = adapt_weights_rec(kernel, basis, mid, b, tol / 2.0, depth + 1);
    let mut out = [Complex64::new(0.0, 0.0); PANEL_ORDER];
    for j in 0..PANEL_ORDER {
        out[j] = lv[j] + rv[j];
    }
    (out, le + re, lok && rok)
}

fn gauss_weights_on(
    kernel: &dyn Fn(f64) -> Complex64,
    basis: &PanelBasis,
    a: f64,
    b: f64,
) -> [Complex64; PANEL_ORDER] {
    let rule = panel_rule();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = [Complex64::new(0.0, 0.0); PANEL_ORDER];
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        let t = mid + half * x;
        let kv = kernel(t) * (*w * half);
        let lag = basis.lagrange(t);
        for j in 0..PANEL_ORDER {
            acc[j] += kv * lag[j];
        }
    }
    acc
}

/// Barycentric Lagrange basis on a panel's parameter nodes.
pub(crate) struct PanelBasis {
    nodes: [f64; PANEL_ORDER],
    bary: [f64; PANEL_ORDER],
}

impl PanelBasis {
    pub fn for_panel(a: f64, b: f64) -> PanelBasis {
        let rule = panel_rule();
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut nodes = [0.0; PANEL_ORDER];
        for (n, x) in nodes.iter_mut().zip(&rule.nodes) {
            *n = mid + half * x;
        }
        // barycentric weights of the reference nodes scale out in the ratio,
        // so compute them directly on the mapped nodes
        let mut bary = [0.0; PANEL_ORDER];
        for j in 0..PANEL_ORDER {
            let mut prod = 1.0;
            for m in 0..PANEL_ORDER {
                if m != j {
                    prod *= nodes[j] - nodes[m];
                }
            }
            bary[j] = 1.0 / prod;
        }
        PanelBasis { nodes, bary }
    }

    /// All 16 Lagrange basis values at parameter t.
    pub fn lagrange(&self, t: f64) -> [f64; PANEL_ORDER] {
        let mut out = [0.0; PANEL_ORDER];
        // exact hit on a node
        for j in 0..PANEL_ORDER {
            if t == self.nodes[j] {
                out[j] = 1.0;
                return out;
            }
        }
        let mut denom = 0.0;
        for j in 0..PANEL_ORDER {
            out[j] = self.bary[j] / (t - self.nodes[j]);
            denom += out[j];
        }
        for v in &mut out {
            *v /= denom;
        }
        out
    }

    /// Interpolate samples given at the panel nodes.
    pub fn interpolate(&self, values: &[Complex64], t: f64) -> Complex64 {
        let lag = self.lagrange(t);
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..PANEL_ORDER {
            acc += values[j] * lag[j];
        }
        acc
    }
}

/// Corrected quadrature weights replacing the smooth rule for one
/// (target node, source panel) pair.
#[derive(Debug, Clone)]
pub struct CorrectionBlock {
    pub target: usize,
    pub panel: usize,
    pub weights: [Complex64; PANEL_ORDER],
}

/// Weights u_j with sum_j u_j sigma(t_j) ~ int_panel g(x, gamma(s)) sigma(s) speed(s) ds
/// for any degree-15 polynomial sigma, by adaptive product integration of the
/// kernel against each Lagrange basis polynomial.
pub fn correction_weights(
    contour: &DiscretizedContour,
    target: usize,
    source_panel: usize,
    k: f64,
    tol: f64,
) -> Result<CorrectionBlock> {
    let x = contour.node_point(target);
    let t_target = contour.node_parameter(target);
    let weights = target_weights(contour, &x, source_panel, k, tol, Singularity::At(t_target))?;
    Ok(CorrectionBlock { target, panel: source_panel, weights })
}

/// Same machinery for an arbitrary (possibly off-curve) target point.
pub(crate) fn target_weights(
    contour: &DiscretizedContour,
    x: &ComplexPoint,
    source_panel: usize,
    k: f64,
    tol: f64,
    sing: Singularity,
) -> Result<[Complex64; PANEL_ORDER]> {
    let panel = &contour.panels[source_panel];
    let (a, b) = (panel.a, panel.b);
    let basis = PanelBasis::for_panel(a, b);
    let spec = contour.spec();
    // errors inside the integrand (inadmissible pairs, branch cuts) poison the
    // result with NaN and are surfaced after integration rather than swallowed
    let poison = std::cell::RefCell::new(None);
    let kernel = |s: f64| -> Complex64 {
        let g = crate::contour::gamma_eval(s, spec, true).expect("panel within range");
        let speed = g.speed();
        match kernel_g(x, &g.point, g.normal(), k) {
            Ok(v) => v * speed,
            Err(e) => {
                *poison.borrow_mut() = Some(e);
                Complex64::new(f64::NAN, f64::NAN)
            }
        }
    };

    let mut ranges: Vec<(f64, f64, f64)> = Vec::new();
    match sing {
        Singularity::At(s) if s > a && s < b => {
            ranges.push((a, s, tol / 2.0));
            ranges.push((s, b, tol / 2.0));
        }
        _ => ranges.push((a, b, tol)),
    }
    let mut out = [Complex64::new(0.0, 0.0); PANEL_ORDER];
    let mut achieved = 0.0;
    let mut converged = true;
    for (ra, rb, budget) in ranges {
        let (v, err, ok) = adapt_weights_rec(&kernel, &basis, ra, rb, budget, 0);
        for j in 0..PANEL_ORDER {
            out[j] += v[j];
        }
        achieved += err;
        converged &= ok;
    }
    if let Some(e) = poison.into_inner() {
        return Err(e);
    }
    if !converged {
        return Err(Error::QuadratureNonconvergence {
            best: out.iter().sum(),
            achieved,
            requested: tol,
        });
    }
    Ok(out)
}
