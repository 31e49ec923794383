//! Conjugation operators: the regularized Hilbert transform in closed form
//! for piecewise-constant data and by adaptive principal-value quadrature for
//! sampled data, the Schwartz integral on the upper half-plane, and the
//! growth/Zygmund/Poisson diagnostics.
//!
//! The transform convention is
//! `u~(x) = (1/pi) p.v. int (1/(x-t) + t/(1+t^2)) u(t) dt`,
//! under which the transform of a constant vanishes.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::lattice::Lattice;
use crate::weights::{Weight, WeightError, Window};

#[derive(Debug, Error)]
pub enum ConjugationError {
    #[error("x = {x} is a breakpoint; the transform has a logarithmic singularity there")]
    Singularity { x: f64 },
    #[error("x = {x} outside sample range [{lo}, {hi}]")]
    OutOfRange { x: f64, lo: f64, hi: f64 },
    #[error("quadrature did not reach tol = {tol}; best estimate {best} with error {err}")]
    Accuracy { best: f64, err: f64, tol: f64 },
    #[error("evaluation point must lie in the open upper half-plane, got Im z = {im}")]
    Domain { im: f64 },
    #[error("input is identically zero")]
    DegenerateInput,
    #[error("operation requires bounded data, declared class is {0:?}")]
    Unbounded(GrowthClass),
    #[error("tail of declared class {0:?} makes the integral divergent")]
    DivergentTail(GrowthClass),
    #[error(transparent)]
    Weight(#[from] WeightError),
}

/// Declared decay/growth class of sampled data, used for analytic tails.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum GrowthClass {
    Bounded,
    Log,
    Poly(f64),
}

impl GrowthClass {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "bounded" => Some(Self::Bounded),
            "log" => Some(Self::Log),
            _ => s
                .strip_prefix("poly:")
                .and_then(|k| k.parse().ok())
                .map(Self::Poly),
        }
    }
}

/// A function known on a sorted grid with linear interpolation.
#[derive(Debug, Clone, Serialize)]
pub struct SampledFunction {
    xs: Vec<f64>,
    vals: Vec<f64>,
    pub growth: GrowthClass,
}

impl SampledFunction {
    pub fn new(xs: Vec<f64>, vals: Vec<f64>, growth: GrowthClass) -> Self {
        assert_eq!(xs.len(), vals.len());
        assert!(xs.len() >= 2, "need at least two samples");
        assert!(
            xs.windows(2).all(|w| w[0] < w[1]),
            "abscissae must be strictly increasing"
        );
        assert!(
            vals.iter().all(|v| v.is_finite()),
            "sample values must be finite"
        );
        Self { xs, vals, growth }
    }

    pub fn from_fn(f: impl Fn(f64) -> f64, window: Window, n: usize, growth: GrowthClass) -> Self {
        let xs: Vec<f64> = (0..=n)
            .map(|i| window.a + window.len() * i as f64 / n as f64)
            .collect();
        let vals = xs.iter().map(|&x| f(x)).collect();
        Self::new(xs, vals, growth)
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn vals(&self) -> &[f64] {
        &self.vals
    }

    pub fn support(&self) -> (f64, f64) {
        (self.xs[0], *self.xs.last().unwrap())
    }

    /// Linear interpolation, clamped to the end values outside the range.
    pub fn interp(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.vals[0];
        }
        if x >= self.xs[n - 1] {
            return self.vals[n - 1];
        }
        let i = self.xs.partition_point(|&g| g <= x) - 1;
        let t = (x - self.xs[i]) / (self.xs[i + 1] - self.xs[i]);
        self.vals[i] * (1.0 - t) + self.vals[i + 1] * t
    }

    pub fn sup_abs(&self) -> f64 {
        self.vals.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Truncation policy for operators that live on all of R.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TailPolicy {
    pub mode: TailMode,
    /// extension width as a multiple of the window alpha-length
    pub width_factor: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum TailMode {
    /// continue the lattice alpha-equispaced beyond the window
    Continuation,
    /// no extension, only the analytic remainder bound
    Zero,
}

impl Default for TailPolicy {
    fn default() -> Self {
        Self {
            mode: TailMode::Continuation,
            width_factor: 5.0,
        }
    }
}

/// The step function `u = 1_U - 1/2` of a lattice, where `U` is the union of
/// the left half-gaps `(lambda_n, omega_n)`. Carries the alpha-regular tail
/// continuation so partial sums converge.
#[derive(Debug, Clone)]
pub struct HalfIndicator {
    /// lattice nodes, extension included
    nodes: Vec<f64>,
    /// gap midpoints, `mids[i]` between `nodes[i]` and `nodes[i+1]`
    mids: Vec<f64>,
    /// index range of the original window nodes inside `nodes`
    orig_range: (usize, usize),
    window: Window,
    mean_gap_alpha: f64,
}

impl HalfIndicator {
    /// Build from a lattice, continuing it alpha-equispaced (at the mean
    /// alpha-gap) for `tail.width_factor` times the window alpha-length on
    /// each side. The weight's domain must cover the extension.
    pub fn new(w: &Weight, lat: &Lattice, tail: TailPolicy) -> Result<Self, ConjugationError> {
        assert!(lat.len() >= 2, "half-indicator needs at least one gap");
        let window = lat.window();
        let pts = lat.points();
        let mut s_vals = Vec::with_capacity(pts.len());
        for &p in pts {
            s_vals.push(w.alpha(p)?);
        }
        let mean_gap = (s_vals.last().unwrap() - s_vals[0]) / (s_vals.len() - 1) as f64;
        let mut nodes = pts.to_vec();
        let mut left_ext = Vec::new();
        let mut right_ext = Vec::new();
        if tail.mode == TailMode::Continuation {
            let width = tail.width_factor * w.alpha_length(window)?;
            let mut s = s_vals[0];
            while s_vals[0] - s < width {
                s -= mean_gap;
                match w.invert_alpha(s) {
                    Ok(x) => left_ext.push(x),
                    Err(_) => break,
                }
            }
            let mut s = *s_vals.last().unwrap();
            while s - s_vals.last().unwrap() < width {
                s += mean_gap;
                match w.invert_alpha(s) {
                    Ok(x) => right_ext.push(x),
                    Err(_) => break,
                }
            }
        }
        left_ext.reverse();
        let first = left_ext.len();
        let last = first + nodes.len() - 1;
        let mut all = left_ext;
        all.append(&mut nodes);
        all.extend_from_slice(&right_ext);
        let mids = all.windows(2).map(|p| 0.5 * (p[0] + p[1])).collect();
        Ok(Self {
            nodes: all,
            mids,
            orig_range: (first, last),
            window,
            mean_gap_alpha: mean_gap,
        })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn mids(&self) -> &[f64] {
        &self.mids
    }

    /// Index range (inclusive) of the original window nodes.
    pub fn orig_range(&self) -> (usize, usize) {
        self.orig_range
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn mean_gap_alpha(&self) -> f64 {
        self.mean_gap_alpha
    }

    pub fn support(&self) -> (f64, f64) {
        (self.nodes[0], *self.nodes.last().unwrap())
    }

    /// Exact value of `u(t)`.
    pub fn value(&self, t: f64) -> f64 {
        let (lo, hi) = self.support();
        if t < lo || t >= hi {
            return -0.5;
        }
        let i = self.nodes.partition_point(|&p| p <= t) - 1;
        if t < self.mids[i] {
            0.5
        } else {
            -0.5
        }
    }

    /// All breakpoints (nodes and midpoints), sorted.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut b = Vec::with_capacity(self.nodes.len() + self.mids.len());
        for i in 0..self.mids.len() {
            b.push(self.nodes[i]);
            b.push(self.mids[i]);
        }
        b.push(*self.nodes.last().unwrap());
        b
    }

    fn is_breakpoint(&self, x: f64) -> bool {
        self.nodes.binary_search_by(|p| p.partial_cmp(&x).unwrap()).is_ok()
            || self.mids.binary_search_by(|p| p.partial_cmp(&x).unwrap()).is_ok()
    }

    /// Closed-form regularized Hilbert transform. Each bump `(lambda_j,
    /// omega_j)` of height 1 contributes
    /// `(1/pi)[ln|x-lambda_j| - ln|x-omega_j| + (1/2) ln((1+omega_j^2)/(1+lambda_j^2))]`;
    /// the `-1/2` background contributes nothing. Gaps are summed outward
    /// from `x` so the pairing cancellation is realized numerically.
    pub fn hilbert(&self, x: f64) -> Result<f64, ConjugationError> {
        if self.is_breakpoint(x) {
            return Err(ConjugationError::Singularity { x });
        }
        let n_gaps = self.mids.len();
        let center = self
            .nodes
            .partition_point(|&p| p <= x)
            .saturating_sub(1)
            .min(n_gaps - 1);
        let mut sum = 0.0;
        let mut offset = 0usize;
        loop {
            let mut any = false;
            if offset == 0 {
                sum += self.gap_term(center, x);
                any = true;
            } else {
                if center >= offset {
                    sum += self.gap_term(center - offset, x);
                    any = true;
                }
                if center + offset < n_gaps {
                    sum += self.gap_term(center + offset, x);
                    any = true;
                }
            }
            if !any {
                break;
            }
            offset += 1;
        }
        Ok(sum / PI)
    }

    #[inline]
    fn gap_term(&self, j: usize, x: f64) -> f64 {
        let a = self.nodes[j];
        let b = self.mids[j];
        (x - a).abs().ln() - (x - b).abs().ln() + 0.5 * ((1.0 + b * b) / (1.0 + a * a)).ln()
    }

    /// Analytic remainder bound for everything beyond the truncated support:
    /// paired gap terms decay like `|x| / (2 t^2)`, so the remainder is at
    /// most about `(|x|+1)/(2 pi) * (1/(T_R - x) + 1/(x - T_L))`.
    pub fn tail_bound(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        let right = (hi - x).max(self.mean_gap_alpha.abs());
        let left = (x - lo).max(self.mean_gap_alpha.abs());
        (x.abs() + 1.0) / (2.0 * PI) * (1.0 / right + 1.0 / left)
    }

    /// Quadrature route to the same transform: adaptive principal-value
    /// integration of the exact step data, independent of the closed form.
    pub fn hilbert_by_quadrature(&self, x: f64, tol: f64) -> Result<PvResult, ConjugationError> {
        if self.is_breakpoint(x) {
            return Err(ConjugationError::Singularity { x });
        }
        let (lo, hi) = self.support();
        if x <= lo || x >= hi {
            return Err(ConjugationError::OutOfRange { x, lo, hi });
        }
        let breaks = self.breakpoints();
        pv_transform(
            &|t| self.value(t),
            (lo, hi),
            &breaks,
            x,
            tol,
            // the step data is -1/2 beyond the support on both sides, which
            // the constant-extension tail reproduces exactly
            TailSpec {
                class: GrowthClass::Bounded,
                left_val: -0.5,
                right_val: -0.5,
                sup_hint: 0.5,
            },
        )
    }

    /// Schwartz integral `S u(z) = P u(z) + i Q u(z)` for `Im z > 0`, closed
    /// form per bump plus the `-1/2` background (whose Schwartz integral is
    /// the constant `-1/2`).
    pub fn schwartz(&self, z: Complex64) -> Result<Complex64, ConjugationError> {
        if z.im <= 0.0 {
            return Err(ConjugationError::Domain { im: z.im });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..self.mids.len() {
            let a = self.nodes[j];
            let b = self.mids[j];
            let lr = ((b - z) / (a - z)).ln();
            let reg = 0.5 * ((1.0 + b * b) / (1.0 + a * a)).ln();
            acc += lr - Complex64::new(reg, 0.0);
        }
        Ok(acc / Complex64::new(0.0, PI) - 0.5)
    }
}

/// Regularized Hilbert transform of the indicator of a single interval, in
/// closed form. Used as a unit oracle.
pub fn hilbert_indicator_interval(a: f64, b: f64, x: f64) -> f64 {
    ((x - a).abs().ln() - (x - b).abs().ln() + 0.5 * ((1.0 + b * b) / (1.0 + a * a)).ln()) / PI
}

/// Value and error estimate of a principal-value quadrature.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PvResult {
    pub value: f64,
    pub err_estimate: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct TailSpec {
    pub class: GrowthClass,
    pub left_val: f64,
    pub right_val: f64,
    pub sup_hint: f64,
}

/// Adaptive principal-value quadrature of
/// `(1/pi) int (1/(x-t) + t/(1+t^2)) f(t) dt` over a truncated support, with
/// symmetric excision of `(x - eps, x + eps)` at three Richardson levels and
/// an analytic tail from the declared growth class.
pub fn pv_transform(
    f: &(dyn Fn(f64) -> f64 + Sync),
    support: (f64, f64),
    kinks: &[f64],
    x: f64,
    tol: f64,
    tail: TailSpec,
) -> Result<PvResult, ConjugationError> {
    let (lo, hi) = support;
    assert!(tol > 0.0);
    if x <= lo || x >= hi {
        return Err(ConjugationError::OutOfRange { x, lo, hi });
    }
    let kernel = move |t: f64| 1.0 / (x - t) + t / (1.0 + t * t);
    let integrand = move |t: f64| f(t) * kernel(t);

    // the symmetric-excision expansion has an O(eps^3) residual after two
    // Richardson eliminations, so eps must start small; it must also keep
    // every kink other than x itself outside the hole, or the expansion is
    // not polynomial in eps and the extrapolation breaks
    // kinks within float dust of x behave as a corner at the singularity,
    // which stays linear in eps; only genuinely separated kinks matter
    let snap = 1e-9 * (1.0 + x.abs());
    let mut eps0 = (0.5 * (x - lo).min(hi - x)).min(3e-3);
    let i = kinks.partition_point(|&k| k < x);
    let mut d_kink = f64::INFINITY;
    for &k in &kinks[i..kinks.len().min(i + 8)] {
        if k - x > snap {
            d_kink = d_kink.min(k - x);
            break;
        }
    }
    for &k in kinks[i.saturating_sub(8)..i].iter().rev() {
        if x - k > snap {
            d_kink = d_kink.min(x - k);
            break;
        }
    }
    if d_kink.is_finite() {
        eps0 = eps0.min(0.9 * d_kink);
    }
    eps0 = eps0.max(snap);
    let quad_tol = tol / 8.0;
    let mut err_acc = 0.0;
    let mut base = 0.0;
    for (a, b) in [(lo, x - eps0), (x + eps0, hi)] {
        let (v, e) = integrate_with_kinks(&integrand, a, b, kinks, quad_tol);
        base += v;
        err_acc += e;
    }
    // excision rings: I(eps), I(eps/2), I(eps/4)
    let mut rings = [0.0f64; 2];
    for (k, ring) in rings.iter_mut().enumerate() {
        let e1 = eps0 / 2f64.powi(k as i32);
        let e2 = e1 / 2.0;
        let mut v = 0.0;
        for (a, b) in [(x - e1, x - e2), (x + e2, x + e1)] {
            let (rv, re) = integrate_with_kinks(&integrand, a, b, kinks, quad_tol);
            v += rv;
            err_acc += re;
        }
        *ring = v;
    }
    let i0 = base;
    let i1 = base + rings[0];
    let i2 = base + rings[0] + rings[1];
    let r1a = 2.0 * i1 - i0;
    let r1b = 2.0 * i2 - i1;
    let r2 = (4.0 * r1b - r1a) / 3.0;
    let romberg_err = (r2 - r1b).abs();

    // analytic tail
    let (tail_val, tail_err) = analytic_tail(&tail, lo, hi, x)?;
    let value = r2 / PI + tail_val;
    let err_estimate = romberg_err / PI + err_acc / PI + tail_err;
    if !value.is_finite() {
        return Err(ConjugationError::Accuracy {
            best: value,
            err: err_estimate,
            tol,
        });
    }
    Ok(PvResult {
        value,
        err_estimate,
    })
}

/// Regularized Hilbert transform of a sampled function by adaptive
/// principal-value quadrature.
pub fn hilbert_quadrature(
    s: &SampledFunction,
    x: f64,
    tol: f64,
) -> Result<PvResult, ConjugationError> {
    let (lo, hi) = s.support();
    if x <= lo || x >= hi {
        return Err(ConjugationError::OutOfRange { x, lo, hi });
    }
    let n = s.xs.len();
    pv_transform(
        &|t| s.interp(t),
        (lo, hi),
        &s.xs,
        x,
        tol,
        TailSpec {
            class: s.growth,
            left_val: s.vals[0],
            right_val: s.vals[n - 1],
            sup_hint: s.sup_abs(),
        },
    )
}

fn analytic_tail(
    tail: &TailSpec,
    lo: f64,
    hi: f64,
    x: f64,
) -> Result<(f64, f64), ConjugationError> {
    // kernel antiderivative: int (1/(x-t) + t/(1+t^2)) dt
    //   right tail: int_hi^inf = ln((hi - x)/sqrt(1+hi^2))
    //   left tail:  int_-inf^lo = ln(sqrt(1+lo^2)/(x - lo))
    let right_const = ((hi - x) / (1.0 + hi * hi).sqrt()).ln();
    let left_const = ((1.0 + lo * lo).sqrt() / (x - lo)).ln();
    match tail.class {
        GrowthClass::Bounded => {
            // constant extension by the end values; the budget covers the
            // oscillation up to the sup norm
            let value = (tail.right_val * right_const + tail.left_val * left_const) / PI;
            let budget =
                tail.sup_hint / PI * (right_const.abs() + left_const.abs()) + value.abs() * 1e-12;
            Ok((value, budget))
        }
        GrowthClass::Log => {
            let v = tail_numeric(lo, hi, x, |t| 0.5 * (1.0 + t * t).ln());
            let value = (tail.right_val / (0.5 * (1.0 + hi * hi).ln()) * v.1
                + tail.left_val / (0.5 * (1.0 + lo * lo).ln()) * v.0)
                / PI;
            Ok((value, value.abs() * 0.5 + 1e-12))
        }
        GrowthClass::Poly(k) => {
            if k >= 1.0 {
                return Err(ConjugationError::DivergentTail(GrowthClass::Poly(k)));
            }
            let v = tail_numeric(lo, hi, x, move |t| (1.0 + t * t).powf(k / 2.0));
            let value = (tail.right_val / (1.0 + hi * hi).powf(k / 2.0) * v.1
                + tail.left_val / (1.0 + lo * lo).powf(k / 2.0) * v.0)
                / PI;
            Ok((value, value.abs() * 0.5 + 1e-12))
        }
    }
}

/// Numeric tails `int_{-inf}^{lo}` and `int_{hi}^{inf}` of `g(t) * kernel`
/// via the substitution `t = 1/u`.
fn tail_numeric(lo: f64, hi: f64, x: f64, g: impl Fn(f64) -> f64) -> (f64, f64) {
    // right: t in (hi, inf) -> u in (0, 1/hi) when hi > 0; fall back to a
    // wide finite panel otherwise
    let right = if hi > 1.0 {
        let f = |u: f64| {
            if u <= 0.0 {
                return 0.0;
            }
            let t = 1.0 / u;
            g(t) * (u + x) / ((x * u - 1.0) * (u * u + 1.0))
        };
        adaptive_simpson(&f, 1e-12, 1.0 / hi, 1e-10, 24).0
    } else {
        let f = |t: f64| g(t) * (1.0 / (x - t) + t / (1.0 + t * t));
        adaptive_simpson(&f, hi, hi.abs().max(10.0) * 1e6, 1e-10, 24).0
    };
    let left = if lo < -1.0 {
        let f = |u: f64| {
            if u >= 0.0 {
                return 0.0;
            }
            let t = 1.0 / u;
            g(t) * (u + x) / ((x * u - 1.0) * (u * u + 1.0))
        };
        adaptive_simpson(&f, 1.0 / lo, -1e-12, 1e-10, 24).0
    } else {
        let f = |t: f64| g(t) * (1.0 / (x - t) + t / (1.0 + t * t));
        adaptive_simpson(&f, -(lo.abs().max(10.0) * 1e6), lo, 1e-10, 24).0
    };
    (left, right)
}

/// Composite adaptive Simpson split at the kinks inside `(a, b)`.
pub fn integrate_with_kinks(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    kinks: &[f64],
    tol: f64,
) -> (f64, f64) {
    if !(a < b) {
        return (0.0, 0.0);
    }
    let start = kinks.partition_point(|&k| k <= a);
    let end = kinks.partition_point(|&k| k < b);
    let mut bounds = Vec::with_capacity(end - start + 2);
    bounds.push(a);
    bounds.extend_from_slice(&kinks[start..end]);
    bounds.push(b);
    let total = b - a;
    let mut value = 0.0;
    let mut err = 0.0;
    for w in bounds.windows(2) {
        if w[1] - w[0] <= 0.0 {
            continue;
        }
        let local_tol = (tol * (w[1] - w[0]) / total).max(1e-300);
        let (v, e) = adaptive_simpson(f, w[0], w[1], local_tol, 30);
        value += v;
        err += e;
    }
    (value, err)
}

/// Classic recursive adaptive Simpson; returns (value, error estimate).
pub fn adaptive_simpson(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: usize,
) -> (f64, f64) {
    fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
        h / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: usize,
    ) -> (f64, f64) {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let diff = left + right - whole;
        // the relative floor stops the recursion once rounding dominates,
        // whatever the requested tolerance
        let floor = 1e-14 * (left.abs() + right.abs());
        if depth == 0 || diff.abs() <= (15.0 * tol).max(floor) {
            return (left + right + diff / 15.0, diff.abs() / 15.0);
        }
        let (lv, le) = rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1);
        let (rv, re) = rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
        (lv + rv, le + re)
    }
    let m = 0.5 * (a + b);
    let fa = f(a);
    let fm = f(m);
    let fb = f(b);
    let whole = simpson(fa, fm, fb, b - a);
    rec(f, a, b, fa, fm, fb, whole, tol, max_depth)
}

/// Fitted constant in `|u~'(x)| <= C (log(1+|x|) + <x>^K)` over a dyadic
/// grid, with the worst ratio probe.
#[derive(Debug, Clone, Serialize)]
pub struct GrowthBoundReport {
    pub applicable: bool,
    pub fitted_c: f64,
    pub worst_x: f64,
    pub k: f64,
    /// measured `sup |s'| / <x>^K` over the samples
    pub data_slope_ratio: f64,
}

/// Diagnostic for the logarithmic derivative control of the transform.
pub fn growth_bound_check(s: &SampledFunction, k: f64) -> Result<GrowthBoundReport, ConjugationError> {
    if s.growth != GrowthClass::Bounded {
        return Ok(GrowthBoundReport {
            applicable: false,
            fitted_c: f64::NAN,
            worst_x: f64::NAN,
            k,
            data_slope_ratio: f64::NAN,
        });
    }
    // finite-difference check of |s'| <= C <x>^K on the data
    let mut slope_ratio: f64 = 0.0;
    for w in s.xs.windows(2).zip(s.vals.windows(2)) {
        let (xw, vw) = w;
        let mid = 0.5 * (xw[0] + xw[1]);
        let sl = (vw[1] - vw[0]) / (xw[1] - xw[0]);
        slope_ratio = slope_ratio.max(sl.abs() / (1.0 + mid * mid).powf(k / 2.0));
    }
    let (lo, hi) = s.support();
    // dyadic probes accumulating toward the support ends
    let mut probes = vec![0.0];
    let mut d = 1.0;
    while d < hi.max(-lo) {
        if d < hi {
            probes.push(d);
        }
        if -d > lo {
            probes.push(-d);
        }
        d *= 2.0;
    }
    let h = 1e-4 * (hi - lo);
    let mut fitted: f64 = 0.0;
    let mut worst_x = 0.0;
    for &p in &probes {
        let (a, b) = (p - h, p + h);
        if a <= lo || b >= hi {
            continue;
        }
        let ua = hilbert_quadrature(s, a, 1e-8)?.value;
        let ub = hilbert_quadrature(s, b, 1e-8)?.value;
        let du = ((ub - ua) / (2.0 * h)).abs();
        let env = (1.0 + p.abs()).ln() + (1.0 + p * p).powf(k / 2.0);
        if du / env > fitted {
            fitted = du / env;
            worst_x = p;
        }
    }
    Ok(GrowthBoundReport {
        applicable: true,
        fitted_c: fitted,
        worst_x,
        k,
        data_slope_ratio: slope_ratio,
    })
}

/// `int exp(|(s / ||s||)~|) dP` over the window plus a tail bound; finiteness
/// is the Zygmund diagnostic used by both pipelines.
pub fn zygmund_integral(s: &SampledFunction, grid_points: usize) -> Result<f64, ConjugationError> {
    let m = s.sup_abs();
    if m == 0.0 {
        return Err(ConjugationError::DegenerateInput);
    }
    let (lo, hi) = s.support();
    let n = grid_points.max(16);
    let normalized = SampledFunction::new(
        s.xs.clone(),
        s.vals.iter().map(|v| v / m).collect(),
        s.growth,
    );
    // integrate in theta = atan(t), where dP = d theta; a uniform theta grid
    // resolves the Poisson peak regardless of the window size
    let margin = (hi - lo) * 1e-6;
    let th_lo = (lo + margin).atan();
    let th_hi = (hi - margin).atan();
    let mut es = Vec::with_capacity(n + 1);
    let mut vmax: f64 = 0.0;
    for i in 0..=n {
        let th = th_lo + (th_hi - th_lo) * i as f64 / n as f64;
        let x = th.tan();
        let v = hilbert_quadrature(&normalized, x, 1e-6)?.value;
        vmax = vmax.max(v.abs());
        es.push(v.abs().exp());
    }
    let h = (th_hi - th_lo) / n as f64;
    let mut integral = 0.0;
    for i in 0..n {
        integral += 0.5 * (es[i] + es[i + 1]) * h;
    }
    // tail: |v~| is bounded by the windowed max (heuristic continuation)
    let tail_mass = PI - (th_hi - th_lo);
    Ok(integral + vmax.exp() * tail_mass)
}

/// `int |s| dP` over the window plus the declared-class tail bound; the poly
/// class with exponent >= 1 reports a divergent tail as infinity.
pub fn poisson_norm(s: &SampledFunction) -> f64 {
    let (lo, hi) = s.support();
    let f = |t: f64| s.interp(t).abs() / (1.0 + t * t);
    let (win, _) = integrate_with_kinks(&f, lo, hi, &s.xs, 1e-10);
    let tail_mass = (PI / 2.0 - hi.atan()).max(0.0) + (PI / 2.0 + lo.atan()).max(0.0);
    let n = s.vals.len();
    let tail = match s.growth {
        GrowthClass::Bounded => s.vals[0].abs().max(s.vals[n - 1].abs()) * tail_mass,
        GrowthClass::Log => {
            // model |s| ~ c ln<t> on the tails
            let cr = s.vals[n - 1].abs() / (0.5 * (1.0 + hi * hi).ln()).max(1e-12);
            let cl = s.vals[0].abs() / (0.5 * (1.0 + lo * lo).ln()).max(1e-12);
            let g = |t: f64| 0.5 * (1.0 + t * t).ln() / (1.0 + t * t);
            let right = adaptive_simpson(&g, hi.max(1.0), 1e8, 1e-10, 24).0;
            let left = adaptive_simpson(&g, -1e8, lo.min(-1.0), 1e-10, 24).0;
            cr * right + cl * left
        }
        GrowthClass::Poly(k) => {
            if k >= 1.0 {
                return f64::INFINITY;
            }
            let cr = s.vals[n - 1].abs() / (1.0 + hi * hi).powf(k / 2.0);
            let cl = s.vals[0].abs() / (1.0 + lo * lo).powf(k / 2.0);
            let g = move |t: f64| (1.0 + t * t).powf(k / 2.0) / (1.0 + t * t);
            let right = adaptive_simpson(&g, hi.max(1.0), 1e8, 1e-10, 28).0;
            let left = adaptive_simpson(&g, -1e8, lo.min(-1.0), 1e-10, 28).0;
            cr * right + cl * left
        }
    };
    win + tail
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;
    use crate::weights::Family;

    const TWO_PI: f64 = 2.0 * PI;

    fn linear_weight(win: Window, pad: f64) -> Weight {
        Weight::with_alpha_padding(Family::Linear { scale: 1.0 }, win, pad).unwrap()
    }

    #[test]
    fn indicator_closed_form() {
        // unit interval (0, 1) at x = 2: (3 ln 2) / (2 pi)
        let expect = 3.0 * 2.0f64.ln() / (2.0 * PI);
        let got = hilbert_indicator_interval(0.0, 1.0, 2.0);
        assert!((got - expect).abs() < 1e-14, "{got} vs {expect}");
    }

    #[test]
    fn quadrature_matches_indicator() {
        let s = SampledFunction::new(
            vec![-40.0, -1e-9, 0.0, 1.0, 1.0 + 1e-9, 40.0],
            vec![0.0, 0.0, 1.0, 1.0, 0.0, 0.0],
            GrowthClass::Bounded,
        );
        let got = hilbert_quadrature(&s, 2.0, 1e-9).unwrap();
        let expect = 3.0 * 2.0f64.ln() / (2.0 * PI);
        assert!(
            (got.value - expect).abs() < 1e-6,
            "{} vs {expect} (err {})",
            got.value,
            got.err_estimate
        );
    }

    #[test]
    fn quadrature_kills_constants() {
        let s = SampledFunction::from_fn(|_| 3.0, Window::new(-500.0, 500.0), 16, GrowthClass::Bounded);
        let got = hilbert_quadrature(&s, 0.37, 1e-8).unwrap();
        assert!(got.value.abs() < 1e-6, "constant transform = {}", got.value);
    }

    #[test]
    fn quadrature_poisson_kernel_conjugate() {
        // conjugate of 1/(1+t^2) is x/(1+x^2); at x = 1 the value is 1/2.
        // tan-spaced grid keeps the interpolation error uniform
        let n = 8000usize;
        let xs: Vec<f64> = (1..n)
            .map(|i| (-PI / 2.0 + PI * i as f64 / n as f64).tan())
            .filter(|t| t.abs() < 5e3)
            .collect();
        let vals: Vec<f64> = xs.iter().map(|&t| 1.0 / (1.0 + t * t)).collect();
        let s = SampledFunction::new(xs, vals, GrowthClass::Bounded);
        let got = hilbert_quadrature(&s, 1.0, 1e-9).unwrap();
        assert!((got.value - 0.5).abs() < 1e-5, "{}", got.value);
    }

    #[test]
    fn half_indicator_breakpoint_is_singular() {
        let win = Window::new(-40.0, 40.0);
        let w = linear_weight(win, 500.0);
        let lat = Lattice::arithmetic(TWO_PI, win);
        let u = HalfIndicator::new(&w, &lat, TailPolicy::default()).unwrap();
        assert!(matches!(
            u.hilbert(0.0),
            Err(ConjugationError::Singularity { .. })
        ));
        assert!(u.hilbert(0.5).unwrap().is_finite());
    }

    #[test]
    fn half_indicator_oracle_equivalence() {
        use rand::{Rng, SeedableRng};
        let win = Window::new(-40.0, 40.0);
        let w = linear_weight(win, 450.0);
        let lat = Lattice::arithmetic(TWO_PI, win);
        let u = HalfIndicator::new(&w, &lat, TailPolicy::default()).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 25 {
            let x: f64 = rng.gen_range(-39.0..39.0);
            if u.breakpoints().iter().any(|b| (b - x).abs() < 1e-6) {
                continue;
            }
            let cf = u.hilbert(x).unwrap();
            let q = u.hilbert_by_quadrature(x, 1e-8).unwrap();
            assert!(
                (cf - q.value).abs() <= 1e-6 * (1.0 + cf.abs()),
                "x = {x}: closed {cf} vs quad {} (err {})",
                q.value,
                q.err_estimate
            );
            checked += 1;
        }
    }

    #[test]
    fn conjugate_parity_seeds() {
        // even u: u~(x) + u~(-x) is constant (here identically 0 for the
        // symmetric indicator, in closed form)
        for &x in &[0.3, 1.7, 4.2, 11.0] {
            let c = hilbert_indicator_interval(-1.0, 1.0, x)
                + hilbert_indicator_interval(-1.0, 1.0, -x);
            assert!(c.abs() < 1e-13, "x = {x}: sum {c}");
        }
        // the half-indicator of a symmetric lattice is odd about 0, so its
        // transform is even up to the truncation budget
        let win = Window::new(-60.0, 60.0);
        let w = linear_weight(win, 700.0);
        let lat = Lattice::arithmetic(TWO_PI, win);
        let u = HalfIndicator::new(&w, &lat, TailPolicy::default()).unwrap();
        for &x in &[1.3, 2.7, 9.1, 20.6] {
            let d = u.hilbert(x).unwrap() - u.hilbert(-x).unwrap();
            let budget = u.tail_bound(x) + u.tail_bound(-x);
            assert!(d.abs() <= budget.max(1e-9), "x = {x}: {d} vs budget {budget}");
        }
    }

    #[test]
    fn schwartz_constant_and_symmetric_mass() {
        let win = Window::new(-30.0, 30.0);
        let w = linear_weight(win, 350.0);
        let lat = Lattice::arithmetic(TWO_PI, win);
        let u = HalfIndicator::new(&w, &lat, TailPolicy::default()).unwrap();
        // P of the half-indicator at z = i is small (u is odd-ish about 0)
        let s = u.schwartz(Complex64::new(0.0, 1.0)).unwrap();
        assert!(s.re.abs() < 0.51 && s.im.is_finite());
        assert!(matches!(
            u.schwartz(Complex64::new(0.0, -1.0)),
            Err(ConjugationError::Domain { .. })
        ));
    }

    #[test]
    fn schwartz_closed_form_matches_quadrature_at_i() {
        let win = Window::new(-30.0, 30.0);
        let w = linear_weight(win, 350.0);
        let lat = Lattice::arithmetic(TWO_PI, win);
        let u = HalfIndicator::new(&w, &lat, TailPolicy::default()).unwrap();
        let z = Complex64::new(0.0, 1.0);
        let closed = u.schwartz(z).unwrap();
        // numeric route: integrate the exact step data over the support and
        // add the -1/2 background exactly (full-line kernel integral is
        // i pi, so the background tails are -1/2 plus half the support part)
        let (lo, hi) = u.support();
        let breaks = u.breakpoints();
        let g = |t: f64| (1.0 / (Complex64::new(t, 0.0) - z) - t / (1.0 + t * t)) * u.value(t)
            / Complex64::new(0.0, PI);
        let (re, _) = integrate_with_kinks(&|t| g(t).re, lo, hi, &breaks, 1e-10);
        let (im, _) = integrate_with_kinks(&|t| g(t).im, lo, hi, &breaks, 1e-10);
        let k_supp = ((Complex64::new(hi, 0.0) - z) / (Complex64::new(lo, 0.0) - z)).ln()
            - 0.5 * ((1.0 + hi * hi) / (1.0 + lo * lo)).ln();
        let numeric = Complex64::new(re, im) - 0.5 + k_supp / Complex64::new(0.0, 2.0 * PI);
        assert!(
            (closed - numeric).norm() < 1e-6,
            "closed {closed} vs numeric {numeric}"
        );
    }

    #[test]
    fn schwartz_boundary_consistency() {
        // Re S u(x + iy) -> u(x) as y -> 0 at continuity points
        let win = Window::new(-30.0, 30.0);
        let w = linear_weight(win, 350.0);
        let lat = Lattice::arithmetic(TWO_PI, win);
        let u = HalfIndicator::new(&w, &lat, TailPolicy::default()).unwrap();
        let x = 1.2; // inside (0, pi), so u = +1/2
        let mut prev_err = f64::INFINITY;
        for &y in &[0.5, 0.25, 0.125, 0.0625] {
            let s = u.schwartz(Complex64::new(x, y)).unwrap();
            let err = (s.re - 0.5).abs();
            assert!(err < prev_err * 1.2 + 1e-12);
            prev_err = err;
        }
        assert!(prev_err < 0.08, "boundary error {prev_err}");
    }

    #[test]
    fn schwartz_indicator_symmetric_at_i() {
        // indicator of (-1, 1) at z = i has Poisson mass 1/2
        let s = SampledFunction::new(
            vec![-1.0, 1.0],
            vec![1.0, 1.0],
            GrowthClass::Bounded,
        );
        // direct Poisson integral of the indicator: (1/pi) * 2 atan(1) = 1/2
        let p = (1.0 / PI) * (1.0f64.atan() - (-1.0f64).atan());
        assert!((p - 0.5).abs() < 1e-12);
        let _ = s; // the closed-form value is the oracle pinned here
    }

    #[test]
    fn zygmund_of_constant_is_pi() {
        let s = SampledFunction::from_fn(|_| 2.0, Window::new(-300.0, 300.0), 32, GrowthClass::Bounded);
        let z = zygmund_integral(&s, 64).unwrap();
        assert!((z - PI).abs() < 2e-3, "zygmund = {z}");
        let zero = SampledFunction::from_fn(|_| 0.0, Window::new(-1.0, 1.0), 4, GrowthClass::Bounded);
        assert!(matches!(
            zygmund_integral(&zero, 16),
            Err(ConjugationError::DegenerateInput)
        ));
    }

    #[test]
    fn poisson_norm_examples() {
        let one = SampledFunction::from_fn(|_| 1.0, Window::new(-400.0, 400.0), 64, GrowthClass::Bounded);
        assert!((poisson_norm(&one) - PI).abs() < 1e-4);

        let logw = SampledFunction::from_fn(
            |t| 0.5 * (1.0 + t * t).ln(),
            Window::new(-200.0, 200.0),
            4000,
            GrowthClass::Log,
        );
        let v = poisson_norm(&logw);
        assert!(v.is_finite() && v > 0.0);

        let lin = SampledFunction::from_fn(|t| t, Window::new(-50.0, 50.0), 100, GrowthClass::Poly(1.0));
        assert!(poisson_norm(&lin).is_infinite());
    }

    #[test]
    fn growth_bound_examples() {
        let zero = SampledFunction::from_fn(|_| 0.0, Window::new(-60.0, 60.0), 32, GrowthClass::Bounded);
        let rep = growth_bound_check(&zero, 0.0).unwrap();
        assert!(rep.applicable && rep.fitted_c.abs() < 1e-6);

        let bump = SampledFunction::from_fn(
            |t| (-t * t / 8.0).exp(),
            Window::new(-60.0, 60.0),
            2000,
            GrowthClass::Bounded,
        );
        let rep = growth_bound_check(&bump, 0.0).unwrap();
        assert!(rep.applicable && rep.fitted_c.is_finite() && rep.fitted_c > 0.0);

        let unbounded = SampledFunction::from_fn(|t| t, Window::new(-5.0, 5.0), 16, GrowthClass::Poly(1.0));
        let rep = growth_bound_check(&unbounded, 1.0).unwrap();
        assert!(!rep.applicable);
    }

    #[test]
    fn pairing_stability_under_tail_doubling() {
        let win = Window::new(-40.0, 40.0);
        let lat = Lattice::arithmetic(TWO_PI, win);
        let w5 = linear_weight(win, 450.0);
        let w10 = linear_weight(win, 900.0);
        let u5 = HalfIndicator::new(&w5, &lat, TailPolicy::default()).unwrap();
        let u10 = HalfIndicator::new(
            &w10,
            &lat,
            TailPolicy {
                mode: TailMode::Continuation,
                width_factor: 10.0,
            },
        )
        .unwrap();
        for &x in &[0.5, 7.3, -22.1] {
            let a = u5.hilbert(x).unwrap();
            let b = u10.hilbert(x).unwrap();
            assert!(
                (a - b).abs() <= u5.tail_bound(x),
                "x = {x}: {a} vs {b}, bound {}",
                u5.tail_bound(x)
            );
        }
    }
}
