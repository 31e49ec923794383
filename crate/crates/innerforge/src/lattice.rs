//! Level-set lattices of increasing phase targets, counting functions,
//! alpha-separation statistics, and density regularization.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::weights::{Weight, WeightError, Window};

const TWO_PI: f64 = 2.0 * PI;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("phase target is not increasing near x = {x} (f = {fx} after {fprev})")]
    Monotonicity { x: f64, fx: f64, fprev: f64 },
    #[error("root count mismatch: endpoint formula predicts {expected}, solver found {found}")]
    RootCount { expected: usize, found: usize },
    #[error("lattice needs at least {need} points, got {got}")]
    Size { need: usize, got: usize },
    #[error("density precondition failed: block ratio {measured} >= required {required} at alpha-length {r}")]
    Threshold {
        measured: f64,
        required: f64,
        r: f64,
    },
    #[error("cannot place a point with separation {sep_min} inside block [{block_lo}, {block_hi})")]
    Packing {
        block_lo: f64,
        block_hi: f64,
        sep_min: f64,
    },
    #[error("lattice file line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Weight(#[from] WeightError),
}

/// A strictly increasing phase target with derivative, on a window.
#[derive(Clone)]
pub struct PhaseFunction {
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    df: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    window: Window,
}

impl std::fmt::Debug for PhaseFunction {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fm.debug_struct("PhaseFunction")
            .field("window", &self.window)
            .finish()
    }
}

impl PhaseFunction {
    pub fn new(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        df: impl Fn(f64) -> f64 + Send + Sync + 'static,
        window: Window,
    ) -> Self {
        Self {
            f: Arc::new(f),
            df: Arc::new(df),
            window,
        }
    }

    /// The phase `f = alpha` of a weight.
    pub fn from_weight(w: &Weight, window: Window) -> Self {
        let w1 = w.clone();
        let w2 = w.clone();
        Self::new(
            move |x| w1.alpha(x).expect("phase eval inside window"),
            move |x| w2.alpha1(x).expect("phase deriv inside window"),
            window,
        )
    }

    /// The affine phase `f(x) = c_alpha * alpha(x) + c_lin * x`.
    pub fn affine_of_weight(w: &Weight, c_alpha: f64, c_lin: f64, window: Window) -> Self {
        let w1 = w.clone();
        let w2 = w.clone();
        Self::new(
            move |x| c_alpha * w1.alpha(x).expect("phase eval inside window") + c_lin * x,
            move |x| c_alpha * w2.alpha1(x).expect("phase deriv inside window") + c_lin,
            window,
        )
    }

    /// Linear interpolation of phase samples; the derivative is the segment
    /// slope.
    pub fn from_samples(xs: Vec<f64>, vals: Vec<f64>, window: Window) -> Self {
        assert_eq!(xs.len(), vals.len());
        assert!(xs.len() >= 2);
        let xs2 = xs.clone();
        let vals2 = vals.clone();
        Self::new(
            move |x| sample_interp(&xs, &vals, x),
            move |x| sample_slope(&xs2, &vals2, x),
            window,
        )
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn deriv(&self, x: f64) -> f64 {
        (self.df)(x)
    }

    pub fn window(&self) -> Window {
        self.window
    }
}

fn sample_interp(xs: &[f64], vals: &[f64], x: f64) -> f64 {
    let n = xs.len();
    if x <= xs[0] {
        return vals[0] + (x - xs[0]) * (vals[1] - vals[0]) / (xs[1] - xs[0]);
    }
    if x >= xs[n - 1] {
        return vals[n - 1] + (x - xs[n - 1]) * (vals[n - 1] - vals[n - 2]) / (xs[n - 1] - xs[n - 2]);
    }
    let i = xs.partition_point(|&g| g <= x) - 1;
    vals[i] + (vals[i + 1] - vals[i]) * (x - xs[i]) / (xs[i + 1] - xs[i])
}

fn sample_slope(xs: &[f64], vals: &[f64], x: f64) -> f64 {
    let n = xs.len();
    let i = if x <= xs[0] {
        0
    } else if x >= xs[n - 1] {
        n - 2
    } else {
        xs.partition_point(|&g| g <= x) - 1
    };
    (vals[i + 1] - vals[i]) / (xs[i + 1] - xs[i])
}

/// A sorted finite point set with window, derived midpoints, and the
/// `lambda_0 = smallest nonnegative point` indexing convention.
#[derive(Debug, Clone, Serialize)]
pub struct Lattice {
    points: Vec<f64>,
    window: Window,
    /// vec position of `lambda_0`; when the window has no nonnegative point
    /// this is 0 and `anchored` is false
    zero_pos: usize,
    anchored: bool,
}

impl Lattice {
    pub fn new(points: Vec<f64>, window: Window) -> Result<Self, LatticeError> {
        for w in points.windows(2) {
            if !(w[0] < w[1]) {
                return Err(LatticeError::Monotonicity {
                    x: w[1],
                    fx: w[1],
                    fprev: w[0],
                });
            }
        }
        let zero_pos = points.partition_point(|&p| p < 0.0);
        let anchored = zero_pos < points.len();
        Ok(Self {
            points,
            window,
            zero_pos: if anchored { zero_pos } else { 0 },
            anchored,
        })
    }

    /// Arithmetic lattice `gap * Z` restricted to the window.
    pub fn arithmetic(gap: f64, window: Window) -> Self {
        assert!(gap > 0.0);
        let mut pts = Vec::new();
        // start one step early to absorb rounding at the boundary
        let mut k = (window.a / gap).ceil() as i64 - 1;
        loop {
            let x = k as f64 * gap;
            if x > window.b {
                break;
            }
            if x >= window.a {
                pts.push(x);
            }
            k += 1;
        }
        Self::new(pts, window).expect("arithmetic lattice is sorted")
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Midpoints `omega_n` of consecutive gaps.
    pub fn midpoints(&self) -> Vec<f64> {
        self.points
            .windows(2)
            .map(|w| 0.5 * (w[0] + w[1]))
            .collect()
    }

    /// Whether the indexing anchor `lambda_0 >= 0` exists in the window.
    pub fn anchored(&self) -> bool {
        self.anchored
    }

    /// Vec position of the point carrying signed index 0.
    pub fn zero_pos(&self) -> usize {
        self.zero_pos
    }

    /// Signed index of the vec position `i` (so `lambda_0` has index 0).
    pub fn signed_index(&self, i: usize) -> i64 {
        i as i64 - self.zero_pos as i64
    }

    /// Counting function: `#{lambda in (0, x]}` for `x >= 0` and
    /// `-#{lambda in [x, 0)}` for `x < 0`. Nondecreasing with `n(0) = 0`;
    /// a lattice point at 0 itself never contributes a jump.
    pub fn counting(&self, x: f64) -> i64 {
        if x >= 0.0 {
            let hi = self.points.partition_point(|&p| p <= x);
            let lo = self.points.partition_point(|&p| p <= 0.0);
            (hi - lo) as i64
        } else {
            let hi = self.points.partition_point(|&p| p < 0.0);
            let lo = self.points.partition_point(|&p| p < x);
            -((hi - lo) as i64)
        }
    }

    /// Parse the plain-text lattice format: one decimal literal per line,
    /// strictly increasing.
    pub fn from_text(text: &str, window: Window) -> Result<Self, LatticeError> {
        let mut pts = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let v: f64 = line.parse().map_err(|e| LatticeError::Parse {
                line: i + 1,
                msg: format!("{e}"),
            })?;
            if let Some(&prev) = pts.last() {
                if v <= prev {
                    return Err(LatticeError::Parse {
                        line: i + 1,
                        msg: format!("not strictly increasing: {v} after {prev}"),
                    });
                }
            }
            pts.push(v);
        }
        Self::new(pts, window)
    }
}

/// All solutions of `f(lambda) = 0 mod 2 pi` in the window, bracketed by the
/// endpoint index formula and polished by safeguarded Newton.
pub fn level_set(f: &PhaseFunction, window: Window, tol: f64) -> Result<Lattice, LatticeError> {
    assert!(tol > 0.0);
    // monotonicity probe
    let probes = 2048;
    let mut prev = f.eval(window.a);
    for i in 1..=probes {
        let x = window.a + window.len() * i as f64 / probes as f64;
        let fx = f.eval(x);
        if fx <= prev {
            return Err(LatticeError::Monotonicity { x, fx, fprev: prev });
        }
        prev = fx;
    }
    let fa = f.eval(window.a);
    let fb = f.eval(window.b);
    // k range for f = 2 pi k, with a small guard for endpoint roots
    let snap = |v: f64| {
        let r = v.round();
        if (v - r).abs() < 1e-9 {
            r
        } else {
            v
        }
    };
    let k_min = snap(fa / TWO_PI).ceil() as i64;
    let k_max = snap(fb / TWO_PI).floor() as i64;
    let expected = if k_max >= k_min {
        (k_max - k_min + 1) as usize
    } else {
        0
    };
    let mut pts = Vec::with_capacity(expected);
    let mut lo = window.a;
    for k in k_min..=k_max {
        let target = TWO_PI * k as f64;
        let root = monotone_solve(f, lo, window.b, target, tol)?;
        pts.push(root);
        lo = root;
    }
    if pts.len() != expected {
        return Err(LatticeError::RootCount {
            expected,
            found: pts.len(),
        });
    }
    Lattice::new(pts, window)
}

/// Safeguarded Newton inside a bracket, bisection fallback, 60-iteration cap.
fn monotone_solve(
    f: &PhaseFunction,
    mut lo: f64,
    mut hi: f64,
    target: f64,
    tol: f64,
) -> Result<f64, LatticeError> {
    let flo = f.eval(lo) - target;
    let fhi = f.eval(hi) - target;
    if flo.abs() <= tol * f.deriv(lo).abs().max(1.0) {
        return Ok(lo);
    }
    if fhi.abs() <= tol * f.deriv(hi).abs().max(1.0) {
        return Ok(hi);
    }
    if flo > 0.0 || fhi < 0.0 {
        return Err(LatticeError::RootCount {
            expected: 1,
            found: 0,
        });
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..60 {
        let fx = f.eval(x) - target;
        let dx = f.deriv(x);
        if fx.abs() <= tol * dx.abs().max(1.0) {
            return Ok(x);
        }
        if fx > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let newton = x - fx / dx;
        x = if dx > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Ok(x)
}

/// `(delta_sep, gap_max)`: min and max of `d_alpha` over consecutive pairs.
pub fn separation_stats(w: &Weight, lat: &Lattice) -> Result<(f64, f64), LatticeError> {
    if lat.len() < 2 {
        return Err(LatticeError::Size {
            need: 2,
            got: lat.len(),
        });
    }
    let mut min = f64::INFINITY;
    let mut max: f64 = 0.0;
    for pair in lat.points().windows(2) {
        let d = w.d_alpha(pair[0], pair[1])?;
        min = min.min(d);
        max = max.max(d);
    }
    Ok((min, max))
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockInfo {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    pub target: usize,
}

/// Output of the density regularization: the enlarged lattice, block
/// bookkeeping, and the measured deficit sup.
#[derive(Debug, Clone, Serialize)]
pub struct RegularizationResult {
    pub lattice: Lattice,
    pub added: Vec<f64>,
    pub delta: f64,
    pub n0: f64,
    pub sep_min: f64,
    pub blocks: Vec<BlockInfo>,
    /// measured sup of `|(1-delta) alpha - 2 pi n|` over block endpoints and
    /// both one-sided values at every lattice point
    pub measured_sup: f64,
    /// coarse certified bound `2 pi N0 + 2 pi + 1`
    pub certified_bound: f64,
    pub min_separation: f64,
}

/// Default lower bound on the number of inserted points; a finite window
/// stands in for the infinite enlargement the unbounded construction uses.
pub const DEFAULT_MIN_ADDED: usize = 3;

/// Enlarge `Lambda` to `Lambda'` so that `(1-delta) alpha - 2 pi n` stays
/// bounded, keeping pairwise alpha-separation at least `sep_min`, with at
/// least [`DEFAULT_MIN_ADDED`] inserted points.
///
/// Points are inserted where the running deficit `(1-delta) alpha(x) -
/// 2 pi n(x)` crosses `+pi` (sweeping right from 0, mirrored leftward), with
/// a lookahead that leaves the drop to an existing point when one is close
/// enough in `d_alpha`. This keeps the sawtooth inside `(-2 pi, 2 pi)` away
/// from clusters of the original lattice.
pub fn regularize(
    w: &Weight,
    lat: &Lattice,
    delta: f64,
    n0: f64,
    sep_min: f64,
) -> Result<RegularizationResult, LatticeError> {
    regularize_with_min(w, lat, delta, n0, sep_min, DEFAULT_MIN_ADDED)
}

/// [`regularize`] with an explicit lower bound on `|Lambda' \ Lambda|`.
/// Forced extra insertions (only taken when the deficit sweep added fewer)
/// split the largest remaining alpha-gaps and may push the measured sup past
/// the sweep's `2 pi` level; the reported sup stays honest.
pub fn regularize_with_min(
    w: &Weight,
    lat: &Lattice,
    delta: f64,
    n0: f64,
    sep_min: f64,
    min_added: usize,
) -> Result<RegularizationResult, LatticeError> {
    assert!(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
    assert!(n0 > 0.0 && sep_min > 0.0);
    let window = lat.window();
    let total = w.alpha_length(window)?;

    // density precondition: #(Lambda ∩ I) < (1-delta) alpha(I)/(2 pi) over a
    // geometric family of alpha-lengths >= N0
    if !lat.is_empty() {
        let mut r = n0.min(total);
        loop {
            let rep = crate::weights::upper_density(w, lat.points(), window, &[r])?;
            let measured = rep.rows[0].ratio;
            let required = (1.0 - delta) / TWO_PI;
            if measured >= required {
                return Err(LatticeError::Threshold {
                    measured,
                    required,
                    r,
                });
            }
            if r >= total {
                break;
            }
            r = (2.0 * r).min(total);
        }
    }

    // work in s = alpha(x) coordinates
    let s_lo = w.alpha(window.a)?;
    let s_hi = w.alpha(window.b)?;
    let mut s_pts: Vec<f64> = lat
        .points()
        .iter()
        .map(|&p| w.alpha(p))
        .collect::<Result<_, _>>()?;
    let orig: Vec<f64> = s_pts.clone();
    let slope = 1.0 - delta;
    let theta = PI;
    let g_skip = PI / slope;
    let mut added_s: Vec<f64> = Vec::new();

    // rightward sweep from 0
    {
        let mut s = 0.0_f64.max(s_lo);
        let mut d = slope * s; // n(x) = 0 until the first positive point
        let mut i = s_pts.partition_point(|&p| p <= s);
        let mut last = s;
        while s < s_hi {
            let nxt = if i < s_pts.len() { s_pts[i] } else { f64::INFINITY };
            let trig = s + (theta - d) / slope;
            if nxt <= trig {
                if nxt > s_hi {
                    break;
                }
                d += slope * (nxt - s) - TWO_PI;
                s = nxt;
                last = nxt;
                i += 1;
                continue;
            }
            if trig >= s_hi {
                break;
            }
            let too_close = nxt - trig < g_skip || trig - last < sep_min || nxt - trig < sep_min;
            if too_close {
                if nxt > s_hi {
                    break;
                }
                d += slope * (nxt - s) - TWO_PI;
                s = nxt;
                last = nxt;
                i += 1;
                continue;
            }
            s_pts.insert(i, trig);
            added_s.push(trig);
            i += 1;
            d = theta - TWO_PI;
            s = trig;
            last = trig;
        }
    }
    // leftward sweep from 0
    {
        let mut s = 0.0_f64.min(s_hi);
        let mut d = slope * s;
        let mut i = s_pts.partition_point(|&p| p < s);
        let mut last = s;
        while s > s_lo {
            let nxt = if i > 0 { s_pts[i - 1] } else { f64::NEG_INFINITY };
            let trig = s - (theta + d) / slope;
            if nxt >= trig {
                if nxt < s_lo {
                    break;
                }
                d -= slope * (s - nxt) - TWO_PI;
                s = nxt;
                last = nxt;
                i -= 1;
                continue;
            }
            if trig <= s_lo {
                break;
            }
            let too_close = trig - nxt < g_skip || last - trig < sep_min || trig - nxt < sep_min;
            if too_close {
                if nxt < s_lo {
                    break;
                }
                d -= slope * (s - nxt) - TWO_PI;
                s = nxt;
                last = nxt;
                i -= 1;
                continue;
            }
            s_pts.insert(i, trig);
            added_s.push(trig);
            d = -(theta - TWO_PI);
            s = trig;
            last = trig;
        }
    }

    // forced extras when the sweep added fewer than the configured minimum:
    // split the largest alpha-gaps that keep the separation
    while added_s.len() < min_added {
        let bounds: Vec<f64> = std::iter::once(s_lo)
            .chain(s_pts.iter().copied())
            .chain(std::iter::once(s_hi))
            .collect();
        let mut best = None;
        let mut best_len = 2.0 * sep_min;
        for pair in bounds.windows(2) {
            let len = pair[1] - pair[0];
            if len > best_len {
                best_len = len;
                best = Some(0.5 * (pair[0] + pair[1]));
            }
        }
        match best {
            Some(p) => {
                let i = s_pts.partition_point(|&q| q < p);
                s_pts.insert(i, p);
                added_s.push(p);
            }
            None => {
                return Err(LatticeError::Packing {
                    block_lo: s_lo,
                    block_hi: s_hi,
                    sep_min,
                });
            }
        }
    }

    // map back to x
    let mut pts: Vec<f64> = Vec::with_capacity(s_pts.len());
    let orig_x = lat.points();
    for &sv in &s_pts {
        // reuse original x when this s came from an original point
        match orig.binary_search_by(|p| p.partial_cmp(&sv).unwrap()) {
            Ok(k) => pts.push(orig_x[k]),
            Err(_) => pts.push(w.invert_alpha(sv)?),
        }
    }
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    let out = Lattice::new(pts, window)?;

    // separation check on the result
    let mut min_sep = f64::INFINITY;
    for pair in s_pts.windows(2) {
        min_sep = min_sep.min(pair[1] - pair[0]);
    }
    if min_sep < sep_min * (1.0 - 1e-9) {
        // only inserted points are under our control; original clusters are
        // reported, not fatal
        let tight = s_pts
            .windows(2)
            .find(|p| p[1] - p[0] < sep_min * (1.0 - 1e-9))
            .map(|p| (p[0], p[1]))
            .unwrap_or((0.0, 0.0));
        let was_inserted = |v: f64| added_s.contains(&v);
        if was_inserted(tight.0) || was_inserted(tight.1) {
            return Err(LatticeError::Packing {
                block_lo: tight.0,
                block_hi: tight.1,
                sep_min,
            });
        }
    }

    // block bookkeeping anchored at 0
    let mut blocks = Vec::new();
    let mut edges = vec![0.0_f64.max(s_lo)];
    while *edges.last().unwrap() + n0 <= s_hi + 1e-12 {
        let e = edges.last().unwrap() + n0;
        edges.push(e);
    }
    let mut neg_edges = vec![0.0_f64.min(s_hi)];
    while *neg_edges.last().unwrap() - n0 >= s_lo - 1e-12 {
        let e = neg_edges.last().unwrap() - n0;
        neg_edges.push(e);
    }
    neg_edges.reverse();
    neg_edges.pop();
    let all_edges: Vec<f64> = neg_edges.into_iter().chain(edges).collect();
    for pair in all_edges.windows(2) {
        let count = s_pts
            .iter()
            .filter(|&&p| p >= pair[0] && p < pair[1])
            .count();
        let target = ((1.0 - delta) * (pair[1] - pair[0]) / TWO_PI).floor() as usize;
        blocks.push(BlockInfo {
            lo: w.invert_alpha(pair[0])?,
            hi: w.invert_alpha(pair[1])?,
            count,
            target,
        });
    }

    // measured sup at block endpoints and both sides of every point
    let deficit = |x: f64| -> Result<f64, LatticeError> {
        Ok(slope * w.alpha(x)? - TWO_PI * out.counting(x) as f64)
    };
    let mut sup: f64 = 0.0;
    for b in &blocks {
        sup = sup.max(deficit(b.lo)?.abs());
        sup = sup.max(deficit(b.hi)?.abs());
    }
    for &p in out.points() {
        let at = deficit(p)?;
        let other = if p >= 0.0 { at + TWO_PI } else { at - TWO_PI };
        sup = sup.max(at.abs()).max(other.abs());
    }
    let certified = TWO_PI * n0 + TWO_PI + 1.0;

    Ok(RegularizationResult {
        lattice: out,
        added: added_s
            .iter()
            .map(|&sv| w.invert_alpha(sv))
            .collect::<Result<_, _>>()?,
        delta,
        n0,
        sep_min,
        blocks,
        measured_sup: sup,
        certified_bound: certified,
        min_separation: min_sep,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::Family;

    fn linear(win: Window) -> Weight {
        Weight::new(Family::Linear { scale: 1.0 }, win).unwrap()
    }

    #[test]
    fn level_set_identity_phase() {
        let win = Window::new(-10.0, 10.0);
        let f = PhaseFunction::new(|x| x, |_| 1.0, win);
        let lat = level_set(&f, win, 1e-12).unwrap();
        let expect = [-TWO_PI, 0.0, TWO_PI];
        assert_eq!(lat.len(), 3);
        for (p, e) in lat.points().iter().zip(expect.iter()) {
            assert!((p - e).abs() < 1e-10);
        }
    }

    #[test]
    fn level_set_double_speed() {
        let win = Window::new(0.0, 7.0);
        let f = PhaseFunction::new(|x| 2.0 * x, |_| 2.0, win);
        let lat = level_set(&f, win, 1e-12).unwrap();
        let expect = [0.0, PI, TWO_PI];
        assert_eq!(lat.len(), 3);
        for (p, e) in lat.points().iter().zip(expect.iter()) {
            assert!((p - e).abs() < 1e-10);
        }
    }

    #[test]
    fn level_set_sine_perturbed() {
        // f(x) = x + 0.5 sin x on [0, 8]: roots at 0 and at the solution of
        // lambda + 0.5 sin lambda = 2 pi, which is exactly 2 pi
        let win = Window::new(0.0, 8.0);
        let f = PhaseFunction::new(|x| x + 0.5 * x.sin(), |x| 1.0 + 0.5 * x.cos(), win);
        let lat = level_set(&f, win, 1e-13).unwrap();
        assert_eq!(lat.len(), 2);
        // independent bisection oracle
        let mut lo = 5.0_f64;
        let mut hi = 7.0_f64;
        for _ in 0..200 {
            let m: f64 = 0.5 * (lo + hi);
            if m + 0.5 * m.sin() - TWO_PI > 0.0 {
                hi = m;
            } else {
                lo = m;
            }
        }
        let oracle = 0.5 * (lo + hi);
        assert!((lat.points()[1] - oracle).abs() < 1e-11);
        assert!((oracle - TWO_PI).abs() < 1e-12);
    }

    #[test]
    fn level_set_rejects_nonmonotone() {
        let win = Window::new(-3.0, 3.0);
        let f = PhaseFunction::new(|x| x * x, |x| 2.0 * x, win);
        assert!(matches!(
            level_set(&f, win, 1e-10),
            Err(LatticeError::Monotonicity { .. })
        ));
    }

    #[test]
    fn counting_conventions() {
        let win = Window::new(-30.0, 30.0);
        let lat = Lattice::arithmetic(TWO_PI, win);
        assert_eq!(lat.counting(7.0), 1);
        assert_eq!(lat.counting(0.0), 0);
        assert_eq!(lat.counting(-7.0), -1);
        // nondecreasing with unit jumps at nonzero points
        for (i, &p) in lat.points().iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            let before = lat.counting(p - 1e-9);
            let after = lat.counting(p + 1e-9);
            assert_eq!(after - before, 1, "point #{i} at {p}");
        }
    }

    #[test]
    fn midpoints_interleave() {
        let win = Window::new(-20.0, 20.0);
        let lat = Lattice::arithmetic(3.0, win);
        let mids = lat.midpoints();
        for (i, m) in mids.iter().enumerate() {
            assert!(lat.points()[i] < *m && *m < lat.points()[i + 1]);
        }
    }

    #[test]
    fn separation_examples() {
        let win = Window::new(-30.0, 30.0);
        let w = linear(win);
        let lat = Lattice::arithmetic(TWO_PI, win);
        let (d, g) = separation_stats(&w, &lat).unwrap();
        assert!((d - TWO_PI).abs() < 1e-9 && (g - TWO_PI).abs() < 1e-9);

        let lat = Lattice::new(vec![0.0, 1.0, 3.0], win).unwrap();
        let (d, g) = separation_stats(&w, &lat).unwrap();
        assert_eq!((d, g), (1.0, 2.0));

        let single = Lattice::new(vec![1.0], win).unwrap();
        assert!(matches!(
            separation_stats(&w, &single),
            Err(LatticeError::Size { .. })
        ));
    }

    #[test]
    fn separation_power_weight_grows() {
        let win = Window::new(-30.0, 30.0);
        let w = Weight::new(Family::Power { kappa: 2.0, scale: 1.0 }, win).unwrap();
        let lat = Lattice::arithmetic(TWO_PI, win);
        let (d, g) = separation_stats(&w, &lat).unwrap();
        // the smallest alpha-gap is the one nearest the origin
        let near = w.d_alpha(0.0, TWO_PI).unwrap();
        assert!((d - near).abs() < 1e-9);
        assert!(g > d);
    }

    #[test]
    fn regularize_four_pi_lattice() {
        let win = Window::new(-200.0, 200.0);
        let w = linear(win);
        let lat = Lattice::arithmetic(4.0 * PI, win);
        let res = regularize(&w, &lat, 0.1, 20.0, 1.0).unwrap();
        // containment
        for p in lat.points() {
            assert!(res.lattice.points().iter().any(|q| (q - p).abs() < 1e-12));
        }
        // separation and measured bound
        assert!(res.min_separation >= 1.0 - 1e-9);
        assert!(
            res.measured_sup <= TWO_PI + 1.0,
            "sup = {}",
            res.measured_sup
        );
        assert!(res.measured_sup <= res.certified_bound);
        assert!(!res.added.is_empty());
    }

    #[test]
    fn regularize_empty_lattice() {
        let win = Window::new(-50.0, 50.0);
        let w = linear(win);
        let lat = Lattice::new(vec![], win).unwrap();
        let res = regularize(&w, &lat, 0.5, TWO_PI, 0.5).unwrap();
        assert!(res.lattice.len() >= 3);
        assert!(res.measured_sup <= TWO_PI + 1.0);
    }

    #[test]
    fn regularize_refuses_dense_lattice() {
        let win = Window::new(-100.0, 100.0);
        let w = linear(win);
        let lat = Lattice::arithmetic(PI, win);
        assert!(matches!(
            regularize(&w, &lat, 0.1, 20.0, 1.0),
            Err(LatticeError::Threshold { .. })
        ));
    }

    #[test]
    fn lattice_text_parse() {
        let win = Window::new(-10.0, 10.0);
        let lat = Lattice::from_text("-1.5\n0.25\n3e0\n", win).unwrap();
        assert_eq!(lat.points(), &[-1.5, 0.25, 3.0]);
        let err = Lattice::from_text("1.0\n0.5\n", win);
        match err {
            Err(LatticeError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
