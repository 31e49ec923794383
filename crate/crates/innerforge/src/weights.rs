//! Increasing weights `alpha`, the metric `d_alpha`, regularity diagnostics,
//! and alpha-Beurling densities.
//!
//! A weight is a smooth strictly increasing function normalized by
//! `alpha(0) = 0`. The derivative `alpha'` is always available in closed
//! form; the antiderivative is evaluated in closed form where one exists and
//! otherwise from an eagerly built monotone cache refined to relative
//! accuracy `1e-10`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default exclusion radius: regularity conditions are only enforced for
/// `|x| >= R`.
pub const DEFAULT_EXCLUSION_RADIUS: f64 = 1.0;

/// Density threshold `1/(2 pi)` separating admissible from refused lattices.
pub const DENSITY_THRESHOLD: f64 = 1.0 / (2.0 * std::f64::consts::PI);

#[derive(Debug, Error)]
pub enum WeightError {
    #[error("point {x} outside evaluation domain [{lo}, {hi}]")]
    Window { x: f64, lo: f64, hi: f64 },
    #[error("non-finite value while evaluating {what} at x = {x}")]
    NonFinite { what: &'static str, x: f64 },
    #[error("invalid weight parameter: {0}")]
    InvalidParam(String),
    #[error("requested alpha-length {r} exceeds window alpha-length {max}")]
    WindowTooSmall { r: f64, max: f64 },
    #[error("lattice is empty")]
    EmptyLattice,
}

/// A closed interval on the real line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub a: f64,
    pub b: f64,
}

impl Window {
    pub fn new(a: f64, b: f64) -> Self {
        assert!(a < b, "window endpoints must be ordered");
        Self { a, b }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }

    pub fn len(&self) -> f64 {
        self.b - self.a
    }

    pub fn is_empty(&self) -> bool {
        self.a >= self.b
    }
}

/// Weight family with `alpha'` in closed form.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Family {
    /// `alpha(x) = scale * x`.
    Linear { scale: f64 },
    /// `alpha'(x) = scale * <x>^kappa` with `<x> = sqrt(1 + x^2)`, `kappa > -1`.
    Power { kappa: f64, scale: f64 },
    /// `alpha'` given on a grid, linearly interpolated and clamped outside.
    Sampled { samples: Vec<[f64; 2]> },
    /// `alpha' = sum of coeff * alpha_i'` over the terms.
    Sum { terms: Vec<SumTerm> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SumTerm {
    pub coeff: f64,
    #[serde(flatten)]
    pub family: Family,
}

impl Family {
    fn validate(&self) -> Result<(), WeightError> {
        match self {
            Family::Linear { scale } => {
                if !(scale.is_finite() && *scale > 0.0) {
                    return Err(WeightError::InvalidParam(format!(
                        "linear scale must be positive, got {scale}"
                    )));
                }
            }
            Family::Power { kappa, scale } => {
                if !(kappa.is_finite() && *kappa > -1.0) {
                    return Err(WeightError::InvalidParam(format!(
                        "power exponent must exceed -1, got {kappa}"
                    )));
                }
                if !(scale.is_finite() && *scale > 0.0) {
                    return Err(WeightError::InvalidParam(format!(
                        "power scale must be positive, got {scale}"
                    )));
                }
            }
            Family::Sampled { samples } => {
                if samples.len() < 2 {
                    return Err(WeightError::InvalidParam(
                        "sampled family needs at least two samples".into(),
                    ));
                }
                for w in samples.windows(2) {
                    if !(w[0][0] < w[1][0]) {
                        return Err(WeightError::InvalidParam(format!(
                            "sample abscissae must be strictly increasing near x = {}",
                            w[1][0]
                        )));
                    }
                }
                if samples.iter().any(|s| !s[0].is_finite() || !s[1].is_finite()) {
                    return Err(WeightError::InvalidParam("non-finite sample".into()));
                }
            }
            Family::Sum { terms } => {
                if terms.is_empty() {
                    return Err(WeightError::InvalidParam("empty sum".into()));
                }
                for t in terms {
                    t.family.validate()?;
                }
            }
        }
        Ok(())
    }

    /// `alpha'(x)` in closed form (sampled families interpolate).
    fn deriv(&self, x: f64) -> f64 {
        match self {
            Family::Linear { scale } => *scale,
            Family::Power { kappa, scale } => scale * (1.0 + x * x).powf(kappa / 2.0),
            Family::Sampled { samples } => interp_clamped(samples, x),
            Family::Sum { terms } => terms.iter().map(|t| t.coeff * t.family.deriv(x)).sum(),
        }
    }

    /// `alpha''(x)`; sampled families use the interpolant's segment slope.
    fn deriv2(&self, x: f64) -> f64 {
        match self {
            Family::Linear { .. } => 0.0,
            Family::Power { kappa, scale } => {
                scale * kappa * x * (1.0 + x * x).powf(kappa / 2.0 - 1.0)
            }
            Family::Sampled { samples } => interp_slope(samples, x),
            Family::Sum { terms } => terms.iter().map(|t| t.coeff * t.family.deriv2(x)).sum(),
        }
    }

    /// Closed-form antiderivative with `alpha(0) = 0`, when one exists.
    fn antideriv(&self, x: f64) -> Option<f64> {
        match self {
            Family::Linear { scale } => Some(scale * x),
            Family::Power { kappa, scale } => {
                // nonnegative even integer kappa: (1+t^2)^(k/2) is a polynomial
                let k = kappa.round();
                if (kappa - k).abs() < 1e-12 && k >= 0.0 && (k as i64) % 2 == 0 {
                    let half = (k as i64) / 2;
                    let mut acc = 0.0;
                    // (1+t^2)^half = sum binom(half, j) t^(2j)
                    let mut binom = 1.0f64;
                    for j in 0..=half {
                        acc += binom * x.powi(2 * j as i32 + 1) / (2 * j + 1) as f64;
                        binom *= (half - j) as f64 / (j + 1) as f64;
                    }
                    Some(scale * acc)
                } else {
                    None
                }
            }
            Family::Sampled { .. } => None,
            Family::Sum { terms } => {
                let mut acc = 0.0;
                for t in terms {
                    acc += t.coeff * t.family.antideriv(x)?;
                }
                Some(acc)
            }
        }
    }

    fn has_closed_antideriv(&self) -> bool {
        self.antideriv(1.0).is_some()
    }
}

fn interp_clamped(samples: &[[f64; 2]], x: f64) -> f64 {
    let n = samples.len();
    if x <= samples[0][0] {
        return samples[0][1];
    }
    if x >= samples[n - 1][0] {
        return samples[n - 1][1];
    }
    let i = samples.partition_point(|s| s[0] <= x) - 1;
    let (x0, y0) = (samples[i][0], samples[i][1]);
    let (x1, y1) = (samples[i + 1][0], samples[i + 1][1]);
    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
}

fn interp_slope(samples: &[[f64; 2]], x: f64) -> f64 {
    let n = samples.len();
    if x <= samples[0][0] || x >= samples[n - 1][0] {
        return 0.0;
    }
    let i = samples.partition_point(|s| s[0] <= x) - 1;
    (samples[i + 1][1] - samples[i][1]) / (samples[i + 1][0] - samples[i][0])
}

/// Monotone antiderivative cache: Simpson increments on a refined grid, with
/// cubic Hermite evaluation using the exact derivative at the query point.
#[derive(Debug, Clone)]
struct Cache {
    xs: Vec<f64>,
    vals: Vec<f64>,
}

impl Cache {
    fn build(family: &Family, domain: Window) -> Result<Self, WeightError> {
        // refine each panel until the Simpson increment is converged to 1e-11
        // relative, then accumulate outward from 0.
        let mut knots = vec![0.0f64];
        if domain.a < 0.0 {
            knots.insert(0, domain.a);
        }
        if domain.b > 0.0 {
            knots.push(domain.b);
        }
        // seed with a coarse grid so curvature is seen
        let seed = 64usize;
        let mut xs: Vec<f64> = Vec::new();
        for w in knots.windows(2) {
            for i in 0..seed {
                xs.push(w[0] + (w[1] - w[0]) * i as f64 / seed as f64);
            }
        }
        xs.push(*knots.last().unwrap());
        if let Family::Sampled { samples } = family {
            for s in samples {
                if s[0] > xs[0] && s[0] < *xs.last().unwrap() {
                    xs.push(s[0]);
                }
            }
            xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            xs.dedup();
        }
        // adaptive refinement of the panel increments
        let mut panels: Vec<(f64, f64, f64)> = Vec::new(); // (a, b, integral)
        for w in xs.windows(2) {
            refine_panel(family, w[0], w[1], &mut panels, 0)?;
        }
        panels.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap());
        let mut grid = Vec::with_capacity(panels.len() + 1);
        let mut cum = Vec::with_capacity(panels.len() + 1);
        grid.push(panels[0].0);
        cum.push(0.0);
        for p in &panels {
            grid.push(p.1);
            cum.push(cum.last().unwrap() + p.2);
        }
        // shift so that alpha(0) = 0; 0 is a grid knot by construction
        let zero_idx = grid
            .iter()
            .position(|&g| g == 0.0)
            .expect("cache grid contains 0");
        let zero_val = cum[zero_idx];
        let vals: Vec<f64> = cum.iter().map(|c| c - zero_val).collect();
        // increments can round to zero when the dynamic range is extreme
        // (e.g. e^x over a wide window); only an actual decrease is fatal
        for w in vals.windows(2) {
            if w[0] > w[1] {
                return Err(WeightError::NonFinite {
                    what: "antiderivative cache (not monotone)",
                    x: f64::NAN,
                });
            }
        }
        Ok(Self { xs: grid, vals })
    }

    fn eval(&self, family: &Family, x: f64) -> f64 {
        let n = self.xs.len();
        let i = self
            .xs
            .partition_point(|&g| g <= x)
            .clamp(1, n - 1)
            - 1;
        let (x0, x1) = (self.xs[i], self.xs[i + 1]);
        let (v0, v1) = (self.vals[i], self.vals[i + 1]);
        let h = x1 - x0;
        let t = (x - x0) / h;
        let (d0, d1) = (family.deriv(x0), family.deriv(x1));
        // cubic Hermite on (value, derivative) data
        let h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
        let h10 = t * (1.0 - t) * (1.0 - t);
        let h01 = t * t * (3.0 - 2.0 * t);
        let h11 = t * t * (t - 1.0);
        h00 * v0 + h10 * h * d0 + h01 * v1 + h11 * h * d1
    }
}

fn refine_panel(
    family: &Family,
    a: f64,
    b: f64,
    out: &mut Vec<(f64, f64, f64)>,
    depth: usize,
) -> Result<(), WeightError> {
    let whole = simpson(family, a, b);
    let m = 0.5 * (a + b);
    let left = simpson(family, a, m);
    let right = simpson(family, m, b);
    if !whole.is_finite() {
        return Err(WeightError::NonFinite {
            what: "alpha' during cache build",
            x: m,
        });
    }
    let err = (left + right - whole).abs();
    if depth >= 28 || err <= 1e-11 * (left + right).abs().max(1e-300) {
        out.push((a, m, left));
        out.push((m, b, right));
        return Ok(());
    }
    refine_panel(family, a, m, out, depth + 1)?;
    refine_panel(family, m, b, out, depth + 1)
}

fn simpson(family: &Family, a: f64, b: f64) -> f64 {
    let m = 0.5 * (a + b);
    (b - a) / 6.0 * (family.deriv(a) + 4.0 * family.deriv(m) + family.deriv(b))
}

/// An increasing weight with evaluation domain and eager antiderivative
/// cache. Immutable after construction; all evaluators are pure.
#[derive(Debug, Clone)]
pub struct Weight {
    family: Family,
    domain: Window,
    cache: Option<Cache>,
}

impl Weight {
    /// Build a weight over `domain` (which is extended to contain 0 so the
    /// normalization `alpha(0) = 0` is anchored inside the cache).
    pub fn new(family: Family, domain: Window) -> Result<Self, WeightError> {
        family.validate()?;
        let domain = Window::new(domain.a.min(0.0), domain.b.max(0.0));
        // alpha' > 0 on probe points
        let probes = 257;
        for i in 0..=probes {
            let x = domain.a + domain.len() * i as f64 / probes as f64;
            let d = family.deriv(x);
            if !d.is_finite() {
                return Err(WeightError::NonFinite { what: "alpha'", x });
            }
            if d <= 0.0 {
                return Err(WeightError::InvalidParam(format!(
                    "alpha'({x}) = {d} is not positive"
                )));
            }
        }
        let cache = if family.has_closed_antideriv() {
            None
        } else {
            Some(Cache::build(&family, domain)?)
        };
        Ok(Self {
            family,
            domain,
            cache,
        })
    }

    /// Build over `window` extended by at least `pad_alpha` of alpha-length
    /// on each side (used for tail continuations).
    pub fn with_alpha_padding(
        family: Family,
        window: Window,
        pad_alpha: f64,
    ) -> Result<Self, WeightError> {
        family.validate()?;
        let lo = extend_by_alpha(&family, window.a, -pad_alpha);
        let hi = extend_by_alpha(&family, window.b, pad_alpha);
        Self::new(family, Window::new(lo, hi))
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn domain(&self) -> Window {
        self.domain
    }

    fn check_window(&self, x: f64) -> Result<(), WeightError> {
        if !self.domain.contains(x) {
            return Err(WeightError::Window {
                x,
                lo: self.domain.a,
                hi: self.domain.b,
            });
        }
        Ok(())
    }

    /// `(alpha(x), alpha'(x), alpha''(x))`.
    pub fn eval(&self, x: f64) -> Result<(f64, f64, f64), WeightError> {
        self.check_window(x)?;
        let a = match &self.cache {
            None => self.family.antideriv(x).unwrap(),
            Some(c) => c.eval(&self.family, x),
        };
        let d1 = self.family.deriv(x);
        let d2 = self.family.deriv2(x);
        if !(a.is_finite() && d1.is_finite() && d2.is_finite()) {
            return Err(WeightError::NonFinite { what: "alpha", x });
        }
        Ok((a, d1, d2))
    }

    /// `alpha(x)` alone.
    pub fn alpha(&self, x: f64) -> Result<f64, WeightError> {
        Ok(self.eval(x)?.0)
    }

    /// `alpha'(x)` alone (closed form, never touches the cache).
    pub fn alpha1(&self, x: f64) -> Result<f64, WeightError> {
        self.check_window(x)?;
        Ok(self.family.deriv(x))
    }

    /// The metric `d_alpha(x, y) = |alpha(x) - alpha(y)|`.
    pub fn d_alpha(&self, x: f64, y: f64) -> Result<f64, WeightError> {
        Ok((self.alpha(x)? - self.alpha(y)?).abs())
    }

    /// The alpha-length of an interval, `alpha(b) - alpha(a)`.
    pub fn alpha_length(&self, iv: Window) -> Result<f64, WeightError> {
        if iv.a > iv.b {
            return Err(WeightError::InvalidParam(format!(
                "interval endpoints out of order: [{}, {}]",
                iv.a, iv.b
            )));
        }
        Ok(self.alpha(iv.b)? - self.alpha(iv.a)?)
    }

    /// Solve `alpha(x) = v` on the domain by safeguarded Newton.
    pub fn invert_alpha(&self, v: f64) -> Result<f64, WeightError> {
        let (mut lo, mut hi) = (self.domain.a, self.domain.b);
        let (va, vb) = (self.alpha(lo)?, self.alpha(hi)?);
        if v < va || v > vb {
            return Err(WeightError::Window {
                x: v,
                lo: va,
                hi: vb,
            });
        }
        let mut x = lo + (hi - lo) * (v - va) / (vb - va);
        for _ in 0..80 {
            let fx = self.alpha(x)? - v;
            if fx.abs() <= 1e-13 * (1.0 + v.abs()) {
                return Ok(x);
            }
            if fx > 0.0 {
                hi = x;
            } else {
                lo = x;
            }
            let step = fx / self.family.deriv(x);
            let next = x - step;
            x = if next > lo && next < hi {
                next
            } else {
                0.5 * (lo + hi)
            };
        }
        Ok(x)
    }
}

fn extend_by_alpha(family: &Family, start: f64, pad: f64) -> f64 {
    // coarse outward march using the closed-form derivative; accuracy is not
    // needed here, only that the accumulated alpha-length covers |pad|.
    let sign = pad.signum();
    let target = pad.abs();
    let mut x = start;
    let mut acc = 0.0;
    while acc < target {
        let d = family.deriv(x).max(1e-12);
        let step = ((target - acc) / d).min(0.25 * (1.0 + x.abs()).max(1.0));
        let step = step.max(1e-9);
        let xm = x + sign * 0.5 * step;
        acc += family.deriv(xm) * step;
        x += sign * step;
    }
    x
}

/// Fitted comparability/doubling constants with pass/fail flags.
#[derive(Debug, Clone, Serialize)]
pub struct RegularityReport {
    /// comparability constants over probe pairs with `d_alpha <= 1`
    pub m: f64,
    pub m_probe: (f64, f64),
    pub big_m: f64,
    pub big_m_probe: (f64, f64),
    /// doubling constant `sup |alpha''| / alpha'^2`
    pub c_doubling: f64,
    pub c_probe: f64,
    /// exclusion radius used
    pub exclusion_radius: f64,
    /// lower growth fit `c_hat <x>^kappa_hat <= alpha'`
    pub kappa_hat: f64,
    pub c_hat: f64,
    /// upper growth fit `alpha' <= C_hat <x>^K0_hat`
    pub k0_hat: f64,
    pub upper_c_hat: f64,
    pub comparability_pass: bool,
    pub doubling_pass: bool,
    pub lower_growth_pass: bool,
    pub probes: usize,
    pub seed: u64,
}

impl RegularityReport {
    pub fn all_pass(&self) -> bool {
        self.comparability_pass && self.doubling_pass && self.lower_growth_pass
    }
}

/// Estimate the regular-locally-doubling constants over seeded stratified
/// probes. Divergence is flagged by comparing fits on the inner half-window
/// against the full window.
pub fn regularity_report(
    w: &Weight,
    window: Window,
    probes: usize,
    exclusion_radius: f64,
    seed: u64,
) -> Result<RegularityReport, WeightError> {
    use rand::SeedableRng;
    let probes = probes.max(100);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = exclusion_radius;

    let stratified: Vec<f64> = (0..probes)
        .map(|i| {
            let cell = window.a + window.len() * i as f64 / probes as f64;
            let width = window.len() / probes as f64;
            cell + width * rng.gen::<f64>()
        })
        .filter(|x| x.abs() >= r && window.contains(*x))
        .collect();

    // comparability: pair each probe with a point at d_alpha <= 1
    let mut m = f64::INFINITY;
    let mut big_m: f64 = 0.0;
    let mut m_probe = (f64::NAN, f64::NAN);
    let mut big_m_probe = (f64::NAN, f64::NAN);
    let mut inner_m = f64::INFINITY;
    let mut inner_big_m: f64 = 0.0;
    let inner = Window::new(window.a / 2.0, window.b / 2.0);
    for &x in &stratified {
        let ax = w.alpha(x)?;
        let u: f64 = rng.gen::<f64>() * 2.0 - 1.0;
        let target = ax + u;
        let y = match w.invert_alpha(target) {
            Ok(y) => y,
            Err(_) => continue,
        };
        if y.abs() < r || !window.contains(y) {
            continue;
        }
        let ratio = w.alpha1(x)? / w.alpha1(y)?;
        if ratio < m {
            m = ratio;
            m_probe = (x, y);
        }
        if ratio > big_m {
            big_m = ratio;
            big_m_probe = (x, y);
        }
        if inner.contains(x) && inner.contains(y) {
            inner_m = inner_m.min(ratio);
            inner_big_m = inner_big_m.max(ratio);
        }
    }

    // doubling constant
    let mut c: f64 = 0.0;
    let mut c_probe = f64::NAN;
    let mut inner_c: f64 = 0.0;
    for &x in &stratified {
        let (_, d1, d2) = w.eval(x)?;
        let q = d2.abs() / (d1 * d1);
        if q > c {
            c = q;
            c_probe = x;
        }
        if inner.contains(x) {
            inner_c = inner_c.max(q);
        }
    }

    // growth exponents by least squares of log alpha' against log <x>,
    // then exact envelope constants over the probes
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut sx = 0.0;
    let mut sy = 0.0;
    let mut n = 0.0;
    for &x in &stratified {
        let lx = (1.0 + x * x).ln() / 2.0;
        let ly = w.alpha1(x)?.ln();
        sxx += lx * lx;
        sxy += lx * ly;
        sx += lx;
        sy += ly;
        n += 1.0;
    }
    let det = n * sxx - sx * sx;
    let kappa_hat = if det.abs() > 1e-12 {
        (n * sxy - sx * sy) / det
    } else {
        0.0
    };
    let mut c_hat = f64::INFINITY;
    let mut upper_c_hat: f64 = 0.0;
    for &x in &stratified {
        let px = (1.0 + x * x).powf(kappa_hat / 2.0);
        c_hat = c_hat.min(w.alpha1(x)? / px);
        upper_c_hat = upper_c_hat.max(w.alpha1(x)? / px);
    }
    let k0_hat = kappa_hat.max(0.0);

    // divergence flags: the full-window extreme must not dwarf the
    // inner-half extreme
    let div = 10.0;
    let comparability_pass = m.is_finite()
        && big_m.is_finite()
        && m > 0.0
        && (inner_big_m <= 0.0 || big_m / inner_big_m < div)
        && (!inner_m.is_finite() || inner_m / m < div);
    let doubling_pass = c.is_finite() && (inner_c <= 1e-300 && c <= 1e-12 || c / inner_c.max(1e-300) < div || c < 1e3);
    let lower_growth_pass = c_hat.is_finite() && c_hat > 0.0;

    Ok(RegularityReport {
        m,
        m_probe,
        big_m,
        big_m_probe,
        c_doubling: c,
        c_probe,
        exclusion_radius: r,
        kappa_hat,
        c_hat,
        k0_hat,
        upper_c_hat,
        comparability_pass,
        doubling_pass,
        lower_growth_pass,
        probes,
        seed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DensityKind {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Serialize)]
pub struct DensityRow {
    pub r: f64,
    pub ratio: f64,
    pub interval_left: f64,
    pub interval_right: f64,
}

/// Per-window extremal count ratios and the extrapolated limit.
#[derive(Debug, Clone, Serialize)]
pub struct DensityReport {
    pub kind: DensityKind,
    pub rows: Vec<DensityRow>,
    /// ratio at the largest requested r
    pub limit_estimate: f64,
    /// last three ratios, largest r last
    pub trend: Vec<f64>,
    /// `limit_estimate - 1/(2 pi)`
    pub margin_vs_threshold: f64,
}

fn extremal_ratio(
    alphas: &[f64],
    lo: f64,
    hi: f64,
    r: f64,
    maximize: bool,
) -> (f64, f64, f64) {
    // N(a) = #{ s_i in [a, a+r] } is piecewise constant with events at
    // s_i - r (count up) and just after s_i (count down); evaluate between
    // consecutive events, clamped to [lo, hi - r].
    let mut events: Vec<f64> = Vec::with_capacity(2 * alphas.len() + 2);
    events.push(lo);
    events.push(hi - r);
    for &s in alphas {
        for cand in [s, s - r] {
            if cand >= lo && cand <= hi - r {
                events.push(cand);
            }
        }
    }
    events.sort_by(|a, b| a.partial_cmp(b).unwrap());
    events.dedup();
    let count_at = |a: f64| -> usize {
        let i0 = alphas.partition_point(|&s| s < a);
        let i1 = alphas.partition_point(|&s| s <= a + r);
        i1 - i0
    };
    let mut best = if maximize { -1.0 } else { f64::INFINITY };
    let mut best_a = lo;
    let mut consider = |a: f64| {
        let c = count_at(a) as f64 / r;
        if (maximize && c > best) || (!maximize && c < best) {
            best = c;
            best_a = a;
        }
    };
    for (i, &e) in events.iter().enumerate() {
        consider(e);
        if i + 1 < events.len() {
            consider(0.5 * (e + events[i + 1]));
        }
    }
    (best, best_a, best_a + r)
}

fn density_report(
    w: &Weight,
    lattice_points: &[f64],
    window: Window,
    r_list: &[f64],
    kind: DensityKind,
) -> Result<DensityReport, WeightError> {
    if lattice_points.is_empty() {
        return Err(WeightError::EmptyLattice);
    }
    let lo = w.alpha(window.a)?;
    let hi = w.alpha(window.b)?;
    let alphas: Vec<f64> = lattice_points
        .iter()
        .map(|&p| w.alpha(p))
        .collect::<Result<_, _>>()?;
    let mut rows = Vec::with_capacity(r_list.len());
    for &r in r_list {
        if !(r > 0.0) {
            return Err(WeightError::InvalidParam(format!("r must be positive, got {r}")));
        }
        if r > hi - lo {
            return Err(WeightError::WindowTooSmall { r, max: hi - lo });
        }
        let (ratio, a, b) = extremal_ratio(&alphas, lo, hi, r, kind == DensityKind::Upper);
        rows.push(DensityRow {
            r,
            ratio,
            interval_left: w.invert_alpha(a)?,
            interval_right: w.invert_alpha(b)?,
        });
    }
    rows.sort_by(|p, q| p.r.partial_cmp(&q.r).unwrap());
    let limit_estimate = rows.last().map(|r| r.ratio).unwrap_or(f64::NAN);
    let trend = rows
        .iter()
        .rev()
        .take(3)
        .map(|r| r.ratio)
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .collect();
    Ok(DensityReport {
        kind,
        rows,
        limit_estimate,
        trend,
        margin_vs_threshold: limit_estimate - DENSITY_THRESHOLD,
    })
}

/// Sliding-window maximum of `#(Lambda ∩ I)/r` over intervals of
/// alpha-length `r` inside the window, one row per requested `r`.
pub fn upper_density(
    w: &Weight,
    lattice_points: &[f64],
    window: Window,
    r_list: &[f64],
) -> Result<DensityReport, WeightError> {
    density_report(w, lattice_points, window, r_list, DensityKind::Upper)
}

/// As [`upper_density`] with the minimum in place of the maximum.
pub fn lower_density(
    w: &Weight,
    lattice_points: &[f64],
    window: Window,
    r_list: &[f64],
) -> Result<DensityReport, WeightError> {
    density_report(w, lattice_points, window, r_list, DensityKind::Lower)
}
