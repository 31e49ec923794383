//! The inner function `J` built from a lattice via the Krein shift formula,
//! its boundary evaluators, and `|J'|` through Clark-measure residue
//! products; Blaschke-data inner functions for use as `Theta`.
//!
//! With `u = 1_U - 1/2` on the union of left half-gaps, the definition
//! `(1+J)/(1-J) = exp(i pi S u(z))` gives on the real line
//! `(1+J)/(1-J) = exp(-pi u~(x)) * exp(i pi u(x))`, so with
//! `y = exp(-pi u~(x))`
//!
//! * on `(lambda_n, omega_n)`:   `J = (y^2 - 1 + 2iy) / (1 + y^2)`
//! * on `(omega_n, lambda_n+1)`: `J = (y^2 - 1 - 2iy) / (1 + y^2)`
//!
//! and `J = 1` at the nodes, `J = -1` at the midpoints, taken as exact
//! limits. Derivatives at the nodes come from residues of
//! `C exp(+-K u)` where `K u(z) = int u(t)/(t-z) dt`: the matching constant
//! between the two representations is exact for the truncated support once
//! the `-1/2` background tails are accounted for.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::conjugation::{ConjugationError, HalfIndicator, TailPolicy};
use crate::lattice::{level_set, Lattice, LatticeError, PhaseFunction};
use crate::weights::{Weight, WeightError};

const TWO_PI: f64 = 2.0 * PI;

#[derive(Debug, Error)]
pub enum InnerError {
    #[error("lattice needs at least {need} points to build an inner function, got {got}")]
    Size { need: usize, got: usize },
    #[error("tail continuation failed: {0}")]
    Tail(String),
    #[error("x = {x} is the node {kind} #{index}; use the dedicated node operation")]
    NodeRedirect {
        x: f64,
        kind: &'static str,
        index: usize,
    },
    #[error("x = {x} outside the lattice window [{lo}, {hi}]")]
    OutsideWindow { x: f64, lo: f64, hi: f64 },
    #[error(
        "phase/weight comparability check failed: f'/alpha' ranges over [{min}, {max}], band factor {band}"
    )]
    Hypothesis { min: f64, max: f64, band: f64 },
    #[error("index {index} out of range for {what} ({len} entries)")]
    Index {
        index: usize,
        what: &'static str,
        len: usize,
    },
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Conjugation(#[from] ConjugationError),
}

/// The constructed inner function: extended lattice data, matching constant,
/// cached Clark masses and residue products. Immutable after build; all
/// evaluators are pure.
#[derive(Debug, Clone)]
pub struct InnerJ {
    u: HalfIndicator,
    lattice: Lattice,
    /// log of the matching constant `C` in `(1+J)/(1-J) = C exp(K u)`
    log_cstar: f64,
    /// `|J'(lambda_i)|` for every extended node index `i` (edge nodes 0 and
    /// last excluded, stored as NaN)
    jp_nodes: Vec<f64>,
    /// `|J'(omega_i)|` for every extended gap index `i`
    jp_mids: Vec<f64>,
    /// Clark masses `sigma_1({lambda_i}) = 2 pi / |J'(lambda_i)|`
    sigma1: Vec<f64>,
    /// dual masses `sigma_-1({omega_i}) = 2 pi / |J'(omega_i)|`
    sigma_m1: Vec<f64>,
    /// vec index (into the extended nodes) of `lambda_0`
    zero_node: usize,
    tail: TailPolicy,
}

/// Where a point sits inside its lattice gap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum GapSide {
    Left,
    Right,
}

impl InnerJ {
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn half_indicator(&self) -> &HalfIndicator {
        &self.u
    }

    pub fn tail_policy(&self) -> TailPolicy {
        self.tail
    }

    /// Matching constant `C` (real and positive for the truncated support).
    pub fn cstar(&self) -> f64 {
        self.log_cstar.exp()
    }

    /// Extended node array (window nodes plus tail continuation).
    pub fn nodes(&self) -> &[f64] {
        self.u.nodes()
    }

    pub fn mids(&self) -> &[f64] {
        self.u.mids()
    }

    /// Index range of the window nodes inside the extended array.
    pub fn window_node_range(&self) -> (usize, usize) {
        self.u.orig_range()
    }

    /// Clark mass at window node `n` (window-relative index).
    pub fn sigma1_at(&self, n: usize) -> Result<f64, InnerError> {
        let i = self.window_index(n, "window node")?;
        Ok(self.sigma1[i])
    }

    /// Dual Clark mass at window midpoint `n`.
    pub fn sigma_m1_at(&self, n: usize) -> Result<f64, InnerError> {
        let i = self.window_index(n, "window midpoint")?;
        if i >= self.sigma_m1.len() {
            return Err(InnerError::Index {
                index: n,
                what: "window midpoint",
                len: self.sigma_m1.len(),
            });
        }
        Ok(self.sigma_m1[i])
    }

    fn window_index(&self, n: usize, what: &'static str) -> Result<usize, InnerError> {
        let (first, last) = self.u.orig_range();
        let i = first + n;
        if i > last {
            return Err(InnerError::Index {
                index: n,
                what,
                len: last - first + 1,
            });
        }
        Ok(i)
    }

    fn check_window(&self, x: f64) -> Result<(), InnerError> {
        let w = self.lattice.window();
        if !w.contains(x) {
            return Err(InnerError::OutsideWindow {
                x,
                lo: w.a,
                hi: w.b,
            });
        }
        Ok(())
    }

    /// Locate the gap containing `x` in the extended arrays; exact node or
    /// midpoint hits are reported separately.
    fn locate(&self, x: f64) -> Located {
        let nodes = self.u.nodes();
        match nodes.binary_search_by(|p| p.partial_cmp(&x).unwrap()) {
            Ok(i) => Located::Node(i),
            Err(ins) => {
                let gap = ins - 1; // window containment guarantees interior
                let mid = self.u.mids()[gap];
                if x == mid {
                    Located::Mid(gap)
                } else if x < mid {
                    Located::Interior(gap, GapSide::Left)
                } else {
                    Located::Interior(gap, GapSide::Right)
                }
            }
        }
    }

    /// Boundary value `J(x)`, unimodular; exact `1` at nodes and `-1` at
    /// midpoints by the limit convention.
    pub fn eval(&self, x: f64) -> Result<Complex64, InnerError> {
        self.check_window(x)?;
        match self.locate(x) {
            Located::Node(_) => Ok(Complex64::new(1.0, 0.0)),
            Located::Mid(_) => Ok(Complex64::new(-1.0, 0.0)),
            Located::Interior(_, side) => {
                let ut = self.u.hilbert(x)?;
                let t = -PI * ut; // y = e^t
                // tanh/sech forms avoid overflow for |t| large
                let re = t.tanh();
                let im = 1.0 / t.cosh();
                let sign = if side == GapSide::Left { 1.0 } else { -1.0 };
                Ok(Complex64::new(re, sign * im))
            }
        }
    }

    /// Continuous increasing argument, normalized so `arg J(lambda_0) = 0`.
    pub fn arg(&self, x: f64) -> Result<f64, InnerError> {
        self.check_window(x)?;
        let (gap, phase) = match self.locate(x) {
            Located::Node(i) => (i, 0.0),
            Located::Mid(g) => (g, PI),
            Located::Interior(g, side) => {
                let ut = self.u.hilbert(x)?;
                let t = -PI * ut;
                // left half:  phi = pi - 2 atan(e^t)  in (0, pi)
                // right half: phi = pi + 2 atan(e^-t) in (pi, 2 pi)
                let phi = match side {
                    GapSide::Left => {
                        if t >= 0.0 {
                            2.0 * (-t).exp().atan()
                        } else {
                            PI - 2.0 * t.exp().atan()
                        }
                    }
                    GapSide::Right => {
                        if t >= 0.0 {
                            TWO_PI - 2.0 * (-t).exp().atan()
                        } else {
                            PI + 2.0 * t.exp().atan()
                        }
                    }
                };
                (g, phi)
            }
        };
        Ok(TWO_PI * (gap as i64 - self.zero_node as i64) as f64 + phase)
    }

    /// `|J'(omega_n)|` at window midpoint `n` from the residue product.
    pub fn jprime_at_omega(&self, n: usize) -> Result<f64, InnerError> {
        let i = self.window_index(n, "window midpoint")?;
        if i >= self.jp_mids.len() {
            return Err(InnerError::Index {
                index: n,
                what: "window midpoint",
                len: self.jp_mids.len(),
            });
        }
        Ok(self.jp_mids[i])
    }

    /// `|J'(lambda_n)|` at window node `n` from the residue product.
    pub fn jprime_at_lambda(&self, n: usize) -> Result<f64, InnerError> {
        let i = self.window_index(n, "window node")?;
        let v = self.jp_nodes[i];
        if v.is_nan() {
            return Err(InnerError::Index {
                index: n,
                what: "interior window node",
                len: self.jp_nodes.len(),
            });
        }
        Ok(v)
    }

    /// `|J'(x)|` away from nodes by the Clark series, with the middle-third
    /// crossover: the `sigma_1` series (atoms at the nodes) in the middle
    /// third of each gap, the dual `sigma_-1` series in the outer thirds.
    pub fn jprime(&self, x: f64) -> Result<f64, InnerError> {
        self.check_window(x)?;
        let (gap, use_sigma1) = match self.locate(x) {
            Located::Node(i) => {
                return Err(InnerError::NodeRedirect {
                    x,
                    kind: "lambda",
                    index: i,
                })
            }
            Located::Mid(g) => {
                return Err(InnerError::NodeRedirect {
                    x,
                    kind: "omega",
                    index: g,
                })
            }
            Located::Interior(g, _) => {
                let (a, b) = (self.u.nodes()[g], self.u.nodes()[g + 1]);
                let frac = (x - a) / (b - a);
                (g, (1.0 / 3.0..=2.0 / 3.0).contains(&frac))
            }
        };
        let _ = gap;
        let j = self.eval(x)?;
        if use_sigma1 {
            let mut s = 0.0;
            for (i, &lam) in self.u.nodes().iter().enumerate() {
                let m = self.sigma1[i];
                if m.is_nan() {
                    continue;
                }
                s += m / ((x - lam) * (x - lam));
            }
            Ok((1.0 - j).norm_sqr() * s / (2.0 * PI))
        } else {
            let mut s = 0.0;
            for (i, &om) in self.u.mids().iter().enumerate() {
                s += self.sigma_m1[i] / ((x - om) * (x - om));
            }
            Ok((1.0 + j).norm_sqr() * s / (2.0 * PI))
        }
    }

    /// Truncation budget carried by the evaluators at `x`.
    pub fn tail_budget(&self, x: f64) -> f64 {
        self.u.tail_bound(x)
    }
}

#[derive(Debug, Clone, Copy)]
enum Located {
    Node(usize),
    Mid(usize),
    Interior(usize, GapSide),
}

/// Build the inner function of a lattice. The lattice needs at least three
/// points; the weight provides the alpha-geometry for the tail continuation.
pub fn build_inner(w: &Weight, lat: &Lattice, tail: TailPolicy) -> Result<InnerJ, InnerError> {
    if lat.len() < 3 {
        return Err(InnerError::Size {
            need: 3,
            got: lat.len(),
        });
    }
    crate::lattice::separation_stats(w, lat)?;
    let u = HalfIndicator::new(w, lat, tail)?;
    let nodes = u.nodes().to_vec();
    let mids = u.mids().to_vec();
    let n_nodes = nodes.len();
    let n_gaps = mids.len();
    let (s_lo, s_hi) = u.support();

    // log C* = -int t u(t)/(1+t^2) dt over all of R: per-gap bumps plus the
    // -1/2 background outside the support (the symmetric part cancels)
    let mut log_cstar = 0.0;
    for g in 0..n_gaps {
        let (a, m, b) = (nodes[g], mids[g], nodes[g + 1]);
        log_cstar += -0.25 * ((1.0 + m * m) / (1.0 + a * a)).ln()
            + 0.25 * ((1.0 + b * b) / (1.0 + m * m)).ln();
    }
    log_cstar += 0.25 * ((1.0 + s_lo * s_lo) / (1.0 + s_hi * s_hi)).ln();

    // background part of K(x) = p.v. int u/(t-x): the -1/2 tails beyond the
    // support contribute -(1/2)(ln|s_lo - x| - ln|s_hi - x|)
    let bg = |x: f64| -0.5 * ((s_lo - x).abs().ln() - (s_hi - x).abs().ln());

    // residue products at every midpoint and every interior node
    let mut jp_mids = vec![f64::NAN; n_gaps];
    let mut jp_nodes = vec![f64::NAN; n_nodes];
    for g in 0..n_gaps {
        let om = mids[g];
        // log A = sum over other gaps of log( sqrt(|a-om||b-om|)/|m-om| )
        let mut log_a = 0.0;
        for j in 0..n_gaps {
            if j == g {
                continue;
            }
            let (a, m, b) = (nodes[j], mids[j], nodes[j + 1]);
            log_a += 0.5 * (a - om).abs().ln() + 0.5 * (b - om).abs().ln() - (m - om).abs().ln();
        }
        let gap = nodes[g + 1] - nodes[g];
        // |J'(om)| = 4 C* e^{bg(om)} / (A gap)
        jp_mids[g] = (log_cstar + bg(om) - log_a - gap.ln() + 4.0f64.ln()).exp();
    }
    for i in 1..n_nodes - 1 {
        let la = nodes[i];
        // dual product: exp(+ sum over support pieces of u-integrals),
        // excluding the central dual gap (om_{i-1}, om_i)
        let mut log_a = 0.0;
        for j in 0..n_gaps {
            let (a, m, b) = (nodes[j], mids[j], nodes[j + 1]);
            if j == i {
                // right central piece (la, om_i) excluded, keep (om_i, b)
                log_a += -0.5 * ((b - la).abs().ln() - (m - la).abs().ln());
                continue;
            }
            if j + 1 == i {
                // left central piece (om_{i-1}, la) excluded, keep (a, om_{i-1})
                log_a += 0.5 * ((m - la).abs().ln() - (a - la).abs().ln());
                continue;
            }
            log_a += 0.5 * ((m - la).abs().ln() - (a - la).abs().ln())
                - 0.5 * ((b - la).abs().ln() - (m - la).abs().ln());
        }
        let g1 = la - nodes[i - 1];
        let g2 = nodes[i + 1] - la;
        // |J'(la)| = 4 e^{-bg(la)} / (C* A sqrt(g1 g2))
        jp_nodes[i] =
            (4.0f64.ln() - log_cstar - bg(la) - log_a - 0.5 * (g1 * g2).ln()).exp();
    }

    let sigma1 = jp_nodes.iter().map(|v| TWO_PI / v).collect();
    let sigma_m1 = jp_mids.iter().map(|v| TWO_PI / v).collect();

    // lambda_0 in extended indices: window zero position + left extension
    let (first, _) = u.orig_range();
    let zero_node = first + lat.zero_pos();

    Ok(InnerJ {
        u,
        lattice: lat.clone(),
        log_cstar,
        jp_nodes,
        jp_mids,
        sigma1,
        sigma_m1,
        zero_node,
        tail,
    })
}

/// Certificate attached by [`approximate_phase`]: the measured sup of
/// `|f - arg J - const|` with the matched constant and tail budget.
#[derive(Debug, Clone, Serialize)]
pub struct PhaseCertificate {
    pub sup_deviation: f64,
    pub matched_const: f64,
    pub grid_points: usize,
    pub tail_budget: f64,
    /// probe band of f'/alpha' ratios
    pub ratio_min: f64,
    pub ratio_max: f64,
}

/// Level-set lattice of `f` followed by the inner construction, with the
/// measured phase-approximation certificate.
pub fn approximate_phase(
    w: &Weight,
    f: &PhaseFunction,
    tail: TailPolicy,
    root_tol: f64,
    ratio_band: f64,
    force: bool,
) -> Result<(InnerJ, PhaseCertificate), InnerError> {
    let window = f.window();
    // comparability probes of f' / alpha'
    let probes = 201;
    let mut rmin = f64::INFINITY;
    let mut rmax: f64 = 0.0;
    for i in 0..=probes {
        let x = window.a + window.len() * i as f64 / probes as f64;
        let r = f.deriv(x) / w.alpha1(x)?;
        rmin = rmin.min(r);
        rmax = rmax.max(r);
    }
    if !(rmin > 0.0 && rmax / rmin <= ratio_band) && !force {
        return Err(InnerError::Hypothesis {
            min: rmin,
            max: rmax,
            band: ratio_band,
        });
    }
    let lat = level_set(f, window, root_tol)?;
    let inner = build_inner(w, &lat, tail)?;

    // measured sup of |f - arg J - const| on a dense grid
    let n = 10_000;
    let mut devs = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let x = window.a + window.len() * i as f64 / n as f64;
        devs.push(f.eval(x) - inner.arg(x)?);
    }
    let mut sorted = devs.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let matched = sorted[sorted.len() / 2];
    let sup = devs
        .iter()
        .fold(0.0f64, |acc, d| acc.max((d - matched).abs()));
    let budget = inner.tail_budget(window.a).max(inner.tail_budget(window.b));
    let cert = PhaseCertificate {
        sup_deviation: sup,
        matched_const: matched,
        grid_points: n + 1,
        tail_budget: budget,
        ratio_min: rmin,
        ratio_max: rmax,
    };
    Ok((inner, cert))
}

/// A meromorphic inner function given by Blaschke zeros and singular type,
/// with the phase normalized to vanish at the origin.
#[derive(Debug, Clone, Serialize)]
pub struct BlaschkeInner {
    /// zeros `x_n + i y_n` with `y_n > 0`
    pub zeros: Vec<(f64, f64)>,
    /// singular inner type `a >= 0` (the factor `exp(i a z)`)
    pub singular_type: f64,
}

impl BlaschkeInner {
    pub fn new(zeros: Vec<(f64, f64)>, singular_type: f64) -> Self {
        assert!(singular_type >= 0.0);
        assert!(zeros.iter().all(|z| z.1 > 0.0), "zeros must be in the upper half-plane");
        Self {
            zeros,
            singular_type,
        }
    }

    /// `arg Theta'(x) = a + 2 sum y_n / ((x - x_n)^2 + y_n^2)`, positive.
    pub fn arg_prime(&self, x: f64) -> f64 {
        let mut s = self.singular_type;
        for &(xn, yn) in &self.zeros {
            s += 2.0 * yn / ((x - xn) * (x - xn) + yn * yn);
        }
        s
    }

    /// Integrated phase with `arg Theta(0) = 0`:
    /// `a x + 2 sum [ atan((x - x_n)/y_n) + atan(x_n/y_n) ]`.
    pub fn arg(&self, x: f64) -> f64 {
        let mut s = self.singular_type * x;
        for &(xn, yn) in &self.zeros {
            s += 2.0 * (((x - xn) / yn).atan() + (xn / yn).atan());
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;
    use crate::weights::{Family, Window};

    fn setup_2pi(win: Window) -> (Weight, InnerJ) {
        let w = Weight::with_alpha_padding(
            Family::Linear { scale: 1.0 },
            win,
            5.2 * win.len(),
        )
        .unwrap();
        let lat = Lattice::arithmetic(TWO_PI, win);
        let inner = build_inner(&w, &lat, TailPolicy::default()).unwrap();
        (w, inner)
    }

    #[test]
    fn node_values_exact() {
        let win = Window::new(-60.0, 60.0);
        let (_, inner) = setup_2pi(win);
        let pts = inner.lattice().points().to_vec();
        let mids = inner.lattice().midpoints();
        for &lam in &pts {
            assert_eq!(inner.eval(lam).unwrap(), Complex64::new(1.0, 0.0));
        }
        for &om in &mids {
            assert_eq!(inner.eval(om).unwrap(), Complex64::new(-1.0, 0.0));
        }
    }

    #[test]
    fn unimodular_on_random_points() {
        use rand::{Rng, SeedableRng};
        let win = Window::new(-60.0, 60.0);
        let (_, inner) = setup_2pi(win);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let x: f64 = rng.gen_range(win.a..win.b);
            let j = inner.eval(x).unwrap();
            assert!((j.norm() - 1.0).abs() < 1e-10, "|J({x})| = {}", j.norm());
        }
    }

    #[test]
    fn two_point_lattice_refused() {
        let win = Window::new(-10.0, 10.0);
        let w = Weight::new(Family::Linear { scale: 1.0 }, win).unwrap();
        let lat = Lattice::new(vec![-1.0, 1.0], win).unwrap();
        assert!(matches!(
            build_inner(&w, &lat, TailPolicy::default()),
            Err(InnerError::Size { .. })
        ));
    }

    #[test]
    fn arg_monotone_with_full_turns() {
        let win = Window::new(-60.0, 60.0);
        let (_, inner) = setup_2pi(win);
        // arg J(lambda_0) = 0, each node adds a full turn
        assert_eq!(inner.arg(0.0).unwrap(), 0.0);
        assert_eq!(inner.arg(TWO_PI).unwrap(), TWO_PI);
        assert_eq!(inner.arg(-TWO_PI).unwrap(), -TWO_PI);
        assert_eq!(inner.arg(PI).unwrap(), PI);
        // strictly increasing on a probe grid
        let mut prev = f64::NEG_INFINITY;
        for i in 0..=4000 {
            let x = win.a + win.len() * i as f64 / 4000.0;
            let a = inner.arg(x).unwrap();
            assert!(a > prev, "arg not increasing at x = {x}");
            prev = a;
        }
    }

    #[test]
    fn residue_matches_finite_difference() {
        let win = Window::new(-60.0, 60.0);
        let (_, inner) = setup_2pi(win);
        let (first, last) = inner.window_node_range();
        let h = 1e-5;
        // use a mid-window node
        let n = (last - first) / 2;
        let lam = inner.lattice().points()[n];
        let fd = (inner.arg(lam + h).unwrap() - inner.arg(lam - h).unwrap()) / (2.0 * h);
        let res = inner.jprime_at_lambda(n).unwrap();
        assert!(
            (res - fd).abs() <= 1e-6 * fd,
            "lambda: residue {res} vs fd {fd}"
        );
        let om = 0.5 * (inner.lattice().points()[n] + inner.lattice().points()[n + 1]);
        let fd = (inner.arg(om + h).unwrap() - inner.arg(om - h).unwrap()) / (2.0 * h);
        let res = inner.jprime_at_omega(n).unwrap();
        assert!(
            (res - fd).abs() <= 1e-6 * fd,
            "omega: residue {res} vs fd {fd}"
        );
    }

    #[test]
    fn clark_mass_identity() {
        let win = Window::new(-60.0, 60.0);
        let (_, inner) = setup_2pi(win);
        for n in 2..inner.lattice().len() - 2 {
            let prod = inner.sigma1_at(n).unwrap() * inner.jprime_at_lambda(n).unwrap();
            assert!((prod - TWO_PI).abs() < 1e-10 * TWO_PI);
        }
    }

    #[test]
    fn clark_series_consistency_at_crossover() {
        let win = Window::new(-60.0, 60.0);
        let (_, inner) = setup_2pi(win);
        let pts = inner.lattice().points();
        let n = pts.len() / 2;
        let (a, b) = (pts[n], pts[n + 1]);
        for frac in [1.0 / 3.0, 2.0 / 3.0] {
            let x = a + (b - a) * frac;
            let inner_third = inner.jprime(x + 1e-4).unwrap();
            let outer_third = inner.jprime(x - 1e-4).unwrap();
            assert!(
                (inner_third - outer_third).abs() <= 1e-3 * outer_third.abs(),
                "crossover at {x}: {inner_third} vs {outer_third}"
            );
        }
    }

    #[test]
    fn jprime_matches_arg_derivative_mid_window() {
        let win = Window::new(-60.0, 60.0);
        let (_, inner) = setup_2pi(win);
        let h = 1e-5;
        for &x in &[1.1, 2.0, 4.9, -8.3] {
            let fd = (inner.arg(x + h).unwrap() - inner.arg(x - h).unwrap()) / (2.0 * h);
            let cs = inner.jprime(x).unwrap();
            assert!(
                (cs - fd).abs() <= 1e-4 * fd.abs(),
                "x = {x}: clark {cs} vs fd {fd}"
            );
        }
    }

    #[test]
    fn jprime_periodic_mid_window() {
        // periodicity of the infinite construction holds for the truncated
        // object only up to the tail slope, under a percent here
        let win = Window::new(-60.0, 60.0);
        let (_, inner) = setup_2pi(win);
        let a = inner.jprime(1.3).unwrap();
        let b = inner.jprime(1.3 + TWO_PI).unwrap();
        assert!((a - b).abs() < 1.5e-2 * a, "{a} vs {b}");
    }

    #[test]
    fn jprime_redirects_at_nodes() {
        let win = Window::new(-60.0, 60.0);
        let (_, inner) = setup_2pi(win);
        assert!(matches!(
            inner.jprime(0.0),
            Err(InnerError::NodeRedirect { kind: "lambda", .. })
        ));
        assert!(matches!(
            inner.jprime(PI),
            Err(InnerError::NodeRedirect { kind: "omega", .. })
        ));
    }

    #[test]
    fn alpha_prime_controls_jprime_at_midpoints() {
        // alpha'(omega) <= c |J'(omega)| with a stable constant across the
        // window interior
        let win = Window::new(-60.0, 60.0);
        let (w, inner) = setup_2pi(win);
        let mids = inner.lattice().midpoints();
        let mut ratios = Vec::new();
        for n in 2..mids.len() - 2 {
            let a1 = w.alpha1(mids[n]).unwrap();
            let jp = inner.jprime_at_omega(n).unwrap();
            ratios.push(a1 / jp);
        }
        let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = ratios.iter().cloned().fold(0.0f64, f64::max);
        assert!(lo.is_finite() && lo > 0.0);
        assert!(hi / lo < 10.0, "ratio band [{lo}, {hi}] too wide");
    }

    #[test]
    fn residue_products_bounded_by_one() {
        // A_n <= 1 (up to tail tolerance): equivalently
        // |J'(omega)| >= 4 C* e^{bg} / gap; check via the stored values
        let win = Window::new(-60.0, 60.0);
        let (_, inner) = setup_2pi(win);
        let cstar = inner.cstar();
        let (first, last) = inner.window_node_range();
        for g in first..last {
            let gap = inner.nodes()[g + 1] - inner.nodes()[g];
            let jp = inner.jp_mids[g];
            // A = 4 C* e^{bg}/(jp * gap) must be <= 1 + tol; bg is tiny
            // mid-window so bound it by e^{0.05}
            let a = 4.0 * cstar * 1.05 / (jp * gap);
            assert!(a <= 1.0 + 0.1, "A at gap {g} is {a}");
        }
    }

    #[test]
    fn approximate_identity_phase() {
        let win = Window::new(-60.0, 60.0);
        let w = Weight::with_alpha_padding(Family::Linear { scale: 1.0 }, win, 640.0).unwrap();
        let f = PhaseFunction::new(|x| x, |_| 1.0, win);
        let (_, cert) =
            approximate_phase(&w, &f, TailPolicy::default(), 1e-12, 100.0, false).unwrap();
        assert!(
            cert.sup_deviation <= TWO_PI + 0.1,
            "sup = {}",
            cert.sup_deviation
        );
        assert!(cert.ratio_min > 0.99 && cert.ratio_max < 1.01);
    }

    #[test]
    fn approximate_rejects_wild_ratio() {
        let win = Window::new(-20.0, 20.0);
        let w = Weight::with_alpha_padding(Family::Linear { scale: 1.0 }, win, 200.0).unwrap();
        // f' oscillates over three orders of magnitude
        let f = PhaseFunction::new(
            |x| x + 0.999 * x.sin(),
            |x| 1.0 + 0.999 * x.cos(),
            win,
        );
        let err = approximate_phase(&w, &f, TailPolicy::default(), 1e-10, 100.0, false);
        assert!(matches!(err, Err(InnerError::Hypothesis { .. })));
    }

    #[test]
    fn blaschke_phase_examples() {
        let pure = BlaschkeInner::new(vec![], 1.0);
        assert_eq!(pure.arg_prime(3.3), 1.0);
        assert_eq!(pure.arg(3.3), 3.3);

        let single = BlaschkeInner::new(vec![(0.0, 1.0)], 0.0);
        assert!((single.arg_prime(0.0) - 2.0).abs() < 1e-15);
        assert!((single.arg(1.0) - PI / 2.0).abs() < 1e-15);
        assert_eq!(single.arg(0.0), 0.0);

        let pair = BlaschkeInner::new(vec![(-1.0, 1.0), (1.0, 1.0)], 0.0);
        assert!((pair.arg_prime(0.0) - 2.0).abs() < 1e-15);
        assert_eq!(pair.arg(0.0), 0.0);
    }
}
