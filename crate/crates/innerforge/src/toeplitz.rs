//! Zero-set certificates for Toeplitz kernels with unimodular real-analytic
//! symbols `arg U = -alpha + h`: density gate, lattice regularization, the
//! two inner constructions, the modulus `m` from conjugated phase
//! differences, and the necessity certificate for over-dense lattices.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::conjugation::{
    hilbert_quadrature, zygmund_integral, ConjugationError, GrowthClass, SampledFunction,
    TailPolicy,
};
use crate::inner::{approximate_phase, build_inner, InnerError, InnerJ, PhaseCertificate};
use crate::lattice::{regularize, Lattice, LatticeError, PhaseFunction, RegularizationResult};
use crate::weights::{
    lower_density, regularity_report, upper_density, Family, SumTerm, Weight, WeightError, Window,
    DENSITY_THRESHOLD,
};

const TWO_PI: f64 = 2.0 * PI;

#[derive(Debug, Error)]
pub enum ToeplitzError {
    #[error("density gate: measured upper density {measured} >= 1/(2 pi) = {threshold}; the lattice is too dense (see the necessity certificate)")]
    Threshold { measured: f64, threshold: f64 },
    #[error("epsilon = {eps} too large: delta alpha' - 2 eps reaches {worst} on the window")]
    Epsilon { eps: f64, worst: f64 },
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("necessity certificate not applicable: measured lower density {measured} <= required {required}")]
    NotApplicable { measured: f64, required: f64 },
    #[error("necessity block [{lo}, {hi}) violates the count inequality: 2 pi #(Lambda ∩ I) = {got} <= (1+delta) alpha(I) = {need}")]
    BlockCount { lo: f64, hi: f64, got: f64, need: f64 },
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Inner(#[from] InnerError),
    #[error(transparent)]
    Conjugation(#[from] ConjugationError),
}

/// A unimodular real-analytic symbol `arg U = -alpha + h`.
#[derive(Debug, Clone)]
pub struct Symbol {
    pub family: Family,
    /// bounded perturbation; `None` means `h = 0`
    pub h: Option<SampledFunction>,
    /// declared exponent in `|h'| <= C <x>^K1`
    pub k1: f64,
}

/// Knobs of the zero-set pipeline.
#[derive(Debug, Clone, Serialize)]
pub struct PipelineConfig {
    /// block alpha-length for the regularization
    pub n0: f64,
    /// minimum pairwise alpha-separation for inserted points
    pub sep_min: f64,
    pub quad_tol: f64,
    pub root_tol: f64,
    /// grid density: points per unit alpha-length
    pub grid_per_alpha: f64,
    pub tail: TailPolicy,
    pub probes: usize,
    pub seed: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            n0: 40.0,
            sep_min: 1.0,
            quad_tol: 1e-6,
            root_tol: 1e-11,
            grid_per_alpha: 8.0,
            tail: TailPolicy::default(),
            probes: 2000,
            seed: 7,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LambdaRow {
    pub lambda: f64,
    /// `|T(lambda)| = |1 - J(lambda)| m(lambda)`, exactly zero by the node
    /// convention
    pub t_abs: f64,
    /// derivative proxy `|T'(lambda)| = |J'(lambda)| m(lambda)`
    pub t_prime: f64,
    /// `|T'(lambda)| <lambda>^N`
    pub floor_value: f64,
}

/// Fitted polynomial growth sandwich `c <x>^-N <= m <= C <x>^N`.
#[derive(Debug, Clone, Serialize)]
pub struct GrowthFit {
    pub exponent: f64,
    pub c_lower: f64,
    pub c_upper: f64,
}

/// Everything the zero-set run certifies, plus the built inner functions for
/// further evaluation.
#[derive(Debug, Serialize)]
pub struct ZeroSetWitness {
    pub delta: f64,
    pub eps: f64,
    pub n0: f64,
    pub density_estimate: f64,
    pub density_margin: f64,
    pub regularization_sup: f64,
    pub added_points: Vec<f64>,
    pub growth: GrowthFit,
    pub rows: Vec<LambdaRow>,
    pub derivative_floor: f64,
    pub zygmund: f64,
    pub zygmund_warning: bool,
    pub phase_cert_i: PhaseCertificate,
    /// log m on the evaluation grid
    pub log_m: SampledFunction,
    #[serde(skip)]
    pub inner_j: InnerJ,
    #[serde(skip)]
    pub inner_i: InnerJ,
    #[serde(skip)]
    pub lattice_prime: Lattice,
}

/// `|T(x)|` with the node redirect note.
#[derive(Debug, Clone, Serialize)]
pub struct TValue {
    pub abs_t: f64,
    /// set at lattice nodes, where the derivative proxy is reported
    pub note: Option<String>,
}

/// `log m = -(1/2) sum (part)~` on a shared grid, with diagnostics.
pub fn modulus_from_phase(
    parts: &[SampledFunction],
    grid: &[f64],
    quad_tol: f64,
) -> Result<SampledFunction, ToeplitzError> {
    for p in parts {
        if p.growth != GrowthClass::Bounded {
            return Err(ToeplitzError::Hypothesis(format!(
                "modulus part has unbounded declared class {:?}",
                p.growth
            )));
        }
    }
    let vals: Vec<f64> = grid
        .par_iter()
        .map(|&x| -> Result<f64, ToeplitzError> {
            let mut acc = 0.0;
            for p in parts {
                acc += hilbert_quadrature(p, x, quad_tol)?.value;
            }
            Ok(-0.5 * acc)
        })
        .collect::<Result<_, _>>()?;
    Ok(SampledFunction::new(grid.to_vec(), vals, GrowthClass::Log))
}

/// Expand a window until the phase of `fam` completes at least `min_turns`
/// full turns across it.
fn widen_for_turns(
    fam: &Family,
    window: Window,
    min_turns: f64,
) -> Result<Window, ToeplitzError> {
    let center = 0.5 * (window.a + window.b);
    let mut half = 0.5 * window.len();
    for _ in 0..64 {
        let cand = Window::new(center - half, center + half);
        let w = Weight::new(fam.clone(), cand)?;
        if w.alpha_length(cand)? >= min_turns * TWO_PI {
            return Ok(cand);
        }
        half *= 1.5;
    }
    Err(ToeplitzError::Hypothesis(format!(
        "phase cannot complete {min_turns} turns on any reasonable widening of the window"
    )))
}

fn fit_growth(grid: &[f64], log_m: &[f64]) -> GrowthFit {
    // least squares |log m| = b + N ln<x>, then exact envelope constants
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut sx = 0.0;
    let mut sy = 0.0;
    let n = grid.len() as f64;
    for (&x, &lm) in grid.iter().zip(log_m) {
        let lx = 0.5 * (1.0 + x * x).ln();
        sxx += lx * lx;
        sxy += lx * lm.abs();
        sx += lx;
        sy += lm.abs();
    }
    let det = n * sxx - sx * sx;
    let slope = if det.abs() > 1e-12 {
        ((n * sxy - sx * sy) / det).max(0.0)
    } else {
        0.0
    };
    let mut c_lower = f64::INFINITY;
    let mut c_upper: f64 = 0.0;
    for (&x, &lm) in grid.iter().zip(log_m) {
        let m = lm.exp();
        let pw = (1.0 + x * x).powf(slope / 2.0);
        c_lower = c_lower.min(m * pw);
        c_upper = c_upper.max(m / pw);
    }
    GrowthFit {
        exponent: slope,
        c_lower,
        c_upper,
    }
}

/// The full zero-set certification run.
pub fn zero_set_pipeline(
    sym: &Symbol,
    lat: &Lattice,
    eps_opt: Option<f64>,
    config: &PipelineConfig,
) -> Result<ZeroSetWitness, ToeplitzError> {
    let window = lat.window();
    let plain = Weight::new(sym.family.clone(), window)?;
    let alpha_len = plain.alpha_length(window)?;
    let pad = config.tail.width_factor * alpha_len * 1.2 + 10.0;
    let w = Weight::with_alpha_padding(sym.family.clone(), window, pad)?;

    // weight regularity gate
    let reg = regularity_report(&w, window, config.probes, 1.0, config.seed)?;
    if !reg.all_pass() {
        return Err(ToeplitzError::Hypothesis(format!(
            "weight fails the regular-locally-doubling diagnostics (comparability {}, doubling {}, lower growth {})",
            reg.comparability_pass, reg.doubling_pass, reg.lower_growth_pass
        )));
    }
    if let Some(h) = &sym.h {
        if h.growth != GrowthClass::Bounded {
            return Err(ToeplitzError::Hypothesis(
                "h must be bounded (declared class)".into(),
            ));
        }
    }

    // density gate at 1/(2 pi)
    let r_list = [alpha_len / 8.0, alpha_len / 4.0, alpha_len / 2.0];
    let dens = upper_density(&w, lat.points(), window, &r_list)?;
    if dens.limit_estimate >= DENSITY_THRESHOLD {
        return Err(ToeplitzError::Threshold {
            measured: dens.limit_estimate,
            threshold: DENSITY_THRESHOLD,
        });
    }
    let margin = 1.0 - TWO_PI * dens.limit_estimate;
    let delta = 0.5 * margin;

    // epsilon: delta alpha' - 2 eps must stay positive
    let mut inf_alpha1 = f64::INFINITY;
    for i in 0..=256 {
        let x = window.a + window.len() * i as f64 / 256.0;
        inf_alpha1 = inf_alpha1.min(w.alpha1(x)?);
    }
    let eps = eps_opt.unwrap_or_else(|| (0.1f64).min(delta * inf_alpha1 / 4.0));
    let worst = delta * inf_alpha1 - 2.0 * eps;
    if worst <= 0.0 {
        return Err(ToeplitzError::Epsilon { eps, worst });
    }

    // density regularization, then J with {J = 1} = Lambda_prime
    let reg_result: RegularizationResult = regularize(&w, lat, delta, config.n0, config.sep_min)?;
    let lat_prime = reg_result.lattice.clone();
    let inner_j = build_inner(&w, &lat_prime, config.tail)?;

    // I approximates delta alpha - 2 eps x. The slow phase may complete only
    // a few turns over the window, so I is built on a widened window (it is
    // a global object; the boundedness is consumed on the main window only)
    let fam_i = Family::Sum {
        terms: vec![
            SumTerm {
                coeff: delta,
                family: sym.family.clone(),
            },
            SumTerm {
                coeff: -2.0 * eps,
                family: Family::Linear { scale: 1.0 },
            },
        ],
    };
    let window_i = widen_for_turns(&fam_i, window, 8.0)?;
    let plain_i = Weight::new(fam_i.clone(), window_i)?;
    let pad_i = config.tail.width_factor * plain_i.alpha_length(window_i)? * 1.2 + 10.0;
    let w_i = Weight::with_alpha_padding(fam_i, window_i, pad_i)?;
    let f_i = PhaseFunction::from_weight(&w_i, window_i);
    let (inner_i, cert_i) =
        approximate_phase(&w_i, &f_i, config.tail, config.root_tol, 100.0, false)?;

    // shared grid: alpha-uniform at grid_per_alpha points per unit, plus all
    // nodes and midpoints of Lambda'
    let mut sample_xs: Vec<f64> = Vec::new();
    let n_grid = (alpha_len * config.grid_per_alpha).ceil() as usize;
    let s_lo = w.alpha(window.a)?;
    for i in 0..=n_grid {
        sample_xs.push(w.invert_alpha(s_lo + alpha_len * i as f64 / n_grid as f64)?);
    }
    sample_xs.extend_from_slice(lat_prime.points());
    sample_xs.extend(lat_prime.midpoints());
    sample_xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    sample_xs.dedup_by(|a, b| (*a - *b).abs() < 1e-12 * (1.0 + a.abs()));

    // bounded phase-difference parts sampled on the full window
    let p1_vals: Vec<f64> = sample_xs
        .iter()
        .map(|&x| Ok((1.0 - delta) * w.alpha(x)? - inner_j.arg(x)?))
        .collect::<Result<_, ToeplitzError>>()?;
    let p2_vals: Vec<f64> = sample_xs
        .iter()
        .map(|&x| Ok(delta * w.alpha(x)? - 2.0 * eps * x - inner_i.arg(x)?))
        .collect::<Result<_, ToeplitzError>>()?;
    let p1 = SampledFunction::new(sample_xs.clone(), p1_vals.clone(), GrowthClass::Bounded);
    let p2 = SampledFunction::new(sample_xs.clone(), p2_vals.clone(), GrowthClass::Bounded);

    // evaluation grid: strictly interior sample points
    let eval_grid: Vec<f64> = sample_xs[1..sample_xs.len() - 1].to_vec();
    let mut parts = vec![p1.clone(), p2.clone()];
    if let Some(h) = &sym.h {
        parts.push(h.clone());
    }
    let log_m = modulus_from_phase(&parts, &eval_grid, config.quad_tol)?;

    let growth = fit_growth(log_m.xs(), log_m.vals());

    // per-lambda table over the window nodes of Lambda'
    let (first, last) = inner_j.window_node_range();
    let mut rows = Vec::new();
    let mut floor = f64::INFINITY;
    for n in 0..=(last - first) {
        let lam = lat_prime.points()[n];
        let jp = match inner_j.jprime_at_lambda(n) {
            Ok(v) => v,
            Err(_) => continue, // extended-edge guard, not hit for window nodes
        };
        let m = log_m.interp(lam).exp();
        let t_prime = jp * m;
        let fv = t_prime * (1.0 + lam * lam).powf(growth.exponent / 2.0);
        floor = floor.min(fv);
        rows.push(LambdaRow {
            lambda: lam,
            t_abs: 0.0,
            t_prime,
            floor_value: fv,
        });
    }

    // Zygmund diagnostic of the combined bounded phase
    let u_sum: Vec<f64> = (0..sample_xs.len())
        .map(|i| {
            let h = sym
                .h
                .as_ref()
                .map(|h| h.interp(sample_xs[i]))
                .unwrap_or(0.0);
            0.5 * (p1_vals[i] + p2_vals[i] + h)
        })
        .collect();
    let u_sum = SampledFunction::new(sample_xs.clone(), u_sum, GrowthClass::Bounded);
    let zygmund = zygmund_integral(&u_sum, 96)?;
    let zygmund_warning = !zygmund.is_finite() || zygmund > 1e6;

    Ok(ZeroSetWitness {
        delta,
        eps,
        n0: config.n0,
        density_estimate: dens.limit_estimate,
        density_margin: margin,
        regularization_sup: reg_result.measured_sup,
        added_points: reg_result.added.clone(),
        growth,
        rows,
        derivative_floor: floor,
        zygmund,
        zygmund_warning,
        phase_cert_i: cert_i,
        log_m,
        inner_j,
        inner_i,
        lattice_prime: lat_prime,
    })
}

/// `|T(x)| = |1 - J(x)| m(x)`; at a lattice node the value is exactly zero
/// and the derivative proxy is reported in the note.
pub fn eval_t(wit: &ZeroSetWitness, x: f64) -> Result<TValue, ToeplitzError> {
    let j = wit.inner_j.eval(x)?;
    let m = wit.log_m.interp(x).exp();
    let abs_t = (num_complex::Complex64::new(1.0, 0.0) - j).norm() * m;
    if abs_t == 0.0 {
        // exact node: locate the window index for the proxy
        let pts = wit.lattice_prime.points();
        if let Ok(n) = pts.binary_search_by(|p| p.partial_cmp(&x).unwrap()) {
            let proxy = wit.inner_j.jprime_at_lambda(n)? * m;
            return Ok(TValue {
                abs_t: 0.0,
                note: Some(format!("node: |T'| proxy = {proxy:.6e}")),
            });
        }
    }
    Ok(TValue { abs_t, note: None })
}

/// Telescoped divergence data certifying that an over-dense lattice is not a
/// zero set.
#[derive(Debug, Clone, Serialize)]
pub struct NecessityCertificate {
    pub delta: f64,
    pub n0: f64,
    pub lower_density_estimate: f64,
    /// `(a_n, 2 pi n_Lambda(a_n) - alpha(a_n))`, all exceeding
    /// `delta * alpha(a_n)`
    pub points: Vec<(f64, f64)>,
    /// least-squares slope through the origin of value vs a_n
    pub slope: f64,
}

/// Verify `2 pi n_Lambda(a_n) - alpha(a_n) > delta alpha(a_n)` along blocks
/// of alpha-length `n0` marching right from 0.
pub fn necessity_certificate(
    w: &Weight,
    lat: &Lattice,
    delta: f64,
    n0: f64,
) -> Result<NecessityCertificate, ToeplitzError> {
    let window = lat.window();
    let alpha_len = w.alpha_length(window)?;
    let r = n0.min(alpha_len / 2.0);
    let dens = lower_density(w, lat.points(), window, &[r, (4.0 * n0).min(alpha_len * 0.9)])?;
    let required = (1.0 + delta) * DENSITY_THRESHOLD;
    if dens.limit_estimate <= required {
        return Err(ToeplitzError::NotApplicable {
            measured: dens.limit_estimate,
            required,
        });
    }
    // blocks a_0 = 0, d_alpha(a_{j+1}, a_j) = n0
    let mut edges = vec![0.0f64];
    loop {
        let next_s = w.alpha(*edges.last().unwrap())? + n0;
        if next_s > w.alpha(window.b)? {
            break;
        }
        edges.push(w.invert_alpha(next_s)?);
    }
    if edges.len() < 2 {
        return Err(ToeplitzError::Hypothesis(format!(
            "window holds no block of alpha-length {n0}"
        )));
    }
    let mut points = Vec::new();
    for j in 0..edges.len() - 1 {
        let (lo, hi) = (edges[j], edges[j + 1]);
        let count = (lat.counting(hi) - lat.counting(lo)) as f64;
        let need = (1.0 + delta) * w.alpha_length(Window { a: lo, b: hi })?;
        if TWO_PI * count <= need {
            return Err(ToeplitzError::BlockCount {
                lo,
                hi,
                got: TWO_PI * count,
                need,
            });
        }
        let a_n = hi;
        let v = TWO_PI * lat.counting(a_n) as f64 - w.alpha(a_n)?;
        points.push((a_n, v));
    }
    // hard assertion of the telescoped inequality at every reported index
    for &(a, v) in &points {
        let bound = delta * w.alpha(a)?;
        if v <= bound {
            return Err(ToeplitzError::BlockCount {
                lo: 0.0,
                hi: a,
                got: v,
                need: bound,
            });
        }
    }
    let slope = {
        let sxy: f64 = points.iter().map(|&(a, v)| a * v).sum();
        let sxx: f64 = points.iter().map(|&(a, _)| a * a).sum();
        sxy / sxx
    };
    Ok(NecessityCertificate {
        delta,
        n0,
        lower_density_estimate: dens.limit_estimate,
        points,
        slope,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linear_symbol() -> Symbol {
        Symbol {
            family: Family::Linear { scale: 1.0 },
            h: None,
            k1: 0.0,
        }
    }

    fn three_pi_window() -> Window {
        Window::new(-30.0 * PI, 30.0 * PI)
    }

    #[test]
    fn pipeline_refuses_pi_lattice() {
        let win = Window::new(-40.0 * PI, 40.0 * PI);
        let lat = Lattice::arithmetic(PI, win);
        let err = zero_set_pipeline(&linear_symbol(), &lat, None, &PipelineConfig::default());
        assert!(matches!(err, Err(ToeplitzError::Threshold { .. })));
    }

    #[test]
    fn pipeline_three_pi_witness() {
        let win = three_pi_window();
        let lat = Lattice::arithmetic(3.0 * PI, win);
        let cfg = PipelineConfig::default();
        let wit = zero_set_pipeline(&linear_symbol(), &lat, Some(0.05), &cfg).unwrap();
        assert_eq!(wit.eps, 0.05);
        assert!(wit.delta > 0.0 && wit.delta < 0.5);
        // exact vanishing at every row
        assert!(wit.rows.iter().all(|r| r.t_abs == 0.0));
        assert!(!wit.rows.is_empty());
        // derivative floor positive
        assert!(wit.derivative_floor > 0.0, "floor {}", wit.derivative_floor);
        // growth sandwich holds exactly on the grid by construction
        let g = &wit.growth;
        for (x, lm) in wit.log_m.xs().iter().zip(wit.log_m.vals()) {
            let m = lm.exp();
            let pw = (1.0 + x * x).powf(g.exponent / 2.0);
            assert!(m >= g.c_lower / pw * (1.0 - 1e-12));
            assert!(m <= g.c_upper * pw * (1.0 + 1e-12));
        }
        // original lattice contained in Lambda'
        for p in lat.points() {
            assert!(wit
                .lattice_prime
                .points()
                .iter()
                .any(|q| (q - p).abs() < 1e-9));
        }
    }

    #[test]
    fn eval_t_values() {
        let win = three_pi_window();
        let lat = Lattice::arithmetic(3.0 * PI, win);
        let wit =
            zero_set_pipeline(&linear_symbol(), &lat, Some(0.05), &PipelineConfig::default())
                .unwrap();
        // at a node of Lambda': zero with proxy note
        let lam = wit.lattice_prime.points()[wit.lattice_prime.len() / 2];
        let tv = eval_t(&wit, lam).unwrap();
        assert_eq!(tv.abs_t, 0.0);
        assert!(tv.note.is_some());
        // at a midpoint: |1 - (-1)| m = 2 m
        let mids = wit.lattice_prime.midpoints();
        let om = mids[mids.len() / 2];
        let tv = eval_t(&wit, om).unwrap();
        let m = wit.log_m.interp(om).exp();
        assert!((tv.abs_t - 2.0 * m).abs() < 1e-12 * (1.0 + 2.0 * m));
    }

    #[test]
    fn necessity_pi_lattice_slope_one() {
        let win = Window::new(-150.0, 150.0);
        let w = Weight::new(Family::Linear { scale: 1.0 }, win).unwrap();
        let lat = Lattice::arithmetic(PI, win);
        let cert = necessity_certificate(&w, &lat, 0.5, 20.0).unwrap();
        assert!(!cert.points.is_empty());
        for &(a, v) in &cert.points {
            assert!(v > 0.5 * a, "telescoped value {v} at {a}");
        }
        assert!((cert.slope - 1.0).abs() < 0.2, "slope {}", cert.slope);
    }

    #[test]
    fn necessity_half_pi_lattice_slope_three() {
        let win = Window::new(-150.0, 150.0);
        let w = Weight::new(Family::Linear { scale: 1.0 }, win).unwrap();
        let lat = Lattice::arithmetic(PI / 2.0, win);
        let cert = necessity_certificate(&w, &lat, 0.5, 20.0).unwrap();
        assert!((cert.slope - 3.0).abs() < 0.3, "slope {}", cert.slope);
    }

    #[test]
    fn necessity_not_applicable_at_threshold() {
        let win = Window::new(-150.0, 150.0);
        let w = Weight::new(Family::Linear { scale: 1.0 }, win).unwrap();
        let lat = Lattice::arithmetic(TWO_PI, win);
        assert!(matches!(
            necessity_certificate(&w, &lat, 0.5, 20.0),
            Err(ToeplitzError::NotApplicable { .. })
        ));
    }

    #[test]
    fn modulus_zero_parts_give_unit_m() {
        let xs: Vec<f64> = (0..=100).map(|i| -50.0 + i as f64).collect();
        let zeros = vec![0.0; xs.len()];
        let p = SampledFunction::new(xs.clone(), zeros, GrowthClass::Bounded);
        let grid: Vec<f64> = xs[1..xs.len() - 1].to_vec();
        let lm = modulus_from_phase(&[p], &grid, 1e-8).unwrap();
        for v in lm.vals() {
            assert!(v.abs() < 1e-9);
        }
    }

    #[test]
    fn modulus_rejects_unbounded_part() {
        let xs: Vec<f64> = (0..=10).map(|i| i as f64).collect();
        let vals: Vec<f64> = xs.clone();
        let p = SampledFunction::new(xs.clone(), vals, GrowthClass::Poly(1.0));
        let err = modulus_from_phase(&[p], &xs[1..10], 1e-6);
        assert!(matches!(err, Err(ToeplitzError::Hypothesis(_))));
    }

    #[test]
    fn pipeline_accepts_bounded_h() {
        let win = three_pi_window();
        let lat = Lattice::arithmetic(3.0 * PI, win);
        let h = SampledFunction::from_fn(
            |x| 0.3 * (0.7 * x).sin(),
            win,
            2000,
            GrowthClass::Bounded,
        );
        let sym = Symbol {
            family: Family::Linear { scale: 1.0 },
            h: Some(h),
            k1: 0.0,
        };
        let wit = zero_set_pipeline(&sym, &lat, Some(0.05), &PipelineConfig::default()).unwrap();
        assert!(wit.derivative_floor > 0.0);
        assert!(wit.growth.exponent >= 0.0);
    }
}
