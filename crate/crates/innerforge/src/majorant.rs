//! Beurling-Malliavin admissible-majorant witnesses: given an inner function
//! `Theta` and a weight `omega = exp(-Omega)`, build a certified minorant
//! `|f_final| <= omega` through the modulus construction
//! `2 log m = -(2 Omega~ + arg Theta - 2 eps x - arg I)~` and a sinc-power
//! correction absorbing the fitted polynomial growth.


use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::conjugation::{
    hilbert_quadrature, poisson_norm, zygmund_integral, ConjugationError, GrowthClass,
    SampledFunction, TailPolicy,
};
use crate::inner::{approximate_phase, BlaschkeInner, InnerError, PhaseCertificate};
use crate::lattice::{LatticeError, PhaseFunction};
use crate::weights::{regularity_report, Family, SumTerm, Weight, WeightError, Window};


#[derive(Debug, Error)]
pub enum MajorantError {
    #[error("hypothesis (i) failed: Poisson norm of Omega is {norm}")]
    PoissonNorm { norm: f64 },
    #[error("hypothesis (ii) failed: Omega~ second differences reach {measured} (limit {limit})")]
    NotC1 { measured: f64, limit: f64 },
    #[error("hypothesis (iii) failed: {0}")]
    Regularity(String),
    #[error("epsilon = {eps} infeasible: alpha' - 2 eps reaches {worst}")]
    Epsilon { eps: f64, worst: f64 },
    #[error("minorant verification failed at x = {x}: |f| = {f} > omega = {omega}")]
    Verification { x: f64, f: f64, omega: f64 },
    #[error("witness degenerate: nontriviality ratio {0}")]
    Trivial(f64),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Inner(#[from] InnerError),
    #[error(transparent)]
    Conjugation(#[from] ConjugationError),
}

/// Inputs of the majorant run.
#[derive(Debug, Clone)]
pub struct MajorantProblem {
    pub theta: BlaschkeInner,
    pub omega: SampledFunction,
    pub window: Window,
    /// shift `eps`; `None` picks a quarter of the measured `inf alpha'`
    pub eps: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MajorantConfig {
    pub quad_tol: f64,
    pub root_tol: f64,
    /// sample count for the working grid
    pub grid_points: usize,
    pub tail: TailPolicy,
    pub probes: usize,
    pub seed: u64,
    /// limit for the second-difference C1 probe of Omega~
    pub c1_limit: f64,
}

impl Default for MajorantConfig {
    fn default() -> Self {
        Self {
            quad_tol: 1e-6,
            root_tol: 1e-11,
            grid_points: 1200,
            tail: TailPolicy::default(),
            probes: 1500,
            seed: 7,
            c1_limit: 1e6,
        }
    }
}

/// The sinc-power correction `(sin(x delta)/(x delta))^(N0+1)` with
/// `delta = eps / (2 (N0 + 1))`, an entire function of exponential type
/// `eps/2 < eps`.
pub fn sinc_correction(n0: u32, eps: f64) -> (f64, impl Fn(f64) -> f64 + Clone) {
    assert!(eps > 0.0);
    let delta = eps / (2.0 * (n0 as f64 + 1.0));
    let pw = n0 as i32 + 1;
    let eval = move |x: f64| {
        let u = x * delta;
        let s = if u.abs() < 1e-8 {
            1.0 - u * u / 6.0
        } else {
            u.sin() / u
        };
        s.powi(pw)
    };
    (delta, eval)
}

/// Certified minorant data.
#[derive(Debug, Serialize)]
pub struct MajorantWitness {
    pub eps: f64,
    /// fitted polynomial growth exponent of m
    pub n_fit: f64,
    pub n0: u32,
    pub delta_sinc: f64,
    /// measured sup of |m * sincpow|, the normalization constant
    pub c_maj: f64,
    pub nontriviality: f64,
    pub poisson_norm_omega: f64,
    pub c1_second_difference: f64,
    pub inf_alpha1: f64,
    pub zygmund: f64,
    pub phase_cert: PhaseCertificate,
    /// grid rows (x, omega, |f_final| after normalization, ratio)
    pub rows: Vec<[f64; 4]>,
    /// log m on the evaluation grid
    pub log_m: SampledFunction,
    #[serde(skip)]
    pub omega_samples: SampledFunction,
}

/// Run the majorant construction and normalize the result under `omega`.
pub fn majorant_pipeline(
    p: &MajorantProblem,
    config: &MajorantConfig,
) -> Result<MajorantWitness, MajorantError> {
    let window = p.window;

    // hypothesis (i): Omega in L^1(P)
    let pnorm = poisson_norm(&p.omega);
    if !pnorm.is_finite() {
        return Err(MajorantError::PoissonNorm { norm: pnorm });
    }

    // Omega~ on a working grid (quadrature with the declared growth class)
    let n = config.grid_points.max(64);
    let margin = window.len() * 1e-4;
    let xs: Vec<f64> = (0..=n)
        .map(|i| (window.a + margin) + (window.len() - 2.0 * margin) * i as f64 / n as f64)
        .collect();
    let omega_tilde: Vec<f64> = xs
        .par_iter()
        .map(|&x| Ok(hilbert_quadrature(&p.omega, x, config.quad_tol)?.value))
        .collect::<Result<_, MajorantError>>()?;

    // hypothesis (ii): C1 by second-difference probes
    let h = xs[1] - xs[0];
    let mut c1 = 0.0f64;
    for i in 1..xs.len() - 1 {
        let dd = (omega_tilde[i + 1] - 2.0 * omega_tilde[i] + omega_tilde[i - 1]) / (h * h);
        c1 = c1.max(dd.abs());
    }
    if !c1.is_finite() || c1 > config.c1_limit {
        return Err(MajorantError::NotC1 {
            measured: c1,
            limit: config.c1_limit,
        });
    }

    // alpha = arg Theta + 2 Omega~, with alpha' from the Blaschke phase
    // derivative plus central differences of Omega~
    let mut alpha1_samples = Vec::with_capacity(xs.len());
    for i in 0..xs.len() {
        let d_omt = if i == 0 {
            (omega_tilde[1] - omega_tilde[0]) / h
        } else if i == xs.len() - 1 {
            (omega_tilde[i] - omega_tilde[i - 1]) / h
        } else {
            (omega_tilde[i + 1] - omega_tilde[i - 1]) / (2.0 * h)
        };
        alpha1_samples.push([xs[i], p.theta.arg_prime(xs[i]) + 2.0 * d_omt]);
    }
    let fam_alpha = Family::Sampled {
        samples: alpha1_samples.clone(),
    };
    let w_alpha = Weight::new(fam_alpha.clone(), window)?;
    let reg = regularity_report(&w_alpha, window, config.probes, 1.0, config.seed)
        .map_err(MajorantError::Weight)?;
    if !reg.all_pass() {
        return Err(MajorantError::Regularity(format!(
            "alpha = arg Theta + 2 Omega~ fails doubling diagnostics (comparability {}, doubling {}, lower growth {})",
            reg.comparability_pass, reg.doubling_pass, reg.lower_growth_pass
        )));
    }
    let inf_alpha1 = alpha1_samples
        .iter()
        .fold(f64::INFINITY, |m, s| m.min(s[1]));
    if inf_alpha1 <= 0.0 {
        return Err(MajorantError::Regularity(format!(
            "alpha' reaches {inf_alpha1}, not bounded below by a positive constant"
        )));
    }

    // eps with alpha' - 2 eps >= inf alpha' / 2
    let eps = p.eps.unwrap_or(inf_alpha1 / 4.0);
    let worst = inf_alpha1 - 2.0 * eps;
    if worst <= 0.0 {
        return Err(MajorantError::Epsilon { eps, worst });
    }

    // the shifted weight alpha - 2 eps x must stay regular (re-verified, not
    // assumed)
    let fam_shift = Family::Sum {
        terms: vec![
            SumTerm {
                coeff: 1.0,
                family: fam_alpha.clone(),
            },
            SumTerm {
                coeff: -2.0 * eps,
                family: Family::Linear { scale: 1.0 },
            },
        ],
    };
    let w_shift_plain = Weight::new(fam_shift.clone(), window)?;
    let reg_shift = regularity_report(&w_shift_plain, window, config.probes, 1.0, config.seed)?;
    if !reg_shift.all_pass() {
        return Err(MajorantError::Regularity(
            "alpha - 2 eps x loses the doubling diagnostics".into(),
        ));
    }

    // I approximating alpha - 2 eps x; the phase itself is the sampled
    // alpha plus the exact linear shift
    let alpha_samples: Vec<f64> = xs
        .iter()
        .zip(&omega_tilde)
        .map(|(&x, &ot)| p.theta.arg(x) + 2.0 * ot)
        .collect();
    let phase_vals: Vec<f64> = xs
        .iter()
        .zip(&alpha_samples)
        .map(|(&x, &a)| a - 2.0 * eps * x)
        .collect();
    let f_i = PhaseFunction::from_samples(xs.clone(), phase_vals.clone(), window);
    let pad = config.tail.width_factor * w_shift_plain.alpha_length(window)? * 1.2 + 10.0;
    let w_i = Weight::with_alpha_padding(fam_shift, window, pad)?;
    let (inner_i, phase_cert) =
        approximate_phase(&w_i, &f_i, config.tail, config.root_tol, 100.0, false)?;

    // bounded part and its conjugate: 2 log m = -(part)~
    let part_vals: Vec<f64> = xs
        .iter()
        .zip(&phase_vals)
        .map(|(&x, &ph)| Ok(ph - inner_i.arg(x)?))
        .collect::<Result<_, MajorantError>>()?;
    let part = SampledFunction::new(xs.clone(), part_vals.clone(), GrowthClass::Bounded);
    let eval_grid: Vec<f64> = xs[1..xs.len() - 1].to_vec();
    let log_m_vals: Vec<f64> = eval_grid
        .par_iter()
        .map(|&x| Ok(-0.5 * hilbert_quadrature(&part, x, config.quad_tol)?.value))
        .collect::<Result<_, MajorantError>>()?;
    let log_m = SampledFunction::new(eval_grid.clone(), log_m_vals.clone(), GrowthClass::Log);

    // polynomial growth fit of m and the sinc budget
    let n_fit = {
        let mut sxx = 0.0;
        let mut sxy = 0.0;
        let mut sx = 0.0;
        let mut sy = 0.0;
        let n = eval_grid.len() as f64;
        for (&x, &lm) in eval_grid.iter().zip(&log_m_vals) {
            let lx = 0.5 * (1.0 + x * x).ln();
            sxx += lx * lx;
            sxy += lx * lm.abs();
            sx += lx;
            sy += lm.abs();
        }
        let det = n * sxx - sx * sx;
        if det.abs() > 1e-12 {
            ((n * sxy - sx * sy) / det).max(0.0)
        } else {
            0.0
        }
    };
    let n0 = n_fit.ceil() as u32;
    let (delta_sinc, sinc) = sinc_correction(n0, eps);
    assert!(
        delta_sinc * (n0 as f64 + 1.0) < eps,
        "sinc exponent budget must stay under eps"
    );

    // assemble |f_final| = m omega sincpow and normalize by the measured sup
    // of |f|/omega = m sincpow
    let mut c_maj: f64 = 0.0;
    let mut raw = Vec::with_capacity(eval_grid.len());
    for (&x, &lm) in eval_grid.iter().zip(&log_m_vals) {
        let v = lm.exp() * sinc(x).abs();
        c_maj = c_maj.max(v);
        raw.push(v);
    }
    if !(c_maj.is_finite() && c_maj > 0.0) {
        return Err(MajorantError::Trivial(c_maj));
    }
    let mut rows = Vec::with_capacity(eval_grid.len());
    for (i, &x) in eval_grid.iter().enumerate() {
        let om = (-p.omega.interp(x)).exp();
        let ratio = raw[i] / c_maj;
        rows.push([x, om, ratio * om, ratio]);
    }
    let nontriviality = rows.iter().fold(0.0f64, |m, r| m.max(r[3]));

    // Zygmund diagnostic of the bounded part
    let zygmund = zygmund_integral(&part, 96)?;

    Ok(MajorantWitness {
        eps,
        n_fit,
        n0,
        delta_sinc,
        c_maj,
        nontriviality,
        poisson_norm_omega: pnorm,
        c1_second_difference: c1,
        inf_alpha1,
        zygmund,
        phase_cert,
        rows,
        log_m,
        omega_samples: p.omega.clone(),
    })
}

/// Verification report of a witness on a refinement of its grid.
#[derive(Debug, Clone, Serialize)]
pub struct MinorantReport {
    pub checked_points: usize,
    pub worst_ratio: f64,
    pub nontriviality: f64,
    pub refined_max_ratio: f64,
}

/// Hard-assert the pointwise domination `|f_final| <= omega` after
/// normalization and measure the ratio stability on a twice-refined grid.
pub fn verify_minorant(wit: &MajorantWitness) -> Result<MinorantReport, MajorantError> {
    let mut worst: f64 = 0.0;
    for r in &wit.rows {
        let ratio = if r[1] > 0.0 { r[2] / r[1] } else { 0.0 };
        if r[2] > r[1] * (1.0 + 1e-12) {
            return Err(MajorantError::Verification {
                x: r[0],
                f: r[2],
                omega: r[1],
            });
        }
        worst = worst.max(ratio);
    }
    if wit.nontriviality < 1e-12 {
        return Err(MajorantError::Trivial(wit.nontriviality));
    }
    // refined grid: midpoints of the stored rows, m interpolated
    // geometrically through log m
    let (delta_sinc, n0) = (wit.delta_sinc, wit.n0);
    let pw = n0 as i32 + 1;
    let sinc = move |x: f64| {
        let u = x * delta_sinc;
        let s = if u.abs() < 1e-8 {
            1.0 - u * u / 6.0
        } else {
            u.sin() / u
        };
        s.powi(pw)
    };
    let mut refined_max: f64 = 0.0;
    for pair in wit.rows.windows(2) {
        let x = 0.5 * (pair[0][0] + pair[1][0]);
        let m = wit.log_m.interp(x).exp();
        let ratio = m * sinc(x).abs() / wit.c_maj;
        refined_max = refined_max.max(ratio);
    }
    Ok(MinorantReport {
        checked_points: wit.rows.len() * 2 - 1,
        worst_ratio: worst,
        nontriviality: wit.nontriviality,
        refined_max_ratio: refined_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn constant_omega(window: Window) -> SampledFunction {
        SampledFunction::from_fn(|_| 1.0, window, 600, GrowthClass::Bounded)
    }

    #[test]
    fn sinc_correction_values() {
        let (_, s) = sinc_correction(0, 2.0);
        // delta = 1: zero of sinc at pi
        assert_eq!(s(0.0), 1.0);
        assert!(s(PI).abs() < 1e-15);
        // scaled decay bound |h(x)| <= (sqrt(2)/delta)^(N0+1) <x>^-(N0+1)
        let (delta, s) = sinc_correction(3, 0.4);
        let c = (2.0f64.sqrt() / delta).powi(4);
        for i in 0..200 {
            let x = -100.0 + i as f64;
            let bound = c * (1.0 + x * x).powf(-2.0);
            assert!(s(x).abs() <= bound * (1.0 + 1e-12), "x = {x}");
        }
        assert!(delta * 4.0 < 0.4);
    }

    #[test]
    fn pipeline_constant_weight() {
        let win = Window::new(-45.0, 45.0);
        let p = MajorantProblem {
            theta: BlaschkeInner::new(vec![], 1.0),
            omega: constant_omega(win),
            window: win,
            eps: None,
        };
        let wit = majorant_pipeline(&p, &MajorantConfig::default()).unwrap();
        // omega = e^{-1}: every normalized |f| must sit below it
        for r in &wit.rows {
            assert!((r[1] - (-1.0f64).exp()).abs() < 1e-12);
            assert!(r[2] <= r[1] * (1.0 + 1e-12));
        }
        assert!(wit.nontriviality > 1e-6);
        assert!(wit.delta_sinc * (wit.n0 as f64 + 1.0) < wit.eps);
        let rep = verify_minorant(&wit).unwrap();
        assert!(rep.refined_max_ratio <= 1.25 && rep.refined_max_ratio >= 0.8);
    }

    #[test]
    fn pipeline_log_weight() {
        let win = Window::new(-45.0, 45.0);
        let omega = SampledFunction::from_fn(
            |t| 0.2 * (0.5 * (1.0 + t * t).ln()),
            win,
            900,
            GrowthClass::Log,
        );
        let p = MajorantProblem {
            theta: BlaschkeInner::new(vec![], 1.0),
            omega,
            window: win,
            eps: None,
        };
        let wit = majorant_pipeline(&p, &MajorantConfig::default()).unwrap();
        assert!(wit.poisson_norm_omega.is_finite());
        for r in &wit.rows {
            assert!(r[2] <= r[1] * (1.0 + 1e-12), "x = {}", r[0]);
        }
        assert!(wit.nontriviality > 1e-6);
        verify_minorant(&wit).unwrap();
    }

    #[test]
    fn omega_tilde_of_log_weight_matches_arctan() {
        // conjugate of s log<x> is -s arctan(x); checked through the same
        // quadrature the pipeline uses
        let win = Window::new(-400.0, 400.0);
        let s = 0.2;
        let omega = SampledFunction::from_fn(
            |t| s * 0.5 * (1.0 + t * t).ln(),
            win,
            40_000,
            GrowthClass::Log,
        );
        for &x in &[0.5, 1.0, 3.0, -7.0] {
            let got = hilbert_quadrature(&omega, x, 1e-8).unwrap().value;
            let expect = -s * x.atan();
            assert!(
                (got - expect).abs() < 2e-3,
                "x = {x}: {got} vs {expect}"
            );
        }
    }

    #[test]
    fn divergent_omega_refused() {
        let win = Window::new(-30.0, 30.0);
        let omega = SampledFunction::from_fn(|t| t.abs(), win, 400, GrowthClass::Poly(1.0));
        let p = MajorantProblem {
            theta: BlaschkeInner::new(vec![], 1.0),
            omega,
            window: win,
            eps: None,
        };
        assert!(matches!(
            majorant_pipeline(&p, &MajorantConfig::default()),
            Err(MajorantError::PoissonNorm { .. })
        ));
    }

    #[test]
    fn corrupted_witness_fails_verification() {
        let win = Window::new(-45.0, 45.0);
        let p = MajorantProblem {
            theta: BlaschkeInner::new(vec![], 1.0),
            omega: constant_omega(win),
            window: win,
            eps: None,
        };
        let mut wit = majorant_pipeline(&p, &MajorantConfig::default()).unwrap();
        for r in &mut wit.rows {
            r[2] *= 2.0; // doubled modulus
        }
        assert!(matches!(
            verify_minorant(&wit),
            Err(MajorantError::Verification { .. })
        ));
    }

    #[test]
    fn modulus_independent_of_constant_omega_level() {
        // Omega enters m only through its conjugate, which vanishes for
        // constants: two constant levels give the same log m to 1e-8
        let win = Window::new(-45.0, 45.0);
        let mk = |level: f64| MajorantProblem {
            theta: BlaschkeInner::new(vec![], 1.0),
            omega: SampledFunction::from_fn(move |_| level, win, 600, GrowthClass::Bounded),
            window: win,
            eps: Some(0.25),
        };
        let w1 = majorant_pipeline(&mk(1.0), &MajorantConfig::default()).unwrap();
        let w2 = majorant_pipeline(&mk(0.5), &MajorantConfig::default()).unwrap();
        assert_eq!(w1.log_m.xs().len(), w2.log_m.xs().len());
        for (a, b) in w1.log_m.vals().iter().zip(w2.log_m.vals()) {
            assert!((a - b).abs() < 1e-8, "{a} vs {b}");
        }
    }

    #[test]
    fn constant_omega_reduces_to_pure_phase() {
        // with Omega constant the conjugate vanishes and alpha = arg Theta;
        // the pipeline's m then matches the pure construction's m closely
        let win = Window::new(-45.0, 45.0);
        let p = MajorantProblem {
            theta: BlaschkeInner::new(vec![], 1.0),
            omega: constant_omega(win),
            window: win,
            eps: Some(0.25),
        };
        let wit = majorant_pipeline(&p, &MajorantConfig::default()).unwrap();
        // alpha' = 1 everywhere: measured inf close to 1
        assert!((wit.inf_alpha1 - 1.0).abs() < 1e-2, "{}", wit.inf_alpha1);
    }
}
