//! Admissible-majorant witness: given the inner function with phase `x` and
//! the weight `omega = exp(-0.2 log<x>)`, build a certified minorant
//! `|f_final| <= omega` with the sinc-power growth correction.
//!
//! ```bash
//! cargo run -p innerforge --example bm_majorant
//! ```

use innerforge::conjugation::{GrowthClass, SampledFunction};
use innerforge::inner::BlaschkeInner;
use innerforge::majorant::{majorant_pipeline, verify_minorant, MajorantConfig, MajorantProblem};
use innerforge::weights::Window;

fn main() {
    let window = Window::new(-45.0, 45.0);
    let omega = SampledFunction::from_fn(
        |t| 0.2 * 0.5 * (1.0 + t * t).ln(),
        window,
        900,
        GrowthClass::Log,
    );
    let problem = MajorantProblem {
        theta: BlaschkeInner::new(vec![], 1.0),
        omega,
        window,
        eps: None,
    };

    let wit = majorant_pipeline(&problem, &MajorantConfig::default()).unwrap();
    println!("hypotheses: Poisson norm {:.4}, C1 probe {:.4e}, inf alpha' {:.4}",
        wit.poisson_norm_omega, wit.c1_second_difference, wit.inf_alpha1);
    println!(
        "eps = {:.4}, fitted modulus growth N = {:.4} -> N0 = {}, sinc delta = {:.5}",
        wit.eps, wit.n_fit, wit.n0, wit.delta_sinc
    );
    println!(
        "sinc exponent budget: delta (N0+1) = {:.5} < eps = {:.4}",
        wit.delta_sinc * (wit.n0 as f64 + 1.0),
        wit.eps
    );
    println!("normalization C = {:.6}", wit.c_maj);

    let rep = verify_minorant(&wit).unwrap();
    println!(
        "verification: {} points, worst ratio {:.6}, nontriviality {:.3e}, refined max ratio {:.4}",
        rep.checked_points, rep.worst_ratio, rep.nontriviality, rep.refined_max_ratio
    );

    // a few rows of the witness table
    println!("x       omega       |f_final|   ratio");
    for r in wit.rows.iter().step_by(wit.rows.len() / 8) {
        println!("{:+7.2} {:.5e} {:.5e} {:.4}", r[0], r[1], r[2], r[3]);
    }
}
