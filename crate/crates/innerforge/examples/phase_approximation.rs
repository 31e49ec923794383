//! Approximate an increasing phase target by the argument of an inner
//! function, with the measured sup certificate `|f - arg J - c| <= 2 pi`.
//!
//! ```bash
//! cargo run -p innerforge --example phase_approximation
//! ```

use std::f64::consts::PI;

use innerforge::conjugation::TailPolicy;
use innerforge::inner::approximate_phase;
use innerforge::lattice::PhaseFunction;
use innerforge::weights::{Family, Weight, Window};

fn main() {
    // f = alpha for the power weight kappa = 1/2
    let window = Window::new(-45.0, 45.0);
    let fam = Family::Power {
        kappa: 0.5,
        scale: 1.0,
    };
    let plain = Weight::new(fam.clone(), window).unwrap();
    let pad = 5.0 * plain.alpha_length(window).unwrap() * 1.2 + 10.0;
    let w = Weight::with_alpha_padding(fam, window, pad).unwrap();
    let f = PhaseFunction::from_weight(&w, window);

    let (inner, cert) =
        approximate_phase(&w, &f, TailPolicy::default(), 1e-12, 100.0, false).unwrap();

    println!(
        "phase target: alpha of the power weight kappa = 1/2 on [{}, {}]",
        window.a, window.b
    );
    println!("lattice: {} nodes", inner.lattice().len());
    println!(
        "measured sup |f - arg J - c| = {:.6} (bound 2 pi = {:.6})",
        cert.sup_deviation,
        2.0 * PI
    );
    println!("matched constant c = {:+.6}", cert.matched_const);
    println!(
        "f'/alpha' probe band: [{:.4}, {:.4}]",
        cert.ratio_min, cert.ratio_max
    );
    println!("tail budget at the window edge: {:.2e}", cert.tail_budget);
}
