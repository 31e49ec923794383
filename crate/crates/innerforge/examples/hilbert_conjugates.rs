//! The regularized Hilbert transform two ways: closed form for
//! piecewise-constant data against adaptive principal-value quadrature, plus
//! an analytic conjugate pair and the Schwartz-integral boundary limit.
//!
//! ```bash
//! cargo run -p innerforge --example hilbert_conjugates
//! ```

use std::f64::consts::PI;

use num_complex::Complex64;

use innerforge::conjugation::{
    hilbert_indicator_interval, hilbert_quadrature, GrowthClass, HalfIndicator, SampledFunction,
    TailPolicy,
};
use innerforge::lattice::Lattice;
use innerforge::weights::{Family, Weight, Window};

fn main() {
    // closed form for the unit interval: (3 ln 2)/(2 pi) at x = 2
    let v = hilbert_indicator_interval(0.0, 1.0, 2.0);
    println!(
        "indicator(0,1)~ at 2: {v:.12} (closed form {:.12})",
        3.0 * 2.0f64.ln() / (2.0 * PI)
    );

    // half-indicator of 2 pi Z: closed form vs quadrature
    let window = Window::new(-40.0, 40.0);
    let w = Weight::with_alpha_padding(Family::Linear { scale: 1.0 }, window, 500.0).unwrap();
    let lat = Lattice::arithmetic(2.0 * PI, window);
    let u = HalfIndicator::new(&w, &lat, TailPolicy::default()).unwrap();
    for x in [0.5, PI / 2.0, 11.0] {
        let cf = u.hilbert(x).unwrap();
        let q = u.hilbert_by_quadrature(x, 1e-8).unwrap();
        println!(
            "u~({x:5.2}): closed {cf:+.10}  quadrature {:+.10}  |diff| {:.2e}",
            q.value,
            (cf - q.value).abs()
        );
    }

    // analytic conjugate pair: (1/(1+t^2))~ = x/(1+x^2)
    let n = 16000;
    let xs: Vec<f64> = (1..n)
        .map(|i| (-PI / 2.0 + PI * i as f64 / n as f64).tan())
        .collect();
    let vals: Vec<f64> = xs.iter().map(|&t| 1.0 / (1.0 + t * t)).collect();
    let s = SampledFunction::new(xs, vals, GrowthClass::Bounded);
    let got = hilbert_quadrature(&s, 1.0, 1e-9).unwrap().value;
    println!("poisson-kernel conjugate at 1: {got:.10} (exact 0.5)");

    // Schwartz integral boundary limit: Re S u(x + iy) -> u(x)
    let x = 1.2;
    for y in [0.5, 0.1, 0.02] {
        let sv = u.schwartz(Complex64::new(x, y)).unwrap();
        println!(
            "Re S u({x} + {y}i) = {:+.6} -> u({x}) = {:+.1}",
            sv.re,
            u.value(x)
        );
    }
}
