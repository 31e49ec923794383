//! Full zero-set certification run for the symbol with `arg U = -x` and the
//! lattice 3 pi Z: density gate, regularization, the two inner
//! constructions, the modulus with its growth sandwich, and the per-node
//! derivative floor.
//!
//! ```bash
//! cargo run -p innerforge --example zero_set_certificate
//! ```

use std::f64::consts::PI;

use innerforge::lattice::Lattice;
use innerforge::toeplitz::{eval_t, zero_set_pipeline, PipelineConfig, Symbol};
use innerforge::weights::{Family, Window, DENSITY_THRESHOLD};

fn main() {
    let window = Window::new(-30.0 * PI, 30.0 * PI);
    let lat = Lattice::arithmetic(3.0 * PI, window);
    let sym = Symbol {
        family: Family::Linear { scale: 1.0 },
        h: None,
        k1: 0.0,
    };

    let wit = zero_set_pipeline(&sym, &lat, Some(0.05), &PipelineConfig::default()).unwrap();
    println!(
        "density estimate {:.6} < 1/(2 pi) = {:.6} (margin {:.4})",
        wit.density_estimate, DENSITY_THRESHOLD, wit.density_margin
    );
    println!(
        "delta = {:.4}, eps = {}, regularization sup = {:.4}",
        wit.delta, wit.eps, wit.regularization_sup
    );
    println!(
        "modulus growth sandwich: {:.4e} <x>^-{:.3} <= m <= {:.4e} <x>^{:.3}",
        wit.growth.c_lower, wit.growth.exponent, wit.growth.c_upper, wit.growth.exponent
    );
    println!(
        "per-node table: {} rows, all |T(lambda)| = {}, derivative floor {:.4e}",
        wit.rows.len(),
        wit.rows.iter().map(|r| r.t_abs).fold(0.0, f64::max),
        wit.derivative_floor
    );
    println!("zygmund diagnostic: {:.4} (warning: {})", wit.zygmund, wit.zygmund_warning);

    // sample |T| on and off the zero set
    let lam = wit.lattice_prime.points()[wit.lattice_prime.len() / 2];
    let tv = eval_t(&wit, lam).unwrap();
    println!("|T| at a node {lam:+.4}: {} ({})", tv.abs_t, tv.note.unwrap_or_default());
    let tv = eval_t(&wit, lam + 2.0).unwrap();
    println!("|T| off the zero set at {:+.4}: {:.6}", lam + 2.0, tv.abs_t);
}
