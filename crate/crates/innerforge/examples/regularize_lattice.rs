//! Enlarge a sparse lattice so that `(1-delta) alpha - 2 pi n` stays
//! bounded, keeping separation, and inspect the measured deficit sup against
//! the certified bound.
//!
//! ```bash
//! cargo run -p innerforge --example regularize_lattice
//! ```

use std::f64::consts::PI;

use innerforge::lattice::{regularize, Lattice};
use innerforge::weights::{Family, Weight, Window};

fn main() {
    let window = Window::new(-200.0, 200.0);
    let w = Weight::new(Family::Linear { scale: 1.0 }, window).unwrap();
    let lat = Lattice::arithmetic(4.0 * PI, window);
    println!("original lattice: {} points at spacing 4 pi", lat.len());

    let res = regularize(&w, &lat, 0.1, 20.0, 1.0).unwrap();
    println!(
        "regularized: {} points (+{} inserted), min alpha-separation {:.4}",
        res.lattice.len(),
        res.added.len(),
        res.min_separation
    );
    println!(
        "measured sup |(1-delta) alpha - 2 pi n| = {:.6} (certified bound {:.2})",
        res.measured_sup, res.certified_bound
    );
    println!("blocks (alpha-length {}):", res.n0);
    for b in res.blocks.iter().take(6) {
        println!(
            "  [{:+8.2}, {:+8.2}): {} points (base target {})",
            b.lo, b.hi, b.count, b.target
        );
    }

    // an over-dense lattice is refused up front
    let dense = Lattice::arithmetic(PI, window);
    match regularize(&w, &dense, 0.1, 20.0, 1.0) {
        Err(e) => println!("pi Z refused: {e}"),
        Ok(_) => unreachable!("density precondition must fail"),
    }
}
