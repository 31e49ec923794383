//! Over-dense lattices are not zero sets: the telescoped counting sums
//! `2 pi n(a_n) - alpha(a_n)` diverge linearly. This example certifies the
//! divergence for pi Z and (pi/2) Z under the linear weight.
//!
//! ```bash
//! cargo run -p innerforge --example necessity_certificate
//! ```

use std::f64::consts::PI;

use innerforge::lattice::Lattice;
use innerforge::toeplitz::necessity_certificate;
use innerforge::weights::{Family, Weight, Window};

fn main() {
    let window = Window::new(-150.0, 150.0);
    let w = Weight::new(Family::Linear { scale: 1.0 }, window).unwrap();

    for (name, gap, delta) in [("pi Z", PI, 0.5), ("(pi/2) Z", PI / 2.0, 0.5)] {
        let lat = Lattice::arithmetic(gap, window);
        let cert = necessity_certificate(&w, &lat, delta, 20.0).unwrap();
        println!(
            "{name}: lower density {:.5}, {} blocks, fitted slope {:.4}",
            cert.lower_density_estimate,
            cert.points.len(),
            cert.slope
        );
        for &(a, v) in cert.points.iter().take(4) {
            println!(
                "  a = {a:7.2}: 2 pi n - alpha = {v:8.4} > delta alpha = {:8.4}",
                delta * a
            );
        }
    }

    // at the critical density the certificate does not apply
    let lat = Lattice::arithmetic(2.0 * PI, window);
    match necessity_certificate(&w, &lat, 0.5, 20.0) {
        Err(e) => println!("2 pi Z: {e}"),
        Ok(_) => unreachable!("exact threshold density is not over-dense"),
    }
}
