//! Alpha-Beurling upper and lower densities of arithmetic lattices against
//! the 1/(2 pi) threshold that separates admissible zero sets from refused
//! ones.
//!
//! ```bash
//! cargo run -p innerforge --example densities
//! ```

use std::f64::consts::PI;

use innerforge::lattice::Lattice;
use innerforge::weights::{lower_density, upper_density, Family, Weight, Window, DENSITY_THRESHOLD};

fn main() {
    let window = Window::new(-150.0, 150.0);
    let w = Weight::new(Family::Linear { scale: 1.0 }, window).unwrap();
    let r_list = [30.0, 75.0, 140.0];

    println!("threshold 1/(2 pi) = {DENSITY_THRESHOLD:.6}\n");
    for (name, gap) in [
        ("pi Z      ", PI),
        ("2 pi Z    ", 2.0 * PI),
        ("3 pi Z    ", 3.0 * PI),
        ("4 pi Z    ", 4.0 * PI),
    ] {
        let lat = Lattice::arithmetic(gap, window);
        let up = upper_density(&w, lat.points(), window, &r_list).unwrap();
        let low = lower_density(&w, lat.points(), window, &r_list).unwrap();
        println!(
            "{name} upper {:.6} lower {:.6}  margin {:+.6}  {}",
            up.limit_estimate,
            low.limit_estimate,
            up.margin_vs_threshold,
            if up.limit_estimate < DENSITY_THRESHOLD {
                "below threshold"
            } else {
                "refused by the gate"
            }
        );
        for row in &up.rows {
            println!(
                "    r = {:6.1}: max ratio {:.6} on [{:+.2}, {:+.2}]",
                row.r, row.ratio, row.interval_left, row.interval_right
            );
        }
    }
}
