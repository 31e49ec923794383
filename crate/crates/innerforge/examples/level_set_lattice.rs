//! Extract the level-set lattice `{f = 0 mod 2 pi}` of an increasing phase,
//! then inspect separation statistics and the counting function.
//!
//! ```bash
//! cargo run -p innerforge --example level_set_lattice
//! ```

use innerforge::lattice::{level_set, separation_stats, PhaseFunction};
use innerforge::weights::{Family, Weight, Window};

fn main() {
    let window = Window::new(-30.0, 30.0);
    let w = Weight::new(Family::Linear { scale: 1.0 }, window).unwrap();

    // a gently perturbed phase: still strictly increasing
    let f = PhaseFunction::new(
        |x| x + 0.5 * x.sin(),
        |x| 1.0 + 0.5 * x.cos(),
        window,
    );
    let lat = level_set(&f, window, 1e-12).expect("monotone phase");
    println!("level set of x + 0.5 sin x on [-30, 30]: {} points", lat.len());
    for (i, p) in lat.points().iter().enumerate().take(5) {
        println!("  lambda[{i}] = {p:+.12}");
    }

    let (sep, gap) = separation_stats(&w, &lat).unwrap();
    println!("alpha-separation: min = {sep:.6}, max gap = {gap:.6}");

    for x in [-7.0, 0.0, 7.0, 20.0] {
        println!("counting n({x:+.1}) = {}", lat.counting(x));
    }

    let mids = lat.midpoints();
    println!(
        "midpoints interleave: {}",
        mids.iter()
            .enumerate()
            .all(|(i, m)| lat.points()[i] < *m && *m < lat.points()[i + 1])
    );
}
