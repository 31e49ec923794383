//! Build the inner function of the 2 pi Z lattice: node exactness,
//! unimodular boundary values, Clark masses from residue products, and the
//! agreement between `|J'|` and the finite difference of the argument.
//!
//! ```bash
//! cargo run -p innerforge --example build_inner
//! ```

use std::f64::consts::PI;

use innerforge::conjugation::TailPolicy;
use innerforge::inner::build_inner;
use innerforge::lattice::Lattice;
use innerforge::weights::{Family, Weight, Window};

fn main() {
    let window = Window::new(-60.0, 60.0);
    let w = Weight::with_alpha_padding(Family::Linear { scale: 1.0 }, window, 640.0).unwrap();
    let lat = Lattice::arithmetic(2.0 * PI, window);
    let inner = build_inner(&w, &lat, TailPolicy::default()).unwrap();

    println!(
        "lattice: {} nodes on [{}, {}], C* = {:.8}",
        lat.len(),
        window.a,
        window.b,
        inner.cstar()
    );

    let mid = lat.len() / 2;
    let lam = lat.points()[mid];
    let om = lat.midpoints()[mid];
    println!("J({lam:+.4}) = {}", inner.eval(lam).unwrap());
    println!("J({om:+.4}) = {}", inner.eval(om).unwrap());
    let x = lam + 1.1;
    let j = inner.eval(x).unwrap();
    println!("J({x:+.4}) = {j:.6} with |J| = {:.12}", j.norm());

    println!(
        "arg J steps: arg({lam:+.4}) = {:+.6}, arg(next node) = {:+.6} (one full turn apart)",
        inner.arg(lam).unwrap(),
        inner.arg(lat.points()[mid + 1]).unwrap()
    );

    let sigma = inner.sigma1_at(mid).unwrap();
    let jp = inner.jprime_at_lambda(mid).unwrap();
    println!("clark mass at lambda: sigma1 = {sigma:.8}, |J'| = {jp:.8}, product/2pi = {:.12}", sigma * jp / (2.0 * PI));

    let h = 1e-5;
    let fd = (inner.arg(x + h).unwrap() - inner.arg(x - h).unwrap()) / (2.0 * h);
    let series = inner.jprime(x).unwrap();
    println!("|J'({x:+.4})|: clark series {series:.8} vs d/dx arg J {fd:.8}");
}
