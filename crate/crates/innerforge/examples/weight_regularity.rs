//! Build weights from the built-in families, evaluate the d_alpha metric,
//! and run the regular-locally-doubling diagnostics.
//!
//! ```bash
//! cargo run -p innerforge --example weight_regularity
//! ```

use innerforge::weights::{regularity_report, Family, Weight, Window};

fn main() {
    let window = Window::new(-40.0, 40.0);
    let cases = vec![
        ("linear", Family::Linear { scale: 1.0 }),
        (
            "power kappa = 2",
            Family::Power {
                kappa: 2.0,
                scale: 1.0,
            },
        ),
        (
            "power kappa = 0.5",
            Family::Power {
                kappa: 0.5,
                scale: 1.0,
            },
        ),
        (
            "sampled e^x",
            Family::Sampled {
                samples: (0..=800)
                    .map(|i| {
                        let x = -40.0 + 80.0 * i as f64 / 800.0;
                        [x, x.exp()]
                    })
                    .collect(),
            },
        ),
    ];

    for (name, fam) in cases {
        let w = Weight::new(fam, window).expect("weight builds");
        let (a, d1, d2) = w.eval(1.0).unwrap();
        println!("{name}: alpha(1) = {a:.6}, alpha'(1) = {d1:.6}, alpha''(1) = {d2:.6}");
        println!(
            "  d_alpha(0, 3) = {:.6}, alpha-length of [0, 3] = {:.6}",
            w.d_alpha(0.0, 3.0).unwrap(),
            w.alpha_length(Window { a: 0.0, b: 3.0 }).unwrap()
        );
        let rep = regularity_report(&w, window, 4000, 1.0, 7).unwrap();
        println!(
            "  comparability m = {:.4}, M = {:.4} ({}), doubling C = {:.4} ({}), lower growth c <x>^{:.3} ({})",
            rep.m,
            rep.big_m,
            pass(rep.comparability_pass),
            rep.c_doubling,
            pass(rep.doubling_pass),
            rep.kappa_hat,
            pass(rep.lower_growth_pass),
        );
    }
}

fn pass(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}
