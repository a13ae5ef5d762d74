//! Super-stable parameters: periods whose cycle contains the critical point.
//!
//! Solved by bracketing bisection on `xi_n(a) = f_a^n(0)` plus a Newton
//! polish with the parameter derivative `D_a xi_n`. Window widths shrink like
//! `4^-n` near `a = 2`, so deep periods need the extended arithmetic mode.
//!
//! ```bash
//! cargo run --example superstable_roots
//! ```

use quadfam::param::{find_attractor, find_superstable, find_superstable_prec, ParamWindow};
use quadfam::real::Precision;

fn main() {
    // the super-stable 2-cycle {0, 1} sits exactly at a = 1
    let a2 = find_superstable(ParamWindow::new(0.9, 1.1).unwrap(), 2).unwrap();
    println!("period 2: a* = {}", a2.get());

    // the period-3 window: real root of a^3 - 2a^2 + a - 1
    let a3 = find_superstable(ParamWindow::new(1.7, 1.8).unwrap(), 3).unwrap();
    println!("period 3: a* = {:.15}", a3.get());

    // every solved root is confirmed by independent attractor detection
    for (window, n) in [((1.3, 1.45), 4), ((1.6, 1.7), 5), ((1.46, 1.48), 6)] {
        let w = ParamWindow::new(window.0, window.1).unwrap();
        match find_superstable(w, n) {
            Ok(root) => {
                let orbit = find_attractor(root, 100_000, 64, 1e-9).expect("attractor");
                println!(
                    "period {n}: a* = {:.15} -> detected attractor period {} ({:?})",
                    root.get(),
                    orbit.period,
                    orbit.stability
                );
            }
            Err(e) => println!("period {n} in [{}, {}]: {e}", window.0, window.1),
        }
    }

    // nearest-to-2 roots: the period-n window there is ~4^-n wide; n = 24
    // is far below one f64 ulp of 2, so only the extended mode resolves it
    let n = 24;
    let lo = 2.0 - 4f64.powi(-(n as i32) + 4);
    let w = ParamWindow::new(lo, 2.0).unwrap();
    let root = find_superstable_prec(w, n, Precision::Extended).unwrap();
    println!("\nperiod {n} nearest 2 (extended precision):");
    println!("  a* = {}", root.a_decimal);
    println!("  residual (scaled) = {:.3e}", root.residual);
    println!("  rounded to f64 the window collapses: {:.17}", root.a.get());
}
