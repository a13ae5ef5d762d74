//! Orbits and derivatives of the quadratic family.
//!
//! ```bash
//! cargo run --example orbits
//! ```

use quadfam::dynamics::{
    derivative_along_orbit, eval_map, iterate_orbit, lyapunov_exponent, MapParam,
};
use quadfam::rng::SplitMix64;

fn main() {
    let a = MapParam::new(2.0).unwrap();

    println!("one step of the map at a = 2:");
    for x in [0.0, 0.5, 1.0] {
        println!("  f({x}) = {}", eval_map(a, x).unwrap());
    }

    // the critical orbit at a = 2 reaches the fixed point -1 in two steps
    let trace = iterate_orbit(a, 0.0, 6).unwrap();
    println!("\ncritical orbit at a = 2: {:?}", trace.points);

    // derivative products along orbits; an exact hit of the critical point
    // zeroes the product and is flagged rather than raised
    let d = derivative_along_orbit(a, 1.0, 3).unwrap();
    println!("\nDf^3 at x = 1: {} (hit critical point: {})", d.value, d.hit_zero);
    let d = derivative_along_orbit(a, 0.0, 1).unwrap();
    println!("Df^1 at x = 0: {} (hit critical point: {})", d.value, d.hit_zero);

    // Lyapunov exponents: chaotic at a = 2, negative in an attracting window
    let mut rng = SplitMix64::new(1);
    let x0 = rng.next_phase_point();
    let chaotic = lyapunov_exponent(a, x0, 1_000_000, 1_000).unwrap();
    println!(
        "\nlyapunov exponent at a = 2 from a random point: {chaotic:.6} (log 2 = {:.6})",
        2f64.ln()
    );

    let calm = MapParam::new(0.5).unwrap();
    let negative = lyapunov_exponent(calm, 0.3, 100_000, 1_000).unwrap();
    println!("lyapunov exponent at a = 0.5 (attracting fixed point): {negative:.6}");

    // a super-stable orbit yields the -inf sentinel, not an error
    let superstable = MapParam::new(1.0).unwrap();
    let sentinel = lyapunov_exponent(superstable, 0.0, 100, 0).unwrap();
    println!("lyapunov exponent on the super-stable 2-cycle at a = 1: {sentinel}");
}
