//! Periodic orbits, their continuation in the parameter, and parameters whose
//! critical orbit lands exactly on a continued repeller point.
//!
//! ```bash
//! cargo run --example continuation_and_landing
//! ```

use quadfam::dynamics::{xi_n, MapParam};
use quadfam::param::{
    continue_orbit, find_misiurewicz, find_periodic_orbit, interior_fixed_point, ParamWindow,
};

fn main() {
    let a2 = MapParam::new(2.0).unwrap();

    // both fixed points at a = 2, from the quadratic a x^2 + x - 1 = 0
    let outer = find_periodic_orbit(a2, 1, -0.9).unwrap();
    let inner = interior_fixed_point(a2).unwrap();
    println!(
        "fixed points at a = 2: x = {} (multiplier {}), x = {} (multiplier {})",
        outer.points[0], outer.multiplier, inner.points[0], inner.multiplier
    );

    // the continuation of x = -1 exits the invariant interval for a < 2
    let path = continue_orbit(&outer, MapParam::new(1.9).unwrap(), 64).unwrap();
    let end = path.nodes.last().unwrap();
    println!(
        "continued x = -1 to a = {}: x*(a) = {:.12} ({} nodes)",
        end.0,
        end.1.points[0],
        path.nodes.len()
    );

    // an attracting orbit refuses to continue: hyperbolicity is the contract
    let attracting = find_periodic_orbit(MapParam::new(0.5).unwrap(), 1, 0.5).unwrap();
    match continue_orbit(&attracting, MapParam::new(0.6).unwrap(), 64) {
        Err(e) => println!("continuing an attracting orbit: {e}"),
        Ok(_) => unreachable!(),
    }

    // landing parameters: critical orbit hits the continued interior fixed
    // point z(a) at a prescribed time
    let inner_path = continue_orbit(&inner, MapParam::new(1.5).unwrap(), 64).unwrap();
    for (window, steps) in [((1.5, 1.6), 3usize), ((1.8, 1.95), 4), ((1.95, 1.999), 5)] {
        let w = ParamWindow::new(window.0, window.1).unwrap();
        match find_misiurewicz(w, steps, &inner_path) {
            Ok(a_hat) => {
                let z = inner_path.z_at(a_hat).unwrap();
                println!(
                    "xi_{steps}(a) = z(a) at a = {:.15}; residual {:.2e}",
                    a_hat.get(),
                    (xi_n(&a_hat.get(), steps) - z).abs()
                );
            }
            Err(e) => println!("no landing at N = {steps} in [{}, {}]: {e}", window.0, window.1),
        }
    }
}
