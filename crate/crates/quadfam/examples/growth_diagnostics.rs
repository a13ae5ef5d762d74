//! Growth and recurrence diagnostics along the critical orbit: the partition
//! of the critical neighborhood, bound periods, and window itineraries.
//!
//! ```bash
//! cargo run --example growth_diagnostics
//! ```

use quadfam::bc::{
    bound_period, check_ce, bound_period_distortion, free_return_growth, classify, comparability_ratio,
    deviation_sum, itinerary, BCConfig, ReturnKind,
};
use quadfam::dynamics::MapParam;
use quadfam::param::ParamWindow;

fn main() {
    let cfg = BCConfig::default();
    println!(
        "config: delta = e^-7 = {:.4e}, lambda = {}, alpha = lambda/300 = {:.4e}",
        cfg.delta, cfg.lambda, cfg.alpha
    );

    // the growth check at a few parameters
    for a in [2.0, 1.9999990463256836, 1.0, 0.5] {
        let rep = check_ce(MapParam::new(a).unwrap(), 100, &cfg);
        println!(
            "a = {a}: min exponent {:.4}, growth {}, recurrence violations {:?}",
            rep.min_exponent,
            if rep.first_violation.is_none() { "ok".into() } else { format!("fails at j = {}", rep.first_violation.unwrap()) },
            rep.recurrence_violations
        );
    }

    // partition membership near the critical point
    println!();
    for x in [6e-4, -6e-4, 2e-4, 0.0, 0.01] {
        match classify(x, &cfg) {
            Some(idx) => println!("x = {x:+.1e}: piece (mu = {}, nu = {})", idx.mu, idx.nu),
            None => println!("x = {x:+.1e}: outside the partition"),
        }
    }

    // bound periods after a return into I_mu, and the distortion during them
    println!();
    let a2 = MapParam::new(2.0).unwrap();
    for mu in 7..=10 {
        let p = bound_period(a2, mu, &cfg).unwrap();
        let rep = bound_period_distortion(a2, mu, p, &cfg);
        println!(
            "mu = {mu}: bound period p = {p}, distortion ratio in [{:.3}, {:.3}], expansion {:.3}",
            rep.ratio_min, rep.ratio_max, rep.expansion
        );
    }

    // parameter- vs space-derivative comparability along the critical orbit
    println!();
    for k in [5usize, 15, 30] {
        println!(
            "k = {k:2}: |D_a xi_k+1| / |Df^k(1)| = {:.6} at a = 2",
            comparability_ratio(a2, k)
        );
    }

    // itinerary of a narrow window clinging to a = 2: free returns, bound
    // periods, and the first escape configuration
    let w = ParamWindow::new(2.0 - 4f64.powi(-10), 2.0 - 4f64.powi(-12)).unwrap();
    let it = itinerary(w, 30, &cfg).unwrap();
    println!("\nitinerary of (2 - 4^-10, 2 - 4^-12) to depth 30:");
    for e in &it.events {
        println!(
            "  t = {:2} {:16} hull length {:.3e}{}",
            e.time,
            format!("{:?}", e.kind),
            e.hull.len(),
            e.index
                .map(|i| format!("  (mu = {}, nu = {})", i.mu, i.nu))
                .unwrap_or_default()
        );
    }
    println!("bound periods: {:?}", it.bound_periods);
    let growth = free_return_growth(w, &it, &cfg);
    println!("consecutive essential-return hull ratios: {:?}", growth.return_ratios);
    for fit in &growth.free_fits {
        println!(
            "free stretch from t = {} ({} steps): fitted growth rate {:.3}",
            fit.start, fit.len, fit.rate
        );
    }
    let escapes = it.events.iter().filter(|e| e.kind == ReturnKind::Escape).count();
    println!("escape configurations: {escapes}");

    // deviation sums between nearby critical orbits stay bounded
    println!();
    for n in [10usize, 100, 1000] {
        println!(
            "deviation sum over {n} steps between a = 2 and a = 1.9999999: {:.6}",
            deviation_sum(a2, MapParam::new(1.9999999).unwrap(), n)
        );
    }
}
