//! The three convergence tables: super-stable approximation of the natural
//! measure, landing parameters accumulating on the base parameter, and the
//! shadow sequence toward a singular measure.
//!
//! ```bash
//! cargo run --release --example convergence_tables
//! ```

use quadfam::dynamics::MapParam;
use quadfam::experiments::{natural_measure_approximation, repeller_landing_table, shadow_to_singular, DriverConfig};
use quadfam::param::{continue_orbit, interior_fixed_point};
use quadfam::real::Precision;

fn main() {
    let a = MapParam::new(2.0).unwrap();
    let cfg = DriverConfig::default();

    // shadow-then-hit-zero: cycle measures converge to the point mass at the
    // fixed point -1 like C/n
    let shadow = shadow_to_singular(a, 0.05, &(8..=18).collect::<Vec<_>>(), &cfg).unwrap();
    println!(
        "shadow sequence (landing time {}, repeller period {}):",
        shadow.landing_time, shadow.repeller.period
    );
    println!("  n   period  a_n                    W1(mu_n, point mass)");
    for r in &shadow.table.rows {
        println!("  {:2}  {:2}      {:.17}  {:.4}", r.n, r.period, r.a_n, r.w1);
    }

    // landing parameters for the interior fixed point: distances to 2 shrink
    // by the derivative growth factor ~4 per extra step
    let fp = interior_fixed_point(a).unwrap();
    let path = continue_orbit(&fp, MapParam::new(1.4).unwrap(), 64).unwrap();
    let ext = DriverConfig {
        precision: Precision::Extended,
        ..DriverConfig::default()
    };
    let landings = repeller_landing_table(a, &path, &(3..=12).collect::<Vec<_>>(), &ext).unwrap();
    println!("\nlanding parameters on the interior fixed point (extended mode):");
    println!("  N   a_hat                  |a_hat - 2|   residual");
    for r in &landings.rows {
        println!(
            "  {:2}  {:.17}  {:.3e}     {:.1e}",
            r.n_steps, r.a_hat, r.distance, r.residual
        );
    }

    // super-stable cycles whose measures approach the long-run distribution
    let approx = natural_measure_approximation(a, &(12..=18).collect::<Vec<_>>(), &cfg).unwrap();
    println!("\nbest super-stable approximants of the natural measure:");
    println!("  n   a_n                    W1(cycle, estimate)");
    for r in &approx.rows {
        println!("  {:2}  {:.17}  {:.4}", r.n, r.a_n, r.w1);
    }
    for note in &approx.notes {
        println!("  note: {note}");
    }
}
