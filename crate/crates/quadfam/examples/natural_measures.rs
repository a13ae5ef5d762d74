//! Empirical measures, the arcsine law at a = 2, and Wasserstein-1 distances.
//!
//! ```bash
//! cargo run --example natural_measures
//! ```

use quadfam::dynamics::MapParam;
use quadfam::measures::{
    birkhoff_measure, histogram, integrate, periodic_measure, wasserstein1, wasserstein1_to_cdf,
    ArcsineCdf, EmpiricalMeasure,
};
use quadfam::param::find_periodic_orbit;
use quadfam::rng::SplitMix64;

fn main() {
    let a = MapParam::new(2.0).unwrap();
    let mut rng = SplitMix64::new(7);

    // long-run distribution of a random orbit at a = 2
    let mu = birkhoff_measure(a, rng.next_phase_point(), 1_000_000, 1_000).unwrap();
    println!("empirical measure of 10^6 iterates: {} atoms", mu.len());

    // against the closed-form arcsine CDF, exactly
    let w1 = wasserstein1_to_cdf(&mu, &ArcsineCdf);
    println!("W1(empirical, arcsine law) = {w1:.3e}");

    // moments through the measure
    println!("second moment = {:.6} (arcsine value 0.5)", integrate(|x| x * x, &mu));

    // U-shaped histogram: heaviest mass at the edge bins
    let h = histogram(&mu, 16);
    println!("\n16-bin histogram masses:");
    for (i, m) in h.masses.iter().enumerate() {
        println!(
            "  [{:+.3}, {:+.3})  {:.4} {}",
            h.bin_edges[i],
            h.bin_edges[i + 1],
            m,
            "#".repeat((m * 300.0) as usize)
        );
    }

    // measures on periodic orbits, and exact W1 between atomic measures
    let two_cycle = find_periodic_orbit(MapParam::new(1.0).unwrap(), 2, 0.1).unwrap();
    let mu_cycle = periodic_measure(&two_cycle).unwrap();
    let delta_zero = EmpiricalMeasure::dirac(0.0).unwrap();
    println!("\n2-cycle measure at a = 1: {:?}", mu_cycle.atoms());
    println!("W1(2-cycle measure, point mass at 0) = {}", wasserstein1(&mu_cycle, &delta_zero));
    println!(
        "W1(point mass at -1, arcsine) = {:.4}",
        wasserstein1_to_cdf(&EmpiricalMeasure::dirac(-1.0).unwrap(), &ArcsineCdf)
    );
}
