//! Landscape scan: attracting windows against chaotic parameters.
//!
//! ```bash
//! cargo run --release --example parameter_scan
//! ```

use quadfam::experiments::{window_scan, DriverConfig};
use quadfam::param::ParamWindow;

fn main() {
    let cfg = DriverConfig {
        jobs: 4,
        ..DriverConfig::default()
    };

    // coarse pass over the interesting right half of the parameter range
    let rows = window_scan(
        ParamWindow::new(0.7, 2.0).unwrap(),
        53,
        200_000,
        1e-9,
        &cfg,
    );
    println!("a        classification");
    for r in &rows {
        match (r.period, r.lyapunov) {
            (Some(p), _) => println!("{:.5}  attracting, period {p}", r.a),
            (None, Some(l)) => println!("{:.5}  chaotic candidate, lyapunov {l:+.4}", r.a),
            _ => println!("{:.5}  unresolved", r.a),
        }
    }

    // zoom into the period-3 window
    println!("\nzoom on [1.754, 1.756]:");
    let zoom = window_scan(
        ParamWindow::new(1.754, 1.756).unwrap(),
        21,
        200_000,
        1e-9,
        &cfg,
    );
    let inside = zoom.iter().filter(|r| r.period == Some(3)).count();
    println!("{inside} of {} grid points sit in the period-3 window", zoom.len());
}
