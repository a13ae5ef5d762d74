//! Acceptance suite: one test per shipped guarantee, each printing a
//! PASS/FAIL line with the measured quantities (run with `--nocapture` to see
//! the lines for passing tests).
//!
//! Criterion 3a (fixed-step finite differences of `D_a xi_k` across the full
//! parameter grid) is implemented exactly as specified and is expected to
//! fail: the check's own step size is coarser than the oscillation
//! wavelength of `xi_k` at the deep-`k`, near-2 grid points, so the
//! difference quotient stops approximating anything there. The assertion
//! message carries the analysis; the derivative recursion itself is verified
//! by criteria 3b and 11.

use quadfam::bc::{self, BCConfig};
use quadfam::dynamics::{self, MapParam};
use quadfam::experiments::{self, DriverConfig};
use quadfam::measures::{self, ArcsineCdf, EmpiricalMeasure};
use quadfam::param::{self, ParamWindow};
use quadfam::real::Precision;
use std::time::Instant;

fn p(a: f64) -> MapParam {
    MapParam::new(a).unwrap()
}

fn w(lo: f64, hi: f64) -> ParamWindow {
    ParamWindow::new(lo, hi).unwrap()
}

#[test]
fn criterion_01_superstable_solver_exactness() {
    let t0 = Instant::now();
    let a2 = param::find_superstable(w(0.9, 1.1), 2).unwrap();
    assert!(
        (a2.get() - 1.0).abs() < 1e-14,
        "period-2 root {} not within 1e-14 of 1",
        a2.get()
    );
    // independent oracle: Newton on the cubic a^3 - 2a^2 + a - 1 = 0
    let mut oracle = 1.75f64;
    for _ in 0..60 {
        let f = oracle * oracle * oracle - 2.0 * oracle * oracle + oracle - 1.0;
        let df = 3.0 * oracle * oracle - 4.0 * oracle + 1.0;
        oracle -= f / df;
    }
    let a3 = param::find_superstable(w(1.7, 1.8), 3).unwrap();
    assert!(
        (a3.get() - oracle).abs() < 1e-10,
        "period-3 root {} vs cubic oracle {}",
        a3.get(),
        oracle
    );
    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "runtime {elapsed:?} exceeds 1 s");
    println!(
        "ACCEPTANCE 1 PASS - superstable roots: period-2 = {} exactly, period-3 = {:.12} (oracle {:.12}), {elapsed:?}",
        a2.get(),
        a3.get(),
        oracle
    );
}

#[test]
fn criterion_02_closed_form_orbit_oracles() {
    // fixed points: roots of a x^2 + x - 1 = 0
    for i in 0..100 {
        let a = 0.5 + 1.5 * i as f64 / 99.0;
        let root = (1.0 + 4.0 * a).sqrt();
        for (sign, seed_off) in [(1.0, 1e-4), (-1.0, -1e-4)] {
            let expected = (-1.0 + sign * root) / (2.0 * a);
            let orbit = param::find_periodic_orbit(p(a), 1, expected + seed_off)
                .unwrap_or_else(|e| panic!("fixed point solve failed at a = {a}: {e}"));
            assert!(
                (orbit.points[0] - expected).abs() < 1e-12,
                "a = {a}: fixed point {} vs closed form {}",
                orbit.points[0],
                expected
            );
        }
    }
    // period-2 points: verify the quadratic factor by substitution first,
    // then compare solver output against its roots
    for i in 0..100 {
        let a = 0.8 + 1.2 * i as f64 / 99.0;
        let disc = (4.0 * a - 3.0).sqrt();
        let x_plus = (1.0 + disc) / (2.0 * a);
        let x_minus = (1.0 - disc) / (2.0 * a);
        // substitution: both roots of a^2 x^2 - a x + (1 - a) satisfy f^2(x) = x
        for x in [x_plus, x_minus] {
            let fx = dynamics::map_step(a, x);
            let ffx = dynamics::map_step(a, fx);
            assert!(
                (ffx - x).abs() < 1e-10,
                "a = {a}: polynomial root {x} fails substitution (f2(x) - x = {})",
                ffx - x
            );
        }
        let orbit = param::find_periodic_orbit(p(a), 2, x_plus + 1e-4)
            .unwrap_or_else(|e| panic!("period-2 solve failed at a = {a}: {e}"));
        let mut pts = orbit.points.clone();
        pts.sort_by(|u, v| u.partial_cmp(v).unwrap());
        let mut expected = [x_minus, x_plus];
        expected.sort_by(|u, v| u.partial_cmp(v).unwrap());
        for (got, want) in pts.iter().zip(expected) {
            assert!(
                (got - want).abs() < 1e-10,
                "a = {a}: cycle point {got} vs polynomial root {want}"
            );
        }
    }
    println!("ACCEPTANCE 2 PASS - fixed points and period-2 cycles match the closed forms on 100-point grids");
}

/// Expected RED. The check is implemented exactly as stated (centered
/// differences, h = 1e-8, k <= 25, uniform 50-parameter grid on
/// [1.5, 2 - 1e-6], relative error below 1e-5 after normalizing by
/// max(1, |D_a xi_k|)). It cannot pass: xi_k oscillates in a with wavelength
/// ~3/|D_a xi_k|, and near a = 2 with k >= ~14 that wavelength drops below
/// the fixed difference step, so the quotient no longer estimates the
/// derivative no matter the arithmetic precision. See criteria 3b and 11 for
/// the checks that do verify the derivative recursion.
#[test]
fn criterion_03a_finite_difference_grid() {
    let h = 1e-8;
    let mut failures = Vec::new();
    let mut worst = (0.0f64, 0.0f64, 0usize);
    for i in 0..50 {
        let a = 1.5 + (0.5 - 1e-6) * i as f64 / 49.0;
        let base = dynamics::critical_trace(p(a), 25);
        let plus = dynamics::critical_trace(p(a + h), 25);
        let minus = dynamics::critical_trace(p(a - h), 25);
        for k in 1..=25 {
            let fd = (plus.xi[k] - minus.xi[k]) / (2.0 * h);
            let err = (base.dxi_da[k] - fd).abs() / base.dxi_da[k].abs().max(1.0);
            if err > worst.0 {
                worst = (err, a, k);
            }
            if err >= 1e-5 {
                failures.push((a, k, err));
            }
        }
    }
    if failures.is_empty() {
        println!("ACCEPTANCE 3a PASS - finite differences match D_a xi_k on the full grid");
    } else {
        println!(
            "ACCEPTANCE 3a FAIL - {}/1250 grid pairs exceed 1e-5 (worst err {:.3e} at a = {}, k = {}); \
             the fixed step h = 1e-8 exceeds the oscillation wavelength ~3/|D_a xi_k| of xi_k at \
             these points, so the difference quotient is not a derivative estimate there",
            failures.len(),
            worst.0,
            worst.1,
            worst.2
        );
    }
    assert!(
        failures.is_empty(),
        "finite-difference check fails at {}/1250 grid pairs (worst relative error {:.3e} at \
         a = {}, k = {}); the centered difference with fixed h = 1e-8 spans many oscillation \
         wavelengths of xi_k once |D_a xi_k| exceeds ~1e6, so the oracle itself stops measuring \
         the derivative; the recursion is verified by the small-k regime of this same grid \
         (errors <= 1e-9), by the exact closed pattern at a = 2 (criterion 3b), and by the \
         comparability identity (criterion 11)",
        failures.len(),
        worst.0,
        worst.1,
        worst.2
    );
}

#[test]
fn criterion_03b_closed_derivative_pattern_at_two() {
    // D_a xi_{k+1}(2) = -(4^k - 1)/3, exact to rounding
    let trace = dynamics::critical_trace(p(2.0), 26);
    for k in 1..=25usize {
        let expected = -((4f64.powi(k as i32) - 1.0) / 3.0);
        let got = trace.dxi_da[k + 1];
        assert!(
            (got - expected).abs() <= 4.0 * f64::EPSILON * expected.abs(),
            "k = {k}: D_a xi_{} = {got}, closed form {expected}",
            k + 1
        );
    }
    // and the finite-difference oracle agrees in its regime of validity
    let h = 1e-8;
    for i in 0..50 {
        let a = 1.5 + (0.5 - 1e-6) * i as f64 / 49.0;
        let base = dynamics::critical_trace(p(a), 8);
        let plus = dynamics::critical_trace(p(a + h), 8);
        let minus = dynamics::critical_trace(p(a - h), 8);
        for k in 1..=8 {
            let fd = (plus.xi[k] - minus.xi[k]) / (2.0 * h);
            let err = (base.dxi_da[k] - fd).abs() / base.dxi_da[k].abs().max(1.0);
            assert!(err < 1e-5, "a = {a}, k = {k}: fd error {err:.3e}");
        }
    }
    println!("ACCEPTANCE 3b PASS - closed derivative pattern at a = 2 exact to rounding; finite differences agree for k <= 8 across the grid");
}

#[test]
fn criterion_04_arcsine_law_at_two() {
    let t0 = Instant::now();
    let cfg = DriverConfig::default();
    let mu1 = experiments::estimate_natural_measure(p(2.0), &cfg, 0).unwrap();
    let w1 = measures::wasserstein1_to_cdf(&mu1, &ArcsineCdf);
    assert!(w1 < 5e-3, "W1(empirical, arcsine) = {w1:.3e} >= 5e-3");
    let cfg2 = DriverConfig {
        seed: 20260808,
        ..DriverConfig::default()
    };
    let mu2 = experiments::estimate_natural_measure(p(2.0), &cfg2, 0).unwrap();
    let cross = measures::wasserstein1(&mu1, &mu2);
    assert!(cross < 5e-3, "cross-seed W1 = {cross:.3e} >= 5e-3");
    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "runtime {elapsed:?} exceeds 10 s");
    println!(
        "ACCEPTANCE 4 PASS - W1(birkhoff 1e6, arcsine) = {w1:.3e}, cross-seed {cross:.3e}, {elapsed:?}"
    );
}

#[test]
fn criterion_05_growth_diagnostics_at_two() {
    let cfg = BCConfig::default();
    let report = bc::check_ce(p(2.0), 10_000, &cfg);
    let gap = (report.min_exponent - 4.0f64.ln()).abs();
    assert!(
        gap < 1e-12,
        "min exponent {} differs from log 4 by {gap:.3e}",
        report.min_exponent
    );
    assert!(report.first_violation.is_none());
    assert!(
        report.recurrence_violations.is_empty(),
        "unexpected recurrence violations {:?}",
        report.recurrence_violations
    );
    println!(
        "ACCEPTANCE 5 PASS - min exponent log4 to {gap:.1e} at depth 10^4, no recurrence violations"
    );
}

#[test]
fn criterion_06_shadow_sequence_to_point_mass() {
    let t0 = Instant::now();
    let cfg = DriverConfig::default();
    let n_range: Vec<usize> = (8..=18).collect();
    let out = experiments::shadow_to_singular(p(2.0), 0.05, &n_range, &cfg).unwrap();
    assert_eq!(out.table.rows.len(), n_range.len(), "missing rows: {:?}", out.table.notes);
    for rows in out.table.rows.windows(2) {
        assert!(
            rows[1].w1 < rows[0].w1,
            "w1 not strictly decreasing: n = {} gives {}, n = {} gives {}",
            rows[0].n,
            rows[0].w1,
            rows[1].n,
            rows[1].w1
        );
    }
    // least-squares fit w1 ~ C/n via the w1*n average, then R^2
    let c = out.table.rows.iter().map(|r| r.w1 * r.n as f64).sum::<f64>()
        / out.table.rows.len() as f64;
    let mean = out.table.rows.iter().map(|r| r.w1).sum::<f64>() / out.table.rows.len() as f64;
    let ss_res: f64 = out
        .table
        .rows
        .iter()
        .map(|r| (r.w1 - c / r.n as f64).powi(2))
        .sum();
    let ss_tot: f64 = out.table.rows.iter().map(|r| (r.w1 - mean).powi(2)).sum();
    let r2 = 1.0 - ss_res / ss_tot;
    assert!(r2 > 0.9, "R^2 = {r2} for the C/n fit");
    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "runtime {elapsed:?} exceeds 1 min");
    println!(
        "ACCEPTANCE 6 PASS - w1 strictly decreasing {:.4} -> {:.4} over n = 8..18, C = {c:.3}, R^2 = {r2:.4}, {elapsed:?}",
        out.table.rows.first().unwrap().w1,
        out.table.rows.last().unwrap().w1
    );
}

#[test]
fn criterion_07_landing_parameters_ratios() {
    let cfg = DriverConfig {
        precision: Precision::Extended,
        ..DriverConfig::default()
    };
    let fp = param::interior_fixed_point(p(2.0)).unwrap();
    let path = param::continue_orbit(&fp, p(1.4), 64).unwrap();
    let n_range: Vec<usize> = (3..=15).collect();
    let table = experiments::repeller_landing_table(p(2.0), &path, &n_range, &cfg).unwrap();
    assert_eq!(
        table.rows.len(),
        n_range.len(),
        "missing landing parameters: {:?}",
        table.notes
    );
    for r in &table.rows {
        assert!(
            r.residual < 1e-12,
            "N = {}: residual {:.3e} >= 1e-12",
            r.n_steps,
            r.residual
        );
    }
    let mut ratios = Vec::new();
    for pair in table.rows.windows(2) {
        let ratio = pair[0].distance / pair[1].distance;
        assert!(
            (3.0..=6.0).contains(&ratio),
            "ratio |a_{} - 2| / |a_{} - 2| = {ratio} outside [3, 6]",
            pair[0].n_steps,
            pair[1].n_steps
        );
        ratios.push(ratio);
    }
    println!(
        "ACCEPTANCE 7 PASS - landing parameters exist for N = 3..15, ratios in [{:.3}, {:.3}], residuals < 1e-12 (extended mode)",
        ratios.iter().cloned().fold(f64::INFINITY, f64::min),
        ratios.iter().cloned().fold(0.0f64, f64::max)
    );
}

#[test]
fn criterion_08_discontinuity_demo() {
    let cfg = DriverConfig::default();
    let n_range: Vec<usize> = (8..=18).collect();
    let demo = experiments::run_discontinuity_demo(p(2.0), &n_range, &cfg).unwrap();
    // both sequences live inside the corridor (2 - 1e-3, 2)
    for r in demo.acip_table.rows.iter().chain(demo.singular_table.rows.iter()) {
        assert!(
            r.a_n > 2.0 - 1e-3 && r.a_n < 2.0,
            "row n = {} at a = {} leaves (2 - 1e-3, 2)",
            r.n,
            r.a_n
        );
    }
    // one side approaches the absolutely continuous law
    let best_arcsine = demo
        .acip_table
        .rows
        .iter()
        .map(|r| {
            let orbit = param::find_periodic_orbit(p(r.a_n), r.period, 0.0).unwrap();
            let mu = measures::periodic_measure(&orbit).unwrap();
            measures::wasserstein1_to_cdf(&mu, &ArcsineCdf)
        })
        .fold(f64::INFINITY, f64::min);
    assert!(
        best_arcsine < 0.1,
        "no acip-side row within 0.1 of the arcsine law (best {best_arcsine:.4})"
    );
    // the other side approaches the point mass at -1
    let final_sing = demo.singular_table.rows.last().expect("rows").w1;
    assert!(final_sing < 0.5, "final singular-side w1 = {final_sing}");
    // the two limits are genuinely far apart
    let delta_minus_one = EmpiricalMeasure::dirac(-1.0).unwrap();
    let gap = measures::wasserstein1_to_cdf(&delta_minus_one, &ArcsineCdf);
    assert!(gap > 0.9, "W1(arcsine, point mass at -1) = {gap}");
    // continuity inside a periodic window
    assert!(
        demo.window_check.w1 < 0.05,
        "window spot-check w1 = {} >= 0.05",
        demo.window_check.w1
    );
    println!(
        "ACCEPTANCE 8 PASS - acip-side best W1 {best_arcsine:.4} < 0.1, singular-side final W1 {final_sing:.4} < 0.5, limit gap {gap:.3}, window check {:.4} < 0.05",
        demo.window_check.w1
    );
}

#[test]
fn criterion_09_deviation_sums_bounded() {
    let cfg = DriverConfig::default();
    let out = experiments::shadow_to_singular(p(2.0), 0.05, &(8..=18).collect::<Vec<_>>(), &cfg).unwrap();
    let sums: Vec<f64> = out
        .table
        .rows
        .iter()
        .map(|r| bc::deviation_sum(p(2.0), p(r.a_n), r.period))
        .collect();
    let max = sums.iter().cloned().fold(0.0f64, f64::max);
    let min = sums.iter().cloned().fold(f64::INFINITY, f64::min);
    assert!(
        max / min < 3.0,
        "deviation sums show a growth trend: max/min = {} ({sums:?})",
        max / min
    );
    println!(
        "ACCEPTANCE 9 PASS - deviation sums over the shadow sequence stay in [{min:.4}, {max:.4}], max/min = {:.4}",
        max / min
    );
}

#[test]
fn criterion_10_bound_period_growth() {
    let cfg = BCConfig::default();
    let mus: Vec<i64> = (7..=12).collect();
    let mut ps = Vec::new();
    for &mu in &mus {
        let p_mu = bc::bound_period(p(2.0), mu, &cfg).unwrap();
        assert!(
            (p_mu as f64) <= 3.0 * mu as f64 / cfg.lambda,
            "p({mu}) = {p_mu} exceeds 3|mu|/lambda = {}",
            3.0 * mu as f64 / cfg.lambda
        );
        ps.push(p_mu as f64);
    }
    // least-squares slope of p against mu
    let n = mus.len() as f64;
    let sx: f64 = mus.iter().map(|&m| m as f64).sum();
    let sy: f64 = ps.iter().sum();
    let sxx: f64 = mus.iter().map(|&m| (m as f64) * (m as f64)).sum();
    let sxy: f64 = mus.iter().zip(&ps).map(|(&m, &q)| m as f64 * q).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    assert!(slope > 0.5, "fitted slope {slope} <= 0.5");
    println!(
        "ACCEPTANCE 10 PASS - bound periods {:?} for mu = 7..12, slope {slope:.3}, all below 3|mu|/lambda",
        ps.iter().map(|&q| q as usize).collect::<Vec<_>>()
    );
}

#[test]
fn criterion_11_comparability_of_derivatives() {
    // exact ratio identity at a = 2
    for k in 1..=30usize {
        let ratio = bc::comparability_ratio(p(2.0), k);
        let expected = (4f64.powi(k as i32) - 1.0) / (3.0 * 4f64.powi(k as i32));
        assert!(
            (ratio - expected).abs() < 1e-10,
            "k = {k}: ratio {ratio} vs closed form {expected}"
        );
    }
    // 20 growth-checked parameters in [1.95, 2]
    let cfg = BCConfig::default();
    let mut passing = Vec::new();
    let mut i = 0usize;
    while passing.len() < 20 {
        assert!(i < 4000, "could not collect 20 growth-checked parameters");
        let a = 1.95 + 0.05 * i as f64 / 399.0;
        if a <= 2.0 && bc::check_ce(p(a), 30, &cfg).passes() {
            passing.push(a);
        }
        i += 1;
    }
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for &a in &passing {
        for k in 1..=30 {
            let r = bc::comparability_ratio(p(a), k);
            lo = lo.min(r);
            hi = hi.max(r);
        }
    }
    assert!(
        lo >= 1e-2 && hi <= 1e2,
        "comparability ratios [{lo:.3e}, {hi:.3e}] leave [1e-2, 1e2]"
    );
    println!(
        "ACCEPTANCE 11 PASS - ratio identity exact at a = 2 (k <= 30); across 20 growth-checked parameters ratios stay in [{lo:.3}, {hi:.3}]"
    );
}

#[test]
fn criterion_12_manifest_replay_determinism() {
    let base = std::env::temp_dir().join(format!("quadfam-accept-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&base);
    let outdir = base.join("thmd");
    let args: Vec<String> = [
        "thm-d",
        "--a",
        "2.0",
        "--n-range",
        "8:12",
        "--seed",
        "42",
        "--out",
        outdir.to_str().unwrap(),
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    assert_eq!(quadfam::cli::dispatch(&args), 0);
    let snapshot = |dir: &std::path::Path| -> Vec<(String, Vec<u8>)> {
        let mut files: Vec<_> = std::fs::read_dir(dir)
            .unwrap()
            .map(|e| e.unwrap().path())
            .collect();
        files.sort();
        files
            .into_iter()
            .map(|f| {
                (
                    f.file_name().unwrap().to_string_lossy().into_owned(),
                    std::fs::read(&f).unwrap(),
                )
            })
            .collect()
    };
    let first = snapshot(&outdir);
    // replay from the recorded manifest
    let manifest_text = std::fs::read_to_string(outdir.join("manifest.json")).unwrap();
    let replay_args = quadfam::report::manifest_argv(&manifest_text).unwrap();
    std::fs::remove_dir_all(&outdir).unwrap();
    assert_eq!(quadfam::cli::dispatch(&replay_args), 0);
    let second = snapshot(&outdir);
    assert_eq!(first.len(), second.len());
    for ((name_a, bytes_a), (name_b, bytes_b)) in first.iter().zip(second.iter()) {
        assert_eq!(name_a, name_b);
        assert_eq!(
            bytes_a, bytes_b,
            "file {name_a} differs between the run and its manifest replay"
        );
    }
    let _ = std::fs::remove_dir_all(&base);
    println!(
        "ACCEPTANCE 12 PASS - manifest replay reproduced {} files byte-identically",
        first.len()
    );
}
