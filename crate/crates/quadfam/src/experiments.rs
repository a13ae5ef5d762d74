//! Drivers that assemble the solvers into convergence tables: super-stable
//! approximation of natural measures, landing parameters for repellers,
//! shadow-then-hit-zero sequences toward singular measures, the chained
//! diagonal construction, the discontinuity demonstration for `a -> mu_a`,
//! and a parameter-landscape scan.
//!
//! Every row of every table is a pure function of the configuration and the
//! seed; rows may be computed concurrently and are merged in order.

use crate::bc::{self, BCConfig};
use crate::dynamics::{self, xi_n, xi_n_with_deriv, DomainError, MapParam};
use crate::measures::{self, EmpiricalMeasure, MeasureError};
use crate::param::{
    self, superstable_in, ContinuationPath, ParamWindow, PeriodicOrbit, SolverError, Stability,
};
use crate::real::{Ext, Precision, Scalar};
use crate::rng::SplitMix64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("growth check failed at a = {a}")]
    CEViolated { a: f64 },
    #[error("critical orbit of a = {a} is not pre-periodic to a repelling cycle")]
    NotMisiurewicz { a: f64 },
    #[error("no super-stable root in the bracket for n = {n}")]
    NoRootInBracket { n: usize },
    #[error("depth n = {n} exceeds the period cap {cap} of {mode} precision")]
    PrecisionCapExceeded {
        n: usize,
        cap: usize,
        mode: &'static str,
    },
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Diagnostics(#[from] bc::BCError),
}

/// Common knobs shared by the drivers. Defaults match the CLI defaults.
#[derive(Debug, Clone)]
pub struct DriverConfig {
    pub seed: u64,
    pub precision: Precision,
    pub jobs: usize,
    /// half-width of the shadowing corridor around the repeller.
    pub gamma: f64,
    /// orbit length for natural-measure estimates.
    pub acip_iterates: usize,
    pub burn: usize,
    /// widest bracket around the base parameter searched for super-stable
    /// roots by the measure-approximation driver.
    pub bracket_floor: f64,
    /// cap on candidate roots examined per period by that driver.
    pub max_roots_per_period: usize,
}

impl Default for DriverConfig {
    fn default() -> Self {
        DriverConfig {
            seed: 1,
            precision: Precision::Double,
            jobs: 1,
            gamma: 0.05,
            acip_iterates: 1_000_000,
            burn: 1_000,
            bracket_floor: 1e-3,
            max_roots_per_period: 24,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub n: usize,
    pub a_n: f64,
    /// decimal rendering at working precision (meaningful past the double cap)
    pub a_decimal: String,
    pub period: usize,
    pub w1: f64,
    /// `|xi_period(a_n)|` normalized by `max(1, |D_a xi_period|)`.
    pub residual: f64,
}

#[derive(Debug, Clone, Default)]
pub struct ConvergenceTable {
    pub rows: Vec<TableRow>,
    pub notes: Vec<String>,
}

impl ConvergenceTable {
    pub fn is_sorted(&self) -> bool {
        self.rows.windows(2).all(|r| r[0].n < r[1].n)
    }
}

/// Static-chunk parallel map that preserves input order. With `jobs <= 1`
/// everything runs on the caller's thread.
fn parallel_map<T, R, F>(jobs: usize, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync,
{
    if jobs <= 1 || items.len() <= 1 {
        return items.into_iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(jobs);
    let mut chunks: Vec<Vec<T>> = Vec::new();
    let mut it = items.into_iter();
    loop {
        let c: Vec<T> = it.by_ref().take(chunk).collect();
        if c.is_empty() {
            break;
        }
        chunks.push(c);
    }
    let f = &f;
    let mut out: Vec<Vec<R>> = Vec::with_capacity(chunks.len());
    std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|c| scope.spawn(move || c.into_iter().map(f).collect::<Vec<R>>()))
            .collect();
        for h in handles {
            out.push(h.join().expect("worker panicked"));
        }
    });
    out.into_iter().flatten().collect()
}

/// Estimate the natural measure of a growth-checked parameter from a seeded
/// random initial point. The critical orbit is never used here: at parameters
/// whose critical orbit is finite it is the one orbit guaranteed to be
/// non-generic.
pub fn estimate_natural_measure(
    a: MapParam,
    cfg: &DriverConfig,
    stream: u64,
) -> Result<EmpiricalMeasure, ExperimentError> {
    let mut rng = SplitMix64::stream(cfg.seed, stream);
    let x0 = rng.next_phase_point();
    Ok(measures::birkhoff_measure(a, x0, cfg.acip_iterates, cfg.burn)?)
}

/// Super-stable approximation of the natural measure: for each period `n`,
/// scan the super-stable roots of `xi_n` in a bracket around `a`, build each
/// cycle measure, and keep the root whose measure is W1-closest to the
/// natural-measure estimate.
pub fn natural_measure_approximation(
    a: MapParam,
    periods: &[usize],
    cfg: &DriverConfig,
) -> Result<ConvergenceTable, ExperimentError> {
    let bc_cfg = BCConfig::default();
    let report = bc::check_ce(a, 10_000, &bc_cfg);
    if !report.passes() {
        return Err(ExperimentError::CEViolated { a: a.get() });
    }
    let reference = estimate_natural_measure(a, cfg, 0)?;
    let mut periods: Vec<usize> = periods.to_vec();
    periods.sort_unstable();
    periods.dedup();
    let rows = parallel_map(cfg.jobs, periods, |n| {
        (n, best_root_row(a, n, &reference, cfg))
    });
    let mut table = ConvergenceTable::default();
    for (n, row) in rows {
        match row {
            Some(r) => table.rows.push(r),
            None => table.notes.push(format!("n = {n}: no super-stable root in bracket")),
        }
    }
    Ok(table)
}

fn best_root_row(
    a: MapParam,
    n: usize,
    reference: &EmpiricalMeasure,
    cfg: &DriverConfig,
) -> Option<TableRow> {
    let width = 4f64.powi(4 - n as i32).max(cfg.bracket_floor);
    let lo = (a.get() - width).max(1e-6);
    let hi = (a.get() + width).min(2.0);
    let grid = 4096usize;
    let mut brackets = Vec::new();
    let mut prev = lo;
    let mut prev_sign = xi_n(&lo, n).signum();
    for i in 1..=grid {
        let x = lo + (hi - lo) * i as f64 / grid as f64;
        let s = xi_n(&x, n).signum();
        if s != prev_sign {
            brackets.push((prev, x));
        }
        prev = x;
        prev_sign = s;
    }
    if brackets.is_empty() {
        return None;
    }
    // deterministic spread over the bracket list when there are too many
    let keep = cfg.max_roots_per_period.max(1);
    let selected: Vec<(f64, f64)> = if brackets.len() <= keep {
        brackets
    } else {
        (0..keep)
            .map(|i| brackets[i * brackets.len() / keep])
            .collect()
    };
    let mut best: Option<TableRow> = None;
    for (bl, bh) in selected {
        let Ok(window) = ParamWindow::new(bl, bh) else {
            continue;
        };
        let Ok(root) = param::find_superstable(window, n) else {
            continue;
        };
        let Ok(orbit) = param::find_periodic_orbit(root, n, 0.0) else {
            continue;
        };
        if !matches!(
            orbit.stability,
            Stability::Superstable | Stability::Attracting
        ) {
            continue;
        }
        let Ok(mu) = measures::periodic_measure(&orbit) else {
            continue;
        };
        let w1 = measures::wasserstein1(&mu, reference);
        let (xi, dxi) = xi_n_with_deriv(&root.get(), n);
        let row = TableRow {
            n,
            a_n: root.get(),
            a_decimal: root.get().decimal(),
            period: n,
            w1,
            residual: xi.abs() / dxi.abs().max(1.0),
        };
        if best.as_ref().is_none_or(|b| row.w1 < b.w1) {
            best = Some(row);
        }
    }
    best
}

/// A pre-periodic critical orbit: landing time onto a repelling cycle.
#[derive(Debug, Clone)]
pub struct MisiurewiczData {
    pub landing_time: usize,
    pub repeller: PeriodicOrbit,
}

/// Verify that the critical orbit of `a` lands on a repelling periodic orbit,
/// and return the minimal landing time with the polished cycle.
pub fn detect_misiurewicz(a: MapParam) -> Result<MisiurewiczData, ExperimentError> {
    const MAX_PREPERIOD: usize = 64;
    const MAX_PERIOD: usize = 32;
    const TOL: f64 = 1e-10;
    let trace = dynamics::critical_trace(a, MAX_PREPERIOD + 2 * MAX_PERIOD);
    for n in 1..=MAX_PREPERIOD {
        for p in 1..=MAX_PERIOD {
            if (trace.xi[n + p] - trace.xi[n]).abs() < TOL
                && (trace.xi[n + 2 * p] - trace.xi[n]).abs() < 10.0 * TOL
            {
                let Ok(orbit) = param::find_periodic_orbit(a, p, trace.xi[n]) else {
                    continue;
                };
                if orbit.stability != Stability::Repelling {
                    continue;
                }
                let dist = |x: f64| -> f64 {
                    orbit
                        .points
                        .iter()
                        .map(|&z| (x - z).abs())
                        .fold(f64::INFINITY, f64::min)
                };
                if dist(trace.xi[n]) > TOL {
                    continue;
                }
                // minimal landing time
                let landing = (1..=n)
                    .find(|&j| dist(trace.xi[j]) <= TOL)
                    .unwrap_or(n);
                return Ok(MisiurewiczData {
                    landing_time: landing,
                    repeller: orbit,
                });
            }
        }
    }
    Err(ExperimentError::NotMisiurewicz { a: a.get() })
}

/// Outcome of the shadow-then-hit-zero driver.
#[derive(Debug, Clone)]
pub struct ShadowOutcome {
    pub table: ConvergenceTable,
    pub landing_time: usize,
    pub repeller: PeriodicOrbit,
    /// `(n, m_n)` per row: extra steps from the end of the shadowed stretch
    /// to the hit of the critical point.
    pub m_values: Vec<(usize, usize)>,
    /// largest `m_n` observed (the measured analogue of the corridor bound).
    pub n_hat: usize,
}

/// For each `n`, find the super-stable parameter nearest `a` whose critical
/// orbit shadows the repeller corridor `J_gamma` for steps `N..n` and then
/// hits the critical point within `m_n` extra steps; report the W1 distance
/// of its cycle measure from the singular measure on the repeller.
pub fn shadow_to_singular(
    a: MapParam,
    gamma: f64,
    n_range: &[usize],
    cfg: &DriverConfig,
) -> Result<ShadowOutcome, ExperimentError> {
    let data = detect_misiurewicz(a)?;
    shadow_to_singular_with_landing(a, &data, gamma, n_range, cfg)
}

/// [`shadow_to_singular`] with the landing data already computed (the chained
/// driver re-uses its own).
pub fn shadow_to_singular_with_landing(
    a: MapParam,
    data: &MisiurewiczData,
    gamma: f64,
    n_range: &[usize],
    cfg: &DriverConfig,
) -> Result<ShadowOutcome, ExperimentError> {
    let cap = cfg.precision.superstable_period_cap();
    for &n in n_range {
        if n > cap {
            return Err(ExperimentError::PrecisionCapExceeded {
                n,
                cap,
                mode: cfg.precision.label(),
            });
        }
    }
    let mu_sing = measures::periodic_measure(&data.repeller)?;
    let mut ns: Vec<usize> = n_range.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let precision = cfg.precision;
    let rows = parallel_map(cfg.jobs, ns, |n| {
        let found = match precision {
            Precision::Double => shadow_row::<f64>(a.get(), data, gamma, n),
            Precision::Extended => shadow_row::<Ext>(a.get(), data, gamma, n),
        };
        (n, found)
    });
    let mut outcome = ShadowOutcome {
        table: ConvergenceTable::default(),
        landing_time: data.landing_time,
        repeller: data.repeller.clone(),
        m_values: Vec::new(),
        n_hat: 0,
    };
    for (n, found) in rows {
        match found {
            Some(row_data) => {
                let (a_n, a_decimal, period, residual, cycle) = row_data;
                let mu_n = measures::periodic_measure_points(&cycle)?;
                let w1 = measures::wasserstein1(&mu_n, &mu_sing);
                outcome.m_values.push((n, period - n));
                outcome.n_hat = outcome.n_hat.max(period - n);
                outcome.table.rows.push(TableRow {
                    n,
                    a_n,
                    a_decimal,
                    period,
                    w1,
                    residual,
                });
            }
            None => outcome
                .table
                .notes
                .push(format!("n = {n}: no shadowing super-stable root found")),
        }
    }
    Ok(outcome)
}

const SHADOW_M_CAP: usize = 12;
const WALK_MAX: usize = 4096;

type ShadowRow = (f64, String, usize, f64, Vec<f64>);

/// One row of the shadow driver at generic precision: walk outward from the
/// base parameter in steps scaled to the oscillation wavelength of
/// `xi_{n+m}`, bracket the first sign change, solve, and accept the first
/// root whose orbit shadows the corridor through step `n`.
fn shadow_row<S: Scalar>(
    a_center: f64,
    data: &MisiurewiczData,
    gamma: f64,
    n: usize,
) -> Option<ShadowRow> {
    let repeller: Vec<S> = data.repeller.points.iter().map(|&x| S::of(x)).collect();
    for m in 1..=SHADOW_M_CAP {
        let period = n + m;
        let (_, dxi) = xi_n_with_deriv(&S::of(a_center), period);
        let scale = dxi.abs().to_f64().max(1.0);
        let h = S::of(0.25 / scale);
        let sides: &[f64] = if a_center >= 2.0 { &[-1.0] } else { &[-1.0, 1.0] };
        let mut best: Option<S> = None;
        for &side in sides {
            if let Some(root) = walk_for_superstable(&S::of(a_center), &h, side, period) {
                let better = match &best {
                    Some(b) => {
                        root.sub(&S::of(a_center)).abs() < b.sub(&S::of(a_center)).abs()
                    }
                    None => true,
                };
                if better {
                    best = Some(root);
                }
            }
        }
        let Some(root) = best else { continue };
        if !shadow_holds(&root, &repeller, data.landing_time, n, gamma) {
            continue;
        }
        // cycle points and residual at working precision
        let one = S::of(1.0);
        let mut cycle = Vec::with_capacity(period);
        let mut x = S::of(0.0);
        for _ in 0..period {
            cycle.push(x.to_f64().clamp(-1.0, 1.0));
            x = one.sub(&root.mul(&x.mul(&x)));
        }
        let (xi, dxi) = xi_n_with_deriv(&root, period);
        let residual = xi.abs().to_f64() / dxi.abs().to_f64().max(1.0);
        return Some((root.to_f64(), root.decimal(), period, residual, cycle));
    }
    None
}

/// March outward from `center` in steps of `h` until `xi_period` changes
/// sign, then solve on the bracketing segment.
fn walk_for_superstable<S: Scalar>(
    center: &S,
    h: &S,
    side: f64,
    period: usize,
) -> Option<S> {
    let step = h.mul(&S::of(side));
    let mut prev = center.clone();
    let mut prev_sign = xi_n(&prev, period).sign_of();
    for i in 1..=WALK_MAX {
        let cand = center.add(&step.mul(&S::of(i as f64)));
        let cf = cand.to_f64();
        if !(0.0 < cf && cf <= 2.0) {
            return None;
        }
        let s = xi_n(&cand, period).sign_of();
        if s == 0 {
            return Some(cand);
        }
        if prev_sign != 0 && s != prev_sign {
            let (lo, hi) = if side < 0.0 {
                (cand, prev)
            } else {
                (prev, cand)
            };
            return superstable_in(&lo, &hi, period, S::BISECT_WIDTH_TOL).ok();
        }
        prev = cand;
        prev_sign = s;
    }
    None
}

fn shadow_holds<S: Scalar>(
    root: &S,
    repeller: &[S],
    landing: usize,
    n: usize,
    gamma: f64,
) -> bool {
    let one = S::of(1.0);
    let g = S::of(gamma);
    let mut x = S::of(0.0);
    for j in 1..=n {
        x = one.sub(&root.mul(&x.mul(&x)));
        if j >= landing {
            let inside = repeller.iter().any(|z| x.sub(z).abs() <= g);
            if !inside {
                return false;
            }
        }
    }
    true
}

/// One solved landing parameter for the repeller-hitting driver.
#[derive(Debug, Clone)]
pub struct LandingRow {
    pub n_steps: usize,
    pub a_hat: f64,
    pub distance: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, Default)]
pub struct LandingTable {
    pub rows: Vec<LandingRow>,
    pub notes: Vec<String>,
}

/// For each `N`, solve `xi_N(b) = z(b)` in the bracket nearest `a`, where
/// `z` is the continued repeller point carried by `path`.
pub fn repeller_landing_table(
    a: MapParam,
    path: &ContinuationPath,
    n_range: &[usize],
    cfg: &DriverConfig,
) -> Result<LandingTable, ExperimentError> {
    let mut table = LandingTable::default();
    for &n_steps in n_range {
        let found = match cfg.precision {
            Precision::Double => landing_nearest::<f64>(a, path, n_steps),
            Precision::Extended => landing_nearest::<Ext>(a, path, n_steps),
        };
        match found {
            Some((a_hat, distance, residual)) => table.rows.push(LandingRow {
                n_steps,
                a_hat,
                distance,
                residual,
            }),
            None => table
                .notes
                .push(format!("N = {n_steps}: no landing parameter within the walk")),
        }
    }
    Ok(table)
}

/// Walk outward from `a` and return the nearest landing parameter for
/// `xi_N(b) = z(b)` as `(a_hat, |a_hat - a|, residual)`. An exact zero at the
/// base parameter itself (the landing already holds at `a`) is accepted
/// directly.
fn landing_nearest<S: Scalar>(
    a: MapParam,
    path: &ContinuationPath,
    n_steps: usize,
) -> Option<(f64, f64, f64)> {
    let h_fn = |b: &S| -> Option<S> {
        let z = path.z_at_in(b)?;
        Some(xi_n(b, n_steps).sub(&z))
    };
    let center = S::of(a.get());
    let h0 = h_fn(&center)?;
    if h0.sign_of() == 0 {
        return Some((a.get(), 0.0, 0.0));
    }
    let (_, dxi) = xi_n_with_deriv(&center, n_steps);
    let step = S::of(0.25 / dxi.abs().to_f64().max(4.0));
    let sides: &[f64] = if a.get() >= 2.0 { &[-1.0] } else { &[-1.0, 1.0] };
    let mut best: Option<(S, S)> = None;
    for &side in sides {
        let signed_step = step.mul(&S::of(side));
        let mut prev = center.clone();
        let mut prev_sign = h0.sign_of();
        for i in 1..=WALK_MAX {
            let b = center.add(&signed_step.mul(&S::of(i as f64)));
            let bf = b.to_f64();
            if !(0.0 < bf && bf <= 2.0) {
                break;
            }
            let Some(hb) = h_fn(&b) else { break };
            let s = hb.sign_of();
            if s == 0 || s != prev_sign {
                let (lo, hi) = if b < prev {
                    (b.clone(), prev.clone())
                } else {
                    (prev.clone(), b.clone())
                };
                match param::misiurewicz_in(&lo, &hi, n_steps, path) {
                    Ok(root) => {
                        let res = h_fn(&root).map_or(f64::NAN, |v| v.abs().to_f64());
                        let closer = best.as_ref().is_none_or(|(b0, _)| {
                            root.sub(&center).abs() < b0.sub(&center).abs()
                        });
                        if closer {
                            best = Some((root, S::of(res)));
                        }
                        break;
                    }
                    // minimality rejected or stalled: walk to the next bracket
                    Err(_) => {}
                }
            }
            prev = b;
            prev_sign = s;
        }
    }
    best.map(|(root, res)| {
        let distance = root.sub(&center).abs().to_f64();
        (root.to_f64(), distance, res.to_f64())
    })
}

/// Chained construction: landing parameters `b_k -> a` via the repeller
/// continuation, then one shadow row at each `b_k`, reported against the
/// singular measure of the repeller at `a` itself.
///
/// The shadow depth grows quadratically in the landing time: the landing
/// prefix contributes mass at distance O(1) from the repeller, so the
/// diagonal must out-deepen it for the measures to keep converging.
pub fn chained_shadow_diagonal(
    a: MapParam,
    repeller: &PeriodicOrbit,
    depth: usize,
    cfg: &DriverConfig,
) -> Result<ConvergenceTable, ExperimentError> {
    let mut table = ConvergenceTable::default();
    if depth == 0 {
        return Ok(table);
    }
    let mu_sing = measures::periodic_measure(repeller)?;
    let target = MapParam::new((a.get() - 0.5).max(0.8))?;
    let path = param::continue_orbit(repeller, target, 64)?;
    for k in 0..depth {
        let n_land = 3 + k;
        let n_shadow = n_land * n_land;
        if n_shadow > cfg.precision.superstable_period_cap() {
            table
                .notes
                .push(format!("k = {k}: shadow depth {n_shadow} beyond precision cap"));
            continue;
        }
        let Some((b_k, _, _)) = landing_nearest::<f64>(a, &path, n_land) else {
            table
                .notes
                .push(format!("k = {k}: no landing parameter at N = {n_land}"));
            continue;
        };
        let bt = MapParam::new(b_k)?;
        let orbit_b = path.solve_at(bt)?;
        let data = MisiurewiczData {
            landing_time: find_landing_time(bt, &orbit_b, n_land),
            repeller: orbit_b,
        };
        let Some(row) = shadow_row::<f64>(b_k, &data, cfg.gamma, n_shadow) else {
            table
                .notes
                .push(format!("k = {k}: no shadowing root near b = {b_k}"));
            continue;
        };
        let (a_n, a_decimal, period, residual, cycle) = row;
        let mu_n = measures::periodic_measure_points(&cycle)?;
        let w1 = measures::wasserstein1(&mu_n, &mu_sing);
        table.table_push_sorted(TableRow {
            n: n_shadow,
            a_n,
            a_decimal,
            period,
            w1,
            residual,
        });
    }
    Ok(table)
}

impl ConvergenceTable {
    fn table_push_sorted(&mut self, row: TableRow) {
        let pos = self
            .rows
            .iter()
            .position(|r| r.n > row.n)
            .unwrap_or(self.rows.len());
        self.rows.insert(pos, row);
    }
}

/// Minimal landing time of the critical orbit of `a` onto `orbit`, searched
/// up to `cap`.
fn find_landing_time(a: MapParam, orbit: &PeriodicOrbit, cap: usize) -> usize {
    let mut x = 0.0f64;
    for j in 1..=cap {
        x = dynamics::map_step(a.get(), x);
        if orbit.points.iter().any(|&z| (x - z).abs() < 1e-9) {
            return j;
        }
    }
    cap
}

/// Output of the two-limit demonstration.
#[derive(Debug, Clone)]
pub struct DiscontinuityDemo {
    /// super-stable sequence whose measures approach the natural-measure
    /// estimate.
    pub acip_table: ConvergenceTable,
    /// shadow sequence whose measures approach the singular measure.
    pub singular_table: ConvergenceTable,
    pub window_check: WindowCheck,
}

/// Continuity spot-check inside one periodic window.
#[derive(Debug, Clone)]
pub struct WindowCheck {
    pub a_superstable: f64,
    pub a_probe: f64,
    pub period: usize,
    pub w1: f64,
}

/// Two super-stable sequences accumulating on the same base parameter with
/// measures near two different limits, plus a continuity spot-check inside a
/// periodic window.
pub fn run_discontinuity_demo(
    a: MapParam,
    n_range: &[usize],
    cfg: &DriverConfig,
) -> Result<DiscontinuityDemo, ExperimentError> {
    // table 1: measure-approximation rows restricted to brackets narrower
    // than the demonstration corridor (10^-3 around the base parameter)
    let acip_periods: Vec<usize> = n_range.iter().copied().filter(|&n| n >= 10).collect();
    let acip_table = natural_measure_approximation(a, &acip_periods, cfg)?;
    // table 2: shadow rows toward the singular measure
    let singular = shadow_to_singular(a, cfg.gamma, n_range, cfg)?;
    // Remark-2 spot check in the period-2 window around a = 1
    let a_star = param::find_superstable(ParamWindow::new(0.9, 1.1)?, 2)?;
    let star_orbit = param::find_periodic_orbit(a_star, 2, 0.0)?;
    let mu_star = measures::periodic_measure(&star_orbit)?;
    let a_probe = MapParam::new(a_star.get() + 0.05)?;
    let probe_orbit = param::find_attractor(a_probe, 100_000, 64, 1e-9)
        .ok_or(ExperimentError::NotMisiurewicz { a: a_probe.get() })?;
    let mu_probe = measures::periodic_measure(&probe_orbit)?;
    let window_check = WindowCheck {
        a_superstable: a_star.get(),
        a_probe: a_probe.get(),
        period: probe_orbit.period,
        w1: measures::wasserstein1(&mu_probe, &mu_star),
    };
    Ok(DiscontinuityDemo {
        acip_table,
        singular_table: singular.table,
        window_check,
    })
}

/// Per-parameter classification of the landscape scan.
#[derive(Debug, Clone)]
pub struct ScanRow {
    pub a: f64,
    pub period: Option<usize>,
    pub multiplier: Option<f64>,
    pub lyapunov: Option<f64>,
}

/// Classify each grid point: attracting cycle (period and multiplier) when
/// one is found, otherwise a Lyapunov-exponent estimate from a seeded point.
pub fn window_scan(
    range: ParamWindow,
    grid: usize,
    n: usize,
    tol: f64,
    cfg: &DriverConfig,
) -> Vec<ScanRow> {
    assert!(grid >= 1);
    let params: Vec<(usize, f64)> = (0..grid)
        .map(|i| {
            let a = if grid == 1 {
                range.lo()
            } else {
                range.lo() + range.width() * i as f64 / (grid - 1) as f64
            };
            (i, a)
        })
        .collect();
    let seed = cfg.seed;
    parallel_map(cfg.jobs, params, move |(i, a)| {
        let ap = match MapParam::new(a) {
            Ok(ap) => ap,
            Err(_) => {
                return ScanRow {
                    a,
                    period: None,
                    multiplier: None,
                    lyapunov: None,
                }
            }
        };
        match param::find_attractor(ap, n, 64.min(n), tol) {
            Some(orbit) => ScanRow {
                a,
                period: Some(orbit.period),
                multiplier: Some(orbit.multiplier),
                lyapunov: None,
            },
            None => {
                let mut rng = SplitMix64::stream(seed, i as u64);
                let x0 = rng.next_phase_point();
                let burn = 1_000.min(n / 10);
                let lyap = dynamics::lyapunov_exponent(ap, x0, n, burn).ok();
                ScanRow {
                    a,
                    period: None,
                    multiplier: None,
                    lyapunov: lyap,
                }
            }
        }
    })
}
