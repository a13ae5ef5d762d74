//! Growth and recurrence diagnostics along the critical orbit: the partition
//! of the critical neighborhood `I* = (-delta, delta)`, exponential-growth
//! and recurrence checks, bound periods after returns to `I*`, return
//! itineraries of parameter windows, and companion checkers that measure the
//! constants the theory leaves existential.
//!
//! Nothing here is validated arithmetic; the checkers report measured values
//! at the configured tolerances.

use crate::dynamics::{self, KahanSum, MapParam};
use crate::param::{window_image, ParamWindow, WindowImage};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BCError {
    #[error("configuration invalid: {0}")]
    BadConfig(String),
    #[error("growth condition fails at a = {a} (first violation j = {j:?})")]
    CEViolated { a: f64, j: Option<usize> },
    #[error("window is degenerate")]
    DegenerateWindow,
    #[error("bound period not found within {0} steps")]
    DepthExceeded(usize),
    #[error(transparent)]
    Domain(#[from] dynamics::DomainError),
}

/// Tunable constants of the diagnostics.
///
/// `delta` is the half-width of the critical neighborhood, `lambda` the
/// growth-exponent target, `alpha` the recurrence exponent (kept at or below
/// `lambda/300` so the bound-period budget stays under a hundredth of the
/// depth), `lambda0` the outside-`I*` growth rate when one is imposed rather
/// than measured.
#[derive(Debug, Clone, Copy)]
pub struct BCConfig {
    pub delta: f64,
    pub lambda: f64,
    pub alpha: f64,
    pub lambda0: Option<f64>,
}

impl Default for BCConfig {
    fn default() -> Self {
        BCConfig {
            delta: (-7.0f64).exp(),
            lambda: 0.4,
            alpha: 0.4 / 300.0,
            lambda0: None,
        }
    }
}

impl BCConfig {
    pub fn validate(&self) -> Result<(), BCError> {
        if !(self.delta > 0.0 && self.delta <= 0.01) {
            return Err(BCError::BadConfig(format!(
                "delta = {} outside (0, 0.01]",
                self.delta
            )));
        }
        if !(self.lambda > 0.0 && self.lambda <= 4.0f64.ln()) {
            return Err(BCError::BadConfig(format!(
                "lambda = {} outside (0, log 4]",
                self.lambda
            )));
        }
        if !(self.alpha > 0.0 && self.alpha <= self.lambda / 300.0 + 1e-15) {
            return Err(BCError::BadConfig(format!(
                "alpha = {} exceeds lambda/300",
                self.alpha
            )));
        }
        Ok(())
    }

    /// Smallest admissible `|mu|` for the partition.
    pub fn mu_min(&self) -> i64 {
        (-self.delta.ln()).ceil() as i64
    }
}

/// Index of one partition element `I_{mu,nu}` of `I* \ {0}`:
/// `I_mu = [e^{-(mu+1)}, e^{-mu})` for `mu > 0`, mirrored for `mu < 0`, each
/// `I_mu` split into `mu^2` equal pieces with `nu = 1` nearest the origin.
/// `extended` marks indices recorded via the enlarged element `I_{mu,nu}^+`
/// (the piece plus both neighbors).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionIndex {
    pub mu: i64,
    pub nu: u64,
    pub extended: bool,
}

/// Partition membership of a phase point: `None` iff `|x| >= delta` or
/// `x = 0` exactly.
pub fn classify(x: f64, cfg: &BCConfig) -> Option<PartitionIndex> {
    if x == 0.0 || x.abs() >= cfg.delta {
        return None;
    }
    let ax = x.abs();
    let mut mu = (-ax.ln()).floor() as i64;
    // boundary repair: want e^{-(mu+1)} <= |x| < e^{-mu}
    while ax >= (-(mu as f64)).exp() {
        mu -= 1;
    }
    while ax < (-(mu as f64 + 1.0)).exp() {
        mu += 1;
    }
    let lo = (-(mu as f64 + 1.0)).exp();
    let hi = (-(mu as f64)).exp();
    let pieces = (mu * mu) as u64;
    let idx = ((ax - lo) / (hi - lo) * pieces as f64).floor() as u64;
    let nu = (idx + 1).min(pieces);
    Some(PartitionIndex {
        mu: if x < 0.0 { -mu } else { mu },
        nu,
        extended: false,
    })
}

/// Endpoints of the piece `I_{mu,nu}` on the positive side (callers mirror
/// for negative `mu`).
pub fn piece_bounds(mu: i64, nu: u64) -> (f64, f64) {
    let m = mu.unsigned_abs() as f64;
    let lo = (-(m + 1.0)).exp();
    let hi = (-m).exp();
    let len = (hi - lo) / (m * m);
    let inner = lo + (nu - 1) as f64 * len;
    let (a, b) = (inner, inner + len);
    if mu < 0 {
        (-b, -a)
    } else {
        (a, b)
    }
}

/// Exponential-growth and recurrence report for one parameter.
#[derive(Debug, Clone)]
pub struct CEReport {
    pub depth: usize,
    /// min over `j <= depth` of `(1/j) log |Df_a^j(f_a(0))|`.
    pub min_exponent: f64,
    /// first `j` at which the growth target `e^{lambda j}` is missed.
    pub first_violation: Option<usize>,
    /// times `n` with `|xi_n| < min(delta, e^{-alpha n})`: the recurrence
    /// envelope is capped at the critical-neighborhood radius, since only
    /// approaches to the critical point carry content (for small `n` the bare
    /// exponential envelope is close to 1 and every parameter away from the
    /// Chebyshev point would fail vacuously).
    pub recurrence_violations: Vec<usize>,
}

impl CEReport {
    pub fn passes(&self) -> bool {
        self.first_violation.is_none() && self.recurrence_violations.is_empty()
    }
}

/// Check the growth condition `|Df_a^j(f_a(0))| >= e^{lambda j}` for all
/// `j <= n` together with the recurrence condition `|xi_n| >= e^{-alpha n}`.
pub fn check_ce(a: MapParam, n: usize, cfg: &BCConfig) -> CEReport {
    assert!(n >= 1);
    let mut x = 1.0f64; // f_a(0)
    let mut logs = KahanSum::default();
    let mut min_exponent = f64::INFINITY;
    let mut first_violation = None;
    let mut recurrence_violations = Vec::new();
    // xi_1 = 1 = x; recurrence at time j reads |xi_j| vs min(delta, e^{-alpha j})
    if 1.0f64 < cfg.delta.min((-cfg.alpha).exp()) {
        recurrence_violations.push(1);
    }
    for j in 1..=n {
        let factor = dynamics::map_deriv(a.get(), x).abs();
        logs.add(if factor == 0.0 {
            f64::NEG_INFINITY
        } else {
            factor.ln()
        });
        let exponent = logs.value() / j as f64;
        if exponent < min_exponent {
            min_exponent = exponent;
        }
        if exponent < cfg.lambda && first_violation.is_none() {
            first_violation = Some(j);
        }
        x = dynamics::map_step(a.get(), x);
        // x now holds xi_{j+1}
        let time = j + 1;
        if time <= n && x.abs() < cfg.delta.min((-cfg.alpha * time as f64).exp()) {
            recurrence_violations.push(time);
        }
    }
    CEReport {
        depth: n,
        min_exponent,
        first_violation,
        recurrence_violations,
    }
}

const BOUND_PERIOD_DEPTH_CAP: usize = 10_000;

/// Length of the bound period after a return into `I_mu`: the last `j` for
/// which the image of `hat I_mu = (-e^{-|mu|}, e^{-|mu|})` under `f_a^j` is
/// still shorter than `e^{-2 alpha j}`. The image hull is tracked by
/// iterating a sample of the interval, with the sample density doubled until
/// the answer is stable.
pub fn bound_period(a: MapParam, mu: i64, cfg: &BCConfig) -> Result<usize, BCError> {
    if mu.abs() < cfg.mu_min() {
        return Err(BCError::BadConfig(format!(
            "|mu| = {} below minimum {}",
            mu.abs(),
            cfg.mu_min()
        )));
    }
    let r = (-(mu.abs() as f64)).exp();
    let mut samples = 513usize;
    let mut last = None;
    while samples <= 8193 {
        let p = bound_period_sampled(a.get(), r, cfg.alpha, samples)?;
        if last == Some(p) {
            return Ok(p);
        }
        last = Some(p);
        samples = samples * 2 - 1;
    }
    Ok(last.expect("at least one pass"))
}

fn bound_period_sampled(a: f64, r: f64, alpha: f64, samples: usize) -> Result<usize, BCError> {
    let mut xs: Vec<f64> = (0..samples)
        .map(|i| -r + 2.0 * r * i as f64 / (samples - 1) as f64)
        .collect();
    for j in 1..=BOUND_PERIOD_DEPTH_CAP {
        for x in xs.iter_mut() {
            *x = dynamics::map_step(a, *x);
        }
        let (lo, hi) = min_max(&xs);
        if hi - lo > (-2.0 * alpha * j as f64).exp() {
            return Ok(j - 1);
        }
    }
    Err(BCError::DepthExceeded(BOUND_PERIOD_DEPTH_CAP))
}

fn min_max(xs: &[f64]) -> (f64, f64) {
    let mut lo = xs[0];
    let mut hi = xs[0];
    for &x in &xs[1..] {
        if x < lo {
            lo = x;
        }
        if x > hi {
            hi = x;
        }
    }
    (lo, hi)
}

/// Kind of a recorded return of the window image to `I*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReturnKind {
    EssentialFree,
    InessentialFree,
    BoundReturn,
    Escape,
}

#[derive(Debug, Clone)]
pub struct ReturnEvent {
    pub time: usize,
    pub kind: ReturnKind,
    pub index: Option<PartitionIndex>,
    pub hull: WindowImage,
}

/// Record of the free returns, bound periods and escape configurations of a
/// parameter window up to a given depth.
#[derive(Debug, Clone)]
pub struct ReturnItinerary {
    pub n_max: usize,
    pub events: Vec<ReturnEvent>,
    /// `(start time, length)` of each bound period, one per free return.
    pub bound_periods: Vec<(usize, usize)>,
}

/// Classify every entry of the window image into `I*` up to `n_max`.
///
/// A free return is essential when the image hull fully covers some
/// partition piece, inessential otherwise; an essential return whose hull
/// additionally reaches `(-delta^2, delta^2)` and has length at least `delta`
/// is an escape. Returns inside an active bound period are recorded but start
/// no new accounting.
pub fn itinerary(w: ParamWindow, n_max: usize, cfg: &BCConfig) -> Result<ReturnItinerary, BCError> {
    itinerary_with_samples(w, n_max, cfg, 64)
}

/// [`itinerary`] with an explicit base sampling density (event lists on the
/// canonical demonstration windows are stable under doubling this).
pub fn itinerary_with_samples(
    w: ParamWindow,
    n_max: usize,
    cfg: &BCConfig,
    base_samples: usize,
) -> Result<ReturnItinerary, BCError> {
    cfg.validate()?;
    if w.is_degenerate() {
        return Err(BCError::DegenerateWindow);
    }
    // sampled precondition: growth and recurrence hold across the window
    for i in 0..=4 {
        let a = w.lo() + w.width() * i as f64 / 4.0;
        let report = check_ce(MapParam::new(a)?, n_max, cfg);
        if !report.passes() {
            return Err(BCError::CEViolated {
                a,
                j: report.first_violation,
            });
        }
    }
    let mid = MapParam::new(w.lo() + 0.5 * w.width())?;
    let mut events = Vec::new();
    let mut bound_periods = Vec::new();
    let mut bound_until: Option<usize> = None;
    for n in 1..=n_max {
        let img = window_image(w, n, base_samples);
        if !img.intersects(-cfg.delta, cfg.delta) {
            continue;
        }
        let in_bound = bound_until.is_some_and(|t| n <= t);
        if in_bound {
            events.push(ReturnEvent {
                time: n,
                kind: ReturnKind::BoundReturn,
                index: classify_hull_midpoint(&img, cfg),
                hull: img,
            });
            continue;
        }
        let witness = covered_piece(&img, cfg);
        let escape = img.intersects(-cfg.delta * cfg.delta, cfg.delta * cfg.delta)
            && img.len() >= cfg.delta;
        let (kind, index) = match (witness, escape) {
            (Some(idx), true) => (ReturnKind::Escape, Some(idx)),
            (Some(idx), false) => (ReturnKind::EssentialFree, Some(idx)),
            (None, _) => (
                ReturnKind::InessentialFree,
                classify_hull_midpoint(&img, cfg).map(|mut idx| {
                    idx.extended = true;
                    idx
                }),
            ),
        };
        let mu = index.map(|i| i.mu).unwrap_or_else(|| cfg.mu_min());
        let p = bound_period(mid, mu.max(cfg.mu_min()).max(-mu), cfg)?;
        bound_periods.push((n, p));
        bound_until = Some(n + p);
        events.push(ReturnEvent {
            time: n,
            kind,
            index,
            hull: img,
        });
    }
    Ok(ReturnItinerary {
        n_max,
        events,
        bound_periods,
    })
}

fn classify_hull_midpoint(img: &WindowImage, cfg: &BCConfig) -> Option<PartitionIndex> {
    let c_lo = img.hull_lo.max(-cfg.delta);
    let c_hi = img.hull_hi.min(cfg.delta);
    let mid = 0.5 * (c_lo + c_hi);
    classify(mid, cfg)
        .or_else(|| classify(0.5 * c_hi, cfg))
        .or_else(|| classify(0.5 * c_lo, cfg))
}

/// Largest partition piece fully covered by the hull, if any: the witness
/// that a return is essential.
fn covered_piece(img: &WindowImage, cfg: &BCConfig) -> Option<PartitionIndex> {
    let c_lo = img.hull_lo.max(-cfg.delta);
    let c_hi = img.hull_hi.min(cfg.delta);
    if c_hi <= c_lo {
        return None;
    }
    // straddling zero: pieces accumulate at the origin, so one side always
    // holds a covered piece; prefer the wider side
    if c_lo < 0.0 && c_hi > 0.0 {
        let side = if c_hi >= -c_lo { c_hi } else { c_lo };
        let m = (-side.abs().ln()).ceil().max(cfg.mu_min() as f64) as i64;
        let signed = if side < 0.0 { -m } else { m };
        return Some(PartitionIndex {
            mu: signed,
            nu: 1,
            extended: false,
        });
    }
    // one-sided hull: scan the mu range it spans
    let (lo_abs, hi_abs, negative) = if c_lo >= 0.0 {
        (c_lo.max(f64::MIN_POSITIVE), c_hi, false)
    } else {
        (c_hi.abs().max(f64::MIN_POSITIVE), c_lo.abs(), true)
    };
    let mu_hi = (-lo_abs.ln()).floor() as i64; // largest mu index in range
    let mu_lo = (-hi_abs.ln()).floor().max(cfg.mu_min() as f64) as i64;
    for m in mu_lo..=mu_hi.min(mu_lo + 200) {
        let pieces = (m * m) as u64;
        for nu in 1..=pieces {
            let (p_lo, p_hi) = piece_bounds(m, nu);
            if lo_abs <= p_lo && p_hi <= hi_abs {
                return Some(PartitionIndex {
                    mu: if negative { -m } else { m },
                    nu,
                    extended: false,
                });
            }
            if p_lo > hi_abs {
                break;
            }
        }
    }
    None
}

/// Measured distortion and expansion during a bound period.
#[derive(Debug, Clone)]
pub struct DistortionReport {
    pub ratio_min: f64,
    pub ratio_max: f64,
    /// min over sampled `x` in `I_mu` of `|(f_a^p)'(x)| e^{-lambda p / 4}`.
    pub expansion: f64,
}

/// Distortion of derivatives started inside the image of the critical
/// neighborhood against the critical-value orbit, and the net expansion over
/// the bound period.
pub fn bound_period_distortion(a: MapParam, mu: i64, p: usize, cfg: &BCConfig) -> DistortionReport {
    let r = (-(mu.abs() as f64)).exp();
    let y_lo = 1.0 - a.get() * r * r;
    let samples = 129usize;
    // log |Df^j(1)| baseline
    let mut base = vec![0.0f64; p + 1];
    {
        let mut x = 1.0f64;
        let mut acc = KahanSum::default();
        for j in 1..=p {
            acc.add(dynamics::map_deriv(a.get(), x).abs().ln());
            x = dynamics::map_step(a.get(), x);
            base[j] = acc.value();
        }
    }
    let mut ratio_min = f64::INFINITY;
    let mut ratio_max = f64::NEG_INFINITY;
    for i in 0..samples {
        let mut y = y_lo + (1.0 - y_lo) * i as f64 / (samples - 1) as f64;
        let mut acc = KahanSum::default();
        // j = 0: empty products, ratio exactly 1
        ratio_min = ratio_min.min(1.0);
        ratio_max = ratio_max.max(1.0);
        for j in 1..=p {
            acc.add(dynamics::map_deriv(a.get(), y).abs().ln());
            y = dynamics::map_step(a.get(), y);
            let ratio = (acc.value() - base[j]).exp();
            ratio_min = ratio_min.min(ratio);
            ratio_max = ratio_max.max(ratio);
        }
    }
    // expansion over I_mu itself
    let (i_lo, i_hi) = piece_side(mu);
    let mut expansion = f64::INFINITY;
    for i in 0..samples {
        let x0 = i_lo + (i_hi - i_lo) * i as f64 / (samples - 1) as f64;
        let mut x = x0;
        let mut acc = KahanSum::default();
        for _ in 0..p {
            acc.add(dynamics::map_deriv(a.get(), x).abs().ln());
            x = dynamics::map_step(a.get(), x);
        }
        let v = (acc.value() - cfg.lambda * p as f64 / 4.0).exp();
        expansion = expansion.min(v);
    }
    DistortionReport {
        ratio_min,
        ratio_max,
        expansion,
    }
}

/// The interval `I_mu` (whole level, not a single piece).
fn piece_side(mu: i64) -> (f64, f64) {
    let m = mu.unsigned_abs() as f64;
    let (lo, hi) = ((-(m + 1.0)).exp(), (-m).exp());
    if mu < 0 {
        (-hi, -lo)
    } else {
        (lo, hi)
    }
}

/// Exponential-growth fit over one free stretch of an itinerary.
#[derive(Debug, Clone, Copy)]
pub struct FreeFit {
    pub start: usize,
    pub len: usize,
    /// least-squares slope of `log |xi_k(w)|` over the stretch.
    pub rate: f64,
}

#[derive(Debug, Clone)]
pub struct GrowthReport {
    /// hull-length ratios of consecutive essential free returns.
    pub return_ratios: Vec<f64>,
    pub free_fits: Vec<FreeFit>,
    /// smallest growth factor over any stretch of `n0` steps fully outside
    /// `I*`, when such a stretch exists.
    pub outside_min_factor: Option<f64>,
    pub n0: usize,
}

/// Growth bookkeeping between free returns: doubling of hull lengths at
/// consecutive essential returns, exponential rates on free stretches, and
/// the growth factor over windows of `n0` consecutive outside steps.
pub fn free_return_growth(w: ParamWindow, it: &ReturnItinerary, cfg: &BCConfig) -> GrowthReport {
    let n0 = 5usize;
    let lengths: Vec<f64> = (0..=it.n_max)
        .map(|n| window_image(w, n, 64).len())
        .collect();
    let essential_times: Vec<usize> = it
        .events
        .iter()
        .filter(|e| matches!(e.kind, ReturnKind::EssentialFree | ReturnKind::Escape))
        .map(|e| e.time)
        .collect();
    let return_ratios = essential_times
        .windows(2)
        .map(|t| lengths[t[1]] / lengths[t[0]])
        .collect();
    // free stretches: from the end of each bound period to the next return
    let mut prev_free_start = 1usize;
    let mut free_segments = Vec::new();
    for &(start, p) in &it.bound_periods {
        if start > prev_free_start {
            free_segments.push((prev_free_start, start));
        }
        prev_free_start = start + p + 1;
    }
    if prev_free_start < it.n_max {
        free_segments.push((prev_free_start, it.n_max));
    }
    let mut free_fits = Vec::new();
    for (s, e) in free_segments {
        let len = e - s;
        if len >= 5 {
            let rate = log_slope(&lengths[s..=e]);
            free_fits.push(FreeFit {
                start: s,
                len,
                rate,
            });
        }
    }
    // outside-I* stretches of length n0
    let inside: Vec<bool> = (0..=it.n_max)
        .map(|n| {
            let img = window_image(w, n, 64);
            img.intersects(-cfg.delta, cfg.delta)
        })
        .collect();
    let mut outside_min_factor: Option<f64> = None;
    for k in 1..=it.n_max.saturating_sub(n0) {
        if (k..=k + n0).all(|j| !inside[j]) {
            let factor = lengths[k + n0] / lengths[k];
            outside_min_factor = Some(match outside_min_factor {
                Some(f) => f.min(factor),
                None => factor,
            });
        }
    }
    GrowthReport {
        return_ratios,
        free_fits,
        outside_min_factor,
        n0,
    }
}

fn log_slope(vals: &[f64]) -> f64 {
    let n = vals.len() as f64;
    let mut sx = 0.0;
    let mut sy = 0.0;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (i, &v) in vals.iter().enumerate() {
        let x = i as f64;
        let y = v.max(f64::MIN_POSITIVE).ln();
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Hausdorff distance between two closed intervals.
pub fn hd_dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).abs().max((a.1 - b.1).abs())
}

#[derive(Debug, Clone)]
pub struct DriftReport {
    /// max over `j <= p` of
    /// `HD(f_a^j(hat I_mu), f_b^j(hat I_mu)) / |f_a^j(hat I_mu)|`.
    pub max_ratio_interval: f64,
    /// the analogue comparing window hulls `xi_{n+j+1}(w)` against
    /// `f_a^j(xi_{n+1}(w))`, when a return time into `I*` exists.
    pub max_ratio_xi: Option<f64>,
}

/// Parameter-dependence of iterated interval images across a window: both
/// endpoints iterate the same critical-neighborhood interval, and the
/// Hausdorff drift is compared against the image length.
pub fn parameter_drift(w: ParamWindow, mu: i64, p: usize, cfg: &BCConfig) -> DriftReport {
    let r = (-(mu.abs() as f64)).exp();
    let hulls_a = interval_hulls(w.lo(), -r, r, p);
    let hulls_b = interval_hulls(w.hi(), -r, r, p);
    let mut max_ratio_interval = 0.0f64;
    for j in 1..=p {
        let len = hulls_a[j].1 - hulls_a[j].0;
        if len > 0.0 {
            max_ratio_interval = max_ratio_interval.max(hd_dist(hulls_a[j], hulls_b[j]) / len);
        }
    }
    // find a return of the window hull into I* and compare parameter hulls
    // with phase images from the left endpoint
    let mut max_ratio_xi = None;
    let search_cap = 4 * p + 64;
    let mut n_return = None;
    for n in 1..=search_cap {
        let img = window_image(w, n, 64);
        if img.hull_lo > -cfg.delta && img.hull_hi < cfg.delta {
            n_return = Some(n);
            break;
        }
    }
    if let Some(n) = n_return {
        let base = window_image(w, n + 1, 64);
        let phase = interval_hulls(w.lo(), base.hull_lo, base.hull_hi, p);
        let mut worst = 0.0f64;
        for j in 1..=p {
            let param_hull = window_image(w, n + j + 1, 64);
            let len = phase[j].1 - phase[j].0;
            if len > 0.0 {
                worst = worst.max(hd_dist((param_hull.hull_lo, param_hull.hull_hi), phase[j]) / len);
            }
        }
        max_ratio_xi = Some(worst);
    }
    DriftReport {
        max_ratio_interval,
        max_ratio_xi,
    }
}

/// Sampled hull of `f_a^j([lo, hi])` for `j = 0..=steps`.
fn interval_hulls(a: f64, lo: f64, hi: f64, steps: usize) -> Vec<(f64, f64)> {
    let samples = 1025usize;
    let mut xs: Vec<f64> = (0..samples)
        .map(|i| lo + (hi - lo) * i as f64 / (samples - 1) as f64)
        .collect();
    let mut out = Vec::with_capacity(steps + 1);
    out.push(min_max(&xs));
    for _ in 0..steps {
        for x in xs.iter_mut() {
            *x = dynamics::map_step(a, *x);
        }
        out.push(min_max(&xs));
    }
    out
}

/// `sum_{j=0}^{n-1} |xi_j(a) - xi_j(b)|`: the deviation between two critical
/// orbits, the quantity whose boundedness along super-stable approximants
/// drives the weak* convergence argument.
pub fn deviation_sum(a: MapParam, b: MapParam, n: usize) -> f64 {
    let mut xa = 0.0f64;
    let mut xb = 0.0f64;
    let mut acc = KahanSum::default();
    for _ in 0..n {
        acc.add((xa - xb).abs());
        xa = dynamics::map_step(a.get(), xa);
        xb = dynamics::map_step(b.get(), xb);
    }
    acc.value()
}

/// Ratio `|D_a xi_{k+1}(a)| / |D_x f_a^k(1)|`: comparability of parameter and
/// space derivatives along the critical orbit.
pub fn comparability_ratio(a: MapParam, k: usize) -> f64 {
    let (_, dxi) = dynamics::xi_n_with_deriv(&a.get(), k + 1);
    let mut x = 1.0f64;
    let mut logd = KahanSum::default();
    for _ in 0..k {
        logd.add(dynamics::map_deriv(a.get(), x).abs().ln());
        x = dynamics::map_step(a.get(), x);
    }
    dxi.abs() / logd.value().exp()
}

/// First escape configuration of a window: time and image at the first
/// essential return satisfying the escape pair (image reaches
/// `(-delta^2, delta^2)` and has length at least `delta`).
pub fn first_escape(it: &ReturnItinerary) -> Option<&ReturnEvent> {
    it.events
        .iter()
        .find(|e| matches!(e.kind, ReturnKind::Escape))
}
