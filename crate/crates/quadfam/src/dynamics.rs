//! The quadratic family `f_a(x) = 1 - a*x^2` and everything computed along
//! single orbits: traces, derivatives, the critical-orbit functions
//! `xi_n(a) = f_a^n(0)` with parameter derivatives, and Lyapunov exponents.
//!
//! All functions here are pure; callers may fan them out across threads
//! without coordination.

use crate::real::Scalar;
use thiserror::Error;

/// Rounding slack tolerated outside the invariant interval `[-1, 1]`.
/// Values inside the slack are clamped; values beyond it are domain errors,
/// because `f_a` maps `[-1, 1]` into `[1 - a, 1]` exactly.
pub const DOMAIN_SLACK: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum DomainError {
    #[error("parameter a = {0} outside (0, 2]")]
    BadParameter(f64),
    #[error("phase point x = {0} outside [-1, 1] beyond rounding slack")]
    BadPhasePoint(f64),
    #[error("orbit value overflowed at step {0}")]
    Overflow(usize),
}

/// Parameter of the quadratic family; invariant `0 < a <= 2`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct MapParam(f64);

impl MapParam {
    pub fn new(a: f64) -> Result<Self, DomainError> {
        if a.is_finite() && a > 0.0 && a <= 2.0 {
            Ok(MapParam(a))
        } else {
            Err(DomainError::BadParameter(a))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for MapParam {
    type Error = DomainError;
    fn try_from(a: f64) -> Result<Self, DomainError> {
        MapParam::new(a)
    }
}

fn check_phase(x: f64) -> Result<f64, DomainError> {
    if !x.is_finite() || x.abs() > 1.0 + DOMAIN_SLACK {
        Err(DomainError::BadPhasePoint(x))
    } else {
        Ok(x.clamp(-1.0, 1.0))
    }
}

/// One application of the map: `1 - a*x^2`.
pub fn eval_map(a: MapParam, x: f64) -> Result<f64, DomainError> {
    let x = check_phase(x)?;
    Ok(1.0 - a.get() * x * x)
}

/// Map step without the domain check, valid on all of the real line.
/// Periodic-orbit continuations leave `[-1, 1]`, so solvers use this form.
#[inline]
pub fn map_step(a: f64, x: f64) -> f64 {
    1.0 - a * x * x
}

/// Spatial derivative of the map at `x`: `-2*a*x`.
#[inline]
pub fn map_deriv(a: f64, x: f64) -> f64 {
    -2.0 * a * x
}

/// A finite orbit `x_0, ..., x_n` together with cumulative log-derivative
/// sums: entry `k` is `sum_{i<k} log|-2*a*x_i|`. Entries past an exact hit of
/// the critical point are `-inf` (the product has a zero factor from there on).
#[derive(Debug, Clone)]
pub struct OrbitTrace {
    pub a: MapParam,
    pub points: Vec<f64>,
    pub log_deriv_partial: Vec<f64>,
}

impl OrbitTrace {
    /// Index of the first exact hit of the critical point, if any.
    pub fn zero_hit(&self) -> Option<usize> {
        self.points.iter().position(|&x| x == 0.0)
    }
}

/// Iterate the orbit of `x0` for `n` steps, recording the trace.
pub fn iterate_orbit(a: MapParam, x0: f64, n: usize) -> Result<OrbitTrace, DomainError> {
    let mut points = Vec::with_capacity(n + 1);
    let mut logs = Vec::with_capacity(n + 1);
    let mut x = check_phase(x0)?;
    let mut acc = 0.0f64;
    points.push(x);
    logs.push(0.0);
    for _ in 0..n {
        acc += map_deriv(a.get(), x).abs().ln();
        x = check_phase(map_step(a.get(), x))?;
        points.push(x);
        logs.push(acc);
    }
    Ok(OrbitTrace {
        a,
        points,
        log_deriv_partial: logs,
    })
}

/// Signed derivative product along an orbit, with an explicit flag for exact
/// hits of the critical point (where the product collapses to zero).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivProduct {
    pub value: f64,
    pub hit_zero: bool,
}

/// `prod_{k=0}^{n-1} (-2*a*x_k)` along the orbit of `x0`.
pub fn derivative_along_orbit(
    a: MapParam,
    x0: f64,
    n: usize,
) -> Result<DerivProduct, DomainError> {
    let mut x = check_phase(x0)?;
    let mut prod = 1.0f64;
    let mut hit_zero = false;
    for _ in 0..n {
        if x == 0.0 {
            hit_zero = true;
        }
        prod *= map_deriv(a.get(), x);
        x = check_phase(map_step(a.get(), x))?;
    }
    Ok(DerivProduct {
        value: prod,
        hit_zero,
    })
}

/// The critical orbit `xi_k = f_a^k(0)` and its parameter derivatives,
/// computed by the recursions
/// `xi_{k+1} = 1 - a*xi_k^2` and `D_a xi_{k+1} = -xi_k^2 - 2*a*xi_k*D_a xi_k`.
#[derive(Debug, Clone)]
pub struct CriticalTrace {
    pub a: MapParam,
    pub xi: Vec<f64>,
    pub dxi_da: Vec<f64>,
}

/// Compute `xi_k` and `D_a xi_k` for `k <= n`.
pub fn critical_trace(a: MapParam, n: usize) -> CriticalTrace {
    let (xi, dxi) = critical_trace_generic(&a.get(), n);
    CriticalTrace {
        a,
        xi,
        dxi_da: dxi,
    }
}

/// Generic-precision form of [`critical_trace`]; parameter solvers run this
/// with the extended scalar when double precision cannot resolve a window.
pub fn critical_trace_generic<S: Scalar>(a: &S, n: usize) -> (Vec<S>, Vec<S>) {
    let one = S::of(1.0);
    let two = S::of(2.0);
    let mut xi = Vec::with_capacity(n + 1);
    let mut dxi = Vec::with_capacity(n + 1);
    let mut x = S::of(0.0);
    let mut d = S::of(0.0);
    xi.push(x.clone());
    dxi.push(d.clone());
    for _ in 0..n {
        let x_sq = x.mul(&x);
        // D_a xi' = -xi^2 - 2*a*xi*D_a xi
        d = x_sq.neg().sub(&two.mul(a).mul(&x).mul(&d));
        x = one.sub(&a.mul(&x_sq));
        xi.push(x.clone());
        dxi.push(d.clone());
    }
    (xi, dxi)
}

/// `xi_n(a)` alone, without storing the whole trace.
pub fn xi_n<S: Scalar>(a: &S, n: usize) -> S {
    let one = S::of(1.0);
    let mut x = S::of(0.0);
    for _ in 0..n {
        x = one.sub(&a.mul(&x.mul(&x)));
    }
    x
}

/// `(xi_n(a), D_a xi_n(a))` without storing the trace.
pub fn xi_n_with_deriv<S: Scalar>(a: &S, n: usize) -> (S, S) {
    let one = S::of(1.0);
    let two = S::of(2.0);
    let mut x = S::of(0.0);
    let mut d = S::of(0.0);
    for _ in 0..n {
        let x_sq = x.mul(&x);
        d = x_sq.neg().sub(&two.mul(a).mul(&x).mul(&d));
        x = one.sub(&a.mul(&x_sq));
    }
    (x, d)
}

/// Compensated (Kahan) summation; keeps the accumulated rounding error of
/// long log sums below the tolerances used by the growth diagnostics.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn add(&mut self, v: f64) {
        let y = v - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Time-averaged log-derivative along the orbit of `x0`:
/// `(1/n) * sum_{k=burn}^{burn+n-1} log|-2*a*x_k|`.
///
/// Returns `-inf` if the orbit hits the critical point exactly (the orbit is
/// then super-stable and the exponent is the sentinel, not an error).
pub fn lyapunov_exponent(
    a: MapParam,
    x0: f64,
    n: usize,
    burn: usize,
) -> Result<f64, DomainError> {
    let mut x = check_phase(x0)?;
    for _ in 0..burn {
        x = check_phase(map_step(a.get(), x))?;
    }
    let mut acc = KahanSum::default();
    for _ in 0..n {
        if x == 0.0 {
            return Ok(f64::NEG_INFINITY);
        }
        acc.add(map_deriv(a.get(), x).abs().ln());
        x = check_phase(map_step(a.get(), x))?;
    }
    Ok(acc.value() / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: f64) -> MapParam {
        MapParam::new(a).unwrap()
    }

    #[test]
    fn eval_map_values() {
        assert_eq!(eval_map(p(2.0), 0.0).unwrap(), 1.0);
        assert_eq!(eval_map(p(2.0), 1.0).unwrap(), -1.0);
        assert_eq!(eval_map(p(1.5), 0.5).unwrap(), 0.625);
    }

    #[test]
    fn eval_map_domain_error() {
        assert!(matches!(
            eval_map(p(2.0), 1.1),
            Err(DomainError::BadPhasePoint(_))
        ));
        // within slack: clamped, not an error
        assert_eq!(eval_map(p(2.0), 1.0 + 5e-13).unwrap(), -1.0);
    }

    #[test]
    fn map_param_invariant() {
        assert!(MapParam::new(0.0).is_err());
        assert!(MapParam::new(2.0 + 1e-9).is_err());
        assert!(MapParam::new(f64::NAN).is_err());
        assert!(MapParam::new(2.0).is_ok());
    }

    #[test]
    fn orbit_of_critical_point_at_two() {
        let t = iterate_orbit(p(2.0), 0.0, 3).unwrap();
        assert_eq!(t.points, vec![0.0, 1.0, -1.0, -1.0]);
        assert_eq!(t.zero_hit(), Some(0));
    }

    #[test]
    fn orbit_superstable_two_cycle() {
        let t = iterate_orbit(p(1.0), 0.0, 4).unwrap();
        assert_eq!(t.points, vec![0.0, 1.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn orbit_direct_arithmetic() {
        let t = iterate_orbit(p(2.0), 0.3, 2).unwrap();
        assert!((t.points[1] - 0.82).abs() < 1e-15);
        assert!((t.points[2] + 0.3448).abs() < 1e-15);
    }

    #[test]
    fn orbit_stays_in_interval() {
        let t = iterate_orbit(p(1.99), 0.7, 5000).unwrap();
        for &x in &t.points {
            assert!(x.abs() <= 1.0 + DOMAIN_SLACK);
        }
    }

    #[test]
    fn derivative_products() {
        // (2, 1, 3): factors -4, 4, 4
        let d = derivative_along_orbit(p(2.0), 1.0, 3).unwrap();
        assert_eq!(d.value, -64.0);
        assert!(!d.hit_zero);

        let d = derivative_along_orbit(p(2.0), 0.0, 1).unwrap();
        assert_eq!(d.value, 0.0);
        assert!(d.hit_zero);

        let d = derivative_along_orbit(p(2.0), 0.5, 1).unwrap();
        assert_eq!(d.value, -2.0);
    }

    #[test]
    fn critical_trace_at_two() {
        let t = critical_trace(p(2.0), 6);
        assert_eq!(&t.xi[..4], &[0.0, 1.0, -1.0, -1.0]);
        // hand-applied recursion: D_a xi_2 = -xi_1^2 = -1, then -5, -21
        assert_eq!(t.dxi_da[0], 0.0);
        assert_eq!(t.dxi_da[1], 0.0);
        assert_eq!(t.dxi_da[2], -1.0);
        assert_eq!(t.dxi_da[3], -5.0);
        assert_eq!(t.dxi_da[4], -21.0);
    }

    #[test]
    fn dxi_1_vanishes_for_all_a() {
        for &a in &[0.3, 0.9, 1.5, 1.99] {
            let t = critical_trace(p(a), 1);
            assert_eq!(t.dxi_da[1], 0.0);
        }
    }

    #[test]
    fn closed_pattern_at_two() {
        // D_a xi_{k+1}(2) = -(4^k - 1)/3
        let t = critical_trace(p(2.0), 21);
        for k in 1..=20usize {
            let expected = -((4f64.powi(k as i32) - 1.0) / 3.0);
            assert_eq!(t.dxi_da[k + 1], expected, "k = {k}");
        }
    }

    #[test]
    fn lyapunov_at_chebyshev_from_fixed_orbit() {
        // orbit of 1 at a = 2: derivative magnitude 4 every step
        let l = lyapunov_exponent(p(2.0), 1.0, 1000, 0).unwrap();
        assert!((l - 4.0f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn lyapunov_attracting_fixed_point() {
        // a = 0.5: attracting fixed point at -1 + sqrt(3)
        let l = lyapunov_exponent(p(0.5), 0.3, 10_000, 100).unwrap();
        let x_star = -1.0 + 3.0f64.sqrt();
        assert!((l - (x_star).ln()).abs() < 1e-6, "l = {l}");
        assert!(l < 0.0);
    }

    #[test]
    fn lyapunov_superstable_sentinel() {
        let l = lyapunov_exponent(p(1.0), 0.0, 10, 0).unwrap();
        assert_eq!(l, f64::NEG_INFINITY);
    }

    #[test]
    fn lyapunov_long_run_at_two_is_log_two() {
        let mut rng = crate::rng::SplitMix64::new(5);
        let l1 = lyapunov_exponent(p(2.0), rng.next_phase_point(), 1_000_000, 1_000).unwrap();
        assert!((l1 - 2f64.ln()).abs() < 0.01, "l1 = {l1}");
        // cross-check against an independent seeded run
        let mut rng2 = crate::rng::SplitMix64::new(31);
        let l2 = lyapunov_exponent(p(2.0), rng2.next_phase_point(), 1_000_000, 1_000).unwrap();
        assert!((l1 - l2).abs() < 0.01, "l1 = {l1}, l2 = {l2}");
    }

    #[test]
    fn cocycle_composition() {
        let a = p(1.97);
        let x0 = 0.4217;
        for (m, n) in [(3usize, 5usize), (7, 2), (1, 9)] {
            let whole = derivative_along_orbit(a, x0, m + n).unwrap().value;
            let first = derivative_along_orbit(a, x0, m).unwrap().value;
            let mid = iterate_orbit(a, x0, m).unwrap().points[m];
            let second = derivative_along_orbit(a, mid, n).unwrap().value;
            let rel = ((whole - first * second) / whole).abs();
            assert!(rel < 1e-10, "m={m} n={n} rel={rel}");
        }
    }

    #[test]
    fn generic_trace_matches_f64() {
        use crate::real::Ext;
        let (xi_d, dxi_d) = critical_trace_generic(&1.7548776662, 10);
        let (xi_e, dxi_e) = critical_trace_generic(&Ext::of(1.7548776662), 10);
        for k in 0..=10 {
            assert!((xi_d[k] - xi_e[k].to_f64()).abs() < 1e-12);
            assert!((dxi_d[k] - dxi_e[k].to_f64()).abs() < 1e-9 * dxi_d[k].abs().max(1.0));
        }
    }
}
