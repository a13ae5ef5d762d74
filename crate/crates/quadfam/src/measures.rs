//! Finite atomic probability measures on `[-1, 1]` and the Wasserstein-1
//! metric that turns weak* statements into computable numbers.
//!
//! For measures on a compact interval, `W1(mu, nu) = int |F_mu - F_nu|` over
//! the interval, which is exact for step CDFs and bounds every Lipschitz
//! integral via `|int phi dmu - int phi dnu| <= Lip(phi) * W1(mu, nu)`.

use crate::dynamics::{self, KahanSum, MapParam};
use crate::param::PeriodicOrbit;
use thiserror::Error;

const WEIGHT_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum MeasureError {
    #[error("measure must have at least one atom")]
    Empty,
    #[error("atom weight {0} is not positive and finite")]
    BadWeight(f64),
    #[error("atom positions must be strictly increasing")]
    Unsorted,
    #[error("atom position {0} outside [-1, 1]")]
    OutOfRange(f64),
    #[error("weights sum to {0}, expected 1")]
    BadTotal(f64),
    #[error("cdf argument {0} outside [-1, 1]")]
    CdfDomain(f64),
}

/// A finite atomic probability measure: sorted atoms `(position, weight)`
/// with strictly increasing positions and weights summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalMeasure {
    atoms: Vec<(f64, f64)>,
}

impl EmpiricalMeasure {
    /// Build from explicit atoms; positions are sorted and coinciding
    /// positions merged, then the invariants are checked.
    pub fn from_atoms(mut atoms: Vec<(f64, f64)>) -> Result<Self, MeasureError> {
        if atoms.is_empty() {
            return Err(MeasureError::Empty);
        }
        for &(x, w) in &atoms {
            if !(w.is_finite() && w > 0.0) {
                return Err(MeasureError::BadWeight(w));
            }
            if !x.is_finite() || x.abs() > 1.0 + dynamics::DOMAIN_SLACK {
                return Err(MeasureError::OutOfRange(x));
            }
        }
        atoms.sort_by(|p, q| p.0.partial_cmp(&q.0).expect("finite positions"));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(atoms.len());
        for (x, w) in atoms {
            let x = x.clamp(-1.0, 1.0);
            match merged.last_mut() {
                Some(last) if last.0 == x => last.1 += w,
                _ => merged.push((x, w)),
            }
        }
        let mut total = KahanSum::default();
        for &(_, w) in &merged {
            total.add(w);
        }
        if (total.value() - 1.0).abs() > WEIGHT_TOL {
            return Err(MeasureError::BadTotal(total.value()));
        }
        Ok(EmpiricalMeasure { atoms: merged })
    }

    /// Equal-weight empirical measure of a finite sample.
    pub fn from_points(points: &[f64]) -> Result<Self, MeasureError> {
        if points.is_empty() {
            return Err(MeasureError::Empty);
        }
        let w = 1.0 / points.len() as f64;
        Self::from_atoms(points.iter().map(|&x| (x, w)).collect())
    }

    /// Point mass at `x`.
    pub fn dirac(x: f64) -> Result<Self, MeasureError> {
        Self::from_atoms(vec![(x, 1.0)])
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

/// Empirical (Birkhoff) measure of the orbit of `x0`: equal-weight atoms at
/// `x_burn, ..., x_{burn+n-1}`, coinciding positions merged.
pub fn birkhoff_measure(
    a: MapParam,
    x0: f64,
    n: usize,
    burn: usize,
) -> Result<EmpiricalMeasure, MeasureError> {
    assert!(n >= 1, "need at least one orbit point");
    let mut x = x0;
    for _ in 0..burn {
        x = dynamics::map_step(a.get(), x);
    }
    let mut pts = Vec::with_capacity(n);
    for _ in 0..n {
        pts.push(x);
        x = dynamics::map_step(a.get(), x);
    }
    EmpiricalMeasure::from_points(&pts)
}

/// Uniform measure `1/p` on the points of a periodic orbit. For a repelling
/// orbit this is the singular measure carried by the repeller.
pub fn periodic_measure(orbit: &PeriodicOrbit) -> Result<EmpiricalMeasure, MeasureError> {
    EmpiricalMeasure::from_points(&orbit.points)
}

/// [`periodic_measure`] from raw cycle points (used when the cycle was
/// produced at extended precision and only its rounded points are kept).
pub fn periodic_measure_points(points: &[f64]) -> Result<EmpiricalMeasure, MeasureError> {
    EmpiricalMeasure::from_points(points)
}

/// Exact Wasserstein-1 distance between two atomic measures:
/// the integral of `|F_mu - F_nu|` over `[-1, 1]`, evaluated as a merge walk
/// over the union of atom positions.
pub fn wasserstein1(mu: &EmpiricalMeasure, nu: &EmpiricalMeasure) -> f64 {
    let a = mu.atoms();
    let b = nu.atoms();
    let (mut i, mut j) = (0usize, 0usize);
    let (mut fa, mut fb) = (0.0f64, 0.0f64);
    let mut prev: Option<f64> = None;
    let mut total = KahanSum::default();
    while i < a.len() || j < b.len() {
        let x = match (a.get(i), b.get(j)) {
            (Some(&(xa, _)), Some(&(xb, _))) => xa.min(xb),
            (Some(&(xa, _)), None) => xa,
            (None, Some(&(xb, _))) => xb,
            (None, None) => unreachable!(),
        };
        if let Some(p) = prev {
            total.add((fa - fb).abs() * (x - p));
        }
        while i < a.len() && a[i].0 == x {
            fa += a[i].1;
            i += 1;
        }
        while j < b.len() && b[j].0 == x {
            fb += b[j].1;
            j += 1;
        }
        prev = Some(x);
    }
    // Beyond the last atom both CDFs equal 1 (up to the weight tolerance),
    // so the tail contributes nothing.
    total.value()
}

/// A distribution on `[-1, 1]` with closed-form CDF, CDF antiderivative and
/// quantile function, so that `W1` against an atomic measure is exact.
pub trait AnalyticCdf {
    fn cdf(&self, x: f64) -> f64;
    /// `int_{lo}^{hi} F(x) dx`.
    fn cdf_integral(&self, lo: f64, hi: f64) -> f64;
    /// Generalized inverse: smallest `x` with `F(x) >= u`.
    fn quantile(&self, u: f64) -> f64;
}

/// The arcsine law: invariant density `1/(pi*sqrt(1-x^2))` of the map at
/// `a = 2`, with CDF `F(x) = 1/2 + asin(x)/pi`. The closed form is exercised
/// against quadrature in the tests rather than assumed.
#[derive(Debug, Clone, Copy, Default)]
pub struct ArcsineCdf;

impl ArcsineCdf {
    /// CDF value, with a domain check on the argument.
    pub fn eval(&self, x: f64) -> Result<f64, MeasureError> {
        if !(-1.0..=1.0).contains(&x) {
            return Err(MeasureError::CdfDomain(x));
        }
        Ok(self.cdf(x))
    }
}

impl AnalyticCdf for ArcsineCdf {
    fn cdf(&self, x: f64) -> f64 {
        0.5 + x.clamp(-1.0, 1.0).asin() / std::f64::consts::PI
    }

    fn cdf_integral(&self, lo: f64, hi: f64) -> f64 {
        // antiderivative of 1/2 + asin(x)/pi is
        // x/2 + (x*asin(x) + sqrt(1-x^2))/pi
        let anti = |x: f64| {
            let x = x.clamp(-1.0, 1.0);
            x / 2.0 + (x * x.asin() + (1.0 - x * x).max(0.0).sqrt()) / std::f64::consts::PI
        };
        anti(hi) - anti(lo)
    }

    fn quantile(&self, u: f64) -> f64 {
        (std::f64::consts::PI * (u.clamp(0.0, 1.0) - 0.5)).sin()
    }
}

/// Exact `W1` between an atomic measure and an analytic reference law on
/// `[-1, 1]`: per segment of constant empirical CDF the integrand
/// `|F_ref - c|` changes sign at most once, at `quantile(c)`.
pub fn wasserstein1_to_cdf<C: AnalyticCdf>(mu: &EmpiricalMeasure, reference: &C) -> f64 {
    let mut total = KahanSum::default();
    let mut c = 0.0f64;
    let mut left = -1.0f64;
    let segment = |l: f64, r: f64, c: f64, total: &mut KahanSum| {
        if r <= l {
            return;
        }
        let cross = reference.quantile(c).clamp(l, r);
        // F < c on [l, cross], F > c on [cross, r]
        total.add(c * (cross - l) - reference.cdf_integral(l, cross));
        total.add(reference.cdf_integral(cross, r) - c * (r - cross));
    };
    for &(x, w) in mu.atoms() {
        segment(left, x, c, &mut total);
        c += w;
        left = x;
    }
    segment(left, 1.0, c, &mut total);
    total.value()
}

/// `int phi dmu` for a test function `phi` defined on `[-1, 1]`.
pub fn integrate<F: Fn(f64) -> f64>(phi: F, mu: &EmpiricalMeasure) -> f64 {
    let mut acc = KahanSum::default();
    for &(x, w) in mu.atoms() {
        acc.add(w * phi(x));
    }
    acc.value()
}

/// Mass histogram over uniform bins on `[-1, 1]`.
///
/// Bins are left-closed; the last bin is also right-closed, so the masses
/// always sum to the total mass exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityHistogram {
    pub bin_edges: Vec<f64>,
    pub masses: Vec<f64>,
}

impl DensityHistogram {
    pub fn bins(&self) -> usize {
        self.masses.len()
    }
}

/// Mass-preserving binning of an atomic measure.
pub fn histogram(mu: &EmpiricalMeasure, bins: usize) -> DensityHistogram {
    assert!(bins >= 1, "need at least one bin");
    let edges: Vec<f64> = (0..=bins)
        .map(|i| -1.0 + 2.0 * i as f64 / bins as f64)
        .collect();
    let mut masses = vec![0.0f64; bins];
    for &(x, w) in mu.atoms() {
        let idx = (((x + 1.0) / 2.0) * bins as f64).floor() as usize;
        masses[idx.min(bins - 1)] += w;
    }
    DensityHistogram {
        bin_edges: edges,
        masses,
    }
}
