//! Arithmetic precision for parameter-space solvers.
//!
//! The critical-orbit parameter derivative grows like `4^n` near `a = 2`, so
//! the width of the period-`n` super-stable window shrinks at the same rate.
//! Hardware doubles resolve such windows only up to roughly `n = 20`; the
//! extended mode (128-bit significand, via `astro-float`) pushes the cap to
//! roughly `n = 40`. Solvers that walk parameter space are generic over
//! [`Scalar`] so both modes share one code path.

use astro_float::{BigFloat, RoundingMode, Sign};

/// Significand width used by [`Ext`].
pub const EXT_PRECISION_BITS: usize = 128;

const RM: RoundingMode = RoundingMode::ToEven;

/// Arithmetic mode selector exposed on the public solver APIs and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    /// Hardware `f64` (53-bit significand).
    Double,
    /// Software floating point with a 128-bit significand.
    Extended,
}

impl Precision {
    /// Largest period for which the super-stable window nearest `a = 2` is
    /// still wider than the arithmetic resolution at `a = 2`. The window of
    /// period `n` has width on the order of `4^-n`, i.e. `2^-2n`, and the
    /// significand must resolve it against `a = 2`.
    pub fn superstable_period_cap(self) -> usize {
        match self {
            Precision::Double => 20,
            Precision::Extended => 40,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Precision::Double => "double",
            Precision::Extended => "extended",
        }
    }
}

/// Minimal real-arithmetic interface needed by the window solvers: field
/// operations, comparisons, and conversions. Implemented by `f64` and [`Ext`].
pub trait Scalar: Clone + PartialOrd + std::fmt::Debug + Send + Sync + 'static {
    /// Width to which bracketing bisection narrows an interval in this
    /// arithmetic before handing over to Newton.
    const BISECT_WIDTH_TOL: f64;
    /// Newton step size below which a phase-space orbit solve is converged.
    const NEWTON_STEP_TOL: f64;

    fn of(v: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn abs(&self) -> Self;
    fn is_finite_val(&self) -> bool;
    /// Decimal rendering with the full precision of the type.
    fn decimal(&self) -> String;

    fn midpoint_of(a: &Self, b: &Self) -> Self {
        a.add(b).div(&Self::of(2.0))
    }

    fn sign_of(&self) -> i8 {
        let zero = Self::of(0.0);
        if *self > zero {
            1
        } else if *self < zero {
            -1
        } else {
            0
        }
    }
}

impl Scalar for f64 {
    const BISECT_WIDTH_TOL: f64 = 1e-14;
    const NEWTON_STEP_TOL: f64 = 1e-15;

    fn of(v: f64) -> Self {
        v
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn is_finite_val(&self) -> bool {
        self.is_finite()
    }
    fn decimal(&self) -> String {
        format!("{:.16e}", self)
    }
}

/// Extended-precision real: a thin wrapper over `astro_float::BigFloat`
/// pinned at [`EXT_PRECISION_BITS`] bits with round-to-even.
#[derive(Debug, Clone)]
pub struct Ext(BigFloat);

impl Ext {
    pub fn big(&self) -> &BigFloat {
        &self.0
    }
}

impl PartialEq for Ext {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for Ext {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl Scalar for Ext {
    const BISECT_WIDTH_TOL: f64 = 1e-36;
    const NEWTON_STEP_TOL: f64 = 1e-32;

    fn of(v: f64) -> Self {
        Ext(BigFloat::from_f64(v, EXT_PRECISION_BITS))
    }
    fn to_f64(&self) -> f64 {
        big_to_f64(&self.0)
    }
    fn add(&self, o: &Self) -> Self {
        Ext(self.0.add(&o.0, EXT_PRECISION_BITS, RM))
    }
    fn sub(&self, o: &Self) -> Self {
        Ext(self.0.sub(&o.0, EXT_PRECISION_BITS, RM))
    }
    fn mul(&self, o: &Self) -> Self {
        Ext(self.0.mul(&o.0, EXT_PRECISION_BITS, RM))
    }
    fn div(&self, o: &Self) -> Self {
        Ext(self.0.div(&o.0, EXT_PRECISION_BITS, RM))
    }
    fn neg(&self) -> Self {
        Ext(self.0.neg())
    }
    fn abs(&self) -> Self {
        Ext(self.0.abs())
    }
    fn is_finite_val(&self) -> bool {
        !self.0.is_nan() && !self.0.is_inf()
    }
    fn decimal(&self) -> String {
        format!("{}", self.0)
    }
}

/// Nearest-`f64` approximation of a `BigFloat`, via its raw binary parts.
fn big_to_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf() {
        return if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        };
    }
    if x.is_zero() {
        return 0.0;
    }
    match x.as_raw_parts() {
        Some((mant, _len, sign, exp, _inexact)) => {
            // Value = sign * 0.mantissa * 2^exp with the top word holding the
            // most significant bits. Two words cover far more than 53 bits.
            let top = *mant.last().unwrap_or(&0);
            let second = if mant.len() >= 2 {
                mant[mant.len() - 2]
            } else {
                0
            };
            let frac = top as f64 * 2f64.powi(-64) + second as f64 * 2f64.powi(-128);
            let v = frac * 2f64.powi(exp);
            if sign == Sign::Neg {
                -v
            } else {
                v
            }
        }
        None => f64::NAN,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_roundtrips_dyadics() {
        for v in [0.0, 1.0, -1.0, 2.0, 0.5, -0.75, 1.9999999999999998] {
            assert_eq!(Ext::of(v).to_f64(), v);
        }
    }

    #[test]
    fn ext_resolves_below_double_epsilon() {
        let one = Ext::of(1.0);
        let tiny = Ext::of(2f64.powi(-100));
        let sum = one.add(&tiny);
        let back = sum.sub(&one);
        assert_eq!(back.partial_cmp(&tiny), Some(std::cmp::Ordering::Equal));
        // The same computation in f64 loses the increment entirely.
        assert_eq!((1.0 + 2f64.powi(-100)) - 1.0, 0.0);
    }

    #[test]
    fn ext_arithmetic_matches_f64_on_representables() {
        let a = Ext::of(1.75);
        let x = Ext::of(-0.5);
        let y = Ext::of(1.0).sub(&a.mul(&x.mul(&x)));
        assert_eq!(y.to_f64(), 1.0 - 1.75 * 0.25);
    }

    #[test]
    fn midpoint_and_sign() {
        let m = <f64 as Scalar>::midpoint_of(&1.0, &3.0);
        assert_eq!(m, 2.0);
        assert_eq!((-2.0f64).sign_of(), -1);
        assert_eq!(0.0f64.sign_of(), 0);
        let m = Ext::midpoint_of(&Ext::of(1.0), &Ext::of(3.0));
        assert_eq!(m.to_f64(), 2.0);
    }

    #[test]
    fn precision_caps() {
        assert_eq!(Precision::Double.superstable_period_cap(), 20);
        assert_eq!(Precision::Extended.superstable_period_cap(), 40);
    }
}
