//! The numeric abstraction all matrix and formula code is generic over.
//!
//! Three scalars implement [`Scalar`]:
//!
//! * [`Rational`](crate::Rational) — arbitrary-precision exact arithmetic,
//!   the default for every public operation;
//! * [`Rational128`](crate::Rational128) — fixed-width exact arithmetic for
//!   bounded exhaustive sweeps (overflow aborts, it never wraps silently in
//!   the profiles this workspace builds with);
//! * `f64` — the optional floating mode for graphs past the exact-size
//!   cutoff.

use std::fmt;

use num_rational::Ratio;
use num_traits::{Num, NumAssign, Signed, ToPrimitive};

use crate::{Rational, Rational128};

/// Relative tolerance used when comparing floating-point results.
pub const FLOAT_RELATIVE_TOLERANCE: f64 = 1e-9;

pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Num
    + NumAssign
    + Signed
    + Send
    + Sync
    + 'static
{
    /// True when arithmetic in this type is exact and equality means equality.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    fn from_usize(v: usize) -> Self {
        Self::from_i64(v as i64)
    }

    fn from_ratio_i64(numer: i64, denom: i64) -> Self;

    /// Converts an arbitrary-precision rational. Panics if the value does not
    /// fit (only possible for the fixed-width scalar).
    fn from_rational(r: &Rational) -> Self;

    fn to_f64(&self) -> f64;

    /// Exact rational value, `None` for inexact scalars.
    fn to_rational(&self) -> Option<Rational>;

    /// Equality in exact mode, relative closeness in float mode.
    fn values_agree(a: &Self, b: &Self) -> bool {
        a == b
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(v.into())
    }

    fn from_ratio_i64(numer: i64, denom: i64) -> Self {
        Rational::new(numer.into(), denom.into())
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

impl Scalar for Rational128 {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }

    fn from_ratio_i64(numer: i64, denom: i64) -> Self {
        Ratio::new(numer as i128, denom as i128)
    }

    fn from_rational(r: &Rational) -> Self {
        let numer = r
            .numer()
            .to_i128()
            .expect("rational numerator exceeds the fixed-width scalar range");
        let denom = r
            .denom()
            .to_i128()
            .expect("rational denominator exceeds the fixed-width scalar range");
        Ratio::new(numer, denom)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(Rational::new(
            (*self.numer()).into(),
            (*self.denom()).into(),
        ))
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_ratio_i64(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }

    fn from_rational(r: &Rational) -> Self {
        Scalar::to_f64(r)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_rational(&self) -> Option<Rational> {
        None
    }

    fn values_agree(a: &Self, b: &Self) -> bool {
        let scale = 1.0_f64.max(a.abs()).max(b.abs());
        (a - b).abs() <= FLOAT_RELATIVE_TOLERANCE * scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_is_canonical() {
        let r = Rational::from_ratio_i64(6, -4);
        assert_eq!(r, Rational::from_ratio_i64(-3, 2));
        assert!(r.denom() > &num_bigint::BigInt::from(0));
        assert_eq!(Rational::from_ratio_i64(0, 7), Rational::from_i64(0));
    }

    #[test]
    fn float_agreement_is_relative() {
        let a = 1e12;
        let b = 1e12 + 1.0;
        assert!(<f64 as Scalar>::values_agree(&a, &b));
        assert!(!<f64 as Scalar>::values_agree(&1.0, &1.001));
    }

    #[test]
    fn fixed_width_round_trips() {
        let r = Rational128::from_ratio_i64(19, 6);
        assert_eq!(r.to_rational().unwrap(), Rational::from_ratio_i64(19, 6));
    }
}
