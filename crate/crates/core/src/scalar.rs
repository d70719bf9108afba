//! Scalar types used for edge lengths, cell volumes and matrix-tree determinants.
//!
//! Quasistability never goes through this trait: polarizations and β values are
//! always [`Rational`], because strict versus weak inequalities decide membership.

use std::fmt;

use num_rational::Ratio;
use num_traits::{Num, Signed};

/// Exact rational with machine-word numerator and denominator.
pub type Rational = Ratio<i64>;

/// Numeric field usable as an edge length or determinant entry.
///
/// Implemented for `f32`, `f64` and exact rationals. Metric-graph comparisons
/// use `==` on lengths, so only exact types give exact verdicts.
pub trait Scalar: Num + Signed + Clone + PartialOrd + fmt::Debug + fmt::Display {
    fn from_ratio(numer: i64, denom: i64) -> Self;

    /// Render in the `p/q` wire format (`p` alone for integers where exact).
    fn to_wire(&self) -> String {
        self.to_string()
    }
}

impl Scalar for f64 {
    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }
}

impl Scalar for f32 {
    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f32 / denom as f32
    }
}

impl Scalar for Ratio<i64> {
    fn from_ratio(numer: i64, denom: i64) -> Self {
        Ratio::new(numer, denom)
    }
}

impl Scalar for Ratio<i128> {
    fn from_ratio(numer: i64, denom: i64) -> Self {
        Ratio::new(numer as i128, denom as i128)
    }
}

/// Error parsing a rational literal.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}: expected \"p\" or \"p/q\" with q > 0")]
pub struct ParseRationalError(pub String);

/// Parse `"p"` or `"p/q"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(text.to_string());
    let text = text.trim();
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (
            n.trim().parse::<i64>().map_err(|_| err())?,
            d.trim().parse::<i64>().map_err(|_| err())?,
        ),
        None => (text.parse::<i64>().map_err(|_| err())?, 1),
    };
    if denom <= 0 {
        return Err(err());
    }
    Ok(Ratio::new(numer, denom))
}

/// Render a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("3").unwrap(), Rational::from_integer(3));
        assert_eq!(parse_rational("-1/2").unwrap(), Rational::new(-1, 2));
        assert_eq!(parse_rational(" 4/6 ").unwrap(), Rational::new(2, 3));
    }

    #[test]
    fn rejects_bad_literals() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn formats_round_trip() {
        for s in ["8", "-1/2", "7/3"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
    }

    #[test]
    fn float_from_ratio() {
        assert_eq!(<f64 as Scalar>::from_ratio(3, 4), 0.75);
        assert_eq!(<f32 as Scalar>::from_ratio(1, 2), 0.5);
    }
}
