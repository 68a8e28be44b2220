//! Triangular norms on the unit interval and their residua.
//!
//! A triangular norm ⊗ is a commutative, associative, monotone binary
//! operation on `[0, 1]` with 1 as identity. The residuum (pseudoinverse) of
//! ⊗ is `a ⊙ b = sup{c : b ⊗ c ≤ a}`; it acts as the "division" dual of ⊗
//! and is what conditional necessity/possibility values are built from. Only
//! the three classical norms are supported: minimum, Łukasiewicz, and
//! product. One norm is chosen per knowledge base and governs both the
//! transitivity of the similarity relation and every residuum taken over it.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::EPSILON;

/// A degree in the closed unit interval `[0, 1]`.
///
/// Construction validates the range with tolerance [`EPSILON`] and clamps the
/// stored value exactly into `[0, 1]`, so downstream arithmetic never sees an
/// out-of-range degree.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct UnitValue(f64);

/// Error raised when a raw number lies outside `[0, 1]` (beyond tolerance).
#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("value {0} lies outside the unit interval [0, 1]")]
pub struct UnitRangeError(pub f64);

impl UnitValue {
    pub const ZERO: UnitValue = UnitValue(0.0);
    pub const ONE: UnitValue = UnitValue(1.0);

    /// Validates `value` against `[0, 1]` with tolerance [`EPSILON`].
    pub fn new(value: f64) -> Result<Self, UnitRangeError> {
        if !value.is_finite() || !(-EPSILON..=1.0 + EPSILON).contains(&value) {
            return Err(UnitRangeError(value));
        }
        Ok(UnitValue(value.clamp(0.0, 1.0)))
    }

    /// Wraps a value the caller has already proven to lie in `[0, 1]`.
    pub(crate) fn trusted(value: f64) -> Self {
        debug_assert!(
            (-EPSILON..=1.0 + EPSILON).contains(&value),
            "trusted unit value out of range: {value}"
        );
        UnitValue(value.clamp(0.0, 1.0))
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn min(self, other: UnitValue) -> UnitValue {
        UnitValue(self.0.min(other.0))
    }

    pub fn max(self, other: UnitValue) -> UnitValue {
        UnitValue(self.0.max(other.0))
    }
}

impl From<UnitValue> for f64 {
    fn from(v: UnitValue) -> f64 {
        v.0
    }
}

impl fmt::Display for UnitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The triangular norm governing similarity transitivity and residua.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TNorm {
    /// `a ⊗ b = min(a, b)`; yields the ultrametric distance dual.
    Min,
    /// `a ⊗ b = max(a + b − 1, 0)`; yields the ordinary triangle inequality.
    Lukasiewicz,
    /// `a ⊗ b = a·b`.
    Product,
}

/// Error for an unrecognized t-norm name.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("unknown t-norm {0:?}; expected min, lukasiewicz, or product")]
pub struct UnknownTNormError(pub String);

impl TNorm {
    pub const ALL: [TNorm; 3] = [TNorm::Min, TNorm::Lukasiewicz, TNorm::Product];

    /// Applies the norm: `a ⊗ b`.
    pub fn apply(self, a: UnitValue, b: UnitValue) -> UnitValue {
        let (a, b) = (a.0, b.0);
        let v = match self {
            TNorm::Min => a.min(b),
            TNorm::Lukasiewicz => (a + b - 1.0).max(0.0),
            TNorm::Product => a * b,
        };
        UnitValue::trusted(v)
    }

    /// Residuum `a ⊙ b = sup{c : b ⊗ c ≤ a}`, in closed form.
    ///
    /// The first argument plays the numerator-like role: `residuum(a, b)`
    /// measures how much of `a` is reached relative to `b`. For all three
    /// norms the closed forms below coincide with the defining supremum,
    /// which the test suite cross-checks against a grid search.
    pub fn residuum(self, a: UnitValue, b: UnitValue) -> UnitValue {
        let (a, b) = (a.0, b.0);
        let v = match self {
            TNorm::Min => {
                if b <= a {
                    1.0
                } else {
                    a
                }
            }
            TNorm::Lukasiewicz => (1.0 - b + a).min(1.0),
            TNorm::Product => {
                if b == 0.0 {
                    1.0
                } else {
                    (a / b).min(1.0)
                }
            }
        };
        UnitValue::trusted(v)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TNorm::Min => "min",
            TNorm::Lukasiewicz => "lukasiewicz",
            TNorm::Product => "product",
        }
    }
}

impl fmt::Display for TNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TNorm {
    type Err = UnknownTNormError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "min" => Ok(TNorm::Min),
            "lukasiewicz" => Ok(TNorm::Lukasiewicz),
            "product" => Ok(TNorm::Product),
            other => Err(UnknownTNormError(other.to_string())),
        }
    }
}
