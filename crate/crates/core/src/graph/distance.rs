use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Relative tolerance applied to every "distance exceeds threshold" test.
///
/// Sums of integer weights are exact in `f64` well past any desk-scale
/// instance, so the tolerance never changes an integer-weight decision.
pub const REL_TOL: f64 = 1e-9;

/// A path weight, or [`Distance::Unreachable`] when no path exists.
///
/// Variant order matters: the derived ordering puts every finite value
/// below `Unreachable`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub enum Distance {
    Finite(f64),
    Unreachable,
}

impl Distance {
    pub const ZERO: Distance = Distance::Finite(0.0);

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    pub fn value(self) -> Option<f64> {
        match self {
            Distance::Finite(x) => Some(x),
            Distance::Unreachable => None,
        }
    }

    /// Multiplies a finite distance by `t`; unreachable stays unreachable.
    pub fn scaled(self, t: f64) -> Distance {
        match self {
            Distance::Finite(x) => Distance::Finite(x * t),
            Distance::Unreachable => Distance::Unreachable,
        }
    }

    /// Strict `self > threshold` under [`REL_TOL`].
    pub fn exceeds(self, threshold: f64) -> bool {
        match self {
            Distance::Finite(x) => exceeds(x, threshold),
            Distance::Unreachable => true,
        }
    }

    /// `self <= bound` where an unreachable bound admits everything.
    pub fn within(self, bound: Distance) -> bool {
        match bound {
            Distance::Unreachable => true,
            Distance::Finite(b) => !self.exceeds(b),
        }
    }
}

/// `x > threshold` with relative slack [`REL_TOL`].
pub fn exceeds(x: f64, threshold: f64) -> bool {
    x > threshold + REL_TOL * threshold.abs()
}

/// Negation of [`exceeds`].
pub fn within(x: f64, threshold: f64) -> bool {
    !exceeds(x, threshold)
}

impl Add for Distance {
    type Output = Distance;

    fn add(self, rhs: Distance) -> Distance {
        match (self, rhs) {
            (Distance::Finite(a), Distance::Finite(b)) => Distance::Finite(a + b),
            _ => Distance::Unreachable,
        }
    }
}

impl Add<f64> for Distance {
    type Output = Distance;

    fn add(self, rhs: f64) -> Distance {
        self + Distance::Finite(rhs)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(x) => write!(f, "{x}"),
            Distance::Unreachable => f.write_str("unreachable"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(x) => s.serialize_f64(*x),
            Distance::Unreachable => s.serialize_str("unreachable"),
        }
    }
}

impl<'de> Deserialize<'de> for Distance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(Distance::Finite(x)),
            Repr::Text(t) if t == "unreachable" => Ok(Distance::Unreachable),
            Repr::Text(t) => Err(serde::de::Error::custom(format!("bad distance {t:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unreachable_dominates_and_saturates() {
        assert!(Distance::Unreachable > Distance::Finite(1e300));
        assert!(Distance::Finite(2.0) < Distance::Finite(3.0));
        assert_eq!(Distance::Unreachable + 1.0, Distance::Unreachable);
        assert_eq!(Distance::Finite(1.0) + Distance::Unreachable, Distance::Unreachable);
        assert_eq!(Distance::Unreachable.scaled(3.0), Distance::Unreachable);
        assert!(Distance::Unreachable.exceeds(f64::MAX));
    }

    #[test]
    fn threshold_comparison_is_strict_with_slack() {
        assert!(!Distance::Finite(3.0).exceeds(3.0));
        assert!(Distance::Finite(3.0 + 1e-6).exceeds(3.0));
        // 0.1 + 0.2 lands just above 0.3 in binary.
        assert!(!Distance::Finite(0.1 + 0.2).exceeds(0.3));
        assert!(Distance::Finite(5.0).within(Distance::Unreachable));
        assert!(!Distance::Unreachable.within(Distance::Finite(5.0)));
        assert!(Distance::Unreachable.within(Distance::Unreachable));
    }
}
