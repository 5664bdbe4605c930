//! Extended-real norm exponents in `[1, ∞]`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A norm exponent `p ∈ [1, ∞]`.
///
/// Infinity is a separate variant; reciprocals and comparisons are defined
/// case-wise so that `1/∞ = 0` exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub const ONE: Exponent = Exponent::Finite(1.0);
    pub const TWO: Exponent = Exponent::Finite(2.0);

    /// A finite exponent; fails unless `p` is a number `>= 1`.
    pub fn finite(p: f64) -> Result<Self> {
        if p.is_finite() && p >= 1.0 {
            Ok(Exponent::Finite(p))
        } else if p == f64::INFINITY {
            Ok(Exponent::Infinity)
        } else {
            Err(Error::InvalidExponent(p.to_string()))
        }
    }

    /// `1/p`, with `1/∞ = 0`.
    pub fn recip(self) -> f64 {
        match self {
            Exponent::Finite(p) => 1.0 / p,
            Exponent::Infinity => 0.0,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    /// The finite value, or `None` for infinity.
    pub fn value(self) -> Option<f64> {
        match self {
            Exponent::Finite(p) => Some(p),
            Exponent::Infinity => None,
        }
    }

    /// `min(p, 2)`.
    pub fn bar(self) -> f64 {
        match self {
            Exponent::Finite(p) => p.min(2.0),
            Exponent::Infinity => 2.0,
        }
    }

    /// `p <= other` in the extended order.
    pub fn le(self, other: Exponent) -> bool {
        match (self, other) {
            (_, Exponent::Infinity) => true,
            (Exponent::Infinity, Exponent::Finite(_)) => false,
            (Exponent::Finite(a), Exponent::Finite(b)) => a <= b,
        }
    }

    pub fn lt(self, other: Exponent) -> bool {
        !other.le(self)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(Exponent::Infinity),
            _ => {
                let v: f64 = t.parse().map_err(|_| Error::InvalidExponent(t.to_owned()))?;
                Exponent::finite(v)
            }
        }
    }
}

/// The pair `(p, q)`: input space `L_p^{N1×N2}`, output space `L_q^{N1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentPair {
    pub p: Exponent,
    pub q: Exponent,
}

impl ExponentPair {
    pub fn new(p: Exponent, q: Exponent) -> Self {
        ExponentPair { p, q }
    }

    /// `min(p, 2)`.
    pub fn p_bar(&self) -> f64 {
        self.p.bar()
    }

    /// `(1/p - 1/q)_+`.
    pub fn positive_gap(&self) -> f64 {
        (self.p.recip() - self.q.recip()).max(0.0)
    }

    /// True in the regime `2 < p < q` where adaption helps.
    pub fn is_adaptive_regime(&self) -> bool {
        Exponent::TWO.lt(self.p) && self.p.lt(self.q)
    }
}
