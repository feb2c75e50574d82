//! Idempotent semifields and their scalars.
//!
//! Two instances are provided. In max-plus, `⊕ = max`, `⊗ = +`, the zero is
//! `-∞` and the unit is `0`. In max-times, `⊕ = max`, `⊗ = ×` over the positive
//! reals, the zero is `0` and the unit is `1`. Both share one scalar
//! representation: an explicit [`Scalar::Zero`] variant plus a finite `f64`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Semifield {
    MaxPlus,
    MaxTimes,
}

/// An element of a semifield. Finite values are never NaN or infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scalar {
    Zero,
    Finite(f64),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Zero)
    }

    /// The finite value, if any.
    pub fn value(&self) -> Option<f64> {
        match *self {
            Scalar::Zero => None,
            Scalar::Finite(v) => Some(v),
        }
    }
}

/// The semifield order: `Zero` is the bottom, finite values compare as reals.
impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Zero, Scalar::Zero) => Some(Ordering::Equal),
            (Scalar::Zero, _) => Some(Ordering::Less),
            (_, Scalar::Zero) => Some(Ordering::Greater),
            (Scalar::Finite(a), Scalar::Finite(b)) => a.partial_cmp(b),
        }
    }
}

impl Semifield {
    pub fn name(&self) -> &'static str {
        match self {
            Semifield::MaxPlus => "max-plus",
            Semifield::MaxTimes => "max-times",
        }
    }

    /// Converts a conventional real into a scalar of this semifield.
    ///
    /// `-inf` maps to zero in max-plus and `0` maps to zero in max-times;
    /// NaN, `+inf` and negative max-times values are rejected.
    pub fn scalar(&self, v: f64) -> Result<Scalar> {
        match self {
            Semifield::MaxPlus if v == f64::NEG_INFINITY => Ok(Scalar::Zero),
            Semifield::MaxPlus if v.is_finite() => Ok(Scalar::Finite(v)),
            Semifield::MaxTimes if v == 0.0 => Ok(Scalar::Zero),
            Semifield::MaxTimes if v.is_finite() && v > 0.0 => Ok(Scalar::Finite(v)),
            _ => Err(Error::InvalidScalar(v, self.name())),
        }
    }

    /// Conventional real for a scalar; the inverse of [`Semifield::scalar`].
    pub fn to_real(&self, s: Scalar) -> f64 {
        match (self, s) {
            (_, Scalar::Finite(v)) => v,
            (Semifield::MaxPlus, Scalar::Zero) => f64::NEG_INFINITY,
            (Semifield::MaxTimes, Scalar::Zero) => 0.0,
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Semifield::MaxPlus => Scalar::Finite(0.0),
            Semifield::MaxTimes => Scalar::Finite(1.0),
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::Zero
    }

    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        if a >= b {
            a
        } else {
            b
        }
    }

    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Finite(x), Scalar::Finite(y)) => Scalar::Finite(match self {
                Semifield::MaxPlus => x + y,
                Semifield::MaxTimes => x * y,
            }),
            _ => Scalar::Zero,
        }
    }

    pub fn inv(&self, a: Scalar) -> Result<Scalar> {
        match a {
            Scalar::Zero => Err(Error::InversionOfZero),
            Scalar::Finite(x) => Ok(Scalar::Finite(match self {
                Semifield::MaxPlus => -x,
                Semifield::MaxTimes => 1.0 / x,
            })),
        }
    }

    /// `a ⊗ b⁻¹`.
    pub fn div(&self, a: Scalar, b: Scalar) -> Result<Scalar> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Scalar, r: Rational) -> Result<Scalar> {
        self.pow_real(a, r.to_f64())
    }

    /// Power with a real exponent; the zero admits only positive exponents.
    pub fn pow_real(&self, a: Scalar, r: f64) -> Result<Scalar> {
        match a {
            Scalar::Zero if r > 0.0 => Ok(Scalar::Zero),
            Scalar::Zero => Err(Error::ZeroToNonpositivePower),
            Scalar::Finite(x) => Ok(Scalar::Finite(match self {
                Semifield::MaxPlus => r * x,
                Semifield::MaxTimes => x.powf(r),
            })),
        }
    }

    /// The semifield square root, `a^(1/2)`.
    pub fn sqrt(&self, a: Scalar) -> Scalar {
        match a {
            Scalar::Zero => Scalar::Zero,
            Scalar::Finite(x) => Scalar::Finite(match self {
                Semifield::MaxPlus => x / 2.0,
                Semifield::MaxTimes => x.sqrt(),
            }),
        }
    }

    pub fn leq(&self, a: Scalar, b: Scalar) -> bool {
        a <= b
    }

    /// Tolerant equality: absolute in max-plus, relative in max-times.
    pub fn approx_eq(&self, a: Scalar, b: Scalar, tol: f64) -> bool {
        match (a, b) {
            (Scalar::Zero, Scalar::Zero) => true,
            (Scalar::Finite(x), Scalar::Finite(y)) => match self {
                Semifield::MaxPlus => (x - y).abs() <= tol,
                Semifield::MaxTimes => (x - y).abs() <= tol * x.abs().max(y.abs()),
            },
            _ => false,
        }
    }

    /// Whether `a` is the unit within `tol`.
    pub fn is_one(&self, a: Scalar, tol: f64) -> bool {
        self.approx_eq(a, self.one(), tol)
    }
}

impl fmt::Display for Semifield {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Semifield {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "max-plus" => Ok(Semifield::MaxPlus),
            "max-times" => Ok(Semifield::MaxTimes),
            other => Err(format!(
                "unknown semifield '{other}' (expected max-plus or max-times)"
            )),
        }
    }
}
