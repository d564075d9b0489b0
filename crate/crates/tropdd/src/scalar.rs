//! Scalars of the max-plus semiring Rmax = Q ∪ {-oo}.
//!
//! Addition is `max`, multiplication is `+`; the zero element is -oo (absorbing
//! for ⊗, neutral for ⊕) and the unit is 0. All finite values are exact
//! arbitrary-precision rationals, so saturation tests and argmax ties — which
//! drive every structural decision downstream — are decided exactly.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// An element of Rmax: either -oo (written `-oo` in text) or an exact rational.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    NegInf,
    Finite(BigRational),
}

pub use Scalar::NegInf;

impl Scalar {
    /// The semiring zero, -oo.
    pub fn zero() -> Self {
        Scalar::NegInf
    }

    /// The semiring unit, 0.
    pub fn one() -> Self {
        Scalar::Finite(BigRational::zero())
    }

    pub fn from_int(v: i64) -> Self {
        Scalar::Finite(BigRational::from_integer(BigInt::from(v)))
    }

    /// Exact rational p/q. Panics if q == 0 (programmer error in fixtures).
    pub fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar::Finite(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::NegInf)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_zero()
    }

    /// Tropical addition: max. -oo is neutral.
    pub fn tadd(&self, rhs: &Scalar) -> Scalar {
        if self >= rhs {
            self.clone()
        } else {
            rhs.clone()
        }
    }

    /// Tropical multiplication: classical +. -oo is absorbing.
    pub fn tmul(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Finite(a), Scalar::Finite(b)) => Scalar::Finite(a + b),
            _ => Scalar::NegInf,
        }
    }

    /// Tropical multiplicative inverse (classical negation) of a finite scalar.
    /// Returns `None` for -oo, which has no inverse.
    pub fn try_neg(&self) -> Option<Scalar> {
        match self {
            Scalar::NegInf => None,
            Scalar::Finite(a) => Some(Scalar::Finite(-a)),
        }
    }

    /// Classical difference of two finite scalars; `None` if either is -oo.
    pub fn finite_sub(&self, rhs: &Scalar) -> Option<Scalar> {
        match (self, rhs) {
            (Scalar::Finite(a), Scalar::Finite(b)) => Some(Scalar::Finite(a - b)),
            _ => None,
        }
    }

    /// Halve a finite scalar (used for perturbation radii). -oo stays -oo.
    pub fn half(&self) -> Scalar {
        match self {
            Scalar::NegInf => Scalar::NegInf,
            Scalar::Finite(a) => {
                Scalar::Finite(a / BigRational::from_integer(BigInt::from(2)))
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        matches!(self, Scalar::Finite(a) if a.is_positive())
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order with -oo below every finite value; finite values compare as
/// rationals. This is also the order used for canonical lexicographic sorting
/// of vectors.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::NegInf, Scalar::NegInf) => Ordering::Equal,
            (Scalar::NegInf, Scalar::Finite(_)) => Ordering::Less,
            (Scalar::Finite(_), Scalar::NegInf) => Ordering::Greater,
            (Scalar::Finite(a), Scalar::Finite(b)) => a.cmp(b),
        }
    }
}

/// Text form: `-oo` for the zero, otherwise a reduced rational — `p` when the
/// denominator is 1, else `p/q`. This round-trips exactly through `FromStr`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::NegInf => write!(f, "-oo"),
            Scalar::Finite(a) => {
                if a.denom().is_one() {
                    write!(f, "{}", a.numer())
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())
                }
            }
        }
    }
}

/// Accepted token syntax: `-oo`, a decimal (`2`, `-1`, `2.5` — exact, 2.5 =
/// 5/2), or an explicit rational `p/q` with q > 0.
impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        parse_scalar_token(s).map_err(|msg| Error::parse(0, msg))
    }
}

pub(crate) fn parse_scalar_token(s: &str) -> Result<Scalar, String> {
    if s == "-oo" {
        return Ok(Scalar::NegInf);
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p
            .parse()
            .map_err(|_| format!("bad rational numerator in '{s}'"))?;
        let q: BigInt = q
            .parse()
            .map_err(|_| format!("bad rational denominator in '{s}'"))?;
        if q.is_zero() {
            return Err(format!("zero denominator in '{s}'"));
        }
        if q.is_negative() {
            return Err(format!("denominator must be positive in '{s}'"));
        }
        return Ok(Scalar::Finite(BigRational::new(p, q)));
    }
    // Decimal: optional sign, digits, optional fractional part. Exact.
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, fr)) => (i, fr),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(format!("empty numeric token '{s}'"));
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(format!("bad scalar token '{s}'"));
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| format!("bad scalar token '{s}'"))?
    };
    let denom = BigInt::from(10u8).pow(frac_part.len() as u32);
    Ok(Scalar::Finite(BigRational::new(BigInt::from(sign) * numer, denom)))
}
