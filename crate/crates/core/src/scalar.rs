//! Exact rational scalars.
//!
//! Every coefficient in the crate is a [`Scalar`], an arbitrary-precision
//! rational kept in lowest terms with a positive denominator. Nothing is ever
//! rounded.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `"p"` or `"p/q"`.
pub fn parse(text: &str) -> Option<Scalar> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Scalar::new(n, d))
        }
        None => text.parse::<BigInt>().ok().map(Scalar::from_integer),
    }
}

/// Renders as `p` for integers and `p/q` otherwise.
pub fn display(s: &Scalar) -> String {
    if s.is_integer() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Returns the value as `i64` when it is an integer that fits.
pub fn to_i64(s: &Scalar) -> Option<i64> {
    if !s.is_integer() {
        return None;
    }
    i64::try_from(s.numer()).ok()
}

pub fn abs(s: &Scalar) -> Scalar {
    s.abs()
}

/// Serde adapter writing a rational as the decimal pair `["num", "den"]`.
pub mod pair {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Scalar, ser: S) -> Result<S::Ok, S::Error> {
        [value.numer().to_string(), value.denom().to_string()].serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Scalar, D::Error> {
        let [n, d] = <[String; 2]>::deserialize(de)?;
        from_strings(&n, &d).map_err(D::Error::custom)
    }

    pub(crate) fn from_strings(n: &str, d: &str) -> Result<Scalar, String> {
        let n: BigInt = n.parse().map_err(|_| format!("bad numerator {n:?}"))?;
        let d: BigInt = d.parse().map_err(|_| format!("bad denominator {d:?}"))?;
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(Scalar::new(n, d))
    }
}

/// Serde adapter for `Vec<Scalar>` as a list of decimal pairs.
pub mod pair_vec {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct Wrap(#[serde(with = "super::pair")] Scalar);

    pub fn serialize<S: Serializer>(values: &[Scalar], ser: S) -> Result<S::Ok, S::Error> {
        let wrapped: Vec<Wrap> = values.iter().cloned().map(Wrap).collect();
        wrapped.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Scalar>, D::Error> {
        let wrapped = Vec::<Wrap>::deserialize(de)?;
        Ok(wrapped.into_iter().map(|w| w.0).collect())
    }
}
