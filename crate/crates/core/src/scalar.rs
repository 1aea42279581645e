//! Scalar abstraction for polynomial coefficients.
//!
//! All polynomial machinery in this crate is generic over an ordered field
//! scalar. The toolkit itself always instantiates it with [`Rational`]
//! (arbitrary-precision `num_rational::BigRational`) so every verdict is a
//! certificate rather than an approximation, but the arithmetic layer does
//! not care: `f32`/`f64` satisfy the same bounds and work for quick
//! numeric experiments.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed};

/// The exact scalar used by every certified code path.
pub type Rational = BigRational;

/// Ordered field scalar: ring ops, division, signs and an order.
pub trait Scalar:
    Num + Signed + PartialOrd + Clone + Debug + Display + Send + Sync + 'static
{
    /// Embeds a small integer into the scalar.
    fn from_int(n: i64) -> Self;
}

impl<T> Scalar for T
where
    T: Num + Signed + PartialOrd + Clone + Debug + Display + FromPrimitive + Send + Sync + 'static,
{
    fn from_int(n: i64) -> Self {
        T::from_i64(n).expect("small integer must embed into the scalar")
    }
}

/// Builds a rational from a numerator/denominator pair of machine integers.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses the wire form of a rational: `"p/q"` or `"p"`, lowest terms implied.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    BigRational::from_str(s.trim()).map_err(|e| format!("bad rational {s:?}: {e}"))
}

/// Formats a rational in the wire form used across all JSON schemas.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Serde adapter (de)serializing a [`Rational`] as its wire string.
pub mod rational_string {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, ser: S) -> Result<S::Ok, S::Error> {
        format_rational(r).serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(de)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rational>` as a list of wire strings.
pub mod rational_vec {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], ser: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(format_rational)
            .collect::<Vec<_>>()
            .serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Rational>, D::Error> {
        let strings = Vec::<String>::deserialize(de)?;
        strings
            .iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
