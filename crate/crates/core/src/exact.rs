//! Small exact-arithmetic helpers shared by the other modules: the rational
//! alias, integer square roots, divisor enumeration and the JSON encodings
//! for big integers and rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact square root of a nonnegative integer, if it is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Positive divisors of `|n|` in increasing order. `n` must be nonzero.
pub fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    assert!(!n.is_zero(), "divisors of zero requested");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn floor_rat(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

pub fn ceil_rat(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

/// Display wrapper printing a rational as `p/q`, or `p` when integral.
pub struct Exact<'a>(pub &'a Rational);

impl fmt::Display for Exact<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    // BigInt's parser tolerates `_` separators
    if s.contains('_') {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

// JSON encodings.
//
// Integers are written as JSON numbers when they fit in an i64 and as decimal
// strings otherwise. Rationals are written as an integer when integral and as
// a `[num, den]` pair otherwise.

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Text(String),
}

fn int_to_repr(n: &BigInt) -> IntRepr {
    match n.to_i64() {
        Some(v) => IntRepr::Small(v),
        None => IntRepr::Text(n.to_string()),
    }
}

fn repr_to_int<E: serde::de::Error>(r: IntRepr) -> Result<BigInt, E> {
    match r {
        IntRepr::Small(v) => Ok(BigInt::from(v)),
        IntRepr::Text(s) => s
            .parse()
            .map_err(|_| E::custom(format!("invalid integer `{s}`"))),
    }
}

pub mod bigint_json {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        int_to_repr(n).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        repr_to_int(IntRepr::deserialize(d)?)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RatRepr {
    Int(IntRepr),
    Pair(IntRepr, IntRepr),
}

/// Serde adapter for [`Rational`] values.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JsonRational(pub Rational);

impl Serialize for JsonRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            RatRepr::Int(int_to_repr(self.0.numer())).serialize(s)
        } else {
            RatRepr::Pair(int_to_repr(self.0.numer()), int_to_repr(self.0.denom())).serialize(s)
        }
    }
}

impl<'de> Deserialize<'de> for JsonRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match RatRepr::deserialize(d)? {
            RatRepr::Int(n) => Ok(JsonRational(Rational::from_integer(repr_to_int(n)?))),
            RatRepr::Pair(n, den) => {
                let den = repr_to_int::<D::Error>(den)?;
                if den.is_zero() {
                    return Err(D::Error::custom("zero denominator"));
                }
                Ok(JsonRational(Rational::new(repr_to_int(n)?, den)))
            }
        }
    }
}

pub mod rational_json {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        JsonRational(r.clone()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        Ok(JsonRational::deserialize(d)?.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisors_are_sorted_and_complete() {
        let ds: Vec<i64> = positive_divisors(&BigInt::from(-36))
            .iter()
            .map(|d| d.to_i64().unwrap())
            .collect();
        assert_eq!(ds, vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
        assert_eq!(positive_divisors(&BigInt::from(1)).len(), 1);
    }

    #[test]
    fn perfect_squares() {
        assert_eq!(exact_sqrt(&BigInt::from(49)), Some(BigInt::from(7)));
        assert_eq!(exact_sqrt(&BigInt::from(5)), None);
        assert_eq!(exact_sqrt(&BigInt::from(-4)), None);
        assert_eq!(exact_sqrt(&BigInt::from(0)), Some(BigInt::from(0)));
    }

    #[test]
    fn rational_text_round_trip() {
        let r = parse_rational("-3/6").unwrap();
        assert_eq!(Exact(&r).to_string(), "-1/2");
        assert_eq!(Exact(&parse_rational("4").unwrap()).to_string(), "4");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
        assert!(parse_rational("3_1").is_none());
    }

    #[test]
    fn rational_json_forms() {
        let half = JsonRational(rat(1, 2));
        assert_eq!(serde_json::to_string(&half).unwrap(), "[1,2]");
        assert_eq!(serde_json::to_string(&JsonRational(int(-3))).unwrap(), "-3");
        let back: JsonRational = serde_json::from_str("[2,4]").unwrap();
        assert_eq!(back.0, rat(1, 2));
        assert!(serde_json::from_str::<JsonRational>("[1,0]").is_err());
    }
}
