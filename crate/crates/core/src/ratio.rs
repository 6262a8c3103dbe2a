//! Exact rational helpers and the `"p/q"` string encoding used on every
//! external surface.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Always emits `p/q`, including `1/1` and `0/1`.
pub fn to_pq(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `p/q`, a bare integer, or a finite decimal such as `0.75`.
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().or_else(|_| invalid(format!("bad numerator in {s:?}")))?;
        let q: BigInt = q.trim().parse().or_else(|_| invalid(format!("bad denominator in {s:?}")))?;
        if q.is_zero() {
            return invalid(format!("zero denominator in {s:?}"));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, fracpart)) = s.split_once('.') {
        if fracpart.is_empty() || !fracpart.bytes().all(|b| b.is_ascii_digit()) {
            return invalid(format!("bad decimal {s:?}"));
        }
        let digits: BigInt = format!("{whole}{fracpart}")
            .parse()
            .or_else(|_| invalid(format!("bad decimal {s:?}")))?;
        let scale = num_traits::pow(BigInt::from(10), fracpart.len());
        return Ok(Rational::new(digits, scale));
    }
    let n: BigInt = s.parse().or_else(|_| invalid(format!("bad rational {s:?}")))?;
    Ok(Rational::from_integer(n))
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

pub fn max_of<'a>(it: impl IntoIterator<Item = &'a Rational>) -> Option<Rational> {
    it.into_iter().max().cloned()
}

/// Serde adapter: a single rational as a `"p/q"` string.
pub mod pq {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_pq(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let raw = RawRational::deserialize(d)?;
        raw.into_rational().map_err(serde::de::Error::custom)
    }

    /// Accept both `"3/4"` and plain JSON integers.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RawRational {
        Str(String),
        Int(i64),
    }

    impl RawRational {
        pub(crate) fn into_rational(self) -> Result<Rational> {
            match self {
                RawRational::Str(s) => parse(&s),
                RawRational::Int(n) => Ok(int(n)),
            }
        }
    }
}

/// Serde adapter: a list of rationals.
pub mod pq_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&to_pq(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let raw: Vec<pq::RawRational> = Vec::deserialize(d)?;
        raw.into_iter()
            .map(|r| r.into_rational().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Serde adapter: an optional rational.
pub mod pq_opt {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&to_pq(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
        let raw: Option<pq::RawRational> = Option::deserialize(d)?;
        raw.map(|r| r.into_rational().map_err(serde::de::Error::custom)).transpose()
    }
}
