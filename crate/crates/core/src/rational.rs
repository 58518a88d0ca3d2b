//! Exact rational helpers shared by every module.
//!
//! All arithmetic in this crate is carried out in [`Rational`]; floating point
//! only appears when rendering pictures.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::Error;

pub type Rational = num_rational::BigRational;

/// `num / den` as an exact rational. Panics on `den == 0`.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn half() -> Rational {
    q(1, 2)
}

/// Parses `"p/q"`, `"p"`, with optional sign and surrounding whitespace.
///
/// Decimal points and exponents are rejected so every accepted string maps to
/// exactly one value.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let digits_ok = |t: &str, signed: bool| {
        let body = if signed {
            t.strip_prefix(['-', '+']).unwrap_or(t)
        } else {
            t
        };
        !body.is_empty() && body.len() <= 4096 && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits_ok(num, true) || !digits_ok(den, false) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Parses a comma-separated list of rationals, e.g. `"1,0,-9/2"`.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>, Error> {
    if s.trim().is_empty() {
        return Err(Error::Parse("empty list".into()));
    }
    s.split(',').map(parse_rational).collect()
}

/// Canonical `p/q` (or `p` for integers) string.
pub fn fmt_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Square root of a rational when it is itself rational.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    let n = is_perfect_square(x.numer())?;
    let d = is_perfect_square(x.denom())?;
    Some(Rational::new(n, d))
}

/// Floor of a rational as an `i64`. Callers only pass values bounded by a
/// search box, so overflow is a logic error.
pub fn floor_i64(x: &Rational) -> i64 {
    i64::try_from(x.floor().to_integer()).expect("search bound exceeds i64")
}

pub fn ceil_i64(x: &Rational) -> i64 {
    i64::try_from(x.ceil().to_integer()).expect("search bound exceeds i64")
}

pub fn to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapter storing rationals as `"p/q"` strings.
pub mod serde_str {
    use super::{fmt_rational, parse_rational, Rational};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(x))
    }

    /// Accepts `"p/q"` strings as well as bare JSON/TOML integers.
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(super::int(n)),
            Raw::Str(s) => parse_rational(&s).map_err(de::Error::custom),
        }
    }
}

/// Same as [`serde_str`] for an optional rational, `None` as `null`.
pub mod serde_str_opt {
    use super::{fmt_rational, Rational};
    use serde::Serializer;

    pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_str(&fmt_rational(x)),
            None => s.serialize_none(),
        }
    }
}

/// Same as [`serde_str`] for a vector of rationals.
pub mod serde_str_vec {
    use super::{fmt_rational, Rational};
    use serde::{ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&fmt_rational(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "super::serde_str")] Rational);
        Ok(Vec::<Wrap>::deserialize(d)?.into_iter().map(|w| w.0).collect())
    }
}
