//! Exact rational scalars.
//!
//! Every predicate in the crate is decided over [`Rational`]; floats only
//! appear in norms and human-facing reports. Rationals travel through JSON
//! as strings (`"p/q"` or `"p"`) so no precision is lost on the wire.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `num / den` as a reduced rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn half() -> Rational {
    rat(1, 2)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fallback for values outside the f64 range of the numerator/denominator.
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact binary value of a finite float.
pub fn from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::Validation(format!("non-finite value {x}")))
}

/// Parse `"p/q"`, `"p"`, or a plain decimal such as `"0.25"`.
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole: BigInt = match whole {
            "" | "-" | "+" => BigInt::zero(),
            w => w.parse().map_err(|_| bad())?,
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let frac = Rational::new(frac, scale);
        let whole = Rational::from_integer(whole);
        return Ok(if negative { whole - frac } else { whole + frac });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// `"p/q"`, or `"p"` when the value is an integer.
pub fn format(r: &Rational) -> String {
    r.to_string()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

/// The rational with the smallest denominator in `[lo, hi]`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    if !lo.is_positive() && !hi.is_negative() {
        return zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    let c = lo.ceil();
    if &c <= hi {
        return c;
    }
    let f = lo.floor();
    f.clone() + (simplest_between(&(hi - &f).recip(), &(lo - &f).recip())).recip()
}

/// Serde adapter storing a rational as its `"p/q"` string.
pub mod serde_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = RawRational::deserialize(d)?;
        raw.into_rational().map_err(serde::de::Error::custom)
    }

    /// Accepts a string or an integer literal.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RawRational {
        Str(String),
        Int(i64),
    }

    impl RawRational {
        pub(crate) fn into_rational(self) -> crate::error::Result<Rational> {
            match self {
                RawRational::Str(s) => super::parse(&s),
                RawRational::Int(i) => Ok(super::int(i)),
            }
        }
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod serde_vec {
    use super::serde_str::RawRational;
    use super::Rational;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&super::format(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<RawRational>::deserialize(d)?
            .into_iter()
            .map(|r| r.into_rational().map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_between(&rat(3, 10), &rat(4, 10)), rat(1, 3));
        assert_eq!(simplest_between(&rat(-4, 10), &rat(-3, 10)), rat(-1, 3));
        assert_eq!(simplest_between(&rat(-1, 10), &rat(1, 10)), zero());
        assert_eq!(simplest_between(&rat(5, 2), &rat(7, 2)), int(3));
        let near = from_f64(1.0 / 7.0).unwrap();
        assert_eq!(simplest_between(&(&near - rat(1, 1_000_000)), &(&near + rat(1, 1_000_000))), rat(1, 7));
    }

    #[test]
    fn parses_fraction_integer_and_decimal() {
        assert_eq!(parse("10/4").unwrap(), rat(5, 2));
        assert_eq!(parse("-3").unwrap(), int(-3));
        assert_eq!(parse("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse(" 7 / -14 ").unwrap(), rat(-1, 2));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
        assert!(parse("1.").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn formats_reduced() {
        assert_eq!(format(&rat(-10, 48)), "-5/24");
        assert_eq!(format(&int(2)), "2");
        assert_eq!(format(&zero()), "0");
    }

    #[test]
    fn float_round_trip_is_exact() {
        let r = from_f64(-1.0 / 3.0).unwrap();
        assert_eq!(to_f64(&r), -1.0 / 3.0);
        assert!(from_f64(f64::NAN).is_err());
    }
}
