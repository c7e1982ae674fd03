//! String encodings for exact values.
//!
//! Rationals are written as `num/den` in lowest terms with a positive
//! denominator. Integral values drop the denominator (`-1`, `0`), and the
//! parser accepts either form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::Serializer;

use crate::error::{Error, Result};

pub fn format_rational(value: &BigRational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::BadParams(format!("not a rational: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

pub fn int(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Rounds to 12 significant digits.
pub fn round_sig12(value: f64) -> f64 {
    if !value.is_finite() || value == 0.0 {
        return value;
    }
    format!("{value:.11e}").parse().unwrap_or(value)
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(value: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }
}

pub mod opt_rational {
    use super::*;

    pub fn serialize<S: Serializer>(
        value: &Option<BigRational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match value {
            Some(v) => s.serialize_str(&format_rational(v)),
            None => s.serialize_none(),
        }
    }
}

pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(values: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&format_rational(v))?;
        }
        seq.end()
    }
}

pub mod float12 {
    use super::*;

    pub fn serialize<S: Serializer>(value: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(round_sig12(*value))
    }
}

pub mod opt_float12 {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match value {
            Some(v) if v.is_finite() => s.serialize_f64(round_sig12(*v)),
            _ => s.serialize_none(),
        }
    }
}

pub mod float12_vec {
    use super::*;

    pub fn serialize<S: Serializer>(values: &[f64], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&round_sig12(*v))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_canonically() {
        assert_eq!(format_rational(&ratio(6, 16)), "3/8");
        assert_eq!(format_rational(&ratio(5, -32)), "-5/32");
        assert_eq!(format_rational(&ratio(0, 7)), "0");
        assert_eq!(format_rational(&int(-1)), "-1");
    }

    #[test]
    fn parses_both_forms() {
        assert_eq!(parse_rational("-5/32").unwrap(), ratio(-5, 32));
        assert_eq!(parse_rational("0/1").unwrap(), int(0));
        assert_eq!(parse_rational("0").unwrap(), int(0));
        assert_eq!(parse_rational("4/10").unwrap(), ratio(2, 5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(round_sig12(1.0 / 3.0), 0.333333333333);
        assert_eq!(round_sig12(-0.5), -0.5);
        assert_eq!(round_sig12(0.0), 0.0);
    }
}
