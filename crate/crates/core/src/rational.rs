//! Exact rationals in the `"num/den"` text encoding used by the knot database
//! and the JSON reports.

use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Deserializer, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational '{input}': {reason}")]
pub struct RationalParseError {
    pub input: String,
    pub reason: &'static str,
}

/// Parses `"num/den"` or a bare integer `"num"`.
pub fn parse_rational(text: &str) -> Result<Rational64, RationalParseError> {
    let err = |reason| RationalParseError { input: text.to_string(), reason };
    let trimmed = text.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num: i64 = num.parse().map_err(|_| err("numerator is not an integer"))?;
    let den: i64 = den.parse().map_err(|_| err("denominator is not an integer"))?;
    if den == 0 {
        return Err(err("zero denominator"));
    }
    if num == i64::MIN || den == i64::MIN {
        return Err(err("out of range"));
    }
    Ok(Rational64::new(num, den))
}

pub fn format_rational(r: &Rational64) -> String {
    RationalDisplay(r).to_string()
}

/// Always renders `num/den`, including `n/1`, so the encoding stays uniform.
pub struct RationalDisplay<'a>(pub &'a Rational64);

impl fmt::Display for RationalDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

pub mod serde_ratio {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&RationalDisplay(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational64, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_and_integer() {
        assert_eq!(parse_rational("3/5").unwrap(), Rational64::new(3, 5));
        assert_eq!(parse_rational("36/33").unwrap(), Rational64::new(12, 11));
        assert_eq!(parse_rational(" 2 ").unwrap(), Rational64::from_integer(2));
        assert_eq!(parse_rational("-1/4").unwrap(), Rational64::new(-1, 4));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/2").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/2/3").is_err());
    }

    #[test]
    fn formats_reduced() {
        assert_eq!(format_rational(&Rational64::new(36, 33)), "12/11");
        assert_eq!(format_rational(&Rational64::from_integer(1)), "1/1");
    }
}
