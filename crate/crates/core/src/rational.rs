//! Exact rational arithmetic helpers shared by every module.
//!
//! All probabilities, areas and moments in this crate are `BigRational`
//! values. The external JSON formats carry rationals as `"p/q"` strings
//! (plain integers allowed as `"p"`), so this module also provides the
//! parsing/printing glue and `serde` adapters.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

use crate::Error;

pub type Rat = BigRational;

/// Shorthand for a rational from an integer pair.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// 2^-k as an exact rational.
pub fn pow2_neg(k: u32) -> Rat {
    Rat::new(BigInt::one(), BigInt::one() << k)
}

/// Parses `"p/q"` or `"p"` into a rational in lowest terms.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    let mk_err = || Error::InvalidRational(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| mk_err())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| mk_err())?;
            if q.is_zero() {
                return Err(mk_err());
            }
            Ok(Rat::new(p, q))
        }
        None => {
            // Also accept decimal literals such as "0.55" for CLI convenience.
            if let Some((w, f)) = s.split_once('.') {
                let w_int = BigInt::from_str(if w.is_empty() { "0" } else { w })
                    .map_err(|_| mk_err())?;
                let scale = BigInt::from(10u32).pow(f.len() as u32);
                let f_int = BigInt::from_str(f).map_err(|_| mk_err())?;
                if f_int.is_negative() {
                    return Err(mk_err());
                }
                let num = &w_int * &scale
                    + if w.starts_with('-') { -f_int } else { f_int };
                return Ok(Rat::new(num, scale));
            }
            let p = BigInt::from_str(s).map_err(|_| mk_err())?;
            Ok(Rat::from_integer(p))
        }
    }
}

/// Renders a rational as `"p/q"` in lowest terms, or `"p"` for integers.
pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Float rendering to 12 significant digits, as used by the CLI.
pub fn format_f64(r: &Rat) -> String {
    format!("{:.12e}", to_f64(r))
        .parse::<f64>()
        .map(|v| format!("{}", v))
        .unwrap_or_else(|_| "NaN".to_string())
}

/// serde adapter: a single rational as a `"p/q"` string.
pub mod rat_str {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(de::Error::custom)
    }
}

/// serde adapter: a vector of rationals as `"p/q"` strings.
pub mod vec_rat_str {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rat))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rat(s).map_err(de::Error::custom))
            .collect()
    }
}

/// serde adapter: a matrix of rationals as `"p/q"` strings.
pub mod mat_rat_str {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &[Vec<Rat>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(
            m.iter()
                .map(|row| row.iter().map(format_rat).collect::<Vec<_>>()),
        )
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rat>>, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        raw.iter()
            .map(|row| {
                row.iter()
                    .map(|s| parse_rat(s).map_err(de::Error::custom))
                    .collect()
            })
            .collect()
    }
}
