//! Exact rational numbers and their textual forms.
//!
//! Every non-integer quantity in this crate is a [`Rat`]. Comparisons are
//! exact, so an ordering assertion in a test is a proof about the rationals
//! involved, not about a floating-point shadow of them. Decimal output exists
//! purely for human consumption and is computed in integer arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational number used throughout the crate.
pub type Rat = BigRational;

/// Builds a `Rat` from machine integers. Panics if `den == 0`; intended for
/// literals in code and tests.
pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "rational with zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p` or `p/q` with an optional sign, rejecting `q = 0`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let err = |msg: &str| Error::ParseRational {
        input: s.to_string(),
        msg: msg.to_string(),
    };
    let t = s.trim();
    if t.is_empty() {
        return Err(err("empty string"));
    }
    let mut parts = t.splitn(3, '/');
    let num_str = parts.next().unwrap();
    let num: BigInt = num_str
        .parse()
        .map_err(|_| err("numerator is not an integer"))?;
    match (parts.next(), parts.next()) {
        (None, _) => Ok(Rat::from_integer(num)),
        (Some(den_str), None) => {
            let den: BigInt = den_str
                .parse()
                .map_err(|_| err("denominator is not an integer"))?;
            if den.is_zero() {
                return Err(err("zero denominator"));
            }
            Ok(Rat::new(num, den))
        }
        (Some(_), Some(_)) => Err(err("more than one '/'")),
    }
}

/// Formats a `Rat` in lowest terms as `p/q`, or plain `p` for integers.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serde adapter serializing a `Rat` as its exact `p/q` string.
///
/// Use as `#[serde(with = "kltsurf::rat::rat_string")]`.
pub mod rat_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_rat, parse_rat, Rat};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Option<Rat>` as an optional exact `p/q` string; pair
/// with `skip_serializing_if = "Option::is_none"` and `default`.
pub mod rat_string_opt {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_rat, parse_rat, Rat};

    pub fn serialize<S: Serializer>(r: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&format_rat(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rat>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|s| parse_rat(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Decimal approximation with six significant digits, for display only.
///
/// Rounds half away from zero. Falls back to scientific notation outside
/// `[1e-4, 1e6)` the way `%g` would.
pub fn approx_decimal(r: &Rat) -> String {
    const SIG: usize = 6;
    if r.is_zero() {
        return "0".to_string();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    let p = r.numer().abs();
    let q = r.denom().clone();

    // e = decimal exponent: 10^(e-1) <= p/q < 10^e. Digit counts give a guess
    // off by at most one, fixed up by comparison.
    let mut e = p.to_string().len() as i64 - q.to_string().len() as i64 + 1;
    let pow = |k: u64| BigInt::from(10u32).pow(k.to_u32().unwrap());
    let lt_pow10 = |p: &BigInt, q: &BigInt, k: i64| {
        // p/q < 10^k ?
        if k >= 0 {
            *p < q * pow(k as u64)
        } else {
            p * pow((-k) as u64) < *q
        }
    };
    while !lt_pow10(&p, &q, e) {
        e += 1;
    }
    while lt_pow10(&p, &q, e - 1) {
        e -= 1;
    }

    // scaled = round(p/q * 10^(SIG - e)), a SIG-digit integer.
    let shift = SIG as i64 - e;
    let (num, den) = if shift >= 0 {
        (p * pow(shift as u64), q)
    } else {
        (p, q * pow((-shift) as u64))
    };
    let mut scaled = (BigInt::from(2) * num + &den) / (BigInt::from(2) * den);
    let mut e = e;
    if scaled == pow(SIG as u64) {
        scaled = pow(SIG as u64 - 1);
        e += 1;
    }
    let digits = scaled.to_string();
    debug_assert_eq!(digits.len(), SIG);

    let trimmed = |s: &str| s.trim_end_matches('0').to_string();
    if (1..=SIG as i64).contains(&e) {
        let (int, frac) = digits.split_at(e as usize);
        let frac = trimmed(frac);
        if frac.is_empty() {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    } else if (-3..=0).contains(&e) {
        let frac = trimmed(&digits);
        format!("{sign}0.{}{}", "0".repeat((-e) as usize), frac)
    } else {
        let (head, rest) = digits.split_at(1);
        let rest = trimmed(rest);
        let exp = e - 1;
        if rest.is_empty() {
            format!("{sign}{head}e{exp}")
        } else {
            format!("{sign}{head}.{rest}e{exp}")
        }
    }
}
