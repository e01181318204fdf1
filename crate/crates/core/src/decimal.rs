//! Exact decimal constants and fixed-digit renderings of rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Parse a plain decimal literal such as `"0.1924"` or `"-58.1"` exactly.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let den = BigInt::from(10).pow(frac_part.len() as u32);
    let r = BigRational::new(num, den);
    Some(if neg { -r } else { r })
}

/// Parse a decimal literal; panics on malformed input. For compile-time constants.
pub fn dec(s: &str) -> BigRational {
    parse_decimal(s).unwrap_or_else(|| panic!("malformed decimal literal `{s}`"))
}

/// Render with exactly `digits` fractional digits, rounding half away from zero.
pub fn to_decimal_string(x: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10).pow(digits);
    let scaled = x.abs() * BigRational::from_integer(scale.clone());
    let rounded = (scaled + BigRational::new(1.into(), 2.into())).floor().to_integer();
    let int_part = &rounded / &scale;
    let frac_part = &rounded % &scale;
    let sign = if x.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = digits as usize)
    }
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact rendering `p/q` (or `p` for integers).
pub fn to_exact_string(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Inverse of [`to_exact_string`].
pub fn parse_exact(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.trim().parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.trim().parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_renders() {
        assert_eq!(dec("0.1924"), BigRational::new(1924.into(), 10000.into()));
        assert_eq!(dec("-58.1"), BigRational::new((-581).into(), 10.into()));
        assert_eq!(dec("3"), BigRational::from_integer(3.into()));
        assert!(parse_decimal("1.2.3").is_none());
        assert!(parse_decimal("abc").is_none());
        assert_eq!(to_decimal_string(&BigRational::new(2.into(), 3.into()), 6), "0.666667");
        assert_eq!(to_decimal_string(&dec("-1.25"), 1), "-1.3");
        assert_eq!(to_decimal_string(&dec("48.526"), 0), "49");
        let x = BigRational::new((-7).into(), 3.into());
        assert_eq!(parse_exact(&to_exact_string(&x)), Some(x));
    }
}
