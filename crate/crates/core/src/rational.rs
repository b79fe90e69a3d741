//! Exact rational helpers shared by every module: construction shorthands,
//! the `{"num", "den"}` JSON form, dyadic rounding and hex-float output.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `2^e` for any signed exponent.
pub fn pow2(e: i64) -> Rational {
    let m = BigInt::one() << (e.unsigned_abs() as usize);
    if e >= 0 {
        Rational::from_integer(m)
    } else {
        Rational::new(BigInt::one(), m)
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Out of f64 range for the quotient routine; fall back to the sign.
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact conversion of a finite double.
pub fn from_f64(v: f64) -> Option<Rational> {
    Rational::from_float(v)
}

/// Largest multiple of `2^-bits` that is `<= r`.
pub fn dyadic_floor(r: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits as usize;
    let scaled = r * Rational::from_integer(scale.clone());
    Rational::new(scaled.floor().to_integer(), scale)
}

/// Smallest multiple of `2^-bits` that is `>= r`.
pub fn dyadic_ceil(r: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits as usize;
    let scaled = r * Rational::from_integer(scale.clone());
    Rational::new(scaled.ceil().to_integer(), scale)
}

fn is_power_of_two(v: &BigInt) -> bool {
    v.sign() == Sign::Plus && (v & (v - BigInt::one())).is_zero()
}

pub fn is_dyadic(r: &Rational) -> bool {
    is_power_of_two(r.denom())
}

/// Exact C99-style hex-float spelling of a dyadic rational, e.g. `0x1.8p-1`
/// for 3/4. Returns `None` when the denominator is not a power of two.
pub fn hex_float(r: &Rational) -> Option<String> {
    if !is_dyadic(r) {
        return None;
    }
    if r.is_zero() {
        return Some("0x0p+0".to_string());
    }
    let sign = if r.is_negative() { "-" } else { "" };
    let num = r.numer().abs();
    let den_bits = r.denom().bits() as i64 - 1;
    let len = num.bits() as i64;
    let exponent = len - 1 - den_bits;
    let mut frac = num - (BigInt::one() << (len as usize - 1));
    let mut frac_bits = len - 1;
    let pad = (4 - frac_bits % 4) % 4;
    frac <<= pad as usize;
    frac_bits += pad;
    let digits = (frac_bits / 4) as usize;
    let mut hex = if digits == 0 {
        String::new()
    } else {
        format!("{:0>width$}", frac.to_str_radix(16), width = digits)
    };
    while hex.ends_with('0') {
        hex.pop();
    }
    let exp = if exponent >= 0 {
        format!("+{exponent}")
    } else {
        exponent.to_string()
    };
    Some(if hex.is_empty() {
        format!("{sign}0x1p{exp}")
    } else {
        format!("{sign}0x1.{hex}p{exp}")
    })
}

/// Parses the output of [`hex_float`] back into an exact rational.
pub fn parse_hex_float(s: &str) -> Option<Rational> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let body = body.strip_prefix("0x")?;
    let (mant, exp) = body.split_once('p')?;
    let exp: i64 = exp.parse().ok()?;
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    let digits = format!("{int_part}{frac_part}");
    let m = BigInt::parse_bytes(digits.as_bytes(), 16)?;
    let v = Rational::from_integer(m) * pow2(exp - 4 * frac_part.len() as i64);
    Some(if neg { -v } else { v })
}

/// Decimal display with `sig` significant digits (not exact).
pub fn decimal(r: &Rational, sig: usize) -> String {
    decimal_f64(to_f64(r), sig)
}

pub fn decimal_f64(v: f64, sig: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let mag = v.abs().log10().floor() as i32;
    if (-5..15).contains(&mag) {
        let prec = (sig as i32 - 1 - mag).max(0) as usize;
        format!("{v:.prec$}")
    } else {
        format!("{v:.prec$e}", prec = sig.saturating_sub(1))
    }
}

pub fn sign_of(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// `{"num": "...", "den": "..."}` with decimal integer strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for RationalJson {
    fn from(r: &Rational) -> Self {
        RationalJson {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

impl RationalJson {
    pub fn to_rational(&self) -> Result<Rational, String> {
        let num: BigInt = self
            .num
            .parse()
            .map_err(|_| format!("bad numerator {:?}", self.num))?;
        let den: BigInt = self
            .den
            .parse()
            .map_err(|_| format!("bad denominator {:?}", self.den))?;
        if den.is_zero() {
            return Err("zero denominator".to_string());
        }
        Ok(Rational::new(num, den))
    }
}

/// Least common multiple of the denominators, useful for clearing a list.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Parses `"3"`, `"-3/7"` or a finite decimal like `"0.25"` exactly.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches(['-', '+']), fp);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let m: BigInt = digits.parse().ok()?;
        let v = Rational::new(m, num_traits::pow(BigInt::from(10), fp.len()));
        return Some(if neg { -v } else { v });
    }
    let n: BigInt = s.parse().ok()?;
    Some(Rational::from_integer(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_float_examples() {
        assert_eq!(hex_float(&rat(3, 4)).unwrap(), "0x1.8p-1");
        assert_eq!(hex_float(&int(1)).unwrap(), "0x1p+0");
        assert_eq!(hex_float(&int(-10)).unwrap(), "-0x1.4p+3");
        assert!(hex_float(&rat(1, 3)).is_none());
    }

    #[test]
    fn hex_float_matches_rust_float_bits() {
        let v = 0.1_f64;
        let r = from_f64(v).unwrap();
        let back = parse_hex_float(&hex_float(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn dyadic_rounding_brackets() {
        let third = rat(1, 3);
        let lo = dyadic_floor(&third, 10);
        let hi = dyadic_ceil(&third, 10);
        assert!(lo < third && third < hi);
        assert_eq!(&hi - &lo, pow2(-10));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("-3/7").unwrap(), rat(-3, 7));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("12").unwrap(), int(12));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn decimal_display() {
        assert_eq!(decimal(&rat(1, 4), 12), "0.250000000000");
        assert_eq!(decimal_f64(1234.5, 6), "1234.50");
    }
}
