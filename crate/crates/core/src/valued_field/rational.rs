//! Helpers on top of [`BigRational`], the exact scalar used everywhere.

use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed rational, always stored in lowest terms with a
/// positive denominator.
pub type ExactRational = BigRational;

pub fn rat(n: i64, d: i64) -> ExactRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `base^exp` for any integer exponent. Negative exponents require a nonzero base.
pub fn powi(base: &ExactRational, exp: i64) -> ExactRational {
    if exp >= 0 {
        num_traits::pow::pow(base.clone(), exp as usize)
    } else {
        assert!(!base.is_zero(), "negative power of zero");
        num_traits::pow::pow(base.recip(), exp.unsigned_abs() as usize)
    }
}

/// Exact `n`-th root of a nonnegative integer, if it exists.
fn exact_root(value: &BigInt, n: u32) -> Option<BigInt> {
    let r = value.nth_root(n);
    (num_traits::pow::pow(r.clone(), n as usize) == *value).then_some(r)
}

/// `base^exp` for a rational exponent, returned only when the result is
/// itself rational. `0^exp` is 0 for positive exponents and undefined otherwise.
pub fn pow_rational(base: &ExactRational, exp: &ExactRational) -> Result<ExactRational> {
    let inexact = || Error::InexactExponent {
        base: to_exact_string(base),
        exponent: to_exact_string(exp),
    };
    if exp.is_integer() {
        let e = exp.to_integer().to_i64().ok_or_else(inexact)?;
        if base.is_zero() && e < 0 {
            return Err(Error::domain("negative power of zero"));
        }
        return Ok(powi(base, e));
    }
    if base.is_zero() {
        return if exp.is_positive() {
            Ok(ExactRational::zero())
        } else {
            Err(Error::domain("negative power of zero"))
        };
    }
    let q = exp.denom().to_u32().ok_or_else(inexact)?;
    let p = exp.numer().to_i64().ok_or_else(inexact)?;
    let negative = base.is_negative();
    if negative && q % 2 == 0 {
        return Err(inexact());
    }
    let mag = base.abs();
    let num = exact_root(mag.numer(), q).ok_or_else(inexact)?;
    let den = exact_root(mag.denom(), q).ok_or_else(inexact)?;
    let mut root = BigRational::new(num, den);
    if negative {
        root = -root;
    }
    Ok(powi(&root, p))
}

/// If `value` is an exact integer power of `base` (base > 1), return that exponent.
pub fn log_exact(value: &ExactRational, base: u64) -> Option<i64> {
    if !value.is_positive() || base < 2 {
        return None;
    }
    let (mut m, sign) = if value.numer().is_one() {
        (value.denom().clone(), -1)
    } else if value.denom().is_one() {
        (value.numer().clone(), 1)
    } else {
        return None;
    };
    let b = BigInt::from(base);
    let mut k = 0i64;
    while !m.is_one() {
        let (q, r) = m.div_rem(&b);
        if !r.is_zero() {
            return None;
        }
        m = q;
        k += 1;
    }
    Some(sign * k)
}

/// Serialize as `numerator/denominator`, always including the denominator.
pub fn to_exact_string(q: &ExactRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parse `n`, `n/d`, or a finite decimal such as `-0.25`.
pub fn parse_exact(input: &str) -> Result<ExactRational> {
    let err = || Error::Parse {
        what: "rational",
        input: input.to_string(),
    };
    let s = input.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        let whole_val = if whole_digits.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(whole_digits).map_err(|_| err())?
        };
        let scale = num_traits::pow::pow(BigInt::from(10), frac.len());
        let frac_val = BigInt::from_str(frac).map_err(|_| err())?;
        let mag = BigRational::new(whole_val * &scale + frac_val, scale);
        return Ok(if negative { -mag } else { mag });
    }
    BigInt::from_str(s)
        .map(BigRational::from_integer)
        .map_err(|_| err())
}

/// Largest integer `<= q`.
pub fn floor(q: &ExactRational) -> BigInt {
    q.floor().to_integer()
}

/// Number of bits in `|n|`.
pub(crate) fn bit_len(n: &BigInt) -> u64 {
    if n.sign() == Sign::NoSign {
        0
    } else {
        n.bits()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_powers() {
        assert_eq!(pow_rational(&rat(4, 9), &rat(1, 2)).unwrap(), rat(2, 3));
        assert_eq!(pow_rational(&rat(-8, 27), &rat(2, 3)).unwrap(), rat(4, 9));
        assert_eq!(pow_rational(&int(9), &rat(-3, 2)).unwrap(), rat(1, 27));
        assert!(matches!(
            pow_rational(&int(2), &rat(1, 2)),
            Err(Error::InexactExponent { .. })
        ));
        assert!(pow_rational(&int(-4), &rat(1, 2)).is_err());
        assert!(pow_rational(&int(0), &int(-1)).is_err());
    }

    #[test]
    fn exact_logs() {
        assert_eq!(log_exact(&rat(1, 19683), 3), Some(-9));
        assert_eq!(log_exact(&int(1), 5), Some(0));
        assert_eq!(log_exact(&int(12), 2), None);
        assert_eq!(log_exact(&rat(2, 3), 3), None);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_exact("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_exact("12").unwrap(), int(12));
        assert_eq!(parse_exact("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_exact(".5").unwrap(), rat(1, 2));
        assert!(parse_exact("1/0").is_err());
        assert!(parse_exact("abc").is_err());
        assert_eq!(to_exact_string(&int(7)), "7/1");
    }
}
