//! Closed intervals with exact rational endpoints, rounded outward to a
//! working precision.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::funceq::DeltaArith;
use crate::valued_field::rational::bit_len;
use crate::valued_field::ExactRational;

/// Unlimited precision: no rounding.
pub const EXACT: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: ExactRational,
    hi: ExactRational,
    bits: u32,
}

fn pow2(e: i64) -> ExactRational {
    let two = ExactRational::from_integer(BigInt::from(2));
    crate::valued_field::powi(&two, e)
}

/// Exponent `s` such that `|q| * 2^s` carries about `bits` significant bits.
fn rounding_shift(q: &ExactRational, bits: u32) -> i64 {
    bits as i64 - (bit_len(q.numer()) as i64 - bit_len(q.denom()) as i64)
}

fn round_down(q: ExactRational, bits: u32) -> ExactRational {
    if bits == EXACT || q.is_zero() {
        return q;
    }
    let s = rounding_shift(&q, bits);
    let scale = pow2(s);
    (q * &scale).floor() / scale
}

fn round_up(q: ExactRational, bits: u32) -> ExactRational {
    if bits == EXACT || q.is_zero() {
        return q;
    }
    let s = rounding_shift(&q, bits);
    let scale = pow2(s);
    (q * &scale).ceil() / scale
}

impl Interval {
    pub fn point(q: ExactRational) -> Self {
        Interval {
            lo: q.clone(),
            hi: q,
            bits: EXACT,
        }
    }

    pub fn new(lo: ExactRational, hi: ExactRational, bits: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval {
            lo: round_down(lo, bits),
            hi: round_up(hi, bits),
            bits,
        }
    }

    pub fn lo(&self) -> &ExactRational {
        &self.lo
    }

    pub fn hi(&self) -> &ExactRational {
        &self.hi
    }

    pub fn contains(&self, q: &ExactRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn width(&self) -> ExactRational {
        &self.hi - &self.lo
    }

    /// Enclosure of `{|t| : t in self}`.
    pub fn abs(&self) -> Interval {
        let (lo, hi) = if self.lo.is_positive() || self.lo.is_zero() {
            (self.lo.clone(), self.hi.clone())
        } else if !self.hi.is_positive() {
            (-self.hi.clone(), -self.lo.clone())
        } else {
            (ExactRational::zero(), self.hi.clone().max(-self.lo.clone()))
        };
        Interval { lo, hi, bits: self.bits }
    }

    fn join_bits(&self, other: &Interval) -> u32 {
        self.bits.min(other.bits)
    }

    /// Certified enclosure of the real `n`-th root of `a` with relative width
    /// at most `2^-bits`. Negative `a` needs odd `n`.
    pub fn nth_root(a: &ExactRational, n: u32, bits: u32) -> Interval {
        assert!(n >= 1);
        assert!(bits != EXACT, "root enclosures need a finite precision");
        if a.is_zero() {
            return Interval::point(ExactRational::zero());
        }
        if a.is_negative() {
            assert!(n % 2 == 1, "even root of a negative number");
            let pos = Interval::nth_root(&-a.clone(), n, bits);
            return Interval {
                lo: -pos.hi,
                hi: -pos.lo,
                bits,
            };
        }
        // r = floor((a 2^(nP))^(1/n)) gives r/2^P <= a^(1/n) < (r+1)/2^P.
        let log2_a = bit_len(a.numer()) as i64 - bit_len(a.denom()) as i64;
        let shrink = if log2_a < 0 { (-log2_a) / n as i64 + 2 } else { 0 };
        let p = bits as i64 + 2 + shrink;
        let scaled = a.numer() * (BigInt::one() << (n as i64 * p) as usize);
        let q = scaled / a.denom();
        let r = q.nth_root(n);
        let denom = BigInt::one() << p as usize;
        Interval {
            lo: ExactRational::new(r.clone(), denom.clone()),
            hi: ExactRational::new(r + 1, denom),
            bits,
        }
    }

    pub fn with_precision(mut self, bits: u32) -> Self {
        self.bits = bits;
        self.lo = round_down(self.lo, bits);
        self.hi = round_up(self.hi, bits);
        self
    }
}

impl DeltaArith for Interval {
    fn from_int(v: i64) -> Self {
        Interval::point(ExactRational::from_integer(v.into()))
    }

    fn add(&self, other: &Self) -> Self {
        let bits = self.join_bits(other);
        Interval::new(&self.lo + &other.lo, &self.hi + &other.hi, bits)
    }

    fn sub(&self, other: &Self) -> Self {
        let bits = self.join_bits(other);
        Interval::new(&self.lo - &other.hi, &self.hi - &other.lo, bits)
    }

    fn mul(&self, other: &Self) -> Self {
        let bits = self.join_bits(other);
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Interval::new(lo, hi, bits)
    }

    fn div(&self, other: &Self) -> Option<Self> {
        if other.contains_zero() {
            return None;
        }
        let recip = Interval {
            lo: other.hi.recip(),
            hi: other.lo.recip(),
            bits: other.bits,
        };
        Some(self.mul(&recip))
    }

    fn powu(&self, e: u32) -> Self {
        if e == 0 {
            return Interval::from_int(1);
        }
        let a = crate::valued_field::powi(&self.lo, e as i64);
        let b = crate::valued_field::powi(&self.hi, e as i64);
        let (lo, hi) = if e % 2 == 1 || self.lo.is_positive() || self.lo.is_zero() {
            (a, b)
        } else if !self.hi.is_positive() {
            (b, a)
        } else {
            (ExactRational::zero(), a.max(b))
        };
        Interval::new(lo, hi, self.bits)
    }
}
