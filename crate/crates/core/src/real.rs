//! Certified reals as dyadic intervals `[lo, hi] / 2^bits`.
//!
//! Every operation rounds outward, so the true value is always enclosed.
//! Logarithms use `ln r = k ln 2 + 2 atanh((r' - 1) / (r' + 1))` with
//! `r = 2^k r'`, `r'` in `[1, 2)`, so the series argument is below 1/3.

use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::PositiveRational;

/// Extra bits carried through the series before the final outward rounding.
const GUARD_BITS: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

fn ceil_shr(n: &BigInt, s: u32) -> BigInt {
    -((-n) >> s)
}

fn floor_div(n: &BigInt, d: &BigInt) -> BigInt {
    n.div_floor(d)
}

fn ceil_div(n: &BigInt, d: &BigInt) -> BigInt {
    Integer::div_ceil(n, d)
}

impl Interval {
    pub fn from_integer(n: i64, bits: u32) -> Interval {
        let v = BigInt::from(n) << bits;
        Interval { lo: v.clone(), hi: v, bits }
    }

    /// Encloses `num / den`; `den` must be nonzero.
    pub fn from_ratio(num: &BigInt, den: &BigInt, bits: u32) -> Interval {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num.clone(), den.clone()) };
        let scaled = num << bits;
        Interval { lo: floor_div(&scaled, &den), hi: ceil_div(&scaled, &den), bits }
    }

    /// `[lo, hi] / 2^bits`; `None` if `lo > hi`.
    pub fn from_endpoints(lo: BigInt, hi: BigInt, bits: u32) -> Option<Interval> {
        (lo <= hi).then_some(Interval { lo, hi, bits })
    }

    pub fn from_rational(x: &PositiveRational, bits: u32) -> Interval {
        Interval::from_ratio(&BigInt::from(x.numer().clone()), &BigInt::from(x.denom().clone()), bits)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Lower and upper endpoints as integers over `2^bits`.
    pub fn endpoints(&self) -> (&BigInt, &BigInt) {
        (&self.lo, &self.hi)
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// Width in units of `2^-bits`.
    pub fn width_ulps(&self) -> BigInt {
        &self.hi - &self.lo
    }

    /// True if the interval lies within `[center - 2^-tol_bits, center + 2^-tol_bits]`.
    pub fn within(&self, center: i64, tol_bits: u32) -> bool {
        let c = BigInt::from(center) << self.bits;
        if tol_bits > self.bits {
            return self.lo == c && self.hi == c;
        }
        let tol = BigInt::one() << (self.bits - tol_bits);
        self.lo >= &c - &tol && self.hi <= c + tol
    }

    /// Rounds outward to `bits` fractional bits.
    pub fn with_bits(&self, bits: u32) -> Interval {
        match bits.cmp(&self.bits) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let s = bits - self.bits;
                Interval { lo: &self.lo << s, hi: &self.hi << s, bits }
            }
            Ordering::Less => {
                let s = self.bits - bits;
                Interval { lo: &self.lo >> s, hi: ceil_shr(&self.hi, s), bits }
            }
        }
    }

    fn check_bits(&self, other: &Interval) {
        assert_eq!(self.bits, other.bits, "interval precisions differ");
    }

    pub fn add(&self, other: &Interval) -> Interval {
        self.check_bits(other);
        Interval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi, bits: self.bits }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        self.check_bits(other);
        Interval { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo, bits: self.bits }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo, bits: self.bits }
    }

    pub fn mul_int(&self, k: i64) -> Interval {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if k >= 0 {
            Interval { lo: a, hi: b, bits: self.bits }
        } else {
            Interval { lo: b, hi: a, bits: self.bits }
        }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        self.check_bits(other);
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let min = products.iter().min().expect("four products");
        let max = products.iter().max().expect("four products");
        Interval { lo: min >> self.bits, hi: ceil_shr(max, self.bits), bits: self.bits }
    }

    /// Quotient; `None` when the divisor interval contains zero.
    pub fn div(&self, other: &Interval) -> Option<Interval> {
        self.check_bits(other);
        if !(other.lo.is_positive() || other.hi.is_negative()) {
            return None;
        }
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for n in [&self.lo, &self.hi] {
            let scaled = n << self.bits;
            for d in [&other.lo, &other.hi] {
                let f = floor_div(&scaled, d);
                let c = ceil_div(&scaled, d);
                lo = Some(match lo {
                    Some(v) if v <= f => v,
                    _ => f,
                });
                hi = Some(match hi {
                    Some(v) if v >= c => v,
                    _ => c,
                });
            }
        }
        Some(Interval { lo: lo.expect("set"), hi: hi.expect("set"), bits: self.bits })
    }

    pub fn recip(&self) -> Option<Interval> {
        Interval::from_integer(1, self.bits).div(self)
    }

    /// `Some(true)` if certainly `self < other`, `Some(false)` if certainly
    /// `self >= other`, `None` when the intervals overlap.
    pub fn certainly_lt(&self, other: &Interval) -> Option<bool> {
        self.check_bits(other);
        if self.hi < other.lo {
            Some(true)
        } else if self.lo >= other.hi {
            Some(false)
        } else {
            None
        }
    }

    /// Integer part when it is the same across the whole interval.
    pub fn floor(&self) -> Option<BigInt> {
        let a = &self.lo >> self.bits;
        let b = &self.hi >> self.bits;
        (a == b).then_some(a)
    }

    /// Fractional part in `[0, 1)`, or `None` if the interval straddles an
    /// integer.
    pub fn fract(&self) -> Option<Interval> {
        let n = self.floor()?;
        let shift = n << self.bits;
        Some(Interval { lo: &self.lo - &shift, hi: &self.hi - &shift, bits: self.bits })
    }

    /// Midpoint as `f64`, for display and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        let mid: BigInt = (&self.lo + &self.hi) >> 1u32;
        // keep about 64 significant bits before converting
        let excess = mid.bits().saturating_sub(64) as u32;
        let m = (mid >> excess).to_f64().unwrap_or(f64::NAN);
        let exp = excess as i32 - self.bits as i32;
        scale_pow2(m, exp)
    }

    /// Enclosure of `ln x`.
    pub fn ln(x: &PositiveRational, bits: u32) -> Interval {
        ln_rational(x.numer(), x.denom(), bits)
    }

    /// Enclosure of `ln 2`.
    pub fn ln2(bits: u32) -> Interval {
        let w = bits + GUARD_BITS;
        atanh_third(w).mul_int(2).with_bits(bits)
    }

    /// Enclosure of `log_b x`; exact when `x` is an integer power of `b`.
    pub fn log(x: &PositiveRational, b: u64, bits: u32) -> Interval {
        assert!(b >= 2, "logarithm base must be at least 2");
        if let Some(k) = exact_log(x, b) {
            return Interval::from_integer(k, bits);
        }
        let w = bits + GUARD_BITS;
        let num = ln_rational(x.numer(), x.denom(), w);
        let den = ln_rational(&BigUint::from(b), &BigUint::one(), w);
        num.div(&den).expect("ln b > 0 for b >= 2").with_bits(bits)
    }
}

fn scale_pow2(mut v: f64, mut exp: i32) -> f64 {
    while exp > 0 {
        let s = exp.min(60);
        v *= (1u64 << s) as f64;
        exp -= s;
    }
    while exp < 0 {
        let s = (-exp).min(60);
        v /= (1u64 << s) as f64;
        exp += s;
    }
    v
}

/// `k` with `x = b^k` exactly, if any.
fn exact_log(x: &PositiveRational, b: u64) -> Option<i64> {
    let (mut n, mut sign) = if x.denom().is_one() {
        (x.numer().clone(), 1)
    } else if x.numer().is_one() {
        (x.denom().clone(), -1)
    } else {
        return None;
    };
    let mut k = 0i64;
    while !n.is_one() {
        let (q, r) = n.div_rem(&BigUint::from(b));
        if !r.is_zero() {
            return None;
        }
        n = q;
        k += 1;
    }
    if k == 0 {
        sign = 1;
    }
    Some(sign * k)
}

/// `atanh(1/3)` so that `ln 2 = 2 atanh(1/3)`.
fn atanh_third(w: u32) -> Interval {
    let one = BigInt::one() << w;
    let lo = floor_div(&one, &BigInt::from(3));
    let hi = ceil_div(&one, &BigInt::from(3));
    atanh_series(&lo, &hi, w)
}

/// Encloses `atanh(z)` for `z` in `[lo, hi] / 2^w`, `0 <= lo <= hi <= 2^w / 3 + 1`.
/// The lower sum truncates the positive series with floored terms; the upper
/// sum uses ceiled terms plus a tail bound `p_N (9/8) / (2N + 1) <= p_N`.
fn atanh_series(z_lo: &BigInt, z_hi: &BigInt, w: u32) -> Interval {
    let lower = {
        let z2 = (z_lo * z_lo) >> w;
        let mut pow = z_lo.clone();
        let mut sum = BigInt::zero();
        let mut n = 0u32;
        while !pow.is_zero() {
            sum += &pow / (2 * n + 1);
            pow = (&pow * &z2) >> w;
            n += 1;
        }
        sum
    };
    let upper = {
        let z2 = ceil_shr(&(z_hi * z_hi), w);
        let mut pow = z_hi.clone();
        let mut sum = BigInt::zero();
        let mut n = 0u32;
        let small = BigInt::from(16);
        loop {
            sum += ceil_div(&pow, &BigInt::from(2 * n + 1));
            pow = ceil_shr(&(&pow * &z2), w);
            n += 1;
            if pow <= small {
                sum += &pow;
                break;
            }
        }
        sum
    };
    Interval { lo: lower, hi: upper, bits: w }
}

fn ln_rational(p: &BigUint, q: &BigUint, bits: u32) -> Interval {
    assert!(!p.is_zero() && !q.is_zero(), "logarithm of a non-positive value");
    let w = bits + GUARD_BITS;
    // 2^k q <= p < 2^(k+1) q
    let mut k = p.bits() as i64 - q.bits() as i64;
    let (mut pp, mut qq) = (BigInt::from_biguint(Sign::Plus, p.clone()), BigInt::from_biguint(Sign::Plus, q.clone()));
    let fits = |k: i64, pp: &BigInt, qq: &BigInt| {
        if k >= 0 {
            (qq << k as u64) <= *pp
        } else {
            *qq <= (pp << (-k) as u64)
        }
    };
    if !fits(k, &pp, &qq) {
        k -= 1;
    }
    if k >= 0 {
        qq <<= k as u64;
    } else {
        pp <<= (-k) as u64;
    }
    let num = &pp - &qq;
    let den = &pp + &qq;
    let z = Interval::from_ratio(&num, &den, w);
    let reduced = atanh_series(&z.lo, &z.hi, w).mul_int(2);
    let total = if k == 0 { reduced } else { atanh_third(w).mul_int(2 * k).add(&reduced) };
    total.with_bits(bits)
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.20e} \u{b1} {} ulp(2^-{})", self.to_f64(), self.width_ulps(), self.bits)
    }
}
