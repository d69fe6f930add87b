//! Leading digits of exact positive rationals and the digit sets that relate
//! a base `b` to its power `b^e`.
//!
//! `d_b(x) = j` iff `j * b^k <= x < (j + 1) * b^k` for some integer `k`. The
//! exponent `k` is located by galloping over squared powers of `b` followed by
//! a binary descent, so the cost is logarithmic in `|k|` and every comparison
//! is between integers.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::{Base, Digit, Error, Limits, PositiveRational, Result};

/// Largest `t >= 0` with `b^t * lhs <= rhs` (or `< rhs` when `strict`),
/// together with `b^t * lhs`. Requires `lhs <= rhs` (resp. `lhs < rhs`).
fn galloping_exponent(b: u64, lhs: &BigUint, rhs: &BigUint, strict: bool) -> (u64, BigUint) {
    let fits = |v: &BigUint| if strict { v < rhs } else { v <= rhs };
    debug_assert!(fits(lhs));
    // squares[i] = b^(2^i)
    let mut squares = alloc::vec![BigUint::from(b)];
    loop {
        let last = squares.last().expect("non-empty");
        if !fits(&(last * lhs)) {
            break;
        }
        let next = last * last;
        squares.push(next);
    }
    let mut exponent = 0u64;
    let mut acc = lhs.clone();
    for (i, sq) in squares.iter().enumerate().rev() {
        let candidate = &acc * sq;
        if fits(&candidate) {
            acc = candidate;
            exponent += 1u64 << i;
        }
    }
    (exponent, acc)
}

/// Leading digit of `x` in base `b` together with the exponent `k` such that
/// `j * b^k <= x < (j + 1) * b^k`.
pub fn leading_digit_with_exponent(x: &PositiveRational, b: Base) -> (Digit, i64) {
    let (p, q) = (x.numer(), x.denom());
    if p >= q {
        // b^k * q <= p < b^(k+1) * q
        let (k, scaled) = galloping_exponent(b.get(), q, p, false);
        let j = (p / scaled).to_u64().expect("quotient is below the base");
        (Digit::new_unchecked(j, b), k as i64)
    } else {
        // largest t with b^t * p < q; then m = t + 1 gives q <= b^m * p
        let (t, scaled) = galloping_exponent(b.get(), p, q, true);
        let scaled = scaled * b.get();
        let j = (scaled / q).to_u64().expect("quotient is below the base");
        (Digit::new_unchecked(j, b), -(t as i64) - 1)
    }
}

/// Leading digit of `x` in base `b`.
pub fn leading_digit(x: &PositiveRational, b: Base) -> Digit {
    leading_digit_with_exponent(x, b).0
}

/// Leading digit of a positive machine integer.
///
/// # Panics
/// If `x` is zero.
#[inline]
pub fn leading_digit_u64(x: u64, b: Base) -> Digit {
    assert!(x > 0, "leading digit of zero");
    let radix = b.get();
    let mut scale = 1u64;
    // scale * radix <= x, written to avoid overflow
    while scale <= x / radix {
        scale *= radix;
    }
    Digit::new_unchecked(x / scale, b)
}

fn check_tuple_bases(bases: &[Base]) -> Result<()> {
    if bases.is_empty() {
        return Err(Error::TooFewBases { needed: 1, got: 0 });
    }
    for (i, b) in bases.iter().enumerate() {
        if bases[..i].contains(b) {
            return Err(Error::DuplicateBase(b.get()));
        }
    }
    Ok(())
}

/// Component-wise leading digits of `x` for distinct bases.
pub fn leading_digit_tuple(x: &PositiveRational, bases: &[Base]) -> Result<Vec<Digit>> {
    check_tuple_bases(bases)?;
    Ok(bases.iter().map(|&b| leading_digit(x, b)).collect())
}

/// [`leading_digit_tuple`] for a positive machine integer.
pub fn leading_digit_tuple_u64(x: u64, bases: &[Base]) -> Result<Vec<Digit>> {
    check_tuple_bases(bases)?;
    if x == 0 {
        return Err(Error::Invalid("x must be positive"));
    }
    Ok(bases.iter().map(|&b| leading_digit_u64(x, b)).collect())
}

/// The set `S(b, e, j)`: every leading digit in base `b^e` whose base-`b`
/// leading digit is `j`. It is the union over `l = 0..e` of the runs
/// `b^l * j .. b^l * (j + 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitSet {
    base: Base,
    exponent: u32,
    digit: Digit,
    members: Vec<u64>,
}

impl DigitSet {
    pub fn base(&self) -> Base {
        self.base
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn digit(&self) -> Digit {
        self.digit
    }

    /// Members in increasing order.
    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, d: u64) -> bool {
        self.members.binary_search(&d).is_ok()
    }

    /// Maximal runs `(first, last)` of consecutive members.
    pub fn runs(&self) -> Vec<(u64, u64)> {
        runs_of(&self.members)
    }
}

pub(crate) fn runs_of(sorted: &[u64]) -> Vec<(u64, u64)> {
    let mut out: Vec<(u64, u64)> = Vec::new();
    for &m in sorted {
        match out.last_mut() {
            Some((_, last)) if *last + 1 == m => *last = m,
            _ => out.push((m, m)),
        }
    }
    out
}

/// Builds `S(b, e, j)` explicitly. Fails with [`Error::ResourceLimit`] when
/// `b^e` exceeds `limits.enumeration`; use [`digit_set_contains`] instead.
pub fn digit_set(b: Base, e: u32, j: Digit, limits: &Limits) -> Result<DigitSet> {
    if e == 0 {
        return Err(Error::Invalid("exponent must be at least 1"));
    }
    if j.base() != b {
        return Err(Error::Invalid("digit belongs to a different base"));
    }
    let universe = (b.get() as u128).checked_pow(e).unwrap_or(u128::MAX);
    Limits::check("digit set universe b^e", universe, limits.enumeration)?;
    let mut members = Vec::with_capacity(((universe - 1) / (b.get() as u128 - 1)) as usize);
    let mut scale = 1u64;
    for _ in 0..e {
        let start = scale * j.value();
        members.extend(start..start + scale);
        scale *= b.get();
    }
    Ok(DigitSet { base: b, exponent: e, digit: j, members })
}

/// Membership test `d in S(b, e, j)` without materializing the set.
pub fn digit_set_contains(b: Base, e: u32, j: Digit, d: u64) -> bool {
    let d = d as u128;
    let mut scale: u128 = 1;
    for _ in 0..e {
        let Some(lo) = scale.checked_mul(j.value() as u128) else { return false };
        if lo > d {
            return false;
        }
        let hi = lo + scale;
        if d < hi {
            return true;
        }
        scale = match scale.checked_mul(b.get() as u128) {
            Some(s) => s,
            None => return false,
        };
    }
    false
}

/// Refines a digit `d` of base `b^e` to the unique `j` with `d in S(b, e, j)`.
pub fn refine_digit(d: Digit, b: Base, e: u32) -> Result<Digit> {
    let combined = b.pow(e)?;
    if d.base() != combined {
        return Err(Error::Invalid("digit is not in base b^e"));
    }
    Ok(refine_raw(d.value(), b))
}

/// `d` must lie in `1..b^e`; finds the run `b^l * j .. b^l * (j + 1)` holding it.
#[inline]
pub(crate) fn refine_raw(d: u64, b: Base) -> Digit {
    let radix = b.get();
    let mut scale = 1u64;
    while scale <= d / radix {
        scale *= radix;
    }
    Digit::new_unchecked(d / scale, b)
}
