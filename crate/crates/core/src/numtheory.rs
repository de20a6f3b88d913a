//! Exact integer primitives: gcd, Bézout coefficients, the Möbius function,
//! divisor lists and big binomial coefficients.

use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact nonnegative count of combinatorial objects.
///
/// Serialized as a decimal string so that consumers limited to 53-bit
/// numbers never see a rounded value.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn one() -> Self {
        BigCount(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }

    pub fn to_bigint(&self) -> BigInt {
        BigInt::from(self.0.clone())
    }

    /// Converts a signed value, failing if it is negative.
    pub fn try_from_bigint(value: BigInt) -> Result<Self> {
        value
            .to_biguint()
            .map(BigCount)
            .ok_or_else(|| Error::NonIntegerResult(format!("negative count {value}")))
    }

    /// Number of decimal digits.
    pub fn decimal_digits(&self) -> usize {
        self.0.to_str_radix(10).len()
    }
}

impl From<BigUint> for BigCount {
    fn from(value: BigUint) -> Self {
        BigCount(value)
    }
}

impl From<u64> for BigCount {
    fn from(value: u64) -> Self {
        BigCount(BigUint::from(value))
    }
}

impl PartialEq<u64> for BigCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl Add for BigCount {
    type Output = BigCount;

    fn add(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 + rhs.0)
    }
}

impl AddAssign<&BigCount> for BigCount {
    fn add_assign(&mut self, rhs: &BigCount) {
        self.0 += &rhs.0;
    }
}

impl std::iter::Sum for BigCount {
    fn sum<I: Iterator<Item = BigCount>>(iter: I) -> Self {
        iter.fold(BigCount::zero(), Add::add)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for BigCount {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || !s.bytes().all(|c| c.is_ascii_digit()) {
            return Err(Error::RejectedParameters(format!(
                "{s:?} is not a decimal count"
            )));
        }
        BigUint::from_str(s)
            .map(BigCount)
            .map_err(|e| Error::RejectedParameters(e.to_string()))
    }
}

impl Serialize for BigCount {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for BigCount {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Greatest common divisor. `gcd(0, 0)` is undefined and rejected.
pub fn gcd(a: u64, b: u64) -> Result<u64> {
    if a == 0 && b == 0 {
        return Err(Error::Undefined("gcd(0, 0)"));
    }
    Ok(gcd_unchecked(a, b))
}

/// Euclid without the (0, 0) check; returns 0 for that input.
pub(crate) fn gcd_unchecked(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Returns `(g, u, v)` with `u*a + v*b == g == gcd(a, b)`.
pub fn extended_gcd(a: u64, b: u64) -> Result<(u64, i128, i128)> {
    if a == 0 || b == 0 {
        return Err(Error::RejectedParameters(format!(
            "extended_gcd needs positive arguments, got ({a}, {b})"
        )));
    }
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_u, mut u) = (1i128, 0i128);
    let (mut old_v, mut v) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_u, u) = (u, old_u - q * u);
        (old_v, v) = (v, old_v - q * v);
    }
    Ok((old_r as u64, old_u, old_v))
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// increasing prime order.
pub fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        factors.push((m, 1));
    }
    factors
}

/// The Möbius function.
pub fn moebius(m: u64) -> Result<i8> {
    if m == 0 {
        return Err(Error::Undefined("moebius(0)"));
    }
    let factors = factorize(m);
    if factors.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if factors.len().is_multiple_of(2) { 1 } else { -1 })
}

/// All positive divisors of `m` in increasing order.
pub fn divisors(m: u64) -> Result<Vec<u64>> {
    if m == 0 {
        return Err(Error::Undefined("divisors(0)"));
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i.saturating_mul(i) <= m {
        if m.is_multiple_of(i) {
            small.push(i);
            if i != m / i {
                large.push(m / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Exact binomial coefficient; zero when `y < 0` or `y > x`.
pub fn binomial(x: u64, y: i64) -> BigCount {
    if y < 0 || y as u64 > x {
        return BigCount::zero();
    }
    let y = (y as u64).min(x - y as u64);
    let mut acc = BigUint::one();
    // After step i, acc = C(x - y + i, i), so every division is exact.
    for i in 1..=y {
        acc *= x - y + i;
        acc /= i;
    }
    BigCount(acc)
}

/// `binomial(l/m, k/m)` when `m` divides both `l` and `k`, else zero.
pub fn scaled_binomial(l: u64, k: u64, m: u64) -> Result<BigCount> {
    if l == 0 || m == 0 {
        return Err(Error::RejectedParameters(format!(
            "scaled_binomial needs l >= 1 and m >= 1, got l = {l}, m = {m}"
        )));
    }
    if !l.is_multiple_of(m) || !k.is_multiple_of(m) {
        return Ok(BigCount::zero());
    }
    Ok(binomial(l / m, (k / m) as i64))
}
