//! Exact arithmetic: prime-field elements and arbitrary-precision rationals.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact non-negative rationals (chain exponents, jumping numbers, multiplicities).
pub type Ratio = BigRational;

/// Ambient ring parameters: characteristic `p` and number of variables `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldConfig {
    pub p: u64,
    pub d: usize,
}

impl FieldConfig {
    pub fn new(p: u64, d: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        // Products of residues must fit in u64 without overflow.
        if p > (1 << 31) {
            return Err(Error::InvalidConfig(format!(
                "characteristic {p} too large for machine-word arithmetic"
            )));
        }
        if d == 0 {
            return Err(Error::InvalidConfig("need at least one variable".into()));
        }
        Ok(FieldConfig { p, d })
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut k = 3u64;
    while k.checked_mul(k).map_or(false, |kk| kk <= n) {
        if n % k == 0 {
            return false;
        }
        k += 2;
    }
    true
}

/// An element of the prime field F_p. Residues are kept in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    value: u64,
    p: u64,
}

impl Fp {
    pub fn new(value: i64, p: u64) -> Self {
        let m = value.rem_euclid(p as i64) as u64;
        Fp { value: m, p }
    }

    pub fn from_residue(value: u64, p: u64) -> Self {
        Fp { value: value % p, p }
    }

    pub fn zero(p: u64) -> Self {
        Fp { value: 0, p }
    }

    pub fn one(p: u64) -> Self {
        Fp { value: 1 % p, p }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn characteristic(self) -> u64 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, mut n: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp::one(self.p);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inverse(self) -> Result<Fp> {
        if self.value == 0 {
            return Err(Error::DivisionByZero { p: self.p });
        }
        // Fermat: a^(p-2) * a = a^(p-1) = 1.
        Ok(self.pow(self.p - 2))
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        let mut v = self.value + rhs.value;
        if v >= self.p {
            v -= self.p;
        }
        Fp { value: v, p: self.p }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + self.p - rhs.value
        };
        Fp { value: v, p: self.p }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        Fp {
            value: (self.value * rhs.value) % self.p,
            p: self.p,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::zero(self.p) - self
    }
}

/// Smallest integer `>= t`.
pub fn ceil_ratio(t: &Ratio) -> BigInt {
    t.ceil().to_integer()
}

/// `ceil(t)` as a `u64`, for non-negative `t` of desk scale.
pub fn ceil_ratio_u64(t: &Ratio) -> Result<u64> {
    if t.is_negative() {
        return Err(Error::NegativeDivisorCoefficient);
    }
    let c = ceil_ratio(t);
    u64::try_from(&c).map_err(|_| Error::ExponentOverflow)
}

/// Parse a rational literal `a`, `a/b`, or a decimal-free integer string.
pub fn parse_ratio(src: &str) -> Result<Ratio> {
    let s = src.trim();
    let err = |msg: &str| Error::Parse {
        pos: 0,
        msg: format!("{msg}: {src:?}"),
    };
    let (num_s, den_s) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (s, None),
    };
    let num: BigInt = num_s
        .parse()
        .map_err(|_| err("expected integer numerator"))?;
    let den: BigInt = match den_s {
        Some(b) => b.parse().map_err(|_| err("expected integer denominator"))?,
        None => BigInt::from(1),
    };
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Ratio::new(num, den))
}
