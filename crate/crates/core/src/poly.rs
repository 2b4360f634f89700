//! Sparse multivariate polynomials over F_p under the degree-lexicographic order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::arith::Fp;
use crate::error::{Error, Result};

/// A monomial exponent vector with its total degree cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exponent {
    comps: Vec<u32>,
    degree: u32,
}

impl Exponent {
    pub fn new(comps: Vec<u32>) -> Self {
        let degree = comps.iter().sum();
        Exponent { comps, degree }
    }

    pub fn zero(dim: usize) -> Self {
        Exponent {
            comps: vec![0; dim],
            degree: 0,
        }
    }

    /// Standard basis exponent: the i-th variable to the first power.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut comps = vec![0; dim];
        comps[i] = 1;
        Exponent { comps, degree: 1 }
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn components(&self) -> &[u32] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.degree == 0
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.dim(), other.dim());
        Exponent::new(
            self.comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise difference, or `None` when `other` does not divide `self`.
    pub fn checked_sub(&self, other: &Exponent) -> Option<Exponent> {
        debug_assert_eq!(self.dim(), other.dim());
        let mut comps = Vec::with_capacity(self.comps.len());
        for (a, b) in self.comps.iter().zip(&other.comps) {
            comps.push(a.checked_sub(*b)?);
        }
        Some(Exponent::new(comps))
    }

    pub fn divides(&self, other: &Exponent) -> bool {
        self.comps.iter().zip(&other.comps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Exponent) -> Exponent {
        Exponent::new(
            self.comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| (*a).max(*b))
                .collect(),
        )
    }

    pub fn scale(&self, k: u32) -> Exponent {
        Exponent::new(self.comps.iter().map(|a| a * k).collect())
    }
}

/// Degree-lexicographic comparison; errors on mismatched dimensions.
pub fn deg_lex_compare(a: &Exponent, b: &Exponent) -> Result<Ordering> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(a.cmp(b))
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.dim(), other.dim());
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.comps.cmp(&other.comps))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The monomial basis box I_e = { lambda | 0 <= lambda_i < p^e } with mu_e = (p^e-1, ..., p^e-1).
#[derive(Debug, Clone)]
pub struct ExponentBox {
    q: u64,
    e: u32,
    dim: usize,
}

impl ExponentBox {
    pub fn new(p: u64, e: u32, dim: usize) -> Result<Self> {
        if e == 0 {
            return Err(Error::InvalidConfig("Frobenius level must be >= 1".into()));
        }
        let q = p
            .checked_pow(e)
            .filter(|q| *q <= u32::MAX as u64)
            .ok_or(Error::ExponentOverflow)?;
        Ok(ExponentBox { q, e, dim })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn level(&self) -> u32 {
        self.e
    }

    /// |I_e| = p^{ed}.
    pub fn len(&self) -> Option<u128> {
        (self.q as u128).checked_pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn mu(&self) -> Exponent {
        Exponent::new(vec![(self.q - 1) as u32; self.dim])
    }

    pub fn contains(&self, lambda: &Exponent) -> bool {
        lambda.dim() == self.dim && lambda.components().iter().all(|&c| (c as u64) < self.q)
    }

    /// Lazy odometer over all members, in lexicographic-ascending component order.
    pub fn members(&self) -> impl Iterator<Item = Exponent> + '_ {
        let dim = self.dim;
        let q = self.q as u32;
        let mut cur = Some(vec![0u32; dim]);
        std::iter::from_fn(move || {
            let out = cur.clone()?;
            let c = cur.as_mut().unwrap();
            let mut i = dim;
            loop {
                if i == 0 {
                    cur = None;
                    break;
                }
                i -= 1;
                c[i] += 1;
                if c[i] < q {
                    break;
                }
                c[i] = 0;
            }
            Some(Exponent::new(out))
        })
    }
}

/// A sparse polynomial over F_p. Zero coefficients are never stored; term
/// iteration is deg-lex ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    p: u64,
    dim: usize,
    terms: BTreeMap<Exponent, u64>,
}

impl Polynomial {
    pub fn zero(p: u64, dim: usize) -> Self {
        Polynomial {
            p,
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(p: u64, dim: usize, c: i64) -> Self {
        let mut f = Polynomial::zero(p, dim);
        f.add_term(Exponent::zero(dim), Fp::new(c, p));
        f
    }

    pub fn one(p: u64, dim: usize) -> Self {
        Polynomial::constant(p, dim, 1)
    }

    pub fn monomial(p: u64, exp: Exponent, c: i64) -> Self {
        let dim = exp.dim();
        let mut f = Polynomial::zero(p, dim);
        f.add_term(exp, Fp::new(c, p));
        f
    }

    /// The i-th variable.
    pub fn variable(p: u64, dim: usize, i: usize) -> Self {
        Polynomial::monomial(p, Exponent::unit(dim, i), 1)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_zero())
    }

    pub fn constant_term(&self) -> Fp {
        let c = self
            .terms
            .get(&Exponent::zero(self.dim))
            .copied()
            .unwrap_or(0);
        Fp::from_residue(c, self.p)
    }

    /// A unit of the local ring at the origin: nonzero constant term.
    pub fn is_unit_at_origin(&self) -> bool {
        !self.constant_term().is_zero()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, Fp)> + '_ {
        self.terms
            .iter()
            .map(|(e, c)| (e, Fp::from_residue(*c, self.p)))
    }

    pub fn coefficient(&self, exp: &Exponent) -> Fp {
        Fp::from_residue(self.terms.get(exp).copied().unwrap_or(0), self.p)
    }

    /// Largest term in deg-lex order.
    pub fn leading_term(&self) -> Option<(&Exponent, Fp)> {
        self.terms
            .iter()
            .next_back()
            .map(|(e, c)| (e, Fp::from_residue(*c, self.p)))
    }

    pub fn add_term(&mut self, exp: Exponent, c: Fp) {
        debug_assert_eq!(exp.dim(), self.dim);
        debug_assert_eq!(c.characteristic(), self.p);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c.value());
            }
            Entry::Occupied(mut o) => {
                let s = Fp::from_residue(*o.get(), self.p) + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s.value();
                }
            }
        }
    }

    /// Minimum total degree among terms; `None` encodes +infinity (f = 0).
    pub fn ord_at_origin(&self) -> Option<u32> {
        self.terms.keys().map(Exponent::degree).min()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponent::degree).max()
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if self.p != other.p {
            return Err(Error::CharMismatch {
                left: self.p,
                right: other.p,
            });
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.p, self.dim);
        for (e, c) in self.terms() {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Fp) -> Polynomial {
        let mut out = Polynomial::zero(self.p, self.dim);
        if c.is_zero() {
            return out;
        }
        for (e, a) in self.terms() {
            out.add_term(e.clone(), a * c);
        }
        out
    }

    pub fn mul_term(&self, exp: &Exponent, c: Fp) -> Polynomial {
        let mut out = Polynomial::zero(self.p, self.dim);
        if c.is_zero() {
            return out;
        }
        for (e, a) in self.terms() {
            out.add_term(e.add(exp), a * c);
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = Polynomial::zero(self.p, self.dim);
        let (small, large) = if self.num_terms() <= other.num_terms() {
            (self, other)
        } else {
            (other, self)
        };
        for (e, c) in small.terms() {
            for (e2, c2) in large.terms() {
                out.add_term(e.add(e2), c * c2);
            }
        }
        Ok(out)
    }

    /// f^{p^e} via the Frobenius endomorphism: raise each exponent vector
    /// by the factor p^e, coefficients are fixed by Fermat.
    pub fn frob_power(&self, e: u32) -> Result<Polynomial> {
        if e == 0 {
            return Ok(self.clone());
        }
        let q = self
            .p
            .checked_pow(e)
            .filter(|q| *q <= u32::MAX as u64)
            .ok_or(Error::ExponentOverflow)?;
        let mut out = Polynomial::zero(self.p, self.dim);
        for (exp, c) in self.terms() {
            let scaled: Option<Vec<u32>> = exp
                .components()
                .iter()
                .map(|&a| u32::try_from(a as u64 * q).ok())
                .collect();
            let scaled = scaled.ok_or(Error::ExponentOverflow)?;
            out.add_term(Exponent::new(scaled), c);
        }
        Ok(out)
    }

    /// f^n by splitting n = sum n_i p^i in base p and routing the p^i factors
    /// through `frob_power`.
    pub fn pow(&self, n: u64) -> Result<Polynomial> {
        if n == 0 {
            return Ok(Polynomial::one(self.p, self.dim));
        }
        if self.is_zero() {
            return Ok(Polynomial::zero(self.p, self.dim));
        }
        // Small powers f^k for 0 <= k < p, computed once.
        let mut digits = Vec::new();
        let mut m = n;
        while m > 0 {
            digits.push((m % self.p) as u32);
            m /= self.p;
        }
        let max_digit = *digits.iter().max().unwrap();
        let mut small = Vec::with_capacity(max_digit as usize + 1);
        small.push(Polynomial::one(self.p, self.dim));
        for k in 1..=max_digit {
            let prev = &small[(k - 1) as usize];
            small.push(prev.mul(self)?);
        }
        let mut out = Polynomial::one(self.p, self.dim);
        for (i, &digit) in digits.iter().enumerate() {
            if digit == 0 {
                continue;
            }
            let part = small[digit as usize].frob_power(i as u32)?;
            out = out.mul(&part)?;
        }
        Ok(out)
    }

    /// Canonical variable names: x, y, z for d <= 3, otherwise x1..xd.
    pub fn var_names(dim: usize) -> Vec<String> {
        if dim <= 3 {
            ["x", "y", "z"][..dim].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=dim).map(|i| format!("x{i}")).collect()
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = Polynomial::var_names(self.dim);
        let mut first = true;
        // Descending deg-lex: leading term first.
        for (exp, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            if *c != 1 || exp.is_zero() {
                factors.push(c.to_string());
            }
            for (i, &a) in exp.components().iter().enumerate() {
                match a {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], a)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
