//! Test ideals tau(R, Delta, a^t) over R = F_p[x1..xd] via ascending
//! root-ideal chains; nu-functions, F-pure threshold brackets, jump scans.
//!
//! Chain convention: tau_n = I_n( prod_i f_i^{ceil(t_i p^n)} * a^{ceil(t p^n)} ),
//! ascending in n, detected stable by consecutive equality. The exponent is
//! ceil(t * p^n), not ceil(t * (p^n - 1)); the phi-principal cross-check
//! guards this choice.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{ceil_ratio_u64, FieldConfig, Ratio};
use crate::error::{Error, Result};
use crate::frobenius::root_ideal;
use crate::ideals::{IdealHandle, DEFAULT_DEGREE_CAP};
use crate::poly::Polynomial;

/// A formal effective combination sum_i t_i * div(f_i) with exact rational
/// coefficients. The ambient canonical divisor is trivial.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DivisorSpec {
    parts: Vec<(Polynomial, Ratio)>,
}

impl DivisorSpec {
    pub fn zero() -> Self {
        DivisorSpec { parts: Vec::new() }
    }

    pub fn single(f: Polynomial, t: Ratio) -> Result<Self> {
        DivisorSpec::zero().with_part(f, t)
    }

    /// Append `t * div(f)`. Requires `f` nonzero and a non-unit, `t >= 0`.
    pub fn with_part(mut self, f: Polynomial, t: Ratio) -> Result<Self> {
        if f.is_zero() || f.is_constant() {
            return Err(Error::InvalidDivisorComponent);
        }
        if t.is_negative() {
            return Err(Error::NegativeDivisorCoefficient);
        }
        if !t.is_zero() {
            self.parts.push((f, t));
        }
        Ok(self)
    }

    pub fn plus(&self, other: &DivisorSpec) -> DivisorSpec {
        let mut parts = self.parts.clone();
        parts.extend(other.parts.iter().cloned());
        DivisorSpec { parts }
    }

    pub fn parts(&self) -> &[(Polynomial, Ratio)] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }
}

/// Knobs for the ascending chain.
#[derive(Debug, Clone)]
pub struct ChainOptions {
    /// Hard cap on the chain level n.
    pub e_max: u32,
    /// Consecutive equal steps required before declaring stabilization
    /// (1 = stop at the first equality; the default re-confirms twice more).
    pub confirm_window: u32,
    pub degree_cap: u32,
}

impl ChainOptions {
    pub fn new(e_max: u32) -> Self {
        ChainOptions {
            e_max,
            confirm_window: 3,
            degree_cap: DEFAULT_DEGREE_CAP,
        }
    }

    /// Chain cost grows like p^{nd}; scale the default depth down with p.
    pub fn for_characteristic(p: u64) -> Self {
        let e_max = match p {
            2 => 6,
            3 => 5,
            5 => 4,
            _ => 4,
        };
        ChainOptions::new(e_max)
    }

    pub fn with_confirm_window(mut self, w: u32) -> Self {
        self.confirm_window = w.max(1);
        self
    }

    pub fn with_degree_cap(mut self, cap: u32) -> Self {
        self.degree_cap = cap;
        self
    }
}

/// Outcome of a chain run.
#[derive(Debug, Clone)]
pub struct TestIdealReport {
    pub ideal: IdealHandle,
    /// First chain level whose value never changed afterwards.
    pub stabilized_at: u32,
    pub chain: Vec<IdealHandle>,
    /// True when the chain hit `e_max` without a single repeated step.
    pub capped: bool,
}

impl TestIdealReport {
    /// The stabilized ideal, or an error when the chain was capped.
    pub fn settled(&self, e_max: u32) -> Result<&IdealHandle> {
        if self.capped {
            Err(Error::Inconclusive { e_max })
        } else {
            Ok(&self.ideal)
        }
    }
}

fn chain_generators(
    cfg: &FieldConfig,
    delta: &DivisorSpec,
    a: &IdealHandle,
    t: &Ratio,
    n: u32,
    cap: u32,
) -> Result<IdealHandle> {
    let pn = Ratio::from_integer(BigInt::from(cfg.p).pow(n));
    let mut h = Polynomial::one(cfg.p, cfg.d);
    for (f, ti) in delta.parts() {
        let m = ceil_ratio_u64(&(ti * &pn))?;
        h = h.mul(&f.pow(m)?)?;
    }
    let ideal_exp = ceil_ratio_u64(&(t * &pn))?;
    let a_pow = a.power(ideal_exp)?;
    let gens: Vec<Polynomial> = a_pow
        .generators()
        .iter()
        .map(|g| h.mul(g))
        .collect::<Result<Vec<_>>>()?;
    let gens = if gens.is_empty() && ideal_exp == 0 {
        vec![h]
    } else {
        gens
    };
    Ok(IdealHandle::new(cfg.p, cfg.d, gens).with_degree_cap(cap))
}

/// tau(R, Delta, a^t) by the ascending root-ideal chain.
pub fn test_ideal(
    cfg: &FieldConfig,
    delta: &DivisorSpec,
    a: &IdealHandle,
    t: &Ratio,
    opts: &ChainOptions,
) -> Result<TestIdealReport> {
    if t.is_negative() {
        return Err(Error::NegativeDivisorCoefficient);
    }
    // tau(X, Delta, (0)^t) = (0) for t > 0
    if a.is_zero_ideal() && !t.is_zero() {
        return Ok(TestIdealReport {
            ideal: IdealHandle::zero(cfg.p, cfg.d),
            stabilized_at: 0,
            chain: Vec::new(),
            capped: false,
        });
    }
    let mut chain: Vec<IdealHandle> = Vec::new();
    let mut stabilized_at: Option<u32> = None;
    let mut consecutive_equal = 0u32;
    for n in 1..=opts.e_max {
        let gens = chain_generators(cfg, delta, a, t, n, opts.degree_cap)?;
        let tau_n = root_ideal(&gens, n)?;
        if let Some(prev) = chain.last() {
            assert!(
                prev.is_subset_of(&tau_n)?,
                "test-ideal chain is not ascending at level {n}"
            );
            if prev.equals(&tau_n)? {
                if stabilized_at.is_none() {
                    stabilized_at = Some(n - 1);
                }
                consecutive_equal += 1;
                if consecutive_equal >= opts.confirm_window {
                    chain.push(tau_n);
                    break;
                }
            } else {
                stabilized_at = None;
                consecutive_equal = 0;
            }
        }
        chain.push(tau_n);
    }
    let capped = stabilized_at.is_none();
    let ideal = chain.last().expect("e_max >= 1").clone();
    Ok(TestIdealReport {
        ideal,
        stabilized_at: stabilized_at.unwrap_or(opts.e_max),
        chain,
        capped,
    })
}

/// tau(R, Delta) with trivial ideal part.
pub fn test_ideal_divisor(
    cfg: &FieldConfig,
    delta: &DivisorSpec,
    opts: &ChainOptions,
) -> Result<TestIdealReport> {
    let unit = IdealHandle::unit(cfg.p, cfg.d).with_degree_cap(opts.degree_cap);
    test_ideal(cfg, delta, &unit, &Ratio::zero(), opts)
}

/// nu_f(p^e): the largest r with f^r outside (x1^{p^e}, ..., xd^{p^e}).
pub fn nu(f: &Polynomial, e: u32) -> Result<u64> {
    if f.is_unit_at_origin() {
        return Err(Error::UnitAtOrigin);
    }
    if f.is_zero() {
        return Ok(0);
    }
    let q = f
        .characteristic()
        .checked_pow(e)
        .ok_or(Error::ExponentOverflow)?;
    // a monomial lies outside the bracket ideal iff all exponents are < p^e
    let outside = |g: &Polynomial| {
        g.terms()
            .any(|(exp, _)| exp.components().iter().all(|&a| (a as u64) < q))
    };
    let mut r = 0u64;
    let mut power = f.clone();
    while outside(&power) {
        r += 1;
        power = power.mul(f)?;
    }
    Ok(r)
}

/// The bracket (nu_e / p^e, (nu_e + 1) / p^e] containing the F-pure threshold,
/// at e = e_max.
pub fn fpt_bracket(f: &Polynomial, e_max: u32) -> Result<(Ratio, Ratio)> {
    let v = nu(f, e_max)?;
    let q = BigInt::from(f.characteristic()).pow(e_max);
    Ok((
        Ratio::new(BigInt::from(v), q.clone()),
        Ratio::new(BigInt::from(v + 1), q),
    ))
}

/// All reduced rationals in (lo, hi] with denominator <= max_den, ascending.
pub fn rational_grid(lo: &Ratio, hi: &Ratio, max_den: u64) -> Vec<Ratio> {
    let mut grid = BTreeSet::new();
    for den in 1..=max_den {
        let d = BigInt::from(den);
        let mut num = (lo * &d).floor().to_integer();
        loop {
            let s = Ratio::new(num.clone(), d.clone());
            if &s > hi {
                break;
            }
            if &s > lo {
                grid.insert(s);
            }
            num += 1;
        }
    }
    grid.into_iter().collect()
}

/// tau(Delta + s * div(g)) over the rational grid; returns the parameters
/// where the ideal strictly drops.
pub fn jump_scan(
    cfg: &FieldConfig,
    delta: &DivisorSpec,
    g: &Polynomial,
    range: (&Ratio, &Ratio),
    max_den: u64,
    opts: &ChainOptions,
) -> Result<Vec<Ratio>> {
    if g.is_zero() || g.is_unit_at_origin() {
        return Err(Error::NotInMaximalIdeal);
    }
    let (lo, hi) = range;
    if lo.is_negative() || lo >= hi {
        return Err(Error::InvalidRange);
    }
    let tau_at = |s: &Ratio| -> Result<IdealHandle> {
        let d = delta.plus(&DivisorSpec::single(g.clone(), s.clone())?);
        Ok(test_ideal_divisor(cfg, &d, opts)?
            .settled(opts.e_max)?
            .clone())
    };
    let mut prev = if lo.is_zero() {
        test_ideal_divisor(cfg, delta, opts)?
            .settled(opts.e_max)?
            .clone()
    } else {
        tau_at(lo)?
    };
    let mut jumps = Vec::new();
    for s in rational_grid(lo, hi, max_den) {
        let cur = tau_at(&s)?;
        if !cur.equals(&prev)? {
            assert!(
                cur.is_subset_of(&prev)?,
                "tau must shrink monotonically in the coefficient"
            );
            jumps.push(s);
        }
        prev = cur;
    }
    Ok(jumps)
}

/// Strong F-regularity of the pair (R, Delta): tau(R, Delta) = (1).
pub fn is_strongly_f_regular(
    cfg: &FieldConfig,
    delta: &DivisorSpec,
    opts: &ChainOptions,
) -> Result<bool> {
    let report = test_ideal_divisor(cfg, delta, opts)?;
    report.settled(opts.e_max)?.is_unit_ideal()
}
