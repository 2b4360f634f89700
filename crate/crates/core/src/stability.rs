//! Empirical verification of test-ideal stability under small perturbations:
//! perturbation checks, smallest jumping numbers, and stability scans that
//! measure a verified lower bound for the stability radius delta.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{FieldConfig, Ratio};
use crate::error::{Error, Result};
use crate::ideals::IdealHandle;
use crate::poly::Polynomial;
use crate::testideal::{rational_grid, test_ideal_divisor, ChainOptions, DivisorSpec};

/// mult_P(E) at the origin: sum t_i * ord(f_i). On the regular ambient the
/// multiplicity of div(f) equals the order of f.
pub fn mult_at_origin(e: &DivisorSpec) -> Result<Ratio> {
    let mut total = Ratio::zero();
    for (f, t) in e.parts() {
        let ord = f.ord_at_origin().ok_or(Error::InvalidDivisorComponent)?;
        total += t * Ratio::from_integer(BigInt::from(ord));
    }
    Ok(total)
}

/// True iff tau(Delta + E) = tau(Delta) as global ideals. Capped chains
/// surface as an inconclusive error, never as a silent `false`.
pub fn check_perturbation(
    cfg: &FieldConfig,
    delta: &DivisorSpec,
    e: &DivisorSpec,
    opts: &ChainOptions,
) -> Result<bool> {
    let base = test_ideal_divisor(cfg, delta, opts)?;
    let perturbed = test_ideal_divisor(cfg, &delta.plus(e), opts)?;
    base.settled(opts.e_max)?
        .equals(perturbed.settled(opts.e_max)?)
}

/// Whether two ideals agree after localizing at the origin. Global equality
/// is sufficient; otherwise both may still be trivial locally because a
/// generator is a unit at the origin.
pub fn equal_at_origin(a: &IdealHandle, b: &IdealHandle) -> Result<bool> {
    if a.equals(b)? {
        return Ok(true);
    }
    let trivial_locally = |j: &IdealHandle| -> Result<bool> {
        Ok(j.reduced_gb()?.iter().any(Polynomial::is_unit_at_origin))
    };
    Ok(trivial_locally(a)? && trivial_locally(b)?)
}

/// Result of a smallest-jumping-number search on a denominator-bounded grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JumpSearch {
    /// Least grid parameter where tau strictly drops.
    Found(Ratio),
    /// No drop anywhere on the grid; the true jump exceeds this bound.
    NoneUpTo(Ratio),
}

/// The least s with denominator <= max_den in (0, 1] such that
/// tau(Delta + s div(g)) is strictly smaller than tau(Delta), found by
/// bisection (tau is monotone non-increasing in s).
pub fn smallest_jumping_number(
    cfg: &FieldConfig,
    delta: &DivisorSpec,
    g: &Polynomial,
    max_den: u64,
    opts: &ChainOptions,
) -> Result<JumpSearch> {
    if g.is_zero() || g.is_unit_at_origin() {
        return Err(Error::NotInMaximalIdeal);
    }
    let base = test_ideal_divisor(cfg, delta, opts)?
        .settled(opts.e_max)?
        .clone();
    let grid = rational_grid(&Ratio::zero(), &Ratio::from_integer(1.into()), max_den);
    let drops = |s: &Ratio| -> Result<bool> {
        let d = delta.plus(&DivisorSpec::single(g.clone(), s.clone())?);
        let tau = test_ideal_divisor(cfg, &d, opts)?;
        Ok(!tau.settled(opts.e_max)?.equals(&base)?)
    };
    let last = grid.last().expect("grid non-empty");
    if !drops(last)? {
        return Ok(JumpSearch::NoneUpTo(last.clone()));
    }
    // binary search for the first grid point that drops
    let mut lo = 0usize; // invariant: everything below lo does not drop
    let mut hi = grid.len() - 1; // invariant: grid[hi] drops
    while lo < hi {
        let mid = (lo + hi) / 2;
        if drops(&grid[mid])? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(JumpSearch::Found(grid[lo].clone()))
}

/// One perturbation probe outcome: E = (1/p^n) div(probe).
#[derive(Debug, Clone)]
pub struct StabilityWitness {
    pub probe: Polynomial,
    pub n: u32,
    pub coefficient: Ratio,
    pub ord: u32,
    pub multiplicity: Ratio,
    pub equal: bool,
    pub equal_at_origin: bool,
}

/// Measured stability evidence for a base pair (R, Delta).
#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub base_tau: IdealHandle,
    /// Largest multiplicity verified safe (no jump at or below it), or the
    /// smallest observed jumping multiplicity when a jump was seen.
    pub delta_lower: Ratio,
    pub witnesses: Vec<StabilityWitness>,
    /// Per probe: least tested N with equality for all tested n >= N.
    pub tail_indices: Vec<(Polynomial, Option<u32>)>,
    pub first_jump: Option<(Polynomial, Ratio)>,
}

/// For each probe r and each 1 <= n <= n_max, compare tau(Delta + div(r)/p^n)
/// with tau(Delta), recording ord(r) and the outcome.
pub fn stability_scan(
    cfg: &FieldConfig,
    delta: &DivisorSpec,
    probes: &[Polynomial],
    n_max: u32,
    opts: &ChainOptions,
) -> Result<StabilityReport> {
    if probes.is_empty() {
        return Err(Error::EmptyProbes);
    }
    for r in probes {
        if r.is_zero() || r.is_unit_at_origin() {
            return Err(Error::NotInMaximalIdeal);
        }
    }
    let base_tau = test_ideal_divisor(cfg, delta, opts)?
        .settled(opts.e_max)?
        .clone();
    let mut witnesses = Vec::new();
    let mut tail_indices = Vec::new();
    let mut first_jump: Option<(Polynomial, Ratio)> = None;
    for r in probes {
        let ord = r.ord_at_origin().expect("probe nonzero");
        let mut tail: Option<u32> = None;
        for n in 1..=n_max {
            let coefficient = Ratio::new(1.into(), BigInt::from(cfg.p).pow(n));
            let pert = DivisorSpec::single(r.clone(), coefficient.clone())?;
            let tau = test_ideal_divisor(cfg, &delta.plus(&pert), opts)?;
            let tau = tau.settled(opts.e_max)?;
            let equal = tau.equals(&base_tau)?;
            let local = equal || equal_at_origin(tau, &base_tau)?;
            let multiplicity = &coefficient * Ratio::from_integer(BigInt::from(ord));
            if equal {
                tail.get_or_insert(n);
            } else {
                tail = None;
                if first_jump.is_none() {
                    first_jump = Some((r.clone(), coefficient.clone()));
                }
            }
            witnesses.push(StabilityWitness {
                probe: r.clone(),
                n,
                coefficient,
                ord,
                multiplicity,
                equal,
                equal_at_origin: local,
            });
        }
        tail_indices.push((r.clone(), tail));
    }
    let jumps: Vec<&Ratio> = witnesses
        .iter()
        .filter(|w| !w.equal)
        .map(|w| &w.multiplicity)
        .collect();
    let delta_lower = if let Some(min_jump) = jumps.iter().min() {
        (*min_jump).clone()
    } else {
        witnesses
            .iter()
            .map(|w| w.multiplicity.clone())
            .max()
            .expect("witnesses non-empty")
    };
    Ok(StabilityReport {
        base_tau,
        delta_lower,
        witnesses,
        tail_indices,
        first_jump,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_divisor, parse_polynomial};
    use num_traits::One;

    fn cfg(p: u64, d: usize) -> FieldConfig {
        FieldConfig::new(p, d).unwrap()
    }

    fn ratio(n: i64, d: i64) -> Ratio {
        Ratio::new(n.into(), d.into())
    }

    fn poly(src: &str, p: u64, d: usize) -> Polynomial {
        parse_polynomial(src, p, d).unwrap()
    }

    fn div(src: &str, p: u64, d: usize) -> DivisorSpec {
        parse_divisor(src, p, d).unwrap()
    }

    #[test]
    fn mult_examples() {
        assert_eq!(
            mult_at_origin(&div("1/2*div(x^2 + y^3)", 7, 2)).unwrap(),
            Ratio::one()
        );
        assert_eq!(mult_at_origin(&DivisorSpec::zero()).unwrap(), Ratio::zero());
        assert_eq!(
            mult_at_origin(&div("1/3*div(x*y); 1/2*div(x)", 7, 2)).unwrap(),
            ratio(7, 6)
        );
    }

    #[test]
    fn check_perturbation_examples() {
        let c = cfg(3, 2);
        let opts = ChainOptions::new(5);
        assert!(check_perturbation(
            &c,
            &div("1/2*div(x)", 3, 2),
            &div("1/3*div(y)", 3, 2),
            &opts
        )
        .unwrap());
        assert!(!check_perturbation(
            &c,
            &DivisorSpec::zero(),
            &div("1*div(x)", 3, 2),
            &opts
        )
        .unwrap());
        assert!(check_perturbation(
            &c,
            &div("1/2*div(x)", 3, 2),
            &DivisorSpec::zero(),
            &opts
        )
        .unwrap());
    }

    #[test]
    fn smallest_jumping_number_of_a_coordinate() {
        let c = cfg(5, 2);
        let opts = ChainOptions::new(4);
        let got =
            smallest_jumping_number(&c, &DivisorSpec::zero(), &poly("x", 5, 2), 10, &opts).unwrap();
        assert_eq!(got, JumpSearch::Found(Ratio::one()));
        // shifted spectrum: base (1)*div(x), probe x again jumps at 1
        let got = smallest_jumping_number(&c, &div("1*div(x)", 5, 2), &poly("x", 5, 2), 8, &opts)
            .unwrap();
        assert_eq!(got, JumpSearch::Found(Ratio::one()));
    }

    #[test]
    fn perturbation_is_monotone() {
        // componentwise-smaller perturbations stay safe
        let c = cfg(3, 2);
        let opts = ChainOptions::new(5);
        let big = div("1/3*div(y); 1/9*div(x + y)", 3, 2);
        let small = div("1/9*div(y)", 3, 2);
        let base = div("1/2*div(x)", 3, 2);
        assert!(check_perturbation(&c, &base, &big, &opts).unwrap());
        assert!(check_perturbation(&c, &base, &small, &opts).unwrap());
    }

    #[test]
    fn stability_scan_coordinate_probe() {
        let c = cfg(2, 2);
        let opts = ChainOptions::new(6);
        let report =
            stability_scan(&c, &DivisorSpec::zero(), &[poly("x", 2, 2)], 4, &opts).unwrap();
        assert!(report.witnesses.iter().all(|w| w.equal));
        assert_eq!(report.tail_indices[0].1, Some(1));
        assert!(report.first_jump.is_none());
        assert_eq!(report.delta_lower, ratio(1, 2));
    }

    #[test]
    fn stability_scan_records_jumps() {
        // full div(x) on a trivial base is a jump with multiplicity 1
        let c = cfg(3, 2);
        let opts = ChainOptions::new(5);
        let report = stability_scan(
            &c,
            &div("1*div(x)", 3, 2),
            &[poly("x", 3, 2), poly("x + y", 3, 2)],
            3,
            &opts,
        )
        .unwrap();
        // small perturbations of the shifted base stay equal
        assert!(report.witnesses.iter().all(|w| w.equal));
        assert!(stability_scan(&c, &DivisorSpec::zero(), &[], 3, &opts).is_err());
    }

    #[test]
    fn asymp_jump_dichotomy_for_ideal_powers() {
        // tau jumps at some finite t iff the ideal sits inside the maximal
        // ideal; checked over monomial ideals via their generators
        let c = cfg(3, 2);
        let opts = ChainOptions::new(5);
        for (gens, expects_jump) in [("x, y", true), ("x^2, y", true), ("x, 1", false)] {
            let a = crate::ideals::IdealHandle::new(
                3,
                2,
                crate::parse::parse_ideal_generators(gens, 3, 2).unwrap(),
            );
            let inside_m = a
                .generators()
                .iter()
                .all(|g| !g.is_unit_at_origin());
            assert_eq!(inside_m, expects_jump);
            let tau = crate::testideal::test_ideal(&c, &DivisorSpec::zero(), &a, &ratio(3, 1), &opts)
                .unwrap();
            let dropped = !tau.settled(opts.e_max).unwrap().is_unit_ideal().unwrap();
            assert_eq!(dropped, expects_jump);
        }
    }

    #[test]
    fn equal_at_origin_distinguishes_global_difference() {
        let a = crate::ideals::IdealHandle::unit(5, 2);
        let b = crate::ideals::IdealHandle::principal(poly("x + 1", 5, 2));
        assert!(equal_at_origin(&a, &b).unwrap());
        let m = crate::ideals::IdealHandle::principal(poly("x", 5, 2));
        assert!(!equal_at_origin(&a, &m).unwrap());
    }
}
