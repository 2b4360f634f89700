//! Acceptance gate: one test per criterion, each printing a single
//! `ACCEPTANCE <n> ... pass` line. All equalities are exact; the only
//! tolerances are the stated wall-clock budgets.

use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use frobtau::{
    decompose, fpt_bracket, jump_scan, nu, parse_divisor, parse_polynomial,
    root_ideal, smallest_jumping_number, stability_scan, test_ideal_divisor, trace, ChainOptions,
    DivisorSpec, Exponent, FieldConfig, Fp, IdealHandle, JumpSearch, Polynomial, Ratio,
};

fn random_poly(rng: &mut ChaCha8Rng, p: u64, dim: usize, max_deg: u32, max_terms: u32) -> Polynomial {
    let mut f = Polynomial::zero(p, dim);
    let n_terms = rng.gen_range(1..=max_terms);
    for _ in 0..n_terms {
        let comps: Vec<u32> = (0..dim).map(|_| rng.gen_range(0..=max_deg)).collect();
        let c = rng.gen_range(0..p as i64);
        f.add_term(Exponent::new(comps), Fp::new(c, p));
    }
    f
}

/// Nonzero, non-constant, vanishing at the origin.
fn random_in_m(rng: &mut ChaCha8Rng, p: u64, dim: usize, max_deg: u32) -> Polynomial {
    loop {
        let mut f = random_poly(rng, p, dim, max_deg, 3);
        let c = f.constant_term();
        f.add_term(Exponent::zero(dim), -c);
        if !f.is_zero() && !f.is_constant() {
            return f;
        }
    }
}

fn ratio(n: i64, d: i64) -> Ratio {
    Ratio::new(n.into(), d.into())
}

#[test]
fn criterion_1_decomposition_roundtrip() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut count = 0;
    while count < 500 {
        let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
        let d = rng.gen_range(1..=3);
        let e = rng.gen_range(1..=2);
        let f = random_poly(&mut rng, p, d, 10, 6);
        let dec = decompose(&f, e).unwrap();
        assert_eq!(dec.reconstruct().unwrap(), f);
        count += 1;
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!("ACCEPTANCE 1 (decomposition roundtrip, 500 instances, {elapsed:?}): pass");
}

#[test]
fn criterion_2_trace_semilinearity_and_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for _ in 0..200 {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let e = rng.gen_range(1..=2);
        let f = random_poly(&mut rng, p, 2, 10, 6);
        let g = random_poly(&mut rng, p, 2, 3, 3);
        let lhs = trace(&g.frob_power(e).unwrap().mul(&f).unwrap(), e).unwrap();
        let rhs = g.mul(&trace(&f, e).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
    for _ in 0..200 {
        let p = [2u64, 3][rng.gen_range(0..2)];
        let f = random_poly(&mut rng, p, 2, 12, 6);
        let (e1, e2) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
        let lhs = trace(&trace(&f, e1).unwrap(), e2).unwrap();
        assert_eq!(lhs, trace(&f, e1 + e2).unwrap());
    }
    println!("ACCEPTANCE 2 (trace semilinearity + composition, 200 instances each): pass");
}

#[test]
fn criterion_3_root_ideal_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for _ in 0..200 {
        let p = [2u64, 3][rng.gen_range(0..2)];
        let e = rng.gen_range(1..=2);
        let j = IdealHandle::new(
            p,
            2,
            vec![
                random_poly(&mut rng, p, 2, 3, 3),
                random_poly(&mut rng, p, 2, 3, 3),
            ],
        )
        .with_degree_cap(512);
        let root = root_ideal(&j, e).unwrap();
        // J is inside the bracket power of its root
        assert!(j.is_subset_of(&root.bracket_power(e).unwrap().with_degree_cap(512)).unwrap());
        // taking the root undoes the bracket power
        let back = root_ideal(&j.bracket_power(e).unwrap().with_degree_cap(512), e).unwrap();
        assert!(back.equals(&j).unwrap());
        // monotonicity: J subset J + K implies roots nest
        let k = IdealHandle::new(p, 2, vec![random_poly(&mut rng, p, 2, 3, 3)]);
        let bigger = root_ideal(&j.sum(&k), e).unwrap();
        assert!(root.is_subset_of(&bigger).unwrap());
        // skew-multiplicativity: I_e(h^{p^e} g) = h * I_e(g)
        let h = random_in_m(&mut rng, p, 2, 2);
        let g = random_poly(&mut rng, p, 2, 3, 3);
        let lhs = root_ideal(
            &IdealHandle::principal(h.frob_power(e).unwrap().mul(&g).unwrap()),
            e,
        )
        .unwrap();
        let rhs = IdealHandle::principal(h.clone())
            .product(&root_ideal(&IdealHandle::principal(g), e).unwrap())
            .unwrap();
        assert!(lhs.equals(&rhs).unwrap());
    }
    println!("ACCEPTANCE 3 (root-ideal axioms, 200 instances): pass");
}

#[test]
fn criterion_4_cartier_twist_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let mut conclusive = 0;
    while conclusive < 50 {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let cfg = FieldConfig::new(p, 2).unwrap();
        let opts = ChainOptions::for_characteristic(p);
        let f = random_in_m(&mut rng, p, 2, 2);
        let t = ratio(rng.gen_range(0..3), rng.gen_range(1..4));
        let delta = DivisorSpec::single(random_in_m(&mut rng, p, 2, 2), t).unwrap();
        let twisted = delta.clone().with_part(f.clone(), ratio(1, 1)).unwrap();
        let lhs = test_ideal_divisor(&cfg, &twisted, &opts).unwrap();
        let rhs = test_ideal_divisor(&cfg, &delta, &opts).unwrap();
        if lhs.capped || rhs.capped {
            continue;
        }
        let expected = IdealHandle::principal(f).product(&rhs.ideal).unwrap();
        assert!(lhs.ideal.equals(&expected).unwrap());
        conclusive += 1;
    }
    println!("ACCEPTANCE 4 (Cartier twist, 50 conclusive instances, p in {{2,3,5}}): pass");
}

#[test]
fn criterion_5_phi_principal_cross_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let mut conclusive = 0;
    while conclusive < 50 {
        let p = [2u64, 3][rng.gen_range(0..2)];
        let cfg = FieldConfig::new(p, 2).unwrap();
        let opts = ChainOptions::for_characteristic(p);
        let r = random_in_m(&mut rng, p, 2, 3);
        let e = rng.gen_range(1..=2u32);
        let q = (p as i64).pow(e);
        let delta = DivisorSpec::single(r.clone(), ratio(1, q)).unwrap();
        let tau = test_ideal_divisor(&cfg, &delta, &opts).unwrap();
        if tau.capped {
            continue;
        }
        let direct = root_ideal(&IdealHandle::principal(r), e).unwrap();
        assert!(tau.ideal.equals(&direct).unwrap());
        conclusive += 1;
    }
    println!("ACCEPTANCE 5 (phi-principal cross-check, 50 conclusive instances): pass");
}

#[test]
fn criterion_6_cusp_golden_values() {
    let start = Instant::now();
    let cusp = parse_polynomial("x^2 + y^3", 7, 2).unwrap();
    // nu at e=1 against the exhaustive-expansion oracle
    assert_eq!(nu(&cusp, 1).unwrap(), 5);
    let mut power = Polynomial::one(7, 2);
    let mut oracle = 0;
    for r in 1..=8u64 {
        power = power.mul(&cusp).unwrap();
        let outside = power
            .terms()
            .any(|(exp, _)| exp.components().iter().all(|&a| a < 7));
        if outside {
            oracle = r;
        }
    }
    assert_eq!(oracle, 5);
    // bracket at e=1, refined at e=2 to contain 5/6
    assert_eq!(fpt_bracket(&cusp, 1).unwrap(), (ratio(5, 7), ratio(6, 7)));
    let (lo, hi) = fpt_bracket(&cusp, 2).unwrap();
    assert_eq!((lo.clone(), hi.clone()), (ratio(40, 49), ratio(41, 49)));
    assert!(lo < ratio(5, 6) && ratio(5, 6) <= hi);
    // smallest jumping number on the denominator-42 grid
    let cfg = FieldConfig::new(7, 2).unwrap();
    let opts = ChainOptions::for_characteristic(7);
    let found = smallest_jumping_number(&cfg, &DivisorSpec::zero(), &cusp, 42, &opts).unwrap();
    assert_eq!(found, JumpSearch::Found(ratio(5, 6)));
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!("ACCEPTANCE 6 (cusp golden values over F_7, {elapsed:?}): pass");
}

#[test]
fn criterion_7_main_theorem_tail_property() {
    // probes of orders 1, 2, 3
    let scan_case = |p: u64, divisor: &str, probe_srcs: &[&str]| {
        let cfg = FieldConfig::new(p, 2).unwrap();
        let opts = ChainOptions::for_characteristic(p);
        let delta = parse_divisor(divisor, p, 2).unwrap();
        let probes: Vec<Polynomial> = probe_srcs
            .iter()
            .map(|s| parse_polynomial(s, p, 2).unwrap())
            .collect();
        let report = stability_scan(&cfg, &delta, &probes, 3, &opts).unwrap();
        for (probe, tail) in &report.tail_indices {
            let n0 = tail.unwrap_or_else(|| panic!("no equal tail for probe {probe}"));
            assert!(n0 <= 3, "tail starts late ({n0}) for probe {probe}");
        }
        // the equal-tail is monotone: once equal, equal for every larger n
        for probe in &probes {
            let mut seen_equal = false;
            for w in report.witnesses.iter().filter(|w| &w.probe == probe) {
                if seen_equal {
                    assert!(w.equal, "equality lost at n={} for probe {probe}", w.n);
                }
                seen_equal |= w.equal;
            }
        }
    };
    scan_case(3, "", &["x", "x^2 + x*y", "x^3 + y^3"]);
    scan_case(3, "1/2*div(x)", &["x", "x^2 + x*y", "x^3 + y^3"]);
    scan_case(7, "5/6*div(x^2 + y^3)", &["y", "x*y", "y^3"]);
    println!("ACCEPTANCE 7 (perturbation equal-tail, 3 bases x 3 probes, N(r) <= 3): pass");
}

#[test]
fn criterion_8_right_continuity_at_jumps() {
    let cusp = parse_polynomial("x^2 + y^3", 7, 2).unwrap();
    let cfg = FieldConfig::new(7, 2).unwrap();
    let opts = ChainOptions::for_characteristic(7);
    let zero = DivisorSpec::zero();
    let jumps = jump_scan(
        &cfg,
        &zero,
        &cusp,
        (&ratio(0, 1), &ratio(1, 1)),
        12,
        &opts,
    )
    .unwrap();
    assert_eq!(jumps, vec![ratio(5, 6), ratio(1, 1)]);
    let tau_at = |s: Ratio| {
        let d = DivisorSpec::single(cusp.clone(), s).unwrap();
        test_ideal_divisor(&cfg, &d, &opts)
            .unwrap()
            .settled(opts.e_max)
            .unwrap()
            .clone()
    };
    // keep the probe points on denominators whose chains settle quickly
    let eps = ratio(1, 42);
    for s in jumps {
        let at = tau_at(s.clone());
        let right = tau_at(&s + &eps);
        let left = tau_at(&s - &eps);
        // constant on [s, s + eps), strictly below the value just left of s
        assert!(at.equals(&right).unwrap(), "not right-continuous at {s}");
        assert!(at.is_subset_of(&left).unwrap() && !at.equals(&left).unwrap());
    }
    println!("ACCEPTANCE 8 (right-continuity + monotone drop at every found jump): pass");
}

#[test]
fn criterion_9_deterministic_json_results() {
    let invocations: &[&[&str]] = &[
        &["decompose", "-p", "2", "-d", "2", "-e", "1", "x^3+x*y^2", "--json"],
        &["trace", "-p", "3", "-d", "2", "-e", "2", "x^8*y^8 + x^2", "--json"],
        &["root", "-p", "3", "-d", "2", "-e", "1", "x^5, x^2*y^3", "--json"],
        &["testideal", "-p", "7", "-d", "2", "--divisor", "5/6*div(x^2+y^3)", "--json"],
        &["fpt", "-p", "7", "-d", "2", "--emax", "2", "x^2+y^3", "--json"],
        &["jumps", "-p", "5", "-d", "2", "x", "--max-den", "6", "--json"],
        &["check", "-p", "3", "-d", "2", "--base", "1/2*div(x)", "--pert", "1/3*div(y)", "--json"],
        &["scan", "-p", "2", "-d", "2", "--probe", "x", "--probe", "x*y", "--nmax", "2", "--json"],
        &["gb", "-p", "5", "-d", "2", "x^2 + y, x*y + x", "--json"],
    ];
    for args in invocations {
        let result_field = || {
            let out = Command::new(env!("CARGO_BIN_EXE_frobtau"))
                .args(*args)
                .output()
                .expect("binary runs");
            assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
            let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
            serde_json::to_vec(&v["result"]).unwrap()
        };
        assert_eq!(result_field(), result_field(), "nondeterministic: {args:?}");
    }
    println!("ACCEPTANCE 9 (byte-identical JSON result fields across reruns): pass");
}
