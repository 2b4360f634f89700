//! Exact arithmetic over F_p[x1..xd]: Frobenius decompositions, trace maps,
//! p^e-th root ideals, and test ideals of divisor/ideal pairs computed by
//! ascending root-ideal chains, plus F-pure thresholds, jumping numbers, and
//! perturbation-stability measurements.

pub mod arith;
pub mod error;
pub mod frobenius;
pub mod ideals;
pub mod parse;
pub mod poly;
pub mod stability;
pub mod testideal;

pub use arith::{ceil_ratio, ceil_ratio_u64, parse_ratio, FieldConfig, Fp, Ratio};
pub use error::{Error, Result};
pub use frobenius::{decompose, root_ideal, trace, FrobeniusDecomposition};
pub use ideals::{IdealHandle, DEFAULT_DEGREE_CAP};
pub use parse::{parse_divisor, parse_ideal_generators, parse_polynomial, parse_range};
pub use poly::{deg_lex_compare, Exponent, ExponentBox, Polynomial};
pub use stability::{
    check_perturbation, mult_at_origin, smallest_jumping_number, stability_scan, JumpSearch,
    StabilityReport, StabilityWitness,
};
pub use testideal::{
    fpt_bracket, is_strongly_f_regular, jump_scan, nu, rational_grid, test_ideal,
    test_ideal_divisor, ChainOptions, DivisorSpec, TestIdealReport,
};
