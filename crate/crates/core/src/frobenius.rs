//! Frobenius decomposition over the I_e monomial basis, the trace map as the
//! mu_e-projection, and p^e-th root ideals.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ideals::IdealHandle;
use crate::poly::{Exponent, ExponentBox, Polynomial};

/// The decomposition f = sum_{lambda in I_e} f_lambda^{p^e} x^lambda.
/// Only nonzero parts are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusDecomposition {
    e: u32,
    q: u64,
    p: u64,
    dim: usize,
    parts: BTreeMap<Exponent, Polynomial>,
}

impl FrobeniusDecomposition {
    pub fn level(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn parts(&self) -> impl Iterator<Item = (&Exponent, &Polynomial)> + '_ {
        self.parts.iter()
    }

    pub fn part(&self, lambda: &Exponent) -> Polynomial {
        self.parts
            .get(lambda)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.p, self.dim))
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// Reassemble sum_lambda f_lambda^{p^e} x^lambda.
    pub fn reconstruct(&self) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.p, self.dim);
        for (lambda, part) in &self.parts {
            let lifted = part.frob_power(self.e)?.mul_term(lambda, crate::arith::Fp::one(self.p));
            out = out.add(&lifted)?;
        }
        Ok(out)
    }
}

/// Split every monomial c x^eta of `f` as eta = p^e alpha + beta with beta in
/// I_e; the p^e-th root of c in F_p is c itself.
pub fn decompose(f: &Polynomial, e: u32) -> Result<FrobeniusDecomposition> {
    let p = f.characteristic();
    let dim = f.dim();
    let ebox = ExponentBox::new(p, e, dim)?;
    let q = ebox.q();
    let mut parts: BTreeMap<Exponent, Polynomial> = BTreeMap::new();
    for (eta, c) in f.terms() {
        let mut alpha = Vec::with_capacity(dim);
        let mut beta = Vec::with_capacity(dim);
        for &a in eta.components() {
            alpha.push(a / q as u32);
            beta.push(a % q as u32);
        }
        parts
            .entry(Exponent::new(beta))
            .or_insert_with(|| Polynomial::zero(p, dim))
            .add_term(Exponent::new(alpha), c);
    }
    parts.retain(|_, g| !g.is_zero());
    Ok(FrobeniusDecomposition {
        e,
        q,
        p,
        dim,
        parts,
    })
}

/// The trace map Tr_{F^e} for trivial canonical divisor: the mu_e-component
/// of the Frobenius decomposition.
pub fn trace(f: &Polynomial, e: u32) -> Result<Polynomial> {
    let p = f.characteristic();
    let dim = f.dim();
    let ebox = ExponentBox::new(p, e, dim)?;
    let q = ebox.q() as u32;
    let mut out = Polynomial::zero(p, dim);
    for (eta, c) in f.terms() {
        if eta.components().iter().all(|&a| a % q == q - 1) {
            let alpha: Vec<u32> = eta.components().iter().map(|&a| (a - (q - 1)) / q).collect();
            out.add_term(Exponent::new(alpha), c);
        }
    }
    Ok(out)
}

/// The p^e-th root ideal I_e(J): the smallest ideal I with J contained in
/// I^{[p^e]}. Generated by the decomposition parts of J's generators; no
/// Groebner basis of J is needed.
pub fn root_ideal(j: &IdealHandle, e: u32) -> Result<IdealHandle> {
    if e == 0 {
        return Err(Error::InvalidConfig("Frobenius level must be >= 1".into()));
    }
    let mut gens: Vec<Polynomial> = Vec::new();
    for g in j.generators() {
        let dec = decompose(g, e)?;
        for (_, part) in dec.parts() {
            if !gens.contains(part) {
                gens.push(part.clone());
            }
        }
    }
    Ok(IdealHandle::new(j.characteristic(), j.dim(), gens).with_degree_cap(j.degree_cap()))
}
