//! Finitely generated ideals with a Buchberger Groebner engine.
//!
//! The reduced Groebner basis w.r.t. deg-lex is the canonical form: it is
//! unique, so ideal equality is basis equality term-for-term.

use std::sync::OnceLock;

use crate::arith::Fp;
use crate::error::{Error, Result};
use crate::poly::{Exponent, Polynomial};

pub const DEFAULT_DEGREE_CAP: u32 = 64;

/// A finitely generated ideal of F_p[x1..xd]. The reduced Groebner basis is
/// computed lazily and cached; a handle is immutable once constructed.
#[derive(Debug, Clone)]
pub struct IdealHandle {
    p: u64,
    dim: usize,
    generators: Vec<Polynomial>,
    degree_cap: u32,
    gb: OnceLock<Result<Vec<Polynomial>>>,
}

impl IdealHandle {
    /// Build an ideal from generators; zero generators are dropped. The zero
    /// ideal is the empty generator list.
    pub fn new(p: u64, dim: usize, generators: Vec<Polynomial>) -> Self {
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        IdealHandle {
            p,
            dim,
            generators,
            degree_cap: DEFAULT_DEGREE_CAP,
            gb: OnceLock::new(),
        }
    }

    pub fn zero(p: u64, dim: usize) -> Self {
        IdealHandle::new(p, dim, Vec::new())
    }

    pub fn unit(p: u64, dim: usize) -> Self {
        IdealHandle::new(p, dim, vec![Polynomial::one(p, dim)])
    }

    pub fn principal(f: Polynomial) -> Self {
        IdealHandle::new(f.characteristic(), f.dim(), vec![f])
    }

    pub fn with_degree_cap(mut self, cap: u32) -> Self {
        self.degree_cap = cap;
        self.gb = OnceLock::new();
        self
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// The unique reduced deg-lex Groebner basis: monic leading coefficients,
    /// no leading term divides another, every tail term in normal form.
    pub fn reduced_gb(&self) -> Result<&[Polynomial]> {
        self.gb
            .get_or_init(|| buchberger(self.p, self.dim, &self.generators, self.degree_cap))
            .as_deref()
            .map_err(Clone::clone)
    }

    /// Deg-lex normal form of `f` modulo the reduced basis; zero iff `f` is a member.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        Ok(normal_form(f, self.reduced_gb()?))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }

    /// Containment primitive: every generator of `self` reduces to zero mod `other`.
    pub fn is_subset_of(&self, other: &IdealHandle) -> Result<bool> {
        for g in &self.generators {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Canonical-form equality of reduced Groebner bases.
    pub fn equals(&self, other: &IdealHandle) -> Result<bool> {
        Ok(self.reduced_gb()? == other.reduced_gb()?)
    }

    pub fn is_unit_ideal(&self) -> Result<bool> {
        let gb = self.reduced_gb()?;
        Ok(gb.len() == 1 && gb[0].is_constant())
    }

    pub fn sum(&self, other: &IdealHandle) -> IdealHandle {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        IdealHandle::new(self.p, self.dim, gens).with_degree_cap(self.degree_cap)
    }

    pub fn product(&self, other: &IdealHandle) -> Result<IdealHandle> {
        let mut gens = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                let ab = a.mul(b)?;
                if !gens.contains(&ab) {
                    gens.push(ab);
                }
            }
        }
        Ok(IdealHandle::new(self.p, self.dim, gens).with_degree_cap(self.degree_cap))
    }

    /// J^n with the empty-product convention J^0 = (1).
    pub fn power(&self, n: u64) -> Result<IdealHandle> {
        let mut acc = IdealHandle::unit(self.p, self.dim).with_degree_cap(self.degree_cap);
        for _ in 0..n {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Bracket power J^{[p^e]}: generator-wise p^e-th powers (Frobenius is
    /// flat over the regular ambient, so generators suffice).
    pub fn bracket_power(&self, e: u32) -> Result<IdealHandle> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.frob_power(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(IdealHandle::new(self.p, self.dim, gens).with_degree_cap(self.degree_cap))
    }

    /// Canonical generator strings: the reduced basis in ascending deg-lex order.
    pub fn canonical_strings(&self) -> Result<Vec<String>> {
        Ok(self.reduced_gb()?.iter().map(|g| g.to_string()).collect())
    }
}

/// Full deg-lex normal form of `f` with respect to `basis`.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let p = f.characteristic();
    let dim = f.dim();
    let mut work = f.clone();
    let mut rem = Polynomial::zero(p, dim);
    'outer: while let Some((lt, lc)) = work.leading_term() {
        let lt = lt.clone();
        for g in basis {
            let (glt, glc) = match g.leading_term() {
                Some(t) => t,
                None => continue,
            };
            if glt.divides(&lt) {
                let shift = lt.checked_sub(glt).expect("divisibility checked");
                let c = lc * glc.inverse().expect("leading coefficient nonzero");
                work = work
                    .sub(&g.mul_term(&shift, c))
                    .expect("compatible operands");
                continue 'outer;
            }
        }
        // leading term irreducible: move it to the remainder
        rem.add_term(lt.clone(), lc);
        work.add_term(lt, -lc);
    }
    rem
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (flt, flc) = f.leading_term().expect("nonzero");
    let (glt, glc) = g.leading_term().expect("nonzero");
    let lcm = flt.lcm(glt);
    let fm = f.mul_term(
        &lcm.checked_sub(flt).unwrap(),
        flc.inverse().expect("nonzero"),
    );
    let gm = g.mul_term(
        &lcm.checked_sub(glt).unwrap(),
        glc.inverse().expect("nonzero"),
    );
    fm.sub(&gm).expect("compatible operands")
}

fn buchberger(p: u64, dim: usize, gens: &[Polynomial], cap: u32) -> Result<Vec<Polynomial>> {
    let mut basis: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if basis.is_empty() {
        return Ok(Vec::new());
    }

    use std::collections::BTreeSet;
    // pending pairs keyed by (lcm degree, i, j): normal selection strategy
    let mut pending: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let lcm_of = |basis: &[Polynomial], i: usize, j: usize| -> Exponent {
        basis[i]
            .leading_term()
            .unwrap()
            .0
            .lcm(basis[j].leading_term().unwrap().0)
    };
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pending.insert((lcm_of(&basis, i, j).degree(), i, j));
        }
    }

    while let Some(&key) = pending.iter().next() {
        pending.remove(&key);
        let (_, i, j) = key;
        let lcm = lcm_of(&basis, i, j);
        let lt_i = basis[i].leading_term().unwrap().0;
        let lt_j = basis[j].leading_term().unwrap().0;

        // Buchberger criterion 1: coprime leading terms
        if lcm == lt_i.add(lt_j) {
            continue;
        }
        // Buchberger criterion 2 (chain): some k with lt_k | lcm and both
        // cross pairs already treated
        let mut skip = false;
        for k in 0..basis.len() {
            if k == i || k == j {
                continue;
            }
            let lt_k = basis[k].leading_term().unwrap().0;
            if lt_k.divides(&lcm) {
                let pair_ik = (i.min(k), i.max(k));
                let pair_jk = (j.min(k), j.max(k));
                let ik_pending = pending
                    .iter()
                    .any(|&(_, a, b)| (a, b) == pair_ik);
                let jk_pending = pending
                    .iter()
                    .any(|&(_, a, b)| (a, b) == pair_jk);
                if !ik_pending && !jk_pending {
                    skip = true;
                    break;
                }
            }
        }
        if skip {
            continue;
        }

        let s = s_polynomial(&basis[i], &basis[j]);
        let r = normal_form(&s, &basis);
        if r.is_zero() {
            continue;
        }
        if let Some(deg) = r.total_degree() {
            if deg > cap {
                return Err(Error::DegreeCapExceeded { cap, degree: deg });
            }
        }
        let new_idx = basis.len();
        basis.push(r);
        for k in 0..new_idx {
            pending.insert((lcm_of(&basis, k, new_idx).degree(), k, new_idx));
        }
    }

    Ok(reduce_basis(p, dim, basis))
}

/// Minimize and interreduce a Groebner basis into the unique reduced form.
fn reduce_basis(_p: u64, _dim: usize, mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    // monic
    for g in &mut basis {
        let lc = g.leading_term().unwrap().1;
        *g = g.scale(lc.inverse().expect("nonzero leading coefficient"));
    }
    // minimal: drop g when another leading term divides lt(g)
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let lt_i = basis[i].leading_term().unwrap().0.clone();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let lt_j = basis[j].leading_term().unwrap().0;
            if lt_j.divides(&lt_i) && (lt_j != &lt_i || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<Polynomial> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();
    // interreduce tails
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, g)| (j != i).then(|| g.clone()))
            .collect();
        let mut r = normal_form(&minimal[i], &others);
        if r.is_zero() {
            continue;
        }
        let lc = r.leading_term().unwrap().1;
        if lc != Fp::one(r.characteristic()) {
            r = r.scale(lc.inverse().expect("nonzero"));
        }
        reduced.push(r);
    }
    reduced.sort_by(|a, b| a.leading_term().unwrap().0.cmp(b.leading_term().unwrap().0));
    reduced
}
