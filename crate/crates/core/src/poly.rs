//! Sparse multivariate polynomials.
//!
//! The same container holds ordinary polynomials `f(X)` and polynomial
//! differential operators `p(∂)`; switching between the two readings is a
//! relabeling of variables and never changes the data.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::Exponent;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial<E> {
    nvars: usize,
    terms: BTreeMap<Exponent, E>,
}

impl<E> Polynomial<E> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending label order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &E)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponent) -> Option<&E> {
        self.terms.get(e)
    }

    /// Largest exponent in label order.
    pub fn leading(&self) -> Option<(&Exponent, &E)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponent::degree).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponent::degree).min()
    }

    /// Componentwise maximum of the exponents (the partial degrees).
    pub fn multidegree(&self) -> Exponent {
        let mut d = alloc::vec![0u32; self.nvars];
        for e in self.terms.keys() {
            for (a, &b) in d.iter_mut().zip(e.coords()) {
                *a = (*a).max(b);
            }
        }
        Exponent::new(d)
    }

    /// Componentwise minimum of the exponents (the monomial content).
    pub fn content(&self) -> Exponent {
        let mut it = self.terms.keys();
        match it.next() {
            None => Exponent::zero(self.nvars),
            Some(first) => it.fold(first.clone(), |g, e| g.gcd(e).expect("same ring")),
        }
    }
}

impl<E: Clone> Polynomial<E> {
    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents and dropping zero coefficients.
    pub fn from_terms<F>(field: &F, nvars: usize, terms: impl IntoIterator<Item = (Exponent, E)>) -> Result<Self>
    where
        F: Field<Elem = E>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.nvars() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: e.nvars() });
            }
            p.add_term(field, e, &c);
        }
        Ok(p)
    }

    pub fn monomial<F: Field<Elem = E>>(field: &F, exp: Exponent, coeff: E) -> Self {
        let mut p = Self::zero(exp.nvars());
        p.add_term(field, exp, &coeff);
        p
    }

    fn check(&self, other_nvars: usize) -> Result<()> {
        if self.nvars != other_nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: other_nvars });
        }
        Ok(())
    }

    fn check_var(&self, k: usize) -> Result<()> {
        if k >= self.nvars {
            return Err(Error::VariableOutOfRange { index: k, nvars: self.nvars });
        }
        Ok(())
    }

    pub(crate) fn add_term<F: Field<Elem = E>>(&mut self, field: &F, e: Exponent, c: &E) {
        if field.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = field.add(old, c);
                if field.is_zero(&s) {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    /// `self + scale * other`
    pub fn add_scaled<F: Field<Elem = E>>(&mut self, field: &F, scale: &E, other: &Self) -> Result<()> {
        self.check(other.nvars)?;
        if field.is_zero(scale) {
            return Ok(());
        }
        for (e, c) in &other.terms {
            self.add_term(field, e.clone(), &field.mul(scale, c));
        }
        Ok(())
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(field, &field.one(), other)?;
        Ok(out)
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(field, &field.neg(&field.one()), other)?;
        Ok(out)
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        if field.is_zero(c) {
            return Self::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(e, a)| (e.clone(), field.mul(a, c))).collect() }
    }

    /// `X^m * self`
    pub fn mul_monomial(&self, m: &Exponent) -> Result<Self> {
        self.check(m.nvars())?;
        Ok(Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.mul(m).expect("checked"), c.clone())).collect(),
        })
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self> {
        self.check(other.nvars)?;
        let mut out = Self::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(field, a.mul(b).expect("checked"), &field.mul(ca, cb));
            }
        }
        Ok(out)
    }

    /// Pairing of the operator `self = p(∂)` with `f`: `∂^a(X^b) = [a = b]`,
    /// so the result is `sum_a p_a f_a`.
    pub fn apply_dual<F: Field<Elem = E>>(&self, field: &F, f: &Self) -> Result<E> {
        self.check(f.nvars)?;
        let (small, large) = if self.len() <= f.len() { (self, f) } else { (f, self) };
        let mut acc = field.zero();
        for (e, c) in &small.terms {
            if let Some(d) = large.terms.get(e) {
                field.mul_add_assign(&mut acc, c, d);
            }
        }
        Ok(acc)
    }

    /// `∂_k · p(∂)`: each `∂^a` with `a_k >= 1` becomes `∂^(a - e_k)`, the
    /// rest vanish. Adjoint to multiplication by `x_k`.
    pub fn derive(&self, k: usize) -> Result<Self> {
        self.check_var(k)?;
        Ok(Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().filter_map(|(e, c)| e.sub_unit(k).map(|e| (e, c.clone()))).collect(),
        })
    }

    /// Drops every term involving a variable of index greater than `k`,
    /// i.e. sets `∂_{k+1}, ..., ∂_n` to zero.
    pub fn truncate_after(&self, k: usize) -> Result<Self> {
        self.check_var(k)?;
        Ok(Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.coords()[k + 1..].iter().all(|&a| a == 0))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        })
    }

    /// `∫_k p(∂_1, ..., ∂_k, 0, ..., 0)`: truncate after variable `k`, then
    /// raise the `k`-th exponent of every surviving term by one.
    pub fn integrate(&self, k: usize) -> Result<Self> {
        let t = self.truncate_after(k)?;
        Ok(Polynomial { nvars: self.nvars, terms: t.terms.into_iter().map(|(e, c)| (e.add_unit(k), c)).collect() })
    }

    /// `c X^g -> c X^(e - g)`. Every exponent must lie in the box `[0, e]`.
    pub fn reflect_about(&self, corner: &Exponent) -> Result<Self> {
        self.check(corner.nvars())?;
        let mut terms = BTreeMap::new();
        for (g, c) in &self.terms {
            let r = corner
                .div(g)
                .map_err(|_| Error::OutsideReflectionBox { exponent: g.clone(), corner: corner.clone() })?;
            terms.insert(r, c.clone());
        }
        Ok(Polynomial { nvars: self.nvars, terms })
    }

    /// The reciprocal: reflection about the multidegree.
    pub fn reciprocal(&self) -> Self {
        self.reflect_about(&self.multidegree()).expect("multidegree bounds every term")
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic<F: Field<Elem = E>>(&self, field: &F) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(field, &field.inv(c).expect("nonzero")),
        }
    }
}

/// A subspace of polynomials kept in echelon form: every basis element is
/// monic and has a distinct leading exponent.
#[derive(Debug, Clone)]
pub struct PolySpan<E> {
    nvars: usize,
    by_lead: BTreeMap<Exponent, Polynomial<E>>,
}

impl<E: Clone> PolySpan<E> {
    pub fn new(nvars: usize) -> Self {
        PolySpan { nvars, by_lead: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn dim(&self) -> usize {
        self.by_lead.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_lead.is_empty()
    }

    /// Basis elements ordered by leading exponent.
    pub fn basis(&self) -> impl Iterator<Item = &Polynomial<E>> {
        self.by_lead.values()
    }

    pub fn into_basis(self) -> Vec<Polynomial<E>> {
        self.by_lead.into_values().collect()
    }

    /// Remainder of `p` modulo the span; zero iff `p` lies in the span.
    pub fn reduce<F: Field<Elem = E>>(&self, field: &F, p: &Polynomial<E>) -> Result<Polynomial<E>> {
        if p.nvars != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: p.nvars });
        }
        let mut rem = p.clone();
        let mut bound: Option<Exponent> = None;
        loop {
            // Subtracting a basis element only touches exponents at or below its
            // lead, so a single descending sweep suffices.
            let hit = rem
                .terms
                .iter()
                .rev()
                .filter(|(e, _)| bound.as_ref().is_none_or(|b| *e < b))
                .find(|(e, _)| self.by_lead.contains_key(*e))
                .map(|(e, c)| (e.clone(), c.clone()));
            let Some((e, c)) = hit else { break };
            rem.add_scaled(field, &field.neg(&c), &self.by_lead[&e])?;
            bound = Some(e);
        }
        Ok(rem)
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, p: &Polynomial<E>) -> Result<bool> {
        Ok(self.reduce(field, p)?.is_zero())
    }

    /// Adds `p` to the span; returns the new (reduced, monic) basis element,
    /// or `None` when `p` was already in the span.
    pub fn insert<F: Field<Elem = E>>(&mut self, field: &F, p: &Polynomial<E>) -> Result<Option<Polynomial<E>>> {
        let rem = self.reduce(field, p)?;
        if rem.is_zero() {
            return Ok(None);
        }
        let rem = rem.monic(field);
        let lead = rem.leading().expect("nonzero").0.clone();
        self.by_lead.insert(lead, rem.clone());
        Ok(Some(rem))
    }
}
