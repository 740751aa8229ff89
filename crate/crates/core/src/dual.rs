//! Truncated orthogonals `I⊥_t` of polynomial ideals.
//!
//! Elements of the dual are differential operators `p(∂)` acting on
//! polynomials through `∂^a(X^b) = [a = b]` (see [`Polynomial::apply_dual`]).
//! Two constructions are offered: one Macaulay (Toeplitz) system at a fixed
//! degree, and the integration method, which grows the orthogonal one
//! degree at a time from antiderivatives of the previous basis.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::annihilator::{StageKind, StageStats};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{kernel_basis, LabeledMatrix};
use crate::monomial::{monomials_up_to_degree, Exponent};
use crate::poly::{PolySpan, Polynomial};

/// The ∂-monomials a dual element may use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportRestriction {
    pub allowed: BTreeSet<Exponent>,
}

impl SupportRestriction {
    pub fn new(allowed: impl IntoIterator<Item = Exponent>) -> Self {
        SupportRestriction { allowed: allowed.into_iter().collect() }
    }

    pub fn allows(&self, e: &Exponent) -> bool {
        self.allowed.contains(e)
    }

    /// Componentwise maximum of the allowed exponents.
    fn bounding_box(&self, nvars: usize) -> Exponent {
        let mut d = vec![0u32; nvars];
        for e in &self.allowed {
            for (a, &b) in d.iter_mut().zip(e.coords()) {
                *a = (*a).max(b);
            }
        }
        Exponent::new(d)
    }
}

/// A basis of a truncated orthogonal, kept in echelon form.
#[derive(Debug, Clone)]
pub struct DualBasis<E> {
    pub degree: u32,
    span: PolySpan<E>,
}

impl<E: Clone> DualBasis<E> {
    pub fn empty(nvars: usize) -> Self {
        DualBasis { degree: 0, span: PolySpan::new(nvars) }
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.span.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = &Polynomial<E>> {
        self.span.basis()
    }

    pub fn span(&self) -> &PolySpan<E> {
        &self.span
    }

    pub fn into_elements(self) -> Vec<Polynomial<E>> {
        self.span.into_basis()
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, p: &Polynomial<E>) -> Result<bool> {
        self.span.contains(field, p)
    }

    /// Whether `∂_k Λ` stays in the span for every element and variable.
    pub fn is_derivation_closed<F: Field<Elem = E>>(&self, field: &F, nvars: usize) -> Result<bool> {
        for p in self.span.basis() {
            for k in 0..nvars {
                if !self.span.contains(field, &p.derive(k)?)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub(crate) fn insert<F: Field<Elem = E>>(&mut self, field: &F, p: &Polynomial<E>) -> Result<bool> {
        Ok(self.span.insert(field, p)?.is_some())
    }
}

/// Row label of a Macaulay matrix: the polynomial `X^shift · f_generator`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MacaulayRow {
    pub generator: usize,
    pub shift: Exponent,
}

fn common_nvars<E>(generators: &[Polynomial<E>]) -> Result<usize> {
    let n = generators.first().map_or(0, Polynomial::nvars);
    match generators.iter().find(|g| g.nvars() != n) {
        Some(g) => Err(Error::DimensionMismatch { expected: n, found: g.nvars() }),
        None => Ok(n),
    }
}

/// The constraints `p(∂)(X^b f_i) = 0` on operators of degree at most `t`.
///
/// Columns are the ∂-monomials of degree at most `t` (only the allowed ones
/// under a restriction). Rows are the multiples `X^b f_i` that can meet a
/// column: `|b| <= t - mindeg(f_i)` and, under a restriction, `b` inside the
/// bounding box of the allowed set. Rows that vanish on every column are
/// dropped.
pub fn macaulay_matrix<F: Field>(
    field: &F,
    generators: &[Polynomial<F::Elem>],
    t: u32,
    restriction: Option<&SupportRestriction>,
) -> Result<LabeledMatrix<MacaulayRow, Exponent, F::Elem>> {
    let nvars = common_nvars(generators)?;
    let cols: Vec<Exponent> = match restriction {
        Some(r) => r.allowed.iter().filter(|e| e.degree() <= t).cloned().collect(),
        None => monomials_up_to_degree(nvars, t),
    };
    let index: BTreeMap<&Exponent, usize> = cols.iter().enumerate().map(|(j, e)| (e, j)).collect();
    let bbox = restriction.map(|r| r.bounding_box(nvars));
    let mut labels = Vec::new();
    let mut rows = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        let Some(low) = g.min_degree() else { continue };
        if low > t {
            continue;
        }
        for shift in monomials_up_to_degree(nvars, t - low) {
            if bbox.as_ref().is_some_and(|b| !shift.divides(b)) {
                continue;
            }
            let mut row = vec![field.zero(); cols.len()];
            let mut any = false;
            for (e, c) in g.terms() {
                if let Some(&j) = index.get(&e.mul(&shift)?) {
                    row[j] = c.clone();
                    any = true;
                }
            }
            if any {
                labels.push(MacaulayRow { generator: i, shift });
                rows.push(row);
            }
        }
    }
    Ok(LabeledMatrix::new_unchecked(labels, cols, rows))
}

/// Kernel of [`macaulay_matrix`] as a dual basis.
pub fn macaulay_orthogonal<F: Field>(
    field: &F,
    generators: &[Polynomial<F::Elem>],
    t: u32,
    restriction: Option<&SupportRestriction>,
) -> Result<(DualBasis<F::Elem>, StageStats)> {
    let nvars = common_nvars(generators)?;
    let m = macaulay_matrix(field, generators, t, restriction)?;
    let mut basis = DualBasis::empty(nvars);
    basis.degree = t;
    for v in kernel_basis(field, &m) {
        let p = Polynomial::from_terms(field, nvars, m.col_labels().iter().cloned().zip(v))?;
        basis.insert(field, &p)?;
    }
    let stats = StageStats { kind: StageKind::Macaulay, degree: Some(t), rows: m.nrows(), cols: m.ncols() };
    Ok((basis, stats))
}

/// Row tags of the integration system.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Condition {
    Vanish(usize),
    Compatible(usize, usize, Exponent),
    Forbidden(Exponent),
}

/// One step of the integration method: from a basis of the orthogonal up to
/// degree `t`, find every new element of degree `t + 1` without constant
/// term.
///
/// Unknowns `λ_ik` weight the candidates `∫_k p_i(∂_1, ..., ∂_k, 0, ..., 0)`
/// and must satisfy
/// - `p(f_j) = 0` for every generator,
/// - `Σ_i λ_ik ∂_l p_i = Σ_i λ_il ∂_k p_i` for all `k < l`,
/// - a zero coefficient on every ∂-monomial the restriction forbids.
///
/// Without a restriction, `prev` must be closed under derivation.
pub fn integration_step<F: Field>(
    field: &F,
    prev: &DualBasis<F::Elem>,
    generators: &[Polynomial<F::Elem>],
    restriction: Option<&SupportRestriction>,
) -> Result<(DualBasis<F::Elem>, StageStats)> {
    let nvars = prev.span.nvars();
    if let Some(g) = generators.iter().find(|g| g.nvars() != nvars) {
        return Err(Error::DimensionMismatch { expected: nvars, found: g.nvars() });
    }
    if restriction.is_none() && !prev.is_derivation_closed(field, nvars)? {
        return Err(Error::NotDerivationClosed { degree: prev.degree });
    }
    let basis: Vec<&Polynomial<F::Elem>> = prev.elements().collect();
    let ncols = basis.len() * nvars;
    let col = |i: usize, k: usize| i * nvars + k;

    let mut candidates = Vec::with_capacity(ncols);
    for p in &basis {
        for k in 0..nvars {
            candidates.push(p.integrate(k)?);
        }
    }

    let mut rows: BTreeMap<Condition, Vec<F::Elem>> = BTreeMap::new();
    let mut entry = |tag: Condition, j: usize, c: &F::Elem| {
        let row = rows.entry(tag).or_insert_with(|| vec![field.zero(); ncols]);
        row[j] = field.add(&row[j], c);
    };
    for (gi, g) in generators.iter().enumerate() {
        for (j, c) in candidates.iter().enumerate() {
            let v = c.apply_dual(field, g)?;
            if !field.is_zero(&v) {
                entry(Condition::Vanish(gi), j, &v);
            }
        }
    }
    for (i, p) in basis.iter().enumerate() {
        let derived: Vec<Polynomial<F::Elem>> = (0..nvars).map(|k| p.derive(k)).collect::<Result<_>>()?;
        for k in 0..nvars {
            for l in k + 1..nvars {
                for (e, c) in derived[l].terms() {
                    entry(Condition::Compatible(k, l, e.clone()), col(i, k), c);
                }
                for (e, c) in derived[k].terms() {
                    entry(Condition::Compatible(k, l, e.clone()), col(i, l), &field.neg(c));
                }
            }
        }
    }
    if let Some(r) = restriction {
        for (j, c) in candidates.iter().enumerate() {
            for (e, a) in c.terms() {
                if !r.allows(e) {
                    entry(Condition::Forbidden(e.clone()), j, a);
                }
            }
        }
    }

    let (labels, data): (Vec<Condition>, Vec<Vec<F::Elem>>) = rows.into_iter().unzip();
    let system = LabeledMatrix::new_unchecked(labels, (0..ncols).collect::<Vec<_>>(), data);
    let stats =
        StageStats { kind: StageKind::Integration, degree: Some(prev.degree + 1), rows: system.nrows(), cols: ncols };
    let mut next = prev.clone();
    next.degree = prev.degree + 1;
    for lambda in kernel_basis(field, &system) {
        let mut p = Polynomial::zero(nvars);
        for (c, l) in candidates.iter().zip(&lambda) {
            p.add_scaled(field, l, c)?;
        }
        next.insert(field, &p)?;
    }
    Ok((next, stats))
}

/// Whether `∂^d` is orthogonal to the ideal: no term of a generator divides
/// `X^d`, so no multiple `X^b f_i` has a term at `d`.
fn monomial_is_orthogonal<E>(d: &Exponent, generators: &[Polynomial<E>]) -> bool {
    generators.iter().all(|g| g.terms().all(|(e, _)| !e.divides(d)))
}

/// Builds the orthogonal degree by degree with [`integration_step`].
///
/// `seed_constant` admits `1_0` when it is orthogonal (no generator has a
/// constant term). Under a restriction, every allowed ∂-monomial that is
/// orthogonal is added at its degree, because a restricted set need not be
/// closed under derivation and such monomials may not be reachable by
/// integration. Iteration stops at `t_max`, or as soon as a step adds nothing
/// and no such monomial is pending at a higher degree.
///
/// Without a restriction and without `t_max`, the loop only ends when the
/// origin is an isolated zero of the generators.
pub fn orthogonal_up_to<F: Field>(
    field: &F,
    generators: &[Polynomial<F::Elem>],
    t_max: Option<u32>,
    restriction: Option<&SupportRestriction>,
    seed_constant: bool,
) -> Result<(DualBasis<F::Elem>, Vec<StageStats>)> {
    let nvars = common_nvars(generators)?;
    if t_max.is_none() && restriction.is_none() && generators.iter().all(Polynomial::is_zero) {
        return Err(Error::UnboundedDual);
    }
    let nonzero: Vec<Polynomial<F::Elem>> = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut seeds: BTreeMap<u32, Vec<Exponent>> = BTreeMap::new();
    let zero = Exponent::zero(nvars);
    if seed_constant && monomial_is_orthogonal(&zero, &nonzero) && restriction.is_none_or(|r| r.allows(&zero)) {
        seeds.entry(0).or_default().push(zero.clone());
    }
    if let Some(r) = restriction {
        for d in &r.allowed {
            if !d.is_zero() && monomial_is_orthogonal(d, &nonzero) {
                seeds.entry(d.degree()).or_default().push(d.clone());
            }
        }
    }
    let limit = match (t_max, restriction) {
        (Some(t), _) => t,
        (None, Some(r)) => r.allowed.iter().map(Exponent::degree).max().unwrap_or(0),
        (None, None) => u32::MAX,
    };

    let mut basis = DualBasis::empty(nvars);
    let mut stats = Vec::new();
    for d in seeds.remove(&0).unwrap_or_default() {
        basis.insert(field, &Polynomial::monomial(field, d, field.one()))?;
    }
    let mut t = 0;
    while t < limit {
        let pending = seeds.keys().next().is_some();
        if basis.is_empty() && !pending {
            break;
        }
        let before = basis.dim();
        let (mut next, st) = integration_step(field, &basis, &nonzero, restriction)?;
        stats.push(st);
        t += 1;
        for d in seeds.remove(&t).unwrap_or_default() {
            next.insert(field, &Polynomial::monomial(field, d, field.one()))?;
        }
        let grew = next.dim() > before;
        basis = next;
        if !grew && seeds.is_empty() {
            break;
        }
    }
    Ok((basis, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn e(v: &[u32]) -> Exponent {
        Exponent::new(v.to_vec())
    }

    fn q(n: usize, terms: &[(&[u32], i64)]) -> Polynomial<BigRational> {
        let f = Rationals;
        Polynomial::from_terms(&f, n, terms.iter().map(|(x, c)| (e(x), f.from_i64(*c)))).unwrap()
    }

    fn span_of<F: Field>(_: &F, b: &DualBasis<F::Elem>) -> Vec<Polynomial<F::Elem>> {
        b.elements().cloned().collect()
    }

    #[test]
    fn x_squared_and_y() {
        let f = Rationals;
        let gens = [q(2, &[(&[2, 0], 1)]), q(2, &[(&[0, 1], 1)])];
        let (m, _) = macaulay_orthogonal(&f, &gens, 2, None).unwrap();
        let expect = [q(2, &[(&[0, 0], 1)]), q(2, &[(&[1, 0], 1)])];
        assert_eq!(span_of(&f, &m), expect);
        let (d, stats) = orthogonal_up_to(&f, &gens, Some(5), None, true).unwrap();
        assert_eq!(span_of(&f, &d), expect);
        assert_eq!(d.degree, 2);
        assert_eq!(stats.len(), 2);

        let one = {
            let mut b = DualBasis::empty(2);
            b.insert(&f, &q(2, &[(&[0, 0], 1)])).unwrap();
            b
        };
        let (step, st) = integration_step(&f, &one, &gens, None).unwrap();
        assert_eq!(span_of(&f, &step), expect);
        assert_eq!(st.cols, 2);
    }

    #[test]
    fn maximal_ideal() {
        let f = Rationals;
        let gens = [q(3, &[(&[1, 0, 0], 1)]), q(3, &[(&[0, 1, 0], 1)]), q(3, &[(&[0, 0, 1], 1)])];
        for t in 0..4 {
            let (m, _) = macaulay_orthogonal(&f, &gens, t, None).unwrap();
            assert_eq!(span_of(&f, &m), [q(3, &[(&[0, 0, 0], 1)])]);
        }
        let (d, stats) = orthogonal_up_to(&f, &gens, Some(4), None, true).unwrap();
        assert_eq!(d.dim(), 1);
        assert_eq!(stats.len(), 1);
    }

    #[test]
    fn constant_term_empties_the_dual() {
        let f = Rationals;
        let gens = [q(2, &[(&[0, 0], 1), (&[1, 0], 1)])];
        let (d, stats) = orthogonal_up_to(&f, &gens, Some(4), None, true).unwrap();
        assert!(d.is_empty() && stats.is_empty());
        assert_eq!(
            orthogonal_up_to(&f, &[Polynomial::<BigRational>::zero(2)], None, None, true).unwrap_err(),
            Error::UnboundedDual
        );
    }

    #[test]
    fn not_closed_is_rejected() {
        let f = Rationals;
        let mut b = DualBasis::empty(2);
        b.insert(&f, &q(2, &[(&[1, 0], 1)])).unwrap();
        b.degree = 1;
        assert_eq!(
            integration_step(&f, &b, &[q(2, &[(&[2, 0], 1)])], None).unwrap_err(),
            Error::NotDerivationClosed { degree: 1 }
        );
    }

    // 4x^2+4xy+4y^2+2x^2y+2xy^2+x^2y^2 with columns restricted to the reflected
    // staircase x^2, xy, y^2, x^2y, xy^2, x^2y^2.
    #[test]
    fn modified_macaulay_matrix() {
        let f = Rationals;
        let r = q(2, &[(&[2, 0], 4), (&[1, 1], 4), (&[0, 2], 4), (&[2, 1], 2), (&[1, 2], 2), (&[2, 2], 1)]);
        let allowed = SupportRestriction::new([e(&[2, 0]), e(&[1, 1]), e(&[0, 2]), e(&[2, 1]), e(&[1, 2]), e(&[2, 2])]);
        let m = macaulay_matrix(&f, std::slice::from_ref(&r), 4, Some(&allowed)).unwrap();
        let shifts: Vec<Exponent> = m.row_labels().iter().map(|l| l.shift.clone()).collect();
        assert_eq!(shifts, [e(&[0, 0]), e(&[1, 0]), e(&[0, 1]), e(&[2, 0]), e(&[1, 1]), e(&[0, 2])]);
        let want: [[i64; 6]; 6] = [
            [4, 4, 4, 2, 2, 1],
            [0, 0, 0, 4, 4, 2],
            [0, 0, 0, 4, 4, 2],
            [0, 0, 0, 0, 0, 4],
            [0, 0, 0, 0, 0, 4],
            [0, 0, 0, 0, 0, 4],
        ];
        for (row, w) in m.rows().iter().zip(want) {
            let w: Vec<BigRational> = w.iter().map(|&a| f.from_i64(a)).collect();
            assert_eq!(row, &w);
        }
        let (k, _) = macaulay_orthogonal(&f, std::slice::from_ref(&r), 4, Some(&allowed)).unwrap();
        assert_eq!(k.dim(), 3);
        // The reflected staircase alone is not closed under derivation, so
        // integration inside it can only find part of the kernel.
        let (d, _) = orthogonal_up_to(&f, &[r], Some(4), Some(&allowed), true).unwrap();
        assert!(d.elements().all(|p| k.contains(&f, p).unwrap()));
    }

    fn random_primary_ideal(rng: &mut ChaCha8Rng, f: &PrimeField) -> Vec<Polynomial<u64>> {
        let n = rng.gen_range(1..=3);
        let mut gens = Vec::new();
        for k in 0..n {
            let a = rng.gen_range(1..=4);
            gens.push(Polynomial::monomial(
                f,
                Exponent::unit(n, k).coords().iter().map(|&c| c * a).collect::<Vec<_>>().into(),
                1,
            ));
        }
        for _ in 0..rng.gen_range(0..=2) {
            let mut terms = Vec::new();
            for _ in 0..rng.gen_range(1..=3) {
                let mut x: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
                if x.iter().all(|&c| c == 0) {
                    x[0] = 1;
                }
                terms.push((Exponent::new(x), rng.gen_range(1..f.modulus())));
            }
            gens.push(Polynomial::from_terms(f, n, terms).unwrap());
        }
        gens
    }

    fn same_span<F: Field>(f: &F, a: &DualBasis<F::Elem>, b: &DualBasis<F::Elem>) -> bool {
        a.dim() == b.dim() && a.elements().all(|p| b.contains(f, p).unwrap())
    }

    #[test]
    fn integration_matches_macaulay() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let gens = random_primary_ideal(&mut rng, &f);
            let n = gens[0].nvars();
            let t = rng.gen_range(0..=4);
            let (mac, _) = macaulay_orthogonal(&f, &gens, t, None).unwrap();
            let (int, stats) = orthogonal_up_to(&f, &gens, Some(t), None, true).unwrap();
            assert!(same_span(&f, &mac, &int), "{gens:?} at degree {t}");
            assert!(int.is_derivation_closed(&f, n).unwrap());
            assert!(stats.iter().all(|st| st.cols % n == 0));
            for p in int.elements() {
                for g in &gens {
                    for b in monomials_up_to_degree(n, t) {
                        let shifted = g.mul_monomial(&b).unwrap();
                        assert_eq!(p.apply_dual(&f, &shifted).unwrap(), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn restricted_is_inside_unrestricted() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..30 {
            let gens = random_primary_ideal(&mut rng, &f);
            let n = gens[0].nvars();
            let allowed: Vec<Exponent> =
                monomials_up_to_degree(n, 3).into_iter().filter(|_| rng.gen_bool(0.7)).collect();
            let res = SupportRestriction::new(allowed);
            let (full, _) = orthogonal_up_to(&f, &gens, Some(3), None, true).unwrap();
            let (part, _) = orthogonal_up_to(&f, &gens, Some(3), Some(&res), true).unwrap();
            for p in part.elements() {
                assert!(p.terms().all(|(x, _)| res.allows(x)));
                assert!(full.contains(&f, p).unwrap());
            }
        }
    }
}
