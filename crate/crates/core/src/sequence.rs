//! Finitely supported n-dimensional sequences and the shift action on them.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{box_exponents, Exponent};
use crate::poly::Polynomial;

/// Why a support/value table is not a valid sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// An exponent of the wrong length.
    WrongLength { exponent: Exponent, nvars: usize },
    /// The support is not down-closed: `missing` divides a support element but
    /// is absent.
    NotDownClosed { missing: Exponent, witness: Exponent },
    /// A value is stored at an exponent outside the support.
    ValueOutsideSupport(Exponent),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongLength { exponent, nvars } => {
                write!(f, "exponent {exponent} does not have {nvars} entries")
            }
            Violation::NotDownClosed { missing, witness } => {
                write!(f, "support is not a staircase: {missing} is missing below {witness}")
            }
            Violation::ValueOutsideSupport(e) => write!(f, "value given at {e} outside the support"),
        }
    }
}

/// A sequence `N^n -> K` that vanishes outside a finite staircase.
///
/// Values may be stored as zero; exponents of the support without a stored
/// value are zero too.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NSequence<E> {
    nvars: usize,
    support: BTreeSet<Exponent>,
    values: BTreeMap<Exponent, E>,
}

impl<E: Clone> NSequence<E> {
    pub fn new(
        nvars: usize,
        support: impl IntoIterator<Item = Exponent>,
        values: impl IntoIterator<Item = (Exponent, E)>,
    ) -> core::result::Result<Self, Violation> {
        let seq = NSequence { nvars, support: support.into_iter().collect(), values: values.into_iter().collect() };
        seq.validate()?;
        Ok(seq)
    }

    /// A sequence given by its values on a staircase.
    pub fn from_fn(
        nvars: usize,
        support: impl IntoIterator<Item = Exponent>,
        mut value: impl FnMut(&Exponent) -> E,
    ) -> core::result::Result<Self, Violation> {
        let support: BTreeSet<Exponent> = support.into_iter().collect();
        let values = support.iter().map(|e| (e.clone(), value(e))).collect::<Vec<_>>();
        Self::new(nvars, support, values)
    }

    /// Checks lengths, the staircase property, and that values sit on the
    /// support. The reported missing exponent is the smallest one in label
    /// order.
    pub fn validate(&self) -> core::result::Result<(), Violation> {
        for e in self.support.iter().chain(self.values.keys()) {
            if e.nvars() != self.nvars {
                return Err(Violation::WrongLength { exponent: e.clone(), nvars: self.nvars });
            }
        }
        let mut missing: Option<(Exponent, Exponent)> = None;
        for e in &self.support {
            for k in 0..self.nvars {
                if let Some(p) = e.sub_unit(k) {
                    if !self.support.contains(&p) && missing.as_ref().is_none_or(|(m, _)| p < *m) {
                        missing = Some((p, e.clone()));
                    }
                }
            }
        }
        if let Some((missing, witness)) = missing {
            return Err(Violation::NotDownClosed { missing, witness });
        }
        if let Some(e) = self.values.keys().find(|e| !self.support.contains(*e)) {
            return Err(Violation::ValueOutsideSupport(e.clone()));
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn support(&self) -> &BTreeSet<Exponent> {
        &self.support
    }

    /// Stored values; exponents of the support that are absent here are zero.
    pub fn values(&self) -> &BTreeMap<Exponent, E> {
        &self.values
    }

    /// `None` means zero.
    pub fn value(&self, e: &Exponent) -> Option<&E> {
        self.values.get(e)
    }

    /// `sum_g l_g X^g`
    pub fn generating_poly<F: Field<Elem = E>>(&self, field: &F) -> Polynomial<E> {
        Polynomial::from_terms(field, self.nvars, self.values.iter().map(|(e, c)| (e.clone(), c.clone())))
            .expect("validated lengths")
    }

    /// Componentwise maximum of the support.
    pub fn support_corner(&self) -> Exponent {
        max_corner(self.nvars, self.support.iter())
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.values.values().all(|v| field.is_zero(v))
    }
}

fn max_corner<'a>(nvars: usize, it: impl Iterator<Item = &'a Exponent>) -> Exponent {
    let mut d = vec![0u32; nvars];
    for e in it {
        for (a, &b) in d.iter_mut().zip(e.coords()) {
            *a = (*a).max(b);
        }
    }
    Exponent::new(d)
}

/// One or more sequences over the same ring, analysed jointly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceFamily<E> {
    members: Vec<NSequence<E>>,
    union_support: BTreeSet<Exponent>,
}

impl<E: Clone> SequenceFamily<E> {
    pub fn new(members: Vec<NSequence<E>>) -> Result<Self> {
        let first = members.first().ok_or(Error::EmptyFamily)?;
        let nvars = first.nvars;
        let mut union_support = BTreeSet::new();
        for m in &members {
            if m.nvars != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: m.nvars });
            }
            m.validate()?;
            union_support.extend(m.support.iter().cloned());
        }
        Ok(SequenceFamily { members, union_support })
    }

    pub fn single(seq: NSequence<E>) -> Result<Self> {
        Self::new(vec![seq])
    }

    pub fn nvars(&self) -> usize {
        self.members[0].nvars
    }

    pub fn members(&self) -> &[NSequence<E>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The union of the member staircases.
    pub fn union_support(&self) -> &BTreeSet<Exponent> {
        &self.union_support
    }

    /// Componentwise maximum of the union support.
    pub fn support_corner(&self) -> Exponent {
        max_corner(self.nvars(), self.union_support.iter())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerData {
    /// Corner of each member's support.
    pub per_member: Vec<Exponent>,
    /// Componentwise maximum of `per_member`.
    pub global: Exponent,
    /// Total degree of `global`.
    pub m: u32,
}

/// The reflection corner of a family. Fails with `ZeroFamily` when no member
/// has a nonzero value.
pub fn corner<F: Field>(field: &F, family: &SequenceFamily<F::Elem>) -> Result<CornerData> {
    if family.members.iter().all(|s| s.is_zero(field)) {
        return Err(Error::ZeroFamily);
    }
    let per_member: Vec<Exponent> = family.members.iter().map(NSequence::support_corner).collect();
    let global = max_corner(family.nvars(), per_member.iter());
    let m = global.degree();
    Ok(CornerData { per_member, global, m })
}

/// Exponents one step outside a staircase: `b` not in `S` with some
/// `b - e_k` in `S`. Sorted in label order.
pub fn border(nvars: usize, support: &BTreeSet<Exponent>) -> Vec<Exponent> {
    let out: BTreeSet<Exponent> =
        support.iter().flat_map(|e| (0..nvars).map(move |k| e.add_unit(k))).filter(|b| !support.contains(b)).collect();
    out.into_iter().collect()
}

/// The `tau`-th term of `f · l`, i.e. `sum_g f_g l_{g + tau}`.
pub fn module_action<F: Field>(
    field: &F,
    f: &Polynomial<F::Elem>,
    seq: &NSequence<F::Elem>,
    tau: &Exponent,
) -> Result<F::Elem> {
    if f.nvars() != seq.nvars || tau.nvars() != seq.nvars {
        return Err(Error::DimensionMismatch { expected: seq.nvars, found: f.nvars().max(tau.nvars()) });
    }
    let mut acc = field.zero();
    for (g, c) in f.terms() {
        let at = g.mul(tau)?;
        if let Some(v) = seq.values.get(&at) {
            field.mul_add_assign(&mut acc, c, v);
        }
    }
    Ok(acc)
}

/// Whether `f · l = 0` for every member. Only shifts `tau` that move some
/// term of `f` onto the support can give a nonzero entry, and those all lie
/// in the box below the corner.
pub fn is_annihilator<F: Field>(field: &F, f: &Polynomial<F::Elem>, family: &SequenceFamily<F::Elem>) -> Result<bool> {
    if f.nvars() != family.nvars() {
        return Err(Error::DimensionMismatch { expected: family.nvars(), found: f.nvars() });
    }
    for seq in &family.members {
        let mut shifts = BTreeSet::new();
        for (g, _) in f.terms() {
            for a in seq.values.keys() {
                if let Ok(tau) = a.div(g) {
                    shifts.insert(tau);
                }
            }
        }
        for tau in &shifts {
            if !field.is_zero(&module_action(field, f, seq, tau)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The staircase of the monomial ideal generated by `defining`: every
/// exponent divisible by none of them. Each variable needs a pure power
/// among the generators.
pub fn staircase(nvars: usize, defining: &[Exponent]) -> Result<BTreeSet<Exponent>> {
    let mut bound = vec![0u32; nvars];
    for (k, slot) in bound.iter_mut().enumerate() {
        let pure = defining
            .iter()
            .filter(|e| e.nvars() == nvars)
            .filter(|e| e.coords().iter().enumerate().all(|(j, &a)| j == k || a == 0) && e.coords()[k] > 0)
            .map(|e| e.coords()[k])
            .min();
        match pure {
            Some(a) => *slot = a - 1,
            None => {
                if defining.iter().any(Exponent::is_zero) {
                    *slot = 0;
                } else {
                    return Err(Error::NotArtinian { variable: k });
                }
            }
        }
    }
    if let Some(e) = defining.iter().find(|e| e.nvars() != nvars) {
        return Err(Error::DimensionMismatch { expected: nvars, found: e.nvars() });
    }
    Ok(box_exponents(&Exponent::new(bound)).into_iter().filter(|e| !defining.iter().any(|g| g.divides(e))).collect())
}
