//! The (quasi-)Hankel system of a family and its kernel.

use alloc::vec::Vec;

use crate::annihilator::{canonicalize, AnnihilatorResult, Engine, EngineStats, StageKind, StageStats};
use crate::error::Result;
use crate::field::Field;
use crate::matrix::{kernel_basis, LabeledMatrix};
use crate::monomial::{box_exponents, Exponent};
use crate::poly::Polynomial;
use crate::sequence::{border, SequenceFamily};

/// Row label: the constraint `(X^shift · f · l_member)_0 = 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HankelRow {
    pub member: usize,
    pub shift: Exponent,
}

/// Entry `(i, a), b` is `l^(i)_{a+b}`; columns are the union support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HankelSystem<E> {
    pub matrix: LabeledMatrix<HankelRow, Exponent, E>,
}

fn build<F: Field>(field: &F, family: &SequenceFamily<F::Elem>, shifts: &[Exponent]) -> HankelSystem<F::Elem> {
    let cols: Vec<Exponent> = family.union_support().iter().cloned().collect();
    let mut labels = Vec::new();
    let mut rows = Vec::new();
    for (member, seq) in family.members().iter().enumerate() {
        for a in shifts {
            labels.push(HankelRow { member, shift: a.clone() });
            rows.push(
                cols.iter()
                    .map(|b| {
                        let at = a.mul(b).expect("same ring");
                        seq.value(&at).cloned().unwrap_or_else(|| field.zero())
                    })
                    .collect(),
            );
        }
    }
    HankelSystem { matrix: LabeledMatrix::new_unchecked(labels, cols, rows) }
}

/// Rows are indexed by member and by shift in the union support.
pub fn build_hankel<F: Field>(field: &F, family: &SequenceFamily<F::Elem>) -> HankelSystem<F::Elem> {
    let shifts: Vec<Exponent> = family.union_support().iter().cloned().collect();
    build(field, family, &shifts)
}

/// Rows are indexed by every shift in the box below the support corner.
pub fn build_hankel_extended<F: Field>(field: &F, family: &SequenceFamily<F::Elem>) -> HankelSystem<F::Elem> {
    build(field, family, &box_exponents(&family.support_corner()))
}

impl<E: Clone> HankelSystem<E> {
    /// Kernel vectors read as polynomials over the column monomials.
    pub fn kernel_polys<F: Field<Elem = E>>(&self, field: &F) -> Vec<Polynomial<E>> {
        let cols = self.matrix.col_labels();
        let nvars = cols.first().map_or(0, Exponent::nvars);
        kernel_basis(field, &self.matrix)
            .into_iter()
            .map(|v| Polynomial::from_terms(field, nvars, cols.iter().cloned().zip(v)).expect("uniform columns"))
            .collect()
    }
}

/// Annihilators supported in the union support, read off the Hankel kernel.
pub fn annihilator_hankel<F: Field>(
    field: &F,
    family: &SequenceFamily<F::Elem>,
    extended_rows: bool,
) -> Result<AnnihilatorResult<F::Elem>> {
    let sys = if extended_rows { build_hankel_extended(field, family) } else { build_hankel(field, family) };
    let support: Vec<Exponent> = family.union_support().iter().cloned().collect();
    let vs_basis = canonicalize(field, family.nvars(), &support, &sys.kernel_polys(field))?;
    let stats = EngineStats {
        stages: alloc::vec![StageStats {
            kind: StageKind::Hankel,
            degree: None,
            rows: sys.matrix.nrows(),
            cols: sys.matrix.ncols(),
        }],
    };
    let s = support.len();
    let r = s - vs_basis.len();
    Ok(AnnihilatorResult {
        nvars: family.nvars(),
        border_gens: border(family.nvars(), family.union_support()),
        unit_ideal: r == 0,
        support,
        vs_basis,
        r,
        stats,
        engine: Engine::Hankel,
        degenerate: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::matrix::rref;
    use crate::sequence::NSequence;

    fn e(v: &[u32]) -> Exponent {
        Exponent::new(v.to_vec())
    }

    fn example(f: &PrimeField) -> NSequence<u64> {
        let vals = [(&[0, 0], 1), (&[1, 0], 2), (&[0, 1], 2), (&[2, 0], 4), (&[1, 1], 4), (&[0, 2], 4)];
        NSequence::new(2, vals.iter().map(|(x, _)| e(*x)), vals.iter().map(|(x, c)| (e(*x), f.from_i64(*c)))).unwrap()
    }

    #[test]
    fn example_matrix() {
        let f = PrimeField::default();
        let h = build_hankel(&f, &SequenceFamily::single(example(&f)).unwrap());
        let expect: [[u64; 6]; 6] = [
            [1, 2, 2, 4, 4, 4],
            [2, 4, 4, 0, 0, 0],
            [2, 4, 4, 0, 0, 0],
            [4, 0, 0, 0, 0, 0],
            [4, 0, 0, 0, 0, 0],
            [4, 0, 0, 0, 0, 0],
        ];
        for (row, want) in h.matrix.rows().iter().zip(expect) {
            assert_eq!(row[..], want[..]);
        }
        assert_eq!(h.matrix.col_labels()[4], e(&[1, 1]));
    }

    #[test]
    fn single_value() {
        let f = Rationals;
        let s = NSequence::new(1, [e(&[0])], [(e(&[0]), f.from_i64(7))]).unwrap();
        let h = build_hankel(&f, &SequenceFamily::single(s).unwrap());
        assert_eq!((h.matrix.nrows(), h.matrix.ncols()), (1, 1));
        assert_eq!(*h.matrix.entry(0, 0), f.from_i64(7));
    }

    #[test]
    fn duplicated_member_keeps_row_space() {
        let f = PrimeField::default();
        let one = build_hankel(&f, &SequenceFamily::single(example(&f)).unwrap());
        let two = build_hankel(&f, &SequenceFamily::new(alloc::vec![example(&f), example(&f)]).unwrap());
        assert_eq!(two.matrix.nrows(), 12);
        assert_eq!(rref(&f, 6, one.matrix.rows()), rref(&f, 6, two.matrix.rows()));
    }

    #[test]
    fn example_annihilator() {
        let f = PrimeField::default();
        let fam = SequenceFamily::single(example(&f)).unwrap();
        let res = annihilator_hankel(&f, &fam, false).unwrap();
        assert_eq!(res.r, 3);
        assert_eq!(res.border_gens, [e(&[3, 0]), e(&[2, 1]), e(&[1, 2]), e(&[0, 3])]);
        let ext = annihilator_hankel(&f, &fam, true).unwrap();
        assert_eq!(ext.vs_basis, res.vs_basis);
    }

    #[test]
    fn zero_sequence_is_unit() {
        let f = Rationals;
        let s = NSequence::from_fn(2, [e(&[0, 0]), e(&[1, 0])], |_| f.zero()).unwrap();
        let res = annihilator_hankel(&f, &SequenceFamily::single(s).unwrap(), false).unwrap();
        assert_eq!((res.r, res.vs_basis.len()), (0, 2));
        assert!(res.unit_ideal);
    }
}
