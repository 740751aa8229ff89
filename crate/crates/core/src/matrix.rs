//! Dense exact linear algebra: row reduction, rank and null spaces.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A dense matrix whose rows and columns carry labels (monomials, tags, ...).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledMatrix<R, C, E> {
    row_labels: Vec<R>,
    col_labels: Vec<C>,
    rows: Vec<Vec<E>>,
}

impl<R: PartialEq, C: PartialEq, E: Clone> LabeledMatrix<R, C, E> {
    /// Checks the shape against the labels and rejects repeated labels.
    pub fn new(row_labels: Vec<R>, col_labels: Vec<C>, rows: Vec<Vec<E>>) -> Result<Self> {
        if rows.len() != row_labels.len() {
            return Err(Error::DimensionMismatch { expected: row_labels.len(), found: rows.len() });
        }
        for r in &rows {
            if r.len() != col_labels.len() {
                return Err(Error::DimensionMismatch { expected: col_labels.len(), found: r.len() });
            }
        }
        if let Some(index) = first_repeat(&row_labels) {
            return Err(Error::DuplicateLabel { column: false, index });
        }
        if let Some(index) = first_repeat(&col_labels) {
            return Err(Error::DuplicateLabel { column: true, index });
        }
        Ok(LabeledMatrix { row_labels, col_labels, rows })
    }

    pub(crate) fn new_unchecked(row_labels: Vec<R>, col_labels: Vec<C>, rows: Vec<Vec<E>>) -> Self {
        debug_assert_eq!(rows.len(), row_labels.len());
        LabeledMatrix { row_labels, col_labels, rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn row_labels(&self) -> &[R] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[C] {
        &self.col_labels
    }

    pub fn rows(&self) -> &[Vec<E>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &E {
        &self.rows[i][j]
    }

    pub fn row_index(&self, label: &R) -> Option<usize> {
        self.row_labels.iter().position(|r| r == label)
    }

    pub fn col_index(&self, label: &C) -> Option<usize> {
        self.col_labels.iter().position(|c| c == label)
    }

    /// `M v` for a column vector `v`.
    pub fn apply<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Result<Vec<E>> {
        if v.len() != self.ncols() {
            return Err(Error::DimensionMismatch { expected: self.ncols(), found: v.len() });
        }
        Ok(self
            .rows
            .iter()
            .map(|row| {
                let mut acc = field.zero();
                for (a, b) in row.iter().zip(v) {
                    if !field.is_zero(a) && !field.is_zero(b) {
                        field.mul_add_assign(&mut acc, a, b);
                    }
                }
                acc
            })
            .collect())
    }
}

fn first_repeat<T: PartialEq>(v: &[T]) -> Option<usize> {
    (1..v.len()).find(|&i| v[..i].contains(&v[i]))
}

/// Reduced row echelon form: nonzero rows only, each with a leading one in
/// column `pivots[i]` and zeros above and below it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon<E> {
    pub ncols: usize,
    pub rows: Vec<Vec<E>>,
    pub pivots: Vec<usize>,
}

impl<E: Clone> Echelon<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Right null space: one vector per free column `j`, with a one at `j`
    /// and minus the pivot-row entries in the pivot positions.
    pub fn kernel<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&j| !is_pivot[j])
            .map(|j| {
                let mut v = vec![field.zero(); self.ncols];
                v[j] = field.one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = field.neg(&row[j]);
                }
                v
            })
            .collect()
    }
}

/// Reduced row echelon form through the field's elimination. Rows must all
/// have length `ncols`.
pub fn rref<F: Field>(field: &F, ncols: usize, rows: &[Vec<F::Elem>]) -> Echelon<F::Elem> {
    field.rref(ncols, rows)
}

pub(crate) fn gauss_jordan<F: Field>(field: &F, ncols: usize, rows: &[Vec<F::Elem>]) -> Echelon<F::Elem> {
    let mut m: Vec<Vec<F::Elem>> = rows.iter().filter(|r| r.iter().any(|a| !field.is_zero(a))).cloned().collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        if top == m.len() {
            break;
        }
        let Some(found) = (top..m.len()).find(|&i| !field.is_zero(&m[i][col])) else {
            continue;
        };
        m.swap(top, found);
        let inv = field.inv(&m[top][col]).expect("nonzero pivot");
        for a in m[top][col..].iter_mut() {
            *a = field.mul(a, &inv);
        }
        let (before, rest) = m.split_at_mut(top);
        let (pivot_row, after) = rest.split_first_mut().expect("top < len");
        for row in before.iter_mut().chain(after.iter_mut()) {
            if field.is_zero(&row[col]) {
                continue;
            }
            let c = row[col].clone();
            for (a, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if !field.is_zero(p) {
                    *a = field.sub(a, &field.mul(&c, p));
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    m.truncate(top);
    Echelon { ncols, rows: m, pivots }
}

/// Gauss-Jordan over the integers after clearing denominators row by row.
/// Every intermediate entry is a minor of the input, so the division by the
/// previous pivot is exact; at the end every pivot equals the last one, `d`,
/// and the reduced form is the matrix divided by `d`.
pub(crate) fn fraction_free_rref(ncols: usize, rows: &[Vec<BigRational>]) -> Echelon<BigRational> {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|a| !a.is_zero()))
        .map(|r| {
            let den = r.iter().fold(BigInt::one(), |l, a| l.lcm(a.denom()));
            r.iter().map(|a| a.numer() * (&den / a.denom())).collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut top = 0;
    for col in 0..ncols {
        if top == m.len() {
            break;
        }
        let Some(found) = (top..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(top, found);
        let pivot_row = core::mem::take(&mut m[top]);
        let p = pivot_row[col].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == top {
                continue;
            }
            let a = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if x.is_zero() && (a.is_zero() || y.is_zero()) {
                    continue;
                }
                let mut v = &p * &*x;
                if !a.is_zero() && !y.is_zero() {
                    v -= &a * y;
                }
                let (q, r) = v.div_rem(&prev);
                debug_assert!(r.is_zero(), "inexact fraction-free step");
                *x = q;
            }
        }
        m[top] = pivot_row;
        prev = p;
        pivots.push(col);
        top += 1;
    }
    m.truncate(top);
    let rows = m.into_iter().map(|r| r.into_iter().map(|a| BigRational::new(a, prev.clone())).collect()).collect();
    Echelon { ncols, rows, pivots }
}

pub fn rank<R, C, F: Field>(field: &F, m: &LabeledMatrix<R, C, F::Elem>) -> usize {
    rref(field, m.col_labels.len(), &m.rows).rank()
}

/// Basis of `{v : M v = 0}`, determined by the reduced echelon form of `M`.
pub fn kernel_basis<R, C, F: Field>(field: &F, m: &LabeledMatrix<R, C, F::Elem>) -> Vec<Vec<F::Elem>> {
    rref(field, m.col_labels.len(), &m.rows).kernel(field)
}
