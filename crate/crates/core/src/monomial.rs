//! Exponent vectors and the label order used throughout the crate.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

/// An exponent vector in `N^n`; stands for `X^a` or `∂^a` depending on context.
///
/// The total order sorts by total degree first and breaks ties by descending
/// lexicographic order, so in two variables the order is
/// `1, x, y, x^2, xy, y^2, x^2y, ...`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(coords: Vec<u32>) -> Self {
        Exponent(coords)
    }

    pub fn zero(nvars: usize) -> Self {
        Exponent(vec![0; nvars])
    }

    /// The exponent of the variable `x_k` (0-based).
    pub fn unit(nvars: usize, k: usize) -> Self {
        let mut e = Self::zero(nvars);
        e.0[k] = 1;
        e
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    fn check(&self, other: &Exponent) -> Result<()> {
        if self.nvars() != other.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), found: other.nvars() });
        }
        Ok(())
    }

    /// Componentwise `self <= other`, i.e. `X^self` divides `X^other`.
    pub fn divides(&self, other: &Exponent) -> bool {
        self.nvars() == other.nvars() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Exponent) -> Result<Exponent> {
        self.check(other)?;
        Ok(Exponent(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect()))
    }

    pub fn gcd(&self, other: &Exponent) -> Result<Exponent> {
        self.check(other)?;
        Ok(Exponent(self.0.iter().zip(&other.0).map(|(&a, &b)| a.min(b)).collect()))
    }

    /// `X^self / X^divisor`, defined only when `divisor` divides `self`.
    pub fn div(&self, divisor: &Exponent) -> Result<Exponent> {
        self.check(divisor)?;
        if !divisor.divides(self) {
            return Err(Error::NotDivisible { dividend: self.clone(), divisor: divisor.clone() });
        }
        Ok(Exponent(self.0.iter().zip(&divisor.0).map(|(&a, &b)| a - b).collect()))
    }

    /// `X^self * X^other`
    pub fn mul(&self, other: &Exponent) -> Result<Exponent> {
        self.check(other)?;
        Ok(Exponent(self.0.iter().zip(&other.0).map(|(&a, &b)| a + b).collect()))
    }

    pub fn add_unit(&self, k: usize) -> Exponent {
        let mut e = self.clone();
        e.0[k] += 1;
        e
    }

    /// `self - e_k`, or `None` when the `k`-th coordinate is zero.
    pub fn sub_unit(&self, k: usize) -> Option<Exponent> {
        if self.0[k] == 0 {
            return None;
        }
        let mut e = self.clone();
        e.0[k] -= 1;
        Some(e)
    }

    /// Renders the monomial with the given variable names (`x^2*y`, `1`).
    pub fn display_with<'a>(&'a self, names: &'a [&'a str]) -> impl fmt::Display + 'a {
        MonomialDisplay { exp: self, names }
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

impl From<Vec<u32>> for Exponent {
    fn from(v: Vec<u32>) -> Self {
        Exponent(v)
    }
}

struct MonomialDisplay<'a> {
    exp: &'a Exponent,
    names: &'a [&'a str],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp.is_zero() {
            return f.write_str("1");
        }
        let mut first = true;
        for (k, &a) in self.exp.coords().iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            match self.names.get(k) {
                Some(name) => f.write_str(name)?,
                None => write!(f, "x{}", k + 1)?,
            }
            if a > 1 {
                write!(f, "^{a}")?;
            }
        }
        Ok(())
    }
}

/// All exponents in the box `[0, corner]`, in label order.
pub fn box_exponents(corner: &Exponent) -> Vec<Exponent> {
    let n = corner.nvars();
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    loop {
        out.push(Exponent(cur.clone()));
        let mut k = 0;
        loop {
            if k == n {
                out.sort();
                return out;
            }
            if cur[k] < corner.0[k] {
                cur[k] += 1;
                break;
            }
            cur[k] = 0;
            k += 1;
        }
    }
}

/// All exponents in `n` variables of total degree at most `t`, in label order.
pub fn monomials_up_to_degree(nvars: usize, t: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    for d in 0..=t {
        let mut cur = vec![0u32; nvars];
        compositions(&mut cur, 0, d, &mut out);
    }
    out.sort();
    out
}

fn compositions(cur: &mut Vec<u32>, k: usize, rest: u32, out: &mut Vec<Exponent>) {
    if cur.is_empty() {
        if rest == 0 {
            out.push(Exponent(Vec::new()));
        }
        return;
    }
    if k + 1 == cur.len() {
        cur[k] = rest;
        out.push(Exponent(cur.clone()));
        cur[k] = 0;
        return;
    }
    for a in 0..=rest {
        cur[k] = a;
        compositions(cur, k + 1, rest - a, out);
    }
    cur[k] = 0;
}
