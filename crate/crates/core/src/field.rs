//! Exact scalar fields.
//!
//! Elements do not carry their field; every operation goes through a field
//! object, so a prime modulus can be chosen at runtime.

use core::fmt;
use core::str::FromStr;

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{fraction_free_rref, gauss_jordan, Echelon};

/// Largest prime below `2^16`.
pub const DEFAULT_PRIME: u64 = 65521;

pub trait Field: Clone + fmt::Debug {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + fmt::Display;

    fn kind(&self) -> FieldKind;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Parses an exact literal: `"-3/4"` over `Q`, a decimal integer over `Z/p`.
    fn parse(&self, s: &str) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// `acc += a * b`
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        *acc = self.add(acc, &self.mul(a, b));
    }

    /// Reduced row echelon form of `rows`, each of length `ncols`.
    fn rref(&self, ncols: usize, rows: &[Vec<Self::Elem>]) -> Echelon<Self::Elem> {
        gauss_jordan(self, ncols, rows)
    }
}

/// Serializable description of a field: `rational` or `fp:<prime>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rational,
    Prime(u64),
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => f.write_str("rational"),
            FieldKind::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "rational" {
            return Ok(FieldKind::Rational);
        }
        match s.strip_prefix("fp:").map(|p| p.parse::<u64>()) {
            Some(Ok(p)) if is_prime(p) => Ok(FieldKind::Prime(p)),
            Some(Ok(p)) => Err(Error::NotPrime(p)),
            _ => Err(Error::NotPrime(0)),
        }
    }
}

/// The rationals, backed by arbitrary-precision integers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn kind(&self) -> FieldKind {
        FieldKind::Rational
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn parse(&self, s: &str) -> Option<BigRational> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num = BigInt::from_str(num).ok()?;
        let den = BigInt::from_str(den).ok()?;
        if den.is_zero() {
            return None;
        }
        Some(BigRational::new(num, den))
    }

    fn mul_add_assign(&self, acc: &mut BigRational, a: &BigRational, b: &BigRational) {
        *acc += a * b;
    }

    fn rref(&self, ncols: usize, rows: &[Vec<BigRational>]) -> Echelon<BigRational> {
        fraction_free_rref(ncols, rows)
    }
}

/// Integers modulo a prime `p < 2^63`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 63 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.p as i128) as u64
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = ((acc as u128 * base as u128) % self.p as u128) as u64;
            }
            base = ((base as u128 * base as u128) % self.p as u128) as u64;
            exp >>= 1;
        }
        acc
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn kind(&self) -> FieldKind {
        FieldKind::Prime(self.p)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }

    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i128(v as i128)
    }

    fn parse(&self, s: &str) -> Option<u64> {
        let s = s.trim();
        let (neg, digits) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        // Reduce digit by digit so arbitrarily long literals are accepted.
        let mut acc = 0u64;
        for b in digits.bytes() {
            acc = ((acc as u128 * 10 + (b - b'0') as u128) % self.p as u128) as u64;
        }
        Some(if neg { self.neg(&acc) } else { acc })
    }
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub(crate) fn is_prime(p: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if p < 2 {
        return false;
    }
    for &b in &BASES {
        if p.is_multiple_of(b) {
            return p == b;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let pow = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            exp >>= 1;
        }
        acc
    };
    let s = (p - 1).trailing_zeros();
    let d = (p - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow(a, d);
        if x == 1 || x == p - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == p - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn axioms<F: Field>(field: &F, sample: impl Fn(&mut ChaCha8Rng) -> F::Elem) {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let (a, b, c) = (sample(&mut rng), sample(&mut rng), sample(&mut rng));
            assert_eq!(field.add(&field.add(&a, &b), &c), field.add(&a, &field.add(&b, &c)));
            assert_eq!(field.mul(&field.mul(&a, &b), &c), field.mul(&a, &field.mul(&b, &c)));
            assert_eq!(field.mul(&a, &field.add(&b, &c)), field.add(&field.mul(&a, &b), &field.mul(&a, &c)));
            assert!(field.is_zero(&field.add(&a, &field.neg(&a))));
            assert_eq!(field.sub(&a, &b), field.add(&a, &field.neg(&b)));
            if !field.is_zero(&a) {
                assert_eq!(field.mul(&a, &field.inv(&a).unwrap()), field.one());
            }
        }
    }

    #[test]
    fn rational_axioms() {
        let q = Rationals;
        axioms(&q, |rng| {
            let n: i64 = rng.gen_range(-50..=50);
            let d: i64 = rng.gen_range(1..=20);
            BigRational::new(n.into(), d.into())
        });
    }

    #[test]
    fn prime_axioms() {
        let f = PrimeField::default();
        axioms(&f, |rng| rng.gen_range(0..DEFAULT_PRIME));
        let small = PrimeField::new(7).unwrap();
        axioms(&small, |rng| rng.gen_range(0..7));
    }

    #[test]
    fn rationals_are_normalized() {
        let q = Rationals;
        let a = q.parse("6/-8").unwrap();
        assert_eq!(a, q.parse("-3/4").unwrap());
        assert_eq!(a.denom(), &BigInt::from(4));
        assert!(q.parse("1/0").is_none());
        assert!(q.parse("abc").is_none());
        assert_eq!(alloc::format!("{}", q.parse("10/5").unwrap()), "2");
    }

    #[test]
    fn prime_parse_reduces() {
        let f = PrimeField::new(65521).unwrap();
        assert_eq!(f.parse("65522"), Some(1));
        assert_eq!(f.parse("-1"), Some(65520));
        assert_eq!(f.parse("3/4"), None);
        assert_eq!(f.from_i64(-65521), 0);
    }

    #[test]
    fn field_kind_round_trip() {
        for s in ["rational", "fp:65521", "fp:2"] {
            assert_eq!(s.parse::<FieldKind>().unwrap().to_string(), s);
        }
        assert_eq!("fp:65520".parse::<FieldKind>(), Err(Error::NotPrime(65520)));
        assert!(PrimeField::new(1).is_err());
        assert!(is_prime(DEFAULT_PRIME) && !is_prime(65535));
        assert!(is_prime((1 << 61) - 1) && !is_prime(3_215_031_751));
    }
}
