//! Monomial parsing and seeded random sequences over a staircase.

use annseq_core::{staircase, Exponent, Field, FieldKind, NSequence, PrimeField, Rationals, SequenceFamily};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::io::{InputError, SequenceDocument};

pub const DEFAULT_VARS: [&str; 6] = ["x", "y", "z", "u", "v", "w"];

/// Rational random values are integers drawn from this symmetric range.
pub const RATIONAL_RANGE: i64 = 1 << 15;

/// Parses `x^2*y`, `x^2 y` or `1` against the given variable names.
/// Returns the exponent padded to `names.len()` variables.
pub fn parse_monomial(s: &str, names: &[&str]) -> Result<Exponent, InputError> {
    let mut e = vec![0u32; names.len()];
    let s = s.trim();
    if s == "1" {
        return Ok(Exponent::new(e));
    }
    for factor in s.split(|c: char| c == '*' || c.is_whitespace()).filter(|f| !f.is_empty()) {
        let (name, power) = match factor.split_once('^') {
            Some((v, p)) => {
                let p =
                    p.trim().parse::<u32>().map_err(|_| InputError::Monomial(format!("bad exponent in {factor:?}")))?;
                (v.trim(), p)
            }
            None => (factor, 1),
        };
        let k = names
            .iter()
            .position(|v| *v == name)
            .ok_or_else(|| InputError::Monomial(format!("unknown variable {name:?} in {s:?}")))?;
        e[k] += power;
    }
    Ok(Exponent::new(e))
}

/// Parses a comma-separated monomial list. The number of variables is one
/// more than the highest variable index used.
pub fn parse_monomial_list(s: &str, names: &[&str]) -> Result<(usize, Vec<Exponent>), InputError> {
    let full: Vec<Exponent> =
        s.split(',').filter(|m| !m.trim().is_empty()).map(|m| parse_monomial(m, names)).collect::<Result<_, _>>()?;
    if full.is_empty() {
        return Err(InputError::Monomial("empty monomial list".into()));
    }
    let n = full.iter().filter_map(|e| e.coords().iter().rposition(|&a| a > 0)).max().map_or(1, |k| k + 1);
    Ok((n, full.into_iter().map(|e| Exponent::new(e.coords()[..n].to_vec())).collect()))
}

/// Values uniform in `[0, p)` over `Z/p`, integers in
/// `[-RATIONAL_RANGE, RATIONAL_RANGE]` over `Q`.
pub trait RandomScalar: Field {
    fn random(&self, rng: &mut ChaCha8Rng) -> Self::Elem;
}

impl RandomScalar for PrimeField {
    fn random(&self, rng: &mut ChaCha8Rng) -> u64 {
        rng.gen_range(0..self.modulus())
    }
}

impl RandomScalar for Rationals {
    fn random(&self, rng: &mut ChaCha8Rng) -> <Rationals as Field>::Elem {
        self.from_i64(rng.gen_range(-RATIONAL_RANGE..=RATIONAL_RANGE))
    }
}

/// A sequence with seeded random values on the staircase of `defining`.
/// Values are assigned in label order of the support.
pub fn random_staircase_sequence<F: RandomScalar>(
    field: &F,
    nvars: usize,
    defining: &[Exponent],
    seed: u64,
) -> Result<NSequence<F::Elem>, InputError> {
    let support = staircase(nvars, defining)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(NSequence::from_fn(nvars, support, |_| field.random(&mut rng)).expect("staircases are down-closed"))
}

/// The document written by `annseq gen`.
pub fn gen_document(
    staircase_spec: &str,
    vars: &[&str],
    seed: u64,
    field: FieldKind,
) -> Result<SequenceDocument, InputError> {
    let (n, defining) = parse_monomial_list(staircase_spec, vars)?;
    let names: Vec<String> = vars[..n].iter().map(|s| s.to_string()).collect();
    let mut doc = match field {
        FieldKind::Rational => {
            let f = Rationals;
            let seq = random_staircase_sequence(&f, n, &defining, seed)?;
            SequenceDocument::from_family(&names, &f, &SequenceFamily::single(seq)?)
        }
        FieldKind::Prime(p) => {
            let f = PrimeField::new(p)?;
            let seq = random_staircase_sequence(&f, n, &defining, seed)?;
            SequenceDocument::from_family(&names, &f, &SequenceFamily::single(seq)?)
        }
    };
    doc.note = Some(format!("staircase of {staircase_spec}, seed {seed}"));
    Ok(doc)
}
