//! JSON documents for sequence families and computed annihilators.

use std::fs;
use std::path::Path;

use annseq_core::{AnnihilatorResult, Engine, Exponent, Field, FieldKind, NSequence, Polynomial, SequenceFamily};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed document at line {line}, column {column}: {msg}")]
    Json { line: usize, column: usize, msg: String },
    #[error("field {0:?}: expected \"rational\" or \"fp:<prime>\"")]
    Field(String),
    #[error("vars: at least one variable name is required")]
    NoVariables,
    #[error("vars[{index}]: name {name:?} is empty or repeated")]
    BadVariable { index: usize, name: String },
    #[error("sequences: the list is empty")]
    NoSequences,
    #[error("{at}: exponent has {found} entries, expected {expected}")]
    ExponentLength { at: String, found: usize, expected: usize },
    #[error("{at}: {literal:?} is not an exact scalar for field {field}")]
    Scalar { at: String, literal: String, field: FieldKind },
    #[error("{at}: exponent {exponent} listed twice")]
    Duplicate { at: String, exponent: Exponent },
    #[error("sequences[{index}]: {violation}")]
    Sequence { index: usize, violation: annseq_core::Violation },
    #[error("{0}")]
    Monomial(String),
    #[error("{0}")]
    Core(#[from] annseq_core::Error),
}

impl From<serde_json::Error> for InputError {
    fn from(e: serde_json::Error) -> Self {
        InputError::Json { line: e.line(), column: e.column(), msg: e.to_string() }
    }
}

/// One sequence: its staircase and its values as exact literals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceEntry {
    pub support: Vec<Vec<u32>>,
    pub values: Vec<(Vec<u32>, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceDocument {
    pub vars: Vec<String>,
    pub field: String,
    pub sequences: Vec<SequenceEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn parse_field(s: &str) -> Result<FieldKind, InputError> {
    s.parse().map_err(|_| InputError::Field(s.to_string()))
}

fn check_vars(vars: &[String]) -> Result<(), InputError> {
    if vars.is_empty() {
        return Err(InputError::NoVariables);
    }
    for (index, name) in vars.iter().enumerate() {
        if name.is_empty() || vars[..index].contains(name) {
            return Err(InputError::BadVariable { index, name: name.clone() });
        }
    }
    Ok(())
}

pub(crate) fn exponent(at: impl FnOnce() -> String, v: &[u32], n: usize) -> Result<Exponent, InputError> {
    if v.len() != n {
        return Err(InputError::ExponentLength { at: at(), found: v.len(), expected: n });
    }
    Ok(Exponent::new(v.to_vec()))
}

pub(crate) fn scalar<F: Field>(field: &F, at: impl FnOnce() -> String, s: &str) -> Result<F::Elem, InputError> {
    field.parse(s).ok_or_else(|| InputError::Scalar { at: at(), literal: s.to_string(), field: field.kind() })
}

impl SequenceDocument {
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: &Path) -> Result<Self, InputError> {
        let text =
            fs::read_to_string(path).map_err(|source| InputError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data") + "\n"
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field_kind(&self) -> Result<FieldKind, InputError> {
        parse_field(&self.field)
    }

    pub fn var_names(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }

    /// Parses the family over `field`, which should match `self.field`.
    pub fn family<F: Field>(&self, field: &F) -> Result<SequenceFamily<F::Elem>, InputError> {
        check_vars(&self.vars)?;
        if self.sequences.is_empty() {
            return Err(InputError::NoSequences);
        }
        let n = self.nvars();
        let mut members = Vec::with_capacity(self.sequences.len());
        for (i, entry) in self.sequences.iter().enumerate() {
            let mut support = Vec::with_capacity(entry.support.len());
            for (j, e) in entry.support.iter().enumerate() {
                let e = exponent(|| format!("sequences[{i}].support[{j}]"), e, n)?;
                if support.contains(&e) {
                    return Err(InputError::Duplicate { at: format!("sequences[{i}].support[{j}]"), exponent: e });
                }
                support.push(e);
            }
            let mut values: Vec<(Exponent, F::Elem)> = Vec::with_capacity(entry.values.len());
            for (j, (e, v)) in entry.values.iter().enumerate() {
                let at = || format!("sequences[{i}].values[{j}]");
                let e = exponent(at, e, n)?;
                if values.iter().any(|(x, _)| *x == e) {
                    return Err(InputError::Duplicate { at: at(), exponent: e });
                }
                let v = scalar(field, at, v)?;
                values.push((e, v));
            }
            let seq =
                NSequence::new(n, support, values).map_err(|violation| InputError::Sequence { index: i, violation })?;
            members.push(seq);
        }
        Ok(SequenceFamily::new(members)?)
    }

    pub fn from_family<F: Field>(vars: &[String], field: &F, family: &SequenceFamily<F::Elem>) -> Self {
        let sequences = family
            .members()
            .iter()
            .map(|s| SequenceEntry {
                support: s.support().iter().map(|e| e.coords().to_vec()).collect(),
                values: s.values().iter().map(|(e, v)| (e.coords().to_vec(), v.to_string())).collect(),
            })
            .collect();
        SequenceDocument { vars: vars.to_vec(), field: field.kind().to_string(), sequences, note: None }
    }
}

/// A polynomial as a list of `[exponent, coefficient]` terms.
pub type TermList = Vec<(Vec<u32>, String)>;

pub fn terms_of<E: Clone + std::fmt::Display>(p: &Polynomial<E>) -> TermList {
    p.terms().map(|(e, c)| (e.coords().to_vec(), c.to_string())).collect()
}

pub fn poly_from_terms<F: Field>(
    field: &F,
    n: usize,
    at: &str,
    terms: &TermList,
) -> Result<Polynomial<F::Elem>, InputError> {
    let mut out = Vec::with_capacity(terms.len());
    for (j, (e, c)) in terms.iter().enumerate() {
        let here = || format!("{at}[{j}]");
        out.push((exponent(here, e, n)?, scalar(field, here, c)?));
    }
    Ok(Polynomial::from_terms(field, n, out)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageRecord {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    pub rows: usize,
    pub cols: usize,
}

/// The output of `compute` and the generator input of `verify`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnihilatorDocument {
    pub vars: Vec<String>,
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub engine: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub degenerate: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub unit_ideal: bool,
    pub basis: Vec<TermList>,
    pub border: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub stats: Vec<StageRecord>,
}

impl AnnihilatorDocument {
    pub fn from_result<E: Clone + std::fmt::Display>(
        vars: &[String],
        field: FieldKind,
        res: &AnnihilatorResult<E>,
        with_stats: bool,
    ) -> Self {
        let stats = if with_stats {
            res.stats
                .stages
                .iter()
                .map(|s| StageRecord { kind: s.kind.to_string(), degree: s.degree, rows: s.rows, cols: s.cols })
                .collect()
        } else {
            Vec::new()
        };
        AnnihilatorDocument {
            vars: vars.to_vec(),
            field: field.to_string(),
            engine: Some(res.engine.to_string()),
            s: Some(res.s()),
            r: Some(res.r),
            degenerate: res.degenerate,
            unit_ideal: res.unit_ideal,
            basis: res.vs_basis.iter().map(terms_of).collect(),
            border: res.border_gens.iter().map(|e| e.coords().to_vec()).collect(),
            stats,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, InputError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: &Path) -> Result<Self, InputError> {
        let text =
            fs::read_to_string(path).map_err(|source| InputError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data") + "\n"
    }

    pub fn engine(&self) -> Option<Engine> {
        self.engine.as_deref().and_then(|e| e.parse().ok())
    }

    /// Basis polynomials followed by the border monomials.
    pub fn generators<F: Field>(&self, field: &F) -> Result<Vec<Polynomial<F::Elem>>, InputError> {
        check_vars(&self.vars)?;
        let n = self.vars.len();
        let mut out = Vec::new();
        for (i, t) in self.basis.iter().enumerate() {
            out.push(poly_from_terms(field, n, &format!("basis[{i}]"), t)?);
        }
        for (i, b) in self.border.iter().enumerate() {
            let e = exponent(|| format!("border[{i}]"), b, n)?;
            out.push(Polynomial::monomial(field, e, field.one()));
        }
        Ok(out)
    }
}
