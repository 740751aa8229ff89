//! The annihilator of a family, through any of the three engines.
//!
//! With `D` the componentwise maximum of the union support `S`, `R_i` the
//! generating polynomial of member `i` reflected about `D`, and `Λ` a dual
//! element, the identity `Λ(X^t R_i) = (f · l_i)_t` holds for
//! `f = reflect_D(Λ)`. The annihilators supported in `S` are therefore the
//! reflections of `⟨R_i⟩⊥ ∩ span(D - S)`, and the full annihilator is
//! generated by them together with the border of `S`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::dual::{macaulay_orthogonal, orthogonal_up_to, DualBasis, SupportRestriction};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hankel::annihilator_hankel;
use crate::matrix::{kernel_basis, rref, LabeledMatrix};
use crate::monomial::{box_exponents, Exponent};
use crate::poly::Polynomial;
use crate::sequence::{border, corner, SequenceFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    Hankel,
    Duality,
    Macaulay,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::Hankel, Engine::Duality, Engine::Macaulay];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Hankel => "hankel",
            Engine::Duality => "duality",
            Engine::Macaulay => "macaulay",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hankel" => Ok(Engine::Hankel),
            "duality" => Ok(Engine::Duality),
            "macaulay" => Ok(Engine::Macaulay),
            _ => Err(Error::UnknownEngine),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AnnihilatorOptions {
    /// Skip the single-sequence corner shortcut and run the full pipeline.
    pub audit: bool,
    /// Let the dual iterate over the whole box `[0, D]` instead of the
    /// reflected staircase and border.
    pub safe_mode: bool,
    /// Hankel rows over the whole box instead of the support.
    pub extended_rows: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StageKind {
    Hankel,
    Macaulay,
    Integration,
    /// Cutting the iterated dual down to the reflected staircase.
    Extraction,
}

impl fmt::Display for StageKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StageKind::Hankel => "hankel",
            StageKind::Macaulay => "macaulay",
            StageKind::Integration => "integration",
            StageKind::Extraction => "extraction",
        })
    }
}

/// Size of one linear system solved by an engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageStats {
    pub kind: StageKind,
    /// Target degree for Macaulay and integration stages.
    pub degree: Option<u32>,
    pub rows: usize,
    pub cols: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub stages: Vec<StageStats>,
}

impl EngineStats {
    pub fn max_rows(&self) -> usize {
        self.stages.iter().map(|s| s.rows).max().unwrap_or(0)
    }

    pub fn max_cols(&self) -> usize {
        self.stages.iter().map(|s| s.cols).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnihilatorResult<E> {
    pub nvars: usize,
    /// The union support, in label order.
    pub support: Vec<Exponent>,
    /// Basis of the annihilators supported in `support`, in reduced echelon
    /// form over `support`.
    pub vs_basis: Vec<Polynomial<E>>,
    pub border_gens: Vec<Exponent>,
    /// `dim K[X] / ann`
    pub r: usize,
    pub stats: EngineStats,
    pub engine: Engine,
    /// Answered by the corner shortcut without solving anything.
    pub degenerate: bool,
    /// The annihilator is the whole ring.
    pub unit_ideal: bool,
}

impl<E: Clone> AnnihilatorResult<E> {
    pub fn s(&self) -> usize {
        self.support.len()
    }

    /// All generators: the basis followed by the border monomials.
    pub fn generators<F: Field<Elem = E>>(&self, field: &F) -> Vec<Polynomial<E>> {
        let mut out = self.vs_basis.clone();
        out.extend(self.border_gens.iter().map(|b| Polynomial::monomial(field, b.clone(), field.one())));
        out
    }

    /// Coefficient vectors of `vs_basis` over `support`.
    pub fn basis_matrix<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        self.vs_basis
            .iter()
            .map(|p| self.support.iter().map(|e| p.coeff(e).cloned().unwrap_or_else(|| field.zero())).collect())
            .collect()
    }
}

/// Reduced row echelon form of a set of polynomials supported in `support`,
/// with columns in the order of `support` (label order when it is sorted).
/// The result only depends on the span.
pub fn canonicalize<F: Field>(
    field: &F,
    nvars: usize,
    support: &[Exponent],
    polys: &[Polynomial<F::Elem>],
) -> Result<Vec<Polynomial<F::Elem>>> {
    let rows: Vec<Vec<F::Elem>> = polys
        .iter()
        .map(|p| {
            if let Some((e, _)) = p.terms().find(|(e, _)| !support.contains(e)) {
                return Err(Error::OutsideSupport(e.clone()));
            }
            Ok(support.iter().map(|e| p.coeff(e).cloned().unwrap_or_else(|| field.zero())).collect())
        })
        .collect::<Result<_>>()?;
    let ech = rref(field, support.len(), &rows);
    ech.rows.into_iter().map(|row| Polynomial::from_terms(field, nvars, support.iter().cloned().zip(row))).collect()
}

/// The reflected pieces shared by the dual-based engines.
struct Reflected<E> {
    corner: Exponent,
    generators: Vec<Polynomial<E>>,
    /// `D - S`
    rec_support: BTreeSet<Exponent>,
}

fn reflect_family<F: Field>(field: &F, family: &SequenceFamily<F::Elem>) -> Result<Reflected<F::Elem>> {
    let d = corner(field, family)?.global;
    let generators = family
        .members()
        .iter()
        .map(|s| s.generating_poly(field))
        .filter(|p| !p.is_zero())
        .map(|p| p.reflect_about(&d))
        .collect::<Result<_>>()?;
    let rec_support = family.union_support().iter().map(|a| d.div(a)).collect::<Result<_>>()?;
    Ok(Reflected { corner: d, generators, rec_support })
}

/// Keeps the part of `w` supported in `target`: solves
/// `Σ c_j w_j` with zero coefficients outside `target`.
fn extract<F: Field>(
    field: &F,
    nvars: usize,
    w: &DualBasis<F::Elem>,
    target: &BTreeSet<Exponent>,
) -> Result<(DualBasis<F::Elem>, StageStats)> {
    let elems: Vec<&Polynomial<F::Elem>> = w.elements().collect();
    let outside: BTreeSet<Exponent> =
        elems.iter().flat_map(|p| p.terms().map(|(e, _)| e.clone())).filter(|e| !target.contains(e)).collect();
    let outside: Vec<Exponent> = outside.into_iter().collect();
    let rows = outside
        .iter()
        .map(|e| elems.iter().map(|p| p.coeff(e).cloned().unwrap_or_else(|| field.zero())).collect())
        .collect();
    let m = LabeledMatrix::new_unchecked(outside, (0..elems.len()).collect::<Vec<_>>(), rows);
    let mut out = DualBasis::empty(nvars);
    out.degree = w.degree;
    for c in kernel_basis(field, &m) {
        let mut p = Polynomial::zero(nvars);
        for (a, q) in c.iter().zip(&elems) {
            p.add_scaled(field, a, q)?;
        }
        out.insert(field, &p)?;
    }
    let stats = StageStats { kind: StageKind::Extraction, degree: None, rows: m.nrows(), cols: m.ncols() };
    Ok((out, stats))
}

fn dual_part<F: Field>(
    field: &F,
    family: &SequenceFamily<F::Elem>,
    refl: &Reflected<F::Elem>,
    engine: Engine,
    options: AnnihilatorOptions,
) -> Result<(DualBasis<F::Elem>, EngineStats)> {
    let nvars = family.nvars();
    let m = refl.corner.degree();
    let mut stats = EngineStats::default();
    match engine {
        Engine::Macaulay => {
            let allowed = SupportRestriction { allowed: refl.rec_support.clone() };
            let (basis, st) = macaulay_orthogonal(field, &refl.generators, m, Some(&allowed))?;
            stats.stages.push(st);
            Ok((basis, stats))
        }
        Engine::Duality | Engine::Hankel => {
            let allowed = if options.safe_mode {
                SupportRestriction::new(box_exponents(&refl.corner))
            } else {
                let s = family.union_support();
                let widened = s.iter().cloned().chain(border(nvars, s));
                SupportRestriction::new(widened.filter_map(|b| refl.corner.div(&b).ok()))
            };
            let (w, steps) = orthogonal_up_to(field, &refl.generators, Some(m), Some(&allowed), true)?;
            stats.stages.extend(steps);
            let (basis, st) = extract(field, nvars, &w, &refl.rec_support)?;
            stats.stages.push(st);
            Ok((basis, stats))
        }
    }
}

/// The dual subspace `⟨R_i⟩⊥ ∩ span(D - S)`; its dimension is `s - r`.
pub fn compute_d<F: Field>(
    field: &F,
    family: &SequenceFamily<F::Elem>,
    options: AnnihilatorOptions,
) -> Result<DualBasis<F::Elem>> {
    let refl = reflect_family(field, family)?;
    Ok(dual_part(field, family, &refl, Engine::Duality, options)?.0)
}

fn unit_result<F: Field>(field: &F, family: &SequenceFamily<F::Elem>, engine: Engine) -> AnnihilatorResult<F::Elem> {
    let nvars = family.nvars();
    let support: Vec<Exponent> = family.union_support().iter().cloned().collect();
    AnnihilatorResult {
        nvars,
        vs_basis: support.iter().map(|e| Polynomial::monomial(field, e.clone(), field.one())).collect(),
        border_gens: border(nvars, family.union_support()),
        support,
        r: 0,
        stats: EngineStats::default(),
        engine,
        degenerate: false,
        unit_ideal: true,
    }
}

/// Reflection, restricted dual, reflection back.
pub fn annihilator_via_duality<F: Field>(
    field: &F,
    family: &SequenceFamily<F::Elem>,
    options: AnnihilatorOptions,
) -> Result<AnnihilatorResult<F::Elem>> {
    via_dual(field, family, Engine::Duality, options)
}

fn via_dual<F: Field>(
    field: &F,
    family: &SequenceFamily<F::Elem>,
    engine: Engine,
    options: AnnihilatorOptions,
) -> Result<AnnihilatorResult<F::Elem>> {
    let nvars = family.nvars();
    let refl = match reflect_family(field, family) {
        Err(Error::ZeroFamily) => return Ok(unit_result(field, family, engine)),
        r => r?,
    };
    let support: Vec<Exponent> = family.union_support().iter().cloned().collect();
    let border_gens = border(nvars, family.union_support());
    let s = support.len();

    let single = &family.members()[0];
    if family.len() == 1 && !options.audit && single.value(&refl.corner).is_some_and(|v| !field.is_zero(v)) {
        return Ok(AnnihilatorResult {
            nvars,
            support,
            vs_basis: Vec::new(),
            border_gens,
            r: s,
            stats: EngineStats::default(),
            engine,
            degenerate: true,
            unit_ideal: false,
        });
    }

    let (dual, stats) = dual_part(field, family, &refl, engine, options)?;
    let back: Vec<Polynomial<F::Elem>> =
        dual.elements().map(|l| l.reflect_about(&refl.corner)).collect::<Result<_>>()?;
    let vs_basis = canonicalize(field, nvars, &support, &back)?;
    let r = s - vs_basis.len();
    Ok(AnnihilatorResult {
        nvars,
        support,
        vs_basis,
        border_gens,
        r,
        stats,
        engine,
        degenerate: false,
        unit_ideal: r == 0,
    })
}

pub fn annihilator<F: Field>(
    field: &F,
    family: &SequenceFamily<F::Elem>,
    engine: Engine,
    options: AnnihilatorOptions,
) -> Result<AnnihilatorResult<F::Elem>> {
    match engine {
        Engine::Hankel => annihilator_hankel(field, family, options.extended_rows),
        Engine::Duality | Engine::Macaulay => via_dual(field, family, engine, options),
    }
}
