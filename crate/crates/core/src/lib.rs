//! Exact computation of the ideal of linear recurrence relations (the
//! annihilator) of one or several finitely supported n-dimensional sequences.
//!
//! Three interchangeable engines are provided:
//!
//! - [`Engine::Hankel`]: kernel of the (quasi-)Hankel system built from the
//!   sequence values. This is the reference oracle.
//! - [`Engine::Macaulay`]: reflect the generating polynomials about the global
//!   corner and solve the column-restricted Macaulay (Toeplitz) system for the
//!   orthogonal of the reflected ideal.
//! - [`Engine::Duality`]: same reduction, but the orthogonal is built degree by
//!   degree with the integration method, which keeps the linear systems
//!   proportional to `s - r` instead of `s`.
//!
//! All arithmetic is exact, over `Q` ([`Rationals`]) or `Z/p` ([`PrimeField`]).
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod annihilator;
pub mod dual;
mod error;
pub mod field;
pub mod hankel;
pub mod matrix;
pub mod monomial;
pub mod poly;
pub mod sequence;

pub use annihilator::{
    annihilator, annihilator_via_duality, canonicalize, compute_d, AnnihilatorOptions, AnnihilatorResult, Engine,
    EngineStats, StageKind, StageStats,
};
pub use dual::{
    integration_step, macaulay_matrix, macaulay_orthogonal, orthogonal_up_to, DualBasis, MacaulayRow,
    SupportRestriction,
};
pub use error::{Error, Result};
pub use field::{Field, FieldKind, PrimeField, Rationals, DEFAULT_PRIME};
pub use hankel::{annihilator_hankel, build_hankel, build_hankel_extended, HankelRow, HankelSystem};
pub use matrix::{kernel_basis, rank, rref, Echelon, LabeledMatrix};
pub use monomial::{box_exponents, monomials_up_to_degree, Exponent};
pub use poly::{PolySpan, Polynomial};
pub use sequence::{
    border, corner, is_annihilator, module_action, staircase, CornerData, NSequence, SequenceFamily, Violation,
};
