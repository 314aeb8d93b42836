//! Exact arithmetic for prehomogeneous vector spaces of type IFPS, their
//! castling transforms, and the Diophantine equation
//! `a² + Σ m_i² − k − 2a·∏ m_i = 0` that classifies the tensor-product family.
//!
//! All linear algebra is over ℚ. Modular rank is used only as a pre-screen;
//! every positive claim is confirmed exactly.

pub mod castle;
pub mod dsl;
pub mod exactmat;
pub mod liealg;
pub mod pv;
pub mod reps;

pub use castle::{
    descend, enumerate, is_essential, is_solution, repetition_filter, residual, sc_transform, CastleError, Descent,
    DescentStep, Solution,
};
pub use dsl::{parse_expr, parse_solution, parse_triplet, render_solution, render_triplet, DslError, Expr, SourceSpan};
pub use exactmat::{rank_exact, rank_modular, MatrixError, Rational, RationalMatrix};
pub use liealg::{AlgebraSpec, FactorSpec};
pub use pv::{
    castling_check, find_generic, is_pv_type_ifps, random_castling_instances, CastlingReport, CastlingSide, GenericityCertificate, IfpsAssessment,
    PvError, SearchConfig, Verdict,
};
pub use reps::{tensor_triplet, RepError, RepKind, Representation, Triplet};
