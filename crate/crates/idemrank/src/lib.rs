//! Exact linear algebra over additively idempotent, multiplicatively
//! cancellative semirings.
//!
//! The crate provides four exact semiring instances (the Boolean semiring,
//! max-plus integers, max-times nonnegative rationals, and max-times
//! naturals), dense matrices over them, span/basis/dimension machinery for
//! finitely generated subsemimodules, exact factor-rank computation with
//! certificates, and the classification of linear operators on matrix
//! semimodules as rank preservers via a `(U,V)` normal form.
//!
//! Everything is exact: no floating point anywhere, so equality and order
//! are decidable and every structural claim the crate makes is checked by
//! enumeration or by an independent oracle in the verification suites (see
//! [`verify`]).
//!
//! A narrative guide lives in `book/`; its code snippets compile as
//! doctests of this crate.

pub mod error;
pub mod io;
pub mod matrix;
pub mod operator;
pub mod rank;
pub mod semimodule;
pub mod semiring;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::{permutation_matrix, BasisCell, Matrix, Permutation};
pub use operator::{
    classify, cross_ratio_holds, preserves_rank_upto, rank_collapse_witness, separating_witness,
    structural_form, to_uv_form, uv_operator, ClassificationResult, Domain, LinearOperator,
    PreservationReport, Representation, StructuralForm, UvForm,
};
pub use rank::{
    candidate_summands, factor_rank, factor_rank_oracle, galois_closure, rank_one_factor,
    Rank1Candidate, RankCertificate,
};
pub use semimodule::{
    basis_correspondence, dimension, extract_basis, in_span, is_independent,
    principal_coefficient, BasisCorrespondence, GeneratingSet, Membership,
};
pub use semiring::{
    check_axioms, default_sample, parse_value, AxiomCheck, AxiomReport, SemiringId, Value,
};

// The book's code snippets double as doctests so the guide can never drift
// from the library.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/semirings.md")]
    mod semirings {}
    #[doc = include_str!("../../../book/src/matrices.md")]
    mod matrices {}
    #[doc = include_str!("../../../book/src/semimodules.md")]
    mod semimodules {}
    #[doc = include_str!("../../../book/src/factor-rank.md")]
    mod factor_rank {}
    #[doc = include_str!("../../../book/src/rank-preservers.md")]
    mod rank_preservers {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
