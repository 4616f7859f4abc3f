//! Lie algebras of ladder matrices over exact fields.
//!
//! A ladder is an antichain of corner points in `[n] x [n]`; the matrices
//! supported on the indices dominated by a corner form the ladder algebra,
//! a Lie subalgebra of the full matrix algebra whenever the ladder is upper
//! triangular. This crate constructs these algebras over the rationals and
//! over prime fields, computes their derivation algebras by brute-force
//! exact linear algebra, and cross-validates the results against the
//! closed-form structure theory: the dominant-upper-triangular
//! classification with its Fibonacci counts, normalizer and centralizer
//! forms, the decomposition of the derivation algebra into inner and
//! trace-driven ideals, the dominance corollary, derived series shapes, and
//! adjoint witnesses for derivations of the block-traceless core.

// indexed loops over matrix coordinates read better than iterator chains here
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod counterexamples;
pub mod derivation;
pub mod error;
pub mod field;
pub mod ladder;
pub mod linalg;
pub mod verify;

pub use algebra::{
    centralizer_brute_of, centralizer_of_span, normalizer_brute_of, DerivedSeries, LadderAlgebra,
};
pub use derivation::{
    ad_endomap, case_tag, check_dominance, decompose, dee_space, derivation_space, endomap_basis,
    extend_from_core, inner_space, intertwiner_generator, is_derivation, predicted_der_dim,
    rebuild, restrict_to_core, solve_intertwiner, CaseData, CaseTag, DerDecomposition, Endomap,
    LieBasis,
};
pub use error::{Error, Result};
pub use field::{Field, FieldScalar, FieldTag, Gf, Rationals};
pub use ladder::{
    block_index_set, canonicalize, count_dut, count_dut_block_forms, dominates,
    dut_by_block_criterion, dut_pair_criterion, enumerate_all_ladders, enumerate_dut, fibonacci,
    parse_ladder, BlockPartition, Ladder, LadderClass,
};
pub use linalg::{kernel, rref, solve, Echelon, Mat, Subspace};
pub use verify::{
    all_passed, run_single, run_suite, run_suite_streaming, run_suite_with, show_report, Checks,
    Dims, ShowReport, Status, Suite, Verdict,
};
