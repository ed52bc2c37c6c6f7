//! Exact linear algebra for modules over quantum complete intersections
//! `k<x_1, …, x_c> / (x_i^n, x_i x_j - q x_j x_i)` over finite fields:
//! Jordan types along quantum lines, constant-Jordan-type checks, syzygies,
//! Betti numbers, Auslander-Reiten translates, and rank-based certificates
//! for syzygies of the trivial module.

pub mod algebra;
pub mod config;
pub mod error;
pub mod field;
pub mod homology;
pub mod jordan;
pub mod matrix;
pub mod module;
pub mod poly;
pub mod rank_property;
pub mod verify;

pub use algebra::{AlgebraParams, AutomorphismSpec, Monomial};
pub use error::{Error, Result};
pub use field::{make_field, FieldCtx, FieldElem};
pub use homology::{
    ar_translate, betti_sequence, complexity_estimate, find_isomorphism, hom_space,
    projective_cover, split_free, syzygy, syzygy_type_prediction, ComplexityEstimate, Cover,
    HomSpace, IsoVerdict,
};
pub use jordan::{
    check_constant, generic_rank_profile, jordan_type_at, minor_polys, partition_from_ranks,
    scan_types, CjtMethod, CjtVerdict, CjtWitness, ScanClass, ScanReport,
};
pub use matrix::Matrix;
pub use module::{sample_module_point, JordanType, ModuleRep};
pub use poly::{binary_form_gcd, HomogPoly};
pub use rank_property::{
    check_rp, classify_syzygy_of_k, nonprojective_generator, ranks_equivalence, rp_descent_step,
    AxisComponent, DescentStep, RanksEquivalence, RpReport, SyzygyClass,
};
pub use verify::{build_corpus, default_grid, run_all, CheckOutcome, GridPoint};
