//! Exact rational linear algebra for Perron spectracones and spectratopes:
//! which diagonal matrices a given similarity basis maps into the nonnegative
//! matrices, and constructive realization of spectra by nonnegative,
//! symmetric, doubly stochastic, or trisymmetric matrices.
//!
//! All arithmetic is over arbitrary-precision rationals; the only
//! floating-point path is the explicitly flagged numeric fallback in
//! [`realize::realize_n3_symmetric`].

pub mod error;
pub mod exact_linalg;
pub mod hadamard;
pub mod perron;
pub mod polyhedra;
pub mod rational;
pub mod realize;

pub use error::{Error, Result};
pub use exact_linalg::{
    char_poly, determinant, diag_from, diag_of, direct_sum, eval_poly_matrix, hadamard_product,
    inverse, kron, poly_from_roots, solve, PermutationSpec, RatMatrix, RatVector,
};
pub use hadamard::{
    check_hadamard, from_pm_text, group_matrix, group_matrix_coeffs, hadamard_of_order,
    next_hadamard_order, normalize_hadamard, order_in_catalogue, perm_basis, perm_from_walsh_row,
    scheme_index_product, to_pm_text, walsh, walsh_with_cap, NormalizedHadamard, SchemeBasis,
    WalshMatrix,
};
pub use perron::{
    classify, doubly_stochastic_eligible, is_m_matrix, necessary_conditions,
    relative_gain_array, ConditionsReport, PerronSimilarity, Violation,
};
pub use polyhedra::{
    cone_membership_direct, enumerate_vertices, enumerate_vertices_with, hrep_membership,
    project_p1, simplex_volume, spectracone_hrep, spectratope_hrep, walsh_cone_membership,
    wpolytope_hrep, HRep, Inequality, SimplexSpec, Tag, VertexEnumOptions,
};
pub use rational::{
    format_rational, parse_rational, parse_rational_list, rat, rat_int, rational_sqrt,
    to_decimal, to_f64, Rational,
};
pub use realize::{
    is_suleimanova, normalize, realize_auto, realize_n2, realize_n3, realize_n3_symmetric,
    realize_n4, realize_suleimanova, realize_suleimanova_padded, suleimanova_decomposition,
    trace_zero_3x3_circulant, verify_certificate, CheckFailure, Flags, Method,
    RealizationCertificate, Spectrum, SuleimanovaDecomposition, VerificationReport,
};
