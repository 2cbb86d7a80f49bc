//! Code constructions.

mod embedding;
mod families;
mod fixture;
mod mpc;

pub use embedding::{
    embed_digit, is_positive_definite, kron_identity, rational_inverse, rational_matrix, shortened_example,
    shortened_example_codewords, verify_real_embedding, RationalMatrix, RealEmbeddingReport,
};
pub use families::{
    eight_three, eight_three_fixture, five_qubit, qr_claimed_distance, quadratic_residue_code, quadratic_residues,
    ten_four, ten_four_literal, DEFAULT_MAX_QR_PRIME,
};
pub use fixture::{format_fixture, parse_fixture, Fixture};
pub use mpc::{
    check_quasi_orthogonal, classical_min_distance, matrix_product_code, nsc_distance_bound, ternary_example,
    NestedCodeChain, QuasiOrthMatrix, CLASSICAL_ENUMERATION_LIMIT,
};
