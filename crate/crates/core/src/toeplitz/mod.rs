//! Toeplitz algebra of a self-similar action: words in p, s, s* and u are
//! rewritten to sums of monomials s_μ u_g s_ν*, the result is checked on a
//! truncated Fock model, and concrete matrix families are tested against
//! the defining relations.

pub mod fock;
pub mod matrix;
pub mod monomial;
pub mod word;

pub use fock::{
    check_monomial_products, fock_apply, fock_apply_word, fock_basis, fock_check, fock_check_on, monomial_word, monomials_up_to,
    random_word, FockReport, FockVec, FockVector, ProductReport,
};
pub use matrix::{
    check_relations, dimension_one_scan, matrix_unit, CMatrix, MatrixError, MatrixFamily, MatrixFile, MatrixReport,
    Mode, RelationCheck, ScanReport, DEFAULT_TOL,
};
pub use monomial::{monomial_multiply, Monomial, Shown};
pub use word::{
    combination_adjoint, combination_string, multiply, normalize, normalize_expression, parse_expression, parse_word,
    token_string, word_adjoint, word_string, Combination, GeneratorWord, ShownCombination, Token, WordError,
};
