//! Expansion complexity `E_N` and irreducible-expansion complexity `E*_N`
//! of sequences over prime fields.
//!
//! For a prefix `s_0, …, s_{N−1}` with generating function
//! `G(x) = Σ s_i x^i`, `E_N` is the least total degree of a nonzero
//! `h ∈ F_p[x, y]` with `h(x, G(x)) ≡ 0 mod x^N` (and 0 for an all-zero
//! prefix); `E*_N` additionally requires `h` to be irreducible.

pub mod complexity;
pub mod error;
pub mod experiments;
pub mod field;
pub mod generators;
pub mod linalg;
pub mod poly;
pub mod sequence;

pub use complexity::{
    expansion_complexity, expansion_profile, expansion_profile_values, extend_sequence,
    find_defining_poly, find_defining_poly_with, i_expansion_complexity, solution_space,
    ComplexityKind, ComplexityProfile, ComplexityResult, Extension, ExtensionStatus, SearchConfig,
    SolutionSpace, Status,
};
pub use error::{Error, Result};
pub use field::{FieldElement, PrimeField};
pub use poly::{BivariatePoly, TruncatedSeries};
pub use sequence::SequencePrefix;
