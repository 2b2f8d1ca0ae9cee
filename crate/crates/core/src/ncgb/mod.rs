//! Noncommutative polynomials over `Q(t)` and Groebner basis completion in
//! the free associative algebra under the degree-lexicographic order.

mod completion;
mod poly;
mod word;

pub use completion::{
    buchberger, complete_relations, default_degree_bound, is_groebner_basis, linear_combination,
    obstructions, reduce, reduce_with_strategy, GroebnerError, GroebnerResult, ObstructionSet,
    ReductionStrategy,
};
pub use poly::NcPolynomial;
pub use word::{compare_words, Word, WordParseError};
