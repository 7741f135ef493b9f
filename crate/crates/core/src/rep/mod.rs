//! The LKB, simplicial and permutation representations on the edge space.

mod matrices;
mod verify;
mod word;

pub use matrices::{
    dual_generator_word, dual_simple_matrix, dual_simple_matrix_left, dual_simple_word, lkb_generator_matrix,
    permutation_matrix, simplicial_generator_matrix,
};
pub use verify::{
    dual_rule_triples, dual_simple_via_standard, random_dual_word, random_rational_simplex, reduced_factorizations,
    valid_rescaling_specs, verify_conjugation_coherence, verify_relations, verify_specialization, verify_theorem_a,
    verify_theorem_b, verify_two_of_three, verify_unit_determinants, Check, Report, TheoremAReport,
    TheoremAViolation,
};
pub use word::{act_on_norms, evaluate_word, evaluate_word_at, generator_matrix, BraidWord, Generator, RepMode, Token};
