//! Independent ground truth for the character-ring arithmetic.
//!
//! Two models that share no code with [`crate::charring`]'s table
//! enumeration: class functions on cycle types, and explicit permutation
//! groups for small degrees.

pub mod bareiss;
pub mod classfun;
pub mod perm;

pub use classfun::{
    classfunction_products, decompose, phi_classfunction, product_via_classfunctions, ClassFunction,
};
pub use perm::{
    all_perms, cycle_type_representative, double_cosets, mackey_by_permutations, normalizer_and_w,
    normalizer_mackey, p_rank, permutation_character, verify_eq5_permutation, verify_eq6, w_group,
    w_order_formula, young_double_coset_count, young_subgroup, Perm, PermGroup, DEFAULT_BOUND,
    HARD_BOUND, SLOW_BOUND,
};
