//! A workbench for finite universal algebra: algebras given by operation
//! tables, bitset-backed relation algebra and congruence lattices, term
//! clones and free algebras, Maltsev-condition levels (Jónsson, alvin,
//! Gumm, Day) found by layered search, and brute-force verification of
//! congruence and tolerance identities.

pub mod algebra;
pub mod budget;
pub mod catalog;
pub mod clones;
pub mod error;
pub mod relations;
pub mod sequences;
pub mod term;
pub mod verify;

pub use algebra::{load_algebra, FiniteAlgebra, Signature};
pub use budget::Budget;
pub use clones::{
    free_algebra, generate_clone, level, reconstruct_term, CloneLimits, CloneSet, LevelOutcome,
    LevelReport, DEFAULT_CLONE_CAP, DEFAULT_LEVEL_CAP,
};
pub use error::{Error, Result};
pub use relations::{
    all_congruences, compatible_closure, compose_chain, congruence_generated,
    enumerate_tolerances, is_compatible, join_congruences, meet_congruences,
    reflexive_compatible_from_seeds, reflexive_compatible_relations, relation_power,
    tolerance_generated, BinaryRelation, Congruence, CongruenceLattice, Tolerance,
};
pub use sequences::{
    all_patterns, build_am_witness, build_tm_witness, check_am, check_sequence, check_tm,
    double_star_transform, star_transform, star_transform_term, star_transform_terms, Direction,
    SequenceKind, ValidityReport, Violation,
};
pub use term::{evaluate_term, term_operation, Term, TermNode, TermOperation};
pub use verify::{
    check_cd_inclusion, check_corollary11, check_corollary6, check_theorem12,
    check_tip, check_tschantz_identity, decide_cd_variety, InclusionReport, InclusionViolation,
    PatternS, PatternTag, SPlusOutcome, Theorem12Report,
};
