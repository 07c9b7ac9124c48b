//! Semigroups `T_OP(X, X')` of order-preserving transformations of a finite
//! chain `X` with range restricted to `X' ⊆ X`.
//!
//! The crate enumerates these semigroups, builds their Cayley tables,
//! exposes the structure used to compare them (gap blocks, adjusted chains,
//! partial graphs, K-classes), and decides isomorphism two ways: from the
//! chain pairs alone ([`decide_iso`]) and by exhaustive search over the
//! multiplication tables ([`find_iso`]). [`cross_validate`] runs both over a
//! family of instances and reports any disagreement.
//!
//! Composition is left to right throughout: `x(αβ) = (xα)β`.
//!
//! ```
//! use ordsemi::{decide_iso, ChainPair, CayleyTable, find_iso, SearchOptions, DEFAULT_CAP};
//!
//! let a = ChainPair::new(3, vec![1, 2]).unwrap();
//! let b = ChainPair::new(3, vec![0, 1]).unwrap();
//! assert!(decide_iso(&a, &b).is_isomorphic());
//!
//! let ta = CayleyTable::build(&a, DEFAULT_CAP).unwrap();
//! let tb = CayleyTable::build(&b, DEFAULT_CAP).unwrap();
//! assert!(find_iso(ta.table(), tb.table(), SearchOptions::default()).unwrap().is_some());
//! ```

pub mod chain;
pub mod cli;
pub mod decision;
pub mod error;
pub mod semigroup;
pub mod structures;
pub mod transform;

pub use chain::{pair_isomorphism, Chain, ChainPair, GapBlock, GapSignature, Orientation};
pub use decision::{
    construct_iso_from_theta, construct_iso_x2, cross_validate, decide_iso, CrossOptions, CrossReport, Decision,
    Family, Rule, Verdict, Witness,
};
pub use error::{Error, Result};
pub use semigroup::{
    check_preservation, extend_theta_hat, extract_theta, find_all_isos, find_iso, verify_iso, CayleyTable,
    MulTable, RangeBijection, SearchOptions, SemigroupIso, DEFAULT_BUDGET,
};
pub use structures::{
    adjusted_chain, classify_lambda, k_classes, k_equivalent, lambda_class_sizes, lambda_mult_table_check,
    partial_graph, AdjustedChain, KClassPartition, LambdaShape, PartialGraph,
};
pub use transform::{
    compose, constant_map, count_top, enumerate_top, omega_high, omega_low, omega_three, FullMap, RangeMap,
    Transformation, DEFAULT_CAP,
};
