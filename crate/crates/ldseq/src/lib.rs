//! Exact leading-digit sequences of power sequences and their block complexity.
//!
//! For a positive rational `a` and an integer base `b`, the sequence under
//! study is `S_{a,b} = (D_b(aⁿ))_{n≥1}` where `D_b(x)` is the leading base-b
//! digit of `x`. This crate generates such sequences exactly, computes their
//! block complexity three independent ways (closed-form line, torus-set
//! oracle, empirical window counting), derives extreme/asymptotic/average
//! slope statistics, enumerates the realizable complexity coefficient pairs,
//! and measures cyclomatic complexity of the associated transition and Rauzy
//! graphs.
//!
//! The crate is `no_std` (alloc only); all arithmetic is exact.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod complexity;
pub mod digits;
pub mod error;
mod fixedlog;
pub mod goodpairs;
pub mod graph;
pub mod number;
pub mod torus;

pub use complexity::{
    asymptotic_slope_limit, average_slope, complexity_line, converged_prefix,
    empirical_complexity, empirical_profile, extreme_bounds, p_formula, ComplexityProfile,
    LinearComplexity, PrefixPolicy, ProfileMethod,
};
pub use digits::{
    generate_prefix, generate_prefix_from, leading_digit, Digit, DigitSequencePrefix, Mode,
    NormalizedMantissa,
};
pub use error::{Error, Result};
pub use goodpairs::{
    conjecture_stats, g_of_c, g_of_c_ds, g_table, good_ds_for_base, good_pairs_for_base,
    saturation_check, Bound, ConjectureRow, EnumerationBounds, GoodPair, Witness,
};
pub use graph::{
    build_rauzy, build_transition_graph, iyengar_parse, CyclomaticResult, IyengarBlock,
    IyengarParse, RauzyGraph, TransitionGraph,
};
pub use number::{
    canonicalize, factorize, is_rational_power_of, is_squarefree, AdmissiblePair, CanonicalForm,
    Factorization, Rational,
};
pub use torus::{lk_set, lk_size, lk_sizes, p_oracle, LkSet, TorusPoint};
pub use num_bigint::BigUint;
