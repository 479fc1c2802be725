//! Periodic additive subgroups of `R^n`, `R = F_p[x, x^-1]`.

pub mod construct;
pub mod count;
pub mod submodule;
pub mod vector;

pub use construct::{approach_sequence, construct_prescribed, vanish_sequence};
pub use count::{count_submodules_formula, enumerate_submodules};
pub use submodule::{
    exponent, membership, r_value, rank_of, rescale, rk_m, CanonicalModule, InvariantReport,
    SubmoduleGens,
};
pub use vector::LaurentVector;
