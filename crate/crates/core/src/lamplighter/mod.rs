//! The lamplighter group `L_{n,p} = (Z/pZ)^n ≀ Z` and its subgroups.

pub mod ball;
pub mod group;
pub mod triple;

pub use ball::{ball_elements, converges_on_ball, word_closure, Convergence};
pub use group::GroupElement;
pub use triple::{
    canonical_triple, conjugate, contains, cylinder_test, phi_encoding, pi1, pi2,
    triple_membership, MembershipOracle, QPoint, SubgroupTriple, TripleJson,
};
