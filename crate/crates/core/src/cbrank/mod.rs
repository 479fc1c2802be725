//! Cantor-Bendixson levels of finite posets and of the encoding poset `Q`.

pub mod poset;
pub mod q;
pub mod sequences;

pub use poset::{cb_levels, FinitePoset};
pub use q::{
    q_less, q_level_closed_form, rank_unbounded_certificate, QTruncation, RankCertificate,
};
pub use sequences::{build_approach_sequence, classify_limit, LimitClassification, LimitGroup};
