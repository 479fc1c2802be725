pub mod algebra;
pub mod cbrank;
pub mod error;
pub mod irs;
pub mod lamplighter;
pub mod modules;
pub mod selftest;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    mod algebra {}
    #[doc = include_str!("../../../book/src/modules.md")]
    mod modules {}
    #[doc = include_str!("../../../book/src/lamplighter.md")]
    mod lamplighter {}
    #[doc = include_str!("../../../book/src/cbrank.md")]
    mod cbrank {}
    #[doc = include_str!("../../../book/src/irs.md")]
    mod irs {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
