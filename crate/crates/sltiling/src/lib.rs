pub mod duality;
pub mod error;
pub mod friezes;
pub mod gen;
pub mod json;
pub mod linalg;
pub mod paths;
pub mod pluecker;
pub mod positivity;
pub mod selftest;
pub mod tilings;

pub use error::{Error, Result};
pub use linalg::{Int, IntMatrix};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/matrices.md")]
    mod matrices {}
    #[doc = include_str!("../../../book/src/paths.md")]
    mod paths {}
    #[doc = include_str!("../../../book/src/tilings.md")]
    mod tilings {}
    #[doc = include_str!("../../../book/src/friezes.md")]
    mod friezes {}
    #[doc = include_str!("../../../book/src/duality.md")]
    mod duality {}
    #[doc = include_str!("../../../book/src/positivity.md")]
    mod positivity {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
