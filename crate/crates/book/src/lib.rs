//! The guide under `book/` is an mdbook. Each chapter is pulled in here as
//! module docs so `cargo test` runs its listings.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/witten.md")]
pub mod witten {}
#[doc = include_str!("../../../book/src/local.md")]
pub mod local {}
#[doc = include_str!("../../../book/src/bounds.md")]
pub mod bounds {}
#[doc = include_str!("../../../book/src/alternating.md")]
pub mod alternating {}
#[doc = include_str!("../../../book/src/euler.md")]
pub mod euler {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
