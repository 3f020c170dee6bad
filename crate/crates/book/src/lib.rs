//! The guide's chapters, compiled as rustdoc so `cargo test` runs every code
//! listing in `book/src` against the current library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/simplex.md")]
pub mod simplex {}
#[doc = include_str!("../../../book/src/measures.md")]
pub mod measures {}
#[doc = include_str!("../../../book/src/means.md")]
pub mod means {}
#[doc = include_str!("../../../book/src/csiszar.md")]
pub mod csiszar {}
#[doc = include_str!("../../../book/src/type-s.md")]
pub mod type_s {}
#[doc = include_str!("../../../book/src/bounds.md")]
pub mod bounds {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
