//! The guide from `book/`, mirrored into rustdoc modules so that every
//! fenced Rust example in it compiles against the current `waa` API and
//! runs under `cargo test`. If a chapter drifts from the library, the
//! build breaks here — the book cannot silently rot.
//!
//! Read the rendered version with `mdbook serve book`, or browse these
//! modules in rustdoc; the content is identical by construction.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/one-dimension.md")]
pub mod one_dimension {}

#[doc = include_str!("../../../book/src/geometry.md")]
pub mod geometry {}

#[doc = include_str!("../../../book/src/semidiscrete.md")]
pub mod semidiscrete {}

#[doc = include_str!("../../../book/src/shape-gradient.md")]
pub mod shape_gradient {}

#[doc = include_str!("../../../book/src/solver.md")]
pub mod solver {}

#[doc = include_str!("../../../book/src/data-pipeline.md")]
pub mod data_pipeline {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
