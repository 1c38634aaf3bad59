//! The book chapters, included here so `cargo test --doc` compiles and runs
//! every code snippet in `book/src/`. Compiled only while collecting
//! doctests; the rendered guide is built separately with `mdbook build
//! book`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/states-and-channels.md")]
pub mod states_and_channels {}

#[doc = include_str!("../../../book/src/modular-operators.md")]
pub mod modular_operators {}

#[doc = include_str!("../../../book/src/two-state-divergences.md")]
pub mod two_state_divergences {}

#[doc = include_str!("../../../book/src/multi-state.md")]
pub mod multi_state {}

#[doc = include_str!("../../../book/src/discrimination.md")]
pub mod discrimination {}

#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
