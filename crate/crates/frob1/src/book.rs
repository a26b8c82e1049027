// The guide chapters double as doc-tests: each chapter of the mdbook under
// book/ is attached to an empty module here, so `cargo test --doc` runs
// every code block the book displays and the two can never drift apart.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/signs.md")]
pub mod signs {}

#[doc = include_str!("../../../book/src/circle.md")]
pub mod circle {}

#[doc = include_str!("../../../book/src/operations.md")]
pub mod operations {}

#[doc = include_str!("../../../book/src/frobenius.md")]
pub mod frobenius {}

#[doc = include_str!("../../../book/src/lifts.md")]
pub mod lifts {}

#[doc = include_str!("../../../book/src/qloc.md")]
pub mod qloc {}

#[doc = include_str!("../../../book/src/derham.md")]
pub mod derham {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
