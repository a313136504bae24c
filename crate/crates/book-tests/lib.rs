//! Doc tests for the guide in `book/src`.

#[doc = include_str!("../../book/src/quivers.md")]
pub mod quivers {}

#[doc = include_str!("../../book/src/polygon.md")]
pub mod polygon {}

#[doc = include_str!("../../book/src/syzygies.md")]
pub mod syzygies {}

#[doc = include_str!("../../book/src/oracle.md")]
pub mod oracle {}

#[doc = include_str!("../../book/src/reduction.md")]
pub mod reduction {}

#[doc = include_str!("../../book/src/cli.md")]
pub mod cli {}
