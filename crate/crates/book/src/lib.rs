//! Guide snippets, compiled as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/conventions.md")]
pub mod conventions {}
#[doc = include_str!("../../../book/src/folders.md")]
pub mod folders {}
#[doc = include_str!("../../../book/src/bol.md")]
pub mod bol {}
#[doc = include_str!("../../../book/src/simplicity.md")]
pub mod simplicity {}
#[doc = include_str!("../../../book/src/base-loop.md")]
pub mod base_loop {}
#[doc = include_str!("../../../book/src/modules.md")]
pub mod modules {}
#[doc = include_str!("../../../book/src/family.md")]
pub mod family {}
#[doc = include_str!("../../../book/src/formats.md")]
pub mod formats {}
