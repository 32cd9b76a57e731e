//! File formats, input handling and the fixture suite behind the `kh`
//! binary.

pub mod format;
pub mod input;
pub mod suite;
