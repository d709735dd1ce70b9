//! Tooling around the code: redundancy analysis, code-size counting, the
//! array file format and the randomized/exhaustive self-test.

pub mod analysis;
pub mod count;
pub mod format;
pub mod selftest;
