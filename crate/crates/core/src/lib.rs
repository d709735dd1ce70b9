//! q-ary (1,1)-criss-cross deletion correcting codes.
//!
//! An `n×n` array over `Σ_q` is protected against the simultaneous loss of
//! one row and one column. The building blocks are one-dimensional
//! Differential VT codes ([`vt`]) and their run-length-limited, suffix
//! constrained variant ([`rll`]). The array code itself lives in [`code`],
//! [`encode`] and [`decode`]; [`harness`] holds redundancy analysis, exact
//! code-size counting, the file format and the self-test driver.

pub mod array;
pub mod code;
pub mod decode;
pub mod encode;
pub mod error;
pub mod fixtures;
pub mod harness;
pub mod radix;
pub mod rll;
pub mod vt;

pub use array::{CodeArray, ReceivedArray};
pub use code::{
    check_zero_sums, corrupt, deletion_ball, first_violation, is_codeword, CodeParams, Condition,
    MessageLengths,
};
pub use decode::{decode, decode_traced, DecodeTrace};
pub use encode::{encode, encode_traced, recover_data, recover_data_traced, EncodeTrace};
pub use error::{Error, Result};
pub use vt::{DvtParams, Sequence};
