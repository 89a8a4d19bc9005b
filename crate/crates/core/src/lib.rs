//! Character theory of finite permutation groups.
//!
//! Stabilizer chains and conjugacy classes ([`perm`]), exact cyclotomic
//! numbers ([`cyclo`]), Dixon–Schneider character tables ([`dixon`]),
//! permutation characters and Frobenius–Schur indicators ([`charfun`]), a
//! text format for character tables ([`tableio`]), a corpus of groups
//! ([`corpus`]) and checkers for statements about real constituents of
//! permutation characters ([`verify`]).

pub mod arith;
pub mod charfun;
pub mod context;
pub mod corpus;
pub mod cyclo;
pub mod dixon;
pub mod error;
pub mod perm;
pub mod table;
pub mod tableio;
pub mod verify;

pub use error::{Error, Result};
