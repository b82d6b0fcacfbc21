//! Palindromic structure of finite words: defect and richness via an
//! incremental palindromic tree, incompatibility analysis for pairs of rich
//! words, exact rich-word enumeration, and morphism classification with
//! fixed-point profiling.
//!
//! The crate is organized around a handful of small, pure layers:
//!
//! - [`word`]: immutable words and alphabets, factors, occurrences, complete
//!   return words.
//! - [`eertree`]: the palindromic tree over integer letters, with exact
//!   single-append rollback for shared-tree searches.
//! - [`palindrome`]: word-level defect, richness, longest palindromic
//!   prefix/suffix, and the unioccurrent-palindromic-suffix factorization.
//! - [`richness`]: incompatibility conditions on pairs of rich words, witness
//!   extraction from non-rich words, bounded compatibility search, and the
//!   complexity identities.
//! - [`enumeration`]: exact counting of rich words by pruned search and the
//!   run-length lower-bound construction.
//! - [`morphism`]: morphism parsing, conjugacy, palindromic decompositions,
//!   and defect/reversal profiling of fixed points.
//! - [`cli`]: the `richwords` command-line surface.

pub mod cli;
pub mod eertree;
pub mod enumeration;
mod error;
pub mod morphism;
pub mod palindrome;
pub mod richness;
pub mod word;

pub use error::{Error, Result};
pub use palindrome::{DefectReport, PalIndex};
pub use word::{Alphabet, Word};
