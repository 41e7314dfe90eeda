//! Syzygies, Igusa-Todorov functions and LIT certificates for
//! finite-dimensional algebras over prime fields, with special support for
//! triangular matrix algebras `(T 0; M U)` and tensor products with path
//! algebras of type A.

pub mod acceptance;
pub mod algebra;
pub mod error;
pub mod exactlin;
pub mod itfun;
pub mod litcore;
pub mod modules;
pub mod par;
pub mod towers;
pub mod tritriple;

pub use error::{Error, Result};
