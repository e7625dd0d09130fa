//! Cube, fourth and twelfth roots of elliptic-curve discriminants computed
//! from 3- and 4-torsion points, together with the exact arithmetic
//! (finite fields, Laurent series) needed to check every step of the
//! construction.

#![allow(clippy::mutable_key_type, clippy::suspicious_arithmetic_impl, clippy::wrong_self_convention)]

pub mod check;
pub mod curve;
pub mod disc_roots;
pub mod error;
pub mod field;
pub mod harness;
pub mod isogeny;
pub mod pairing;
pub mod series;
pub mod tate;
pub mod torsion;
pub mod torsor;

pub use check::Check;
pub use error::{Error, Result};
