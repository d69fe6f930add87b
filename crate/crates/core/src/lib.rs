//! Exact joint leading digits of positive rationals across several bases.
//!
//! The crate is `no_std` (it needs `alloc`) and never touches floating point
//! on any decision path. Modules, bottom-up:
//!
//! * [`digits`]: leading digit of an exact rational, digit sets `S(b, e, j)`
//!   and refinement of a digit in base `b^e` to base `b`.
//! * [`dependence`]: perfect-power canonical forms and the `(a, e1, e2)`
//!   certificate of multiplicative dependence between two bases.
//! * [`image`]: the image of the joint digit map for a dependent pair, by the
//!   power-interval criterion and, independently, by the combined-base table.
//! * [`witness`]: explicit, exactly verified witnesses for digit tuples.
//! * [`real`] and [`torus`]: certified dyadic-interval reals and the
//!   rectangle partition of the torus used for coverage diagnostics.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod base;
pub mod dependence;
pub mod digits;
mod error;
pub mod image;
mod limits;
mod rational;
pub mod real;
pub mod torus;
pub mod witness;

pub use base::{Base, Digit};
pub use error::Error;
pub use limits::Limits;
pub use rational::{ParseRationalError, PositiveRational};

pub type Result<T, E = Error> = core::result::Result<T, E>;
