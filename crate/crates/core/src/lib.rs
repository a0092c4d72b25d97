//! Exact desk-scale models for tubular hyperplane arrangements over the
//! truncated rings `Z/p^n`: projective points and dual hyperplanes, the
//! rank and fibration-shape combinatorics of unions of tubes, the twisted
//! and ratio cochain complexes over the standard projective cover, and
//! the measure-lattice structure of units on arrangement interiors.
//!
//! Everything is computed in exact integer arithmetic; analytic objects
//! enter only through the finite lattices and complexes that determine
//! them at a fixed precision.

pub mod arr;
pub mod cech;
pub mod complex;
pub mod error;
pub mod limits;
pub mod logexp;
pub mod matrix;
pub mod measures;
pub mod proj;
pub mod ring;
pub mod snf;
pub mod torus;

pub use error::{Error, Result};
