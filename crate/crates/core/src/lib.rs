//! Exact model actions of the group of orientation-preserving circle
//! homeomorphisms on the annulus, torus, disc and sphere.
//!
//! Everything is piecewise linear with rational data, so every identity the
//! crate checks is checked exactly.

pub mod conjugacy;
pub mod model_actions;
pub mod pl_core;
pub mod rational;
pub mod recovery;
pub mod sampling;

pub use rational::{q, Rational};
