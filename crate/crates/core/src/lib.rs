//! Exact algebraic-geometry toolkit for compiling polynomial binary
//! optimization problems onto Ising annealing hardware: toric-ideal
//! quadratization, Groebner-basis minor embedding, symmetry folding,
//! parametric minor forms, spectral-gap profiling and Ising architecture
//! design.

pub mod error;
pub mod fold;
pub mod order;
pub mod poly;
pub mod ring;

pub mod embed;
pub mod graph;
pub mod groebner;
pub mod quadratize;

pub use error::{Error, Result};
