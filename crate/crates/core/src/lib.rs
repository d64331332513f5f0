//! Dynamical quantum Zeno effect in a two-qubit belief-action decision model.
//!
//! A belief qubit is rotated by evidence from `|0_b⟩` ("innocent") towards
//! `|1_b⟩`. Intermediate evaluations couple it to intention-to-act ancillas;
//! the resulting entanglement slows the transition without any collapse.
//!
//! * [`qlin`]: dense complex linear algebra (Kronecker products, Hermitian
//!   exponentials, partial traces, entropies).
//! * [`bae`]: the belief rotation, evidence schedule and belief-action generators.
//! * [`engine`]: single-evaluation experiments, curves, rates and evaluation sequences.

pub mod bae;
pub mod engine;
pub mod error;
pub mod qlin;

pub use error::{Error, Result};
