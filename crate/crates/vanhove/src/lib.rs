//! A numerical laboratory for the van Hove model: a scalar quantum field
//! coupled to a static source, realized on a truncated, mode-discretized
//! bosonic Fock space.
//!
//! The crate builds the model Hamiltonian `H = dΓ(ω) - φ_S(ρ̂/√ω)`,
//! diagonalizes it exactly with a coherent dressing transformation, follows
//! annihilation amplitudes in the Heisenberg picture, and reassembles the
//! classical field `φ(t, x)` from them. The headline check: the
//! reconstructed field solves the sourced wave equation
//! `(∂_t² - Δ + m²) φ = ρ_N` to round-off, mode by mode.

pub mod error;
pub mod fock;
pub mod grid;

pub use error::{Error, Result};
