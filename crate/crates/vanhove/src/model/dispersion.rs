//! Dispersion relations `ω(k)`.

use serde::{Deserialize, Serialize};

/// Massless `ω(k) = |k|` or massive `ω(k) = √(|k|² + m²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Dispersion {
    Massless,
    Massive { mass: f64 },
}

impl Dispersion {
    pub fn evaluate(&self, k: &[f64]) -> f64 {
        let k2: f64 = k.iter().map(|c| c * c).sum();
        match self {
            Dispersion::Massless => k2.sqrt(),
            Dispersion::Massive { mass } => (k2 + mass * mass).sqrt(),
        }
    }

    pub fn is_massless(&self) -> bool {
        matches!(self, Dispersion::Massless)
    }

    pub fn mass(&self) -> f64 {
        match self {
            Dispersion::Massless => 0.0,
            Dispersion::Massive { mass } => *mass,
        }
    }

    /// `ω(k_j)` at every node of a grid.
    pub fn on_grid(&self, grid: &crate::grid::ModeGrid) -> Vec<f64> {
        grid.evaluate_real(|k| self.evaluate(k))
    }
}
