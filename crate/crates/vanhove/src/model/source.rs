//! Static source profiles `ρ(x)` and the interaction coupling
//! `f_I(k) = ρ̂(k)/√ω(k)`.
//!
//! Fourier convention is symmetric: `ρ̂(k) = (2π)^{-d/2} ∫ ρ(x) e^{-ik·x} dx`.
//! Sources are required real-valued, so `ρ̂(-k) = ρ̂(k)*`.

use std::io::{BufRead, BufReader};
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::ModeGrid;
use crate::model::dispersion::Dispersion;

/// A static real source with a known Fourier transform, scaled by a
/// coupling constant `λ ≥ 0` (`λ = 0` is the free theory).
#[derive(Debug, Clone)]
pub enum SourceProfile {
    /// `ρ(x) = λ A e^{-|x|²/(2σ²)}`, `ρ̂(k) = λ A σ^d e^{-σ²|k|²/2}`.
    Gaussian {
        dimension: usize,
        amplitude: f64,
        width: f64,
        coupling: f64,
    },
    /// Tabulated `ρ̂` at explicit momenta; position-space values are not
    /// available, so position-space diagnostics are skipped for this kind.
    Tabulated {
        dimension: usize,
        coupling: f64,
        momenta: Vec<Vec<f64>>,
        values: Vec<Complex64>,
    },
}

impl SourceProfile {
    pub fn gaussian(dimension: usize, amplitude: f64, width: f64, coupling: f64) -> Result<Self> {
        if !(width > 0.0) || !width.is_finite() {
            return Err(Error::Profile(format!(
                "gaussian width must be positive, got {width}"
            )));
        }
        if !(coupling >= 0.0) || !coupling.is_finite() {
            return Err(Error::Profile(format!(
                "coupling must be non-negative, got {coupling}"
            )));
        }
        if !amplitude.is_finite() {
            return Err(Error::Profile("amplitude must be finite".into()));
        }
        Ok(Self::Gaussian {
            dimension,
            amplitude,
            width,
            coupling,
        })
    }

    /// Tabulated profile from in-memory rows.
    pub fn tabulated(
        dimension: usize,
        coupling: f64,
        momenta: Vec<Vec<f64>>,
        values: Vec<Complex64>,
    ) -> Result<Self> {
        if momenta.len() != values.len() || momenta.is_empty() {
            return Err(Error::Profile(
                "tabulated source needs one value per momentum row".into(),
            ));
        }
        for row in &momenta {
            if row.len() != dimension {
                return Err(Error::Profile(format!(
                    "momentum row of dimension {} in a {dimension}-dimensional table",
                    row.len()
                )));
            }
        }
        if !(coupling >= 0.0) || !coupling.is_finite() {
            return Err(Error::Profile(format!(
                "coupling must be non-negative, got {coupling}"
            )));
        }
        Ok(Self::Tabulated {
            dimension,
            coupling,
            momenta,
            values,
        })
    }

    /// Load a tabulated profile: whitespace-separated rows
    /// `k_1 … k_d  Re ρ̂  Im ρ̂`, `#`-prefixed comment lines ignored.
    pub fn tabulated_from_file(path: &Path, dimension: usize, coupling: f64) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        let reader = BufReader::new(file);
        let mut momenta = Vec::new();
        let mut values = Vec::new();
        for (line_no, line) in reader.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<f64> = trimmed
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<f64>().map_err(|_| Error::Profile(format!(
                        "{}:{}: cannot parse '{tok}' as a number",
                        path.display(),
                        line_no + 1
                    )))
                })
                .collect::<Result<_>>()?;
            if fields.len() != dimension + 2 {
                return Err(Error::Profile(format!(
                    "{}:{}: expected {} columns (k components, Re, Im), got {}",
                    path.display(),
                    line_no + 1,
                    dimension + 2,
                    fields.len()
                )));
            }
            momenta.push(fields[..dimension].to_vec());
            values.push(Complex64::new(fields[dimension], fields[dimension + 1]));
        }
        Self::tabulated(dimension, coupling, momenta, values)
    }

    pub fn dimension(&self) -> usize {
        match self {
            Self::Gaussian { dimension, .. } | Self::Tabulated { dimension, .. } => *dimension,
        }
    }

    pub fn coupling(&self) -> f64 {
        match self {
            Self::Gaussian { coupling, .. } | Self::Tabulated { coupling, .. } => *coupling,
        }
    }

    /// Same profile with a different coupling scale.
    pub fn with_coupling(&self, coupling: f64) -> Self {
        let mut out = self.clone();
        match &mut out {
            Self::Gaussian { coupling: c, .. } | Self::Tabulated { coupling: c, .. } => {
                *c = coupling
            }
        }
        out
    }

    /// `ρ̂(k)` including the coupling scale.
    pub fn rho_hat(&self, k: &[f64]) -> Result<Complex64> {
        match self {
            Self::Gaussian {
                dimension,
                amplitude,
                width,
                coupling,
            } => {
                let k2: f64 = k.iter().map(|c| c * c).sum();
                let value = coupling
                    * amplitude
                    * width.powi(*dimension as i32)
                    * (-width * width * k2 / 2.0).exp();
                Ok(Complex64::new(value, 0.0))
            }
            Self::Tabulated {
                coupling,
                momenta,
                values,
                ..
            } => {
                let tol = 1e-9;
                for (row, value) in momenta.iter().zip(values) {
                    let close = row
                        .iter()
                        .zip(k)
                        .all(|(a, b)| (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs())));
                    if close {
                        return Ok(coupling * value);
                    }
                }
                Err(Error::Profile(format!(
                    "tabulated source has no entry for momentum {k:?}"
                )))
            }
        }
    }

    /// `ρ(x)` including the coupling scale; `None` for tabulated profiles.
    pub fn rho(&self, x: &[f64]) -> Option<f64> {
        match self {
            Self::Gaussian {
                amplitude,
                width,
                coupling,
                ..
            } => {
                let x2: f64 = x.iter().map(|c| c * c).sum();
                Some(coupling * amplitude * (-x2 / (2.0 * width * width)).exp())
            }
            Self::Tabulated { .. } => None,
        }
    }

    /// Gaussian width when available (spatial sampling default uses it).
    pub fn width(&self) -> Option<f64> {
        match self {
            Self::Gaussian { width, .. } => Some(*width),
            Self::Tabulated { .. } => None,
        }
    }

    /// `ρ̂` at every node.
    pub fn rho_hat_on_grid(&self, grid: &ModeGrid) -> Result<Vec<Complex64>> {
        (0..grid.len()).map(|j| self.rho_hat(grid.node(j))).collect()
    }

    /// Largest deviation from `ρ̂(-k) = ρ̂(k)*` over symmetric node pairs.
    /// `None` when the grid is not symmetric.
    pub fn hermitian_symmetry_defect(&self, grid: &ModeGrid) -> Result<Option<f64>> {
        if !grid.is_symmetric() {
            return Ok(None);
        }
        let values = self.rho_hat_on_grid(grid)?;
        let mut worst = 0.0f64;
        for j in 0..grid.len() {
            let p = grid.negation_partner(j).expect("symmetric grid");
            let defect = (values[p] - values[j].conj()).norm();
            worst = worst.max(defect);
        }
        Ok(Some(worst))
    }
}

/// Interaction coupling `f_I(k_j) = ρ̂(k_j)/√ω(k_j)` on a grid.
#[derive(Debug, Clone)]
pub struct CouplingFunction {
    grid: Arc<ModeGrid>,
    values: Vec<Complex64>,
}

impl CouplingFunction {
    pub fn grid(&self) -> &Arc<ModeGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// `f_I/ω^p` nodewise.
    pub fn over_omega_power(&self, dispersion: &Dispersion, power: f64) -> Vec<Complex64> {
        (0..self.grid.len())
            .map(|j| self.values[j] / dispersion.evaluate(self.grid.node(j)).powf(power))
            .collect()
    }
}

/// Build the coupling `f_I = ρ̂/√ω` on the grid.
///
/// Errors when `ω` vanishes at a node (massless grids must exclude the
/// origin; massive grids may contain it since `ω ≥ m > 0`).
pub fn coupling(
    profile: &SourceProfile,
    dispersion: &Dispersion,
    grid: &Arc<ModeGrid>,
) -> Result<CouplingFunction> {
    let mut values = Vec::with_capacity(grid.len());
    for j in 0..grid.len() {
        let omega = dispersion.evaluate(grid.node(j));
        if omega <= 0.0 {
            return Err(Error::OmegaZero {
                node: j,
                norm: grid.norm_of_node(j),
            });
        }
        values.push(profile.rho_hat(grid.node(j))? / omega.sqrt());
    }
    Ok(CouplingFunction {
        grid: grid.clone(),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Midpoint-rule Fourier transform at k = 0 on a fine x-grid,
    /// tensor-product in d dimensions via separability of the gaussian.
    fn numeric_rho_hat_zero(amplitude: f64, width: f64, dimension: usize) -> f64 {
        let half = 12.0 * width;
        let n = 20_000usize;
        let dx = 2.0 * half / n as f64;
        let line: f64 = (0..n)
            .map(|i| {
                let x = -half + (i as f64 + 0.5) * dx;
                (-x * x / (2.0 * width * width)).exp() * dx
            })
            .sum();
        amplitude * (line / (2.0 * std::f64::consts::PI).sqrt()).powi(dimension as i32)
    }

    #[test]
    fn zero_coupling_is_free_theory() {
        let profile = SourceProfile::gaussian(1, 1.0, 1.0, 0.0).unwrap();
        assert_eq!(profile.rho_hat(&[0.3]).unwrap(), Complex64::ZERO);
    }

    #[test]
    fn gaussian_transform_matches_numeric_oracle_d1() {
        let profile = SourceProfile::gaussian(1, 1.0, 1.0, 1.0).unwrap();
        let closed = profile.rho_hat(&[0.0]).unwrap().re;
        assert_relative_eq!(closed, 1.0, epsilon = 1e-12);
        let numeric = numeric_rho_hat_zero(1.0, 1.0, 1);
        assert_relative_eq!(closed, numeric, epsilon = 1e-8);
    }

    #[test]
    fn gaussian_transform_matches_numeric_oracle_d3() {
        let profile = SourceProfile::gaussian(3, 1.0, 2.0, 1.0).unwrap();
        let closed = profile.rho_hat(&[0.0, 0.0, 0.0]).unwrap().re;
        assert_relative_eq!(closed, 8.0, epsilon = 1e-12);
        let numeric = numeric_rho_hat_zero(1.0, 2.0, 3);
        assert_relative_eq!(closed, numeric, epsilon = 1e-8);
    }

    #[test]
    fn rejects_bad_width() {
        assert!(SourceProfile::gaussian(1, 1.0, 0.0, 1.0).is_err());
        assert!(SourceProfile::gaussian(1, 1.0, -2.0, 1.0).is_err());
    }

    #[test]
    fn hermitian_symmetry_on_symmetric_grid() {
        let grid = ModeGrid::build(&crate::grid::GridSpec::new(2, 4, 1.0)).unwrap();
        let profile = SourceProfile::gaussian(2, 2.0, 0.7, 1.0).unwrap();
        let defect = profile.hermitian_symmetry_defect(&grid).unwrap().unwrap();
        assert!(defect < 1e-12);
    }

    #[test]
    fn coupling_values() {
        // massless d=1, node 0.25, ρ̂ = 1 → f_I = 1/√0.25 = 2
        let grid = ModeGrid::single_mode(vec![0.25], 1.0).unwrap();
        let table = SourceProfile::tabulated(
            1,
            1.0,
            vec![vec![0.25]],
            vec![Complex64::ONE],
        )
        .unwrap();
        let f = coupling(&table, &Dispersion::Massless, &grid).unwrap();
        assert_relative_eq!(f.values()[0].re, 2.0, epsilon = 1e-14);

        // massive m=1 at the origin: f_I(0) = ρ̂(0)
        let origin = ModeGrid::single_mode(vec![0.0], 1.0).unwrap();
        let gauss = SourceProfile::gaussian(1, 1.0, 1.0, 1.0).unwrap();
        let f0 = coupling(&gauss, &Dispersion::Massive { mass: 1.0 }, &origin).unwrap();
        assert_relative_eq!(f0.values()[0].re, 1.0, epsilon = 1e-14);

        // massless at the origin is a contract violation
        assert!(coupling(&gauss, &Dispersion::Massless, &origin).is_err());

        // ρ̂ ≡ 0 → f_I ≡ 0
        let free = gauss.with_coupling(0.0);
        let fz = coupling(&free, &Dispersion::Massive { mass: 1.0 }, &origin).unwrap();
        assert_eq!(fz.values()[0], Complex64::ZERO);
    }

    #[test]
    fn tabulated_file_roundtrip() {
        let dir = std::env::temp_dir().join("vanhove_source_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("table.tsv");
        std::fs::write(
            &path,
            "# k  Re(rho_hat)  Im(rho_hat)  (momentum in 1/length)\n\
             -0.5  1.0  0.25\n\
             0.5   1.0  -0.25\n",
        )
        .unwrap();
        let profile = SourceProfile::tabulated_from_file(&path, 1, 2.0).unwrap();
        let v = profile.rho_hat(&[0.5]).unwrap();
        assert_eq!(v, Complex64::new(2.0, -0.5));
        assert!(profile.rho_hat(&[0.75]).is_err());
    }
}
