//! Complex amplitude vectors on an occupation basis.

use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::fock::basis::OccupationBasis;

/// A vector in the truncated Fock space.
///
/// The inner product is linear in the second argument:
/// `(Φ, Ψ) = Σ_i Φ_i* Ψ_i`.
#[derive(Debug, Clone)]
pub struct StateVector {
    basis: Arc<OccupationBasis>,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn zero(basis: Arc<OccupationBasis>) -> Self {
        let dim = basis.len();
        Self {
            basis,
            amplitudes: vec![Complex64::ZERO; dim],
        }
    }

    pub fn vacuum(basis: Arc<OccupationBasis>) -> Self {
        let mut state = Self::zero(basis);
        state.amplitudes[0] = Complex64::ONE;
        state
    }

    /// Basis state with the given occupation vector.
    pub fn occupation_state(basis: Arc<OccupationBasis>, occupation: &[u32]) -> Result<Self> {
        let idx = basis
            .index_of(occupation)
            .ok_or_else(|| Error::Precondition(format!(
                "occupation {occupation:?} is outside the truncated basis"
            )))?;
        let mut state = Self::zero(basis);
        state.amplitudes[idx] = Complex64::ONE;
        Ok(state)
    }

    pub fn from_amplitudes(basis: Arc<OccupationBasis>, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != basis.len() {
            return Err(Error::Precondition(format!(
                "amplitude vector of length {} on a basis of dimension {}",
                amplitudes.len(),
                basis.len()
            )));
        }
        Ok(Self { basis, amplitudes })
    }

    /// Haar-ish random state: iid complex-normal amplitudes, normalized.
    pub fn random_normalized<R: Rng>(basis: Arc<OccupationBasis>, rng: &mut R) -> Self {
        let mut state = Self::zero(basis);
        for a in &mut state.amplitudes {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            *a = Complex64::new(re, im);
        }
        let n = state.norm();
        state.scale_mut(Complex64::new(1.0 / n, 0.0));
        state
    }

    /// Random state supported on total excitation `≤ shell`, normalized.
    pub fn random_on_shell<R: Rng>(
        basis: Arc<OccupationBasis>,
        shell: usize,
        rng: &mut R,
    ) -> Self {
        let mut state = Self::random_normalized(basis, rng);
        state.project_shell_mut(shell);
        let n = state.norm();
        if n > 0.0 {
            state.scale_mut(Complex64::new(1.0 / n, 0.0));
        }
        state
    }

    pub fn basis(&self) -> &Arc<OccupationBasis> {
        &self.basis
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    /// `(self, other)`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        debug_assert!(self.basis.same_as(&other.basis));
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = self.clone();
        out.scale_mut(factor);
        out
    }

    pub fn scale_mut(&mut self, factor: Complex64) {
        for a in &mut self.amplitudes {
            *a *= factor;
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if !self.basis.same_as(&other.basis) {
            return Err(Error::BasisMismatch);
        }
        let mut out = self.clone();
        for (a, b) in out.amplitudes.iter_mut().zip(&other.amplitudes) {
            *a += b;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if !self.basis.same_as(&other.basis) {
            return Err(Error::BasisMismatch);
        }
        let mut out = self.clone();
        for (a, b) in out.amplitudes.iter_mut().zip(&other.amplitudes) {
            *a -= b;
        }
        Ok(out)
    }

    /// Zero every amplitude with total excitation above `shell`.
    pub fn project_shell_mut(&mut self, shell: usize) {
        for i in 0..self.amplitudes.len() {
            if self.basis.total(i) as usize > shell {
                self.amplitudes[i] = Complex64::ZERO;
            }
        }
    }

    pub fn project_shell(&self, shell: usize) -> Self {
        let mut out = self.clone();
        out.project_shell_mut(shell);
        out
    }
}
