//! Linear operators on the truncated Fock space.
//!
//! A [`LinearOperator`] is a sparse complex matrix tied to an occupation
//! basis, with hermitian/anti-hermitian flags carried through the algebra.
//! Unitary exponentials `e^{-itA}` of hermitian generators use a full
//! hermitian eigendecomposition up to a configurable dimension threshold
//! (default 4000); larger problems go through the per-vector Krylov path in
//! [`crate::evolution`].

use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::basis::OccupationBasis;
use crate::fock::sparse::SparseMatrix;
use crate::fock::state::StateVector;

/// Relative tolerance for the hermitian/anti-hermitian flags.
pub const HERMITICITY_TOL: f64 = 1e-13;

/// Default dimension limit for dense eigendecomposition.
pub const DEFAULT_EIGH_THRESHOLD: usize = 4000;

#[derive(Debug, Clone)]
pub struct LinearOperator {
    basis: Arc<OccupationBasis>,
    matrix: SparseMatrix,
    hermitian: bool,
    anti_hermitian: bool,
}

impl LinearOperator {
    pub fn new(basis: Arc<OccupationBasis>, matrix: SparseMatrix) -> Self {
        debug_assert_eq!(basis.len(), matrix.dim());
        let hermitian = matrix.is_hermitian(HERMITICITY_TOL);
        let anti_hermitian = matrix.is_anti_hermitian(HERMITICITY_TOL);
        Self {
            basis,
            matrix,
            hermitian,
            anti_hermitian,
        }
    }

    pub fn identity(basis: Arc<OccupationBasis>) -> Self {
        let dim = basis.len();
        Self::new(basis, SparseMatrix::identity(dim))
    }

    pub fn zero(basis: Arc<OccupationBasis>) -> Self {
        let dim = basis.len();
        Self::new(basis, SparseMatrix::zero(dim))
    }

    pub fn basis(&self) -> &Arc<OccupationBasis> {
        &self.basis
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn is_anti_hermitian(&self) -> bool {
        self.anti_hermitian
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    fn check_basis(&self, other: &Self) -> Result<()> {
        if self.basis.same_as(&other.basis) {
            Ok(())
        } else {
            Err(Error::BasisMismatch)
        }
    }

    /// Apply to a state; the result stays on the same basis.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if !self.basis.same_as(state.basis()) {
            return Err(Error::BasisMismatch);
        }
        let out = self.matrix.apply(state.amplitudes());
        StateVector::from_amplitudes(state.basis().clone(), out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_basis(other)?;
        Ok(Self::new(self.basis.clone(), self.matrix.add(&other.matrix)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_basis(other)?;
        Ok(Self::new(self.basis.clone(), self.matrix.sub(&other.matrix)))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::new(self.basis.clone(), self.matrix.scale(factor))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_basis(other)?;
        Ok(Self::new(
            self.basis.clone(),
            self.matrix.matmul(&other.matrix),
        ))
    }

    pub fn adjoint(&self) -> Self {
        Self::new(self.basis.clone(), self.matrix.adjoint())
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_basis(other)?;
        let ab = self.matrix.matmul(&other.matrix);
        let ba = other.matrix.matmul(&self.matrix);
        Ok(Self::new(self.basis.clone(), ab.sub(&ba)))
    }

    /// Largest entry magnitude; a cheap operator-norm surrogate.
    pub fn max_abs(&self) -> f64 {
        self.matrix.max_abs()
    }
}

/// Commutator `[a, b] = ab - ba` as a free function.
pub fn commutator(a: &LinearOperator, b: &LinearOperator) -> Result<LinearOperator> {
    a.commutator(b)
}

/// Hermitian eigendecomposition of an operator's dense form.
///
/// Returns `(eigenvalues, eigenvectors)` with `A = V diag(λ) V†`.
pub fn hermitian_eigendecomposition(
    op: &LinearOperator,
) -> Result<(Vec<f64>, DMatrix<Complex64>)> {
    if !op.is_hermitian() {
        let defect = op.matrix().hermiticity_defect();
        let scale = op.max_abs().max(f64::MIN_POSITIVE);
        return Err(Error::NotHermitian {
            deviation: defect / scale,
        });
    }
    let dense = op.matrix().to_dense();
    let eig = SymmetricEigen::new(dense);
    Ok((eig.eigenvalues.iter().copied().collect(), eig.eigenvectors))
}

/// Unitary exponential `e^{-itA}` of a hermitian generator `A`.
///
/// Diagonal generators exponentiate entrywise; everything else goes through
/// a dense hermitian eigendecomposition, which requires
/// `dim ≤ eigh_threshold`.
pub fn unitary_exponential_capped(
    generator: &LinearOperator,
    t: f64,
    eigh_threshold: usize,
) -> Result<LinearOperator> {
    if !generator.is_hermitian() {
        let defect = generator.matrix().hermiticity_defect();
        let scale = generator.max_abs().max(f64::MIN_POSITIVE);
        return Err(Error::NotHermitian {
            deviation: defect / scale,
        });
    }
    if let Some(diag) = generator.matrix().as_diagonal() {
        let phases: Vec<Complex64> = diag
            .iter()
            .map(|lambda| (-Complex64::i() * t * lambda.re).exp())
            .collect();
        return Ok(LinearOperator::new(
            generator.basis().clone(),
            SparseMatrix::diagonal(&phases),
        ));
    }
    if generator.dim() > eigh_threshold {
        return Err(Error::DenseThreshold {
            dim: generator.dim(),
            threshold: eigh_threshold,
        });
    }
    let (eigenvalues, vectors) = hermitian_eigendecomposition(generator)?;
    let phases: Vec<Complex64> = eigenvalues
        .iter()
        .map(|&lambda| (-Complex64::i() * t * lambda).exp())
        .collect();
    let mut scaled = vectors.clone();
    for (c, phase) in phases.iter().enumerate() {
        for r in 0..scaled.nrows() {
            scaled[(r, c)] *= phase;
        }
    }
    let dense = scaled * vectors.adjoint();
    Ok(LinearOperator::new(
        generator.basis().clone(),
        SparseMatrix::from_dense(&dense),
    ))
}

/// [`unitary_exponential_capped`] with the default dimension threshold.
pub fn unitary_exponential(generator: &LinearOperator, t: f64) -> Result<LinearOperator> {
    unitary_exponential_capped(generator, t, DEFAULT_EIGH_THRESHOLD)
}

/// Direct exponential `e^{A}` of an anti-hermitian generator.
pub fn exponential_anti_hermitian(generator: &LinearOperator) -> Result<LinearOperator> {
    if !generator.is_anti_hermitian() {
        let defect = generator
            .matrix()
            .add(&generator.matrix().adjoint())
            .max_abs();
        let scale = generator.max_abs().max(f64::MIN_POSITIVE);
        return Err(Error::NotHermitian {
            deviation: defect / scale,
        });
    }
    // e^A = e^{-i(iA)} with iA hermitian
    let hermitian = generator.scale(Complex64::i());
    unitary_exponential(&hermitian, 1.0)
}
