//! Creation/annihilation operators, Segal fields and second quantization
//! on the truncated basis.
//!
//! Discretization convention: with quadrature weights `w_j`, the smeared
//! annihilation operator is
//!
//! ```text
//! a(f) = Σ_j √w_j f(k_j)* a_j ,
//! ```
//!
//! so `[a(f), a†(g)] = (f, g)_grid` holds exactly on states whose total
//! excitation stays at least one below the truncation. Creation out of the
//! top shell is dropped (projected truncation): `a†(f)` is defined as the
//! matrix adjoint of `a(f)`, which makes adjointness exact by construction.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::basis::OccupationBasis;
use crate::fock::operator::LinearOperator;
use crate::fock::sparse::SparseMatrix;
use crate::grid::ModeGrid;

/// Per-mode annihilator `a_j`: `a_j |…, n_j, …⟩ = √n_j |…, n_j - 1, …⟩`.
pub fn mode_annihilator(basis: &Arc<OccupationBasis>, j: usize) -> Result<LinearOperator> {
    let modes = basis.mode_count();
    if j >= modes {
        return Err(Error::ModeIndex { index: j, modes });
    }
    let mut triplets = Vec::new();
    let mut lowered = vec![0u32; modes];
    for col in 0..basis.len() {
        let occ = basis.occupation(col);
        let n = occ[j];
        if n == 0 {
            continue;
        }
        lowered.copy_from_slice(occ);
        lowered[j] = n - 1;
        // lowering never leaves the truncated space
        let row = basis
            .index_of(&lowered)
            .expect("lowered occupation must be in the basis");
        triplets.push((row, col, Complex64::new((n as f64).sqrt(), 0.0)));
    }
    Ok(LinearOperator::new(
        basis.clone(),
        SparseMatrix::from_triplets(basis.len(), triplets),
    ))
}

/// Per-mode creator `a_j† = (a_j)†`; creation out of the top shell is dropped.
pub fn mode_creator(basis: &Arc<OccupationBasis>, j: usize) -> Result<LinearOperator> {
    Ok(mode_annihilator(basis, j)?.adjoint())
}

fn check_mode_function(grid: &ModeGrid, f: &[Complex64]) -> Result<()> {
    if f.len() != grid.len() {
        return Err(Error::Precondition(format!(
            "mode function has {} values for a grid of {} nodes",
            f.len(),
            grid.len()
        )));
    }
    for (j, v) in f.iter().enumerate() {
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::NonFinite(format!("mode function at node {j}")));
        }
    }
    Ok(())
}

/// Smeared annihilator `a(f) = Σ_j √w_j f(k_j)* a_j`.
pub fn smeared_annihilator(
    grid: &ModeGrid,
    basis: &Arc<OccupationBasis>,
    f: &[Complex64],
) -> Result<LinearOperator> {
    check_mode_function(grid, f)?;
    if grid.len() != basis.mode_count() {
        return Err(Error::Precondition(format!(
            "grid of {} nodes vs basis over {} modes",
            grid.len(),
            basis.mode_count()
        )));
    }
    let modes = basis.mode_count();
    let coeff: Vec<Complex64> = (0..modes)
        .map(|j| grid.weight(j).sqrt() * f[j].conj())
        .collect();
    let mut triplets = Vec::new();
    let mut lowered = vec![0u32; modes];
    for col in 0..basis.len() {
        let occ = basis.occupation(col);
        for j in 0..modes {
            let n = occ[j];
            if n == 0 || coeff[j] == Complex64::ZERO {
                continue;
            }
            lowered.copy_from_slice(occ);
            lowered[j] = n - 1;
            let row = basis
                .index_of(&lowered)
                .expect("lowered occupation must be in the basis");
            triplets.push((row, col, coeff[j] * (n as f64).sqrt()));
        }
    }
    Ok(LinearOperator::new(
        basis.clone(),
        SparseMatrix::from_triplets(basis.len(), triplets),
    ))
}

/// Smeared creator `a†(f) = (a(f))†` (exact matrix adjoint).
pub fn smeared_creator(
    grid: &ModeGrid,
    basis: &Arc<OccupationBasis>,
    f: &[Complex64],
) -> Result<LinearOperator> {
    Ok(smeared_annihilator(grid, basis, f)?.adjoint())
}

/// Segal field `φ_S(f) = (a(f) + a†(f)) / √2`; hermitian by construction.
pub fn segal_field(
    grid: &ModeGrid,
    basis: &Arc<OccupationBasis>,
    f: &[Complex64],
) -> Result<LinearOperator> {
    let a = smeared_annihilator(grid, basis, f)?;
    let adag = a.adjoint();
    Ok(a.add(&adag)?.scale(Complex64::new(1.0 / 2f64.sqrt(), 0.0)))
}

/// Conjugate momentum `π_S(g) = i(-a(g) + a†(g)) / √2`; hermitian.
pub fn segal_momentum(
    grid: &ModeGrid,
    basis: &Arc<OccupationBasis>,
    g: &[Complex64],
) -> Result<LinearOperator> {
    let a = smeared_annihilator(grid, basis, g)?;
    let adag = a.adjoint();
    let diff = adag.sub(&a)?;
    Ok(diff.scale(Complex64::new(0.0, 1.0 / 2f64.sqrt())))
}

/// Second quantization `dΓ(T)`: diagonal with entries `Σ_i n_i T(k_i)`.
///
/// `T` must be non-negative and finite at every node; the vacuum maps to 0.
pub fn second_quantization(
    grid: &ModeGrid,
    basis: &Arc<OccupationBasis>,
    multiplier: &[f64],
) -> Result<LinearOperator> {
    if multiplier.len() != grid.len() || grid.len() != basis.mode_count() {
        return Err(Error::Precondition(
            "multiplier/grid/basis size mismatch".into(),
        ));
    }
    for (node, &value) in multiplier.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFinite(format!("mode multiplier at node {node}")));
        }
        if value < 0.0 {
            return Err(Error::NegativeMultiplier { node, value });
        }
    }
    let diag: Vec<Complex64> = (0..basis.len())
        .map(|i| {
            let occ = basis.occupation(i);
            let sum: f64 = occ
                .iter()
                .zip(multiplier)
                .map(|(&n, &t)| n as f64 * t)
                .sum();
            Complex64::new(sum, 0.0)
        })
        .collect();
    Ok(LinearOperator::new(
        basis.clone(),
        SparseMatrix::diagonal(&diag),
    ))
}

/// Real power `dΓ(T)^p` of a second-quantization operator (diagonal).
pub fn second_quantization_power(
    grid: &ModeGrid,
    basis: &Arc<OccupationBasis>,
    multiplier: &[f64],
    power: f64,
) -> Result<LinearOperator> {
    let op = second_quantization(grid, basis, multiplier)?;
    let diag = op
        .matrix()
        .as_diagonal()
        .expect("second quantization is diagonal");
    let powered: Vec<Complex64> = diag
        .iter()
        .map(|v| Complex64::new(v.re.powf(power), 0.0))
        .collect();
    Ok(LinearOperator::new(
        basis.clone(),
        SparseMatrix::diagonal(&powered),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::operator::{commutator, unitary_exponential};
    use crate::fock::state::StateVector;
    use crate::grid::GridSpec;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn single_mode_setup(n_max: usize) -> (Arc<ModeGrid>, Arc<OccupationBasis>) {
        let grid = ModeGrid::single_mode(vec![1.0], 1.0).unwrap();
        let basis = OccupationBasis::build(1, n_max).unwrap();
        (grid, basis)
    }

    #[test]
    fn ladder_action() {
        let (_, basis) = single_mode_setup(2);
        let a = mode_annihilator(&basis, 0).unwrap();
        let two = StateVector::occupation_state(basis.clone(), &[2]).unwrap();
        let lowered = a.apply(&two).unwrap();
        let one = StateVector::occupation_state(basis.clone(), &[1]).unwrap();
        let diff = lowered.sub(&one.scale(c(2f64.sqrt(), 0.0))).unwrap();
        assert!(diff.norm() < 1e-15);
    }

    #[test]
    fn annihilator_kills_vacuum() {
        let (_, basis) = single_mode_setup(3);
        let a = mode_annihilator(&basis, 0).unwrap();
        let vac = StateVector::vacuum(basis);
        assert_eq!(a.apply(&vac).unwrap().norm(), 0.0);
    }

    #[test]
    fn number_operator_is_diagonal_occupation() {
        let basis = OccupationBasis::build(2, 3).unwrap();
        let a = mode_annihilator(&basis, 1).unwrap();
        let n_op = a.adjoint().matmul(&a).unwrap();
        let diag = n_op.matrix().as_diagonal().unwrap();
        for i in 0..basis.len() {
            assert_relative_eq!(diag[i].re, basis.occupation(i)[1] as f64, epsilon = 1e-14);
            assert_eq!(diag[i].im, 0.0);
        }
    }

    #[test]
    fn out_of_range_mode_index() {
        let basis = OccupationBasis::build(2, 1).unwrap();
        assert!(mode_annihilator(&basis, 2).is_err());
    }

    #[test]
    fn indicator_smearing_recovers_mode_operator() {
        let grid = ModeGrid::custom(1, vec![vec![-0.5], vec![0.5]], vec![1.0, 1.0]).unwrap();
        let basis = OccupationBasis::build(2, 2).unwrap();
        let f = vec![c(0.0, 0.0), c(1.0, 0.0)];
        let smeared = smeared_annihilator(&grid, &basis, &f).unwrap();
        let direct = mode_annihilator(&basis, 1).unwrap();
        assert_eq!(
            smeared.matrix().sub(direct.matrix()).max_abs(),
            0.0
        );
    }

    #[test]
    fn ccr_on_two_mode_fixture() {
        // f = (1, 1) with unit weights: a(f) a†(f) Ω = (f, f) Ω = 2 Ω
        let grid = ModeGrid::custom(1, vec![vec![-0.5], vec![0.5]], vec![1.0, 1.0]).unwrap();
        let basis = OccupationBasis::build(2, 2).unwrap();
        let f = vec![c(1.0, 0.0), c(1.0, 0.0)];
        let a = smeared_annihilator(&grid, &basis, &f).unwrap();
        let vac = StateVector::vacuum(basis);
        let created = a.adjoint().apply(&vac).unwrap();
        let back = a.apply(&created).unwrap();
        let expect = vac.scale(c(2.0, 0.0));
        assert!(back.sub(&expect).unwrap().norm() < 1e-14);
    }

    #[test]
    fn smeared_rejects_non_finite() {
        let (grid, basis) = single_mode_setup(2);
        let f = vec![c(f64::NAN, 0.0)];
        assert!(smeared_annihilator(&grid, &basis, &f).is_err());
    }

    #[test]
    fn segal_commutators() {
        let grid = ModeGrid::build(&GridSpec::new(1, 4, 2.0)).unwrap();
        let basis = OccupationBasis::build(4, 4).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        let f = grid.evaluate(|k| c(k[0].cos(), 0.3 * k[0]));
        let g = grid.evaluate(|k| c(0.2, k[0].sin()));
        let phi = segal_field(&grid, &basis, &f).unwrap();
        let pi = segal_momentum(&grid, &basis, &g).unwrap();
        assert!(phi.is_hermitian());
        assert!(pi.is_hermitian());

        // [φ_S(f), π_S(g)] = i Re(f,g) on the safe sub-basis
        let comm = commutator(&phi, &pi).unwrap();
        let expected = c(0.0, grid.inner(&f, &g).re);
        for _ in 0..5 {
            let psi = StateVector::random_on_shell(basis.clone(), 2, &mut rng);
            let lhs = comm.apply(&psi).unwrap();
            let rhs = psi.scale(expected);
            assert!(lhs.sub(&rhs).unwrap().norm() < 1e-12);
        }

        // [φ_S(f), φ_S(g)] = 0 on the safe sub-basis
        let phi_g = segal_field(&grid, &basis, &g).unwrap();
        let comm2 = commutator(&phi, &phi_g).unwrap();
        for _ in 0..5 {
            let psi = StateVector::random_on_shell(basis.clone(), 2, &mut rng);
            assert!(comm2.apply(&psi).unwrap().norm() < 1e-12);
        }
    }

    #[test]
    fn segal_field_is_position_tridiagonal() {
        // single mode, unit weight, f = 1: entries √(n/2) off the diagonal
        let (grid, basis) = single_mode_setup(3);
        let f = vec![c(1.0, 0.0)];
        let phi = segal_field(&grid, &basis, &f).unwrap();
        let m = phi.matrix();
        for n in 1..=3u32 {
            let expect = (n as f64 / 2.0).sqrt();
            assert_relative_eq!(m.entry(n as usize - 1, n as usize).re, expect, epsilon = 1e-15);
            assert_relative_eq!(m.entry(n as usize, n as usize - 1).re, expect, epsilon = 1e-15);
        }
        assert_eq!(m.entry(0, 0), Complex64::ZERO);
    }

    #[test]
    fn second_quantization_basics() {
        let grid = ModeGrid::custom(1, vec![vec![-0.5], vec![0.5]], vec![1.0, 1.0]).unwrap();
        let basis = OccupationBasis::build(2, 3).unwrap();
        // T ≡ 1 is the number operator
        let number = second_quantization(&grid, &basis, &[1.0, 1.0]).unwrap();
        let diag = number.matrix().as_diagonal().unwrap();
        for i in 0..basis.len() {
            assert_eq!(diag[i].re, basis.total(i) as f64);
        }
        // vacuum maps to zero
        let vac = StateVector::vacuum(basis.clone());
        assert_eq!(number.apply(&vac).unwrap().norm(), 0.0);
        // negative multiplier rejected
        assert!(second_quantization(&grid, &basis, &[1.0, -0.1]).is_err());
    }

    #[test]
    fn second_quantization_commutators() {
        let grid = ModeGrid::build(&GridSpec::new(1, 4, 1.0)).unwrap();
        let basis = OccupationBasis::build(4, 4).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        let t: Vec<f64> = grid.evaluate_real(|k| k[0].abs() + 0.5);
        let f = grid.evaluate(|k| c((2.0 * k[0]).sin() + 0.1, k[0]));
        let tf: Vec<Complex64> = t.iter().zip(&f).map(|(&tv, fv)| tv * fv).collect();

        let dgamma = second_quantization(&grid, &basis, &t).unwrap();
        let a_f = smeared_annihilator(&grid, &basis, &f).unwrap();
        let a_tf = smeared_annihilator(&grid, &basis, &tf).unwrap();

        // [dΓ(T), a(f)] = -a(Tf) on the safe sub-basis
        let comm = commutator(&dgamma, &a_f).unwrap();
        for _ in 0..5 {
            let psi = StateVector::random_on_shell(basis.clone(), 3, &mut rng);
            let lhs = comm.apply(&psi).unwrap();
            let rhs = a_tf.apply(&psi).unwrap().scale(c(-1.0, 0.0));
            assert!(lhs.sub(&rhs).unwrap().norm() < 1e-12);
        }

        // [dΓ(T), a†(f)] = a†(Tf) on the safe sub-basis
        let comm_dag = commutator(&dgamma, &a_f.adjoint()).unwrap();
        let adag_tf = a_tf.adjoint();
        for _ in 0..5 {
            let psi = StateVector::random_on_shell(basis.clone(), 3, &mut rng);
            let lhs = comm_dag.apply(&psi).unwrap();
            let rhs = adag_tf.apply(&psi).unwrap();
            assert!(lhs.sub(&rhs).unwrap().norm() < 1e-12);
        }
    }

    #[test]
    fn commutator_basics() {
        let grid = ModeGrid::custom(1, vec![vec![-0.5], vec![0.5]], vec![1.0, 1.0]).unwrap();
        let basis = OccupationBasis::build(2, 3).unwrap();
        let a0 = mode_annihilator(&basis, 0).unwrap();
        // [a_j, a_j†] = Id on the sub-basis Σ n_i ≤ N-1
        let comm = commutator(&a0, &a0.adjoint()).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        for _ in 0..5 {
            let psi = StateVector::random_on_shell(basis.clone(), 2, &mut rng);
            let lhs = comm.apply(&psi).unwrap();
            assert!(lhs.sub(&psi).unwrap().norm() < 1e-13);
        }
        // [A, A] = 0 exactly
        let phi = segal_field(&grid, &basis, &[c(1.0, 0.5), c(0.3, -0.2)]).unwrap();
        assert_eq!(phi.commutator(&phi).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn unitary_exponential_basics() {
        let (grid, basis) = single_mode_setup(6);
        let omega = vec![0.7];
        let h0 = second_quantization(&grid, &basis, &omega).unwrap();
        // t = 0 is the identity
        let id = unitary_exponential(&h0, 0.0).unwrap();
        assert_eq!(
            id.matrix()
                .sub(&SparseMatrix::identity(basis.len()))
                .max_abs(),
            0.0
        );
        // diagonal generator: phases e^{-i t ω n}
        let u = unitary_exponential(&h0, 1.3).unwrap();
        let diag = u.matrix().as_diagonal().unwrap();
        for n in 0..=6usize {
            let expect = (-Complex64::i() * 1.3 * 0.7 * n as f64).exp();
            assert!((diag[n] - expect).norm() < 1e-15);
        }
    }

    #[test]
    fn unitary_exponential_rejects_non_hermitian() {
        let (grid, basis) = single_mode_setup(3);
        let a = smeared_annihilator(&grid, &basis, &[c(1.0, 0.0)]).unwrap();
        assert!(unitary_exponential(&a, 1.0).is_err());
    }

    #[test]
    fn heisenberg_rotation_of_annihilator() {
        // e^{it dΓ(T)} a(f) e^{-it dΓ(T)} = a(e^{itT} f)
        let grid = ModeGrid::build(&GridSpec::new(1, 4, 2.0)).unwrap();
        let basis = OccupationBasis::build(4, 3).unwrap();
        let t_values: Vec<f64> = grid.evaluate_real(|k| k[0].abs());
        let f = grid.evaluate(|k| c(k[0], 0.4));
        let time = 0.9;

        let dgamma = second_quantization(&grid, &basis, &t_values).unwrap();
        let u_fwd = unitary_exponential(&dgamma, -time).unwrap(); // e^{+it dΓ}
        let u_bwd = unitary_exponential(&dgamma, time).unwrap(); // e^{-it dΓ}
        let a_f = smeared_annihilator(&grid, &basis, &f).unwrap();
        let conjugated = u_fwd.matmul(&a_f).unwrap().matmul(&u_bwd).unwrap();

        let rotated: Vec<Complex64> = t_values
            .iter()
            .zip(&f)
            .map(|(&tv, fv)| (Complex64::i() * time * tv).exp() * fv)
            .collect();
        let direct = smeared_annihilator(&grid, &basis, &rotated).unwrap();
        let diff = conjugated.sub(&direct).unwrap().max_abs();
        assert!(diff < 1e-13, "conjugation defect {diff}");
    }
}
