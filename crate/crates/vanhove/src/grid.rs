//! Quadrature discretization of momentum space.
//!
//! A [`ModeGrid`] is a finite set of momentum nodes `k_j ∈ R^d` with positive
//! quadrature weights `w_j`, the bridge between continuum integrals over
//! `R^d` and finite sums:
//!
//! ```text
//! ∫ f(k)* g(k) dk  ≈  Σ_j w_j f(k_j)* g(k_j)  =  (f, g)_grid
//! ```
//!
//! Built grids are uniform tensor products over `[-K, K]^d` with a half-step
//! offset. For an even per-axis count the node set is symmetric under
//! `k ↦ -k` (bitwise, by construction) and excludes the origin. For an odd
//! per-axis count the centered lattice contains the origin node; it is
//! removed so that a massless dispersion `ω(k) = |k|` never vanishes on a
//! node, and the remaining set stays symmetric.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Offset rule for [`GridSpec`]. Only the half-step rule is implemented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OffsetRule {
    /// Even per-axis counts: nodes at half-integer multiples of `Δ = 2K/n`.
    /// Odd counts: integer multiples (centered lattice) with the origin node
    /// of the tensor lattice removed.
    #[default]
    HalfStep,
}

/// Specification for a uniform tensor-product grid.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub dimension: usize,
    /// Nodes per axis.
    pub nodes_per_axis: usize,
    /// Half-width of the momentum box `[-K, K]^d`.
    pub cutoff: f64,
    pub offset: OffsetRule,
}

impl GridSpec {
    pub fn new(dimension: usize, nodes_per_axis: usize, cutoff: f64) -> Self {
        Self {
            dimension,
            nodes_per_axis,
            cutoff,
            offset: OffsetRule::HalfStep,
        }
    }
}

/// Finite quadrature discretization of `R^d` momentum space.
#[derive(Debug, Clone)]
pub struct ModeGrid {
    dimension: usize,
    /// Node coordinates, flattened row-major: node `j` occupies
    /// `nodes[j*d .. (j+1)*d]`.
    nodes: Vec<f64>,
    weights: Vec<f64>,
    /// True when the node set is closed under `k ↦ -k` with equal weights.
    symmetric: bool,
    /// `partner[j]` = index of the node `-k_j` when `symmetric`.
    partner: Option<Vec<usize>>,
}

impl ModeGrid {
    /// Build a uniform half-step-offset tensor grid over `[-K, K]^d`.
    ///
    /// Weights are `(2K/n)^d` per node. Even `n` gives a symmetric grid of
    /// `n^d` nodes; odd `n` gives a symmetric grid of `n^d - 1` nodes (the
    /// origin node of the centered lattice is removed).
    pub fn build(spec: &GridSpec) -> Result<Arc<Self>> {
        let GridSpec {
            dimension: d,
            nodes_per_axis: n,
            cutoff: k_max,
            offset: OffsetRule::HalfStep,
        } = *spec;
        if d < 1 {
            return Err(Error::GridSpec("dimension must be >= 1".into()));
        }
        if n < 1 {
            return Err(Error::GridSpec("nodes per axis must be >= 1".into()));
        }
        if !(k_max > 0.0) || !k_max.is_finite() {
            return Err(Error::GridSpec(format!(
                "cutoff must be positive and finite, got {k_max}"
            )));
        }
        if n == 1 {
            // a single centered node would sit at the origin
            return Err(Error::GridSpec(
                "nodes per axis must be >= 2 (a single node would sit at the origin)".into(),
            ));
        }
        let count = (n as u128).checked_pow(d as u32).ok_or_else(|| {
            Error::GridSpec("grid size overflows".into())
        })?;
        if count > 4_000_000 {
            return Err(Error::GridSpec(format!(
                "grid of {count} nodes exceeds the 4e6 node cap"
            )));
        }

        let step = 2.0 * k_max / n as f64;
        // Lattice coordinates are exact (half-)integers times the step, so
        // negation partners are bitwise negatives. Even n: half-integers,
        // origin-free. Odd n: integers, centered; the origin node of the
        // tensor lattice is removed below.
        let axis: Vec<f64> = if n % 2 == 0 {
            (0..n)
                .map(|i| (i as f64 - (n / 2) as f64 + 0.5) * step)
                .collect()
        } else {
            (0..n)
                .map(|i| (i as f64 - ((n - 1) / 2) as f64) * step)
                .collect()
        };
        let weight = step.powi(d as i32);

        let mut nodes = Vec::with_capacity(count as usize * d);
        let mut index = vec![0usize; d];
        'outer: loop {
            let node: Vec<f64> = index.iter().map(|&i| axis[i]).collect();
            if !node.iter().all(|&c| c == 0.0) {
                nodes.extend_from_slice(&node);
            }
            for axis_pos in (0..d).rev() {
                index[axis_pos] += 1;
                if index[axis_pos] < n {
                    continue 'outer;
                }
                index[axis_pos] = 0;
            }
            break;
        }
        let node_count = nodes.len() / d;
        let weights = vec![weight; node_count];
        let mut grid = Self {
            dimension: d,
            nodes,
            weights,
            symmetric: false,
            partner: None,
        };
        grid.partner = grid.compute_partners();
        grid.symmetric = grid.partner.is_some();
        Ok(Arc::new(grid))
    }

    /// Assemble a grid from explicit nodes and weights (fixtures, tabulated
    /// sources). Symmetry is detected, not assumed.
    pub fn custom(dimension: usize, nodes: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<Arc<Self>> {
        if dimension < 1 {
            return Err(Error::GridSpec("dimension must be >= 1".into()));
        }
        if nodes.is_empty() || nodes.len() != weights.len() {
            return Err(Error::GridSpec(
                "need one positive weight per node and at least one node".into(),
            ));
        }
        let mut flat = Vec::with_capacity(nodes.len() * dimension);
        for node in &nodes {
            if node.len() != dimension {
                return Err(Error::GridSpec(format!(
                    "node of dimension {} in a {dimension}-dimensional grid",
                    node.len()
                )));
            }
            if node.iter().any(|c| !c.is_finite()) {
                return Err(Error::GridSpec("non-finite node coordinate".into()));
            }
            flat.extend_from_slice(node);
        }
        if weights.iter().any(|w| !(*w > 0.0) || !w.is_finite()) {
            return Err(Error::GridSpec("weights must be positive and finite".into()));
        }
        let mut grid = Self {
            dimension,
            nodes: flat,
            weights,
            symmetric: false,
            partner: None,
        };
        grid.partner = grid.compute_partners();
        grid.symmetric = grid.partner.is_some();
        Ok(Arc::new(grid))
    }

    /// Single-mode fixture grid: one node at `k` with weight `w`.
    pub fn single_mode(k: Vec<f64>, w: f64) -> Result<Arc<Self>> {
        let d = k.len();
        Self::custom(d, vec![k], vec![w])
    }

    fn compute_partners(&self) -> Option<Vec<usize>> {
        use std::collections::HashMap;
        // -0.0 and 0.0 differ bitwise; normalize zero components before hashing
        let key = |node: &[f64]| -> Vec<u64> {
            node.iter()
                .map(|&c| if c == 0.0 { 0.0f64 } else { c }.to_bits())
                .collect()
        };
        let mut lookup: HashMap<Vec<u64>, usize> = HashMap::with_capacity(self.len());
        for j in 0..self.len() {
            lookup.insert(key(self.node(j)), j);
        }
        let mut partner = vec![0usize; self.len()];
        for j in 0..self.len() {
            let negated: Vec<f64> = self.node(j).iter().map(|&c| -c).collect();
            match lookup.get(&key(&negated)) {
                Some(&p) if self.weights[p] == self.weights[j] => partner[j] = p,
                _ => return None,
            }
        }
        Some(partner)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Number of nodes (= number of discrete modes).
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn node(&self, j: usize) -> &[f64] {
        &self.nodes[j * self.dimension..(j + 1) * self.dimension]
    }

    pub fn weight(&self, j: usize) -> f64 {
        self.weights[j]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn norm_of_node(&self, j: usize) -> f64 {
        self.node(j).iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// Index of the node `-k_j` on symmetric grids.
    pub fn negation_partner(&self, j: usize) -> Option<usize> {
        self.partner.as_ref().map(|p| p[j])
    }

    /// Evaluate a scalar function at every node.
    pub fn evaluate<F: FnMut(&[f64]) -> Complex64>(&self, mut f: F) -> Vec<Complex64> {
        (0..self.len()).map(|j| f(self.node(j))).collect()
    }

    pub fn evaluate_real<F: FnMut(&[f64]) -> f64>(&self, mut f: F) -> Vec<f64> {
        (0..self.len()).map(|j| f(self.node(j))).collect()
    }

    /// Grid inner product `(f, g) = Σ_j w_j f(k_j)* g(k_j)`, linear in `g`.
    pub fn inner(&self, f: &[Complex64], g: &[Complex64]) -> Complex64 {
        assert_eq!(f.len(), self.len());
        assert_eq!(g.len(), self.len());
        self.weights
            .iter()
            .zip(f.iter().zip(g))
            .map(|(&w, (a, b))| w * a.conj() * b)
            .sum()
    }

    /// Grid norm `‖f‖ = √(f, f)`.
    pub fn norm(&self, f: &[Complex64]) -> f64 {
        self.weights
            .iter()
            .zip(f)
            .map(|(&w, a)| w * a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Structural equality: same dimension, nodes (bitwise) and weights.
    pub fn same_as(&self, other: &Self) -> bool {
        self.dimension == other.dimension
            && self.nodes.len() == other.nodes.len()
            && self
                .nodes
                .iter()
                .zip(&other.nodes)
                .all(|(a, b)| a.to_bits() == b.to_bits())
            && self.weights == other.weights
    }
}
