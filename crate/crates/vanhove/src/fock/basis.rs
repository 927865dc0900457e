//! Truncated occupation-number basis.
//!
//! The bosonic Fock space over `M` discrete modes, truncated to total
//! excitation `Σ n_i ≤ N`, is spanned by occupation vectors
//! `(n_1, …, n_M)`. Symmetry of the underlying n-particle wavefunctions is
//! implicit in this representation. Enumeration is graded lexicographic
//! (by total excitation, then lexicographic), so matrices built over the
//! same `(M, N)` are bit-stable across runs.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default cap on the number of enumerated basis states.
pub const DEFAULT_MAX_STATES: usize = 200_000;

/// Enumerated occupation basis for `M` modes with `Σ n_i ≤ N`.
#[derive(Debug)]
pub struct OccupationBasis {
    mode_count: usize,
    max_total: usize,
    /// All occupation vectors, graded-lex order, flattened row-major.
    occupations: Vec<u32>,
    /// Total excitation (grade) per state.
    totals: Vec<u32>,
    /// First state index of each grade; `grade_start[n]..grade_start[n+1]`
    /// is the n-excitation sector.
    grade_start: Vec<usize>,
    index: HashMap<Vec<u32>, usize>,
}

/// Number of occupation vectors with `Σ n_i ≤ max_total` over `mode_count`
/// modes: `Σ_{n=0}^{N} C(M+n-1, n)`. Exact in u128; `None` on overflow.
pub fn truncated_dimension(mode_count: usize, max_total: usize) -> Option<u128> {
    let mut total: u128 = 0;
    for n in 0..=max_total {
        total = total.checked_add(binomial(mode_count as u128 + n as u128 - 1, n as u128)?)?;
    }
    Some(total)
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)?;
        acc /= i + 1;
    }
    Some(acc)
}

impl OccupationBasis {
    /// Enumerate the basis with the default capacity cap.
    pub fn build(mode_count: usize, max_total: usize) -> Result<Arc<Self>> {
        Self::build_capped(mode_count, max_total, DEFAULT_MAX_STATES)
    }

    pub fn build_capped(mode_count: usize, max_total: usize, cap: usize) -> Result<Arc<Self>> {
        if mode_count < 1 {
            return Err(Error::GridSpec("mode count must be >= 1".into()));
        }
        let needed = truncated_dimension(mode_count, max_total)
            .ok_or(Error::Capacity { needed: u128::MAX, cap })?;
        if needed > cap as u128 {
            return Err(Error::Capacity { needed, cap });
        }
        let dim = needed as usize;

        let mut occupations = Vec::with_capacity(dim * mode_count);
        let mut totals = Vec::with_capacity(dim);
        let mut grade_start = Vec::with_capacity(max_total + 2);
        let mut scratch = vec![0u32; mode_count];
        for grade in 0..=max_total {
            grade_start.push(totals.len());
            enumerate_grade(grade as u32, 0, mode_count, &mut scratch, &mut |occ| {
                occupations.extend_from_slice(occ);
                totals.push(grade as u32);
            });
        }
        grade_start.push(totals.len());
        debug_assert_eq!(totals.len(), dim);

        let mut index = HashMap::with_capacity(dim);
        for i in 0..dim {
            index.insert(occupations[i * mode_count..(i + 1) * mode_count].to_vec(), i);
        }

        Ok(Arc::new(Self {
            mode_count,
            max_total,
            occupations,
            totals,
            grade_start,
            index,
        }))
    }

    pub fn mode_count(&self) -> usize {
        self.mode_count
    }

    pub fn max_total(&self) -> usize {
        self.max_total
    }

    /// Basis dimension.
    pub fn len(&self) -> usize {
        self.totals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.totals.is_empty()
    }

    /// Occupation vector of state `i`.
    pub fn occupation(&self, i: usize) -> &[u32] {
        &self.occupations[i * self.mode_count..(i + 1) * self.mode_count]
    }

    /// Total excitation `Σ n_i` of state `i`.
    pub fn total(&self, i: usize) -> u32 {
        self.totals[i]
    }

    /// Index of an occupation vector, if it lies in the truncated basis.
    pub fn index_of(&self, occupation: &[u32]) -> Option<usize> {
        self.index.get(occupation).copied()
    }

    /// State range of the given grade (empty if above the truncation).
    pub fn grade_range(&self, grade: usize) -> std::ops::Range<usize> {
        if grade > self.max_total {
            return 0..0;
        }
        self.grade_start[grade]..self.grade_start[grade + 1]
    }

    /// Index of the vacuum state `(0, …, 0)`.
    pub fn vacuum_index(&self) -> usize {
        0
    }

    /// Two bases are interchangeable iff they enumerate the same `(M, N)`.
    pub fn same_as(&self, other: &Self) -> bool {
        self.mode_count == other.mode_count && self.max_total == other.max_total
    }
}

/// Emit every occupation vector of exactly `remaining` quanta over modes
/// `from..mode_count`, lexicographically ascending.
fn enumerate_grade(
    remaining: u32,
    from: usize,
    mode_count: usize,
    scratch: &mut Vec<u32>,
    emit: &mut impl FnMut(&[u32]),
) {
    if from == mode_count - 1 {
        scratch[from] = remaining;
        emit(scratch);
        return;
    }
    for here in 0..=remaining {
        scratch[from] = here;
        enumerate_grade(remaining - here, from + 1, mode_count, scratch, emit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_mode_ladder() {
        let basis = OccupationBasis::build(1, 3).unwrap();
        assert_eq!(basis.len(), 4);
        for n in 0..4 {
            assert_eq!(basis.occupation(n), &[n as u32]);
        }
    }

    #[test]
    fn two_modes_total_two() {
        let basis = OccupationBasis::build(2, 2).unwrap();
        assert_eq!(basis.len(), 6);
        // graded lex: vacuum, grade 1, grade 2
        assert_eq!(basis.occupation(0), &[0, 0]);
        assert_eq!(basis.occupation(1), &[0, 1]);
        assert_eq!(basis.occupation(2), &[1, 0]);
        assert_eq!(basis.occupation(3), &[0, 2]);
        assert_eq!(basis.occupation(4), &[1, 1]);
        assert_eq!(basis.occupation(5), &[2, 0]);
    }

    #[test]
    fn dimension_matches_combinatorial_count() {
        // Σ_{n=0..2} C(27+n-1, n) = 1 + 27 + 378
        assert_eq!(truncated_dimension(27, 2), Some(406));
        let basis = OccupationBasis::build(27, 2).unwrap();
        assert_eq!(basis.len(), 406);
    }

    #[test]
    fn enumeration_is_a_bijection() {
        let basis = OccupationBasis::build(4, 5).unwrap();
        for i in 0..basis.len() {
            assert_eq!(basis.index_of(basis.occupation(i)), Some(i));
        }
        assert_eq!(
            basis.len() as u128,
            truncated_dimension(4, 5).unwrap()
        );
    }

    #[test]
    fn capacity_error() {
        let err = OccupationBasis::build(50, 8).unwrap_err();
        match err {
            crate::error::Error::Capacity { needed, cap } => {
                assert!(needed > cap as u128);
            }
            other => panic!("expected capacity error, got {other}"),
        }
    }

    #[test]
    fn grades_are_contiguous() {
        let basis = OccupationBasis::build(3, 4).unwrap();
        for grade in 0..=4 {
            for i in basis.grade_range(grade) {
                assert_eq!(basis.total(i) as usize, grade);
            }
        }
    }
}
