use std::collections::BTreeMap;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::qcore::matrix::{Mat2, Mat4};
use crate::qcore::state::{Atom, Space, StateVector};

/// Compressed-row sparse operator on a [`Space`].
///
/// Matrix-vector products cost O(nnz).
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOperator {
    space: Space,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<C64>,
}

impl SparseOperator {
    /// Builds from `(row, col, value)` triplets; duplicates are summed and
    /// exact zeros dropped.
    pub fn from_triplets<I>(space: Space, triplets: I) -> Result<SparseOperator>
    where
        I: IntoIterator<Item = (usize, usize, C64)>,
    {
        let dim = space.dim();
        let mut map: BTreeMap<(usize, usize), C64> = BTreeMap::new();
        for (r, c, v) in triplets {
            for (i, what) in [(r, "row"), (c, "column")] {
                if i >= dim {
                    return Err(Error::IndexOutOfRange {
                        what,
                        index: i,
                        limit: dim,
                    });
                }
            }
            *map.entry((r, c)).or_default() += v;
        }
        let mut row_ptr = vec![0; dim + 1];
        let mut cols = Vec::with_capacity(map.len());
        let mut vals = Vec::with_capacity(map.len());
        for ((r, c), v) in map {
            if v == C64::new(0.0, 0.0) {
                continue;
            }
            row_ptr[r + 1] += 1;
            cols.push(c);
            vals.push(v);
        }
        for r in 0..dim {
            row_ptr[r + 1] += row_ptr[r];
        }
        Ok(SparseOperator {
            space,
            row_ptr,
            cols,
            vals,
        })
    }

    pub fn zero(space: Space) -> SparseOperator {
        SparseOperator {
            space,
            row_ptr: vec![0; space.dim() + 1],
            cols: Vec::new(),
            vals: Vec::new(),
        }
    }

    pub fn identity(space: Space) -> SparseOperator {
        let dim = space.dim();
        SparseOperator {
            space,
            row_ptr: (0..=dim).collect(),
            cols: (0..dim).collect(),
            vals: vec![C64::new(1.0, 0.0); dim],
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        (0..self.space.dim())
            .flat_map(move |r| (self.row_ptr[r]..self.row_ptr[r + 1]).map(move |k| (r, self.cols[k], self.vals[k])))
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        let range = self.row_ptr[row]..self.row_ptr[row + 1];
        match self.cols[range.clone()].binary_search(&col) {
            Ok(k) => self.vals[range.start + k],
            Err(_) => C64::new(0.0, 0.0),
        }
    }

    /// `out = self · psi`.
    #[inline]
    pub fn apply_into(&self, psi: &[C64], out: &mut [C64]) {
        for (r, o) in out.iter_mut().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.vals[k] * psi[self.cols[k]];
            }
            *o = acc;
        }
    }

    /// `out += scale · self · psi`.
    #[inline]
    pub fn apply_add(&self, scale: C64, psi: &[C64], out: &mut [C64]) {
        for (r, o) in out.iter_mut().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.vals[k] * psi[self.cols[k]];
            }
            *o += scale * acc;
        }
    }

    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        if psi.space() != self.space {
            return Err(Error::DimensionMismatch {
                expected: self.space.dim(),
                found: psi.space().dim(),
            });
        }
        let mut out = vec![C64::new(0.0, 0.0); self.space.dim()];
        self.apply_into(psi.amps(), &mut out);
        StateVector::from_amplitudes(self.space, out)
    }

    pub fn adjoint(&self) -> SparseOperator {
        Self::from_triplets(self.space, self.triplets().map(|(r, c, v)| (c, r, v.conj())))
            .expect("transpose stays in bounds")
    }

    pub fn scale(&self, s: C64) -> SparseOperator {
        Self::from_triplets(self.space, self.triplets().map(|(r, c, v)| (r, c, v * s))).expect("same sparsity pattern")
    }

    pub fn add(&self, other: &SparseOperator) -> Result<SparseOperator> {
        self.check_space(other)?;
        Self::from_triplets(self.space, self.triplets().chain(other.triplets()))
    }

    /// `self · other`.
    pub fn matmul(&self, other: &SparseOperator) -> Result<SparseOperator> {
        self.check_space(other)?;
        let mut out = Vec::new();
        for (r, k, a) in self.triplets() {
            for j in other.row_ptr[k]..other.row_ptr[k + 1] {
                out.push((r, other.cols[j], a * other.vals[j]));
            }
        }
        Self::from_triplets(self.space, out)
    }

    /// `max |op − op†|` over all entries.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut diff: BTreeMap<(usize, usize), C64> = BTreeMap::new();
        for (r, c, v) in self.triplets() {
            *diff.entry((r, c)).or_default() += v;
            *diff.entry((c, r)).or_default() -= v.conj();
        }
        diff.values().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Maximum absolute row sum, an upper bound on the spectral radius.
    pub fn max_row_abs_sum(&self) -> f64 {
        (0..self.space.dim())
            .map(|r| {
                self.vals[self.row_ptr[r]..self.row_ptr[r + 1]]
                    .iter()
                    .map(|v| v.norm())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> Vec<Vec<C64>> {
        let dim = self.space.dim();
        let mut m = vec![vec![C64::new(0.0, 0.0); dim]; dim];
        for (r, c, v) in self.triplets() {
            m[r][c] = v;
        }
        m
    }

    /// Largest entrywise difference to `other`.
    pub fn max_abs_diff(&self, other: &SparseOperator) -> Result<f64> {
        Ok(self
            .add(&other.scale(C64::new(-1.0, 0.0)))?
            .vals
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max))
    }

    fn check_space(&self, other: &SparseOperator) -> Result<()> {
        if self.space != other.space {
            return Err(Error::DimensionMismatch {
                expected: self.space.dim(),
                found: other.space.dim(),
            });
        }
        Ok(())
    }
}

/// `m ⊗ I ⊗ I_F` or `I ⊗ m ⊗ I_F`.
pub fn embed_atom(space: Space, atom: Atom, m: &Mat2) -> SparseOperator {
    let f = space.fock_cutoff();
    let mut triplets = Vec::with_capacity(8 * f);
    for r in 0..2 {
        for c in 0..2 {
            let v = m.0[r][c];
            for other in 0..2 {
                let (row_atomic, col_atomic) = match atom {
                    Atom::First => (r * 2 + other, c * 2 + other),
                    Atom::Second => (other * 2 + r, other * 2 + c),
                };
                for n in 0..f {
                    triplets.push((space.flat(row_atomic, n), space.flat(col_atomic, n), v));
                }
            }
        }
    }
    SparseOperator::from_triplets(space, triplets).expect("embedding stays in bounds")
}

/// `m ⊗ I_F` for a two-atom operator.
pub fn embed_atomic(space: Space, m: &Mat4) -> SparseOperator {
    let f = space.fock_cutoff();
    let triplets = (0..4)
        .flat_map(|r| (0..4).flat_map(move |c| (0..f).map(move |n| (space.flat(r, n), space.flat(c, n), m.0[r][c]))));
    SparseOperator::from_triplets(space, triplets).expect("embedding stays in bounds")
}

/// Cavity annihilation operator. `a|n⟩ = √n |n−1⟩`; the matrix is the
/// truncation of the infinite one, so `a†|F−1⟩ = 0`.
pub fn annihilation(space: Space) -> SparseOperator {
    let f = space.fock_cutoff();
    let triplets = (0..4)
        .flat_map(|a| (1..f).map(move |n| (space.flat(a, n - 1), space.flat(a, n), C64::new((n as f64).sqrt(), 0.0))));
    SparseOperator::from_triplets(space, triplets).expect("ladder stays in bounds")
}

pub fn creation(space: Space) -> SparseOperator {
    annihilation(space).adjoint()
}

/// `a†a`.
pub fn number(space: Space) -> SparseOperator {
    let f = space.fock_cutoff();
    let triplets =
        (0..4).flat_map(|a| (0..f).map(move |n| (space.flat(a, n), space.flat(a, n), C64::new(n as f64, 0.0))));
    SparseOperator::from_triplets(space, triplets).expect("diagonal stays in bounds")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::matrix::{pauli_x, sigma_z, Matrix};
    use crate::qcore::state::{basis_state, Level::*};

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn embed_identity_is_identity() {
        let space = Space::new(3).unwrap();
        let op = embed_atom(space, Atom::First, &Matrix::identity());
        assert_eq!(op, SparseOperator::identity(space));
    }

    #[test]
    fn embed_pauli_actions() {
        let space = Space::new(5).unwrap();
        let eg = basis_state(space, Excited, Ground, 0).unwrap();
        let z1 = embed_atom(space, Atom::First, &sigma_z());
        assert_eq!(z1.apply(&eg).unwrap(), eg);
        let gg3 = basis_state(space, Ground, Ground, 3).unwrap();
        let x2 = embed_atom(space, Atom::Second, &pauli_x());
        assert_eq!(x2.apply(&gg3).unwrap(), basis_state(space, Ground, Excited, 3).unwrap());
        assert_eq!(x2.nnz(), 4 * space.fock_cutoff());
    }

    #[test]
    fn ladder_actions() {
        let space = Space::new(8).unwrap();
        let a = annihilation(space);
        let one = basis_state(space, Ground, Ground, 1).unwrap();
        assert_eq!(a.apply(&one).unwrap(), basis_state(space, Ground, Ground, 0).unwrap());
        let vac = basis_state(space, Ground, Ground, 0).unwrap();
        assert_eq!(a.apply(&vac).unwrap().norm(), 0.0);
        let n = creation(space).matmul(&a).unwrap();
        let five = basis_state(space, Ground, Ground, 5).unwrap();
        let diff = n
            .apply(&five)
            .unwrap()
            .amps()
            .iter()
            .zip(five.scaled(c(5.0)).amps())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        assert!(diff < 1e-13);
        assert!(n.max_abs_diff(&number(space)).unwrap() < 1e-14);
    }

    #[test]
    fn canonical_commutator_below_truncation() {
        let space = Space::new(7).unwrap();
        let a = annihilation(space);
        let ad = creation(space);
        let comm = a
            .matmul(&ad)
            .unwrap()
            .add(&ad.matmul(&a).unwrap().scale(c(-1.0)))
            .unwrap();
        let f = space.fock_cutoff();
        for r in 0..space.dim() {
            for col in 0..space.dim() {
                if r % f == f - 1 || col % f == f - 1 {
                    continue;
                }
                let want = if r == col { c(1.0) } else { c(0.0) };
                assert!((comm.get(r, col) - want).norm() < 1e-12, "({r},{col})");
            }
        }
    }

    #[test]
    fn triplet_errors_and_duplicates() {
        let space = Space::new(1).unwrap();
        assert!(SparseOperator::from_triplets(space, [(4, 0, c(1.0))]).is_err());
        let op = SparseOperator::from_triplets(space, [(1, 2, c(1.0)), (1, 2, c(2.0)), (0, 0, c(0.0))]).unwrap();
        assert_eq!(op.nnz(), 1);
        assert_eq!(op.get(1, 2), c(3.0));
        assert!(op.hermiticity_deviation() > 2.9);
        assert_eq!(op.max_row_abs_sum(), 3.0);
    }
}
