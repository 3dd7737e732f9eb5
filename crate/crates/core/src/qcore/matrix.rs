use std::ops::Mul;

use num_complex::Complex64 as C64;

/// Small dense complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix<const N: usize>(pub [[C64; N]; N]);

pub type Mat2 = Matrix<2>;
pub type Mat4 = Matrix<4>;

impl<const N: usize> Matrix<N> {
    pub fn zeros() -> Self {
        Matrix([[C64::new(0.0, 0.0); N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for k in 0..N {
            m.0[k][k] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn diagonal(d: [C64; N]) -> Self {
        let mut m = Self::zeros();
        for (k, x) in d.into_iter().enumerate() {
            m.0[k][k] = x;
        }
        m
    }

    /// Outer product `|u⟩⟨v|`.
    pub fn outer(u: &[C64; N], v: &[C64; N]) -> Self {
        let mut m = Self::zeros();
        for (row, ur) in m.0.iter_mut().zip(u) {
            for (x, vc) in row.iter_mut().zip(v) {
                *x = ur * vc.conj();
            }
        }
        m
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0[row][col]
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for r in 0..N {
            for c in 0..N {
                m.0[c][r] = self.0[r][c].conj();
            }
        }
        m
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|x| *x *= s);
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut m = *self;
        for r in 0..N {
            for c in 0..N {
                m.0[r][c] += other.0[r][c];
            }
        }
        m
    }

    pub fn apply(&self, v: &[C64; N]) -> [C64; N] {
        let mut out = [C64::new(0.0, 0.0); N];
        for (r, o) in out.iter_mut().enumerate() {
            *o = self.0[r].iter().zip(v).map(|(a, b)| a * b).sum();
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Entrywise `max |U†U − I|`.
    pub fn unitarity_deviation(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Self::identity())
    }

    /// Entrywise distance to `other` after removing the best single global phase.
    ///
    /// The phase is read off the largest entry of `other`, so one phase is used
    /// for the whole matrix, never one per column.
    pub fn distance_up_to_phase(&self, other: &Self) -> f64 {
        let (mut best, mut pos) = (0.0, (0, 0));
        for r in 0..N {
            for c in 0..N {
                let m = other.0[r][c].norm();
                if m > best {
                    best = m;
                    pos = (r, c);
                }
            }
        }
        if best == 0.0 {
            return self.max_abs_diff(other);
        }
        let a = self.0[pos.0][pos.1];
        let phase = if a.norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            let ratio = other.0[pos.0][pos.1] / a;
            ratio / ratio.norm()
        };
        self.scale(phase).max_abs_diff(other)
    }
}

impl<const N: usize> Mul for Matrix<N> {
    type Output = Matrix<N>;

    fn mul(self, rhs: Matrix<N>) -> Matrix<N> {
        let mut m = Matrix::<N>::zeros();
        for r in 0..N {
            for c in 0..N {
                m.0[r][c] = (0..N).map(|k| self.0[r][k] * rhs.0[k][c]).sum();
            }
        }
        m
    }
}

/// `a ⊗ b`, with `a` acting on atom 1 (the major index).
pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut m = Mat4::zeros();
    for r1 in 0..2 {
        for c1 in 0..2 {
            for r2 in 0..2 {
                for c2 in 0..2 {
                    m.0[r1 * 2 + r2][c1 * 2 + c2] = a.0[r1][c1] * b.0[r2][c2];
                }
            }
        }
    }
    m
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// σ⁺ = |e⟩⟨g| in the (g, e) basis.
pub fn sigma_plus() -> Mat2 {
    Matrix([[c(0.0), c(0.0)], [c(1.0), c(0.0)]])
}

/// σ⁻ = |g⟩⟨e|.
pub fn sigma_minus() -> Mat2 {
    sigma_plus().adjoint()
}

pub fn pauli_x() -> Mat2 {
    Matrix([[c(0.0), c(1.0)], [c(1.0), c(0.0)]])
}

/// σ_z = |e⟩⟨e| − |g⟩⟨g|.
pub fn sigma_z() -> Mat2 {
    Matrix::diagonal([c(-1.0), c(1.0)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_places_atom_one_major() {
        let m = kron(&pauli_x(), &Mat2::identity());
        // |g g⟩ (0) -> |e g⟩ (2)
        assert_eq!(m.get(2, 0), c(1.0));
        assert_eq!(m.get(1, 0), c(0.0));
    }

    #[test]
    fn ladder_operators_compose_to_projectors() {
        let p_e = sigma_plus() * sigma_minus();
        assert!(p_e.max_abs_diff(&Matrix::diagonal([c(0.0), c(1.0)])) < 1e-15);
        let sx = sigma_plus().add(&sigma_minus());
        assert!(sx.max_abs_diff(&pauli_x()) < 1e-15);
    }

    #[test]
    fn global_phase_distance_ignores_common_phase_only() {
        let u = kron(&pauli_x(), &sigma_z());
        let rotated = u.scale(C64::from_polar(1.0, 0.7));
        assert!(rotated.distance_up_to_phase(&u) < 1e-15);
        let mut broken = rotated;
        broken.0[0][2] = -broken.0[0][2];
        assert!(broken.distance_up_to_phase(&u) > 1.0);
    }
}
