use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Mat2 = Matrix2<Complex64>;
pub type Mat4 = Matrix4<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli_x() -> Mat2 {
    Mat2::new(ZERO, ONE, ONE, ZERO)
}

pub fn pauli_y() -> Mat2 {
    Mat2::new(ZERO, -I, I, ZERO)
}

pub fn pauli_z() -> Mat2 {
    Mat2::new(ONE, ZERO, ZERO, -ONE)
}

/// Kronecker product `a ⊗ b`, first factor acting on the most significant qubit.
pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    Mat4::from_fn(|r, col| a[(r / 2, col / 2)] * b[(r % 2, col % 2)])
}

pub fn max_abs4(m: &Mat4) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs2(m: &Mat2) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max |M M^dag - I|` over entries.
pub fn unitarity_residual(m: &Mat4) -> f64 {
    max_abs4(&(m * m.adjoint() - Mat4::identity()))
}

pub fn unitarity_residual2(m: &Mat2) -> f64 {
    max_abs2(&(m * m.adjoint() - Mat2::identity()))
}

/// Largest entry of `a - e^{iφ} b` for the phase φ that best aligns the two.
pub fn phase_aligned_distance(a: &Mat4, b: &Mat4) -> f64 {
    let overlap = (b.adjoint() * a).trace();
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        ONE
    };
    max_abs4(&(a - b * phase))
}

/// Rotations `exp(-i θ σ/2)`.
pub fn rx(theta: f64) -> Mat2 {
    let (s, co) = (theta / 2.0).sin_cos();
    Mat2::new(c(co, 0.0), c(0.0, -s), c(0.0, -s), c(co, 0.0))
}

pub fn ry(theta: f64) -> Mat2 {
    let (s, co) = (theta / 2.0).sin_cos();
    Mat2::new(c(co, 0.0), c(-s, 0.0), c(s, 0.0), c(co, 0.0))
}

pub fn rz(theta: f64) -> Mat2 {
    let (s, co) = (theta / 2.0).sin_cos();
    Mat2::new(c(co, -s), ZERO, ZERO, c(co, s))
}

/// SU(2) element from ZYZ Euler angles.
pub fn su2_zyz(a: f64, b: f64, g: f64) -> Mat2 {
    rz(a) * ry(b) * rz(g)
}

/// A 4×4 matrix that passed a unitarity check, together with the measured residual.
#[derive(Debug, Clone, PartialEq)]
pub struct Unitary4 {
    matrix: Mat4,
    residual: f64,
}

impl Unitary4 {
    /// Checks `‖U U† − I‖_max ≤ tol`.
    pub fn new(matrix: Mat4, tol: f64) -> Result<Self> {
        let residual = unitarity_residual(&matrix);
        if !(residual <= tol) {
            return Err(Error::NotUnitary(residual));
        }
        Ok(Self { matrix, residual })
    }

    /// For matrices assembled from closed forms. Panics in debug builds if
    /// the closed form is off by more than 1e-12.
    pub(crate) fn from_closed_form(matrix: Mat4) -> Self {
        let residual = unitarity_residual(&matrix);
        debug_assert!(residual <= 1e-12, "closed-form gate residual {residual:e}");
        Self { matrix, residual }
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.matrix
    }

    pub fn into_matrix(self) -> Mat4 {
        self.matrix
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
            residual: self.residual,
        }
    }

    /// Product `self · rhs`; the residual is re-measured.
    pub fn mul(&self, rhs: &Unitary4) -> Self {
        let matrix = self.matrix * rhs.matrix;
        let residual = unitarity_residual(&matrix);
        Self { matrix, residual }
    }
}

impl From<Unitary4> for Mat4 {
    fn from(u: Unitary4) -> Mat4 {
        u.matrix
    }
}
