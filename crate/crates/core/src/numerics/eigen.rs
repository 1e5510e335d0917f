//! Eigendecomposition of complex symmetric unitary 4×4 matrices.
//!
//! A symmetric unitary `M` has commuting real and imaginary parts, both real
//! symmetric, so a single real orthogonal `O` diagonalizes both. Generic complex
//! eigensolvers pick non-real vectors inside degenerate eigenspaces, which is
//! useless for KAK extraction, so we rotate with real Jacobi steps instead:
//! first a classic sweep on `Re M`, then joint sweeps on `(Re M, Im M)` that
//! finish the job inside eigenspaces of `Re M` left degenerate by the first pass.

use nalgebra::Matrix4;
use num_complex::Complex64;

use super::matrix::{max_abs4, unitarity_residual, Mat4};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 64;

#[derive(Debug, Clone)]
pub struct SymmetricUnitaryEigen {
    /// Unit-modulus eigenvalues, aligned with the columns of `vectors`.
    pub values: [Complex64; 4],
    /// Real orthogonal eigenvectors with determinant +1.
    pub vectors: Matrix4<f64>,
}

impl SymmetricUnitaryEigen {
    pub fn reconstruct(&self) -> Mat4 {
        let o = self.vectors.map(|x| Complex64::new(x, 0.0));
        let d = Mat4::from_diagonal(&nalgebra::Vector4::from_column_slice(&self.values));
        o * d * o.transpose()
    }

    pub fn residual(&self, m: &Mat4) -> f64 {
        max_abs4(&(m - self.reconstruct()))
    }
}

/// Diagonalizes `m = O D Oᵀ` with `O` in SO(4).
pub fn eig_symmetric_unitary(m: &Mat4) -> Result<SymmetricUnitaryEigen> {
    let asym = max_abs4(&(m - m.transpose()));
    if asym > 1e-10 {
        return Err(Error::NotSymmetric(asym));
    }
    let ures = unitarity_residual(m);
    if ures > 1e-10 {
        return Err(Error::NotUnitary(ures));
    }

    let sym = (m + m.transpose()) * Complex64::new(0.5, 0.0);
    let mut re = sym.map(|z| z.re);
    let mut im = sym.map(|z| z.im);
    let mut v = Matrix4::<f64>::identity();

    jacobi_single(&mut re, &mut im, &mut v)?;
    jacobi_joint(&mut re, &mut im, &mut v)?;

    if v.determinant() < 0.0 {
        for r in 0..4 {
            v[(r, 0)] = -v[(r, 0)];
        }
    }
    let values = std::array::from_fn(|j| {
        let z = Complex64::new(re[(j, j)], im[(j, j)]);
        z / z.norm()
    });
    Ok(SymmetricUnitaryEigen { values, vectors: v })
}

fn off_diagonal(a: &Matrix4<f64>) -> f64 {
    let mut s = 0.0;
    for p in 0..4 {
        for q in (p + 1)..4 {
            s += a[(p, q)] * a[(p, q)];
        }
    }
    s
}

/// Applies the plane rotation `R = [[c, -s], [s, c]]` in the (p, q) plane:
/// `A ← Rᵀ A R` for each matrix and `V ← V R`.
fn rotate(mats: &mut [&mut Matrix4<f64>], v: &mut Matrix4<f64>, p: usize, q: usize, c: f64, s: f64) {
    for a in mats.iter_mut() {
        for k in 0..4 {
            let akp = a[(k, p)];
            let akq = a[(k, q)];
            a[(k, p)] = c * akp + s * akq;
            a[(k, q)] = -s * akp + c * akq;
        }
        for k in 0..4 {
            let apk = a[(p, k)];
            let aqk = a[(q, k)];
            a[(p, k)] = c * apk + s * aqk;
            a[(q, k)] = -s * apk + c * aqk;
        }
    }
    for k in 0..4 {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp + s * vkq;
        v[(k, q)] = -s * vkp + c * vkq;
    }
}

/// Rotation that maximizes `Σ_k (A'_pp − A'_qq)²` over the given matrices.
fn joint_angle(mats: &[&Matrix4<f64>], p: usize, q: usize) -> Option<(f64, f64)> {
    let (mut g00, mut g01, mut g11) = (0.0, 0.0, 0.0);
    for a in mats {
        let h0 = a[(p, p)] - a[(q, q)];
        let h1 = 2.0 * a[(p, q)];
        g00 += h0 * h0;
        g01 += h0 * h1;
        g11 += h1 * h1;
    }
    if g00 == 0.0 && g01 == 0.0 && g11 == 0.0 {
        return None;
    }
    let phi = 0.5 * (2.0 * g01).atan2(g00 - g11);
    let (mut v1, mut v0) = phi.sin_cos();
    if v0 < 0.0 {
        v0 = -v0;
        v1 = -v1;
    }
    let c = ((1.0 + v0) / 2.0).sqrt();
    let s = v1 / (2.0 * c);
    Some((c, s))
}

fn jacobi_single(re: &mut Matrix4<f64>, im: &mut Matrix4<f64>, v: &mut Matrix4<f64>) -> Result<()> {
    for _ in 0..MAX_SWEEPS {
        if off_diagonal(re) < 1e-32 {
            return Ok(());
        }
        for p in 0..4 {
            for q in (p + 1)..4 {
                if let Some((c, s)) = joint_angle(&[re], p, q) {
                    rotate(&mut [re, im], v, p, q, c, s);
                }
            }
        }
    }
    // a stalled first pass is harmless; the joint pass decides convergence
    Ok(())
}

fn jacobi_joint(re: &mut Matrix4<f64>, im: &mut Matrix4<f64>, v: &mut Matrix4<f64>) -> Result<()> {
    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal(re) + off_diagonal(im);
        if off < 1e-32 {
            return Ok(());
        }
        for p in 0..4 {
            for q in (p + 1)..4 {
                if re[(p, q)] == 0.0 && im[(p, q)] == 0.0 {
                    continue;
                }
                if let Some((c, s)) = joint_angle(&[re, im], p, q) {
                    rotate(&mut [re, im], v, p, q, c, s);
                }
            }
        }
    }
    let off = off_diagonal(re) + off_diagonal(im);
    if off < 1e-24 {
        Ok(())
    } else {
        Err(Error::ConvergenceFailure(format!(
            "joint Jacobi off-diagonal norm {:.3e} after {MAX_SWEEPS} sweeps",
            off.sqrt()
        )))
    }
}
