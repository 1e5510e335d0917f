use std::f64::consts::{PI, TAU};

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{
    canonical_gate, coord_from_eigenvalues, hamiltonian_eigenvalues, magic_basis, magic_spectrum,
    CartanCoord,
};
use crate::error::{Error, Result};
use crate::numerics::matrix::{kron, max_abs4, Mat2, Mat4};
use crate::symmetry::canonicalize;

/// `U = e^{iα} (k1 ⊗ k2) A(coord) (k3 ⊗ k4)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KakDecomposition {
    pub global_phase: f64,
    pub k1: Mat2,
    pub k2: Mat2,
    pub k3: Mat2,
    pub k4: Mat2,
    pub coord: CartanCoord,
}

impl KakDecomposition {
    pub fn left(&self) -> Mat4 {
        kron(&self.k1, &self.k2)
    }

    pub fn right(&self) -> Mat4 {
        kron(&self.k3, &self.k4)
    }

    pub fn reconstruct(&self) -> Mat4 {
        self.left() * canonical_gate(&self.coord) * self.right() * Complex64::from_polar(1.0, self.global_phase)
    }

    pub fn residual(&self, u: &Mat4) -> f64 {
        max_abs4(&(self.reconstruct() - u))
    }
}

/// Splits an element of SU(2) ⊗ SU(2) into its two factors (each fixed up to a
/// shared sign).
pub fn factor_local(k: &Mat4) -> (Mat2, Mat2) {
    let block = |a: usize, b: usize| -> Mat2 {
        Mat2::from_fn(|r, c| k[(2 * a + r, 2 * b + c)])
    };
    let (mut best, mut best_norm) = ((0, 0), -1.0);
    for a in 0..2 {
        for b in 0..2 {
            let n = block(a, b).norm();
            if n > best_norm {
                best = (a, b);
                best_norm = n;
            }
        }
    }
    let blk = block(best.0, best.1);
    let k2 = blk / blk.determinant().sqrt();
    let k1 = Mat2::from_fn(|a, b| (k2.adjoint() * block(a, b)).trace() / 2.0);
    (k1, k2)
}

/// Full KAK decomposition with the chamber representative as `coord`.
pub fn kak_decompose(u: &Mat4) -> Result<KakDecomposition> {
    let spec = magic_spectrum(u)?;
    let target = canonicalize(coord_from_eigenvalues(&spec.theta));
    decompose_with(u, &spec, &target)
}

/// KAK decomposition whose canonical factor is `A(target)`.
///
/// `target` must name the same class as `u`; any Weyl-group image of the
/// chamber representative is accepted, so two gates whose coordinates agree
/// only up to the boundary identification can be given identical middles.
pub fn kak_decompose_to(u: &Mat4, target: &CartanCoord) -> Result<KakDecomposition> {
    let spec = magic_spectrum(u)?;
    decompose_with(u, &spec, target)
}

struct Gauge {
    sigma: [usize; 4],
    shift: bool,
    n: [i64; 4],
    err: f64,
}

const PERMS: [[usize; 4]; 24] = {
    let mut out = [[0usize; 4]; 24];
    let mut idx = 0;
    let mut a = 0;
    while a < 4 {
        let mut b = 0;
        while b < 4 {
            let mut c = 0;
            while c < 4 {
                if a != b && a != c && b != c {
                    let d = 6 - a - b - c;
                    out[idx] = [a, b, c, d];
                    idx += 1;
                }
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    out
};

/// Finds `σ, s, n` with `target_j = θ_σ(j) + sπ + 2π n_j`.
fn find_gauge(theta: &[f64; 4], target: &[f64; 4]) -> Gauge {
    let mut best = Gauge { sigma: [0, 1, 2, 3], shift: false, n: [0; 4], err: f64::INFINITY };
    for sigma in PERMS {
        for shift in [false, true] {
            let s = if shift { PI } else { 0.0 };
            let mut n = [0i64; 4];
            let mut err: f64 = 0.0;
            for j in 0..4 {
                let delta = target[j] - theta[sigma[j]] - s;
                let k = (delta / TAU).round();
                n[j] = k as i64;
                err = err.max((delta - k * TAU).abs());
            }
            if err < best.err {
                best = Gauge { sigma, shift, n, err };
            }
        }
    }
    best
}

fn decompose_with(u: &Mat4, spec: &super::MagicSpectrum, target: &CartanCoord) -> Result<KakDecomposition> {
    let theta_t = hamiltonian_eigenvalues(target);
    let gauge = find_gauge(&spec.theta, &theta_t);
    if gauge.err > 1e-6 {
        return Err(Error::ConvergenceFailure(format!(
            "target {target} does not match the spectrum of the gate (gap {:.3e})",
            gauge.err
        )));
    }

    // Up = O1 D Oᵀ with D = diag(e^{iθ/2}); O1 is real orthogonal.
    let o = spec.o.map(|x| Complex64::new(x, 0.0));
    let dconj = Mat4::from_diagonal(&nalgebra::Vector4::from_fn(|j, _| {
        Complex64::from_polar(1.0, -spec.theta[j] / 2.0)
    }));
    let o1c = spec.up * o * dconj;
    let o1 = o1c.map(|z| z.re);

    // D = i^{-s} P D_t S_n Pᵀ
    let mut p = Matrix4::<f64>::zeros();
    for j in 0..4 {
        p[(gauge.sigma[j], j)] = 1.0;
    }
    let mut f = Matrix4::<f64>::identity();
    if p.determinant() < 0.0 {
        f[(0, 0)] = -1.0;
    }
    let sn = Matrix4::<f64>::from_diagonal(&nalgebra::Vector4::from_fn(|j, _| {
        if gauge.n[j].rem_euclid(2) == 0 {
            1.0
        } else {
            -1.0
        }
    }));
    let mut left = o1 * p * f;
    let mut right = f * sn * p.transpose() * spec.o.transpose();
    // a signed diagonal commutes with the canonical factor; move it right
    if (left - Matrix4::from_diagonal(&left.diagonal())).abs().max() < 1e-12 {
        right = left * right;
        left = Matrix4::identity();
    }

    let q = magic_basis();
    let to_c = |m: &Matrix4<f64>| m.map(|x| Complex64::new(x, 0.0));
    let kl = q * to_c(&left) * q.adjoint();
    let kr = q * to_c(&right) * q.adjoint();
    let (k1, k2) = factor_local(&kl);
    let (k3, k4) = factor_local(&kr);

    let s_phase = if gauge.shift { PI / 2.0 } else { 0.0 };
    let kak = KakDecomposition {
        global_phase: spec.root.arg() - s_phase,
        k1,
        k2,
        k3,
        k4,
        coord: *target,
    };
    let res = kak.residual(u);
    if res > 1e-6 {
        return Err(Error::ConvergenceFailure(format!("KAK reassembly residual {res:.3e}")));
    }
    Ok(kak)
}
