//! Magic basis, local invariants, Cartan-coordinate extraction, canonical gates,
//! KAK decomposition and nonlocal content.
//!
//! Conventions: a canonical gate is `A(c) = exp(i H(c) / 2)` with
//! `H(c) = c1 XX + c2 YY + c3 ZZ`, and a general gate is
//! `e^{iα} (k1 ⊗ k2) A(c) (k3 ⊗ k4)`.

mod content;
mod coord;
mod kak;

pub use content::{content_to_coord, negate_content, nonlocal_content, NonlocalContent};
pub use coord::{CartanCoord, COORD_TOL};
pub use kak::{factor_local, kak_decompose, kak_decompose_to, KakDecomposition};

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::matrix::{c, kron, pauli_x, pauli_y, pauli_z, unitarity_residual, ZERO};
use crate::numerics::{eig_symmetric_unitary, Mat4};
use crate::symmetry::canonicalize;

/// Unitarity threshold for gates handed to this module.
pub const UNITARITY_TOL: f64 = 1e-10;

/// Bell-type basis whose columns diagonalize every `H(c)`.
pub fn magic_basis() -> Mat4 {
    let s = FRAC_1_SQRT_2;
    let (r, i) = (c(s, 0.0), c(0.0, s));
    #[rustfmt::skip]
    let q = Mat4::new(
        r,    ZERO, ZERO, i,
        ZERO, i,    r,    ZERO,
        ZERO, i,    -r,   ZERO,
        r,    ZERO, ZERO, -i,
    );
    q
}

pub fn nonlocal_hamiltonian(coord: &CartanCoord) -> Mat4 {
    let re = |x: f64| c(x, 0.0);
    kron(&pauli_x(), &pauli_x()) * re(coord.c1)
        + kron(&pauli_y(), &pauli_y()) * re(coord.c2)
        + kron(&pauli_z(), &pauli_z()) * re(coord.c3)
}

/// Eigenvalues of `H(c)` on the magic-basis columns, in column order.
pub fn hamiltonian_eigenvalues(coord: &CartanCoord) -> [f64; 4] {
    let CartanCoord { c1, c2, c3 } = *coord;
    [c1 - c2 + c3, c1 + c2 - c3, -c1 - c2 - c3, -c1 + c2 + c3]
}

/// Inverse of [`hamiltonian_eigenvalues`] on the sum-zero hyperplane.
pub fn coord_from_eigenvalues(h: &[f64; 4]) -> CartanCoord {
    CartanCoord::new((h[0] + h[1]) / 2.0, (h[1] + h[3]) / 2.0, (h[0] + h[3]) / 2.0)
}

/// `exp(i H(c) / 2)`, exponentiated exactly in the magic basis.
pub fn canonical_gate(coord: &CartanCoord) -> Mat4 {
    let h = hamiltonian_eigenvalues(coord);
    let q = magic_basis();
    let d = Mat4::from_diagonal(&Vector4::from_fn(|j, _| Complex64::from_polar(1.0, h[j] / 2.0)));
    q * d * q.adjoint()
}

/// Makhlin invariants `G1` (complex) and `G2` (real).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalInvariants {
    pub g1: Complex64,
    pub g2: f64,
}

impl LocalInvariants {
    pub fn distance(&self, other: &LocalInvariants) -> f64 {
        (self.g1 - other.g1).norm().max((self.g2 - other.g2).abs())
    }
}

fn check_unitary(u: &Mat4) -> Result<()> {
    let r = unitarity_residual(u);
    if r <= UNITARITY_TOL {
        Ok(())
    } else {
        Err(Error::NotUnitary(r))
    }
}

/// `m(U) = (Q† U Q)ᵀ (Q† U Q)`.
pub fn magic_m(u: &Mat4) -> Mat4 {
    let q = magic_basis();
    let up = q.adjoint() * u * q;
    up.transpose() * up
}

/// Invariants before the imaginary part of `G2` is dropped.
pub fn local_invariants_raw(u: &Mat4) -> Result<(Complex64, Complex64)> {
    check_unitary(u)?;
    let m = magic_m(u);
    let det = u.determinant();
    let tr = m.trace();
    let tr2 = (m * m).trace();
    let g1 = tr * tr / (det * 16.0);
    let g2 = (tr * tr - tr2) / (det * 4.0);
    Ok((g1, g2))
}

pub fn local_invariants(u: &Mat4) -> Result<LocalInvariants> {
    let (g1, g2) = local_invariants_raw(u)?;
    debug_assert!(g2.im.abs() <= 1e-9, "Im G2 = {:e}", g2.im);
    Ok(LocalInvariants { g1, g2: g2.re })
}

/// Spectral data of `m(U)` after fixing the determinant.
pub(crate) struct MagicSpectrum {
    /// `det(U)^{1/4}`; `U / root` has unit determinant.
    pub root: Complex64,
    /// `Q† (U / root) Q`.
    pub up: Mat4,
    /// Real eigenvectors of `m`, special orthogonal.
    pub o: Matrix4<f64>,
    /// Eigenvalue arguments, adjusted to sum to exactly zero.
    pub theta: [f64; 4],
}

pub(crate) fn magic_spectrum(u: &Mat4) -> Result<MagicSpectrum> {
    check_unitary(u)?;
    let det = u.determinant();
    let root = Complex64::from_polar(1.0, det.arg() / 4.0);
    let u0 = u / root;
    let q = magic_basis();
    let up = q.adjoint() * u0 * q;
    let m = up.transpose() * up;
    let eig = eig_symmetric_unitary(&m)?;
    let mut theta: [f64; 4] = std::array::from_fn(|j| eig.values[j].arg());
    // det m = 1, so the arguments sum to a multiple of 2π
    let total: f64 = theta.iter().sum();
    theta[3] -= total;
    Ok(MagicSpectrum { root, up, o: eig.vectors, theta })
}

/// Chamber representative of the class of `u`.
pub fn cartan_coordinates(u: &Mat4) -> Result<CartanCoord> {
    let spec = magic_spectrum(u)?;
    Ok(canonicalize(coord_from_eigenvalues(&spec.theta)))
}

/// Invariants of a canonical gate, computed in closed form from its spectrum.
pub fn invariants_of_coord(coord: &CartanCoord) -> LocalInvariants {
    let h = hamiltonian_eigenvalues(coord);
    let e: Vec<Complex64> = h.iter().map(|&x| Complex64::from_polar(1.0, x)).collect();
    let tr: Complex64 = e.iter().sum();
    let tr2: Complex64 = e.iter().map(|z| z * z).sum();
    LocalInvariants {
        g1: tr * tr / 16.0,
        g2: ((tr * tr - tr2) / 4.0).re,
    }
}

/// Largest entry of `u − e^{iφ} v` after optimal phase alignment.
pub fn phase_distance(u: &Mat4, v: &Mat4) -> f64 {
    crate::numerics::matrix::phase_aligned_distance(u, v)
}

/// `|tr(V† W)| / 4`.
pub fn gate_fidelity(v: &Mat4, w: &Mat4) -> f64 {
    ((v.adjoint() * w).trace().norm() / 4.0).min(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates;
    use crate::numerics::matrix::{max_abs4, ONE};
    use crate::numerics::{haar_su2_pair, haar_unitary4, seeded_rng};
    use nalgebra::Vector4;
    use rand::Rng;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn random_chamber<R: Rng>(rng: &mut R) -> CartanCoord {
        loop {
            let c = CartanCoord::new(
                rng.random_range(0.0..PI),
                rng.random_range(0.0..FRAC_PI_2),
                rng.random_range(0.0..FRAC_PI_2),
            );
            if c.in_chamber(0.0) {
                return c;
            }
        }
    }

    #[test]
    fn magic_basis_first_column_is_bell_pair() {
        let q = magic_basis();
        let s = FRAC_1_SQRT_2;
        assert_eq!(q.column(0).into_owned(), Vector4::new(c(s, 0.0), ZERO, ZERO, c(s, 0.0)));
        assert!(unitarity_residual(&q) < 1e-15);
    }

    #[test]
    fn magic_basis_transpose_product_is_signed_diagonal() {
        let q = magic_basis();
        let p = q.transpose() * q;
        let expect = Mat4::from_diagonal(&Vector4::new(ONE, -ONE, ONE, -ONE));
        assert!(max_abs4(&(p - expect)) < 1e-15);
    }

    #[test]
    fn hamiltonian_zero_and_eigenpairs() {
        assert_eq!(nonlocal_hamiltonian(&CartanCoord::IDENTITY), Mat4::zeros());
        let q = magic_basis();
        let b = CartanCoord::B;
        let h = nonlocal_hamiltonian(&b);
        let psi2 = q.column(1).into_owned();
        let r = &h * &psi2 - psi2 * c(3.0 * FRAC_PI_4, 0.0);
        assert!(r.norm() < 1e-14);

        let mut rng = seeded_rng(4);
        for _ in 0..50 {
            let coord = CartanCoord::new(rng.random_range(-4.0..4.0), rng.random_range(-4.0..4.0), rng.random_range(-4.0..4.0));
            let h = nonlocal_hamiltonian(&coord);
            let ev = hamiltonian_eigenvalues(&coord);
            for j in 0..4 {
                let v = q.column(j).into_owned();
                assert!((&h * &v - v * c(ev[j], 0.0)).norm() <= 1e-13);
            }
            assert!(max_abs4(&(h.adjoint() - h)) == 0.0);
        }
    }

    #[test]
    fn eigenvalue_map_is_invertible() {
        let mut rng = seeded_rng(8);
        for _ in 0..100 {
            let coord = CartanCoord::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
            let back = coord_from_eigenvalues(&hamiltonian_eigenvalues(&coord));
            assert!(back.max_diff(&coord) <= 1e-12);
        }
    }

    #[test]
    fn canonical_gate_identity_and_cnot_class() {
        assert!(max_abs4(&(canonical_gate(&CartanCoord::IDENTITY) - Mat4::identity())) < 1e-15);
        let a = canonical_gate(&CartanCoord::CNOT);
        assert!(unitarity_residual(&a) <= 1e-13);
        let inv = local_invariants(&a).unwrap();
        assert!(inv.g1.norm() < 1e-12);
        assert!((inv.g2 - 1.0).abs() < 1e-12);
        let cnot = local_invariants(&gates::cnot()).unwrap();
        assert!(inv.distance(&cnot) < 1e-12);
    }

    #[test]
    fn canonical_b_round_trips() {
        let c = cartan_coordinates(&canonical_gate(&CartanCoord::B)).unwrap();
        assert!(c.max_diff(&CartanCoord::B) < 1e-12, "{c}");
    }

    #[test]
    fn identity_invariants() {
        let inv = local_invariants(&Mat4::identity()).unwrap();
        assert!((inv.g1 - ONE).norm() < 1e-14);
        assert!((inv.g2 - 3.0).abs() < 1e-14);
    }

    #[test]
    fn swap_invariants_match_canonical() {
        let a = local_invariants(&gates::swap()).unwrap();
        let b = local_invariants(&canonical_gate(&CartanCoord::SWAP)).unwrap();
        assert!(a.distance(&b) < 1e-12);
        assert!(a.distance(&invariants_of_coord(&CartanCoord::SWAP)) < 1e-12);
    }

    #[test]
    fn named_gate_coordinates() {
        let cn = cartan_coordinates(&gates::cnot()).unwrap();
        assert!(cn.same_class(&CartanCoord::CNOT), "{cn}");
        let dc = cartan_coordinates(&(gates::swap() * gates::cnot())).unwrap();
        assert!(dc.same_class(&CartanCoord::DCNOT), "{dc}");
        let sw = cartan_coordinates(&gates::swap()).unwrap();
        assert!(sw.same_class(&CartanCoord::SWAP), "{sw}");
    }

    #[test]
    fn rejects_non_unitary() {
        let m = Mat4::identity() * c(0.5, 0.0);
        assert!(matches!(cartan_coordinates(&m), Err(Error::NotUnitary(_))));
        assert!(matches!(local_invariants(&m), Err(Error::NotUnitary(_))));
    }

    #[test]
    fn local_invariance() {
        let mut rng = seeded_rng(77);
        for _ in 0..200 {
            let u = haar_unitary4(&mut rng);
            let base = local_invariants(&u).unwrap();
            let phase = Complex64::from_polar(1.0, rng.random_range(0.0..6.3));
            let w = haar_su2_pair(&mut rng) * u * haar_su2_pair(&mut rng) * phase;
            let moved = local_invariants(&w).unwrap();
            assert!(base.distance(&moved) <= 1e-10);
            let (_, g2) = local_invariants_raw(&w).unwrap();
            assert!(g2.im.abs() <= 1e-9);
        }
    }

    #[test]
    fn round_trip_with_random_locals() {
        let mut rng = seeded_rng(31);
        for _ in 0..300 {
            let coord = random_chamber(&mut rng);
            let u = haar_su2_pair(&mut rng) * canonical_gate(&coord) * haar_su2_pair(&mut rng);
            let back = cartan_coordinates(&u).unwrap();
            assert!(back.in_chamber(1e-9));
            assert!(back.class_eq(&coord, 1e-8), "{coord} -> {back}");
            let inv = local_invariants(&canonical_gate(&back)).unwrap();
            assert!(inv.distance(&local_invariants(&u).unwrap()) <= 1e-8);
        }
    }
}
