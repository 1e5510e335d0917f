use nalgebra::Matrix4;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use super::matrix::{kron, Mat2, Mat4};

/// The single generator type used for every random draw in the crate.
pub type SeededRng = ChaCha20Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha20Rng::seed_from_u64(seed)
}

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Haar-distributed element of SU(2), from a uniform point on S³.
pub fn haar_su2<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    let mut q = [0.0f64; 4];
    let norm = loop {
        for x in q.iter_mut() {
            *x = normal(rng);
        }
        let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-12 {
            break n;
        }
    };
    let a = Complex64::new(q[0] / norm, q[1] / norm);
    let b = Complex64::new(q[2] / norm, q[3] / norm);
    Mat2::new(a, -b.conj(), b, a.conj())
}

/// Pair of independent Haar SU(2) factors.
pub fn haar_su2_factors<R: Rng + ?Sized>(rng: &mut R) -> (Mat2, Mat2) {
    let a = haar_su2(rng);
    let b = haar_su2(rng);
    (a, b)
}

/// Random local gate `k1 ⊗ k2`.
pub fn haar_su2_pair<R: Rng + ?Sized>(rng: &mut R) -> Mat4 {
    let (a, b) = haar_su2_factors(rng);
    kron(&a, &b)
}

/// Haar-random element of U(4) via Gram–Schmidt on a complex Ginibre matrix.
pub fn haar_unitary4<R: Rng + ?Sized>(rng: &mut R) -> Mat4 {
    let g = Mat4::from_fn(|_, _| Complex64::new(normal(rng), normal(rng)) / 2f64.sqrt());
    gram_schmidt(&g)
}

fn gram_schmidt(g: &Mat4) -> Mat4 {
    let mut q = Mat4::zeros();
    for j in 0..4 {
        let mut v = g.column(j).into_owned();
        for k in 0..j {
            let qk = q.column(k).into_owned();
            let proj = qk.dotc(&v);
            v -= qk * proj;
        }
        // second pass for numerical orthogonality
        for k in 0..j {
            let qk = q.column(k).into_owned();
            let proj = qk.dotc(&v);
            v -= qk * proj;
        }
        let n = v.norm();
        q.set_column(j, &(v / Complex64::new(n, 0.0)));
    }
    q
}

/// Haar-random element of SO(4).
pub fn haar_orthogonal4<R: Rng + ?Sized>(rng: &mut R) -> Matrix4<f64> {
    let g = Matrix4::<f64>::from_fn(|_, _| normal(rng));
    let mut q = Matrix4::<f64>::zeros();
    for j in 0..4 {
        let mut v = g.column(j).into_owned();
        for _ in 0..2 {
            for k in 0..j {
                let qk = q.column(k).into_owned();
                v -= qk * qk.dot(&v);
            }
        }
        let n = v.norm();
        q.set_column(j, &(v / n));
    }
    if q.determinant() < 0.0 {
        for r in 0..4 {
            q[(r, 0)] = -q[(r, 0)];
        }
    }
    q
}
