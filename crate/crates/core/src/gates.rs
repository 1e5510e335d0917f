//! Named two-qubit gates as plain matrices. Qubit 0 is the most significant
//! index bit.
//!
//! Under the `exp(+iH/2)` convention the textbook `√SWAP` (with `+i` on the
//! antisymmetric subspace) sits at `(3π/4, π/4, π/4)`; its adjoint is the
//! `(π/4, π/4, π/4)` class.

use crate::cartan::{canonical_gate, CartanCoord};
use crate::numerics::matrix::{c, Mat4, ONE, ZERO};

pub fn identity() -> Mat4 {
    Mat4::identity()
}

pub fn cnot() -> Mat4 {
    #[rustfmt::skip]
    let m = Mat4::new(
        ONE,  ZERO, ZERO, ZERO,
        ZERO, ONE,  ZERO, ZERO,
        ZERO, ZERO, ZERO, ONE,
        ZERO, ZERO, ONE,  ZERO,
    );
    m
}

pub fn cz() -> Mat4 {
    Mat4::from_diagonal(&nalgebra::Vector4::new(ONE, ONE, ONE, -ONE))
}

pub fn swap() -> Mat4 {
    #[rustfmt::skip]
    let m = Mat4::new(
        ONE,  ZERO, ZERO, ZERO,
        ZERO, ZERO, ONE,  ZERO,
        ZERO, ONE,  ZERO, ZERO,
        ZERO, ZERO, ZERO, ONE,
    );
    m
}

pub fn iswap() -> Mat4 {
    let i = c(0.0, 1.0);
    #[rustfmt::skip]
    let m = Mat4::new(
        ONE,  ZERO, ZERO, ZERO,
        ZERO, ZERO, i,    ZERO,
        ZERO, i,    ZERO, ZERO,
        ZERO, ZERO, ZERO, ONE,
    );
    m
}

pub fn sqrt_swap() -> Mat4 {
    let p = c(0.5, 0.5);
    let m = c(0.5, -0.5);
    #[rustfmt::skip]
    let g = Mat4::new(
        ONE,  ZERO, ZERO, ZERO,
        ZERO, p,    m,    ZERO,
        ZERO, m,    p,    ZERO,
        ZERO, ZERO, ZERO, ONE,
    );
    g
}

/// `SWAP · CNOT`.
pub fn dcnot() -> Mat4 {
    swap() * cnot()
}

/// The canonical gate of the B class.
pub fn b_gate() -> Mat4 {
    canonical_gate(&CartanCoord::B)
}

/// Looks up a gate by its command-line name.
pub fn builtin(name: &str) -> Option<Mat4> {
    Some(match name.to_ascii_lowercase().as_str() {
        "identity" | "id" | "i" => identity(),
        "cnot" | "cx" => cnot(),
        "cz" => cz(),
        "swap" => swap(),
        "sqrt_swap" | "sqrtswap" => sqrt_swap(),
        "b" => b_gate(),
        "dcnot" => dcnot(),
        "iswap" => iswap(),
        _ => return None,
    })
}

pub const BUILTIN_NAMES: [&str; 8] = ["identity", "cnot", "cz", "swap", "sqrt_swap", "b", "dcnot", "iswap"];
