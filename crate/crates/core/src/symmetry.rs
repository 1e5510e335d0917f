//! Weyl-chamber canonicalization and the inverse / mirror reflections.
//!
//! The local-equivalence moves on raw coordinates are: shifting any single
//! coordinate by π, permuting the coordinates, and flipping the sign of an even
//! number of them. [`canonicalize`] applies them directly instead of searching.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::cartan::{CartanCoord, COORD_TOL};

/// Representative of `x` modulo π in `(−π/2, π/2]`.
fn reduce(x: f64) -> f64 {
    x - PI * ((x - FRAC_PI_2) / PI).ceil()
}

/// Maps any real triple to the chamber point of the same class.
pub fn canonicalize(raw: CartanCoord) -> CartanCoord {
    let mut v = [reduce(raw.c1), reduce(raw.c2), reduce(raw.c3)];
    let negatives = v.iter().filter(|x| **x < 0.0).count();
    for x in v.iter_mut() {
        *x = x.abs();
    }
    v.sort_by(|a, b| b.total_cmp(a));
    let [a, b, c] = v;
    if negatives % 2 == 0 || c == 0.0 {
        CartanCoord::new(a, b, c)
    } else {
        // (a, b, −c) ~ (π − a, b, c): flip the first and last signs, shift the first
        CartanCoord::new(PI - a, b, c)
    }
}

fn sgn(x: f64) -> f64 {
    if x >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

fn settle(raw: CartanCoord) -> CartanCoord {
    if raw.in_chamber(0.0) {
        raw
    } else {
        canonicalize(raw)
    }
}

/// Class of `U†`.
pub fn inverse_map(c: &CartanCoord) -> CartanCoord {
    settle(CartanCoord::new(PI - c.c1, c.c2, c.c3))
}

/// Class of `SWAP · U`.
pub fn mirror_map(c: &CartanCoord) -> CartanCoord {
    let s = sgn(FRAC_PI_2 - c.c1);
    settle(CartanCoord::new(FRAC_PI_2 + s * c.c3, FRAC_PI_2 - c.c2, s * (FRAC_PI_2 - c.c1)))
}

/// Class of `SWAP · U†`.
pub fn mirrored_inverse_map(c: &CartanCoord) -> CartanCoord {
    let s = sgn(FRAC_PI_2 - c.c1);
    settle(CartanCoord::new(FRAC_PI_2 - s * c.c3, FRAC_PI_2 - c.c2, s * (FRAC_PI_2 - c.c1)))
}

pub fn is_inverse_invariant(c: &CartanCoord) -> bool {
    c.class_eq(&inverse_map(c), COORD_TOL)
}

pub fn is_mirror_invariant(c: &CartanCoord) -> bool {
    c.class_eq(&mirror_map(c), COORD_TOL)
}

pub fn is_mirrored_inverse_invariant(c: &CartanCoord) -> bool {
    c.class_eq(&mirrored_inverse_map(c), COORD_TOL)
}

/// The three invariance flags in the order inverse, mirror, mirrored inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SymmetryFlags {
    pub inverse: bool,
    pub mirror: bool,
    pub mirrored_inverse: bool,
}

pub fn symmetry_flags(c: &CartanCoord) -> SymmetryFlags {
    SymmetryFlags {
        inverse: is_inverse_invariant(c),
        mirror: is_mirror_invariant(c),
        mirrored_inverse: is_mirrored_inverse_invariant(c),
    }
}
