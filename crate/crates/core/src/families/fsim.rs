use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::cartan::{CartanCoord, LocalInvariants, COORD_TOL};
use crate::error::{Error, Result};
use crate::numerics::matrix::{c, ONE, ZERO};
use crate::numerics::{Mat4, Unitary4};

/// The excitation-preserving gate with swap angle `theta` and conditional
/// phase `phi`.
pub fn fsim(theta: f64, phi: f64) -> Unitary4 {
    let (s, co) = theta.sin_cos();
    let mis = c(0.0, -s);
    let cc = c(co, 0.0);
    #[rustfmt::skip]
    let m = Mat4::new(
        ONE,  ZERO, ZERO, ZERO,
        ZERO, cc,   mis,  ZERO,
        ZERO, mis,  cc,   ZERO,
        ZERO, ZERO, ZERO, Complex64::from_polar(1.0, -phi),
    );
    Unitary4::from_closed_form(m)
}

/// Closed-form `G1`, `G2` of [`fsim`].
///
/// The imaginary part of `G1` carries the sign that the matrix above
/// produces, `−sin²(2θ) sin φ / 4`.
pub fn fsim_invariants(theta: f64, phi: f64) -> LocalInvariants {
    let c2 = (2.0 * theta).cos();
    let s2 = (2.0 * theta).sin();
    let re = (2.0 * c2 + (3.0 + (4.0 * theta).cos()) * phi.cos() / 2.0) / 4.0;
    let im = -s2 * s2 * phi.sin() / 4.0;
    LocalInvariants {
        g1: Complex64::new(re, im),
        g2: 2.0 * c2 + phi.cos(),
    }
}

/// fSim angles for a chamber point on the `c1 = c2` or `c2 = c3` plane.
///
/// `fsim(θ, φ)` sits at `(−θ, −θ, −φ/2)` before canonicalization, so the
/// class `(c1, c1, c3)` takes `θ = −c1, φ = −2c3` and `(c1, c3, c3)` takes
/// `θ = −c3, φ = −2c1`.
pub fn fsim_cartan_params(coord: &CartanCoord) -> Result<(f64, f64)> {
    let CartanCoord { c1, c2, c3 } = *coord;
    // φ is reported in (−π, π]; adding 0.0 clears a negative zero
    let wrap = |p: f64| p - TAU * ((p - PI) / TAU).ceil() + 0.0;
    if (c1 - c2).abs() <= COORD_TOL {
        Ok((-c1 + 0.0, wrap(-2.0 * c3)))
    } else if (c2 - c3).abs() <= COORD_TOL {
        Ok((-c3 + 0.0, wrap(-2.0 * c1)))
    } else {
        Err(Error::NotOnFsimPlane)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{cartan_coordinates, local_invariants};
    use crate::numerics::matrix::{max_abs4, unitarity_residual};
    use crate::numerics::seeded_rng;
    use rand::Rng;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    #[test]
    fn matrix_examples() {
        assert!(max_abs4(&(fsim(0.0, 0.0).into_matrix() - Mat4::identity())) < 1e-15);
        let m = fsim(FRAC_PI_2, 0.0).into_matrix();
        assert!((m[(1, 2)] - c(0.0, -1.0)).norm() < 1e-15);
        assert!(m[(1, 1)].norm() < 1e-15);
        let cp = fsim(0.0, 0.7).into_matrix();
        assert!((cp[(3, 3)] - Complex64::from_polar(1.0, -0.7)).norm() < 1e-15);
        let mut rng = seeded_rng(1);
        for _ in 0..50 {
            let u = fsim(rng.random_range(-PI..PI), rng.random_range(-PI..PI));
            assert!(unitarity_residual(u.matrix()) <= 1e-14);
        }
    }

    #[test]
    fn closed_form_invariants_match_numerics() {
        let z = fsim_invariants(0.0, 0.0);
        assert_eq!((z.g1, z.g2), (ONE, 3.0));
        let t = 0.4;
        assert!((fsim_invariants(t, 0.0).g2 - (2.0 * (2.0 * t).cos() + 1.0)).abs() < 1e-15);
        let mut rng = seeded_rng(2);
        for _ in 0..100 {
            let (th, ph) = (rng.random_range(-PI..PI), rng.random_range(-PI..PI));
            let num = local_invariants(fsim(th, ph).matrix()).unwrap();
            assert!(num.distance(&fsim_invariants(th, ph)) <= 1e-10, "{th} {ph}");
        }
    }

    #[test]
    fn cartan_params_round_trip() {
        for coord in [
            CartanCoord::SQRT_SWAP,
            CartanCoord::new(1.2, 0.3, 0.3),
            CartanCoord::new(0.9, 0.9, 0.2),
            CartanCoord::CNOT,
            CartanCoord::new(FRAC_PI_2, FRAC_PI_4, FRAC_PI_4),
        ] {
            let (th, ph) = fsim_cartan_params(&coord).unwrap();
            let got = cartan_coordinates(fsim(th, ph).matrix()).unwrap();
            assert!(got.same_class(&coord), "{coord} -> {got}");
        }
        let (th, ph) = fsim_cartan_params(&CartanCoord::CNOT).unwrap();
        assert_eq!((th, ph), (0.0, PI));
        assert!(matches!(fsim_cartan_params(&CartanCoord::B), Err(Error::NotOnFsimPlane)));
    }
}
