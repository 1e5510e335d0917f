use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

/// Default tolerance for class equality and chamber membership.
pub const COORD_TOL: f64 = 1e-8;

/// Point `(c1, c2, c3)` in radians naming a local-equivalence class.
///
/// Values produced by [`crate::symmetry::canonicalize`] lie in the Weyl chamber
/// `π/2 ≥ c1 ≥ c2 ≥ c3 ≥ 0` or `π ≥ c1 > π/2, π − c1 ≥ c2 ≥ c3 ≥ 0`. Raw triples
/// outside it are allowed as inputs to the gate constructors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CartanCoord {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl CartanCoord {
    pub const IDENTITY: CartanCoord = CartanCoord::new(0.0, 0.0, 0.0);
    pub const CNOT: CartanCoord = CartanCoord::new(FRAC_PI_2, 0.0, 0.0);
    pub const B: CartanCoord = CartanCoord::new(FRAC_PI_2, PI / 4.0, 0.0);
    pub const DCNOT: CartanCoord = CartanCoord::new(FRAC_PI_2, FRAC_PI_2, 0.0);
    pub const SWAP: CartanCoord = CartanCoord::new(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2);
    pub const SQRT_SWAP: CartanCoord = CartanCoord::new(PI / 4.0, PI / 4.0, PI / 4.0);
    pub const SQRT_SWAP_DAG: CartanCoord = CartanCoord::new(3.0 * PI / 4.0, PI / 4.0, PI / 4.0);

    pub const fn new(c1: f64, c2: f64, c3: f64) -> Self {
        Self { c1, c2, c3 }
    }

    pub fn from_array(c: [f64; 3]) -> Self {
        Self::new(c[0], c[1], c[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }

    /// Coordinates in units of π.
    pub fn over_pi(self) -> [f64; 3] {
        [self.c1 / PI, self.c2 / PI, self.c3 / PI]
    }

    /// Chamber membership with slack `tol` on every defining inequality.
    pub fn in_chamber(&self, tol: f64) -> bool {
        let Self { c1, c2, c3 } = *self;
        c1 <= PI + tol
            && c2 <= c1 + tol
            && c1 + c2 <= PI + tol
            && c3 <= c2 + tol
            && c3 >= -tol
    }

    /// The other representative of a `c3 = 0` class.
    pub fn twin(&self) -> CartanCoord {
        CartanCoord::new(PI - self.c1, self.c2, self.c3)
    }

    pub fn max_diff(&self, other: &CartanCoord) -> f64 {
        (self.c1 - other.c1)
            .abs()
            .max((self.c2 - other.c2).abs())
            .max((self.c3 - other.c3).abs())
    }

    /// Distance modulo the `(c1, c2, 0) ~ (π − c1, c2, 0)` identification.
    pub fn class_distance(&self, other: &CartanCoord) -> f64 {
        let direct = self.max_diff(other);
        let via_twin = (PI - self.c1 - other.c1)
            .abs()
            .max((self.c2 - other.c2).abs())
            .max(self.c3.abs())
            .max(other.c3.abs());
        direct.min(via_twin)
    }

    pub fn class_eq(&self, other: &CartanCoord, tol: f64) -> bool {
        self.class_distance(other) <= tol
    }

    /// Shorthand for [`class_eq`](Self::class_eq) at [`COORD_TOL`].
    pub fn same_class(&self, other: &CartanCoord) -> bool {
        self.class_eq(other, COORD_TOL)
    }
}

impl fmt::Display for CartanCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.over_pi();
        write!(f, "({a:.9}π, {b:.9}π, {c:.9}π)")
    }
}
