use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::CartanCoord;
use crate::error::{Error, Result};

const CONTENT_TOL: f64 = 1e-12;

/// Sorted, sum-zero eigenvalue vector of `H(c)` in units of 2π.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NonlocalContent {
    pub a: [f64; 4],
}

impl NonlocalContent {
    /// Validates ordering, width and the zero sum.
    pub fn new(a: [f64; 4]) -> Result<Self> {
        let v = Self { a };
        v.validate()?;
        Ok(v)
    }

    pub fn validate(&self) -> Result<()> {
        let a = self.a;
        let tol = 1e-9;
        if !(a[0] + tol >= a[1] && a[1] + tol >= a[2] && a[2] + tol >= a[3]) {
            return Err(Error::ConstraintViolation(format!("not sorted: {a:?}")));
        }
        if a[0] - a[3] > 1.0 + tol {
            return Err(Error::ConstraintViolation(format!("width exceeds 1: {a:?}")));
        }
        let s: f64 = a.iter().sum();
        if s.abs() > CONTENT_TOL.max(tol) {
            return Err(Error::ConstraintViolation(format!("sum {s:e} is not zero")));
        }
        Ok(())
    }
}

/// `a = (h2, h1, h4, h3) / 2π` for a chamber coordinate.
pub fn nonlocal_content(coord: &CartanCoord) -> Result<NonlocalContent> {
    if !coord.in_chamber(1e-9) {
        return Err(Error::NotInChamber(coord.c1, coord.c2, coord.c3));
    }
    let CartanCoord { c1, c2, c3 } = *coord;
    Ok(NonlocalContent {
        a: [
            (c1 + c2 - c3) / TAU,
            (c1 - c2 + c3) / TAU,
            (-c1 + c2 + c3) / TAU,
            -(c1 + c2 + c3) / TAU,
        ],
    })
}

/// Inverse of [`nonlocal_content`] on the sum-zero hyperplane.
pub fn content_to_coord(v: &NonlocalContent) -> CartanCoord {
    let a = v.a;
    CartanCoord::new((a[0] + a[1]) * PI, (a[0] + a[2]) * PI, (a[1] + a[2]) * PI)
}

/// Content of the other determinant-one lift: `[a3+½, a4+½, a1−½, a2−½]`.
pub fn negate_content(v: &NonlocalContent) -> Result<NonlocalContent> {
    v.validate()?;
    let a = v.a;
    NonlocalContent::new([a[2] + 0.5, a[3] + 0.5, a[0] - 0.5, a[1] - 0.5])
}
