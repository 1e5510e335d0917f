//! Complex 2×2 / 4×4 linear algebra, the symmetric-unitary eigensolver,
//! Haar sampling and the tolerance policy shared by the other modules.

pub mod eigen;
pub mod haar;
pub mod matrix;

pub use eigen::{eig_symmetric_unitary, SymmetricUnitaryEigen};
pub use haar::{haar_su2, haar_su2_factors, haar_su2_pair, haar_unitary4, seeded_rng, SeededRng};
pub use matrix::{kron, Mat2, Mat4, Unitary4};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical thresholds and randomness settings for a run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy {
    pub unitarity_tol: f64,
    pub eig_tol: f64,
    pub coord_tol: f64,
    pub volume_mc_samples: usize,
    pub rng_seed: u64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            unitarity_tol: 1e-10,
            eig_tol: 1e-9,
            coord_tol: 1e-8,
            volume_mc_samples: 100_000,
            rng_seed: 0x5eed,
        }
    }
}

impl TolerancePolicy {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("unitarity_tol", self.unitarity_tol),
            ("eig_tol", self.eig_tol),
            ("coord_tol", self.coord_tol),
        ];
        for (name, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidTolerance(format!("{name} must be positive, got {v}")));
            }
        }
        if self.coord_tol < 1e-12 {
            return Err(Error::InvalidTolerance(format!(
                "coord_tol must be at least 1e-12, got {}",
                self.coord_tol
            )));
        }
        if self.volume_mc_samples == 0 {
            return Err(Error::InvalidTolerance("volume_mc_samples must be positive".into()));
        }
        Ok(())
    }

    pub fn rng(&self) -> SeededRng {
        seeded_rng(self.rng_seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_policy_is_valid() {
        TolerancePolicy::default().validate().unwrap();
    }

    #[test]
    fn rejects_bad_tolerances() {
        let p = TolerancePolicy { coord_tol: 1e-13, ..Default::default() };
        assert!(p.validate().is_err());
        let p = TolerancePolicy { eig_tol: 0.0, ..Default::default() };
        assert!(p.validate().is_err());
        let p = TolerancePolicy { unitarity_tol: f64::NAN, ..Default::default() };
        assert!(p.validate().is_err());
        let p = TolerancePolicy { volume_mc_samples: 0, ..Default::default() };
        assert!(p.validate().is_err());
    }
}
