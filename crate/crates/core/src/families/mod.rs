//! One-parameter gate families and their circuit realizations.

mod fsim;

pub use fsim::{fsim, fsim_cartan_params, fsim_invariants};

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cartan::{cartan_coordinates, CartanCoord, COORD_TOL};
use crate::error::{Error, Result};
use crate::gates;
use crate::numerics::matrix::{kron, pauli_x, pauli_y, rx, rz};
use crate::numerics::{Mat4, Unitary4};
use crate::symmetry::{canonicalize, mirrored_inverse_map};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyId {
    BAlpha,
    SpeToB,
    PlaneThetaLine,
    C2QuarterLine,
    FsimDiag,
}

impl FamilyId {
    pub const ALL: [FamilyId; 5] = [
        FamilyId::BAlpha,
        FamilyId::SpeToB,
        FamilyId::PlaneThetaLine,
        FamilyId::C2QuarterLine,
        FamilyId::FsimDiag,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyId::BAlpha => "b_alpha",
            FamilyId::SpeToB => "spe_to_b",
            FamilyId::PlaneThetaLine => "plane_theta_line",
            FamilyId::C2QuarterLine => "c2_quarter_line",
            FamilyId::FsimDiag => "fsim_diag",
        }
    }

    /// One-line description of the parameters, for `--help` style listings.
    pub fn describe(&self) -> &'static str {
        match self {
            FamilyId::BAlpha => "(t, t/2, 0), t = c1 in [0, pi/2]; identity to B",
            FamilyId::SpeToB => "(t, pi/4, pi/2 - t), t in [pi/4, pi/2]; sqrt(SWAP) to B",
            FamilyId::PlaneThetaLine => {
                "(pi/2 + s - t, t, t - s), t = c2 in [s, pi/4] for secondary s in [0, pi/4]"
            }
            FamilyId::C2QuarterLine => "(t, pi/4, s), t = c1 in [pi/2 - s, pi/2] for secondary height s in [0, pi/4]",
            FamilyId::FsimDiag => "fSim-plane lines indexed by variant 0..3, t = c1 in [pi/4, pi/2]",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family `{s}`")))
    }
}

/// A family with its parameter range. `secondary` is the line label for
/// the plane families (θ for `plane_theta_line`, the height `c3` for
/// `c2_quarter_line`); `variant` picks one of the fSim lines; `mirrored`
/// selects the mirrored-inverse (or, for `spe_to_b`, inverse) partner line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub id: FamilyId,
    pub lo: f64,
    pub hi: f64,
    pub secondary: Option<f64>,
    pub variant: usize,
    pub mirrored: bool,
}

fn check_range(name: &str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if value.is_finite() && value >= lo - 1e-12 && value <= hi + 1e-12 {
        Ok(())
    } else {
        let _ = name;
        Err(Error::OutOfRange { value, lo, hi })
    }
}

impl FamilySpec {
    pub fn b_alpha() -> Self {
        Self { id: FamilyId::BAlpha, lo: 0.0, hi: FRAC_PI_2, secondary: None, variant: 0, mirrored: false }
    }

    pub fn spe_to_b(mirrored: bool) -> Self {
        Self { id: FamilyId::SpeToB, lo: FRAC_PI_4, hi: FRAC_PI_2, secondary: None, variant: 0, mirrored }
    }

    pub fn plane_theta_line(theta: f64, mirrored: bool) -> Result<Self> {
        check_range("theta", theta, 0.0, FRAC_PI_4)?;
        Ok(Self {
            id: FamilyId::PlaneThetaLine,
            lo: theta,
            hi: FRAC_PI_4,
            secondary: Some(theta),
            variant: 0,
            mirrored,
        })
    }

    pub fn c2_quarter_line(height: f64, mirrored: bool) -> Result<Self> {
        check_range("height", height, 0.0, FRAC_PI_4)?;
        Ok(Self {
            id: FamilyId::C2QuarterLine,
            lo: FRAC_PI_2 - height,
            hi: FRAC_PI_2,
            secondary: Some(height),
            variant: 0,
            mirrored,
        })
    }

    /// Variants: 0 `(t, π/2−t, π/2−t)`, 1 `(t, t, π/2−t)`, 2 `(t, π/4, π/4)`,
    /// 3 `(π/4, π/4, π/2−t)`, all for `t ∈ [π/4, π/2]`.
    pub fn fsim_diag(variant: usize) -> Result<Self> {
        if variant > 3 {
            return Err(Error::OutOfRange { value: variant as f64, lo: 0.0, hi: 3.0 });
        }
        Ok(Self { id: FamilyId::FsimDiag, lo: FRAC_PI_4, hi: FRAC_PI_2, secondary: None, variant, mirrored: false })
    }

    /// Registry lookup; plane families default their secondary to 0.
    pub fn from_id(id: FamilyId, secondary: Option<f64>, variant: usize, mirrored: bool) -> Result<Self> {
        match id {
            FamilyId::BAlpha => Ok(Self::b_alpha()),
            FamilyId::SpeToB => Ok(Self::spe_to_b(mirrored)),
            FamilyId::PlaneThetaLine => Self::plane_theta_line(secondary.unwrap_or(0.0), mirrored),
            FamilyId::C2QuarterLine => Self::c2_quarter_line(secondary.unwrap_or(FRAC_PI_4), mirrored),
            FamilyId::FsimDiag => Self::fsim_diag(variant),
        }
    }

    /// `n` equally spaced parameters from `lo` to `hi`.
    pub fn grid(&self, n: usize) -> Vec<f64> {
        match n {
            0 => vec![],
            1 => vec![self.lo],
            _ => (0..n)
                .map(|i| {
                    if i == n - 1 {
                        self.hi
                    } else {
                        self.lo + (self.hi - self.lo) * i as f64 / (n - 1) as f64
                    }
                })
                .collect(),
        }
    }
}

/// B^α index for a `b_alpha` parameter: `α = 2c1/π`.
pub fn b_alpha_index(t: f64) -> f64 {
    2.0 * t / PI
}

/// Chamber point of `spec` at parameter `t`.
pub fn family_coord(spec: &FamilySpec, t: f64) -> Result<CartanCoord> {
    check_range("t", t, spec.lo, spec.hi)?;
    let t = t.clamp(spec.lo, spec.hi);
    let s = spec.secondary.unwrap_or(0.0);
    let raw = match spec.id {
        FamilyId::BAlpha => CartanCoord::new(t, t / 2.0, 0.0),
        FamilyId::SpeToB => {
            let c1 = if spec.mirrored { PI - t } else { t };
            CartanCoord::new(c1, FRAC_PI_4, FRAC_PI_2 - t)
        }
        FamilyId::PlaneThetaLine => {
            let c2 = if spec.mirrored { FRAC_PI_2 - t } else { t };
            CartanCoord::new(FRAC_PI_2 + s - t, c2, t - s)
        }
        FamilyId::C2QuarterLine => {
            let p = CartanCoord::new(t, FRAC_PI_4, s);
            if spec.mirrored {
                mirrored_inverse_map(&p)
            } else {
                p
            }
        }
        FamilyId::FsimDiag => match spec.variant {
            0 => CartanCoord::new(t, FRAC_PI_2 - t, FRAC_PI_2 - t),
            1 => CartanCoord::new(t, t, FRAC_PI_2 - t),
            2 => CartanCoord::new(t, FRAC_PI_4, FRAC_PI_4),
            _ => CartanCoord::new(FRAC_PI_4, FRAC_PI_4, FRAC_PI_2 - t),
        },
    };
    Ok(if raw.in_chamber(1e-12) { raw } else { canonicalize(raw) })
}

/// `exp(i·gt·(2 XX + YY))`, whose class is `(4gt, 2gt, 0)` canonicalized.
pub fn hamiltonian_family_gate(gt: f64) -> Result<Unitary4> {
    if !(gt >= 0.0) || !gt.is_finite() {
        return Err(Error::OutOfRange { value: gt, lo: 0.0, hi: f64::INFINITY });
    }
    let xx = kron(&pauli_x(), &pauli_x());
    let yy = kron(&pauli_y(), &pauli_y());
    let id = Mat4::identity();
    // XX and YY commute and square to one
    let ex = |p: &Mat4, a: f64| id * Complex64::new(a.cos(), 0.0) + p * Complex64::new(0.0, a.sin());
    Ok(Unitary4::from_closed_form(ex(&xx, 2.0 * gt) * ex(&yy, gt)))
}

/// A calibrated two-CX realization of a B^α class.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BAlphaCircuit {
    pub theta: f64,
    /// The calibrated target-qubit `Rz` angle.
    pub beta: f64,
    pub unitary: Mat4,
    pub coord: CartanCoord,
}

fn b_alpha_template(theta: f64, beta: f64) -> Mat4 {
    let cx = gates::cnot();
    cx * kron(&rx(-theta), &rz(beta)) * cx
}

/// `CX · (Rx(−θ) ⊗ Rz(β)) · CX` with `β` found by golden-section search so
/// that the class is `(c1, c1/2, 0)`; `θ = π/2` lands on B.
pub fn b_alpha_circuit(theta: f64) -> Result<BAlphaCircuit> {
    check_range("theta", theta, 0.0, FRAC_PI_2)?;
    let coord_of = |beta: f64| -> Result<CartanCoord> {
        let c = cartan_coordinates(&b_alpha_template(theta, beta))?;
        // on the c3 = 0 face pick the twin with c1 ≤ π/2
        Ok(if c.c3 <= COORD_TOL && c.c1 > FRAC_PI_2 { c.twin() } else { c })
    };
    let mismatch = |beta: f64| -> Result<f64> {
        let c = coord_of(beta)?;
        Ok((c.c2 - c.c1 / 2.0).abs() + c.c3)
    };
    // mismatch is unimodal in β on [−θ, 0]
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (-theta, 0.0);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (mismatch(x1)?, mismatch(x2)?);
    for _ in 0..200 {
        if (b - a).abs() < 1e-15 {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = mismatch(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = mismatch(x2)?;
        }
    }
    let beta = if f1 <= f2 { x1 } else { x2 };
    let unitary = b_alpha_template(theta, beta);
    let coord = coord_of(beta)?;
    let miss = (coord.c2 - coord.c1 / 2.0).abs() + coord.c3;
    if miss > COORD_TOL {
        return Err(Error::CalibrationFailure(miss));
    }
    Ok(BAlphaCircuit { theta, beta, unitary, coord })
}
