//! Classes reachable as `L1·U1·L2·U2·L3`: the union over the four sign lifts
//! of the inequality polytopes, with exact volumes.

mod export;
mod halfspace;
mod polytope;

pub use export::{region_json, write_sweep_csv, SweepRow};
pub use halfspace::{build_halfspaces, ExactContent, Halfspace, HalfspaceSystem};
pub use polytope::{affine_dim, affine_hull, solve_region, AffineHull, ConvexRegion, HullEquation};

use std::sync::OnceLock;

use rand::Rng;
use rand_distr::Exp1;
use rayon::prelude::*;
use serde::Serialize;

use crate::cartan::CartanCoord;
use crate::error::{Error, Result};
use crate::exact::{rat, rat_to_f64, ExactCoord, Rat};
use crate::qlr::{enumerate_inequality_tuples, QlrTuple};

fn tuples() -> &'static [QlrTuple] {
    static TUPLES: OnceLock<Vec<QlrTuple>> = OnceLock::new();
    TUPLES.get_or_init(enumerate_inequality_tuples)
}

/// Which determinant-one lift of each gate is used (`true` = the `−U` lift).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SignPair {
    pub neg_u1: bool,
    pub neg_u2: bool,
}

impl SignPair {
    pub const ALL: [SignPair; 4] = [
        SignPair { neg_u1: false, neg_u2: false },
        SignPair { neg_u1: false, neg_u2: true },
        SignPair { neg_u1: true, neg_u2: false },
        SignPair { neg_u1: true, neg_u2: true },
    ];

    pub fn label(&self) -> &'static str {
        match (self.neg_u1, self.neg_u2) {
            (false, false) => "++",
            (false, true) => "+-",
            (true, false) => "-+",
            (true, true) => "--",
        }
    }
}

#[derive(Debug)]
pub struct CoverageRegion {
    pub sources: [ExactCoord; 2],
    pub regions: Vec<(SignPair, ConvexRegion)>,
    volume: OnceLock<std::result::Result<Rat, String>>,
}

/// Region reachable from two chamber points given in units of π.
pub fn coverage_region_exact(u1: &ExactCoord, u2: &ExactCoord) -> Result<CoverageRegion> {
    let b = ExactContent::from_coord(u1)?;
    let e = ExactContent::from_coord(u2)?;
    let (bn, en) = (b.negate()?, e.negate()?);
    let regions = SignPair::ALL
        .par_iter()
        .map(|sp| {
            let bb = if sp.neg_u1 { &bn } else { &b };
            let ee = if sp.neg_u2 { &en } else { &e };
            let hs = build_halfspaces(bb, ee, tuples())?;
            Ok((*sp, solve_region(&hs)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CoverageRegion {
        sources: [u1.clone(), u2.clone()],
        regions,
        volume: OnceLock::new(),
    })
}

/// Region reachable from two chamber points; float coordinates are
/// rationalized first.
pub fn coverage_region(c_u1: &CartanCoord, c_u2: &CartanCoord) -> Result<CoverageRegion> {
    for c in [c_u1, c_u2] {
        if !c.in_chamber(1e-12) {
            return Err(Error::NotInChamber(c.c1, c.c2, c.c3));
        }
    }
    coverage_region_exact(&ExactCoord::from_coord(c_u1), &ExactCoord::from_coord(c_u2))
}

/// Monte Carlo estimate of the covered fraction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub fraction: f64,
    pub stderr: f64,
    pub hits: usize,
    pub samples: usize,
}

const CHAMBER_VERTICES: [[f64; 3]; 4] = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.5, 0.5, 0.0], [0.5, 0.5, 0.5]];

/// Uniform point of the chamber tetrahedron.
pub fn sample_chamber<R: Rng + ?Sized>(rng: &mut R) -> CartanCoord {
    let w: [f64; 4] = std::array::from_fn(|_| rng.sample::<f64, _>(Exp1));
    let total: f64 = w.iter().sum();
    let mut x = [0.0; 3];
    for (wi, v) in w.iter().zip(CHAMBER_VERTICES) {
        for k in 0..3 {
            x[k] += wi / total * v[k];
        }
    }
    let pi = std::f64::consts::PI;
    CartanCoord::new(x[0] * pi, x[1] * pi, x[2] * pi)
}

impl CoverageRegion {
    fn twin_exact(x: &ExactCoord) -> Option<ExactCoord> {
        use num_traits::{One, Zero};
        if x.x[2].is_zero() {
            Some(ExactCoord::new(Rat::one() - &x.x[0], x.x[1].clone(), Rat::zero()))
        } else {
            None
        }
    }

    /// Exact membership of `x` (or its `c3 = 0` twin) in any of the four regions.
    pub fn contains_exact(&self, x: &ExactCoord) -> bool {
        let twin = Self::twin_exact(x);
        self.regions.iter().any(|(_, r)| {
            r.contains_exact(x) || twin.as_ref().is_some_and(|t| r.contains_exact(t))
        })
    }

    /// Membership with outward slack `tol` (radians); the twin is tried when
    /// `c3` is within `tol` of zero.
    pub fn contains(&self, c: &CartanCoord, tol: f64) -> bool {
        let twin = (c.c3.abs() <= tol).then(|| c.twin());
        self.regions
            .iter()
            .any(|(_, r)| r.contains(c, tol) || twin.as_ref().is_some_and(|t| r.contains(t, tol)))
    }

    pub fn region(&self, sp: SignPair) -> &ConvexRegion {
        &self.regions.iter().find(|(s, _)| *s == sp).expect("all four sign pairs").1
    }

    /// Vertices describing the union as a set of classes. Regions lying in
    /// the `c3 = 0` face are split at `c1 = π/2` and their far half is
    /// replaced by its twin, so each class is counted once.
    pub fn union_points(&self) -> Result<Vec<[Rat; 3]>> {
        use num_traits::Zero;
        let mut pts: Vec<[Rat; 3]> = Vec::new();
        for (_, r) in &self.regions {
            if r.is_empty() {
                continue;
            }
            if !r.vertices.iter().all(|v| v.x[2].is_zero()) {
                pts.extend(r.points());
                continue;
            }
            let near = HalfspaceSystem::new(vec![Halfspace::new([1, 0, 0], rat(1, 2), "fold")]);
            let far = HalfspaceSystem::new(vec![Halfspace::new([-1, 0, 0], rat(-1, 2), "fold")]);
            pts.extend(solve_region(&r.halfspaces.concat(&near))?.points());
            for v in solve_region(&r.halfspaces.concat(&far))?.vertices {
                pts.push(Self::twin_exact(&v).expect("face vertex").x);
            }
        }
        pts.sort();
        pts.dedup();
        Ok(pts)
    }

    /// Dimension of the reachable set, `None` when nothing is reachable.
    pub fn union_dim(&self) -> Option<usize> {
        self.regions.iter().filter_map(|(_, r)| r.dim).max()
    }

    pub fn union_affine_hull(&self) -> Result<Option<AffineHull>> {
        Ok(affine_hull(&self.union_points()?))
    }

    /// Exact volume of the union in units of π³, by inclusion–exclusion.
    pub fn union_volume(&self) -> Result<Rat> {
        let cached = self.volume.get_or_init(|| {
            let full: Vec<&ConvexRegion> = self.regions.iter().map(|(_, r)| r).filter(|r| r.dim == Some(3)).collect();
            let n = full.len();
            let terms: Vec<Result<Rat>> = (1u32..(1 << n))
                .into_par_iter()
                .map(|mask| {
                    let members: Vec<&ConvexRegion> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| full[i]).collect();
                    let mut sys = members[0].halfspaces.clone();
                    for m in &members[1..] {
                        sys = sys.concat(&m.halfspaces);
                    }
                    let vol = if members.len() == 1 { members[0].volume() } else { solve_region(&sys)?.volume() };
                    Ok(if members.len() % 2 == 1 { vol } else { -vol })
                })
                .collect();
            let mut total = Rat::from_integer(0.into());
            for t in terms {
                total += t.map_err(|e| e.to_string())?;
            }
            Ok(total)
        });
        cached.clone().map_err(Error::ConvergenceFailure)
    }

    /// Exact covered fraction of the chamber.
    pub fn fractional_volume_exact(&self) -> Result<Rat> {
        Ok(self.union_volume()? * rat(24, 1))
    }

    pub fn fractional_volume(&self) -> Result<f64> {
        Ok(rat_to_f64(&self.fractional_volume_exact()?))
    }

    /// Fraction of `samples` uniform chamber points that land in the region.
    pub fn mc_volume<R: Rng + ?Sized>(&self, samples: usize, rng: &mut R, tol: f64) -> Result<McEstimate> {
        if samples < 1000 {
            return Err(Error::OutOfRange { value: samples as f64, lo: 1000.0, hi: f64::INFINITY });
        }
        let mut hits = 0usize;
        for _ in 0..samples {
            if self.contains(&sample_chamber(rng), tol) {
                hits += 1;
            }
        }
        let p = hits as f64 / samples as f64;
        Ok(McEstimate {
            fraction: p,
            stderr: (p * (1.0 - p) / samples as f64).sqrt(),
            hits,
            samples,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{canonical_gate, cartan_coordinates};
    use crate::numerics::{haar_su2_pair, seeded_rng};
    use num_traits::{One, Zero};

    fn ex(v: [(i64, i64); 3]) -> ExactCoord {
        ExactCoord::from_ratios(v)
    }

    #[test]
    fn identity_reaches_only_identity() {
        let z = ex([(0, 1), (0, 1), (0, 1)]);
        let r = coverage_region_exact(&z, &z).unwrap();
        assert_eq!(r.union_dim(), Some(0));
        assert_eq!(r.union_points().unwrap(), vec![z.x.clone()]);
        assert!(r.fractional_volume_exact().unwrap().is_zero());
    }

    #[test]
    fn b_covers_everything() {
        let b = ex([(1, 2), (1, 4), (0, 1)]);
        let r = coverage_region_exact(&b, &b).unwrap();
        assert_eq!(r.fractional_volume_exact().unwrap(), Rat::one());
        let mut rng = seeded_rng(1);
        for _ in 0..200 {
            assert!(r.contains(&sample_chamber(&mut rng), 1e-12));
        }
    }

    #[test]
    fn sqrt_swap_reaches_the_swap_cnot_segment() {
        let s = ex([(1, 4), (1, 4), (1, 4)]);
        let r = coverage_region_exact(&s, &s).unwrap();
        assert_eq!(r.union_dim(), Some(1));
        assert!(r.fractional_volume_exact().unwrap().is_zero());
        let pts = r.union_points().unwrap();
        let ends = [ex([(1, 2), (0, 1), (0, 1)]).x, ex([(1, 2), (1, 2), (1, 2)]).x];
        assert!(ends.iter().all(|e| pts.contains(e)));
        assert!(pts.iter().all(|p| p[0] == rat(1, 2) && p[1] == p[2]));
    }

    #[test]
    fn cnot_reaches_the_floor() {
        let c = ex([(1, 2), (0, 1), (0, 1)]);
        let r = coverage_region_exact(&c, &c).unwrap();
        assert_eq!(r.union_dim(), Some(2));
        let hull = r.union_affine_hull().unwrap().unwrap();
        assert_eq!(hull.dim, 2);
        assert_eq!(hull.equations[0].normal, [0, 0, 1].map(num_bigint::BigInt::from));
        assert!(!r.contains_exact(&ex([(1, 2), (1, 2), (1, 2)])));
        assert!(r.contains_exact(&ex([(1, 2), (1, 4), (0, 1)])));
    }

    #[test]
    fn sampled_products_are_covered() {
        let mut rng = seeded_rng(9);
        for c in [CartanCoord::new(1.0, 0.6, 0.2), CartanCoord::SQRT_SWAP, CartanCoord::CNOT] {
            let u = canonical_gate(&c);
            let r = coverage_region(&c, &c).unwrap();
            for _ in 0..100 {
                let l = haar_su2_pair(&mut rng);
                let p = cartan_coordinates(&(u * l * u)).unwrap();
                assert!(r.contains(&p, 1e-7), "{c} -> {p}");
            }
        }
    }

    #[test]
    fn mc_matches_exact() {
        let c = ex([(1, 3), (1, 4), (1, 6)]);
        let r = coverage_region_exact(&c, &c).unwrap();
        let exact = r.fractional_volume().unwrap();
        let mc = r.mc_volume(20_000, &mut seeded_rng(4), 0.0).unwrap();
        assert!((mc.fraction - exact).abs() <= 4.0 * mc.stderr.max(1e-3), "{exact} vs {mc:?}");
        assert!(r.mc_volume(10, &mut seeded_rng(4), 0.0).is_err());
    }
}
