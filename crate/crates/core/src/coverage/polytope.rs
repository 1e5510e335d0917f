//! Exact vertex enumeration, dimension and volume of polytopes in `x = c/π`.
//!
//! Systems here have a few dozen rows after merging, so every triple of rows
//! is intersected by Cramer's rule in checked `i128` arithmetic and filtered
//! for feasibility. Volumes use a pulling triangulation over the facets.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::halfspace::{dot, HalfspaceSystem, Row};
use crate::cartan::CartanCoord;
use crate::error::{Error, Result};
use crate::exact::{rat, ExactCoord, Rat};

/// Solved polytope: its inequalities, exact vertices and dimension
/// (`None` when empty).
#[derive(Debug, Clone)]
pub struct ConvexRegion {
    pub halfspaces: HalfspaceSystem,
    pub vertices: Vec<ExactCoord>,
    pub dim: Option<usize>,
    rows: Vec<Row>,
    offsets: Vec<f64>,
    tight: Vec<Vec<usize>>,
}

fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::NumericOverflow)
}

fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::NumericOverflow)
}

fn det3(m: &[[i128; 3]; 3]) -> Result<i128> {
    let minor = |a: usize, b: usize, c: usize, d: usize| -> Result<i128> {
        add(mul(m[1][a], m[2][b])?, -mul(m[1][c], m[2][d])?)
    };
    let t0 = mul(m[0][0], minor(1, 2, 2, 1)?)?;
    let t1 = mul(m[0][1], minor(0, 2, 2, 0)?)?;
    let t2 = mul(m[0][2], minor(0, 1, 1, 0)?)?;
    add(add(t0, -t1)?, t2)
}

fn dot_i(n: &[i128; 3], v: &[i128; 3]) -> Result<i128> {
    add(add(mul(n[0], v[0])?, mul(n[1], v[1])?)?, mul(n[2], v[2])?)
}

fn cross_i(a: &[i128; 3], b: &[i128; 3]) -> [i128; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub(crate) fn sub3(a: &[Rat; 3], b: &[Rat; 3]) -> [Rat; 3] {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

pub(crate) fn cross3(a: &[Rat; 3], b: &[Rat; 3]) -> [Rat; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn triple(a: &[Rat; 3], b: &[Rat; 3], c: &[Rat; 3]) -> Rat {
    dot(a, &cross3(b, c))
}

fn is_zero3(v: &[Rat; 3]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Differences `p_i − p_0` that raise the rank, in order.
fn spanning_differences(points: &[[Rat; 3]]) -> Vec<[Rat; 3]> {
    let mut basis: Vec<[Rat; 3]> = Vec::new();
    let Some(p0) = points.first() else { return basis };
    for p in &points[1..] {
        let d = sub3(p, p0);
        let independent = match basis.len() {
            0 => !is_zero3(&d),
            1 => !is_zero3(&cross3(&basis[0], &d)),
            2 => !triple(&basis[0], &basis[1], &d).is_zero(),
            _ => false,
        };
        if independent {
            basis.push(d);
            if basis.len() == 3 {
                break;
            }
        }
    }
    basis
}

/// Dimension of the affine hull, `None` for no points.
pub fn affine_dim(points: &[[Rat; 3]]) -> Option<usize> {
    if points.is_empty() {
        None
    } else {
        Some(spanning_differences(points).len())
    }
}

/// `normal · x = offset` with a primitive integer normal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullEquation {
    pub normal: [BigInt; 3],
    pub offset: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineHull {
    pub dim: usize,
    pub equations: Vec<HullEquation>,
}

fn primitive(v: &[Rat; 3]) -> [BigInt; 3] {
    let l = v.iter().fold(BigInt::from(1), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let mut out: [BigInt; 3] = std::array::from_fn(|i| &ints[i] / &g);
    if out.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        out = out.map(|x| -x);
    }
    out
}

/// Equations cutting out the affine hull of `points`.
pub fn affine_hull(points: &[[Rat; 3]]) -> Option<AffineHull> {
    let p0 = points.first()?;
    let basis = spanning_differences(points);
    let unit = |i: usize| -> [Rat; 3] { std::array::from_fn(|j| rat((i == j) as i64, 1)) };
    let normals: Vec<[Rat; 3]> = match basis.len() {
        3 => vec![],
        2 => vec![cross3(&basis[0], &basis[1])],
        1 => {
            let mut picked: Vec<[Rat; 3]> = Vec::new();
            for i in 0..3 {
                let n = cross3(&basis[0], &unit(i));
                if is_zero3(&n) {
                    continue;
                }
                if picked.is_empty() || !is_zero3(&cross3(&picked[0], &n)) {
                    picked.push(n);
                }
                if picked.len() == 2 {
                    break;
                }
            }
            picked
        }
        _ => (0..3).map(unit).collect(),
    };
    let equations = normals
        .iter()
        .map(|n| {
            let normal = primitive(n);
            let nr: [Rat; 3] = std::array::from_fn(|i| Rat::from_integer(normal[i].clone()));
            HullEquation { offset: dot(&nr, p0), normal }
        })
        .collect();
    Some(AffineHull { dim: basis.len(), equations })
}

impl ConvexRegion {
    fn empty(halfspaces: HalfspaceSystem) -> Self {
        Self {
            halfspaces,
            vertices: Vec::new(),
            dim: None,
            rows: Vec::new(),
            offsets: Vec::new(),
            tight: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.dim.is_none()
    }

    pub fn points(&self) -> Vec<[Rat; 3]> {
        self.vertices.iter().map(|v| v.x.clone()).collect()
    }

    pub fn affine_hull(&self) -> Option<AffineHull> {
        affine_hull(&self.points())
    }

    /// Number of distinct inequalities after merging parallel rows.
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// Exact membership of a point given in units of π.
    pub fn contains_exact(&self, x: &ExactCoord) -> bool {
        !self.is_empty() && self.halfspaces.holds(&x.x)
    }

    /// Membership with every inequality relaxed outward by `tol` (radians).
    pub fn contains(&self, c: &CartanCoord, tol: f64) -> bool {
        if self.is_empty() {
            return false;
        }
        let x = c.over_pi();
        let slack = tol / std::f64::consts::PI;
        self.rows.iter().zip(&self.offsets).all(|(r, o)| {
            let n = r.n.map(|v| v as f64);
            let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
            (n[0] * x[0] + n[1] * x[1] + n[2] * x[2] - o) / norm <= slack
        })
    }

    /// Exact volume in units of π³; zero below full dimension.
    pub fn volume(&self) -> Rat {
        if self.dim != Some(3) {
            return Rat::zero();
        }
        let pts = self.points();
        let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
        for r in 0..self.rows.len() {
            let on: Vec<usize> = (0..pts.len()).filter(|&v| self.tight[v].contains(&r)).collect();
            if on.len() >= 3 {
                let sub: Vec<[Rat; 3]> = on.iter().map(|&v| pts[v].clone()).collect();
                if affine_dim(&sub) == Some(2) {
                    facets.insert(on);
                }
            }
        }
        let is_edge = |a: usize, b: usize| -> bool {
            let common: Vec<&[i128; 3]> = self.tight[a]
                .iter()
                .filter(|r| self.tight[b].contains(r))
                .map(|&r| &self.rows[r].n)
                .collect();
            common
                .iter()
                .enumerate()
                .any(|(i, n)| common[i + 1..].iter().any(|m| cross_i(n, m) != [0, 0, 0]))
        };
        let v0 = &pts[0];
        let mut six = Rat::zero();
        for f in facets.iter().filter(|f| !f.contains(&0)) {
            let w0 = f[0];
            let dw = sub3(&pts[w0], v0);
            for (i, &a) in f.iter().enumerate().skip(1) {
                for &b in &f[i + 1..] {
                    if is_edge(a, b) {
                        six += triple(&dw, &sub3(&pts[a], v0), &sub3(&pts[b], v0)).abs();
                    }
                }
            }
        }
        six / rat(6, 1)
    }

    pub fn intersect(&self, other: &ConvexRegion) -> Result<ConvexRegion> {
        solve_region(&self.halfspaces.concat(&other.halfspaces))
    }
}

/// Exact vertex enumeration of `hs`.
pub fn solve_region(hs: &HalfspaceSystem) -> Result<ConvexRegion> {
    let Some(sys) = hs.integer_rows()? else {
        return Ok(ConvexRegion::empty(hs.clone()));
    };
    let rows = &sys.rows;
    let m = rows.len();
    let mut seen: HashSet<[i128; 4]> = HashSet::new();
    let mut found: Vec<([i128; 3], i128)> = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            for k in (j + 1)..m {
                let a = [rows[i].n, rows[j].n, rows[k].n];
                let det = det3(&a)?;
                if det == 0 {
                    continue;
                }
                let o = [rows[i].o, rows[j].o, rows[k].o];
                let mut num = [0i128; 3];
                for (c, slot) in num.iter_mut().enumerate() {
                    let mut mm = a;
                    for r in 0..3 {
                        mm[r][c] = o[r];
                    }
                    *slot = det3(&mm)?;
                }
                let sign = det.signum();
                let g = num.iter().fold(det.abs(), |g, v| g.gcd(v));
                let num = num.map(|v| sign * v / g);
                let den = det.abs() / g;
                if !seen.insert([num[0], num[1], num[2], den]) {
                    continue;
                }
                let mut feasible = true;
                for r in rows {
                    if dot_i(&r.n, &num)? > mul(r.o, den)? {
                        feasible = false;
                        break;
                    }
                }
                if feasible {
                    found.push((num, den));
                }
            }
        }
    }
    let mut verts: Vec<([Rat; 3], Vec<usize>)> = Vec::with_capacity(found.len());
    for (num, den) in found {
        let mut tight = Vec::new();
        for (idx, r) in rows.iter().enumerate() {
            if dot_i(&r.n, &num)? == mul(r.o, den)? {
                tight.push(idx);
            }
        }
        let d = mul(den, sys.scale)?;
        verts.push((num.map(|v| rat_i(v, d)), tight));
    }
    verts.sort_by(|a, b| a.0.cmp(&b.0));
    let points: Vec<[Rat; 3]> = verts.iter().map(|v| v.0.clone()).collect();
    let dim = affine_dim(&points);
    let offsets = rows.iter().map(|r| r.o as f64 / sys.scale as f64).collect();
    let (vertices, tight) = verts
        .into_iter()
        .map(|(x, t)| (ExactCoord { x }, t))
        .unzip();
    Ok(ConvexRegion {
        halfspaces: hs.clone(),
        vertices,
        dim,
        rows: sys.rows,
        offsets,
        tight,
    })
}

fn rat_i(n: i128, d: i128) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::super::halfspace::Halfspace;
    use super::*;
    use num_traits::One;

    fn chamber() -> ConvexRegion {
        solve_region(&HalfspaceSystem::chamber()).unwrap()
    }

    fn brute_vertices(hs: &HalfspaceSystem) -> BTreeSet<[Rat; 3]> {
        // independent oracle: rational Gaussian elimination on every triple
        let mut out = BTreeSet::new();
        let h = &hs.halfspaces;
        for i in 0..h.len() {
            for j in (i + 1)..h.len() {
                for k in (j + 1)..h.len() {
                    let mut a: Vec<Vec<Rat>> = [i, j, k]
                        .iter()
                        .map(|&r| {
                            let mut row = h[r].normal.to_vec();
                            row.push(h[r].offset.clone());
                            row
                        })
                        .collect();
                    let mut ok = true;
                    for col in 0..3 {
                        let Some(p) = (col..3).find(|&r| !a[r][col].is_zero()) else {
                            ok = false;
                            break;
                        };
                        a.swap(col, p);
                        let pivot = a[col][col].clone();
                        for v in a[col].iter_mut() {
                            *v /= &pivot;
                        }
                        for r in 0..3 {
                            if r != col {
                                let f = a[r][col].clone();
                                for c in 0..4 {
                                    let t = &a[col][c] * &f;
                                    a[r][c] -= t;
                                }
                            }
                        }
                    }
                    if ok {
                        let x = [a[0][3].clone(), a[1][3].clone(), a[2][3].clone()];
                        if hs.holds(&x) {
                            out.insert(x);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn chamber_is_the_expected_tetrahedron() {
        let c = chamber();
        assert_eq!(c.dim, Some(3));
        let expect: BTreeSet<[Rat; 3]> = [[(0, 1), (0, 1), (0, 1)], [(1, 1), (0, 1), (0, 1)], [(1, 2), (1, 2), (0, 1)], [(1, 2), (1, 2), (1, 2)]]
            .into_iter()
            .map(|v| ExactCoord::from_ratios(v).x)
            .collect();
        let got: BTreeSet<[Rat; 3]> = c.points().into_iter().collect();
        assert_eq!(got, expect);
        assert_eq!(c.volume(), rat(1, 24));
    }

    #[test]
    fn infeasible_system_is_empty() {
        let hs = HalfspaceSystem::new(vec![
            Halfspace::new([1, 0, 0], Rat::zero(), "c1 ≤ 0"),
            Halfspace::new([-1, 0, 0], rat(-1, 1), "c1 ≥ π"),
            Halfspace::new([0, 1, 0], rat(1, 1), "y"),
            Halfspace::new([0, 0, 1], rat(1, 1), "z"),
        ]);
        let r = solve_region(&hs).unwrap();
        assert!(r.is_empty());
        assert_eq!(r.volume(), Rat::zero());
        assert!(!r.contains(&CartanCoord::IDENTITY, 1.0));
    }

    #[test]
    fn unit_cube_volume_and_degenerate_slices() {
        let mut rows = Vec::new();
        for i in 0..3 {
            let mut n = [0i64; 3];
            n[i] = 1;
            rows.push(Halfspace::new(n, Rat::one(), "hi"));
            n[i] = -1;
            rows.push(Halfspace::new(n, Rat::zero(), "lo"));
        }
        let cube = HalfspaceSystem::new(rows);
        let r = solve_region(&cube).unwrap();
        assert_eq!(r.vertices.len(), 8);
        assert_eq!(r.volume(), Rat::one());
        // squash to the z = 0 face
        let flat = cube.concat(&HalfspaceSystem::new(vec![Halfspace::new([0, 0, 1], Rat::zero(), "flat")]));
        let r = solve_region(&flat).unwrap();
        assert_eq!(r.dim, Some(2));
        assert_eq!(r.volume(), Rat::zero());
        let hull = r.affine_hull().unwrap();
        assert_eq!(hull.equations.len(), 1);
        assert_eq!(hull.equations[0].normal, [0, 0, 1].map(BigInt::from));
        assert_eq!(hull.equations[0].offset, Rat::zero());
    }

    #[test]
    fn cut_chamber_matches_brute_force_and_splits_volume() {
        // slice by c1 ≤ π/2 and its complement: the two halves are mirror images
        let half = HalfspaceSystem::new(vec![Halfspace::new([1, 0, 0], rat(1, 2), "cut")]);
        let other = HalfspaceSystem::new(vec![Halfspace::new([-1, 0, 0], rat(-1, 2), "cut")]);
        let base = HalfspaceSystem::chamber();
        let a = solve_region(&base.concat(&half)).unwrap();
        let b = solve_region(&base.concat(&other)).unwrap();
        assert_eq!(a.points().into_iter().collect::<BTreeSet<_>>(), brute_vertices(&base.concat(&half)));
        assert_eq!(a.volume(), rat(1, 48));
        assert_eq!(b.volume(), rat(1, 48));
        let both = a.intersect(&b).unwrap();
        assert_eq!(both.dim, Some(2));
    }

    #[test]
    fn random_cuts_agree_with_oracle() {
        use crate::numerics::seeded_rng;
        use rand::Rng;
        let mut rng = seeded_rng(3);
        for _ in 0..40 {
            let mut rows = HalfspaceSystem::chamber().halfspaces;
            for _ in 0..3 {
                let n = [rng.random_range(-3..=3), rng.random_range(-3..=3), rng.random_range(-3..=3)];
                rows.push(Halfspace::new(n, rat(rng.random_range(-2..=6), 7), "cut"));
            }
            let hs = HalfspaceSystem::new(rows);
            let r = solve_region(&hs).unwrap();
            assert_eq!(r.points().into_iter().collect::<BTreeSet<_>>(), brute_vertices(&hs));
            // volume bounded by the chamber's
            assert!(r.volume() <= rat(1, 24));
        }
    }

    #[test]
    fn float_membership_honours_slack() {
        let c = chamber();
        assert!(c.contains(&CartanCoord::B, 0.0));
        let outside = CartanCoord::new(1.0, 0.5, -1e-9);
        assert!(!c.contains(&outside, 0.0));
        assert!(c.contains(&outside, 1e-8));
        assert!(c.contains_exact(&ExactCoord::from_ratios([(1, 2), (1, 4), (0, 1)])));
    }

    #[test]
    fn overflow_is_reported() {
        let huge = Rat::new(BigInt::from(1), BigInt::from(1u128 << 100));
        let hs = HalfspaceSystem::new(vec![Halfspace::new([1, 0, 0], huge, "tiny")]);
        assert!(matches!(solve_region(&hs), Err(Error::NumericOverflow)));
    }
}
