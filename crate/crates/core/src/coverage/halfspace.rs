//! Linear inequality systems in `x = c/π` space.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat, rat_string, ExactCoord, Rat};
use crate::qlr::QlrTuple;

/// `normal · x ≤ offset`, with `x` the coordinates in units of π.
#[derive(Debug, Clone, PartialEq)]
pub struct Halfspace {
    pub normal: [Rat; 3],
    pub offset: Rat,
    /// Where the row came from, for exports.
    pub origin: String,
}

impl Halfspace {
    pub fn new(normal: [i64; 3], offset: Rat, origin: impl Into<String>) -> Self {
        Self {
            normal: normal.map(|v| rat(v, 1)),
            offset,
            origin: origin.into(),
        }
    }

    pub fn holds(&self, x: &[Rat; 3]) -> bool {
        dot(&self.normal, x) <= self.offset
    }

    pub fn describe(&self) -> String {
        let n: Vec<String> = self.normal.iter().map(rat_string).collect();
        format!("[{}]·x ≤ {}", n.join(", "), rat_string(&self.offset))
    }
}

pub(crate) fn dot(a: &[Rat; 3], b: &[Rat; 3]) -> Rat {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct HalfspaceSystem {
    pub halfspaces: Vec<Halfspace>,
}

/// Integer row `n · x ≤ o / scale` with `n` primitive; `scale` is shared by
/// every row of an [`IntSystem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Row {
    pub n: [i128; 3],
    pub o: i128,
}

#[derive(Debug, Clone)]
pub(crate) struct IntSystem {
    pub rows: Vec<Row>,
    pub scale: i128,
}

impl HalfspaceSystem {
    pub fn new(halfspaces: Vec<Halfspace>) -> Self {
        Self { halfspaces }
    }

    /// The Weyl chamber `x1 ≥ x2 ≥ x3 ≥ 0`, `x1 + x2 ≤ 1`.
    pub fn chamber() -> Self {
        let z = Rat::zero;
        Self::new(vec![
            Halfspace::new([0, 0, -1], z(), "chamber: c3 ≥ 0"),
            Halfspace::new([0, -1, 1], z(), "chamber: c2 ≥ c3"),
            Halfspace::new([-1, 1, 0], z(), "chamber: c1 ≥ c2"),
            Halfspace::new([1, 1, 0], Rat::one(), "chamber: c1 + c2 ≤ π"),
        ])
    }

    pub fn len(&self) -> usize {
        self.halfspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.halfspaces.is_empty()
    }

    pub fn concat(&self, other: &HalfspaceSystem) -> HalfspaceSystem {
        let mut halfspaces = self.halfspaces.clone();
        halfspaces.extend(other.halfspaces.iter().cloned());
        HalfspaceSystem { halfspaces }
    }

    pub fn holds(&self, x: &[Rat; 3]) -> bool {
        self.halfspaces.iter().all(|h| h.holds(x))
    }

    /// Integer form with parallel duplicates merged (tightest offset wins).
    /// `None` when a zero-normal row is already infeasible.
    pub(crate) fn integer_rows(&self) -> Result<Option<IntSystem>> {
        let mut scaled = Vec::with_capacity(self.halfspaces.len());
        for h in &self.halfspaces {
            let lcm = h.normal.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
            let ints: Vec<BigInt> = h.normal.iter().map(|v| (v * Rat::from_integer(lcm.clone())).to_integer()).collect();
            let g = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
            if g.is_zero() {
                if h.offset < Rat::zero() {
                    return Ok(None);
                }
                continue;
            }
            let n = [to_i128(&(&ints[0] / &g))?, to_i128(&(&ints[1] / &g))?, to_i128(&(&ints[2] / &g))?];
            let offset = &h.offset * Rat::new(lcm, g);
            scaled.push((n, offset));
        }
        let l = scaled.iter().fold(BigInt::one(), |l, (_, o)| l.lcm(o.denom()));
        let lr = Rat::from_integer(l.clone());
        let mut best: BTreeMap<[i128; 3], i128> = BTreeMap::new();
        for (n, offset) in scaled {
            let o = to_i128(&(offset * &lr).to_integer())?;
            best.entry(n).and_modify(|v| *v = (*v).min(o)).or_insert(o);
        }
        Ok(Some(IntSystem {
            rows: best.into_iter().map(|(n, o)| Row { n, o }).collect(),
            scale: to_i128(&l)?,
        }))
    }
}

fn to_i128(v: &BigInt) -> Result<i128> {
    v.to_i128().filter(|x| x.unsigned_abs() < (1u128 << 60)).ok_or(Error::NumericOverflow)
}

/// Exact nonlocal content `a` of a chamber point, in units of 2π.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactContent {
    pub a: [Rat; 4],
}

/// Gradients of the content entries in `x`, scaled by 2.
pub(crate) const CONTENT_ROWS: [[i64; 3]; 4] = [[1, 1, -1], [1, -1, 1], [-1, 1, 1], [-1, -1, -1]];

impl ExactContent {
    pub fn new(a: [Rat; 4]) -> Result<Self> {
        let v = Self { a };
        v.validate()?;
        Ok(v)
    }

    pub fn validate(&self) -> Result<()> {
        let a = &self.a;
        if !(a[0] >= a[1] && a[1] >= a[2] && a[2] >= a[3]) {
            return Err(Error::InvalidContent(format!("entries not sorted: {}", self)));
        }
        if &a[0] - &a[3] > Rat::one() {
            return Err(Error::InvalidContent(format!("width exceeds 1: {}", self)));
        }
        if !(&a[0] + &a[1] + &a[2] + &a[3]).is_zero() {
            return Err(Error::InvalidContent(format!("entries do not sum to zero: {}", self)));
        }
        Ok(())
    }

    pub fn from_coord(x: &ExactCoord) -> Result<Self> {
        if !x.in_chamber() {
            return Err(Error::InvalidContent(format!("{x} is outside the chamber")));
        }
        let half = rat(1, 2);
        let a = CONTENT_ROWS.map(|row| {
            let mut s = Rat::zero();
            for (w, v) in row.iter().zip(&x.x) {
                s += rat(*w, 1) * v;
            }
            s * &half
        });
        Self::new(a)
    }

    /// Content of the other determinant-one lift, `[a3+½, a4+½, a1−½, a2−½]`.
    pub fn negate(&self) -> Result<Self> {
        let h = rat(1, 2);
        let a = &self.a;
        Self::new([&a[2] + &h, &a[3] + &h, &a[0] - &h, &a[1] - &h])
    }

    pub fn to_f64(&self) -> [f64; 4] {
        self.a.clone().map(|v| crate::exact::rat_to_f64(&v))
    }
}

impl std::fmt::Display for ExactContent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.a.iter().map(rat_string).collect();
        write!(f, "[{}]", s.join(", "))
    }
}

/// One row per tuple, `Σ f_{k+j−δ_j} ≥ Σ b_{k+j−α_j} + Σ e_{k+j−β_j} − d`,
/// rewritten in `x`, followed by the content-ordering and chamber rows.
pub fn build_halfspaces(b: &ExactContent, e: &ExactContent, tuples: &[QlrTuple]) -> Result<HalfspaceSystem> {
    b.validate()?;
    e.validate()?;
    let mut out = Vec::with_capacity(tuples.len() + 8);
    for t in tuples {
        let mut normal = [0i64; 3];
        for i in t.indices(&t.delta) {
            for (n, g) in normal.iter_mut().zip(CONTENT_ROWS[i - 1]) {
                *n -= g;
            }
        }
        let mut rhs = Rat::from_integer(BigInt::from(t.d));
        for i in t.indices(&t.alpha) {
            rhs -= &b.a[i - 1];
        }
        for i in t.indices(&t.beta) {
            rhs -= &e.a[i - 1];
        }
        out.push(Halfspace::new(normal, rhs * rat(2, 1), format!("qlr {}", t.line())));
    }
    let z = Rat::zero;
    out.push(Halfspace::new([0, -1, 1], z(), "content: f1 ≥ f2"));
    out.push(Halfspace::new([-1, 1, 0], z(), "content: f2 ≥ f3"));
    out.push(Halfspace::new([0, -1, -1], z(), "content: f3 ≥ f4"));
    out.push(Halfspace::new([1, 1, 0], Rat::one(), "content: f1 − f4 ≤ 1"));
    out.extend(HalfspaceSystem::chamber().halfspaces);
    Ok(HalfspaceSystem::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlr::{enumerate_inequality_tuples, Partition};

    #[test]
    fn content_matches_float_version() {
        let x = ExactCoord::from_ratios([(2, 7), (1, 4), (3, 14)]);
        let e = ExactContent::from_coord(&x).unwrap();
        let f = crate::cartan::nonlocal_content(&x.to_coord()).unwrap();
        for (a, b) in e.to_f64().iter().zip(f.a) {
            assert!((a - b).abs() < 1e-15);
        }
        let n = e.negate().unwrap();
        let fneg = crate::cartan::negate_content(&f).unwrap();
        for (a, b) in n.to_f64().iter().zip(fneg.a) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn invalid_content_is_rejected() {
        let bad = [rat(1, 4), rat(1, 2), rat(-1, 4), rat(-1, 2)];
        assert!(matches!(ExactContent::new(bad), Err(Error::InvalidContent(_))));
        let wide = [rat(3, 4), rat(0, 1), rat(0, 1), rat(-3, 4)];
        assert!(ExactContent::new(wide).is_err());
        assert!(ExactContent::from_coord(&ExactCoord::from_ratios([(1, 4), (1, 2), (0, 1)])).is_err());
    }

    #[test]
    fn trivial_tuple_bounds_last_entry() {
        let t = QlrTuple {
            r: 1,
            k: 3,
            alpha: Partition::empty(),
            beta: Partition::empty(),
            delta: Partition::empty(),
            d: 0,
        };
        let x = ExactCoord::from_ratios([(1, 2), (1, 4), (0, 1)]);
        let b = ExactContent::from_coord(&x).unwrap();
        let hs = build_halfspaces(&b, &b, &[t]).unwrap();
        // f4 ≥ b4 + e4 with f4 = −(x1+x2+x3)/2: normal (1,1,1), offset −2(b4 + e4)
        let h = &hs.halfspaces[0];
        assert_eq!(h.normal, [rat(1, 1), rat(1, 1), rat(1, 1)]);
        assert_eq!(h.offset, -(&b.a[3] + &b.a[3]) * rat(2, 1));
    }

    #[test]
    fn rows_are_primitive_and_merged() {
        let hs = HalfspaceSystem::new(vec![
            Halfspace::new([2, 2, 0], rat(3, 1), "a"),
            Halfspace::new([1, 1, 0], rat(1, 1), "b"),
            Halfspace::new([3, 3, 0], rat(4, 1), "c"),
            Halfspace::new([0, 0, 0], rat(1, 1), "vacuous"),
        ]);
        let sys = hs.integer_rows().unwrap().unwrap();
        assert_eq!(sys.scale, 6);
        assert_eq!(sys.rows, vec![Row { n: [1, 1, 0], o: 6 }]);
        let bad = HalfspaceSystem::new(vec![Halfspace::new([0, 0, 0], rat(-1, 1), "x")]);
        assert!(bad.integer_rows().unwrap().is_none());
    }

    #[test]
    fn identity_content_system_has_74_tuple_rows() {
        let z = ExactContent::from_coord(&ExactCoord::from_ratios([(0, 1), (0, 1), (0, 1)])).unwrap();
        let hs = build_halfspaces(&z, &z, &enumerate_inequality_tuples()).unwrap();
        assert_eq!(hs.len(), 74 + 8);
        assert!(hs.holds(&[rat(0, 1), rat(0, 1), rat(0, 1)]));
        assert!(!hs.holds(&[rat(1, 10), rat(0, 1), rat(0, 1)]));
    }
}
