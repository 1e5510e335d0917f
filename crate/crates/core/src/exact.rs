//! Rational multiples of π: angle literals, rationalization of float
//! coordinates, and exact chamber points.

use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cartan::CartanCoord;
use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `p/q` rendering, or `p` for integers.
pub fn rat_string(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An angle literal: either an exact multiple of π or plain radians.
#[derive(Debug, Clone, PartialEq)]
pub enum Angle {
    PiMultiple(Rat),
    Radians(f64),
}

impl Angle {
    pub fn radians(&self) -> f64 {
        match self {
            Angle::PiMultiple(q) => rat_to_f64(q) * PI,
            Angle::Radians(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&Rat> {
        match self {
            Angle::PiMultiple(q) => Some(q),
            Angle::Radians(_) => None,
        }
    }
}

fn parse_decimal(s: &str) -> Option<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((a, b)) => (a, b),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().ok()?;
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let v = Rat::new(numer, denom);
    Some(if neg { -v } else { v })
}

/// Parses `pi`, `-pi/4`, `2pi/7`, `3*pi/14`, `0.25pi`, `π/2`, `0`, or a plain
/// float in radians.
pub fn parse_angle(text: &str) -> Result<Angle> {
    let s: String = text.trim().to_ascii_lowercase().replace('π', "pi").replace(' ', "");
    let err = || Error::Parse(format!("invalid angle literal `{text}`"));
    if let Some((coef, rest)) = s.split_once("pi") {
        let coef = coef.strip_suffix('*').unwrap_or(coef);
        let mut q = match coef {
            "" | "+" => Rat::one(),
            "-" => -Rat::one(),
            other => {
                // `a/b*pi` form
                if let Some((a, b)) = other.split_once('/') {
                    let a = parse_decimal(a).ok_or_else(err)?;
                    let b = parse_decimal(b).ok_or_else(err)?;
                    if b.is_zero() {
                        return Err(err());
                    }
                    a / b
                } else {
                    parse_decimal(other).ok_or_else(err)?
                }
            }
        };
        if !rest.is_empty() {
            let den = rest.strip_prefix('/').ok_or_else(err)?;
            let den = parse_decimal(den).ok_or_else(err)?;
            if den.is_zero() {
                return Err(err());
            }
            q /= den;
        }
        return Ok(Angle::PiMultiple(q));
    }
    if let Some((a, b)) = s.split_once('/') {
        // bare fraction without π is radians
        let a: f64 = a.parse().map_err(|_| err())?;
        let b: f64 = b.parse().map_err(|_| err())?;
        if b == 0.0 {
            return Err(err());
        }
        return Ok(Angle::Radians(a / b));
    }
    let x: f64 = s.parse().map_err(|_| err())?;
    if !x.is_finite() {
        return Err(err());
    }
    if x == 0.0 {
        return Ok(Angle::PiMultiple(Rat::zero()));
    }
    Ok(Angle::Radians(x))
}

/// Best rational approximation of `x` with denominator at most `max_den`.
fn continued_fraction(x: f64, max_den: i64) -> Option<(i64, i64)> {
    if !x.is_finite() || x.abs() > 1e12 {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        let ai = a as i64;
        let p2 = ai.checked_mul(p1)?.checked_add(p0)?;
        let q2 = ai.checked_mul(q1)?.checked_add(q0)?;
        if q2 > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = v - a;
        if frac.abs() < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    if q1 == 0 {
        None
    } else {
        Some((p1, q1))
    }
}

/// Exact stand-in for a float: a small-denominator fraction when one lies
/// within 1e-13, otherwise the nearest point of the 2⁻⁴⁰ grid.
pub fn rationalize(x: f64) -> Rat {
    if let Some((p, q)) = continued_fraction(x, 10_000) {
        if (x - p as f64 / q as f64).abs() <= 1e-13 {
            return rat(p, q);
        }
    }
    let scale = (1u64 << 40) as f64;
    let n = (x * scale).round();
    Rat::new(BigInt::from(n as i128), BigInt::from(1u64 << 40))
}

/// A chamber point with coordinates given exactly in units of π.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactCoord {
    pub x: [Rat; 3],
}

impl ExactCoord {
    pub fn new(x1: Rat, x2: Rat, x3: Rat) -> Self {
        Self { x: [x1, x2, x3] }
    }

    pub fn from_ratios(v: [(i64, i64); 3]) -> Self {
        Self::new(rat(v[0].0, v[0].1), rat(v[1].0, v[1].1), rat(v[2].0, v[2].1))
    }

    /// Rationalizes each coordinate of `c / π`.
    pub fn from_coord(c: &CartanCoord) -> Self {
        let [a, b, d] = c.over_pi();
        Self::new(rationalize(a), rationalize(b), rationalize(d))
    }

    pub fn to_coord(&self) -> CartanCoord {
        CartanCoord::new(
            rat_to_f64(&self.x[0]) * PI,
            rat_to_f64(&self.x[1]) * PI,
            rat_to_f64(&self.x[2]) * PI,
        )
    }

    pub fn in_chamber(&self) -> bool {
        let [a, b, c] = &self.x;
        let one = Rat::one();
        !c.is_negative() && c <= b && b <= a && &(a + b) <= &one
    }

    pub fn strings(&self) -> [String; 3] {
        [rat_string(&self.x[0]), rat_string(&self.x[1]), rat_string(&self.x[2])]
    }
}

impl fmt::Display for ExactCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.strings();
        write!(f, "({a}π, {b}π, {c}π)")
    }
}
