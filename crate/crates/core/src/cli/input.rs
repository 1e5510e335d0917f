//! Gate and coordinate arguments.

use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;

use crate::cartan::{canonical_gate, cartan_coordinates, CartanCoord};
use crate::error::{Error, Result};
use crate::exact::{parse_angle, Angle, ExactCoord};
use crate::families::fsim;
use crate::gates;
use crate::numerics::{Mat4, Unitary4};
use crate::symmetry::canonicalize;

/// A parsed gate argument. `exact` is set when the class is known exactly
/// from the argument itself (a `coord:` literal with π-rational entries).
#[derive(Debug, Clone)]
pub struct GateInput {
    pub label: String,
    pub unitary: Unitary4,
    pub exact: Option<ExactCoord>,
}

impl GateInput {
    pub fn coord(&self) -> Result<CartanCoord> {
        match &self.exact {
            Some(x) => Ok(x.to_coord()),
            None => cartan_coordinates(self.unitary.matrix()),
        }
    }

    /// Exact chamber point, rationalizing the numerical class if needed.
    pub fn exact_coord(&self) -> Result<ExactCoord> {
        match &self.exact {
            Some(x) => Ok(x.clone()),
            None => Ok(ExactCoord::from_coord(&self.coord()?)),
        }
    }
}

fn angles(list: &str, n: usize) -> Result<Vec<Angle>> {
    let parts: Vec<&str> = list.split(',').collect();
    if parts.len() != n {
        return Err(Error::Parse(format!("expected {n} comma-separated angles, got `{list}`")));
    }
    parts.into_iter().map(parse_angle).collect()
}

/// Parses `c1,c2,c3` angle literals. Exact literals that already sit in the
/// chamber are kept exact; anything else is canonicalized numerically.
pub fn parse_coord(list: &str) -> Result<(CartanCoord, Option<ExactCoord>)> {
    let a = angles(list, 3)?;
    let raw = CartanCoord::new(a[0].radians(), a[1].radians(), a[2].radians());
    if let (Some(x), Some(y), Some(z)) = (a[0].exact(), a[1].exact(), a[2].exact()) {
        let e = ExactCoord::new(x.clone(), y.clone(), z.clone());
        if e.in_chamber() {
            return Ok((e.to_coord(), Some(e)));
        }
    }
    Ok((canonicalize(raw), None))
}

fn complex_token(tok: &str) -> Result<Complex64> {
    let t = tok.replace('j', "i");
    Complex64::from_str(&t).map_err(|_| Error::Parse(format!("bad complex entry `{tok}`")))
}

/// Matrix file: either JSON `[[[re, im], ...], ...]` or four text rows of four
/// entries such as `0.7071`, `-0.5+0.5i`, `1e-3-2j`.
pub fn parse_matrix_text(text: &str) -> Result<Mat4> {
    let trimmed = text.trim_start();
    let rows: Vec<Vec<Complex64>> = if trimmed.starts_with('[') {
        let v: Vec<Vec<[f64; 2]>> = serde_json::from_str(trimmed)?;
        v.into_iter()
            .map(|row| row.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
            .collect()
    } else {
        text.lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(|l| l.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).map(complex_token).collect())
            .collect::<Result<_>>()?
    };
    if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
        return Err(Error::Parse("matrix must have 4 rows of 4 entries".into()));
    }
    Ok(Mat4::from_fn(|r, c| rows[r][c]))
}

/// Accepts a builtin name, `fsim:θ,φ`, `coord:c1,c2,c3`, or a path to a
/// matrix file.
pub fn parse_gate(spec: &str, unitarity_tol: f64) -> Result<GateInput> {
    let s = spec.trim();
    if let Some(m) = gates::builtin(&s.to_ascii_lowercase()) {
        return Ok(GateInput { label: s.to_ascii_lowercase(), unitary: Unitary4::new(m, 1e-12)?, exact: None });
    }
    if let Some(rest) = s.strip_prefix("fsim:") {
        let a = angles(rest, 2)?;
        return Ok(GateInput { label: s.into(), unitary: fsim(a[0].radians(), a[1].radians()), exact: None });
    }
    if let Some(rest) = s.strip_prefix("coord:") {
        let (c, exact) = parse_coord(rest)?;
        return Ok(GateInput { label: s.into(), unitary: Unitary4::new(canonical_gate(&c), 1e-12)?, exact });
    }
    let path = Path::new(s);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        let m = parse_matrix_text(&text)?;
        return Ok(GateInput { label: s.into(), unitary: Unitary4::new(m, unitarity_tol)?, exact: None });
    }
    Err(Error::Parse(format!(
        "`{s}` is not a builtin ({}), an fsim:θ,φ or coord:c1,c2,c3 literal, or a matrix file",
        gates::BUILTIN_NAMES.join("|")
    )))
}
