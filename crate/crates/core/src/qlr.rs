//! Quantum Littlewood–Richardson data for the Grassmannians `Gr(r, 4)`.
//!
//! Classical coefficients come from brute-force enumeration of LR tableaux;
//! quantum ones from rim-hook reduction of the classical product into the
//! `r × k` box.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// `n = r + k`, fixed for two-qubit gates.
pub const N: usize = 4;

/// Weakly decreasing non-negative parts. Trailing zeros are insignificant for
/// equality; use [`Partition::padded`] for box-shaped output.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("{parts:?} is not weakly decreasing")));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Self(parts))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.0.len()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn fits(&self, r: usize, k: usize) -> bool {
        self.rows() <= r && self.part(0) <= k
    }

    pub fn check_box(&self, r: usize, k: usize) -> Result<()> {
        if self.fits(r, k) {
            Ok(())
        } else {
            Err(Error::BoxViolation(self.to_string(), r, k))
        }
    }

    pub fn padded(&self, r: usize) -> Vec<usize> {
        (0..r.max(self.rows())).map(|i| self.part(i)).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions in the `r × k` box, in decreasing lexicographic order of parts.
pub fn box_partitions(r: usize, k: usize) -> Vec<Partition> {
    fn rec(prefix: &mut Vec<usize>, max: usize, left: usize, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition::new(prefix.clone()).expect("decreasing by construction"));
            return;
        }
        for v in (0..=max).rev() {
            prefix.push(v);
            rec(prefix, v, left - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), k, r, &mut out);
    out
}

/// Partitions of `size` with at most `max_rows` rows.
fn partitions_of(size: usize, max_rows: usize) -> Vec<Partition> {
    fn rec(prefix: &mut Vec<usize>, max: usize, left: usize, rows: usize, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        if prefix.len() == rows {
            return;
        }
        for v in (1..=max.min(left)).rev() {
            prefix.push(v);
            rec(prefix, v, left - v, rows, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), size, size, max_rows, &mut out);
    out
}

/// Littlewood–Richardson coefficient `c^δ_{αβ}`: the number of LR tableaux of
/// shape `δ/α` and content `β`.
pub fn classical_lr(alpha: &Partition, beta: &Partition, delta: &Partition) -> u64 {
    let rows = delta.rows().max(alpha.rows());
    if (0..rows).any(|i| alpha.part(i) > delta.part(i)) {
        return 0;
    }
    if delta.size() != alpha.size() + beta.size() {
        return 0;
    }
    // reading order: rows top to bottom, each right to left
    let cells: Vec<(usize, usize)> = (0..rows)
        .flat_map(|i| (alpha.part(i)..delta.part(i)).rev().map(move |j| (i, j)))
        .collect();
    let content = beta.parts().to_vec();
    let mut fill: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut used = vec![0usize; content.len() + 1];

    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        content: &[usize],
        fill: &mut BTreeMap<(usize, usize), usize>,
        used: &mut [usize],
    ) -> u64 {
        if idx == cells.len() {
            return 1;
        }
        let (i, j) = cells[idx];
        let mut total = 0;
        for v in 1..=content.len() {
            if used[v] >= content[v - 1] {
                continue;
            }
            // lattice word
            if v > 1 && used[v] + 1 > used[v - 1] {
                continue;
            }
            // rows weakly increase left to right
            if let Some(&right) = fill.get(&(i, j + 1)) {
                if right < v {
                    continue;
                }
            }
            // columns strictly increase downwards
            if i > 0 {
                if let Some(&above) = fill.get(&(i - 1, j)) {
                    if above >= v {
                        continue;
                    }
                }
            }
            fill.insert((i, j), v);
            used[v] += 1;
            total += rec(idx + 1, cells, content, fill, used);
            used[v] -= 1;
            fill.remove(&(i, j));
        }
        total
    }
    rec(0, &cells, &content, &mut fill, &mut used)
}

/// Rim-hook reduction of `λ` (at most `r` rows) into the `r × (N − r)` box.
/// Returns `(sign, d, ν)`, or `None` when `σ_λ` vanishes in quantum cohomology.
fn rim_reduce(lambda: &Partition, r: usize) -> Option<(i64, usize, Partition)> {
    if lambda.rows() > r {
        return None;
    }
    // beads β_i = λ_i + r − 1 − i, strictly decreasing
    let mut beads: Vec<usize> = (0..r).map(|i| lambda.part(i) + r - 1 - i).collect();
    let mut residues: Vec<usize> = beads.iter().map(|b| b % N).collect();
    residues.sort_unstable();
    if residues.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    let mut sign = 1i64;
    let mut d = 0usize;
    loop {
        let x = *beads.iter().max().expect("r > 0");
        if x < N {
            break;
        }
        let target = x - N;
        if beads.contains(&target) {
            return None;
        }
        let between = beads.iter().filter(|&&y| y > target && y < x).count();
        let height = between + 1;
        if (r + height) % 2 == 1 {
            sign = -sign;
        }
        d += 1;
        let pos = beads.iter().position(|&y| y == x).expect("present");
        beads[pos] = target;
        beads.sort_unstable_by(|a, b| b.cmp(a));
    }
    let parts: Vec<usize> = beads.iter().enumerate().map(|(i, b)| b + i + 1 - r).collect();
    Some((sign, d, Partition::new(parts).expect("beads stay decreasing")))
}

/// Quantum product `σ_α ⋆ σ_β` in `QH*(Gr(r, 4))`, keyed by `(δ, d)`.
pub fn quantum_product(r: usize, alpha: &Partition, beta: &Partition) -> Result<BTreeMap<(Partition, usize), i64>> {
    if r > N {
        return Err(Error::BoxViolation(format!("r = {r}"), r, 0));
    }
    let k = N - r;
    alpha.check_box(r, k)?;
    beta.check_box(r, k)?;
    let mut out: BTreeMap<(Partition, usize), i64> = BTreeMap::new();
    let size = alpha.size() + beta.size();
    if r == 0 {
        out.insert((Partition::empty(), 0), 1);
        return Ok(out);
    }
    for lambda in partitions_of(size, r) {
        let c = classical_lr(alpha, beta, &lambda);
        if c == 0 {
            continue;
        }
        if let Some((sign, d, nu)) = rim_reduce(&lambda, r) {
            *out.entry((nu, d)).or_insert(0) += sign * c as i64;
        }
    }
    out.retain(|_, v| *v != 0);
    Ok(out)
}

/// `N^{δ,d}_{αβ}` for `Gr(r, 4)`.
pub fn quantum_lr(r: usize, k: usize, alpha: &Partition, beta: &Partition, delta: &Partition, d: usize) -> Result<u64> {
    if r + k != N {
        return Err(Error::BoxViolation(format!("r + k = {}", r + k), r, k));
    }
    delta.check_box(r, k)?;
    if alpha.size() + beta.size() != delta.size() + N * d {
        alpha.check_box(r, k)?;
        beta.check_box(r, k)?;
        return Ok(0);
    }
    let prod = quantum_product(r, alpha, beta)?;
    let v = prod.get(&(delta.clone(), d)).copied().unwrap_or(0);
    u64::try_from(v).map_err(|_| {
        Error::ConstraintViolation(format!("negative quantum coefficient {v} for r={r} {alpha} {beta} {delta} d={d}"))
    })
}

/// One inequality datum with `N^{δ,d}_{αβ} = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QlrTuple {
    pub r: usize,
    pub k: usize,
    pub alpha: Partition,
    pub beta: Partition,
    pub delta: Partition,
    pub d: usize,
}

impl QlrTuple {
    fn sort_key(&self) -> (usize, usize, Vec<usize>, Vec<usize>, Vec<usize>) {
        (self.r, self.d, self.alpha.padded(self.r), self.beta.padded(self.r), self.delta.padded(self.r))
    }

    /// Content indices `k + j − λ_j` (1-based) for `j = 1..r`.
    pub fn indices(&self, lambda: &Partition) -> Vec<usize> {
        (1..=self.r).map(|j| self.k + j - lambda.part(j - 1)).collect()
    }

    pub fn line(&self) -> String {
        let list = |p: &Partition| {
            let v: Vec<String> = p.padded(self.r).iter().map(|x| x.to_string()).collect();
            format!("[{}]", v.join(","))
        };
        format!("{} {} {} {} {} {}", self.r, self.k, self.d, list(&self.alpha), list(&self.beta), list(&self.delta))
    }
}

/// Every tuple with coefficient one over `r = 0..=4`, sorted by `(r, d, α, β, δ)`.
///
/// The interior Grassmannians `r = 1, 2, 3` contribute 72 tuples; the two
/// point-like ends `r = 0` and `r = 4` add one vacuous tuple each.
pub fn enumerate_inequality_tuples() -> Vec<QlrTuple> {
    let mut out = Vec::new();
    for r in 0..=N {
        let k = N - r;
        let parts = box_partitions(r, k);
        for alpha in &parts {
            for beta in &parts {
                let prod = quantum_product(r, alpha, beta).expect("box partitions");
                for ((delta, d), v) in prod {
                    if v == 1 {
                        out.push(QlrTuple { r, k, alpha: alpha.clone(), beta: beta.clone(), delta, d });
                    }
                }
            }
        }
    }
    out.sort_by_key(|t| t.sort_key());
    out
}

pub const ARTIFACT_VERSION: u32 = 1;

/// The committed tuple list.
pub const COMMITTED_ARTIFACT: &str = include_str!("../data/qlr_n4.txt");

fn body_of(tuples: &[QlrTuple]) -> String {
    let mut body = String::new();
    for t in tuples {
        writeln!(body, "{}", t.line()).expect("string write");
    }
    body
}

fn sha256_hex(s: &str) -> String {
    let digest = Sha256::digest(s.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Versioned text form: a header with count and body checksum, then one
/// `r k d [α] [β] [δ]` line per tuple.
pub fn render_artifact(tuples: &[QlrTuple]) -> String {
    let body = body_of(tuples);
    format!(
        "# qlr n={N} version={ARTIFACT_VERSION} count={} sha256={}\n{body}",
        tuples.len(),
        sha256_hex(&body)
    )
}

pub fn qlr_artifact() -> String {
    render_artifact(&enumerate_inequality_tuples())
}

fn parse_list(s: &str) -> Result<Partition> {
    let inner = s
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("bad list `{s}`")))?;
    let parts: Vec<usize> = if inner.is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|x| x.parse().map_err(|_| Error::Parse(format!("bad part `{x}`"))))
            .collect::<Result<_>>()?
    };
    Partition::new(parts)
}

/// Parses and checksum-verifies an artifact produced by [`render_artifact`].
pub fn parse_artifact(text: &str) -> Result<Vec<QlrTuple>> {
    let (header, body) = text.split_once('\n').ok_or_else(|| Error::Parse("empty artifact".into()))?;
    let field = |name: &str| -> Result<&str> {
        header
            .split_whitespace()
            .find_map(|f| f.strip_prefix(name).and_then(|v| v.strip_prefix('=')))
            .ok_or_else(|| Error::Parse(format!("header lacks `{name}`")))
    };
    let count: usize = field("count")?.parse().map_err(|_| Error::Parse("bad count".into()))?;
    if field("sha256")? != sha256_hex(body) {
        return Err(Error::Parse("artifact checksum mismatch".into()));
    }
    let mut out = Vec::new();
    for line in body.lines() {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 6 {
            return Err(Error::Parse(format!("bad line `{line}`")));
        }
        let num = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad number `{s}`")));
        out.push(QlrTuple {
            r: num(f[0])?,
            k: num(f[1])?,
            d: num(f[2])?,
            alpha: parse_list(f[3])?,
            beta: parse_list(f[4])?,
            delta: parse_list(f[5])?,
        });
    }
    if out.len() != count {
        return Err(Error::Parse(format!("header count {count} but {} lines", out.len())));
    }
    Ok(out)
}
