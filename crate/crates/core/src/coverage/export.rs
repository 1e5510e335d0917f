//! Region JSON and sweep CSV.

use std::io::Write;

use serde::Serialize;
use serde_json::{json, Value};

use super::{CoverageRegion, HullEquation};
use crate::error::Result;
use crate::exact::{rat_string, rat_to_f64, ExactCoord, Rat};

fn point_json(x: &[Rat; 3]) -> Value {
    json!({
        "exact": x.iter().map(|v| format!("{}*pi", rat_string(v))).collect::<Vec<_>>(),
        "float": x.iter().map(|v| rat_to_f64(v) * std::f64::consts::PI).collect::<Vec<_>>(),
    })
}

fn coord_json(x: &ExactCoord) -> Value {
    point_json(&x.x)
}

fn hull_json(eqs: &[HullEquation]) -> Value {
    eqs.iter()
        .map(|e| {
            json!({
                "normal": e.normal.iter().map(|n| n.to_string()).collect::<Vec<_>>(),
                "offset": format!("{}*pi", rat_string(&e.offset)),
            })
        })
        .collect()
}

/// The exported document: sources, each sign pair's polytope and the union
/// fraction. Halfspaces read `normal · c ≤ offset` with `offset` a multiple of π.
pub fn region_json(region: &CoverageRegion) -> Result<Value> {
    let pairs: Vec<Value> = region
        .regions
        .iter()
        .map(|(sp, r)| {
            let halfspaces: Vec<Value> = r
                .halfspaces
                .halfspaces
                .iter()
                .map(|h| {
                    json!({
                        "normal": h.normal.iter().map(rat_string).collect::<Vec<_>>(),
                        "offset": format!("{}*pi", rat_string(&h.offset)),
                        "origin": h.origin,
                    })
                })
                .collect();
            json!({
                "signs": sp.label(),
                "dim": r.dim,
                "vertices": r.vertices.iter().map(coord_json).collect::<Vec<_>>(),
                "affine_hull": r.affine_hull().map(|h| hull_json(&h.equations)),
                "halfspaces": halfspaces,
            })
        })
        .collect();
    let frac = region.fractional_volume_exact()?;
    Ok(json!({
        "source_coords": region.sources.iter().map(coord_json).collect::<Vec<_>>(),
        "pairs": pairs,
        "union_dim": region.union_dim(),
        "union_affine_hull": region.union_affine_hull()?.map(|h| hull_json(&h.equations)),
        "union_volume_fraction": { "exact": rat_string(&frac), "float": rat_to_f64(&frac) },
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub family_id: String,
    pub parameter: f64,
    pub fraction: f64,
    pub mc_fraction: f64,
    pub mc_stderr: f64,
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coverage::coverage_region_exact;

    #[test]
    fn json_carries_exact_and_float_fields() {
        let s = ExactCoord::from_ratios([(1, 4), (1, 4), (1, 4)]);
        let r = coverage_region_exact(&s, &s).unwrap();
        let v = region_json(&r).unwrap();
        assert_eq!(v["union_volume_fraction"]["exact"], "0");
        assert_eq!(v["union_dim"], 1);
        assert_eq!(v["pairs"].as_array().unwrap().len(), 4);
        assert_eq!(v["source_coords"][0]["exact"][0], "1/4*pi");
        assert!(v["pairs"][0]["halfspaces"].as_array().unwrap().len() >= 74);
    }

    #[test]
    fn csv_has_the_documented_header() {
        let rows = vec![SweepRow {
            family_id: "b_alpha".into(),
            parameter: 0.5,
            fraction: 0.25,
            mc_fraction: 0.24,
            mc_stderr: 0.01,
        }];
        let mut buf = Vec::new();
        write_sweep_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), "family_id,parameter,fraction,mc_fraction,mc_stderr");
        assert_eq!(text.lines().count(), 2);
    }
}
