//! The `weylcover` command line.

mod input;

pub use input::{parse_coord, parse_gate, parse_matrix_text, GateInput};

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cartan::{kak_decompose, local_invariants, nonlocal_content, CartanCoord};
use crate::coverage::{
    coverage_region, coverage_region_exact, region_json, write_sweep_csv, SweepRow,
};
use crate::error::{Error, Result};
use crate::exact::{rat_string, ExactCoord};
use crate::families::{family_coord, FamilyId, FamilySpec};
use crate::numerics::{seeded_rng, Mat2, Mat4, TolerancePolicy};
use crate::qlr::{enumerate_inequality_tuples, quantum_lr, render_artifact};
use crate::symmetry::symmetry_flags;
use crate::synthesis::{synthesize, synthesize_with_family, SynthesisOptions, SynthesisResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "weylcover", version, about = "Two-qubit gate classes, two-application coverage and synthesis")]
pub struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    pub seed: u64,
    /// Monte Carlo samples for volume estimates (at least 1000).
    #[arg(long, global = true, default_value_t = 20_000)]
    pub mc_samples: usize,
    /// Coordinate tolerance in radians.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cartan coordinates, invariants, nonlocal content and symmetry flags.
    Analyze {
        /// Builtin name, fsim:θ,φ, coord:c1,c2,c3, or a matrix file.
        gate: String,
    },
    /// Region reachable by two applications, with its covered fraction.
    Coverage {
        /// Gate whose square is analysed.
        gate: Option<String>,
        /// Chamber point given directly, e.g. `2pi/7,pi/4,3pi/14`.
        #[arg(long, conflicts_with = "gate")]
        coord: Option<String>,
        /// Second gate for the mixed product `U1 · L · U2`.
        #[arg(long)]
        second: Option<String>,
        /// Also report membership of this point (within --tol).
        #[arg(long)]
        contains: Option<String>,
    },
    /// Covered fraction along a gate family.
    Sweep {
        /// b_alpha, spe_to_b, plane_theta_line, c2_quarter_line or fsim_diag.
        family: String,
        /// Evenly spaced parameters, ends included.
        #[arg(long, default_value_t = 11)]
        points: usize,
        /// Line label for the plane families.
        #[arg(long)]
        secondary: Option<String>,
        /// fsim_diag variant, 0 to 3.
        #[arg(long, default_value_t = 0)]
        variant: usize,
        /// Use the mirrored branch of the family.
        #[arg(long)]
        mirrored: bool,
    },
    /// Write the list of inequality tuples.
    Qlr,
    /// Locals for `L1 · U · L2 · U · L3 = V`.
    Synth {
        /// A gate, or a family name to search for its cheapest member.
        gate: String,
        /// Gate to reach, in the same syntax.
        target: String,
        /// Optimizer iterations per restart.
        #[arg(long, default_value_t = 4000)]
        budget: usize,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        /// Line label when GATE is a plane family.
        #[arg(long)]
        secondary: Option<String>,
        /// fsim_diag variant, 0 to 3.
        #[arg(long, default_value_t = 0)]
        variant: usize,
        /// Use the mirrored branch of the family.
        #[arg(long)]
        mirrored: bool,
    },
}

/// Process exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotReachable(_) | Error::NotReachableByFamily(_) => 3,
        Error::ConvergenceFailure(_)
        | Error::NumericOverflow
        | Error::CalibrationFailure(_)
        | Error::BudgetExhausted(_) => 4,
        _ => 2,
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// reports to `stdout`. Returns the process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn policy(cli: &Cli) -> Result<TolerancePolicy> {
    let p = TolerancePolicy {
        coord_tol: cli.tol,
        volume_mc_samples: cli.mc_samples,
        rng_seed: cli.seed,
        ..TolerancePolicy::default()
    };
    p.validate()?;
    Ok(p)
}

fn json_only(cli: &Cli) -> Result<()> {
    match cli.format {
        Some(Format::Csv) => Err(Error::Parse("this command only writes JSON".into())),
        _ => Ok(()),
    }
}

fn emit(cli: &Cli, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match &cli.out {
        Some(p) => write_file(p, text),
        None => {
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, text)?;
    Ok(())
}

fn pretty(v: &Value) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    let pol = policy(cli)?;
    match &cli.command {
        Command::Analyze { gate } => {
            json_only(cli)?;
            let g = parse_gate(gate, pol.unitarity_tol)?;
            emit(cli, &pretty(&analyze_json(&g)?)?, stdout)
        }
        Command::Coverage { gate, coord, second, contains } => {
            json_only(cli)?;
            let first = match (gate, coord) {
                (Some(g), None) => parse_gate(g, pol.unitarity_tol)?.exact_coord()?,
                (None, Some(c)) => coord_arg(c)?,
                _ => return Err(Error::Parse("give a gate or --coord".into())),
            };
            let other = match second {
                Some(g) => parse_gate(g, pol.unitarity_tol)?.exact_coord()?,
                None => first.clone(),
            };
            let region = coverage_region_exact(&first, &other)?;
            let mut doc = region_json(&region)?;
            let mut rng = pol.rng();
            let mc = region.mc_volume(pol.volume_mc_samples, &mut rng, 1e-12)?;
            doc["monte_carlo"] = json!({
                "fraction": mc.fraction, "stderr": mc.stderr, "samples": mc.samples, "seed": pol.rng_seed,
            });
            if let Some(p) = contains {
                let (c, _) = parse_coord(p)?;
                doc["query"] = json!({ "coord": c.to_array(), "contained": region.contains(&c, pol.coord_tol) });
            }
            let text = pretty(&doc)?;
            match &cli.out {
                Some(path) => {
                    write_file(path, &text)?;
                    writeln!(
                        stdout,
                        "union_dim {} fraction {} ({}) monte_carlo {:.6} ± {:.6}",
                        region.union_dim().map_or("empty".to_string(), |d| d.to_string()),
                        doc["union_volume_fraction"]["exact"].as_str().unwrap_or("?"),
                        doc["union_volume_fraction"]["float"],
                        mc.fraction,
                        mc.stderr
                    )?;
                    Ok(())
                }
                None => {
                    stdout.write_all(text.as_bytes())?;
                    Ok(())
                }
            }
        }
        Command::Sweep { family, points, secondary, variant, mirrored } => {
            let id: FamilyId = family.parse()?;
            let sec = secondary.as_deref().map(parse_angle_rad).transpose()?;
            let spec = FamilySpec::from_id(id, sec, *variant, *mirrored)?;
            let rows = sweep(&spec, *points, &pol)?;
            match cli.format.unwrap_or(Format::Csv) {
                Format::Csv => {
                    let mut buf = Vec::new();
                    write_sweep_csv(&rows, &mut buf)?;
                    emit(cli, &String::from_utf8_lossy(&buf), stdout)
                }
                Format::Json => emit(cli, &pretty(&serde_json::to_value(&rows)?)?, stdout),
            }
        }
        Command::Qlr => {
            json_only(cli)?;
            let tuples = enumerate_inequality_tuples();
            for t in &tuples {
                let n = quantum_lr(t.r, t.k, &t.alpha, &t.beta, &t.delta, t.d)?;
                if n != 1 {
                    return Err(Error::ConvergenceFailure(format!("tuple `{}` has coefficient {n}", t.line())));
                }
            }
            let text = render_artifact(&tuples);
            match &cli.out {
                Some(p) => {
                    write_file(p, &text)?;
                    writeln!(stdout, "{} tuples written to {}", tuples.len(), p.display())?;
                }
                None => stdout.write_all(text.as_bytes())?,
            }
            Ok(())
        }
        Command::Synth { gate, target, budget, restarts, secondary, variant, mirrored } => {
            json_only(cli)?;
            let v = parse_gate(target, pol.unitarity_tol)?;
            let opts = SynthesisOptions { budget: *budget, restarts: *restarts, seed: pol.rng_seed };
            let (label, u, result) = match gate.parse::<FamilyId>() {
                Ok(id) => {
                    let sec = secondary.as_deref().map(parse_angle_rad).transpose()?;
                    let spec = FamilySpec::from_id(id, sec, *variant, *mirrored)?;
                    let r = synthesize_with_family(&spec, &v.unitary, &opts)?;
                    let t = r.parameter.expect("family result carries its parameter");
                    let u = crate::cartan::canonical_gate(&family_coord(&spec, t)?);
                    (id.to_string(), u, r)
                }
                Err(_) => {
                    let g = parse_gate(gate, pol.unitarity_tol)?;
                    let r = synthesize(&g.unitary, &v.unitary, &opts)?;
                    (g.label.clone(), *g.unitary.matrix(), r)
                }
            };
            let doc = synth_json(&label, &v.label, &u, v.unitary.matrix(), &result);
            emit(cli, &pretty(&doc)?, stdout)
        }
    }
}

fn parse_angle_rad(s: &str) -> Result<f64> {
    Ok(crate::exact::parse_angle(s)?.radians())
}

fn coord_arg(s: &str) -> Result<ExactCoord> {
    let (c, exact) = parse_coord(s)?;
    Ok(exact.unwrap_or_else(|| ExactCoord::from_coord(&c)))
}

fn coord_json(c: &CartanCoord) -> Value {
    let x = ExactCoord::from_coord(c);
    json!({
        "radians": c.to_array(),
        "over_pi": c.over_pi(),
        "exact": x.x.iter().map(|v| format!("{}*pi", rat_string(v))).collect::<Vec<_>>(),
    })
}

fn analyze_json(g: &GateInput) -> Result<Value> {
    let m = g.unitary.matrix();
    let c = g.coord()?;
    let inv = local_invariants(m)?;
    let content = nonlocal_content(&c)?;
    let kak = kak_decompose(m)?;
    Ok(json!({
        "gate": g.label,
        "unitarity_residual": g.unitary.residual(),
        "coord": coord_json(&c),
        "g1": { "re": inv.g1.re, "im": inv.g1.im },
        "g2": inv.g2,
        "nonlocal_content": content.a,
        "symmetry": symmetry_flags(&c),
        "kak": {
            "global_phase": kak.global_phase,
            "k1": mat2_json(&kak.k1), "k2": mat2_json(&kak.k2),
            "k3": mat2_json(&kak.k3), "k4": mat2_json(&kak.k4),
            "residual": kak.residual(m),
        },
    }))
}

fn mat2_json(m: &Mat2) -> Value {
    json!((0..2)
        .map(|r| (0..2).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn synth_json(gate: &str, target: &str, u: &Mat4, v: &Mat4, r: &SynthesisResult) -> Value {
    let pair = |p: &(Mat2, Mat2)| json!([mat2_json(&p.0), mat2_json(&p.1)]);
    let w = r.assemble(u);
    json!({
        "gate": gate,
        "target": target,
        "parameter": r.parameter,
        "fidelity": r.fidelity,
        "assembled_distance": crate::cartan::phase_distance(&w, v),
        "target_class": coord_json(&r.target),
        "achieved_class": coord_json(&r.achieved),
        "restart": r.restart,
        "l1": pair(&r.l1),
        "l2": pair(&r.l2),
        "l3": pair(&r.l3),
    })
}

/// One coverage computation per grid point, in parallel; rows keep grid order.
pub fn sweep(spec: &FamilySpec, points: usize, pol: &TolerancePolicy) -> Result<Vec<SweepRow>> {
    if points == 0 {
        return Err(Error::OutOfRange { value: 0.0, lo: 1.0, hi: f64::INFINITY });
    }
    let grid = spec.grid(points);
    grid.par_iter()
        .enumerate()
        .map(|(i, &t)| {
            let c = family_coord(spec, t)?;
            let region = coverage_region(&c, &c)?;
            let mut rng = seeded_rng(pol.rng_seed);
            rng.set_stream(i as u64);
            let mc = region.mc_volume(pol.volume_mc_samples, &mut rng, 1e-12)?;
            Ok(SweepRow {
                family_id: spec.id.to_string(),
                parameter: t,
                fraction: region.fractional_volume()?,
                mc_fraction: mc.fraction,
                mc_stderr: mc.stderr,
            })
        })
        .collect()
}
