//! Command-line front end.
//!
//! Every command reads JSON and writes JSON (or SVG) to stdout or to the
//! file given with `-o`. Exit codes: 0 on success, 1 on a domain error with
//! an error document on stderr, 2 on usage errors and unreadable input.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::catalog::{catalog_entries, catalog_entry, run_catalog_validation};
use crate::chain::{chain_report, classify_point, drazin};
use crate::derive::{
    derive, meromorphic_check, omega_check, verify_boundary_diagrams, verify_eta_theorem, verify_moved_boundary,
    SpectraProfile,
};
use crate::eigen::{classify_spectrum, point_spectrum_region};
use crate::error::{Error, Result};
use crate::json::{
    classification_value, difference_value, drazin_value, hull_value, matrix_from_json, plane_set_value,
    region_from_json, region_value, render, with_schema,
};
use crate::linalg::ExactMatrix;
use crate::region::{
    accumulation, boundary, check_pocetna, connected_hull, difference, interior, isolated_points, union,
    SpectralRegion,
};
use crate::scalar::ExactScalar;
use crate::svg::render_svg;

#[derive(Debug, Parser)]
#[command(name = "spectral-chain", version, about = "Exact chain invariants, spectral regions and spectra derivation")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Write the result to this file instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Chain dimensions c_n, c'_n, k_n, ascent, descent and index of a matrix.
    Invariants { matrix: PathBuf },
    /// Drazin inverse with its core-nilpotent split.
    Drazin { matrix: PathBuf },
    /// Classify one point of the plane for a matrix.
    Classify {
        matrix: PathBuf,
        /// The point as "re,im" with fraction parts, e.g. "1/2,-3".
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Eigenvalues with multiplicity and per-eigenvalue classification.
    Spectrum { matrix: PathBuf },
    /// Apply region operations.
    Region {
        region: PathBuf,
        #[arg(long, value_enum)]
        op: Option<RegionOp>,
        #[arg(long, requires = "op2")]
        other: Option<PathBuf>,
        #[arg(long, value_enum, requires = "other")]
        op2: Option<PairOp>,
    },
    /// Derive spectra from a profile and optionally verify it.
    Derive {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long, value_enum)]
        verify: Option<Verify>,
    },
    /// Inspect and validate the operator catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Draw a region as SVG.
    RenderSvg { region: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RegionOp {
    Boundary,
    Interior,
    Acc,
    Iso,
    Hull,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PairOp {
    Union,
    Subset,
    Diff,
    Pocetna,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Verify {
    Eta,
    Boundary,
    Moved,
    All,
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
    Validate,
    Show { name: String },
}

/// What a command produced.
enum Output {
    Json(Value),
    /// JSON that reports a failed check: printed, but the exit code is 1.
    FailedJson(Value),
    Text(String),
}

fn read_input(path: &Path, stdin: &mut dyn Read) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn parse_lambda(s: &str) -> Result<ExactScalar> {
    let (re, im) = s.split_once(',').unwrap_or((s, "0"));
    ExactScalar::from_pair(re, im)
}

fn error_value(e: &Error) -> Value {
    with_schema(json!({ "error": { "code": e.code(), "message": e.to_string() } }))
}

/// Input problems exit with 2, everything else with 1.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Json(_) | Error::Parse(_) | Error::Io(_) => 2,
        _ => 1,
    }
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    run_config(&config, stdin, stdout, stderr)
}

pub fn run_config(config: &CliConfig, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let (text, code) = match execute(&config.command, stdin) {
        Ok(Output::Json(v)) => (render(&v), 0),
        Ok(Output::FailedJson(v)) => (render(&v), 1),
        Ok(Output::Text(t)) => (t, 0),
        Err(e) => {
            let _ = stderr.write_all(render(&error_value(&e)).as_bytes());
            return exit_code(&e);
        }
    };
    match &config.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                let _ = stderr.write_all(render(&error_value(&e.into())).as_bytes());
                return 2;
            }
        }
        None => {
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    code
}

fn load_matrix(path: &Path, stdin: &mut dyn Read) -> Result<ExactMatrix> {
    matrix_from_json(&read_input(path, stdin)?)
}

fn load_region(path: &Path, stdin: &mut dyn Read) -> Result<SpectralRegion> {
    region_from_json(&read_input(path, stdin)?)
}

fn execute(cmd: &Command, stdin: &mut dyn Read) -> Result<Output> {
    Ok(match cmd {
        Command::Invariants { matrix } => {
            let m = load_matrix(matrix, stdin)?;
            Output::Json(with_schema(serde_json::to_value(chain_report(&m)?)?))
        }
        Command::Drazin { matrix } => {
            let m = load_matrix(matrix, stdin)?;
            Output::Json(with_schema(drazin_value(&drazin(&m)?)))
        }
        Command::Classify { matrix, lambda } => {
            let lambda = parse_lambda(lambda)?;
            let m = load_matrix(matrix, stdin)?;
            Output::Json(with_schema(classification_value(&classify_point(&m, &lambda)?)))
        }
        Command::Spectrum { matrix } => {
            let m = load_matrix(matrix, stdin)?;
            let (list, points) = classify_spectrum(&m)?;
            let region = if list.complete { Some(region_value(&point_spectrum_region(&m)?)) } else { None };
            Output::Json(with_schema(json!({
                "eigenvalues": serde_json::to_value(&list.eigenvalues)?,
                "complete": list.complete,
                "region": region,
                "points": points.iter().map(classification_value).collect::<Vec<_>>(),
            })))
        }
        Command::Region { region, op, other, op2 } => {
            let r = load_region(region, stdin)?;
            let other = match other {
                Some(p) => Some(load_region(p, stdin)?),
                None => None,
            };
            Output::Json(region_command(&r, *op, other.as_ref(), *op2)?)
        }
        Command::Derive { profile, verify } => {
            let p = SpectraProfile::from_json(&read_input(profile, stdin)?)?;
            Output::Json(derive_command(&p, *verify)?)
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => Output::Json(with_schema(json!({
                "entries": catalog_entries()
                    .iter()
                    .map(|e| json!({ "name": e.name, "description": e.description, "full": e.full }))
                    .collect::<Vec<_>>(),
            }))),
            CatalogAction::Validate => {
                let rep = run_catalog_validation();
                if rep.passed() {
                    Output::Json(rep.to_value())
                } else {
                    Output::FailedJson(rep.to_value())
                }
            }
            CatalogAction::Show { name } => Output::Json(catalog_entry(name)?.to_value()),
        },
        Command::RenderSvg { region } => Output::Text(render_svg(&load_region(region, stdin)?)),
    })
}

fn region_command(
    r: &SpectralRegion,
    op: Option<RegionOp>,
    other: Option<&SpectralRegion>,
    op2: Option<PairOp>,
) -> Result<Value> {
    let mut out = json!({ "input": region_value(r) });
    let mut lhs = r.clone();
    if let Some(op) = op {
        let (name, value) = match op {
            RegionOp::Boundary => {
                lhs = boundary(r)?;
                ("boundary", region_value(&lhs))
            }
            RegionOp::Acc => {
                lhs = accumulation(r);
                ("acc", region_value(&lhs))
            }
            RegionOp::Iso => {
                lhs = isolated_points(r);
                ("iso", region_value(&lhs))
            }
            RegionOp::Hull => {
                let rep = connected_hull(r)?;
                lhs = rep.hull.clone();
                ("hull", hull_value(&rep))
            }
            RegionOp::Interior => {
                if op2.is_some() {
                    return Err(Error::unsupported("the interior is an open set; pair operations need a closed region"));
                }
                ("interior", plane_set_value(&interior(r)?))
            }
        };
        out["op"] = json!(name);
        out["result"] = value;
    }
    if let (Some(other), Some(op2)) = (other, op2) {
        let (name, value) = match op2 {
            PairOp::Union => ("union", region_value(&union(&lhs, other)?)),
            PairOp::Subset => ("subset", json!(lhs.subset(other)?)),
            PairOp::Diff => ("diff", difference_value(&difference(&lhs, other)?)),
            PairOp::Pocetna => ("pocetna", {
                let rep = check_pocetna(&lhs, other)?;
                let mut v = serde_json::to_value(&rep)?;
                v["all_pass"] = json!(rep.all_pass());
                v
            }),
        };
        out["other"] = region_value(other);
        out["op2"] = json!(name);
        out["combined"] = value;
    }
    Ok(with_schema(out))
}

fn embed<T>(r: Result<T>, f: impl FnOnce(T) -> Value) -> Result<Value> {
    match r {
        Ok(t) => Ok(f(t)),
        Err(e @ (Error::MissingKinds(_) | Error::UnsupportedConfiguration(_))) => {
            Ok(json!({ "error": { "code": e.code(), "message": e.to_string() } }))
        }
        Err(e) => Err(e),
    }
}

fn derive_command(p: &SpectraProfile, verify: Option<Verify>) -> Result<Value> {
    let d = derive(p)?;
    let derived: Vec<Value> = d
        .steps
        .iter()
        .map(|s| json!({ "kind": s.kind.name(), "rule": s.rule, "region": region_value(&s.region) }))
        .collect();
    let mut out = json!({
        "operator": d.profile.operator_name,
        "derived": derived,
        "notices": d.notices,
        "profile": d.profile.to_value(),
    });
    let wants = |v: Verify| verify == Some(v) || verify == Some(Verify::All);
    if verify.is_some() {
        let mut ver = json!({});
        if wants(Verify::Eta) {
            let eta = verify_eta_theorem(&d.profile);
            if let Ok(rep) = &eta {
                out["common_hull"] = json!(rep.common_hull.as_ref().map(region_value));
            }
            ver["eta"] = embed(eta, |r| r.to_value())?;
        }
        if wants(Verify::Boundary) {
            ver["boundary"] = embed(verify_boundary_diagrams(&d.profile), |r| r.to_value())?;
        }
        if wants(Verify::Moved) {
            ver["moved"] = embed(verify_moved_boundary(&d.profile), |r| r.to_value())?;
        }
        if verify == Some(Verify::All) {
            ver["meromorphic"] = embed(meromorphic_check(&d.profile), |b| json!(b))?;
            ver["omega"] = embed(omega_check(&d.profile), |o| match o {
                Some(rep) => json!({
                    "passed": rep.passed(),
                    "outside_hull_only_poles": rep.outside_hull_only_poles,
                    "holes_all_or_nothing": rep.holes_all_or_nothing,
                    "free_holes_only_poles": rep.free_holes_only_poles,
                }),
                None => json!({ "skipped": "profile carries no pole set" }),
            })?;
        }
        out["verification"] = ver;
    }
    Ok(with_schema(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], input: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut stdin = input.as_bytes();
        let argv = std::iter::once("spectral-chain").chain(args.iter().copied());
        let code = run(argv, &mut stdin, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn lambda_parsing() {
        assert_eq!(parse_lambda("1/2,-3").unwrap(), ExactScalar::from_fractions(1, 2, -3, 1));
        assert_eq!(parse_lambda("2").unwrap(), ExactScalar::from_int(2));
        assert!(parse_lambda("x,1").is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&[], "").0, 2);
        assert_eq!(call(&["frobnicate"], "").0, 2);
        assert_eq!(call(&["region", "-", "--op", "shrink"], "").0, 2);
        let (code, _, err) = call(&["invariants", "-"], "{not json");
        assert_eq!(code, 2);
        assert!(err.contains("MalformedJson"));
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = call(&["--help"], "");
        assert_eq!(code, 0);
        assert!(out.contains("render-svg"));
    }
}
