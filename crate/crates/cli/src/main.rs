//! Command-line front end: parses an essential-exponent list, runs the full
//! pipeline, and prints the invariants as text, JSON, or LaTeX.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, ValueEnum};
use milnor::monodromy::{expand, milnor_number, monodromy_charpoly, CycloProduct, DensePoly};
use milnor::motive::{motivic_milnor_fiber, MotiveExpr};
use milnor::puiseux::{ExponentList, ExponentTower};
use milnor::spectrum::{spectrum_via_process, SpectrumElem};
use milnor::verify::{run_checks, Check};
use milnor::BigInt;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "milnor",
    version,
    about = "Invariants of an irreducible plane-curve singularity from its essential Puiseux exponents",
    group(ArgGroup::new("source").required(true).args(["exponents", "input"]))
)]
struct Args {
    /// Comma-separated exponent list, e.g. "3/2,7/4,11/6" (empty for a smooth branch)
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    exponents: Option<String>,

    /// File with one exponent list per line; blank lines are skipped
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    output: Format,

    /// Run the cross-check suite; any failed check makes the exit code 2
    #[arg(long)]
    verify: bool,

    /// Suppress normal output
    #[arg(long)]
    quiet: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

struct RunReport {
    list: ExponentList,
    tower: ExponentTower,
    motive: MotiveExpr,
    spectrum: SpectrumElem,
    milnor: BigInt,
    charpoly: CycloProduct,
    expanded: DensePoly,
    checks: Vec<Check>,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match &args.exponents {
        Some(list) => run_single(list, &args),
        None => run_batch(args.input.as_deref().expect("source group is required"), &args),
    };
    match outcome {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn run_single(spec: &str, args: &Args) -> Result<bool, String> {
    let list = ExponentList::parse(spec).map_err(|e| e.to_string())?;
    let report = build_report(list, args.verify)?;
    if !args.quiet {
        match args.output {
            Format::Json => println!("{}", compact(&json_report(&report)?)),
            Format::Text => print!("{}", render_text(&report)),
            Format::Latex => print!("{}", render_latex(&report)),
        }
    }
    Ok(report.checks.iter().all(|c| c.pass))
}

fn run_batch(path: &Path, args: &Args) -> Result<bool, String> {
    let content =
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut all_pass = true;
    let mut items = Vec::new();
    let mut blocks = Vec::new();
    for (idx, raw) in content.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let list =
            ExponentList::parse(line).map_err(|e| format!("line {}: {e}", idx + 1))?;
        let report = build_report(list, args.verify)?;
        all_pass &= report.checks.iter().all(|c| c.pass);
        match args.output {
            Format::Json => items.push(json_report(&report)?),
            Format::Text => blocks.push(format!("# input: {line}\n{}", render_text(&report))),
            Format::Latex => blocks.push(format!("% input: {line}\n{}", render_latex(&report))),
        }
    }
    if !args.quiet {
        if args.output == Format::Json {
            println!("{}", compact(&Value::Array(items)));
        } else {
            print!("{}", blocks.join("\n"));
        }
    }
    Ok(all_pass)
}

fn build_report(list: ExponentList, verify: bool) -> Result<RunReport, String> {
    let tower = list.decompose();
    let motive = motivic_milnor_fiber(&tower);
    let spectrum = spectrum_via_process(&tower);
    let charpoly = monodromy_charpoly(&tower);
    let expanded = expand(&charpoly).map_err(|e| e.to_string())?;
    let milnor = milnor_number(&charpoly);
    let checks = if verify { run_checks(&tower) } else { Vec::new() };
    Ok(RunReport {
        list,
        tower,
        motive,
        spectrum,
        milnor,
        charpoly,
        expanded,
        checks,
    })
}

fn render_text(r: &RunReport) -> String {
    let mut out = String::new();
    writeln!(out, "exponents: {}", r.list).unwrap();
    for (i, level) in r.tower.levels().iter().enumerate() {
        let d = &level.data;
        writeln!(
            out,
            "level {}: m = {}, n = {}, d = {}, d' = {}",
            i + 1,
            d.m,
            d.n,
            d.d,
            d.dprime
        )
        .unwrap();
    }
    writeln!(out, "motive: {}", r.motive).unwrap();
    writeln!(out, "spectrum: {}", r.spectrum).unwrap();
    writeln!(out, "milnor number: {}", r.milnor).unwrap();
    writeln!(out, "characteristic polynomial: {}", r.charpoly).unwrap();
    for c in &r.checks {
        writeln!(out, "check {}: {}", c.name, if c.pass { "pass" } else { "FAIL" }).unwrap();
    }
    out
}

fn render_latex(r: &RunReport) -> String {
    let mut out = String::new();
    writeln!(out, "\\begin{{aligned}}").unwrap();
    writeln!(out, "S &= {} \\\\", r.motive.to_latex()).unwrap();
    writeln!(out, "\\operatorname{{Sp}} &= {} \\\\", r.spectrum.to_latex()).unwrap();
    writeln!(out, "\\mu &= {} \\\\", r.milnor).unwrap();
    writeln!(out, "H(t) &= {}", r.charpoly.to_latex()).unwrap();
    writeln!(out, "\\end{{aligned}}").unwrap();
    for c in &r.checks {
        writeln!(out, "% check {}: {}", c.name, if c.pass { "pass" } else { "FAIL" }).unwrap();
    }
    out
}

fn json_report(r: &RunReport) -> Result<Value, String> {
    let mut map = serde_json::Map::new();
    let exponents = r
        .list
        .exponents()
        .iter()
        .map(|a| Ok(json!([small(a.numer())?, small(a.denom())?])))
        .collect::<Result<Vec<Value>, String>>()?;
    map.insert("exponents".into(), Value::Array(exponents));
    let levels = r
        .tower
        .levels()
        .iter()
        .map(|level| {
            let d = &level.data;
            Ok(json!({
                "m": small(&d.m)?,
                "n": small(&d.n)?,
                "d": small(&d.d)?,
                "dprime": small(&d.dprime)?,
            }))
        })
        .collect::<Result<Vec<Value>, String>>()?;
    map.insert("levels".into(), Value::Array(levels));
    map.insert("motive".into(), r.motive.to_json().map_err(too_big)?);
    map.insert("spectrum".into(), r.spectrum.to_json().map_err(too_big)?);
    map.insert("milnor_number".into(), Value::from(small(&r.milnor)?));
    map.insert("charpoly_factored".into(), r.charpoly.to_json().map_err(too_big)?);
    map.insert("charpoly_expanded".into(), r.expanded.to_json().map_err(too_big)?);
    let checks = r
        .checks
        .iter()
        .map(|c| json!({"name": c.name, "pass": c.pass}))
        .collect();
    map.insert("checks".into(), Value::Array(checks));
    Ok(Value::Object(map))
}

fn small(x: &BigInt) -> Result<i64, String> {
    i64::try_from(x).map_err(|_| too_big(()))
}

fn too_big<E>(_: E) -> String {
    "value does not fit in a 64-bit JSON number".to_string()
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("a JSON value always serializes")
}
