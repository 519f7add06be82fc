//! The `shadowtrace` command line.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebra::{s3_table, Algebra};
use crate::bimodule::{serre_dual, unit_bimodule, Bimodule};
use crate::duality::right_dual_witness;
use crate::error::{Error, Result};
use crate::hochschild::{hh0, HochschildComplex};
use crate::io::{parse_field, AlgebraDef, BimoduleDef, Workspace, WorkspaceFile};
use crate::library;
use crate::linalg::{Matrix, Scalar};
use crate::report::Report;
use crate::trace::{basis_labels, eu_class, euler_characteristic, pairing_copairing, trace_of, TraceMap};
use crate::verify::{
    exit_code, hrr_grid, left_regular_module, right_regular_module, rr_grid, run_suite, structural_check, verify_character, verify_hrr, verify_rr1, verify_rr2,
    SuiteConfig, VerificationCase, VerificationReport, STRUCTURAL_THEOREMS,
};

pub const EXIT_INEQUALITY: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "shadowtrace",
    version,
    about = "Exact shadows, traces and Riemann-Roch checks for finite-dimensional algebras"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Ground field: Q or GFp with p prime.
    #[arg(long, global = true, default_value = "Q")]
    pub field: String,
    /// Highest Hochschild degree computed.
    #[arg(long, global = true, default_value_t = 2)]
    pub cap: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the report here instead of stdout (for `example`, the target directory).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Definition files to load before running.
    #[arg(long = "load", short = 'l', global = true)]
    pub load: Vec<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Load and validate definition files.
    Check { paths: Vec<PathBuf> },
    /// Compute an invariant.
    #[command(subcommand)]
    Compute(Compute),
    /// Run a verifier.
    Verify(VerifyArgs),
    /// Write the built-in battery and modules as definition files.
    Example,
}

#[derive(Subcommand, Debug)]
pub enum Compute {
    /// Hochschild homology dimensions and the HH₀ basis of an algebra or endo-bimodule.
    Hh { name: String },
    /// χ(M) as a map HH₀(A) → HH₀(B).
    Euler { module: String },
    /// Trace of a loaded endomorphism.
    Trace { map: String },
    /// The HH₀ pairing and copairing of a separable algebra.
    Pairing { algebra: String },
    /// Hattori–Stallings class of a right module.
    Eu { module: String },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// rr1, rr2, hrr, character, suite, or a structural theorem id.
    pub theorem: String,
    /// For rr1/rr2: s3_standard, k_scalars or grid.
    #[arg(long, default_value = "grid")]
    pub case: String,
    /// For hrr.
    #[arg(long)]
    pub algebra: Option<String>,
    /// For hrr: two right modules to compare.
    #[arg(long, num_args = 2)]
    pub modules: Option<Vec<String>>,
    /// `default` or a comma-separated list of algebra names.
    #[arg(long, default_value = "default")]
    pub battery: String,
    /// Suite configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match execute(&cli) {
        Ok((text, code)) => {
            let written = match &cli.global.out {
                Some(p) if !matches!(cli.command, Command::Example) => std::fs::write(p, &text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
                _ => out.write_all(text.as_bytes()).map_err(|e| Error::Io(e.to_string())),
            };
            match written {
                Ok(()) => code,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_INPUT
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            error_code(&e)
        }
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::NotSeparable { .. } | Error::NotRightDualizable { .. } | Error::Hypothesis(_) => EXIT_HYPOTHESIS,
        _ => EXIT_INPUT,
    }
}

fn workspace(g: &Global) -> Result<Workspace> {
    let mut ws = Workspace {
        field: parse_field(&g.field)?,
        cap: g.cap,
        seed: g.seed,
        ..Default::default()
    };
    for p in &g.load {
        let failed: Vec<Report> = ws.load(p)?.into_iter().filter(|r| !r.pass).collect();
        if let Some(r) = failed.first() {
            return Err(Error::invalid(p.display().to_string(), format!("{}: {}", r.claim, r.failures().join("; "))));
        }
    }
    Ok(ws)
}

fn execute(cli: &Cli) -> Result<(String, i32)> {
    let g = &cli.global;
    match &cli.command {
        Command::Check { paths } => check(g, paths),
        Command::Compute(c) => compute(g, c).map(|s| (s, 0)),
        Command::Verify(v) => verify(g, v),
        Command::Example => example(g),
    }
}

fn to_json_text(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn check(g: &Global, paths: &[PathBuf]) -> Result<(String, i32)> {
    if paths.is_empty() {
        return Err(Error::Parse("check needs at least one file".into()));
    }
    let mut ws = workspace(g)?;
    let mut reports = Vec::new();
    for p in paths {
        reports.extend(ws.load(p)?);
    }
    let code = if reports.iter().all(|r| r.pass) { 0 } else { EXIT_INEQUALITY };
    if g.json {
        return Ok((to_json_text(&reports), code));
    }
    let mut s = String::new();
    for r in &reports {
        if r.pass {
            s += &format!("ok   {}\n", r.claim);
        } else {
            s += &format!("FAIL {}\n", r.claim);
            for f in r.failures() {
                s += &format!("       {f}\n");
            }
        }
    }
    s += &format!("{} objects, {} failed\n", reports.len(), reports.iter().filter(|r| !r.pass).count());
    Ok((s, code))
}

fn endo_bimodule(ws: &Workspace, name: &str) -> Result<Bimodule> {
    match ws.algebra(name) {
        Ok(a) => Ok(unit_bimodule(&a)),
        Err(_) => ws.bimodule(name),
    }
}

fn row(xs: &[Scalar]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn trace_text(title: &str, t: &TraceMap) -> String {
    let src = basis_labels(&t.src);
    let dst = basis_labels(&t.dst);
    let mut s = format!("{title}: HH0 basis [{}] -> [{}]\n", src.join(", "), dst.join(", "));
    for (i, l) in dst.iter().enumerate() {
        s += &format!("  {l}: ({})\n", row(t.matrix.row(i)));
    }
    s
}

fn compute(g: &Global, c: &Compute) -> Result<String> {
    let ws = workspace(g)?;
    match c {
        Compute::Hh { name } => {
            let m = endo_bimodule(&ws, name)?;
            let cx = HochschildComplex::new(&m, ws.cap)?;
            let dims = cx.homology_dims();
            let h = hh0(&m)?;
            let labels = basis_labels(&h);
            if g.json {
                return Ok(to_json_text(
                    &json!({ "object": name, "cap": ws.cap, "hh_dims": dims, "hh0_basis": labels, "boundary_squares": cx.dd_report() }),
                ));
            }
            let dims: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
            Ok(format!(
                "HH: {}\nHH0 basis: {}\n",
                dims.join(", "),
                labels.iter().map(|l| format!("[{l}]")).collect::<Vec<_>>().join(", ")
            ))
        }
        Compute::Euler { module } => {
            let m = ws.bimodule(module)?;
            let t = euler_characteristic(&m)?;
            if g.json {
                return Ok(to_json_text(&t.to_json()));
            }
            Ok(trace_text(&format!("euler {module}"), &t))
        }
        Compute::Trace { map } => {
            let f = ws.map(map)?;
            let t = trace_of(&f)?;
            if g.json {
                return Ok(to_json_text(&t.to_json()));
            }
            Ok(trace_text(&format!("trace {map}"), &t))
        }
        Compute::Pairing { algebra } => {
            let a = ws.algebra(algebra)?;
            let p = pairing_copairing(&a)?;
            if g.json {
                let mut v = p.to_json();
                v["snake"] = serde_json::to_value(p.snake_report()).expect("report serializes");
                return Ok(to_json_text(&v));
            }
            let (rows, cols) = (basis_labels(&p.hh), basis_labels(&p.hh_op));
            let mut s = format!(
                "pairing {} ({}x{}): rows [{}] of HH0({}), columns [{}] of HH0({})\n",
                a.name(),
                rows.len(),
                cols.len(),
                rows.join(", "),
                a.name(),
                cols.join(", "),
                p.opposite.name()
            );
            s += &matrix_text(&p.pair);
            s += "copairing:\n";
            s += &matrix_text(&p.copair);
            s += &format!("snake identities: {}\n", if p.snake_report().pass { "hold" } else { "FAIL" });
            Ok(s)
        }
        Compute::Eu { module } => {
            let m = ws.bimodule(module)?;
            let eu = eu_class(&m)?;
            let h = hh0(&unit_bimodule(m.right_alg()))?;
            let labels = basis_labels(&h);
            if g.json {
                return Ok(to_json_text(
                    &json!({ "module": module, "basis": labels, "class": eu.iter().map(|x| x.to_string()).collect::<Vec<_>>() }),
                ));
            }
            Ok(format!(
                "eu {module} in HH0({}): basis [{}]\n  ({})\n",
                m.right_alg().name(),
                labels.join(", "),
                row(&eu)
            ))
        }
    }
}

fn matrix_text(m: &Matrix) -> String {
    (0..m.rows()).map(|i| format!("  ({})\n", row(m.row(i)))).collect()
}

fn battery(ws: &Workspace, names_arg: &str) -> Result<Vec<String>> {
    if names_arg == "default" {
        return Ok(library::BATTERY.iter().map(|s| s.to_string()).collect());
    }
    let names: Vec<String> = names_arg.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
    for n in &names {
        ws.algebra(n)?;
    }
    Ok(names)
}

fn rr_cases(ws: &Workspace, which: &str) -> Result<Vec<(VerificationCase, VerificationCase)>> {
    match which {
        "grid" => rr_grid(ws.seed),
        "s3_standard" => {
            let v = library::module("Vstd")?;
            let n = right_dual_witness(&v)?.dual;
            let c1 = VerificationCase::new("s3_standard", v.clone(), n.clone(), None, None)?;
            let c2 = VerificationCase::new("s3_standard", v, serre_dual(&n), None, None)?;
            Ok(vec![(c1.randomized(ws.seed)?, c2.randomized(ws.seed)?), (c1, c2)])
        }
        "k_scalars" => {
            let k = library::algebra("k")?;
            let q = library::left_module("Q", &k, vec![Matrix::identity(1)])?;
            let (two, three) = (Some(Matrix::from_i64(&[&[2]])), Some(Matrix::from_i64(&[&[3]])));
            let c1 = VerificationCase::new("k_scalars", q.clone(), q.clone(), two.clone(), three.clone())?;
            let c2 = VerificationCase::new("k_scalars", q.clone(), serre_dual(&q), two, three)?;
            Ok(vec![(c1, c2)])
        }
        other => Err(Error::Parse(format!("unknown case {other:?}; expected s3_standard, k_scalars or grid"))),
    }
}

fn hrr_cases(ws: &Workspace, v: &VerifyArgs) -> Result<Vec<(Algebra, Bimodule, Bimodule)>> {
    if let Some(ms) = &v.modules {
        let (m, n) = (ws.bimodule(&ms[0])?, ws.bimodule(&ms[1])?);
        return Ok(vec![(m.right_alg().clone(), m, n)]);
    }
    let name = v.algebra.as_deref().unwrap_or("QS3");
    match name {
        "QS3" => Ok(hrr_grid()?.into_iter().filter(|(a, _, _)| a.name() == "QS3").collect()),
        "M2" => {
            let r = library::row_module(2)?;
            Ok(vec![(library::algebra("M2")?, r.clone(), r)])
        }
        _ => {
            let a = ws.algebra(name)?;
            let r = right_regular_module(&a);
            Ok(vec![(a, r.clone(), r)])
        }
    }
}

fn verify(g: &Global, v: &VerifyArgs) -> Result<(String, i32)> {
    let ws = workspace(g)?;
    let (reports, config): (Vec<VerificationReport>, Option<SuiteConfig>) = match v.theorem.as_str() {
        "rr1" => (rr_cases(&ws, &v.case)?.iter().map(|(c, _)| verify_rr1(c, ws.cap)).collect(), None),
        "rr2" => (rr_cases(&ws, &v.case)?.iter().map(|(_, c)| verify_rr2(c, ws.cap)).collect(), None),
        "hrr" => (hrr_cases(&ws, v)?.iter().map(|(a, m, n)| verify_hrr(a, m, n)).collect(), None),
        "character" => {
            let reps = ["triv", "sign", "std"].iter().map(|w| library::s3_module(w)).collect::<Result<Vec<_>>>()?;
            (verify_character(&s3_table(), &reps), None)
        }
        "suite" => {
            let cfg = match &v.config {
                Some(p) => {
                    let text = std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
                    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?
                }
                None => SuiteConfig {
                    battery: battery(&ws, &v.battery)?,
                    seed: ws.seed,
                    degree_cap: ws.cap,
                    cases: Vec::new(),
                },
            };
            (run_suite(&cfg)?, Some(cfg))
        }
        id if STRUCTURAL_THEOREMS.contains(&id) => {
            let algebras = battery(&ws, &v.battery)?.iter().map(|n| ws.algebra(n)).collect::<Result<Vec<_>>>()?;
            (vec![structural_check(id, &algebras, ws.seed).expect("known theorem")], None)
        }
        other => return Err(Error::Parse(format!("unknown theorem {other:?}"))),
    };
    let code = exit_code(&reports);
    if g.json {
        let v: Value = match config {
            Some(cfg) => json!({ "config": cfg, "reports": reports, "exit_code": code }),
            None => json!({ "reports": reports, "exit_code": code }),
        };
        return Ok((to_json_text(&v), code));
    }
    let mut s: String = reports.iter().map(|r| r.line() + "\n").collect();
    let passed = reports.iter().filter(|r| r.pass).count();
    s += &format!("{passed}/{} passed\n", reports.len());
    if let Some(h) = reports.iter().find_map(|r| r.hypothesis.as_ref()) {
        s += &format!("{h}\n");
    }
    Ok((s, code))
}

fn write_json(path: &Path, v: &impl serde::Serialize) -> Result<()> {
    std::fs::write(path, to_json_text(v)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn example(g: &Global) -> Result<(String, i32)> {
    let dir = g.out.clone().unwrap_or_else(|| PathBuf::from("examples-out"));
    std::fs::create_dir_all(&dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut algebras: Vec<AlgebraDef> = library::battery().iter().map(AlgebraDef::from_algebra).collect();
    algebras.push(AlgebraDef::from_algebra(&library::algebra("Qx2")?));
    let bimodules = library::MODULE_NAMES
        .iter()
        .map(|n| library::module(n).map(|m| BimoduleDef::from_bimodule(&m)))
        .collect::<Result<Vec<_>>>()?;
    let reg = left_regular_module(&library::algebra("QS3")?);
    let files = [
        (
            "battery.json",
            WorkspaceFile {
                algebras,
                ..Default::default()
            },
        ),
        (
            "modules.json",
            WorkspaceFile {
                bimodules,
                ..Default::default()
            },
        ),
        (
            "regular.json",
            WorkspaceFile {
                bimodules: vec![BimoduleDef::from_bimodule(&reg.renamed("QS3_reg"))],
                ..Default::default()
            },
        ),
    ];
    let mut s = String::new();
    for (name, file) in &files {
        let p = dir.join(name);
        write_json(&p, file)?;
        s += &format!("wrote {}\n", p.display());
    }
    let p = dir.join("suite.json");
    write_json(&p, &SuiteConfig::default())?;
    s += &format!("wrote {}\n", p.display());
    Ok((s, 0))
}

#[cfg(test)]
mod tests;
