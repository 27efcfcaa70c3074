//! Command-line front end: `reconstruct`, `verify`, `sister-check` and `export`.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage or configuration error,
//! 3 numerical abort. `CMCGK_THREADS` caps the worker pool.

pub mod config;
pub mod pipeline;
pub mod report;
pub mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::error::{GeomError, Result};
use crate::mesh::{GridMesh, MeshFormat};
use crate::weierstrass::ReconstructedSurface;
use config::SceneConfig;
use report::Report;

pub const THREADS_VAR: &str = "CMCGK_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Pass = 0,
    Fail = 1,
    Usage = 2,
    Abort = 3,
}

impl ExitStatus {
    fn of_report(report: &Report) -> Self {
        if report.passed() {
            ExitStatus::Pass
        } else {
            ExitStatus::Fail
        }
    }

    fn of_error(e: &GeomError) -> Self {
        match e {
            GeomError::Config { .. } | GeomError::Io { .. } => ExitStatus::Usage,
            _ => ExitStatus::Abort,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "cmcgk", version, about = "Critical CMC surfaces in E(kappa, tau) from their Gauss map")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate a scene and write its mesh, samples and report.
    Reconstruct {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out_mesh: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Record the wall-clock time in the report metadata.
        #[arg(long)]
        timestamp: bool,
    },
    /// Run a builtin suite, or every check for a scene.
    Verify {
        #[arg(long, conflicts_with = "config", required_unless_present = "config")]
        suite: Option<String>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        timestamp: bool,
    },
    /// Check the sister relations between `gauss_map` and `sister` of a scene.
    SisterCheck {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        timestamp: bool,
    },
    /// Integrate a scene and write only the mesh (to stdout without `--out`).
    Export {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        format: MeshFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { ExitStatus::Usage } else { ExitStatus::Pass };
        }
    };
    if let Err(e) = configure_threads() {
        let _ = writeln!(err, "error: {e}");
        return ExitStatus::Usage;
    }
    match run(cli.command, out, err) {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            ExitStatus::of_error(&e)
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| GeomError::config(THREADS_VAR, format!("expected a positive integer, got '{value}'")))?;
    // A pool may already exist when several commands run in one process.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn run(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<ExitStatus> {
    match command {
        Command::Reconstruct {
            config,
            out_mesh,
            report,
            timestamp,
        } => cmd_reconstruct(&config, out_mesh.as_deref(), report.as_deref(), timestamp, out, err),
        Command::Verify {
            suite,
            config,
            report,
            timestamp,
        } => {
            let (mut rep, abort) = match (suite, config) {
                (Some(name), _) => (suites::run_suite(&name)?, None),
                (None, Some(path)) => cmd_verify_config(&path)?,
                (None, None) => unreachable!("clap requires one of --suite and --config"),
            };
            if timestamp {
                rep.stamp();
            }
            emit(&rep, report.as_deref(), out, err)?;
            Ok(abort.map_or(ExitStatus::of_report(&rep), |_| ExitStatus::Abort))
        }
        Command::SisterCheck {
            config,
            report,
            timestamp,
        } => {
            let mut rep = cmd_sister_check(&SceneConfig::load(&config)?, &config.display().to_string())?;
            if timestamp {
                rep.stamp();
            }
            emit(&rep, report.as_deref(), out, err)?;
            Ok(ExitStatus::of_report(&rep))
        }
        Command::Export { config, format, out: path } => {
            let cfg = SceneConfig::load(&config)?;
            let run = pipeline::reconstruct(&cfg, "export", &config.display().to_string())?;
            if let Some(e) = run.abort {
                return Err(e);
            }
            let surface = run.surface.ok_or_else(|| {
                GeomError::Undefined(format!("no surface: {}", failed_names(&run.report)))
            })?;
            let text = GridMesh::from_surface(&surface)?.render(format);
            match path {
                Some(p) => std::fs::write(&p, text).map_err(|e| GeomError::io(p, e))?,
                None => out.write_all(text.as_bytes()).map_err(|e| GeomError::io("<stdout>", e))?,
            }
            Ok(ExitStatus::Pass)
        }
    }
}

fn failed_names(report: &Report) -> String {
    report
        .checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| c.name.as_str())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Writes the report to `path` (or `out`) and the summary to `err`.
fn emit(report: &Report, path: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(|e| GeomError::io(dir, e))?;
            }
            std::fs::write(p, report.to_json()).map_err(|e| GeomError::io(p, e))?
        }
        None => out.write_all(report.to_json().as_bytes()).map_err(|e| GeomError::io("<stdout>", e))?,
    }
    let _ = err.write_all(report.summary().as_bytes());
    Ok(())
}

/// `reconstruct`: mesh to `out_mesh` (or `outputs.mesh_path`), samples to
/// `outputs.samples_path`, report to `report` (or `outputs.report_path`, or stdout).
pub fn cmd_reconstruct(
    config: &Path,
    out_mesh: Option<&Path>,
    report_path: Option<&Path>,
    timestamp: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<ExitStatus> {
    let cfg = SceneConfig::load(config)?;
    let mut run = pipeline::reconstruct(&cfg, "reconstruct", &config.display().to_string())?;
    if timestamp {
        run.report.stamp();
    }
    if let Some(surface) = &run.surface {
        if let Some(path) = out_mesh.or(cfg.outputs.mesh_path.as_deref()) {
            let format = MeshFormat::from_path(path).unwrap_or(MeshFormat::Obj);
            std::fs::write(path, GridMesh::from_surface(surface)?.render(format)).map_err(|e| GeomError::io(path, e))?;
        }
        if let Some(path) = &cfg.outputs.samples_path {
            write_samples(surface, path)?;
        }
    }
    emit(&run.report, report_path.or(cfg.outputs.report_path.as_deref()), out, err)?;
    if let Some(e) = &run.abort {
        let _ = writeln!(err, "aborted: {e}");
        return Ok(ExitStatus::Abort);
    }
    Ok(ExitStatus::of_report(&run.report))
}

/// Every check for one scene, including the sister relations when a sister map is given.
pub fn cmd_verify_config(config: &Path) -> Result<(Report, Option<GeomError>)> {
    let cfg = SceneConfig::load(config)?;
    let source = config.display().to_string();
    let mut run = pipeline::reconstruct(&cfg, "verify", &source)?;
    if cfg.sister.is_some() {
        run.report.extend(cmd_sister_check(&cfg, &source)?.checks);
    }
    Ok((run.report, run.abort))
}

/// `sister-check`: associate relations between `gauss_map` and `sister`.
pub fn cmd_sister_check(cfg: &SceneConfig, source: &str) -> Result<Report> {
    let params = cfg.params()?;
    let g_hat = cfg
        .sister_map()?
        .ok_or_else(|| GeomError::config("sister", "sister-check needs a 'sister' Gauss map"))?;
    let mut report = Report::new("sister-check", source);
    report.metadata.kappa = Some(cfg.kappa);
    report.metadata.tau = Some(cfg.tau);
    report.metadata.grid = Some([cfg.grid.nu, cfg.grid.nv]);
    report.extend(pipeline::sister_checks(&params, cfg.gauss_map()?, g_hat, &cfg.tolerances)?);
    Ok(report)
}

/// Node samples as CSV: grid indices, parameter, Gauss map, `zeta` and `x3`.
pub fn write_samples(surface: &ReconstructedSurface, path: &Path) -> Result<()> {
    let csv_err = |e: csv::Error| GeomError::io(path, std::io::Error::other(e));
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(["i", "j", "u", "v", "g_re", "g_im", "zeta_re", "zeta_im", "x3"])
        .map_err(csv_err)?;
    for k in 0..surface.spec.len() {
        let (i, j) = surface.spec.coords(k);
        let z = surface.spec.node(i, j);
        let (g, zeta) = (surface.g[k], surface.zeta[k]);
        w.write_record([
            i.to_string(),
            j.to_string(),
            z.re.to_string(),
            z.im.to_string(),
            g.re.to_string(),
            g.im.to_string(),
            zeta.re.to_string(),
            zeta.im.to_string(),
            surface.x3[k].to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(|e| GeomError::io(path, e))
}
