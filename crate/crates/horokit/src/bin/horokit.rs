//! Command-line front end.
//!
//! Exit codes: 0 success, 2 usage or validation, 3 I/O, 4 numeric or
//! verification failure. All artifact bytes go to `--out` or stdout;
//! status chatter goes to stderr.

use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use horokit::config::{self, FileConfig, Format, Method};
use horokit::packing::density::{mc_density, McOptions};
use horokit::packing::verify::verify;
use horokit::packing::volume::exact_density;
use horokit::packing::PackingError;
use horokit::scene::SceneDocument;
use horokit::{mesh, report, scene, CaseId, Packing, Tiling};

/// Smallest Monte-Carlo sample budget the interface accepts.
const MIN_SAMPLES: u64 = 10_000;

#[derive(Parser)]
#[command(
    name = "horokit",
    version,
    about = "Optimal horoball packings of hyperbolic 3-space in the Beltrami-Klein model"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a packing and write it as a scene document or mesh.
    Gen(GenArgs),
    /// Expand a packing and verify relations, tangencies, and overlaps.
    Verify(VerifyArgs),
    /// Compute the packing density, in closed form or by Monte-Carlo.
    Density(DensityArgs),
    /// Tessellate an existing scene document into a mesh.
    Export(ExportArgs),
    /// Show cases, solved parameters, densities, and table cross-checks.
    Info(InfoArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Tiling: 336 (ideal tetrahedra) or 436 (ideal cubes).
    #[arg(long, value_parser = parse_tiling)]
    tiling: Option<Tiling>,
    /// Packing case: bf, ks, balanced, or maximal.
    #[arg(long, value_parser = parse_case)]
    case: Option<CaseId>,
    /// Tolerance for dedup, tangency, and verification checks.
    #[arg(long)]
    tol: Option<f64>,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Configuration file with `key = value` lines; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Crowns to expand beyond the fundamental configuration.
    #[arg(long)]
    crowns: Option<usize>,
    /// Seed recorded in the scene provenance.
    #[arg(long)]
    seed: Option<u64>,
    /// Output format: scene, obj, or ply.
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
    /// Segments per spheroid equator for mesh formats; even, at least 8.
    #[arg(long)]
    resolution: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Crowns to expand before verification.
    #[arg(long)]
    crowns: Option<usize>,
}

#[derive(Args)]
struct DensityArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Method: exact (closed form) or mc (stratified Monte-Carlo).
    #[arg(long, value_parser = parse_method)]
    method: Option<Method>,
    /// Monte-Carlo sample budget, at least 10000.
    #[arg(long)]
    samples: Option<u64>,
    /// Monte-Carlo random seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct ExportArgs {
    /// Scene document to tessellate.
    scene: PathBuf,
    /// Output format: scene (re-canonicalized), obj, or ply.
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
    /// Segments per spheroid equator for mesh formats; even, at least 8.
    #[arg(long)]
    resolution: Option<usize>,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Configuration file with `key = value` lines; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct InfoArgs {
    /// Tolerance for the table cross-checks.
    #[arg(long)]
    tol: Option<f64>,
}

fn parse_tiling(s: &str) -> Result<Tiling, String> {
    Tiling::from_id(s).ok_or_else(|| "expected 336 or 436".into())
}

fn parse_case(s: &str) -> Result<CaseId, String> {
    CaseId::from_id(s).ok_or_else(|| "expected bf, ks, balanced, or maximal".into())
}

fn parse_method(s: &str) -> Result<Method, String> {
    Method::from_id(s).ok_or_else(|| "expected exact or mc".into())
}

fn parse_format(s: &str) -> Result<Format, String> {
    Format::from_id(s).ok_or_else(|| "expected scene, obj, or ply".into())
}

/// A failure routed to an exit code.
enum Failure {
    Usage(String),
    Io(String),
    Numeric(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
            Failure::Numeric(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Io(m) | Failure::Numeric(m) => m,
        }
    }
}

impl From<PackingError> for Failure {
    fn from(e: PackingError) -> Failure {
        match e {
            PackingError::TooManyCrowns { .. } | PackingError::Invalid(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Numeric(other.to_string()),
        }
    }
}

impl From<mesh::MeshError> for Failure {
    fn from(e: mesh::MeshError) -> Failure {
        Failure::Usage(e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Density(args) => cmd_density(args),
        Command::Export(args) => cmd_export(args),
        Command::Info(args) => cmd_info(args),
    };
    if let Err(f) = result {
        eprintln!("error: {}", f.message());
        std::process::exit(f.code());
    }
}

/// Loads the configuration file when one is named.
fn load_config(path: &Option<PathBuf>) -> Result<FileConfig, Failure> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    config::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Resolves tiling and case, defaulting the one the other implies.
fn resolve_pair(
    tiling: Option<Tiling>,
    case: Option<CaseId>,
) -> Result<(Tiling, CaseId), Failure> {
    match (tiling, case) {
        (Some(t), Some(c)) if c.tiling() != t => Err(Failure::Usage(format!(
            "case {} belongs to tiling {}, not {}",
            c.id(),
            c.tiling().id(),
            t.id()
        ))),
        (Some(t), Some(c)) => Ok((t, c)),
        (None, Some(c)) => Ok((c.tiling(), c)),
        (Some(t), None) => Ok((
            t,
            match t {
                Tiling::Tet336 => CaseId::Bf,
                Tiling::Cube436 => CaseId::Balanced,
            },
        )),
        (None, None) => Ok((Tiling::Tet336, CaseId::Bf)),
    }
}

fn check_tol(tol: f64) -> Result<f64, Failure> {
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(Failure::Usage(format!("tolerance {tol} must be positive")))
    }
}

/// Writes artifact bytes to the path or stdout.
fn emit(out: &Option<PathBuf>, bytes: &[u8]) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| Failure::Io(format!("cannot write to stdout: {e}"))),
    }
}

fn cmd_gen(args: GenArgs) -> Result<(), Failure> {
    let file = load_config(&args.common.config)?;
    let (_, case) = resolve_pair(
        args.common.tiling.or(file.tiling),
        args.common.case.or(file.case),
    )?;
    let crowns = args.crowns.or(file.crowns).unwrap_or(2);
    let tol = check_tol(args.common.tol.or(file.tol).unwrap_or(horokit::DEFAULT_TOL))?;
    let seed = args.seed.or(file.seed).unwrap_or(0);
    let format = args.format.or(file.format).unwrap_or(Format::Scene);
    let resolution = args.resolution.or(file.resolution).unwrap_or(16);
    let out = args.common.out.or(file.out.map(PathBuf::from));

    let packing = Packing::expand(case, crowns, tol)?;
    let doc = SceneDocument::from_packing(&packing, seed, true);
    let bytes = render(&doc, format, resolution)?;
    emit(&out, &bytes)?;
    eprintln!(
        "gen: case {} crowns {} -> {} balls ({} bytes of {})",
        case.id(),
        crowns,
        doc.balls.len(),
        bytes.len(),
        format.id()
    );
    Ok(())
}

/// Renders a scene document in the requested format.
fn render(doc: &SceneDocument, format: Format, resolution: usize) -> Result<Vec<u8>, Failure> {
    let opts = mesh::MeshOptions {
        resolution,
        unit_sphere: doc.unit_sphere,
        cell_edges: true,
    };
    Ok(match format {
        Format::Scene => doc.write().into_bytes(),
        Format::Obj => mesh::obj(doc, &opts)?.into_bytes(),
        Format::Ply => mesh::ply(doc, &opts)?,
    })
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let file = load_config(&args.common.config)?;
    let (tiling, case) = resolve_pair(
        args.common.tiling.or(file.tiling),
        args.common.case.or(file.case),
    )?;
    let crowns = args.crowns.or(file.crowns).unwrap_or(2);
    let tol = check_tol(args.common.tol.or(file.tol).unwrap_or(horokit::DEFAULT_TOL))?;
    let out = args.common.out.or(file.out.map(PathBuf::from));

    let packing = Packing::expand(case, crowns, tol)?;
    let report = verify(&packing, tol)?;
    let tables = horokit::tables::cross_check(tiling, tol);
    emit(&out, report::verify_text(case, &report, &tables).as_bytes())?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Numeric(format!(
            "verification failed with {} finding(s)",
            report.failures.len()
        )))
    }
}

fn cmd_density(args: DensityArgs) -> Result<(), Failure> {
    let file = load_config(&args.common.config)?;
    let (_, case) = resolve_pair(
        args.common.tiling.or(file.tiling),
        args.common.case.or(file.case),
    )?;
    let tol = check_tol(args.common.tol.or(file.tol).unwrap_or(horokit::DEFAULT_TOL))?;
    let method = args.method.or(file.method).unwrap_or(Method::Exact);
    let out = args.common.out.or(file.out.map(PathBuf::from));

    let text = match method {
        Method::Exact => {
            let d = exact_density(case, tol)?;
            report::exact_density_text(case, &d)
        }
        Method::Mc => {
            let samples = args.samples.or(file.samples).unwrap_or(1_000_000);
            if samples < MIN_SAMPLES {
                return Err(Failure::Usage(format!(
                    "samples {samples} below the minimum {MIN_SAMPLES}"
                )));
            }
            let seed = args.seed.or(file.seed).unwrap_or(0);
            let d = mc_density(case, &McOptions { samples, seed })?;
            report::mc_density_text(case, &d)
        }
    };
    emit(&out, text.as_bytes())
}

fn cmd_export(args: ExportArgs) -> Result<(), Failure> {
    let file = load_config(&args.config)?;
    let format = args.format.or(file.format).unwrap_or(Format::Obj);
    let resolution = args.resolution.or(file.resolution).unwrap_or(16);
    let out = args.out.or(file.out.map(PathBuf::from));

    let text = std::fs::read_to_string(&args.scene)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", args.scene.display())))?;
    let doc = scene::parse(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", args.scene.display())))?;
    let bytes = render(&doc, format, resolution)?;
    emit(&out, &bytes)?;
    eprintln!(
        "export: {} balls -> {} bytes of {}",
        doc.balls.len(),
        bytes.len(),
        format.id()
    );
    Ok(())
}

fn cmd_info(args: InfoArgs) -> Result<(), Failure> {
    let tol = check_tol(args.tol.unwrap_or(horokit::DEFAULT_TOL))?;
    let text = report::info_text(tol)?;
    emit(&None, text.as_bytes())
}
