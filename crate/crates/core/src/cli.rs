//! Command-line front end.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{word_count, DEFAULT_MAP_CAP};
use crate::covering::{build_covering, compare_with_reference, Covering, Mode};
use crate::error::Error;
use crate::io::{covering_to_csv, parse_input, parse_reference, sample_to_csv, CoveringDocument};
use crate::model::{FifSystem, Point};
use crate::oracle::{chaos_game, verify_containment, DEFAULT_BURN_IN};
use crate::svg::emit_svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_VALIDATION: i32 = 4;
pub const EXIT_DEPTH_CAP: i32 = 5;
pub const EXIT_VIOLATIONS: i32 = 6;

const EXIT_CODES: &str = "\
Exit status:
  0  success
  1  I/O error (unreadable input, unwritable output)
  2  invalid command line
  3  malformed input or reference document
  4  input fails validation (ordering, lengths, scaling factors)
  5  n^depth exceeds the composed-map cap (raise it with --max-maps)
  6  `check` found sample points outside the covering";

#[derive(Debug, Parser)]
#[command(
    name = "fifcover",
    version,
    about = "Rhombus coverings and range bounds for affine fractal interpolation functions",
    after_help = EXIT_CODES
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the depth-M covering and write it as JSON, SVG or CSV.
    Cover(CoverArgs),
    /// Print (m, A_m, B_m) for m = 1..=max-depth.
    Range(RangeArgs),
    /// Write a chaos-game sample of the attractor as CSV.
    Sample(SampleArgs),
    /// Check that a chaos-game sample lies inside the covering.
    Check(CheckArgs),
    /// Draw the covering, optionally with a sample overlay, as SVG.
    Render(RenderArgs),
}

#[derive(Debug, Args)]
struct Common {
    /// Input document {"x": [...], "y": [...], "d": [...]}.
    #[arg(long)]
    input: PathBuf,
    /// Upper bound on the number of composed maps n^depth.
    #[arg(long, default_value_t = DEFAULT_MAP_CAP)]
    max_maps: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Theorem,
    Appendix,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Theorem => Mode::Theorem,
            ModeArg::Appendix => Mode::Appendix,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeSelection {
    Theorem,
    Appendix,
    Both,
}

#[derive(Debug, Args)]
struct CoverArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    depth: usize,
    #[arg(long, value_enum, default_value = "theorem")]
    mode: ModeArg,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RangeArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    max_depth: usize,
    /// Defaults to `theorem`, or `both` when --reference is given.
    #[arg(long, value_enum)]
    mode: Option<ModeSelection>,
    /// Reference table to compare against.
    #[arg(long)]
    reference: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    points: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_BURN_IN)]
    burn_in: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    depth: usize,
    #[arg(long)]
    points: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_BURN_IN)]
    burn_in: usize,
    #[arg(long, value_enum, default_value = "theorem")]
    mode: ModeArg,
    /// Containment tolerance as a fraction of x_n - x_0.
    #[arg(long, default_value_t = 1e-9)]
    tol_rel: f64,
}

#[derive(Debug, Args)]
struct RenderArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    depth: usize,
    #[arg(long)]
    svg: PathBuf,
    #[arg(long, value_enum, default_value = "theorem")]
    mode: ModeArg,
    /// Overlay this many chaos-game points.
    #[arg(long, requires = "seed")]
    points: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug)]
enum Failure {
    Io(String),
    Lib(Error),
    Violations(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Io(_) => EXIT_IO,
            Failure::Lib(Error::MalformedDocument { .. }) => EXIT_PARSE,
            Failure::Lib(Error::DepthCapExceeded { .. }) => EXIT_DEPTH_CAP,
            Failure::Lib(e) if e.is_validation() => EXIT_VALIDATION,
            Failure::Lib(_) => EXIT_USAGE,
            Failure::Violations(_) => EXIT_VIOLATIONS,
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

struct Ctx<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

macro_rules! say {
    ($w:expr, $($arg:tt)*) => {
        writeln!($w, $($arg)*).map_err(|e| Failure::Io(e.to_string()))
    };
}

/// Runs the CLI with `argv` (program name first). Returns the process exit status.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let mut ctx = Ctx { out, err };
    let result = match cli.command {
        Command::Cover(a) => cover(&mut ctx, a),
        Command::Range(a) => range(&mut ctx, a),
        Command::Sample(a) => sample(&mut ctx, a),
        Command::Check(a) => check(&mut ctx, a),
        Command::Render(a) => render(&mut ctx, a),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let msg = match &f {
                Failure::Io(m) => format!("error: {m}"),
                Failure::Lib(e) => format!("error: {e}"),
                Failure::Violations(n) => format!("error: {n} sample points lie outside the covering"),
            };
            let _ = writeln!(ctx.err, "{msg}");
            f.exit_code()
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_system(common: &Common) -> std::result::Result<FifSystem, Failure> {
    let doc = parse_input(&read(&common.input)?)?;
    Ok(doc.system()?)
}

fn build(ctx: &mut Ctx, system: &FifSystem, depth: usize, mode: Mode, cap: usize) -> std::result::Result<Covering, Failure> {
    let count = word_count(system.n_maps(), depth, cap)?;
    if count > 100_000 {
        say!(
            ctx.err,
            "building {count} rhombi (about {:.1} MiB)",
            Covering::estimated_bytes(count) as f64 / (1024.0 * 1024.0)
        )?;
    }
    Ok(build_covering(system, depth, mode, cap)?)
}

fn cover(ctx: &mut Ctx, a: CoverArgs) -> Outcome {
    let system = load_system(&a.common)?;
    let cov = build(ctx, &system, a.depth, a.mode.into(), a.common.max_maps)?;
    let b = cov.bounds();
    say!(
        ctx.out,
        "depth {} ({} mode): {} rhombi, theta = {:.10}, M = {:.10}, A = {:.6}, B = {:.6}",
        cov.depth(),
        cov.mode(),
        cov.len(),
        cov.theta(),
        cov.big_m(),
        b.lower,
        b.upper
    )?;
    for d in cov.deviations() {
        say!(ctx.out, "note: {d}")?;
    }
    if let Some(p) = &a.json {
        write(p, &CoveringDocument::from_covering(&cov).to_json())?;
    }
    if let Some(p) = &a.csv {
        write(p, &covering_to_csv(&cov))?;
    }
    if let Some(p) = &a.svg {
        let pts: Vec<Point> = system.data().points().collect();
        write(p, &emit_svg(&cov, &pts, None))?;
    }
    Ok(())
}

fn range(ctx: &mut Ctx, a: RangeArgs) -> Outcome {
    let system = load_system(&a.common)?;
    let reference = match &a.reference {
        Some(p) => Some(parse_reference(&read(p)?)?),
        None => None,
    };
    let selection = a.mode.unwrap_or(if reference.is_some() {
        ModeSelection::Both
    } else {
        ModeSelection::Theorem
    });
    let modes: &[Mode] = match selection {
        ModeSelection::Theorem => &[Mode::Theorem],
        ModeSelection::Appendix => &[Mode::Appendix],
        ModeSelection::Both => &Mode::ALL,
    };
    let mut rows = Vec::new();
    say!(ctx.out, "{:>3} {:>9} {:>14} {:>14}", "m", "mode", "A_m", "B_m")?;
    for m in 1..=a.max_depth {
        for &mode in modes {
            let cov = build(ctx, &system, m, mode, a.common.max_maps)?;
            let b = cov.bounds();
            say!(ctx.out, "{:>3} {:>9} {:>14.4} {:>14.4}", m, mode.name(), b.lower, b.upper)?;
            rows.push((m, mode, b));
        }
    }
    if let Some(table) = reference {
        let report = compare_with_reference(&rows, &table);
        say!(ctx.out, "")?;
        write!(ctx.out, "{report}").map_err(|e| Failure::Io(e.to_string()))?;
    }
    Ok(())
}

fn sample(ctx: &mut Ctx, a: SampleArgs) -> Outcome {
    let system = load_system(&a.common)?;
    let s = chaos_game(&system, a.points, a.seed, a.burn_in);
    write(&a.out, &sample_to_csv(&s.points))?;
    say!(ctx.out, "wrote {} points to {}", s.len(), a.out.display())
}

fn check(ctx: &mut Ctx, a: CheckArgs) -> Outcome {
    let system = load_system(&a.common)?;
    let cov = build(ctx, &system, a.depth, a.mode.into(), a.common.max_maps)?;
    let s = chaos_game(&system, a.points, a.seed, a.burn_in);
    let tol = a.tol_rel * system.data().width();
    let report = verify_containment(&s, &cov, tol);
    say!(
        ctx.out,
        "depth {} ({} mode): {} rhombi, {} points checked, {} violations, max excess {:.3e}",
        cov.depth(),
        cov.mode(),
        cov.len(),
        report.checked,
        report.violations,
        report.max_excess
    )?;
    if report.violations > 0 {
        return Err(Failure::Violations(report.violations));
    }
    Ok(())
}

fn render(ctx: &mut Ctx, a: RenderArgs) -> Outcome {
    let system = load_system(&a.common)?;
    let cov = build(ctx, &system, a.depth, a.mode.into(), a.common.max_maps)?;
    let sample = match (a.points, a.seed) {
        (Some(n), Some(seed)) => Some(chaos_game(&system, n, seed, DEFAULT_BURN_IN).points),
        _ => None,
    };
    let pts: Vec<Point> = system.data().points().collect();
    write(&a.svg, &emit_svg(&cov, &pts, sample.as_deref()))?;
    say!(ctx.out, "wrote {} rhombi to {}", cov.len(), a.svg.display())
}
