//! Command-line front end for the `swf` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::apps::{self, TonemapParams};
use crate::classic::FilterParams;
use crate::colorize::{colorize_with, ColorizeOptions, Neighborhood, ScribbleSet};
use crate::error::{Error, Result};
use crate::filter::{FilterSpec, Kernel};
use crate::image::ImageF;
use crate::{color, io, metrics, testkit};

#[derive(Debug, Parser)]
#[command(name = "swf", version, about = "Side window filtering")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Smooth an image with a classic or side-window filter.
    Filter(FilterArgs),
    /// Amplify detail: q + alpha (q - filter(q)).
    Enhance {
        #[command(flatten)]
        filter: FilterArgs,
        #[arg(long, default_value_t = apps::DEFAULT_ALPHA)]
        alpha: f64,
    },
    /// Tone map an HDR (PFM) image.
    Tonemap(TonemapArgs),
    /// Propagate scribble colours over a grayscale image.
    Colorize(ColorizeArgs),
    /// Compare two images.
    Metrics(MetricsArgs),
    /// Check the closed-form edge tables and the brute-force references.
    Selftest {
        /// Also write the generated edge images (PGM) to this directory.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Time a classic filter against its side-window variant.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct FilterArgs {
    #[arg(short = 'i', long = "input")]
    pub input: PathBuf,
    #[arg(short = 'o', long = "output")]
    pub output: PathBuf,
    #[arg(long, default_value = "box", value_parser = parse_kernel)]
    pub kernel: Kernel,
    #[arg(long)]
    pub side_window: bool,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub iterations: u64,
    /// Grayscale guide for the guided filter (default: self-guided).
    #[arg(long)]
    pub guide: Option<PathBuf>,
    /// Write the per-pixel winning window as an 8-level gray image.
    #[arg(long)]
    pub selection_map: Option<PathBuf>,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct ParamArgs {
    #[arg(long = "r", default_value_t = 7, value_parser = clap::value_parser!(u64).range(1..))]
    pub r: u64,
    #[arg(long, default_value_t = 4.0, value_parser = positive)]
    pub sigma: f64,
    #[arg(long, default_value_t = 7.0, value_parser = positive)]
    pub sigma_s: f64,
    #[arg(long, default_value_t = 0.3, value_parser = positive)]
    pub sigma_r: f64,
    #[arg(long, default_value_t = 0.1, value_parser = positive)]
    pub eps: f64,
}

impl ParamArgs {
    fn to_params(self, iterations: u64) -> FilterParams {
        FilterParams {
            r: self.r as usize,
            sigma: self.sigma,
            sigma_s: self.sigma_s,
            sigma_r: self.sigma_r,
            eps: self.eps,
            iterations: iterations as usize,
        }
    }
}

#[derive(Debug, Args)]
pub struct TonemapArgs {
    #[arg(short = 'i', long = "input")]
    pub input: PathBuf,
    #[arg(short = 'o', long = "output")]
    pub output: PathBuf,
    #[arg(long, default_value_t = apps::DEFAULT_GAMMA, value_parser = positive)]
    pub gamma: f64,
    #[arg(long = "r", default_value_t = 7, value_parser = clap::value_parser!(u64).range(1..))]
    pub r: u64,
    #[arg(long, default_value_t = 7.0, value_parser = positive)]
    pub sigma_s: f64,
    #[arg(long, default_value_t = 0.3, value_parser = positive)]
    pub sigma_r: f64,
    /// Use the centred bilateral filter for the base layer.
    #[arg(long)]
    pub classic: bool,
}

#[derive(Debug, Args)]
pub struct ColorizeArgs {
    /// Grayscale (or colour, converted to luma) input.
    #[arg(short = 'y', long = "luma")]
    pub luma: PathBuf,
    /// RGBA scribbles; pixels with alpha > 0 are constraints.
    #[arg(short = 's', long = "scribbles")]
    pub scribbles: PathBuf,
    #[arg(short = 'o', long = "output")]
    pub output: PathBuf,
    #[arg(long = "r", default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub r: u64,
    #[arg(long, default_value_t = 0.05, value_parser = positive)]
    pub sigma: f64,
    /// Use centred neighbourhoods instead of side windows.
    #[arg(long)]
    pub centered: bool,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    #[arg(long)]
    pub psnr: bool,
    #[arg(long)]
    pub ssim: bool,
    pub a: PathBuf,
    pub b: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Image size in megapixels.
    #[arg(long, default_value_t = 1.0, value_parser = positive)]
    pub size: f64,
    #[arg(long, default_value = "box", value_parser = parse_kernel)]
    pub kernel: Kernel,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Timed runs per variant; the fastest is reported.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub repeats: u64,
}

fn parse_kernel(s: &str) -> std::result::Result<Kernel, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn positive(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{v} must be positive"))
    }
}

/// Timings of one classic/side-window comparison.
#[derive(Debug, Clone, Copy)]
pub struct BenchResult {
    pub width: usize,
    pub height: usize,
    pub classic_seconds: f64,
    pub side_seconds: f64,
}

impl BenchResult {
    pub fn ratio(&self) -> f64 {
        self.side_seconds / self.classic_seconds
    }
}

/// Times `kernel` in both modes on a seeded random square grayscale image.
///
/// Runs alternate between the two modes; the fastest run of each is kept.
pub fn bench(kernel: Kernel, megapixels: f64, params: &FilterParams, repeats: usize) -> Result<BenchResult> {
    use rand::{Rng, SeedableRng};
    let n = ((megapixels * 1e6).sqrt().round() as usize).max(1);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2019);
    let img = ImageF::from_fn(n, n, |_, _| rng.gen());
    let classic = FilterSpec::new(kernel, *params, false);
    let side = FilterSpec::new(kernel, *params, true);
    let time = |spec: &FilterSpec| -> Result<f64> {
        let t0 = Instant::now();
        let out = spec.apply_once(&img, None)?;
        let secs = t0.elapsed().as_secs_f64();
        drop(out);
        Ok(secs)
    };
    let (mut classic_seconds, mut side_seconds) = (f64::INFINITY, f64::INFINITY);
    for _ in 0..repeats.max(1) {
        classic_seconds = classic_seconds.min(time(&classic)?);
        side_seconds = side_seconds.min(time(&side)?);
    }
    Ok(BenchResult {
        width: n,
        height: n,
        classic_seconds,
        side_seconds,
    })
}

fn load_gray(path: &Path) -> Result<ImageF> {
    color::luminance(&io::load_image(path)?)
}

fn run_filter(args: &FilterArgs, alpha: Option<f64>) -> Result<()> {
    let img = io::load_image(&args.input)?;
    let guide = args.guide.as_deref().map(load_gray).transpose()?;
    let spec = FilterSpec::new(
        args.kernel,
        args.params.to_params(args.iterations),
        args.side_window,
    );
    let (smooth, sel) = spec.apply(&img, guide.as_ref())?;
    let out = match alpha {
        Some(a) => apps::enhance(&img, |_| Ok(smooth.clone()), a)?,
        None => smooth,
    };
    io::save_image(&out, &args.output)?;
    if let Some(path) = &args.selection_map {
        let sel = sel.ok_or_else(|| {
            Error::Parameter("--selection-map requires --side-window".into())
        })?;
        io::save_image(&sel.to_image(), path)?;
    }
    Ok(())
}

fn run_tonemap(args: &TonemapArgs) -> Result<()> {
    let hdr = io::load_image(&args.input)?;
    let params = TonemapParams {
        gamma: args.gamma,
        base: FilterSpec::new(
            Kernel::Bilateral,
            FilterParams {
                r: args.r as usize,
                sigma_s: args.sigma_s,
                sigma_r: args.sigma_r,
                ..FilterParams::default()
            },
            !args.classic,
        ),
    };
    io::save_image(&apps::hdr_tonemap(&hdr, &params)?, &args.output)
}

fn run_colorize(args: &ColorizeArgs, err: &mut dyn Write) -> Result<()> {
    let luma = load_gray(&args.luma)?;
    let (rgb, alpha) = io::load_rgba(&args.scribbles)?;
    let scribbles = ScribbleSet::from_rgba(&rgb, &alpha)?;
    let opts = ColorizeOptions {
        r: args.r as usize,
        sigma: args.sigma,
        neighborhood: if args.centered {
            Neighborhood::Centered
        } else {
            Neighborhood::Side
        },
        ..ColorizeOptions::default()
    };
    let out = colorize_with(&luma, &scribbles, &opts)?;
    for (name, rep) in ["u", "v"].iter().zip(&out.reports) {
        if !rep.converged {
            let _ = writeln!(
                err,
                "warning: {name} solve stopped after {} iterations, relative residual {:.3e}",
                rep.iterations, rep.relative_residual
            );
        }
    }
    io::save_image(&out.rgb, &args.output)
}

fn run_metrics(args: &MetricsArgs, out: &mut dyn Write) -> Result<()> {
    let a = io::load_image(&args.a)?;
    let b = io::load_image(&args.b)?;
    let both = !args.psnr && !args.ssim;
    if args.psnr || both {
        writeln!(out, "psnr {}", metrics::psnr(&a, &b)?)?;
    }
    if args.ssim || both {
        let s = metrics::ssim(&color::luminance(&a)?, &color::luminance(&b)?)?;
        writeln!(out, "ssim {s}")?;
    }
    Ok(())
}

fn run_selftest(emit: Option<&Path>, out: &mut dyn Write) -> Result<bool> {
    if let Some(dir) = emit {
        testkit::write_edge_images(dir, 7)?;
    }
    let checks = testkit::run_selftest()?;
    let failed = checks.iter().filter(|c| !c.passed).count();
    for c in &checks {
        writeln!(out, "{c}")?;
    }
    writeln!(out, "checks {}", checks.len())?;
    writeln!(out, "failed {failed}")?;
    Ok(failed == 0)
}

fn run_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<()> {
    let params = args.params.to_params(1);
    let res = bench(args.kernel, args.size, &params, args.repeats as usize)?;
    writeln!(out, "kernel {}", args.kernel)?;
    writeln!(out, "pixels {}", res.width * res.height)?;
    writeln!(out, "classic_seconds {:.6}", res.classic_seconds)?;
    writeln!(out, "side_seconds {:.6}", res.side_seconds)?;
    writeln!(out, "ratio {:.3}", res.ratio())?;
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    match &cli.command {
        Command::Filter(a) => run_filter(a, None).map(|_| true),
        Command::Enhance { filter, alpha } => run_filter(filter, Some(*alpha)).map(|_| true),
        Command::Tonemap(a) => run_tonemap(a).map(|_| true),
        Command::Colorize(a) => run_colorize(a, err).map(|_| true),
        Command::Metrics(a) => run_metrics(a, out).map(|_| true),
        Command::Selftest { emit } => run_selftest(emit.as_deref(), out),
        Command::Bench(a) => run_bench(a, out).map(|_| true),
    }
}

/// Parses `argv` and runs the subcommand; returns the process exit code.
///
/// 0 on success, 1 on IO/format/processing errors (or failed self-test),
/// 2 on usage errors.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match cli.threads {
        Some(0) => {
            let _ = writeln!(err, "error: --threads must be at least 1");
            return 2;
        }
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => {
                let (mut o, mut e) = (Vec::new(), Vec::new());
                let res = pool.install(|| dispatch(&cli, &mut o, &mut e));
                let _ = out.write_all(&o);
                let _ = err.write_all(&e);
                res
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return 1;
            }
        },
        None => dispatch(&cli, out, err),
    };
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
