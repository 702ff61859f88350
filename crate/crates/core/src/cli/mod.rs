//! The `veechlab` command line.
//!
//! Every subcommand prints JSON to stdout, except `render`, which writes an SVG file. Exit
//! codes: 0 success or pass, 1 certified failure, 2 usage or input error, 3 inconclusive,
//! 4 computation error (caps exceeded, internal checks).

mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::certificates::{
    certify_sigma_t_standard, verify_model, Certificate, CoverModel, Degree, SigmaVariant, Verdict,
};
use crate::covering::{build_cover, cover_cylinders, standard_monodromy, CoverDescriptor};
use crate::cylinders::{decomposition_auto, default_cap, Cylinder, Direction};
use crate::error::{Error, Result};
use crate::field::RealAlg;
use crate::flat_surface::build_base;
use crate::infinite_cover::{
    defining_chain, holonomy, infinite_singularities, z_cover_structure, ChainTerm,
    InfiniteSingularities, ZCoverStructure,
};
use crate::quotient::{quotient_invariants, QuotientInvariants};
use crate::veech_group::{coset_enumerate, gamma_generators, CosetTable, Presentation};
use crate::word::Word;

pub use render::{render_svg, Palette, RenderSpec, RenderTarget};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_ERROR: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "veechlab", version, about = "Exact Veech group computations for coverings of regular polygon surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct PolygonArg {
    /// Number of sides: odd n >= 5 (double n-gon) or even n >= 8 (single n-gon).
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Polygons, gluings and generator labels of the base surface.
    Surface {
        #[command(flatten)]
        p: PolygonArg,
    },
    /// Cylinder decomposition in the direction R^l (1, 0), of the base or of a covering.
    Cylinders {
        #[command(flatten)]
        p: PolygonArg,
        /// Degree of the standard covering; the base surface when omitted.
        #[arg(long)]
        d: Option<usize>,
        /// Direction index l: the direction is (1, 0) rotated by l pi / n.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        direction: i64,
    },
    /// Summary of the standard covering of degree d.
    Cover {
        #[command(flatten)]
        p: PolygonArg,
        #[arg(long)]
        d: usize,
    },
    /// Certifies the Veech group of the standard covering.
    Verify {
        #[command(flatten)]
        p: PolygonArg,
        #[arg(long, required_unless_present = "infinite", conflicts_with = "infinite")]
        d: Option<usize>,
        /// Use the Z-indexed covering.
        #[arg(long)]
        infinite: bool,
        /// Replace m(x_k1) by sigma_1 ∘ (0 d-1) before certifying.
        #[arg(long, conflicts_with = "infinite")]
        mutate: bool,
    },
    /// Recomputes the verdict of a certificate JSON file.
    Check {
        /// Certificate file, as written by `verify`.
        file: PathBuf,
    },
    /// Coset table and quotient invariants of the subgroup.
    Quotient {
        #[command(flatten)]
        p: PolygonArg,
    },
    /// Checks on the Z-indexed covering: singularities, deck group, defining class and sigma_T.
    Infinite {
        #[command(flatten)]
        p: PolygonArg,
    },
    /// Writes an SVG drawing of the base, a covering or a window of the infinite covering.
    Render {
        #[command(flatten)]
        p: PolygonArg,
        #[arg(long, conflicts_with = "infinite")]
        d: Option<usize>,
        #[arg(long)]
        infinite: bool,
        /// Copies -w..w of the infinite covering.
        #[arg(long, default_value_t = 2)]
        window: usize,
        /// Shade the cylinders in direction index l.
        #[arg(long, allow_negative_numbers = true)]
        direction: Option<i64>,
        #[arg(long, value_enum, default_value_t = Palette::Light)]
        palette: Palette,
        #[arg(long, short)]
        output: PathBuf,
    },
}

#[derive(Serialize)]
struct CylinderJson {
    height: RealAlg,
    circumference: RealAlg,
    inverse_modulus: RealAlg,
    core_word: Word,
}

impl From<&Cylinder> for CylinderJson {
    fn from(c: &Cylinder) -> CylinderJson {
        CylinderJson {
            height: c.height.clone(),
            circumference: c.circumference.clone(),
            inverse_modulus: c.inverse_modulus.clone(),
            core_word: c.core_word.clone(),
        }
    }
}

#[derive(Serialize)]
struct CylindersReport {
    n: usize,
    d: Option<usize>,
    direction_index: i64,
    direction: Direction,
    cylinders: Vec<CylinderJson>,
}

#[derive(Serialize)]
struct QuotientReport<'a> {
    n: usize,
    presentation: &'a Presentation,
    subgroup_generators: Vec<String>,
    coset_table: &'a CosetTable,
    invariants: &'a QuotientInvariants,
    /// Elliptic points are read off from the coset action rather than quoted.
    elliptic_source: &'static str,
}

#[derive(Serialize)]
struct HolonomyReport {
    cover_degree: usize,
    chain: Vec<ChainTerm>,
    holonomy: crate::flat_surface::Vec2,
    zero: bool,
}

#[derive(Serialize)]
struct InfiniteReport {
    n: usize,
    singularities: InfiniteSingularities,
    z_cover: ZCoverStructure,
    defining_class: HolonomyReport,
    sigma_t: Certificate,
    passed: bool,
}

#[derive(Serialize)]
struct CheckReport {
    stored: Verdict,
    recomputed: Verdict,
    consistent: bool,
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::InvalidN(_)
        | Error::InvalidDegree(_)
        | Error::InvalidSurface(_)
        | Error::IndexOutOfRange { .. }
        | Error::IntransitiveMonodromy { .. }
        | Error::InvalidMonodromy(_)
        | Error::InvalidWord(_)
        | Error::NotAChain(_) => EXIT_USAGE,
        Error::VerificationFailed { .. } => EXIT_FAIL,
        Error::BoundExceeded { .. } | Error::CapExceeded(_) | Error::BadRelator(_) | Error::Internal(_) => {
            EXIT_ERROR
        }
    }
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Pass => EXIT_OK,
        Verdict::Fail => EXIT_FAIL,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let s = serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))?;
    match writeln!(out, "{}", s) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::Internal(e.to_string())),
        _ => Ok(()),
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Surface { p } => {
            json(out, &build_base(p.n)?)?;
            Ok(EXIT_OK)
        }
        Command::Cylinders { p, d, direction } => {
            let dir = Direction::rotated(p.n, direction);
            let cylinders = match d {
                None => decomposition_auto(&build_base(p.n)?, &dir, default_cap(p.n))?.cylinders,
                Some(d) => cover_cylinders(&build_cover(p.n, d)?, &dir)?,
            };
            json(
                out,
                &CylindersReport {
                    n: p.n,
                    d,
                    direction_index: direction,
                    direction: dir,
                    cylinders: cylinders.iter().map(CylinderJson::from).collect(),
                },
            )?;
            Ok(EXIT_OK)
        }
        Command::Cover { p, d } => {
            json(out, &CoverDescriptor::new(&build_cover(p.n, d)?)?)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            p,
            d,
            infinite,
            mutate,
        } => {
            let model = match (d, infinite) {
                (_, true) => CoverModel::standard(p.n, Degree::Infinite)?,
                (Some(d), false) if mutate => {
                    CoverModel::from_monodromy(standard_monodromy(p.n, d)?.mutated())
                }
                (Some(d), false) => CoverModel::standard(p.n, Degree::Finite(d))?,
                (None, false) => return Err(Error::InvalidDegree(0)),
            };
            let c = verify_model(&model)?;
            json(out, &c)?;
            Ok(verdict_code(c.verdict))
        }
        Command::Check { file } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Error::InvalidSurface(format!("{}: {}", file.display(), e)))?;
            let c: Certificate = serde_json::from_str(&text)
                .map_err(|e| Error::InvalidSurface(format!("{}: {}", file.display(), e)))?;
            let recomputed = c.revalidate();
            json(
                out,
                &CheckReport {
                    stored: c.verdict,
                    recomputed,
                    consistent: recomputed == c.verdict,
                },
            )?;
            Ok(if recomputed == c.verdict {
                verdict_code(recomputed)
            } else {
                EXIT_FAIL
            })
        }
        Command::Quotient { p } => {
            let pres = Presentation::for_base(p.n)?;
            let gens = gamma_generators(p.n)?;
            let sub = gens
                .iter()
                .map(|g| pres.from_rt_word(&g.word))
                .collect::<Result<Vec<_>>>()?;
            let table = coset_enumerate(&pres, &sub)?;
            let inv = quotient_invariants(&table, &pres)?;
            json(
                out,
                &QuotientReport {
                    n: p.n,
                    presentation: &pres,
                    subgroup_generators: sub.iter().map(|w| pres.render(w)).collect(),
                    coset_table: &table,
                    invariants: &inv,
                    elliptic_source: "coset action",
                },
            )?;
            Ok(EXIT_OK)
        }
        Command::Infinite { p } => {
            let singularities = infinite_singularities(p.n)?;
            let z_cover = z_cover_structure(p.n)?;
            let y = build_cover(p.n, 2)?;
            let chain = defining_chain(&y)?;
            let h = holonomy(&y, &chain)?;
            let sigma_t = certify_sigma_t_standard(
                &CoverModel::standard(p.n, Degree::Infinite)?,
                SigmaVariant::Horizontal,
            )?;
            let passed = singularities.total == 4 && h.is_zero() && sigma_t.verdict == Verdict::Pass;
            json(
                out,
                &InfiniteReport {
                    n: p.n,
                    singularities,
                    z_cover,
                    defining_class: HolonomyReport {
                        cover_degree: 2,
                        chain,
                        zero: h.is_zero(),
                        holonomy: h,
                    },
                    sigma_t,
                    passed,
                },
            )?;
            Ok(if passed { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Render {
            p,
            d,
            infinite,
            window,
            direction,
            palette,
            output,
        } => {
            let target = match (d, infinite) {
                (_, true) => RenderTarget::InfiniteWindow { w: window },
                (Some(d), false) => RenderTarget::Cover { d },
                (None, false) => RenderTarget::Base,
            };
            let req = RenderSpec {
                n: p.n,
                target,
                overlay: direction,
                palette,
            };
            let svg = render_svg(&req)?;
            std::fs::write(&output, svg)
                .map_err(|e| Error::InvalidSurface(format!("{}: {}", output.display(), e)))?;
            json(
                out,
                &serde_json::json!({ "request": req, "output": output.display().to_string() }),
            )?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs the command line with explicit output streams and returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{}", text);
            } else {
                let _ = write!(out, "{}", text);
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            error_code(&e)
        }
    }
}

/// Runs the command line on stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
