//! The `harmap` command line.
//!
//! Every subcommand prints a JSON result on stdout. Exit codes: 0 on success or
//! a holding verdict, 1 when the verdict under test fails, 2 on usage,
//! validation or I/O errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::bounds::{coefficient_bound_check, growth_envelope_check, growth_lower, growth_upper};
use crate::closure::{convolve_harmonic, goodloe_product};
use crate::document::{load_map, save_document, to_json_string, LoadedMap, MapDocument};
use crate::geometry::{circle_image, convex_on_circle, injective_on_circle, starlike_on_circle};
use crate::geometry::{PLOT_SAMPLES, VERDICT_SAMPLES};
use crate::harmonic::{make_extremal_full, make_extremal_single, ClassParams};
use crate::operator::{membership_sampled, membership_sufficient, slice_membership_sampled};
use crate::radii::{
    numeric_radius_oracle, radius_fully_convex, radius_fully_starlike, starlike_radius_closed_form,
    CircleProperty,
};
use crate::svg::emit_svg;
use crate::{Error, PolarGrid, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "harmap",
    version,
    about = "Harmonic mappings of the class R⁰_H(γ, δ, λ)"
)]
struct Cli {
    /// Print a human-readable summary on stderr.
    #[arg(long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct ParamArgs {
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
}

#[derive(Debug, Clone, Args)]
struct GridArgs {
    /// Outermost grid radius, strictly below 1.
    #[arg(long, default_value_t = crate::grid::DEFAULT_R_MAX)]
    grid_radius: f64,
    #[arg(long, default_value_t = crate::grid::DEFAULT_RADII)]
    grid_radii: usize,
    #[arg(long, default_value_t = crate::grid::DEFAULT_ANGLES)]
    grid_angles: usize,
}

impl GridArgs {
    fn grid(&self) -> PolarGrid {
        PolarGrid {
            radii: self.grid_radii,
            angles: self.grid_angles,
            r_max: self.grid_radius,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Membership tests for a map document.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 16)]
        n_eps: usize,
    },
    /// Radii of full convexity and full starlikeness.
    Radii {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Growth bounds at radius r, optionally checked against a map on a grid.
    Growth {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        r: Option<f64>,
        /// Number of series terms.
        #[arg(long, default_value_t = crate::bounds::DEFAULT_GROWTH_TERMS)]
        order: usize,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Extremal members: `--m` for z + c·conj(z)^m, `--order` for the full analytic one.
    Extremal {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, conflicts_with = "order")]
        m: Option<usize>,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Harmonic convolution of two documents, or the product with an analytic factor.
    Convolve {
        #[arg(long = "in", required = true, num_args = 1)]
        inputs: Vec<PathBuf>,
        /// Use the analytic part of the second document as φ in s∗φ + conj(t∗φ).
        #[arg(long)]
        analytic: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Numeric radius of starlikeness or convexity for one map.
    Oracle {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value = "starlike")]
        property: String,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = VERDICT_SAMPLES)]
        grid_angles: usize,
    },
    /// SVG of the images of circles |z| = r.
    Plot {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.25, 0.5, 0.75])]
        radii: Vec<f64>,
        #[arg(long, default_value_t = PLOT_SAMPLES)]
        grid_angles: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Everything known about a map: membership, bounds, growth, radii.
    Report {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 16)]
        n_eps: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Reply {
    code: i32,
    value: Value,
    summary: String,
}

impl Reply {
    fn ok(value: Value, summary: String) -> Self {
        Self {
            code: EXIT_OK,
            value,
            summary,
        }
    }

    fn verdict(holds: bool, value: Value, summary: String) -> Self {
        Self {
            code: if holds { EXIT_OK } else { EXIT_FAILS },
            value,
            summary,
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let text = err.render().to_string();
            return match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        code: EXIT_OK,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match execute(&cli.command) {
        Ok(reply) => Outcome {
            code: reply.code,
            stdout: format!("{}\n", to_json_string(&reply.value)),
            stderr: if cli.verbose {
                format!("{}\n", reply.summary)
            } else {
                String::new()
            },
        },
        Err(err) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        },
    }
}

fn resolve_params(args: &ParamArgs, from_doc: Option<&ClassParams>) -> Result<ClassParams> {
    match (args.gamma, args.delta, args.lambda) {
        (Some(g), Some(d), Some(l)) => ClassParams::new(g, d, l),
        (None, None, None) => from_doc.copied().ok_or_else(|| {
            Error::InvalidArgument(
                "class parameters required: pass --gamma, --delta and --lambda or put them in the document"
                    .into(),
            )
        }),
        _ => Err(Error::InvalidArgument(
            "--gamma, --delta and --lambda must be given together".into(),
        )),
    }
}

fn optional_params(
    args: &ParamArgs,
    from_doc: Option<&ClassParams>,
) -> Result<Option<ClassParams>> {
    if args.gamma.is_none() && args.delta.is_none() && args.lambda.is_none() && from_doc.is_none() {
        Ok(None)
    } else {
        resolve_params(args, from_doc).map(Some)
    }
}

fn params_json(p: &ClassParams) -> Value {
    json!({"gamma": p.gamma(), "delta": p.delta(), "lambda": p.lambda()})
}

fn to_value<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report types serialize")
}

fn write_or_print(doc: &MapDocument, out: Option<&Path>) -> Result<Value> {
    match out {
        Some(path) => {
            save_document(doc, path)?;
            Ok(json!({"written": path.display().to_string()}))
        }
        None => Ok(to_value(doc)),
    }
}

fn execute(command: &Command) -> Result<Reply> {
    match command {
        Command::Check {
            input,
            params,
            grid,
            n_eps,
        } => {
            let loaded = load_map(input)?;
            let p = resolve_params(params, loaded.params.as_ref())?;
            let grid = grid.grid();
            let f = &loaded.map;
            let sufficient = membership_sufficient(f, &p);
            let sampled = membership_sampled(f, &p, &grid)?;
            let slices = slice_membership_sampled(f, &p, *n_eps, &grid)?;
            let sense = f.sense_preserving_check(&grid)?;
            let bounds = coefficient_bound_check(f, &p);
            let summary = format!(
                "membership {} (margin {:.3e} at {:.4}), coefficient condition {} ({:.6} vs {:.6}), bounds {}",
                if sampled.holds { "not falsified" } else { "FAILS" },
                sampled.margin,
                sampled.witness,
                if sufficient.holds { "met" } else { "not met" },
                sufficient.sum,
                sufficient.bound,
                if bounds.holds() { "respected" } else { "violated" },
            );
            Ok(Reply::verdict(
                sampled.holds,
                json!({
                    "params": params_json(&p),
                    "holds": sampled.holds,
                    "sampled": to_value(&sampled),
                    "slices": to_value(&slices),
                    "sufficient": to_value(&sufficient),
                    "sense_preserving": to_value(&sense),
                    "bound_violations": bounds.violations,
                }),
                summary,
            ))
        }
        Command::Radii { params, tol } => {
            let p = resolve_params(params, None)?;
            let convex = radius_fully_convex(&p, *tol)?;
            let starlike = radius_fully_starlike(&p, *tol)?;
            let closed = starlike_radius_closed_form(&p);
            Ok(Reply::ok(
                json!({
                    "params": params_json(&p),
                    "r_c": convex.radius,
                    "r_s": starlike.radius,
                    "convex": to_value(&convex),
                    "starlike": to_value(&starlike),
                    "starlike_closed_form": closed,
                }),
                format!("r_c = {:.12}, r_s = {:.12}", convex.radius, starlike.radius),
            ))
        }
        Command::Growth {
            params,
            r,
            order,
            input,
            grid,
        } => {
            let loaded = input.as_deref().map(load_map).transpose()?;
            let p = resolve_params(params, loaded.as_ref().and_then(|l| l.params.as_ref()))?;
            let mut value = json!({"params": params_json(&p), "order": order});
            let mut summary = String::new();
            if let Some(r) = r {
                let upper = growth_upper(&p, *r, *order)?;
                let lower = growth_lower(&p, *r, *order)?;
                value["r"] = json!(r);
                value["upper"] = to_value(&upper);
                value["lower"] = to_value(&lower);
                summary = format!("{:.9} ≤ |f| ≤ {:.9} at |z| = {r}", lower.value, upper.value);
            }
            match loaded {
                Some(loaded) => {
                    let verdict = growth_envelope_check(&loaded.map, &p, &grid.grid(), *order)?;
                    summary.push_str(&format!(
                        " envelope {} (margin {:.3e})",
                        if verdict.holds {
                            "respected"
                        } else {
                            "VIOLATED"
                        },
                        verdict.margin
                    ));
                    value["envelope"] = to_value(&verdict);
                    Ok(Reply::verdict(verdict.holds, value, summary))
                }
                None if r.is_none() => Err(Error::InvalidArgument(
                    "growth needs --r, --in, or both".into(),
                )),
                None => Ok(Reply::ok(value, summary)),
            }
        }
        Command::Extremal {
            params,
            m,
            order,
            out,
        } => {
            let p = resolve_params(params, None)?;
            let mut meta = BTreeMap::new();
            let map = match (m, order) {
                (Some(m), None) => {
                    meta.insert("kind".to_string(), "extremal_single".to_string());
                    meta.insert("m".to_string(), m.to_string());
                    make_extremal_single(&p, *m)?
                }
                (None, Some(n)) => {
                    meta.insert("kind".to_string(), "extremal_full".to_string());
                    meta.insert("order".to_string(), n.to_string());
                    make_extremal_full(&p, *n)?
                }
                _ => {
                    return Err(Error::InvalidArgument(
                        "extremal needs exactly one of --m or --order".into(),
                    ))
                }
            };
            let doc = MapDocument::from_map(&map, Some(&p), Some(meta));
            let value = write_or_print(&doc, out.as_deref())?;
            Ok(Reply::ok(
                value,
                format!("extremal map of order {}", map.order()),
            ))
        }
        Command::Convolve {
            inputs,
            analytic,
            out,
        } => {
            let [first, second] = inputs.as_slice() else {
                return Err(Error::InvalidArgument(format!(
                    "convolve takes exactly two --in documents, got {}",
                    inputs.len()
                )));
            };
            let a = load_map(first)?;
            let b = load_map(second)?;
            let (map, kind) = if *analytic {
                (goodloe_product(&a.map, b.map.s())?, "goodloe_product")
            } else {
                (convolve_harmonic(&a.map, &b.map), "convolution")
            };
            let params = match (a.params, b.params) {
                (Some(pa), Some(pb)) if pa == pb => Some(pa),
                (Some(pa), None) => Some(pa),
                _ => None,
            };
            let meta = BTreeMap::from([("kind".to_string(), kind.to_string())]);
            let doc = LoadedMap {
                map,
                params,
                meta: Some(meta),
            }
            .to_document();
            let value = write_or_print(&doc, out.as_deref())?;
            Ok(Reply::ok(
                value,
                format!("{kind} of order {}", doc.s_coeffs.len() - 1),
            ))
        }
        Command::Oracle {
            input,
            params,
            property,
            tol,
            grid_angles,
        } => {
            let loaded = load_map(input)?;
            let property: CircleProperty = property.parse()?;
            let report = numeric_radius_oracle(&loaded.map, property, *tol, *grid_angles)?;
            let mut value = json!({"property": to_value(&property), "oracle": to_value(&report)});
            let mut summary = format!("numeric {property:?} radius {:.6}", report.radius);
            if let Some(p) = optional_params(params, loaded.params.as_ref())? {
                let class = match property {
                    CircleProperty::Starlike => radius_fully_starlike(&p, 1e-12)?,
                    CircleProperty::Convex => radius_fully_convex(&p, 1e-12)?,
                };
                value["class_radius"] = json!(class.radius);
                value["params"] = params_json(&p);
                summary.push_str(&format!(" (class radius {:.6})", class.radius));
            }
            Ok(Reply::ok(value, summary))
        }
        Command::Plot {
            input,
            radii,
            grid_angles,
            out,
        } => {
            let loaded = load_map(input)?;
            let f = &loaded.map;
            let mut polylines = Vec::with_capacity(radii.len());
            let mut circles = Vec::with_capacity(radii.len());
            for &r in radii {
                polylines.push(circle_image(f, r, *grid_angles)?);
                let starlike = starlike_on_circle(f, r, VERDICT_SAMPLES)
                    .map(|v| v.holds)
                    .unwrap_or(false);
                let convex = convex_on_circle(f, r, VERDICT_SAMPLES)
                    .map(|v| v.holds)
                    .unwrap_or(false);
                circles.push(json!({
                    "radius": r,
                    "starlike": starlike,
                    "convex": convex,
                    "injective": injective_on_circle(f, r, *grid_angles)?,
                }));
            }
            emit_svg(&polylines, out)?;
            Ok(Reply::ok(
                json!({"written": out.display().to_string(), "circles": circles}),
                format!("{} circle images written to {}", radii.len(), out.display()),
            ))
        }
        Command::Report {
            input,
            params,
            grid,
            n_eps,
            tol,
        } => {
            let loaded = load_map(input)?;
            let p = resolve_params(params, loaded.params.as_ref())?;
            let grid = grid.grid();
            let f = &loaded.map;
            let sampled = membership_sampled(f, &p, &grid)?;
            let oracle = |property| {
                numeric_radius_oracle(f, property, *tol, VERDICT_SAMPLES)
                    .map(|r| to_value(&r))
                    .unwrap_or_else(|e| json!({"error": e.to_string()}))
            };
            let convex = radius_fully_convex(&p, 1e-12)?;
            let starlike = radius_fully_starlike(&p, 1e-12)?;
            let value = json!({
                "params": params_json(&p),
                "order": f.order(),
                "holds": sampled.holds,
                "sampled": to_value(&sampled),
                "slices": to_value(&slice_membership_sampled(f, &p, *n_eps, &grid)?),
                "sufficient": to_value(&membership_sufficient(f, &p)),
                "sense_preserving": to_value(&f.sense_preserving_check(&grid)?),
                "bounds": to_value(&coefficient_bound_check(f, &p)),
                "growth_envelope": to_value(&growth_envelope_check(f, &p, &grid, crate::bounds::DEFAULT_GROWTH_TERMS)?),
                "class_radii": {"r_c": convex.radius, "r_s": starlike.radius},
                "oracle_radii": {
                    "starlike": oracle(CircleProperty::Starlike),
                    "convex": oracle(CircleProperty::Convex),
                },
            });
            let summary = format!(
                "membership {} (margin {:.3e}); class radii r_c = {:.6}, r_s = {:.6}",
                if sampled.holds {
                    "not falsified"
                } else {
                    "FAILS"
                },
                sampled.margin,
                convex.radius,
                starlike.radius
            );
            Ok(Reply::verdict(sampled.holds, value, summary))
        }
    }
}
