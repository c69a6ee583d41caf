use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use cpvel::config::ExperimentConfig;
use cpvel::format::{read_map_file, read_packing, write_map, write_metric, write_packing, write_rooted, write_trace};
use cpvel::harness::{run_thm1, run_thm2, verify, Summary};
use cpvel::scaling::run_scaling;
use cpvel::svg::{render_packing, RenderOptions};
use cpvel_core::crt::{CorrelatedTrace, MatedCrtMap, Sampler, TraceParams};
use cpvel_core::pack::{pack_in_disk, PackOptions};
use cpvel_core::vel::{vel_exact, VelOptions};
use cpvel_core::PathFamily;

#[derive(Parser)]
#[command(name = "cpvel", version, about = "Circle packings, vertex extremal length and mated-CRT maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pack a rooted triangulation in the unit disk.
    Pack {
        /// Map file with a root line.
        map: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 200)]
        max_iters: usize,
        /// Packing CSV (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also render the packing.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Vertex extremal length of the winding and boundary families.
    Vel {
        map: PathBuf,
        /// Vertex labels (all vertices when omitted).
        #[arg(long, value_delimiter = ',')]
        vertex: Vec<u32>,
        #[arg(long, value_enum, default_value_t = FamilyArg::Both)]
        family: FamilyArg,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 3)]
        sheets: usize,
        /// Directory for optimal metrics, one `vertex,m` CSV per row.
        #[arg(long)]
        metrics: Option<PathBuf>,
    },
    /// Sample a correlated trace and build a mated-CRT window.
    GenCrt {
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 1.0)]
        horizon: f64,
        #[arg(long, default_value_t = 16)]
        oversample: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Midpoint-refinement sampler (needs horizon * oversample / eps = 2^m).
        #[arg(long)]
        dyadic: bool,
        /// Time window `a,b` (default: the whole trace).
        #[arg(long, value_delimiter = ',', num_args = 2)]
        window: Option<Vec<f64>>,
        /// Seeds for the block search: vertices within this fraction of the
        /// window around its center.
        #[arg(long, default_value_t = 0.5)]
        inner_fraction: f64,
        /// Emit the raw window map instead of the rooted triangulation.
        #[arg(long)]
        raw: bool,
        /// Map file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Dump the trace as CSV.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Check the radius upper bounds on extremal length over a corpus.
    Thm1 {
        config: PathBuf,
        /// Output directory (overrides the config).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the extremal length lower bound from the largest radius.
    Thm2 {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Largest radius of packed mated-CRT windows against the mesh size.
    Scaling {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute every row of a thm1/thm2 run from its artifacts.
    Verify { dir: PathBuf },
    /// Render a packing CSV as SVG.
    Render {
        map: PathBuf,
        packing: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 800.0)]
        size: f64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Winding,
    Boundary,
    Both,
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn load_config(path: &Path, out: Option<PathBuf>) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::load(path)?;
    if let Some(out) = out {
        cfg.output = out;
    }
    Ok(cfg)
}

fn report(name: &str, s: &Summary, dir: &Path) -> ExitCode {
    eprintln!(
        "{name}: {} maps ({} skipped, {} failed), {} rows, {} passed, {} failed, {} errors, worst slack {}; artifacts in {}",
        s.maps,
        s.maps_skipped,
        s.maps_failed,
        s.rows,
        s.passed,
        s.failed,
        s.errors,
        s.worst_slack.map_or("n/a".into(), |w| format!("{w:.6e}")),
        dir.display()
    );
    if s.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Pack { map, tol, max_iters, out, svg } => {
            let tri = read_map_file(&map)?.rooted()?;
            let opts = PackOptions { tol, max_iters, ..PackOptions::default() };
            let p = pack_in_disk(&tri, &opts)?;
            write_packing(output(out.as_deref())?, &tri, &p)?;
            if let Some(svg) = svg {
                let opts = RenderOptions { highlight: Some(tri.root()), ..RenderOptions::default() };
                fs::write(&svg, render_packing(&p, &opts))?;
            }
            eprintln!("packed {} vertices, residual {:e}", tri.num_vertices(), p.check(&tri).max());
        }
        Command::Vel { map, vertex, family, tol, sheets, metrics } => {
            let tri = read_map_file(&map)?.rooted()?;
            let vertices: Vec<usize> = if vertex.is_empty() {
                (0..tri.num_vertices()).collect()
            } else {
                vertex
                    .iter()
                    .map(|&l| tri.vertex_by_label(l).ok_or_else(|| anyhow!("no vertex labelled {l}")))
                    .collect::<Result<_>>()?
            };
            if let Some(dir) = &metrics {
                fs::create_dir_all(dir)?;
            }
            let opts = VelOptions { tol, sheets, ..VelOptions::default() };
            let mut out = csv::Writer::from_writer(io::stdout().lock());
            out.write_record(["vertex", "family", "vel", "area", "iters", "gap"])?;
            for v in vertices {
                let mut fams = Vec::new();
                if family != FamilyArg::Boundary {
                    fams.push(PathFamily::Winding { root: tri.root(), v });
                }
                if family != FamilyArg::Winding {
                    fams.push(PathFamily::Boundary(v));
                }
                for fam in fams {
                    let r = vel_exact(&tri, fam, &opts).with_context(|| format!("vertex {}", tri.label(v)))?;
                    out.serialize((tri.label(v), fam.name(), r.value, r.metric.area(), r.iterations, r.gap))?;
                    if let Some(dir) = &metrics {
                        let f = fs::File::create(dir.join(format!("{}-{}.csv", tri.label(v), fam.name())))?;
                        write_metric(BufWriter::new(f), &tri, &r.metric.m)?;
                    }
                }
            }
            out.flush()?;
        }
        Command::GenCrt { gamma, eps, horizon, oversample, seed, dyadic, window, inner_fraction, raw, out, trace } => {
            let sampler = if dyadic { Sampler::Dyadic } else { Sampler::Increments };
            let params = TraceParams { oversample, sampler, ..TraceParams::new(gamma, eps, horizon, seed) };
            let tr = CorrelatedTrace::sample(&params)?;
            if let Some(path) = trace {
                write_trace(BufWriter::new(fs::File::create(&path)?), &params, &tr)?;
            }
            let window = match window.as_deref() {
                Some(&[a, b]) => (a, b),
                Some(_) => bail!("--window takes two values"),
                None => (-horizon + eps, horizon),
            };
            let m = MatedCrtMap::build(&tr, window)?;
            let text = if raw {
                write_map(m.map(), m.origin_vertex().map(|v| v as u32))
            } else {
                write_rooted(&m.window_triangulation(inner_fraction)?)
            };
            output(out.as_deref())?.write_all(text.as_bytes())?;
        }
        Command::Thm1 { config, out } => {
            let cfg = load_config(&config, out)?;
            let r = run_thm1(&cfg, Some(&cfg.output))?;
            return Ok(report("thm1", &r.summary, &cfg.output));
        }
        Command::Thm2 { config, out } => {
            let cfg = load_config(&config, out)?;
            let r = run_thm2(&cfg, Some(&cfg.output))?;
            return Ok(report("thm2", &r.summary, &cfg.output));
        }
        Command::Scaling { config, out } => {
            let cfg = load_config(&config, out)?;
            let r = run_scaling(&cfg, Some(&cfg.output))?;
            for f in &r.summary.fits {
                eprintln!(
                    "gamma {}: medians {:?}, non-increasing {}, slope {:.4}, C {:.4}",
                    f.gamma, f.medians, f.non_increasing, f.slope, f.c_through_origin
                );
            }
            eprintln!(
                "scaling: {} rows, {} failed attempts, {} short cells",
                r.rows.len(),
                r.failures.len(),
                r.summary.short_cells
            );
            return Ok(if r.summary.ok() { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
        Command::Verify { dir } => {
            let r = verify(&dir)?;
            for d in &r.details {
                eprintln!("mismatch: {d}");
            }
            eprintln!("verify: {} rows, {} mismatches", r.rows, r.mismatches);
            return Ok(if r.mismatches == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
        Command::Render { map, packing, out, size } => {
            let tri = read_map_file(&map)?.rooted()?;
            let p = read_packing(fs::File::open(&packing)?, &tri, Some(tri.root()))?;
            let opts = RenderOptions { size, highlight: Some(tri.root()), ..RenderOptions::default() };
            fs::write(&out, render_packing(&p, &opts))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
