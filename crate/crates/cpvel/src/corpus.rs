//! Expands corpus specifications into rooted triangulations.
//!
//! Every map is written to the text format and parsed back before use, so
//! the vertex numbering seen by the solvers is the one any later reader of
//! the dumped map file gets.

use anyhow::{anyhow, Context, Result};
use cpvel_core::crt::{CorrelatedTrace, CrtError, MatedCrtMap, Sampler, TraceParams};
use cpvel_core::generate::{hex_disk, random_flips, random_insertion, stacked_wheel, triangle_mesh, wheel};
use cpvel_core::rng::rng_from_seed;
use cpvel_core::RootedTriangulation;

use crate::config::CorpusSpec;
use crate::format::{read_map, read_map_file, write_rooted};

/// A corpus member in canonical form.
#[derive(Debug, Clone)]
pub struct CorpusMap {
    pub name: String,
    pub tri: RootedTriangulation,
    /// The map in the text exchange format.
    pub text: String,
}

/// A corpus member that could not be produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusFailure {
    pub name: String,
    pub reason: String,
    /// Expected outcome of a random window (root on the boundary or cut off)
    /// rather than a malfunction.
    pub benign: bool,
}

pub fn canonical(name: String, tri: &RootedTriangulation) -> Result<CorpusMap> {
    let text = write_rooted(tri);
    let tri = read_map(&text)?.rooted().with_context(|| format!("re-reading {name}"))?;
    Ok(CorpusMap { name, tri, text })
}

/// Mated-CRT window triangulation for one seed.
pub fn crt_window(
    gamma: f64,
    epsilon: f64,
    horizon: f64,
    oversample: usize,
    seed: u64,
    window: Option<(f64, f64)>,
    inner_fraction: f64,
    sampler: Sampler,
) -> Result<RootedTriangulation, CrtError> {
    let params = TraceParams { oversample, sampler, ..TraceParams::new(gamma, epsilon, horizon, seed) };
    let trace = CorrelatedTrace::sample(&params)?;
    let window = window.unwrap_or((-horizon + epsilon, horizon));
    MatedCrtMap::build(&trace, window)?.window_triangulation(inner_fraction)
}

/// Builds every map named by `specs`, in specification order.
pub fn build_corpus(specs: &[CorpusSpec]) -> (Vec<CorpusMap>, Vec<CorpusFailure>) {
    let mut maps = Vec::new();
    let mut failures = Vec::new();
    let mut push = |name: String, made: Result<RootedTriangulation>, benign: bool| match made
        .and_then(|tri| canonical(name.clone(), &tri))
    {
        Ok(m) => maps.push(m),
        Err(e) => failures.push(CorpusFailure { name, reason: format!("{e:#}"), benign }),
    };
    for spec in specs {
        match spec {
            CorpusSpec::Wheel { sizes } => {
                for &k in sizes {
                    push(format!("wheel-{k}"), Ok(wheel(k)), false);
                }
            }
            CorpusSpec::StackedWheel { sizes, layers } => {
                for &k in sizes {
                    for &l in layers {
                        push(format!("stacked-{k}x{l}"), Ok(stacked_wheel(k, l)), false);
                    }
                }
            }
            CorpusSpec::Mesh { sizes } => {
                for &n in sizes {
                    push(format!("mesh-{n}"), Ok(triangle_mesh(n)), false);
                }
            }
            CorpusSpec::Hex { sizes } => {
                for &n in sizes {
                    push(format!("hex-{n}"), Ok(hex_disk(n)), false);
                }
            }
            CorpusSpec::Random { sizes, seeds, flips } => {
                for &n in sizes {
                    for &seed in seeds {
                        let mut rng = rng_from_seed(seed);
                        let mut tri = random_insertion(n, &mut rng);
                        if *flips > 0 {
                            tri = random_flips(&tri, flips * tri.num_vertices(), &mut rng);
                        }
                        push(format!("random-{n}-f{flips}-s{seed}"), Ok(tri), false);
                    }
                }
            }
            CorpusSpec::Crt { gamma, epsilon, seeds, horizon, window, inner_fraction, oversample, sampler } => {
                for &seed in seeds {
                    let name = format!("crt-g{gamma}-e{epsilon}-s{seed}");
                    let made = crt_window(
                        *gamma,
                        *epsilon,
                        *horizon,
                        *oversample,
                        seed,
                        *window,
                        *inner_fraction,
                        (*sampler).into(),
                    );
                    let benign = matches!(made, Err(CrtError::WindowTooSmall));
                    push(name, made.map_err(|e| anyhow!(e)), benign);
                }
            }
            CorpusSpec::File { paths } => {
                for path in paths {
                    let name = path.file_stem().map_or_else(|| "map".into(), |s| s.to_string_lossy().into_owned());
                    push(name, read_map_file(path).and_then(|f| f.rooted()), false);
                }
            }
        }
    }
    (maps, failures)
}
