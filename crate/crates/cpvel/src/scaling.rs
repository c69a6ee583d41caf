//! Largest circle radius of packed mated-CRT windows as the mesh size
//! shrinks.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use cpvel_core::crt::CrtError;
use cpvel_core::pack::{pack_in_disk, PackOptions};
use cpvel_core::rng::derive_seed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, ScalingSpec};
use crate::corpus::crt_window;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingRow {
    pub gamma: f64,
    pub eps: f64,
    pub seed: u64,
    pub n_vertices: usize,
    pub max_rad: f64,
}

/// An attempt that produced no row. `reason` is a short code:
/// `window_too_small`, `trace`, `pack` or `residual`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingFailure {
    pub gamma: f64,
    pub eps: f64,
    pub seed: u64,
    pub reason: String,
    pub detail: String,
}

/// Per-gamma fit of `max_rad = intercept + slope / log(1 / eps)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaFit {
    pub gamma: f64,
    pub eps: Vec<f64>,
    pub medians: Vec<f64>,
    pub counts: Vec<usize>,
    pub non_increasing: bool,
    pub slope: f64,
    pub intercept: f64,
    /// Least-squares `C` for `max_rad = C / log(1 / eps)` (no intercept).
    pub c_through_origin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingSummary {
    pub seed: u64,
    pub rows: usize,
    pub failures: usize,
    /// `(gamma, eps)` cells with fewer rows than requested.
    pub short_cells: usize,
    pub fits: Vec<GammaFit>,
}

impl ScalingSummary {
    pub fn ok(&self) -> bool {
        self.short_cells == 0 && self.fits.iter().all(|f| f.non_increasing && f.slope > 0.0)
    }
}

#[derive(Debug, Clone)]
pub struct ScalingReport {
    pub rows: Vec<ScalingRow>,
    pub failures: Vec<ScalingFailure>,
    pub summary: ScalingSummary,
}

pub fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        f64::NAN
    } else if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Ordinary least squares `y = a + b x`; returns `(b, a)`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let b = sxy / sxx;
    (b, my - b * mx)
}

fn attempt(
    spec: &ScalingSpec,
    pack: &PackOptions,
    residual_tol: f64,
    gamma: f64,
    eps: f64,
    seed: u64,
) -> Result<ScalingRow, ScalingFailure> {
    let fail = |reason: &str, detail: String| ScalingFailure { gamma, eps, seed, reason: reason.into(), detail };
    let tri = match crt_window(
        gamma,
        eps,
        spec.horizon,
        spec.oversample,
        seed,
        None,
        spec.inner_fraction,
        spec.sampler.into(),
    ) {
        Ok(t) => t,
        Err(CrtError::WindowTooSmall) => return Err(fail("window_too_small", "root on the window boundary".into())),
        Err(e) => return Err(fail("trace", e.to_string())),
    };
    let p = pack_in_disk(&tri, pack).map_err(|e| fail("pack", e.to_string()))?;
    let residual = p.check(&tri).max();
    if !(residual <= residual_tol) {
        return Err(fail("residual", format!("{residual:e}")));
    }
    Ok(ScalingRow { gamma, eps, seed, n_vertices: tri.num_vertices(), max_rad: p.max_radius() })
}

/// Seeds `derive_seed(master, i)` for `i = 0, 1, ...` are tried in turn; a
/// seed is kept only when its window packs at every epsilon of the ladder, so
/// all medians of one gamma are taken over the same traces.
fn run_gamma(
    spec: &ScalingSpec,
    master: u64,
    pack: &PackOptions,
    residual_tol: f64,
    gamma: f64,
) -> (Vec<ScalingRow>, Vec<ScalingFailure>) {
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    let mut kept = 0;
    for i in 0..spec.max_attempts {
        if kept == spec.seeds {
            break;
        }
        let seed = derive_seed(master, i as u64);
        let mut ladder = Vec::with_capacity(spec.epsilons.len());
        for &eps in &spec.epsilons {
            match attempt(spec, pack, residual_tol, gamma, eps, seed) {
                Ok(row) => ladder.push(row),
                Err(f) => {
                    failures.push(f);
                    break;
                }
            }
        }
        if ladder.len() == spec.epsilons.len() {
            rows.extend(ladder);
            kept += 1;
        }
    }
    (rows, failures)
}

fn fit(spec: &ScalingSpec, gamma: f64, rows: &[ScalingRow]) -> GammaFit {
    let mine: Vec<&ScalingRow> = rows.iter().filter(|r| r.gamma == gamma).collect();
    let mut medians = Vec::new();
    let mut counts = Vec::new();
    for &eps in &spec.epsilons {
        let xs: Vec<f64> = mine.iter().filter(|r| r.eps == eps).map(|r| r.max_rad).collect();
        counts.push(xs.len());
        medians.push(median(&xs));
    }
    let non_increasing = medians.windows(2).all(|w| w[1] <= w[0]);
    let x: Vec<f64> = mine.iter().map(|r| 1.0 / (1.0 / r.eps).ln()).collect();
    let y: Vec<f64> = mine.iter().map(|r| r.max_rad).collect();
    let (slope, intercept) = linear_fit(&x, &y);
    let c_through_origin = x.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>() / x.iter().map(|a| a * a).sum::<f64>();
    GammaFit { gamma, eps: spec.epsilons.clone(), medians, counts, non_increasing, slope, intercept, c_through_origin }
}

/// Runs the experiment in `cfg.scaling`, one gamma per task.
pub fn run_scaling(cfg: &ExperimentConfig, dir: Option<&Path>) -> Result<ScalingReport> {
    let spec = cfg.scaling.as_ref().context("config has no [scaling] section")?;
    let pack = PackOptions { tol: cfg.tolerances.pack, ..PackOptions::default() };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build()?;
    let results: Vec<(Vec<ScalingRow>, Vec<ScalingFailure>)> = pool.install(|| {
        spec.gammas.par_iter().map(|&g| run_gamma(spec, cfg.seed, &pack, cfg.tolerances.residual, g)).collect()
    });
    let short_cells =
        results.iter().filter(|(r, _)| r.len() < spec.seeds * spec.epsilons.len()).count() * spec.epsilons.len();
    let rows: Vec<ScalingRow> = results.iter().flat_map(|(r, _)| r.iter().cloned()).collect();
    let failures: Vec<ScalingFailure> = results.into_iter().flat_map(|(_, f)| f).collect();
    let fits = spec.gammas.iter().map(|&g| fit(spec, g, &rows)).collect();
    let summary = ScalingSummary { seed: cfg.seed, rows: rows.len(), failures: failures.len(), short_cells, fits };
    if let Some(dir) = dir {
        fs::create_dir_all(dir)?;
        let mut w = csv::Writer::from_path(dir.join("scaling.csv"))?;
        for r in &rows {
            w.serialize(r)?;
        }
        w.flush()?;
        let mut w = csv::Writer::from_path(dir.join("scaling_failures.csv"))?;
        for f in &failures {
            w.serialize(f)?;
        }
        w.flush()?;
        let mut text = serde_json::to_string_pretty(&summary)?;
        text.push('\n');
        fs::write(dir.join("scaling_summary.json"), text)?;
    }
    Ok(ScalingReport { rows, failures, summary })
}
