//! Experiment configuration, read from TOML.
//!
//! ```toml
//! seed = 7                      # master seed; task seeds are derived from it
//! output = "out"                # output directory
//! threads = 1                   # worker threads (0 = all cores)
//!
//! [tolerances]
//! pack = 1e-10                  # angle-sum target for packing
//! residual = 1e-7               # max tangency/containment residual accepted
//! vel = 1e-6                    # relative duality gap for VEL solves
//! check = 1e-6                  # slack allowed in the inequality checks
//!
//! [sampling]
//! full_below = 2000             # check every vertex below this size
//! uniform = 100                 # extra uniform vertices on larger maps
//!
//! [[corpus]]
//! kind = "wheel"                # wheel | stacked_wheel | mesh | hex | random | crt | file
//! sizes = [5, 7, 12]
//!
//! [[corpus]]
//! kind = "random"
//! sizes = [60, 120]
//! seeds = [1, 2, 3]
//! flips = 2                     # random edge flips per vertex after insertion
//!
//! [[corpus]]
//! kind = "crt"
//! gamma = 1.0
//! epsilon = 0.004
//! seeds = [1, 2]
//! sampler = "increments"        # increments | dyadic
//!
//! [scaling]
//! gammas = [0.5, 1.4142135623730951, 1.5]
//! epsilons = [0.015625, 0.0078125]
//! seeds = 10                    # successful windows per (gamma, epsilon)
//! max_attempts = 40
//! sampler = "dyadic"            # default here: one path per seed across epsilons
//! ```

use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use cpvel_core::crt::Sampler;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    #[serde(default = "default_output")]
    pub output: PathBuf,
    #[serde(default = "default_threads")]
    pub threads: usize,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub sampling: Sampling,
    #[serde(default)]
    pub corpus: Vec<CorpusSpec>,
    #[serde(default)]
    pub scaling: Option<ScalingSpec>,
}

fn default_output() -> PathBuf {
    PathBuf::from("out")
}

fn default_threads() -> usize {
    1
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub pack: f64,
    pub residual: f64,
    pub vel: f64,
    pub check: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { pack: 1e-10, residual: 1e-7, vel: 1e-6, check: 1e-6 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Sampling {
    pub full_below: usize,
    pub uniform: usize,
}

impl Default for Sampling {
    fn default() -> Self {
        Self { full_below: 2000, uniform: 100 }
    }
}

/// One corpus generator. Every entry expands to one map per size (and per
/// seed where seeds apply).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CorpusSpec {
    /// Wheel with `k` rim vertices.
    Wheel { sizes: Vec<usize> },
    /// `layers` concentric `k`-cycles around a hub.
    StackedWheel { sizes: Vec<usize>, layers: Vec<usize> },
    /// Triangle subdivided `n` times along each side.
    Mesh { sizes: Vec<usize> },
    /// Hexagonal patch of the triangular lattice with `n` rings.
    Hex { sizes: Vec<usize> },
    /// Random point insertion into a triangle, then random flips.
    Random {
        sizes: Vec<usize>,
        seeds: Vec<u64>,
        #[serde(default)]
        flips: usize,
    },
    /// Mated-CRT window triangulations.
    Crt {
        gamma: f64,
        epsilon: f64,
        seeds: Vec<u64>,
        #[serde(default = "default_horizon")]
        horizon: f64,
        #[serde(default)]
        window: Option<(f64, f64)>,
        #[serde(default = "default_inner_fraction")]
        inner_fraction: f64,
        #[serde(default = "default_oversample")]
        oversample: usize,
        #[serde(default)]
        sampler: SamplerKind,
    },
    /// Maps in the text exchange format (each must have a root line).
    File { paths: Vec<PathBuf> },
}

fn default_horizon() -> f64 {
    1.0
}

fn default_inner_fraction() -> f64 {
    0.5
}

fn default_oversample() -> usize {
    16
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalingSpec {
    pub gammas: Vec<f64>,
    /// Decreasing.
    pub epsilons: Vec<f64>,
    /// Number of successful windows wanted per `(gamma, epsilon)`.
    pub seeds: usize,
    #[serde(default = "default_max_attempts")]
    pub max_attempts: usize,
    #[serde(default = "default_horizon")]
    pub horizon: f64,
    #[serde(default = "default_inner_fraction")]
    pub inner_fraction: f64,
    #[serde(default = "default_oversample")]
    pub oversample: usize,
    #[serde(default = "default_scaling_sampler")]
    pub sampler: SamplerKind,
}

/// Trace sampler; `dyadic` couples runs that differ only in `epsilon`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplerKind {
    #[default]
    Increments,
    Dyadic,
}

impl From<SamplerKind> for Sampler {
    fn from(k: SamplerKind) -> Self {
        match k {
            SamplerKind::Increments => Sampler::Increments,
            SamplerKind::Dyadic => Sampler::Dyadic,
        }
    }
}

fn default_scaling_sampler() -> SamplerKind {
    SamplerKind::Dyadic
}

fn default_max_attempts() -> usize {
    40
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).context("parsing config")?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_toml(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn validate(&self) -> Result<()> {
        let t = &self.tolerances;
        for (name, x) in [("pack", t.pack), ("residual", t.residual), ("vel", t.vel), ("check", t.check)] {
            ensure!(x > 0.0, "tolerance {name} must be positive");
        }
        for spec in &self.corpus {
            spec.validate()?;
        }
        if let Some(s) = &self.scaling {
            s.validate()?;
        }
        Ok(())
    }
}

impl CorpusSpec {
    fn validate(&self) -> Result<()> {
        let nonempty = |name: &str, len: usize| -> Result<()> {
            ensure!(len > 0, "corpus entry {name} must be nonempty");
            Ok(())
        };
        match self {
            CorpusSpec::Wheel { sizes } => {
                nonempty("sizes", sizes.len())?;
                ensure!(sizes.iter().all(|&k| k >= 3), "wheels need at least 3 rim vertices");
            }
            CorpusSpec::StackedWheel { sizes, layers } => {
                nonempty("sizes", sizes.len())?;
                nonempty("layers", layers.len())?;
                ensure!(sizes.iter().all(|&k| k >= 3), "wheels need at least 3 rim vertices");
                ensure!(layers.iter().all(|&l| l >= 1), "stacked wheels need a layer");
            }
            CorpusSpec::Mesh { sizes } => {
                nonempty("sizes", sizes.len())?;
                ensure!(sizes.iter().all(|&n| n >= 3), "meshes need at least 3 subdivisions for an interior vertex");
            }
            CorpusSpec::Hex { sizes } => {
                nonempty("sizes", sizes.len())?;
                ensure!(sizes.iter().all(|&n| n >= 1), "sizes must be positive");
            }
            CorpusSpec::Random { sizes, seeds, .. } => {
                nonempty("sizes", sizes.len())?;
                nonempty("seeds", seeds.len())?;
                ensure!(sizes.iter().all(|&n| n >= 1), "random maps need an inserted point");
            }
            CorpusSpec::Crt { gamma, epsilon, seeds, horizon, inner_fraction, oversample, window, .. } => {
                nonempty("seeds", seeds.len())?;
                ensure!(*gamma > 0.0 && *gamma < 2.0, "gamma must lie in (0, 2)");
                ensure!(*epsilon > 0.0 && *horizon > 0.0, "epsilon and horizon must be positive");
                ensure!(*inner_fraction > 0.0 && *inner_fraction < 1.0, "inner fraction must lie in (0, 1)");
                ensure!(*oversample >= 1, "oversample must be at least 1");
                if let Some((a, b)) = window {
                    ensure!(a < b, "window must be an increasing interval");
                }
            }
            CorpusSpec::File { paths } => nonempty("paths", paths.len())?,
        }
        Ok(())
    }
}

impl ScalingSpec {
    fn validate(&self) -> Result<()> {
        ensure!(!self.gammas.is_empty() && !self.epsilons.is_empty(), "scaling lists must be nonempty");
        ensure!(self.seeds > 0 && self.max_attempts >= self.seeds, "need 0 < seeds <= max_attempts");
        if self.gammas.iter().any(|&g| !(g > 0.0 && g < 2.0)) {
            bail!("gammas must lie in (0, 2)");
        }
        ensure!(self.epsilons.iter().all(|&e| e > 0.0), "epsilons must be positive");
        ensure!(self.epsilons.windows(2).all(|w| w[0] > w[1]), "epsilons must be decreasing");
        ensure!(self.horizon > 0.0, "horizon must be positive");
        ensure!(self.inner_fraction > 0.0 && self.inner_fraction < 1.0, "inner fraction must lie in (0, 1)");
        Ok(())
    }
}
