//! Theorem-check suites over a corpus, with replayable artifacts.
//!
//! A run writes, under its output directory,
//!
//! * `rows.csv`: one row per checked (map, vertex),
//! * `summary.json`: totals and per-map information,
//! * `maps/<name>.map`, `maps/<name>.packing.csv`, `maps/<name>.metrics.csv`:
//!   the map, its root-normalized packing and the metric behind every VEL
//!   value in `rows.csv`.
//!
//! [`verify`] recomputes every row from those artifacts alone.

use std::collections::BTreeMap;
use std::fs;
use std::io::BufWriter;
use std::path::Path;

use anyhow::{bail, Context, Result};
use cpvel_core::pack::{pack_in_disk, PackOptions};
use cpvel_core::rng::{derive_seed, rng_from_seed};
use cpvel_core::vel::{annulus_bound_for_packing, metric_value, vel_exact, VelOptions};
use cpvel_core::{Packing, PathFamily, RootedTriangulation, VertexMetric};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, Sampling};
use crate::corpus::{build_corpus, CorpusFailure, CorpusMap};
use crate::format::{read_map_file, read_packing, write_packing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    Thm1,
    Thm2,
}

/// Thm1 row: upper bounds on both extremal lengths from the circle radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Thm1Row {
    pub map: String,
    pub vertex: u32,
    pub rad: Option<f64>,
    pub vel_w: Option<f64>,
    pub vel_b: Option<f64>,
    pub upper_w: Option<f64>,
    pub upper_b: Option<f64>,
    pub sheets_w: Option<usize>,
    pub sheets_b: Option<usize>,
    pub bound_w: Option<f64>,
    pub bound_b: Option<f64>,
    pub pass_w: bool,
    pub pass_b: bool,
    pub status: String,
}

/// Thm2 row: a lower bound on the larger extremal length from the largest
/// radius in the packing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Thm2Row {
    pub map: String,
    pub vertex: u32,
    pub rad: Option<f64>,
    pub eps: Option<f64>,
    pub k: Option<i64>,
    pub target: Option<f64>,
    pub vel_w: Option<f64>,
    pub vel_b: Option<f64>,
    pub sheets_w: Option<usize>,
    pub sheets_b: Option<usize>,
    pub annulus: Option<f64>,
    pub annulus_family: Option<String>,
    pub pass: bool,
    pub sanity: bool,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapInfo {
    pub name: String,
    pub vertices: usize,
    pub checked: usize,
    pub max_radius: Option<f64>,
    pub residual: Option<f64>,
    /// Thm2 only: `floor(log2(1 / (5 eps))) - 2`.
    pub k: Option<i64>,
    /// Thm2 only: `k < 1`, nothing to check.
    pub vacuous: bool,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub theorem: Theorem,
    pub seed: u64,
    pub vel_tol: f64,
    pub check_tol: f64,
    pub residual_tol: f64,
    pub maps: usize,
    pub maps_skipped: usize,
    pub maps_failed: usize,
    pub rows: usize,
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub pass_rate: Option<f64>,
    /// Thm1: smallest `bound - vel` over both families. Thm2: smallest
    /// `max(vel_w, vel_b) - target`.
    pub worst_slack: Option<f64>,
    /// Thm2: rows whose annulus bound exceeds the computed value.
    pub sanity_failures: usize,
    pub max_residual: Option<f64>,
    pub map_info: Vec<MapInfo>,
    pub skipped: Vec<SkippedMap>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedMap {
    pub name: String,
    pub reason: String,
}

impl Summary {
    /// True when every check passed and nothing errored.
    pub fn ok(&self) -> bool {
        self.failed == 0 && self.errors == 0 && self.maps_failed == 0 && self.sanity_failures == 0
    }
}

/// Everything a suite run produced.
#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub thm1: Vec<Thm1Row>,
    pub thm2: Vec<Thm2Row>,
    pub summary: Summary,
}

/// Dumped metric entry: `m[u]` of the metric certifying `family` at `vertex`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct MetricEntry {
    vertex: u32,
    family: String,
    u: u32,
    m: f64,
}

/// Vertices checked on `tri`: all of them below `full_below`, otherwise the
/// outer vertices and their neighbors, the root, and `uniform` further
/// vertices drawn without replacement.
pub fn sample_vertices(tri: &RootedTriangulation, s: &Sampling, seed: u64) -> Vec<usize> {
    let n = tri.num_vertices();
    if n < s.full_below {
        return (0..n).collect();
    }
    let mut chosen = vec![false; n];
    for &b in tri.outer_cycle() {
        chosen[b] = true;
        for &u in tri.neighbors(b) {
            chosen[u] = true;
        }
    }
    chosen[tri.root()] = true;
    let rest: Vec<usize> = (0..n).filter(|&v| !chosen[v]).collect();
    let mut rng = rng_from_seed(seed);
    for i in rand::seq::index::sample(&mut rng, rest.len(), s.uniform.min(rest.len())) {
        chosen[rest[i]] = true;
    }
    (0..n).filter(|&v| chosen[v]).collect()
}

pub fn thm1_bounds(rad: f64) -> (f64, f64) {
    (4.0 / rad, 1.0 + 0.5 * (1.0 / rad).ln())
}

/// `floor(log2(1 / (5 eps))) - 2`.
pub fn annuli_count(eps: f64) -> i64 {
    (1.0 / (5.0 * eps)).log2().floor() as i64 - 2
}

/// Slack added to the annulus sanity check for the solver's relative gap.
fn sanity_ok(annulus: f64, vel: f64, vel_tol: f64, check: f64) -> bool {
    annulus <= vel + vel_tol * vel.max(1.0) + check
}

struct MapRun<R> {
    rows: Vec<R>,
    info: MapInfo,
    packing: Option<Packing>,
    metrics: Vec<MetricEntry>,
}

fn pack_opts(cfg: &ExperimentConfig) -> PackOptions {
    PackOptions { tol: cfg.tolerances.pack, ..PackOptions::default() }
}

fn metric_entries(cm: &CorpusMap, v: usize, family: &str, m: &VertexMetric, out: &mut Vec<MetricEntry>) {
    for (u, &x) in m.m.iter().enumerate() {
        if x != 0.0 {
            out.push(MetricEntry { vertex: cm.tri.label(v), family: family.into(), u: cm.tri.label(u), m: x });
        }
    }
}

fn pack_map(cm: &CorpusMap, cfg: &ExperimentConfig) -> Result<(Packing, f64), String> {
    let p = pack_in_disk(&cm.tri, &pack_opts(cfg)).map_err(|e| format!("packing failed: {e}"))?;
    let residual = p.check(&cm.tri).max();
    if !(residual <= cfg.tolerances.residual) {
        return Err(format!("packing residual {residual:e} above {:e}", cfg.tolerances.residual));
    }
    Ok((p, residual))
}

fn run_thm1_map(cm: &CorpusMap, index: usize, cfg: &ExperimentConfig) -> MapRun<Thm1Row> {
    let tri = &cm.tri;
    let mut info = MapInfo {
        name: cm.name.clone(),
        vertices: tri.num_vertices(),
        checked: 0,
        max_radius: None,
        residual: None,
        k: None,
        vacuous: false,
        status: "ok".into(),
    };
    let (p, residual) = match pack_map(cm, cfg) {
        Ok(x) => x,
        Err(e) => {
            info.status = e;
            return MapRun { rows: Vec::new(), info, packing: None, metrics: Vec::new() };
        }
    };
    info.max_radius = Some(p.max_radius());
    info.residual = Some(residual);
    let opts = VelOptions { tol: cfg.tolerances.vel, ..VelOptions::default() };
    let mut rows = Vec::new();
    let mut metrics = Vec::new();
    for v in sample_vertices(tri, &cfg.sampling, derive_seed(cfg.seed, index as u64)) {
        let rad = p.radius(v);
        let (bound_w, bound_b) = thm1_bounds(rad);
        let w = vel_exact(tri, PathFamily::Winding { root: tri.root(), v }, &opts);
        let b = vel_exact(tri, PathFamily::Boundary(v), &opts);
        let mut row = Thm1Row {
            map: cm.name.clone(),
            vertex: tri.label(v),
            rad: Some(rad),
            vel_w: None,
            vel_b: None,
            upper_w: None,
            upper_b: None,
            sheets_w: None,
            sheets_b: None,
            bound_w: Some(bound_w),
            bound_b: Some(bound_b),
            pass_w: false,
            pass_b: false,
            status: "ok".into(),
        };
        match (w, b) {
            (Ok(w), Ok(b)) => {
                row.vel_w = Some(w.value);
                row.vel_b = Some(b.value);
                row.upper_w = Some(w.upper);
                row.upper_b = Some(b.upper);
                row.sheets_w = Some(w.sheets);
                row.sheets_b = Some(b.sheets);
                row.pass_w = w.value <= bound_w + cfg.tolerances.check;
                row.pass_b = b.value <= bound_b + cfg.tolerances.check;
                metric_entries(cm, v, "winding", &w.metric, &mut metrics);
                metric_entries(cm, v, "boundary", &b.metric, &mut metrics);
            }
            (Err(e), _) => row.status = format!("winding: {e}"),
            (_, Err(e)) => row.status = format!("boundary: {e}"),
        }
        rows.push(row);
    }
    info.checked = rows.len();
    MapRun { rows, info, packing: Some(p), metrics }
}

fn run_thm2_map(cm: &CorpusMap, index: usize, cfg: &ExperimentConfig) -> MapRun<Thm2Row> {
    let tri = &cm.tri;
    let mut info = MapInfo {
        name: cm.name.clone(),
        vertices: tri.num_vertices(),
        checked: 0,
        max_radius: None,
        residual: None,
        k: None,
        vacuous: false,
        status: "ok".into(),
    };
    let (p, residual) = match pack_map(cm, cfg) {
        Ok(x) => x,
        Err(e) => {
            info.status = e;
            return MapRun { rows: Vec::new(), info, packing: None, metrics: Vec::new() };
        }
    };
    let eps = p.max_radius();
    let k = annuli_count(eps);
    info.max_radius = Some(eps);
    info.residual = Some(residual);
    info.k = Some(k);
    if k < 1 {
        info.vacuous = true;
        return MapRun { rows: Vec::new(), info, packing: Some(p), metrics: Vec::new() };
    }
    let target = k as f64 / 400.0;
    let mut rows = Vec::new();
    let mut metrics = Vec::new();
    for v in sample_vertices(tri, &cfg.sampling, derive_seed(cfg.seed, index as u64)) {
        let mut row = Thm2Row {
            map: cm.name.clone(),
            vertex: tri.label(v),
            rad: Some(p.radius(v)),
            eps: Some(eps),
            k: Some(k),
            target: Some(target),
            vel_w: None,
            vel_b: None,
            sheets_w: None,
            sheets_b: None,
            annulus: None,
            annulus_family: None,
            pass: false,
            sanity: false,
            status: "ok".into(),
        };
        let (fam, bound) = match annulus_bound_for_packing(tri, &p, tri.root(), v) {
            Ok(x) => x,
            Err(e) => {
                row.status = format!("annulus: {e}");
                rows.push(row);
                continue;
            }
        };
        // The family carrying the annulus metric runs until it also clears
        // the annulus value, so the sanity check compares like with like.
        let stop = |f: PathFamily| {
            let floor = if f == fam { target.max(bound.value) } else { target };
            VelOptions { tol: cfg.tolerances.vel, stop_above: Some(floor), ..VelOptions::default() }
        };
        let wf = PathFamily::Winding { root: tri.root(), v };
        let bf = PathFamily::Boundary(v);
        let w = vel_exact(tri, wf, &stop(wf));
        let b = vel_exact(tri, bf, &stop(bf));
        row.annulus = Some(bound.value);
        row.annulus_family = Some(fam.name().into());
        match (w, b) {
            (Ok(w), Ok(b)) => {
                row.vel_w = Some(w.value);
                row.vel_b = Some(b.value);
                row.sheets_w = Some(w.sheets);
                row.sheets_b = Some(b.sheets);
                row.pass = w.value.max(b.value) >= target;
                let vel = if fam == wf { w.value } else { b.value };
                row.sanity = sanity_ok(bound.value, vel, cfg.tolerances.vel, cfg.tolerances.check);
                metric_entries(cm, v, "winding", &w.metric, &mut metrics);
                metric_entries(cm, v, "boundary", &b.metric, &mut metrics);
            }
            (Err(e), _) => row.status = format!("winding: {e}"),
            (_, Err(e)) => row.status = format!("boundary: {e}"),
        }
        rows.push(row);
    }
    info.checked = rows.len();
    MapRun { rows, info, packing: Some(p), metrics }
}

fn pool(threads: usize) -> Result<rayon::ThreadPool> {
    Ok(rayon::ThreadPoolBuilder::new().num_threads(threads).build()?)
}

fn skipped(failures: &[CorpusFailure]) -> (Vec<SkippedMap>, usize) {
    let hard = failures.iter().filter(|f| !f.benign).count();
    (failures.iter().map(|f| SkippedMap { name: f.name.clone(), reason: f.reason.clone() }).collect(), hard)
}

fn write_artifacts<R>(dir: &Path, maps: &[CorpusMap], runs: &[MapRun<R>]) -> Result<()> {
    let mdir = dir.join("maps");
    fs::create_dir_all(&mdir).with_context(|| format!("creating {}", mdir.display()))?;
    for (cm, run) in maps.iter().zip(runs) {
        fs::write(mdir.join(format!("{}.map", cm.name)), &cm.text)?;
        if let Some(p) = &run.packing {
            let f = fs::File::create(mdir.join(format!("{}.packing.csv", cm.name)))?;
            write_packing(BufWriter::new(f), &cm.tri, p)?;
        }
        let f = fs::File::create(mdir.join(format!("{}.metrics.csv", cm.name)))?;
        let mut w = csv::Writer::from_writer(BufWriter::new(f));
        for e in &run.metrics {
            w.serialize(e)?;
        }
        w.flush()?;
    }
    Ok(())
}

fn write_rows<R: Serialize>(path: &Path, rows: &[R]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn write_summary(path: &Path, s: &Summary) -> Result<()> {
    let mut text = serde_json::to_string_pretty(s)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn min_opt(acc: Option<f64>, x: f64) -> Option<f64> {
    Some(acc.map_or(x, |a| a.min(x)))
}

fn base_summary(theorem: Theorem, cfg: &ExperimentConfig, infos: Vec<MapInfo>, failures: &[CorpusFailure]) -> Summary {
    let (skipped, hard) = skipped(failures);
    let maps_failed = hard + infos.iter().filter(|i| i.status != "ok").count();
    let max_residual =
        infos.iter().filter_map(|i| i.residual).fold(None, |a: Option<f64>, r| Some(a.map_or(r, |a| a.max(r))));
    Summary {
        theorem,
        seed: cfg.seed,
        vel_tol: cfg.tolerances.vel,
        check_tol: cfg.tolerances.check,
        residual_tol: cfg.tolerances.residual,
        maps: infos.len(),
        maps_skipped: skipped.len(),
        maps_failed,
        rows: 0,
        checked: 0,
        passed: 0,
        failed: 0,
        errors: 0,
        pass_rate: None,
        worst_slack: None,
        sanity_failures: 0,
        max_residual,
        map_info: infos,
        skipped,
    }
}

fn thm1_summary(cfg: &ExperimentConfig, rows: &[Thm1Row], infos: Vec<MapInfo>, failures: &[CorpusFailure]) -> Summary {
    let mut s = base_summary(Theorem::Thm1, cfg, infos, failures);
    s.rows = rows.len();
    for r in rows {
        if r.status != "ok" {
            s.errors += 1;
            continue;
        }
        s.checked += 1;
        if r.pass_w && r.pass_b {
            s.passed += 1;
        } else {
            s.failed += 1;
        }
        if let (Some(v), Some(bd)) = (r.vel_w, r.bound_w) {
            s.worst_slack = min_opt(s.worst_slack, bd - v);
        }
        if let (Some(v), Some(bd)) = (r.vel_b, r.bound_b) {
            s.worst_slack = min_opt(s.worst_slack, bd - v);
        }
    }
    s.pass_rate = (s.checked > 0).then(|| s.passed as f64 / s.checked as f64);
    s
}

fn thm2_summary(cfg: &ExperimentConfig, rows: &[Thm2Row], infos: Vec<MapInfo>, failures: &[CorpusFailure]) -> Summary {
    let mut s = base_summary(Theorem::Thm2, cfg, infos, failures);
    s.rows = rows.len();
    for r in rows {
        if r.status != "ok" {
            s.errors += 1;
            continue;
        }
        s.checked += 1;
        if r.pass {
            s.passed += 1;
        } else {
            s.failed += 1;
        }
        if !r.sanity {
            s.sanity_failures += 1;
        }
        if let (Some(w), Some(b), Some(t)) = (r.vel_w, r.vel_b, r.target) {
            s.worst_slack = min_opt(s.worst_slack, w.max(b) - t);
        }
    }
    s.pass_rate = (s.checked > 0).then(|| s.passed as f64 / s.checked as f64);
    s
}

/// Runs the Thm1 suite over the configured corpus and writes its artifacts
/// to `dir` when given.
pub fn run_thm1(cfg: &ExperimentConfig, dir: Option<&Path>) -> Result<TheoremReport> {
    let (maps, failures) = build_corpus(&cfg.corpus);
    let runs: Vec<MapRun<Thm1Row>> =
        pool(cfg.threads)?.install(|| maps.par_iter().enumerate().map(|(i, cm)| run_thm1_map(cm, i, cfg)).collect());
    if let Some(dir) = dir {
        write_artifacts(dir, &maps, &runs)?;
    }
    let mut rows: Vec<Thm1Row> = runs.iter().flat_map(|r| r.rows.iter().cloned()).collect();
    rows.sort_by(|a, b| (&a.map, a.vertex).cmp(&(&b.map, b.vertex)));
    let infos = runs.into_iter().map(|r| r.info).collect();
    let summary = thm1_summary(cfg, &rows, infos, &failures);
    if let Some(dir) = dir {
        write_rows(&dir.join("rows.csv"), &rows)?;
        write_summary(&dir.join("summary.json"), &summary)?;
    }
    Ok(TheoremReport { thm1: rows, thm2: Vec::new(), summary })
}

/// Runs the Thm2 suite over the configured corpus and writes its artifacts
/// to `dir` when given.
pub fn run_thm2(cfg: &ExperimentConfig, dir: Option<&Path>) -> Result<TheoremReport> {
    let (maps, failures) = build_corpus(&cfg.corpus);
    let runs: Vec<MapRun<Thm2Row>> =
        pool(cfg.threads)?.install(|| maps.par_iter().enumerate().map(|(i, cm)| run_thm2_map(cm, i, cfg)).collect());
    if let Some(dir) = dir {
        write_artifacts(dir, &maps, &runs)?;
    }
    let mut rows: Vec<Thm2Row> = runs.iter().flat_map(|r| r.rows.iter().cloned()).collect();
    rows.sort_by(|a, b| (&a.map, a.vertex).cmp(&(&b.map, b.vertex)));
    let infos = runs.into_iter().map(|r| r.info).collect();
    let summary = thm2_summary(cfg, &rows, infos, &failures);
    if let Some(dir) = dir {
        write_rows(&dir.join("rows.csv"), &rows)?;
        write_summary(&dir.join("summary.json"), &summary)?;
    }
    Ok(TheoremReport { thm1: Vec::new(), thm2: rows, summary })
}

/// Outcome of [`verify`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub rows: usize,
    pub mismatches: usize,
    /// First few mismatch descriptions.
    pub details: Vec<String>,
}

struct Replay {
    tri: RootedTriangulation,
    packing: Packing,
    metrics: BTreeMap<(u32, String), Vec<f64>>,
}

fn load_replay(dir: &Path, name: &str) -> Result<Replay> {
    let mdir = dir.join("maps");
    let tri = read_map_file(&mdir.join(format!("{name}.map")))?.rooted()?;
    let pf = fs::File::open(mdir.join(format!("{name}.packing.csv"))).context("opening packing")?;
    let packing = read_packing(pf, &tri, Some(tri.root()))?;
    let mut metrics: BTreeMap<(u32, String), Vec<f64>> = BTreeMap::new();
    let mut rdr = csv::Reader::from_path(mdir.join(format!("{name}.metrics.csv"))).context("opening metrics")?;
    for e in rdr.deserialize() {
        let e: MetricEntry = e?;
        let u = tri.vertex_by_label(e.u).with_context(|| format!("unknown vertex {}", e.u))?;
        let n = tri.num_vertices();
        metrics.entry((e.vertex, e.family)).or_insert_with(|| vec![0.0; n])[u] = e.m;
    }
    Ok(Replay { tri, packing, metrics })
}

fn same(a: Option<f64>, b: Option<f64>) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => x.to_bits() == y.to_bits(),
        (None, None) => true,
        _ => false,
    }
}

impl Replay {
    fn vel(&self, vertex: u32, fam: PathFamily, sheets: Option<usize>) -> Result<f64> {
        let key = (vertex, fam.name().to_string());
        let n = self.tri.num_vertices();
        let m = self.metrics.get(&key).cloned().unwrap_or_else(|| vec![0.0; n]);
        if let PathFamily::Winding { root, v } = fam {
            if root == v {
                return Ok(0.0);
            }
        }
        let sheets = sheets.context("row lacks a sheet count")?;
        Ok(metric_value(&self.tri, &VertexMetric::new(m), fam, sheets)?.2)
    }
}

/// Re-derives every row of the run in `dir` from its dumped artifacts.
pub fn verify(dir: &Path) -> Result<VerifyReport> {
    let text = fs::read_to_string(dir.join("summary.json")).context("reading summary.json")?;
    let summary: Summary = serde_json::from_str(&text)?;
    let mut report = VerifyReport::default();
    let note = |report: &mut VerifyReport, msg: String| {
        report.mismatches += 1;
        if report.details.len() < 20 {
            report.details.push(msg);
        }
    };
    let mut cache: BTreeMap<String, Replay> = BTreeMap::new();
    for info in &summary.map_info {
        if info.status != "ok" {
            continue;
        }
        let replay = load_replay(dir, &info.name).with_context(|| format!("loading {}", info.name))?;
        if !same(Some(replay.packing.residual()), info.residual) {
            note(&mut report, format!("{}: packing residual differs", info.name));
        }
        if !same(Some(replay.packing.max_radius()), info.max_radius) {
            note(&mut report, format!("{}: max radius differs", info.name));
        }
        cache.insert(info.name.clone(), replay);
    }
    let mut rdr = csv::Reader::from_path(dir.join("rows.csv")).context("reading rows.csv")?;
    match summary.theorem {
        Theorem::Thm1 => {
            for row in rdr.deserialize() {
                let row: Thm1Row = row?;
                report.rows += 1;
                if row.status != "ok" {
                    continue;
                }
                let Some(rp) = cache.get(&row.map) else { bail!("row for unknown map {}", row.map) };
                let v = rp.tri.vertex_by_label(row.vertex).context("unknown vertex")?;
                let rad = rp.packing.radius(v);
                let (bw, bb) = thm1_bounds(rad);
                let vw = rp.vel(row.vertex, PathFamily::Winding { root: rp.tri.root(), v }, row.sheets_w)?;
                let vb = rp.vel(row.vertex, PathFamily::Boundary(v), row.sheets_b)?;
                let pw = vw <= bw + summary.check_tol;
                let pb = vb <= bb + summary.check_tol;
                let ok = same(Some(rad), row.rad)
                    && same(Some(bw), row.bound_w)
                    && same(Some(bb), row.bound_b)
                    && same(Some(vw), row.vel_w)
                    && same(Some(vb), row.vel_b)
                    && pw == row.pass_w
                    && pb == row.pass_b;
                if !ok {
                    note(&mut report, format!("{} vertex {}: recomputed row differs", row.map, row.vertex));
                }
            }
        }
        Theorem::Thm2 => {
            for row in rdr.deserialize() {
                let row: Thm2Row = row?;
                report.rows += 1;
                if row.status != "ok" {
                    continue;
                }
                let Some(rp) = cache.get(&row.map) else { bail!("row for unknown map {}", row.map) };
                let v = rp.tri.vertex_by_label(row.vertex).context("unknown vertex")?;
                let eps = rp.packing.max_radius();
                let k = annuli_count(eps);
                let target = k as f64 / 400.0;
                let wf = PathFamily::Winding { root: rp.tri.root(), v };
                let vw = rp.vel(row.vertex, wf, row.sheets_w)?;
                let vb = rp.vel(row.vertex, PathFamily::Boundary(v), row.sheets_b)?;
                let (fam, bound) = annulus_bound_for_packing(&rp.tri, &rp.packing, rp.tri.root(), v)?;
                let vel = if fam == wf { vw } else { vb };
                let sanity = sanity_ok(bound.value, vel, summary.vel_tol, summary.check_tol);
                let ok = same(Some(rp.packing.radius(v)), row.rad)
                    && same(Some(eps), row.eps)
                    && Some(k) == row.k
                    && same(Some(target), row.target)
                    && same(Some(vw), row.vel_w)
                    && same(Some(vb), row.vel_b)
                    && same(Some(bound.value), row.annulus)
                    && row.annulus_family.as_deref() == Some(fam.name())
                    && (vw.max(vb) >= target) == row.pass
                    && sanity == row.sanity;
                if !ok {
                    note(&mut report, format!("{} vertex {}: recomputed row differs", row.map, row.vertex));
                }
            }
        }
    }
    Ok(report)
}
