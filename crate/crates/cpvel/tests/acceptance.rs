//! Acceptance criteria 1 to 9. Each test prints one `criterion N: PASS|FAIL`
//! line to stderr (uncaptured) and fails when its criterion does.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

#[path = "../../core/tests/oracles/mod.rs"]
mod oracles;

use std::collections::BTreeMap;
use std::f64::consts::{PI, SQRT_2};
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::sync::{Mutex, OnceLock};
use std::time::{Duration, Instant};

use cpvel::config::ExperimentConfig;
use cpvel::corpus::crt_window;
use cpvel::harness::{run_thm1, run_thm2, verify, TheoremReport};
use cpvel::scaling::{run_scaling, ScalingReport};
use cpvel_core::crt::{correlation, CorrelatedTrace, EdgeSide, MatedCrtMap, Sampler, TraceParams};
use cpvel_core::generate::{hex_disk, random_flips, random_insertion, stacked_wheel, triangle_mesh, wheel};
use cpvel_core::pack::{pack_in_disk, PackOptions};
use cpvel_core::rng::rng_from_seed;
use cpvel_core::vel::{vel_exact, VelOptions};
use cpvel_core::{PathFamily, RootedTriangulation};
use oracles::{boundary_sets, brute_crt_edges, minimal_sets, small_suite, vel_of_sets, winding_sets};
use tempfile::TempDir;

const CLOSED_FORM_TOL: f64 = 1e-6;
const CLOSED_FORM_BUDGET: Duration = Duration::from_secs(1);
const RESIDUAL_TOL: f64 = 1e-7;
const PACKING_CORPUS_MIN: usize = 50;
const PACKING_MAX_VERTICES: usize = 10_000;
const MESH_BUDGET: Duration = Duration::from_secs(60);
const VEL_ORACLE_TOL: f64 = 1e-6;
const THM_SLACK: f64 = 1e-6;
const THM1_CORPUS_MIN: usize = 50;
const THM2_BUDGET: Duration = Duration::from_secs(30 * 60);
const CRT_SEEDS: u64 = 100;
const CRT_MAX_N: usize = 200;
const BIG_WINDOW: usize = 100_000;
const BIG_WINDOW_BUDGET: Duration = Duration::from_secs(5);
const CORRELATION_STEPS: usize = 1_000_000;
const CORRELATION_TOL: f64 = 0.01;
const SCALING_GAMMAS: [f64; 3] = [0.5, SQRT_2, 1.5];
const SCALING_MIN_SEEDS: usize = 10;
const SCALING_BUDGET: Duration = Duration::from_secs(2 * 3600);

const THM1_CONFIG: &str = include_str!("../../../configs/thm1.toml");
const THM2_CONFIG: &str = include_str!("../../../configs/thm2.toml");
const SCALING_CONFIG: &str = include_str!("../../../configs/scaling.toml");

static SERIAL: Mutex<()> = Mutex::new(());

type Outcome = Result<String, String>;

macro_rules! require {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn criterion(n: u32, body: impl FnOnce() -> Outcome) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let outcome = catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|e| {
        let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panicked: {}", msg.unwrap_or_default()))
    });
    let (word, detail) = match &outcome {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    let _ = writeln!(std::io::stderr(), "criterion {n}: {word} ({detail})");
    if let Err(d) = outcome {
        panic!("criterion {n} failed: {d}");
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn config(text: &str) -> ExperimentConfig {
    ExperimentConfig::from_toml(text).expect("shipped config parses")
}

struct Run<R> {
    dir: TempDir,
    report: R,
    elapsed: Duration,
}

fn thm1_run() -> &'static Run<TheoremReport> {
    static RUN: OnceLock<Run<TheoremReport>> = OnceLock::new();
    RUN.get_or_init(|| {
        let dir = TempDir::new().unwrap();
        let (report, elapsed) = timed(|| run_thm1(&config(THM1_CONFIG), Some(dir.path())).unwrap());
        Run { dir, report, elapsed }
    })
}

fn thm2_run() -> &'static Run<TheoremReport> {
    static RUN: OnceLock<Run<TheoremReport>> = OnceLock::new();
    RUN.get_or_init(|| {
        let dir = TempDir::new().unwrap();
        let (report, elapsed) = timed(|| run_thm2(&config(THM2_CONFIG), Some(dir.path())).unwrap());
        Run { dir, report, elapsed }
    })
}

fn scaling_run() -> &'static Run<ScalingReport> {
    static RUN: OnceLock<Run<ScalingReport>> = OnceLock::new();
    RUN.get_or_init(|| {
        let dir = TempDir::new().unwrap();
        let (report, elapsed) = timed(|| run_scaling(&config(SCALING_CONFIG), Some(dir.path())).unwrap());
        Run { dir, report, elapsed }
    })
}

#[test]
fn criterion_1_closed_form_packings() {
    criterion(1, || {
        let s3 = 3f64.sqrt();
        let ((k4, w7), elapsed) = timed(|| {
            let opts = PackOptions::default();
            (pack_in_disk(&wheel(3), &opts).unwrap(), pack_in_disk(&wheel(6), &opts).unwrap())
        });
        let mut worst: f64 = (k4.radius(0) - (7.0 - 4.0 * s3)).abs();
        for v in 1..4 {
            worst = worst.max((k4.radius(v) - (2.0 * s3 - 3.0)).abs());
        }
        for v in 0..7 {
            worst = worst.max((w7.radius(v) - 1.0 / 3.0).abs());
        }
        require!(worst <= CLOSED_FORM_TOL, "worst radius error {worst:e}");
        require!(elapsed < CLOSED_FORM_BUDGET, "took {elapsed:?}");
        Ok(format!("worst radius error {worst:.1e} <= {CLOSED_FORM_TOL:e}, {elapsed:.2?}"))
    });
}

fn packing_corpus() -> Vec<(String, RootedTriangulation)> {
    let mut maps: Vec<(String, RootedTriangulation)> = Vec::new();
    for k in [3, 4, 5, 6, 8, 12, 20, 50, 100, 400] {
        maps.push((format!("wheel-{k}"), wheel(k)));
    }
    for (k, layers) in [(5, 10), (8, 20), (12, 40), (20, 30)] {
        maps.push((format!("stacked-{k}x{layers}"), stacked_wheel(k, layers)));
    }
    for n in [5, 10, 20, 40, 80, 120, 139] {
        maps.push((format!("mesh-{n}"), triangle_mesh(n)));
    }
    for n in [2, 5, 10, 20, 40, 57] {
        maps.push((format!("hex-{n}"), hex_disk(n)));
    }
    for n in [50, 200, 1000, 3000, 6000, 9997] {
        for seed in 0..2 {
            let mut rng = rng_from_seed(seed);
            let base = random_insertion(n, &mut rng);
            maps.push((format!("random-{n}-s{seed}"), random_flips(&base, 2 * n, &mut rng)));
        }
    }
    for gamma in SCALING_GAMMAS {
        for eps in [1.0 / 1024.0, 1.0 / 4096.0] {
            let mut found = 0;
            for seed in 0..40 {
                if found == 3 {
                    break;
                }
                if let Ok(tri) = crt_window(gamma, eps, 1.0, 16, seed, None, 0.5, Sampler::Increments) {
                    maps.push((format!("crt-g{gamma:.3}-e{eps}-s{seed}"), tri));
                    found += 1;
                }
            }
        }
    }
    maps
}

#[test]
fn criterion_2_packing_validity() {
    criterion(2, || {
        let maps = packing_corpus();
        require!(maps.len() >= PACKING_CORPUS_MIN, "corpus has {} maps", maps.len());
        let mut worst: (f64, String) = (0.0, String::new());
        let mut largest = 0;
        for (name, tri) in &maps {
            require!(tri.num_vertices() <= PACKING_MAX_VERTICES, "{name} has {} vertices", tri.num_vertices());
            largest = largest.max(tri.num_vertices());
            let p = pack_in_disk(tri, &PackOptions::default()).map_err(|e| format!("{name}: {e}"))?;
            let r = p.check(tri).max();
            require!(r <= RESIDUAL_TOL, "{name}: residual {r:e}");
            if r >= worst.0 {
                worst = (r, name.clone());
            }
        }
        let mesh = triangle_mesh(140);
        require!(mesh.num_vertices() >= PACKING_MAX_VERTICES, "mesh has {} vertices", mesh.num_vertices());
        let (p, elapsed) = timed(|| pack_in_disk(&mesh, &PackOptions::default()));
        let p = p.map_err(|e| format!("mesh: {e}"))?;
        let r = p.check(&mesh).max();
        require!(r <= RESIDUAL_TOL, "mesh residual {r:e}");
        require!(elapsed < MESH_BUDGET, "mesh took {elapsed:?}");
        Ok(format!(
            "{} maps up to {largest} vertices, worst residual {:.1e} on {}; {}-vertex mesh in {elapsed:.2?} (residual {r:.1e})",
            maps.len(),
            worst.0,
            worst.1,
            mesh.num_vertices()
        ))
    });
}

#[test]
fn criterion_3_vel_matches_enumeration() {
    criterion(3, || {
        let opts = VelOptions::default();
        let mut cases = 0;
        let mut worst: f64 = 0.0;
        for (name, tri) in small_suite() {
            let root = tri.root();
            for v in 0..tri.num_vertices() {
                let mut fams = vec![(PathFamily::Boundary(v), boundary_sets(&tri, v))];
                if v != root {
                    fams.push((PathFamily::Winding { root, v }, winding_sets(&tri, root, v)));
                }
                for (fam, sets) in fams {
                    let reference = vel_of_sets(tri.num_vertices(), &minimal_sets(sets), 1e-11);
                    let want = 0.5 * (reference.lower + reference.upper);
                    let got = vel_exact(&tri, fam, &opts).map_err(|e| format!("{name} {fam:?}: {e}"))?.value;
                    let diff = (got - want).abs();
                    require!(diff <= VEL_ORACLE_TOL, "{name} {fam:?}: solver {got}, enumeration {want}");
                    worst = worst.max(diff);
                    cases += 1;
                }
            }
        }
        let k4 = wheel(3);
        let b = vel_exact(&k4, PathFamily::Boundary(k4.root()), &opts).unwrap().value;
        let w = vel_exact(&k4, PathFamily::Winding { root: k4.root(), v: 1 }, &opts).unwrap().value;
        require!((b - 4.0 / 3.0).abs() <= VEL_ORACLE_TOL, "K4 boundary {b}");
        require!((w - 3.0).abs() <= VEL_ORACLE_TOL, "K4 winding {w}");
        Ok(format!("{cases} cases, worst difference {worst:.1e}; K4 boundary {b:.9}, winding {w:.9}"))
    });
}

#[test]
fn criterion_4_thm1_suite() {
    criterion(4, || {
        let run = thm1_run();
        let s = &run.report.summary;
        let checked_maps = s.map_info.iter().filter(|m| m.status == "ok" && m.checked > 0).count();
        require!(checked_maps >= THM1_CORPUS_MIN, "{checked_maps} maps checked");
        require!(s.errors == 0 && s.maps_failed == 0, "{} errors, {} failed maps", s.errors, s.maps_failed);
        let mut checks = 0;
        let mut worst = f64::INFINITY;
        for row in &run.report.thm1 {
            require!(row.status == "ok", "{} v{}: {}", row.map, row.vertex, row.status);
            let rad = row.rad.ok_or_else(|| format!("{} v{}: no radius", row.map, row.vertex))?;
            let vel_b = row.vel_b.ok_or_else(|| format!("{} v{}: no boundary value", row.map, row.vertex))?;
            let bound_b = 1.0 + 0.5 * (1.0 / rad).ln();
            require!(vel_b <= bound_b + THM_SLACK, "{} v{}: boundary {vel_b} > {bound_b}", row.map, row.vertex);
            require!(row.pass_b, "{} v{}: boundary flag", row.map, row.vertex);
            worst = worst.min(bound_b - vel_b);
            checks += 1;
            if let Some(vel_w) = row.vel_w {
                let bound_w = 4.0 / rad;
                require!(vel_w <= bound_w + THM_SLACK, "{} v{}: winding {vel_w} > {bound_w}", row.map, row.vertex);
                require!(row.pass_w, "{} v{}: winding flag", row.map, row.vertex);
                worst = worst.min(bound_w - vel_w);
                checks += 1;
            }
        }
        Ok(format!(
            "{checked_maps} maps, {} vertices, {checks} inequalities hold, worst slack {worst:.3e}, {:.1?}",
            run.report.thm1.len(),
            run.elapsed
        ))
    });
}

#[test]
fn criterion_5_thm2_suite() {
    criterion(5, || {
        let run = thm2_run();
        let s = &run.report.summary;
        require!(s.errors == 0 && s.maps_failed == 0, "{} errors, {} failed maps", s.errors, s.maps_failed);
        let max_rad: BTreeMap<&str, f64> =
            s.map_info.iter().filter_map(|m| m.max_radius.map(|r| (m.name.as_str(), r))).collect();
        let mut live = 0;
        let mut worst = f64::INFINITY;
        for row in &run.report.thm2 {
            require!(row.status == "ok", "{} v{}: {}", row.map, row.vertex, row.status);
            let eps = max_rad[row.map.as_str()];
            let k = (1.0 / (5.0 * eps)).log2().floor() as i64 - 2;
            require!(row.k == Some(k), "{} v{}: K {:?} vs {k}", row.map, row.vertex, row.k);
            if k < 1 {
                continue;
            }
            let target = k as f64 / 400.0;
            let best = row.vel_w.unwrap_or(0.0).max(row.vel_b.unwrap_or(0.0));
            require!(best >= target - THM_SLACK, "{} v{}: {best} < {target}", row.map, row.vertex);
            require!(row.pass, "{} v{}: flag", row.map, row.vertex);
            worst = worst.min(best - target);
            live += 1;
        }
        require!(live > 0, "no map reached K >= 1");
        require!(run.elapsed < THM2_BUDGET, "took {:?}", run.elapsed);
        let vacuous = s.map_info.iter().filter(|m| m.vacuous).count();
        Ok(format!(
            "{live} vertices with K >= 1 pass (worst slack {worst:.3e}), {vacuous} maps vacuous, {:.1?}",
            run.elapsed
        ))
    });
}

fn sweep_edges(m: &MatedCrtMap) -> Vec<(usize, usize, bool)> {
    let map = m.map();
    let mut out: Vec<(usize, usize, bool)> = (0..map.num_edges())
        .filter(|&e| m.side(e) != EdgeSide::Spine)
        .map(|e| {
            let (a, b) = (map.origin(2 * e), map.dest(2 * e));
            (a.min(b), a.max(b), m.side(e) == EdgeSide::Upper)
        })
        .collect();
    out.sort_unstable_by_key(|&(a, b, u)| (u, a, b));
    out
}

#[test]
fn criterion_6_crt_adjacency() {
    criterion(6, || {
        let gammas = [0.5, 1.0, SQRT_2, 1.5, 1.9];
        let mut edges = 0;
        for seed in 0..CRT_SEEDS {
            let gamma = gammas[seed as usize % gammas.len()];
            let oversample = 1 + (seed as usize % 4) * 3;
            let params = TraceParams { oversample, ..TraceParams::new(gamma, 0.01, 1.0, seed) };
            let trace = CorrelatedTrace::sample(&params).unwrap();
            let n = 20 + (seed as usize * 37) % (CRT_MAX_N - 19);
            let lo = -(n as i64 / 2);
            let window = (lo as f64 * 0.01, (lo + n as i64 - 1) as f64 * 0.01);
            let m = MatedCrtMap::build(&trace, window).map_err(|e| format!("seed {seed}: {e}"))?;
            require!(m.num_vertices() == n, "seed {seed}: {} vertices, expected {n}", m.num_vertices());
            let want = brute_crt_edges(&trace, lo, n);
            require!(sweep_edges(&m) == want, "seed {seed}: edge sets differ");
            edges += want.len();
        }
        let eps = 1.0 / BIG_WINDOW as f64;
        let (built, elapsed) = timed(|| {
            let trace = CorrelatedTrace::sample(&TraceParams::new(1.0, eps, 0.5, 1)).unwrap();
            MatedCrtMap::build(&trace, (-0.5 + eps, 0.5)).map(|m| m.num_vertices())
        });
        let n = built.map_err(|e| format!("big window: {e}"))?;
        require!(n >= BIG_WINDOW, "big window has {n} vertices");
        require!(elapsed < BIG_WINDOW_BUDGET, "big window took {elapsed:?}");
        Ok(format!("{CRT_SEEDS} seeds, {edges} edges identical; {n}-vertex window sampled and built in {elapsed:.2?}"))
    });
}

fn increment_correlation(l: &[f64], r: &[f64]) -> (f64, usize) {
    let dl: Vec<f64> = l.windows(2).map(|w| w[1] - w[0]).collect();
    let dr: Vec<f64> = r.windows(2).map(|w| w[1] - w[0]).collect();
    let n = dl.len() as f64;
    let (ml, mr) = (dl.iter().sum::<f64>() / n, dr.iter().sum::<f64>() / n);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in dl.iter().zip(&dr) {
        sxy += (a - ml) * (b - mr);
        sxx += (a - ml) * (a - ml);
        syy += (b - mr) * (b - mr);
    }
    (sxy / (sxx * syy).sqrt(), dl.len())
}

#[test]
fn criterion_7_trace_correlation() {
    criterion(7, || {
        let mut parts = Vec::new();
        for (i, gamma) in [0.5, 1.0, SQRT_2, 1.5].into_iter().enumerate() {
            let params = TraceParams { oversample: 1, ..TraceParams::new(gamma, 1e-6, 0.5, 500 + i as u64) };
            let trace = CorrelatedTrace::sample(&params).unwrap();
            let (c, steps) = increment_correlation(trace.l(), trace.r());
            let want = -(PI * gamma * gamma / 4.0).cos();
            require!((want - correlation(gamma)).abs() < 1e-15, "gamma {gamma}: library target differs");
            require!(steps >= CORRELATION_STEPS, "gamma {gamma}: only {steps} steps");
            require!((c - want).abs() <= CORRELATION_TOL, "gamma {gamma}: {c:.4} vs {want:.4}");
            parts.push(format!("gamma {gamma:.3}: {c:.4} vs {want:.4}"));
        }
        Ok(parts.join("; "))
    });
}

#[test]
fn criterion_8_scaling() {
    criterion(8, || {
        let run = scaling_run();
        let eps_ladder: Vec<f64> = (6..=12).map(|k| 2f64.powi(-k)).collect();
        let mut parts = Vec::new();
        for gamma in SCALING_GAMMAS {
            let rows: Vec<_> = run.report.rows.iter().filter(|r| r.gamma == gamma).collect();
            let mut medians = Vec::new();
            let mut seeds_at_first: Vec<u64> = Vec::new();
            for (i, &eps) in eps_ladder.iter().enumerate() {
                let cell: Vec<_> = rows.iter().filter(|r| r.eps == eps).collect();
                require!(cell.len() >= SCALING_MIN_SEEDS, "gamma {gamma} eps {eps}: {} seeds", cell.len());
                let mut seeds: Vec<u64> = cell.iter().map(|r| r.seed).collect();
                seeds.sort_unstable();
                if i == 0 {
                    seeds_at_first = seeds;
                } else {
                    require!(seeds == seeds_at_first, "gamma {gamma}: seed set changes at eps {eps}");
                }
                let mut radii: Vec<f64> = cell.iter().map(|r| r.max_rad).collect();
                radii.sort_by(f64::total_cmp);
                let k = radii.len();
                medians.push(if k % 2 == 1 { radii[k / 2] } else { 0.5 * (radii[k / 2 - 1] + radii[k / 2]) });
            }
            require!(medians.windows(2).all(|w| w[1] <= w[0]), "gamma {gamma}: medians {medians:?}");
            let x: Vec<f64> = rows.iter().map(|r| 1.0 / (1.0 / r.eps).ln()).collect();
            let y: Vec<f64> = rows.iter().map(|r| r.max_rad).collect();
            let n = x.len() as f64;
            let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
            let sxy: f64 = x.iter().zip(&y).map(|(a, b)| (a - mx) * (b - my)).sum();
            let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
            let slope = sxy / sxx;
            require!(slope > 0.0, "gamma {gamma}: slope {slope}");
            let c = x.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>() / x.iter().map(|a| a * a).sum::<f64>();
            parts.push(format!(
                "gamma {gamma:.3}: {} seeds, medians {:.3} -> {:.3}, slope {slope:.3}, C {c:.3}",
                seeds_at_first.len(),
                medians[0],
                medians[medians.len() - 1]
            ));
        }
        require!(run.elapsed < SCALING_BUDGET, "took {:?}", run.elapsed);
        Ok(format!("{}; {:.1?}", parts.join("; "), run.elapsed))
    });
}

fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in std::fs::read_dir(&d).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                out.insert(path.strip_prefix(dir).unwrap().display().to_string(), std::fs::read(&path).unwrap());
            }
        }
    }
    out
}

fn same_files(a: &Path, b: &Path) -> Result<usize, String> {
    let (sa, sb) = (snapshot(a), snapshot(b));
    require!(sa.keys().eq(sb.keys()), "file lists differ");
    for (name, bytes) in &sa {
        require!(bytes == &sb[name], "{name} differs");
    }
    Ok(sa.len())
}

fn cli(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_cpvel")).args(args).output().expect("cli runs");
    assert!(out.status.success(), "cpvel {args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

#[test]
fn criterion_9_determinism_and_replay() {
    criterion(9, || {
        let mut files = 0;
        let mut verified = 0;
        for (name, first, text, thm1) in
            [("thm1", thm1_run(), THM1_CONFIG, true), ("thm2", thm2_run(), THM2_CONFIG, false)]
        {
            let again = TempDir::new().unwrap();
            let cfg = config(text);
            if thm1 {
                run_thm1(&cfg, Some(again.path())).unwrap();
            } else {
                run_thm2(&cfg, Some(again.path())).unwrap();
            }
            files += same_files(first.dir.path(), again.path()).map_err(|e| format!("{name}: {e}"))?;
            let v = verify(first.dir.path()).map_err(|e| format!("{name} verify: {e}"))?;
            require!(v.mismatches == 0, "{name}: {} mismatches, {:?}", v.mismatches, v.details);
            require!(
                v.rows == first.report.summary.rows,
                "{name}: verified {} of {} rows",
                v.rows,
                first.report.summary.rows
            );
            verified += v.rows;
        }
        let again = TempDir::new().unwrap();
        run_scaling(&config(SCALING_CONFIG), Some(again.path())).unwrap();
        files += same_files(scaling_run().dir.path(), again.path()).map_err(|e| format!("scaling: {e}"))?;

        let work = TempDir::new().unwrap();
        let map = work.path().join("w.map");
        let map = map.to_str().unwrap();
        let gen = ["gen-crt", "--gamma", "1.2", "--eps", "0.01", "--oversample", "8", "--seed", "4"];
        let text = cli(&gen);
        require!(text == cli(&gen), "gen-crt output differs");
        std::fs::write(map, &text).unwrap();
        for args in [vec!["pack", map], vec!["vel", map, "--family", "both"]] {
            require!(cli(&args) == cli(&args), "{} output differs", args[0]);
        }
        Ok(format!(
            "{files} report files byte-identical, {verified} rows replayed with 0 mismatches, CLI reruns identical"
        ))
    });
}
