//! Text exchange formats.
//!
//! # Map format
//!
//! ```text
//! # comments and blank lines are ignored
//! <nv> <ne>
//! v <label>: <nbr> <nbr>@<tag> ...     one line per vertex, counterclockwise
//! outer <label> <label>@<tag> ...      outer face walk (outer face on the left)
//! root <label>                         optional
//! ```
//!
//! Neighbors are vertex labels. Parallel edges carry a shared `@tag` on both
//! endpoints; in the outer walk a tag names the edge arriving at that vertex.
//! The writer emits the canonical form (vertices by label, rotations starting
//! at the smallest neighbor sequence), so `write(read(s)) == s` for canonical
//! input and `read(write(m))` has the same signature as `m`.
//!
//! Packings, metrics and traces are CSV.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{Read, Write};

use anyhow::{anyhow, bail, ensure, Context, Result};
use cpvel_core::crt::{Sampler, TraceParams};
use cpvel_core::planar::NeighborEntry;
use cpvel_core::{Circle, CorrelatedTrace, Packing, PlanarMap, RootedTriangulation, Triangulation};
use serde::{Deserialize, Serialize};

/// A map read from text, with the optional root label.
#[derive(Debug, Clone)]
pub struct MapFile {
    pub map: PlanarMap,
    pub root: Option<u32>,
}

impl MapFile {
    pub fn rooted(self) -> Result<RootedTriangulation> {
        let root = self.root.ok_or_else(|| anyhow!("map file has no root line"))?;
        RootedTriangulation::new(self.map, root).map_err(|r| anyhow!("invalid rooted triangulation: {r}"))
    }
}

fn entry(label: u32, tag: Option<u32>) -> String {
    match tag {
        Some(t) => format!("{label}@{t}"),
        None => label.to_string(),
    }
}

pub fn write_map(map: &PlanarMap, root: Option<u32>) -> String {
    let sig = map.signature();
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", map.num_vertices(), map.num_edges());
    for (label, nbrs) in &sig.rotations {
        let _ = write!(out, "v {label}:");
        for &(n, tag) in nbrs {
            let _ = write!(out, " {}", entry(n, tag));
        }
        out.push('\n');
    }
    out.push_str("outer");
    for &(l, tag) in &sig.outer {
        let _ = write!(out, " {}", entry(l, tag));
    }
    out.push('\n');
    if let Some(r) = root {
        let _ = writeln!(out, "root {r}");
    }
    out
}

pub fn write_rooted(tri: &RootedTriangulation) -> String {
    write_map(tri.map(), Some(tri.label(tri.root())))
}

fn parse_entry(tok: &str) -> Result<(u32, Option<u32>)> {
    match tok.split_once('@') {
        Some((l, t)) => Ok((l.parse().context("neighbor label")?, Some(t.parse().context("edge tag")?))),
        None => Ok((tok.parse().with_context(|| format!("bad label {tok:?}"))?, None)),
    }
}

pub fn read_map(text: &str) -> Result<MapFile> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines.next().ok_or_else(|| anyhow!("empty map file"))?;
    let mut it = header.split_whitespace();
    let nv: usize = it.next().ok_or_else(|| anyhow!("missing vertex count"))?.parse()?;
    let ne: usize = it.next().ok_or_else(|| anyhow!("missing edge count"))?.parse()?;

    let mut labels = Vec::with_capacity(nv);
    let mut raw: Vec<Vec<(u32, Option<u32>)>> = Vec::with_capacity(nv);
    let mut outer: Option<Vec<(u32, Option<u32>)>> = None;
    let mut root = None;
    for (lineno, line) in lines {
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match kw {
            "v" => {
                let (label, nbrs) =
                    rest.split_once(':').ok_or_else(|| anyhow!("line {lineno}: expected `v <label>: ...`"))?;
                labels.push(label.trim().parse().with_context(|| format!("line {lineno}: vertex label"))?);
                raw.push(nbrs.split_whitespace().map(parse_entry).collect::<Result<_>>()?);
            }
            "outer" => outer = Some(rest.split_whitespace().map(parse_entry).collect::<Result<_>>()?),
            "root" => root = Some(rest.trim().parse().with_context(|| format!("line {lineno}: root label"))?),
            _ => bail!("line {lineno}: unknown keyword {kw:?}"),
        }
    }
    ensure!(labels.len() == nv, "header says {nv} vertices, found {}", labels.len());
    let index: BTreeMap<u32, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    ensure!(index.len() == nv, "duplicate vertex label");
    let resolve = |(l, t): (u32, Option<u32>)| -> Result<NeighborEntry> {
        Ok((*index.get(&l).ok_or_else(|| anyhow!("unknown vertex label {l}"))?, t))
    };
    let lists: Vec<Vec<NeighborEntry>> =
        raw.into_iter().map(|l| l.into_iter().map(resolve).collect::<Result<_>>()).collect::<Result<_>>()?;
    let degree_sum: usize = lists.iter().map(Vec::len).sum();
    ensure!(degree_sum == 2 * ne, "header says {ne} edges, neighbor lists give {}", degree_sum / 2);
    let walk: Vec<NeighborEntry> =
        outer.ok_or_else(|| anyhow!("missing outer line"))?.into_iter().map(resolve).collect::<Result<_>>()?;
    let map = if ne == 0 {
        ensure!(walk.len() <= 1, "outer walk on an edgeless map");
        PlanarMap::from_rotation(labels, &[], None, &vec![Vec::new(); nv], None)?
    } else {
        PlanarMap::from_neighbor_lists(labels, &lists, &walk)?
    };
    Ok(MapFile { map, root })
}

pub fn read_map_file(path: &std::path::Path) -> Result<MapFile> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    read_map(&text).with_context(|| format!("parsing {}", path.display()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleRecord {
    pub vertex: u32,
    pub cx: f64,
    pub cy: f64,
    pub r: f64,
}

/// Packing as CSV `vertex,cx,cy,r`, one row per vertex in index order.
pub fn write_packing<W: Write>(w: W, tri: &Triangulation, p: &Packing) -> Result<()> {
    let mut csv = csv::Writer::from_writer(w);
    for (v, c) in p.circles().iter().enumerate() {
        csv.serialize(CircleRecord { vertex: tri.label(v), cx: c.center.re, cy: c.center.im, r: c.radius })?;
    }
    csv.flush()?;
    Ok(())
}

/// Reads a packing for `tri`; every vertex must appear exactly once. The
/// residual is recomputed from the circles.
pub fn read_packing<R: Read>(r: R, tri: &Triangulation, center: Option<usize>) -> Result<Packing> {
    let mut circles: Vec<Option<Circle>> = vec![None; tri.num_vertices()];
    for rec in csv::Reader::from_reader(r).deserialize() {
        let rec: CircleRecord = rec?;
        let v = tri.vertex_by_label(rec.vertex).ok_or_else(|| anyhow!("unknown vertex {}", rec.vertex))?;
        ensure!(circles[v].is_none(), "vertex {} listed twice", rec.vertex);
        circles[v] = Some(Circle::new(rec.cx, rec.cy, rec.r));
    }
    let circles = circles
        .into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or_else(|| anyhow!("vertex {} missing", tri.label(v))))
        .collect::<Result<Vec<_>>>()?;
    let residual = Packing::from_circles(circles.clone(), center, 0.0).check(tri).max();
    Ok(Packing::from_circles(circles, center, residual))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricRecord {
    pub vertex: u32,
    pub m: f64,
}

/// Nonzero entries of a metric as CSV `vertex,m`.
pub fn write_metric<W: Write>(w: W, tri: &Triangulation, m: &[f64]) -> Result<()> {
    let mut csv = csv::Writer::from_writer(w);
    for (v, &x) in m.iter().enumerate() {
        if x != 0.0 {
            csv.serialize(MetricRecord { vertex: tri.label(v), m: x })?;
        }
    }
    csv.flush()?;
    Ok(())
}

pub fn read_metric<R: Read>(r: R, tri: &Triangulation) -> Result<Vec<f64>> {
    let mut m = vec![0.0; tri.num_vertices()];
    for rec in csv::Reader::from_reader(r).deserialize() {
        let rec: MetricRecord = rec?;
        let v = tri.vertex_by_label(rec.vertex).ok_or_else(|| anyhow!("unknown vertex {}", rec.vertex))?;
        m[v] = rec.m;
    }
    Ok(m)
}

/// Header of a trace dump.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceHeader {
    pub gamma: f64,
    pub epsilon: f64,
    pub oversample: usize,
    pub horizon: f64,
    pub seed: u64,
    pub zero_index: usize,
    /// `increments` or `dyadic`; informational.
    pub sampler: String,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
struct TraceRecord {
    j: usize,
    l: f64,
    r: f64,
}

/// Trace dump: one `# key=value` header line, then CSV `j,l,r`.
pub fn write_trace<W: Write>(mut w: W, params: &TraceParams, trace: &CorrelatedTrace) -> Result<()> {
    writeln!(
        w,
        "# gamma={} epsilon={} oversample={} horizon={} seed={} zero_index={} sampler={}",
        trace.gamma(),
        trace.epsilon(),
        trace.oversample(),
        params.horizon,
        trace.seed(),
        trace.zero_index(),
        if params.sampler == Sampler::Dyadic { "dyadic" } else { "increments" }
    )?;
    let mut csv = csv::Writer::from_writer(w);
    for (j, (&l, &r)) in trace.l().iter().zip(trace.r()).enumerate() {
        csv.serialize(TraceRecord { j, l, r })?;
    }
    csv.flush()?;
    Ok(())
}

pub fn read_trace<R: std::io::BufRead>(mut r: R) -> Result<(TraceHeader, CorrelatedTrace)> {
    let mut first = String::new();
    r.read_line(&mut first)?;
    let fields: BTreeMap<&str, &str> = first
        .trim()
        .strip_prefix('#')
        .ok_or_else(|| anyhow!("trace dump must start with a `#` header"))?
        .split_whitespace()
        .filter_map(|kv| kv.split_once('='))
        .collect();
    let get = |k: &str| fields.get(k).copied().ok_or_else(|| anyhow!("trace header lacks {k}"));
    let header = TraceHeader {
        gamma: get("gamma")?.parse()?,
        epsilon: get("epsilon")?.parse()?,
        oversample: get("oversample")?.parse()?,
        horizon: get("horizon")?.parse()?,
        seed: get("seed")?.parse()?,
        zero_index: get("zero_index")?.parse()?,
        sampler: fields.get("sampler").copied().unwrap_or("increments").to_string(),
    };
    let (mut l, mut rr) = (Vec::new(), Vec::new());
    for (i, rec) in csv::Reader::from_reader(r).deserialize().enumerate() {
        let rec: TraceRecord = rec?;
        ensure!(rec.j == i, "trace rows out of order at {i}");
        l.push(rec.l);
        rr.push(rec.r);
    }
    let trace =
        CorrelatedTrace::from_samples(header.gamma, header.epsilon, header.oversample, header.zero_index, l, rr)?
            .with_seed(header.seed);
    Ok((header, trace))
}
