//! Cutting-plane solver for `min area(m)` subject to `len_m(gamma) >= 1`.
//!
//! The restricted problem over the constraints found so far is solved in its
//! dual, `max sum(lambda) - |A^T lambda|^2 / 2` over `lambda >= 0`, whose
//! primal point is `m = A^T lambda` (automatically nonnegative). Every round yields two certified bounds on VEL:
//! `L(m)^2 / area(m) <= VEL <= 1 / (2 sum(lambda) - |m|^2)`, where `L(m)` is
//! the exact shortest length from the oracle.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::oracle::{boundary_paths, CutCover};
use super::{PathFamily, VelError, VelResult, VertexMetric};
use crate::planar::Triangulation;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VelOptions {
    /// Stop when `upper - value <= tol * max(1, value)`.
    pub tol: f64,
    /// Cap on oracle rounds.
    pub max_rounds: usize,
    /// Initial cover sheet bound for the winding oracle.
    pub sheets: usize,
    /// Boundary family: violated paths added per round.
    pub paths_per_round: usize,
    /// Stop as soon as the certified lower bound reaches this value.
    pub stop_above: Option<f64>,
    /// Stop as soon as the certified upper bound drops to this value.
    pub stop_below: Option<f64>,
}

impl Default for VelOptions {
    fn default() -> Self {
        Self { tol: 1e-9, max_rounds: 20_000, sheets: 3, paths_per_round: 8, stop_above: None, stop_below: None }
    }
}

/// Restricted problem `min |m|^2 / 2` s.t. `a_i . m >= 1` over the rows found
/// so far, solved by a dual active-set method. The Cholesky factor of the
/// active rows' Gram matrix is updated in place as rows enter and leave.
struct Restricted {
    rows: Vec<Vec<usize>>,
    seen: BTreeSet<Vec<usize>>,
    /// Dual weight per row (zero when inactive).
    lambda: Vec<f64>,
    /// Active rows in factor order.
    active: Vec<usize>,
    /// Position of each row in `active`, or `usize::MAX`.
    pos: Vec<usize>,
    /// Lower-triangular factor, row `i` holds `i + 1` entries.
    chol: Vec<Vec<f64>>,
    /// Active rows containing each vertex.
    members: Vec<Vec<usize>>,
    m: Vec<f64>,
    steps: usize,
}

const INACTIVE: usize = usize::MAX;

impl Restricted {
    fn new(n: usize) -> Self {
        Self {
            rows: Vec::new(),
            seen: BTreeSet::new(),
            lambda: Vec::new(),
            active: Vec::new(),
            pos: Vec::new(),
            chol: Vec::new(),
            members: vec![Vec::new(); n],
            m: vec![0.0; n],
            steps: 0,
        }
    }

    fn add(&mut self, path: &[usize]) -> bool {
        let mut row = path.to_vec();
        row.sort_unstable();
        row.dedup();
        if !self.seen.insert(row.clone()) {
            return false;
        }
        self.rows.push(row);
        self.lambda.push(0.0);
        self.pos.push(INACTIVE);
        true
    }

    fn dual(&self) -> f64 {
        let s: f64 = self.lambda.iter().sum();
        s - 0.5 * self.m.iter().map(|x| x * x).sum::<f64>()
    }

    fn slack(&self, i: usize) -> f64 {
        1.0 - self.rows[i].iter().map(|&u| self.m[u]).sum::<f64>()
    }

    fn recompute_m(&mut self) {
        self.m.iter_mut().for_each(|x| *x = 0.0);
        for &i in &self.active {
            let l = self.lambda[i];
            for &u in &self.rows[i] {
                self.m[u] += l;
            }
        }
    }

    /// `N_A^T a_p` in factor order.
    fn overlaps(&self, p: usize) -> Vec<f64> {
        let mut d = vec![0.0; self.active.len()];
        for &u in &self.rows[p] {
            for &i in &self.members[u] {
                d[self.pos[i]] += 1.0;
            }
        }
        d
    }

    fn forward(&self, d: &[f64]) -> Vec<f64> {
        let mut y = d.to_vec();
        for i in 0..y.len() {
            let row = &self.chol[i];
            let mut acc = y[i];
            for k in 0..i {
                acc -= row[k] * y[k];
            }
            y[i] = acc / row[i];
        }
        y
    }

    fn backward(&self, y: &[f64]) -> Vec<f64> {
        let mut r = y.to_vec();
        for i in (0..r.len()).rev() {
            r[i] /= self.chol[i][i];
            let ri = r[i];
            for k in 0..i {
                r[k] -= self.chol[i][k] * ri;
            }
        }
        r
    }

    fn activate(&mut self, p: usize, y: Vec<f64>, diag: f64) {
        let mut row = y;
        row.push(diag);
        self.chol.push(row);
        self.pos[p] = self.active.len();
        self.active.push(p);
        for &u in &self.rows[p] {
            self.members[u].push(p);
        }
    }

    fn deactivate(&mut self, j: usize) {
        let row = self.active.remove(j);
        self.pos[row] = INACTIVE;
        self.lambda[row] = 0.0;
        for &u in &self.rows[row] {
            let list = &mut self.members[u];
            if let Some(k) = list.iter().position(|&x| x == row) {
                list.swap_remove(k);
            }
        }
        for (k, &i) in self.active.iter().enumerate().skip(j) {
            self.pos[i] = k;
        }
        self.chol.remove(j);
        let mut x: Vec<f64> = self.chol[j..].iter_mut().map(|r| r.remove(j)).collect();
        // Rank-one update of the trailing block with the removed column.
        for k in 0..x.len() {
            let lkk = self.chol[j + k][j + k];
            let r = libm::hypot(lkk, x[k]);
            let c = r / lkk;
            let s = x[k] / lkk;
            self.chol[j + k][j + k] = r;
            for i in k + 1..x.len() {
                let lik = (self.chol[j + i][j + k] + s * x[i]) / c;
                self.chol[j + i][j + k] = lik;
                x[i] = c * x[i] - s * lik;
            }
        }
    }

    /// Brings row `p` into the active set, dropping blocking rows as needed.
    fn enforce(&mut self, p: usize) -> Result<(), VelError> {
        let size = self.rows[p].len() as f64;
        loop {
            self.steps += 1;
            let d = self.overlaps(p);
            let y = self.forward(&d);
            let r = self.backward(&y);
            let zz = size - y.iter().map(|v| v * v).sum::<f64>();
            let independent = zz > 1e-10 * size;
            let slack = self.slack(p).max(0.0);
            if slack == 0.0 && self.lambda[p] == 0.0 {
                return Ok(());
            }
            let full = if independent { slack / zz } else { f64::INFINITY };
            let mut partial = f64::INFINITY;
            let mut block = None;
            for (k, &rk) in r.iter().enumerate() {
                if rk > 1e-12 {
                    let t = self.lambda[self.active[k]] / rk;
                    if t < partial {
                        partial = t;
                        block = Some(k);
                    }
                }
            }
            let t = full.min(partial);
            if !t.is_finite() {
                return Err(VelError::Oracle("restricted problem infeasible"));
            }
            for &u in &self.rows[p] {
                self.m[u] += t;
            }
            for (k, &rk) in r.iter().enumerate() {
                let i = self.active[k];
                self.lambda[i] = (self.lambda[i] - t * rk).max(0.0);
                for &u in &self.rows[i] {
                    self.m[u] -= t * rk;
                }
            }
            self.lambda[p] += t;
            if full <= partial {
                self.activate(p, y, libm::sqrt(zz));
                return Ok(());
            }
            self.deactivate(block.expect("finite partial step"));
        }
    }

    /// Restricted optimum over all rows. Each pass enforces the violated
    /// rows in order of violation; passes repeat until every row holds.
    fn solve(&mut self) -> Result<(), VelError> {
        loop {
            let mut violated: Vec<(f64, usize)> = (0..self.rows.len())
                .filter(|&i| self.pos[i] == INACTIVE)
                .map(|i| (self.slack(i), i))
                .filter(|&(s, _)| s > 1e-13)
                .collect();
            if violated.is_empty() {
                break;
            }
            violated.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
            for (_, p) in violated {
                if self.pos[p] == INACTIVE && self.slack(p) > 1e-13 {
                    self.enforce(p)?;
                    if self.steps % 64 == 0 {
                        self.recompute_m();
                    }
                }
            }
        }
        self.recompute_m();
        Ok(())
    }
}

fn set_len(m: &[f64], path: &[usize]) -> f64 {
    let mut vs = path.to_vec();
    vs.sort_unstable();
    vs.dedup();
    vs.iter().map(|&u| m[u]).sum()
}

enum Oracle<'a> {
    Boundary { tri: &'a Triangulation, v: usize },
    Winding { cover: CutCover<'a>, v: usize },
}

impl Oracle<'_> {
    /// Exact shortest length and a shortest path, plus extra violated paths.
    fn exact(&self, m: &[f64], sheets: usize, extra: usize) -> Option<(f64, Vec<usize>, Vec<Vec<usize>>)> {
        match self {
            Oracle::Boundary { tri, v } => {
                let paths = boundary_paths(tri, m, *v);
                let (len, best) = paths.first().cloned()?;
                let more = paths.into_iter().skip(1).take(extra).filter(|(l, _)| *l < 1.0).map(|(_, p)| p).collect();
                Some((len, best, more))
            }
            Oracle::Winding { cover, v } => {
                let mut walks = cover.winding_candidates(m, *v, sheets).into_iter();
                let (len, best) = walks.next()?;
                let more = walks.take(extra).filter(|(l, _)| *l < 1.0).map(|(_, w)| w).collect();
                Some((len, best, more))
            }
        }
    }
}

impl Oracle<'_> {
    /// A violated constraint found without the exact search, if any.
    fn cheap(&self, m: &[f64], sheets: usize) -> Option<Vec<usize>> {
        match self {
            Oracle::Boundary { .. } => None,
            Oracle::Winding { cover, v } => {
                let walk = cover.cover_loop(m, *v, sheets)?;
                (set_len(m, &walk) < 1.0 - 1e-9).then_some(walk)
            }
        }
    }
}

/// Every member of both families contains the family's vertex `v`, so
/// adding `t` to `m[v]` adds `t` to every length. Returns the best
/// `(len + t)^2 / (area + 2 t m_v + t^2)` over `t >= 0` and the maximizing
/// `t`; `t = inf` stands for the metric supported on `v` alone (value 1).
fn with_vertex_weight(len: f64, area: f64, mv: f64) -> (f64, f64) {
    let base = if len > 0.0 { len * len / area } else { 0.0 };
    let mut best = (base, 0.0);
    if len > mv {
        let t = (area - len * mv) / (len - mv);
        if t > 0.0 && t.is_finite() {
            let l = len + t;
            let val = l * l / (area + 2.0 * t * mv + t * t);
            if val > best.0 {
                best = (val, t);
            }
        }
    }
    if best.0 < 1.0 {
        best = (1.0, f64::INFINITY);
    }
    best
}

/// Length, area and `len^2 / area` of a metric for a family: the quantity
/// reported as the VEL value. Shared with replay so both agree bit for bit.
pub fn metric_value(
    tri: &Triangulation,
    metric: &VertexMetric,
    fam: PathFamily,
    sheets: usize,
) -> Result<(f64, f64, f64), VelError> {
    let path = super::oracle::shortest_with_sheets(tri, metric, fam, sheets)?;
    let len = metric.length(&path)?;
    let area = metric.area();
    Ok((len, area, len * len / area))
}

/// Vertex extremal length of `fam` by cutting planes.
pub fn vel_exact(tri: &Triangulation, fam: PathFamily, opts: &VelOptions) -> Result<VelResult, VelError> {
    let n = tri.num_vertices();
    let v = fam.vertex();
    if v >= n {
        return Err(VelError::OutOfRange(v));
    }
    let oracle = match fam {
        PathFamily::Boundary(_) => {
            if tri.is_outer(v) {
                let mut m = vec![0.0; n];
                m[v] = 1.0;
                return Ok(VelResult::trivial(1.0, VertexMetric::new(m), vec![vec![v]]));
            }
            Oracle::Boundary { tri, v }
        }
        PathFamily::Winding { root, v } => {
            if root >= n {
                return Err(VelError::OutOfRange(root));
            }
            if root == v {
                return Ok(VelResult::trivial(0.0, VertexMetric::constant(n, 0.0), Vec::new()));
            }
            Oracle::Winding { cover: CutCover::new(tri, root), v }
        }
    };

    let mut sheets = opts.sheets;
    let mut prob = Restricted::new(n);
    let start = vec![1.0 / n as f64; n];
    let (_, first, more) =
        oracle.exact(&start, sheets, opts.paths_per_round).ok_or(VelError::Oracle("empty family"))?;
    prob.add(&first);
    for p in &more {
        prob.add(p);
    }

    // (lower, metric, len), starting from the metric supported on `v`.
    let mut unit = vec![0.0; n];
    unit[v] = 1.0;
    let mut best: Option<(f64, Vec<f64>, f64)> = Some((1.0, unit, 1.0));
    let mut upper = f64::INFINITY;
    let mut rounds = 0;
    loop {
        rounds += 1;
        if rounds > opts.max_rounds {
            let lower = best.as_ref().map_or(0.0, |b| b.0);
            return Err(VelError::IterationCap { gap: upper - lower });
        }
        prob.solve()?;
        let area = prob.m.iter().map(|x| x * x).sum::<f64>();
        let lb_area = 2.0 * prob.dual();
        if lb_area > 0.0 {
            upper = upper.min(1.0 / lb_area);
        }
        let early = best
            .as_ref()
            .is_some_and(|b| opts.stop_above.is_some_and(|t| b.0 >= t) || opts.stop_below.is_some_and(|t| upper <= t));
        let mut added = false;
        if !early {
            if let Some(p) = oracle.cheap(&prob.m, sheets) {
                if prob.add(&p) {
                    continue;
                }
            }
            let (len, path, more) =
                oracle.exact(&prob.m, sheets, opts.paths_per_round).ok_or(VelError::Oracle("empty family"))?;
            if area > 0.0 {
                let (lower, t) = with_vertex_weight(len, area, prob.m[v]);
                if best.as_ref().is_none_or(|b| lower > b.0) {
                    let mut m = prob.m.clone();
                    if t.is_infinite() {
                        m.iter_mut().for_each(|x| *x = 0.0);
                        m[v] = 1.0;
                        best = Some((lower, m, 1.0));
                    } else {
                        m[v] += t;
                        best = Some((lower, m, len + t));
                    }
                }
            }
            if len < 1.0 - 1e-12 {
                added |= prob.add(&path);
                for p in &more {
                    added |= prob.add(p);
                }
            }
        }
        let lower = best.as_ref().map_or(0.0, |b| b.0);
        let settled = early
            || (best.is_some()
                && (upper - lower <= opts.tol * lower.max(1.0)
                    || opts.stop_above.is_some_and(|t| lower >= t)
                    || opts.stop_below.is_some_and(|t| upper <= t)));
        if settled {
            if let (Oracle::Winding { cover, v }, Some((_, m, len))) = (&oracle, &best) {
                // Re-run with one more sheet on each side; a strictly shorter
                // walk means the bound was too tight.
                let wider = cover.shortest_winding(m, *v, sheets + 1).ok_or(VelError::Oracle("empty family"))?;
                if set_len(m, &wider) < len * (1.0 - 1e-12) {
                    sheets += 1;
                    prob.add(&wider);
                    best = None;
                    continue;
                }
            }
            break;
        }
        if !added {
            return Err(VelError::IterationCap { gap: upper - lower });
        }
    }

    let (_, m, len) = best.expect("bounds closed with a metric");
    let metric = VertexMetric::new(m.iter().map(|x| x / len).collect());
    let (_, _, value) = metric_value(tri, &metric, fam, sheets)?;
    let certificates: Vec<Vec<usize>> =
        prob.rows.iter().zip(&prob.lambda).filter(|(_, &l)| l > 0.0).map(|(r, _)| r.clone()).collect();
    Ok(VelResult {
        value,
        upper: upper.max(value),
        metric,
        certificates,
        gap: (upper - value).max(0.0),
        iterations: rounds,
        sheets,
    })
}
