//! Correlated two-sided Brownian traces on a grid, with interval minima.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use rand_distr::{Distribution, StandardNormal};

use super::CrtError;
use crate::rng::{derive_seed, rng_from_seed};

/// Default cap on `horizon / epsilon`.
pub const DEFAULT_MAX_VERTICES: usize = 10_000_000;

/// How the Brownian pair is drawn on the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sampler {
    /// Independent Gaussian increments, one step at a time.
    #[default]
    Increments,
    /// Midpoint refinement from `t = horizon` down to the grid step, with one
    /// random stream per refinement level. The same seed then yields the same
    /// path at every dyadic resolution, so runs at `epsilon` and `epsilon / 2`
    /// see one Brownian motion. Needs `horizon * oversample / epsilon` to be a
    /// power of two.
    Dyadic,
}

/// Sampling parameters for [`CorrelatedTrace::sample`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceParams {
    pub gamma: f64,
    /// Vertex spacing.
    pub epsilon: f64,
    /// Trace covers `[-horizon, horizon]`.
    pub horizon: f64,
    /// Grid steps per vertex.
    pub oversample: usize,
    pub seed: u64,
    pub max_vertices: usize,
    pub sampler: Sampler,
}

impl TraceParams {
    pub fn new(gamma: f64, epsilon: f64, horizon: f64, seed: u64) -> Self {
        Self {
            gamma,
            epsilon,
            horizon,
            oversample: 16,
            seed,
            max_vertices: DEFAULT_MAX_VERTICES,
            sampler: Sampler::Increments,
        }
    }
}

/// Correlation of the two coordinates: `-cos(pi gamma^2 / 4)`.
pub fn correlation(gamma: f64) -> f64 {
    -libm::cos(PI * gamma * gamma / 4.0)
}

/// Two independent standard Brownian motions at `t j / 2^m`, `j = 0..=2^m`,
/// by midpoint refinement. Level `k` draws from its own stream, so the values
/// at a given dyadic time do not depend on `m`.
fn dyadic_pair(seed: u64, m: u32, t: f64) -> (Vec<f64>, Vec<f64>) {
    let n = 1usize << m;
    let mut w1 = vec![0.0; n + 1];
    let mut w2 = vec![0.0; n + 1];
    let mut rng = rng_from_seed(derive_seed(seed, 0));
    let sd = libm::sqrt(t);
    w1[n] = sd * Distribution::<f64>::sample(&StandardNormal, &mut rng);
    w2[n] = sd * Distribution::<f64>::sample(&StandardNormal, &mut rng);
    for level in 1..=m {
        let mut rng = rng_from_seed(derive_seed(seed, level as u64));
        let half = n >> level;
        // Midpoint of an interval of length t / 2^(level - 1): variance a quarter of that.
        let sd = libm::sqrt(t / libm::exp2(level as f64 + 1.0));
        for j in (half..n).step_by(2 * half) {
            let z1: f64 = StandardNormal.sample(&mut rng);
            let z2: f64 = StandardNormal.sample(&mut rng);
            w1[j] = 0.5 * (w1[j - half] + w1[j + half]) + sd * z1;
            w2[j] = 0.5 * (w2[j - half] + w2[j + half]) + sd * z2;
        }
    }
    (w1, w2)
}

/// Range-minimum structure: per-block prefix and suffix minima plus a sparse
/// table over block minima. Queries spanning two or more blocks are O(1);
/// queries inside one block scan at most `BLOCK` values.
#[derive(Debug, Clone)]
struct RangeMin {
    prefix: Vec<f64>,
    suffix: Vec<f64>,
    table: Vec<Vec<f64>>,
}

const BLOCK: usize = 32;

impl RangeMin {
    fn new(values: &[f64]) -> Self {
        let n = values.len();
        let mut prefix = values.to_vec();
        let mut suffix = values.to_vec();
        for b in (0..n).step_by(BLOCK) {
            let end = (b + BLOCK).min(n);
            for i in b + 1..end {
                prefix[i] = prefix[i].min(prefix[i - 1]);
            }
            for i in (b..end - 1).rev() {
                suffix[i] = suffix[i].min(suffix[i + 1]);
            }
        }
        let blocks = n.div_ceil(BLOCK);
        let mut table = vec![(0..blocks).map(|b| suffix[b * BLOCK]).collect::<Vec<f64>>()];
        let mut width = 1;
        while 2 * width <= blocks {
            let last = table.last().expect("nonempty");
            let next = (0..=blocks - 2 * width).map(|i| last[i].min(last[i + width])).collect();
            table.push(next);
            width *= 2;
        }
        Self { prefix, suffix, table }
    }

    /// Minimum of `values[lo..=hi]`.
    fn query(&self, values: &[f64], lo: usize, hi: usize) -> f64 {
        let (bl, bh) = (lo / BLOCK, hi / BLOCK);
        if bl == bh {
            return values[lo..=hi].iter().copied().fold(f64::INFINITY, f64::min);
        }
        let mut best = self.suffix[lo].min(self.prefix[hi]);
        if bh > bl + 1 {
            let (a, b) = (bl + 1, bh - 1);
            let k = (usize::BITS - 1 - (b - a + 1).leading_zeros()) as usize;
            best = best.min(self.table[k][a]).min(self.table[k][b + 1 - (1 << k)]);
        }
        best
    }
}

/// A pair `(L, R)` of standard two-sided Brownian motions with correlation
/// `-cos(pi gamma^2 / 4)`, sampled at step `epsilon / oversample` on
/// `[-horizon, horizon]` and pinned at `L_0 = R_0 = 0`.
#[derive(Debug, Clone)]
pub struct CorrelatedTrace {
    gamma: f64,
    epsilon: f64,
    oversample: usize,
    seed: u64,
    /// Grid index of time zero.
    zero: usize,
    l: Vec<f64>,
    r: Vec<f64>,
    l_min: RangeMin,
    r_min: RangeMin,
}

impl CorrelatedTrace {
    pub fn sample(p: &TraceParams) -> Result<Self, CrtError> {
        if !(p.gamma > 0.0 && p.gamma < 2.0) {
            return Err(CrtError::BadParameter("gamma must lie in (0, 2)"));
        }
        if !(p.epsilon > 0.0 && p.horizon > 0.0) || p.oversample == 0 {
            return Err(CrtError::BadParameter("epsilon, horizon and oversample must be positive"));
        }
        let ratio = p.horizon / p.epsilon;
        if !(ratio <= p.max_vertices as f64) {
            return Err(CrtError::SizeCap { requested: ratio, cap: p.max_vertices });
        }
        let vertices = libm::ceil(ratio) as usize;
        let steps = vertices * p.oversample;
        let h = p.epsilon / p.oversample as f64;
        let c = correlation(p.gamma);
        let s = libm::sqrt(1.0 - c * c);
        let sd = libm::sqrt(h);

        let mut l = vec![0.0; 2 * steps + 1];
        let mut r = vec![0.0; 2 * steps + 1];
        if p.sampler == Sampler::Dyadic {
            let exact = p.horizon * p.oversample as f64 / p.epsilon;
            let levels = libm::round(libm::log2(exact));
            if !(levels >= 0.0 && levels < 40.0 && libm::fabs(libm::exp2(levels) - exact) <= 1e-9 * exact) {
                return Err(CrtError::BadParameter("dyadic sampler needs horizon * oversample / epsilon = 2^m"));
            }
            let m = levels as u32;
            let steps = 1usize << m;
            let mut l = vec![0.0; 2 * steps + 1];
            let mut r = vec![0.0; 2 * steps + 1];
            for side in 0..2u64 {
                let (w1, w2) = dyadic_pair(derive_seed(p.seed, 2 + side), m, p.horizon);
                for j in 1..=steps {
                    let idx = if side == 0 { steps + j } else { steps - j };
                    l[idx] = w1[j];
                    r[idx] = c * w1[j] + s * w2[j];
                }
            }
            return Ok(Self::build(p.gamma, p.epsilon, p.oversample, p.seed, steps, l, r));
        }
        let mut forward = rng_from_seed(derive_seed(p.seed, 0));
        let mut backward = rng_from_seed(derive_seed(p.seed, 1));
        for j in 1..=steps {
            for (rng, idx, prev) in
                [(&mut forward, steps + j, steps + j - 1), (&mut backward, steps - j, steps - j + 1)]
            {
                let z1: f64 = StandardNormal.sample(rng);
                let z2: f64 = StandardNormal.sample(rng);
                l[idx] = l[prev] + sd * z1;
                r[idx] = r[prev] + sd * (c * z1 + s * z2);
            }
        }
        Ok(Self::build(p.gamma, p.epsilon, p.oversample, p.seed, steps, l, r))
    }

    /// A trace from explicit grid values; `zero` is the grid index of time 0.
    pub fn from_samples(
        gamma: f64,
        epsilon: f64,
        oversample: usize,
        zero: usize,
        l: Vec<f64>,
        r: Vec<f64>,
    ) -> Result<Self, CrtError> {
        if l.len() != r.len() || zero >= l.len() || oversample == 0 || !(epsilon > 0.0) {
            return Err(CrtError::BadParameter("inconsistent samples"));
        }
        Ok(Self::build(gamma, epsilon, oversample, 0, zero, l, r))
    }

    /// Records the seed a reloaded trace was sampled with.
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn build(gamma: f64, epsilon: f64, oversample: usize, seed: u64, zero: usize, l: Vec<f64>, r: Vec<f64>) -> Self {
        let l_min = RangeMin::new(&l);
        let r_min = RangeMin::new(&r);
        Self { gamma, epsilon, oversample, seed, zero, l, r, l_min, r_min }
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn oversample(&self) -> usize {
        self.oversample
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Grid step `epsilon / oversample`.
    pub fn step(&self) -> f64 {
        self.epsilon / self.oversample as f64
    }

    /// Number of grid points.
    pub fn len(&self) -> usize {
        self.l.len()
    }

    pub fn is_empty(&self) -> bool {
        self.l.is_empty()
    }

    /// Grid index of time zero.
    pub fn zero_index(&self) -> usize {
        self.zero
    }

    pub fn l(&self) -> &[f64] {
        &self.l
    }

    pub fn r(&self) -> &[f64] {
        &self.r
    }

    /// Time of grid index `j`.
    pub fn time(&self, j: usize) -> f64 {
        (j as f64 - self.zero as f64) * self.step()
    }

    /// Vertex indices `i` whose grid block lies inside the trace.
    pub fn vertex_range(&self) -> (i64, i64) {
        let k = self.oversample as i64;
        let zero = self.zero as i64;
        let last = self.l.len() as i64 - 1;
        // Block of vertex i: grid offsets ((i - 1) k, i k].
        let lo = 1 - (zero + 1) / k;
        let hi = (last - zero).div_euclid(k);
        (lo, hi)
    }

    /// Grid indices `(first, last)` of vertex `i`'s block.
    pub fn block(&self, i: i64) -> (usize, usize) {
        let k = self.oversample as i64;
        let zero = self.zero as i64;
        (((i - 1) * k + 1 + zero) as usize, (i * k + zero) as usize)
    }

    /// Minimum of `L` (or `R` when `upper`) over grid indices `lo..=hi`.
    pub fn min(&self, upper: bool, lo: usize, hi: usize) -> f64 {
        if upper {
            self.r_min.query(&self.r, lo, hi)
        } else {
            self.l_min.query(&self.l, lo, hi)
        }
    }

    /// Sample correlation of the per-step increments of `L` and `R`.
    pub fn increment_correlation(&self) -> f64 {
        let n = self.l.len() - 1;
        let (mut sl, mut sr, mut sll, mut srr, mut slr) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for j in 0..n {
            let a = self.l[j + 1] - self.l[j];
            let b = self.r[j + 1] - self.r[j];
            sl += a;
            sr += b;
            sll += a * a;
            srr += b * b;
            slr += a * b;
        }
        let nf = n as f64;
        let cov = slr / nf - (sl / nf) * (sr / nf);
        let vl = sll / nf - (sl / nf) * (sl / nf);
        let vr = srr / nf - (sr / nf) * (sr / nf);
        cov / libm::sqrt(vl * vr)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_min_matches_scan() {
        let mut rng = rng_from_seed(9);
        let values: Vec<f64> = (0..300).map(|_| StandardNormal.sample(&mut rng)).collect();
        let rm = RangeMin::new(&values);
        for lo in (0..300).step_by(7) {
            for hi in (lo..300).step_by(5) {
                let scan = values[lo..=hi].iter().copied().fold(f64::INFINITY, f64::min);
                assert_eq!(rm.query(&values, lo, hi), scan);
            }
        }
    }

    #[test]
    fn pinned_at_zero_and_deterministic() {
        let p = TraceParams { oversample: 4, ..TraceParams::new(1.0, 0.1, 2.0, 42) };
        let a = CorrelatedTrace::sample(&p).unwrap();
        let b = CorrelatedTrace::sample(&p).unwrap();
        assert_eq!(a.l()[a.zero_index()], 0.0);
        assert_eq!(a.r()[a.zero_index()], 0.0);
        assert_eq!(a.l(), b.l());
        assert_eq!(a.len(), 2 * 80 + 1);
        assert_eq!(a.vertex_range(), (-19, 20));
        assert_eq!(a.block(0), (a.zero_index() - 3, a.zero_index()));
    }

    #[test]
    fn dyadic_paths_nest_across_resolutions() {
        let fine = TraceParams { sampler: Sampler::Dyadic, ..TraceParams::new(1.0, 1.0 / 64.0, 1.0, 5) };
        let coarse = TraceParams { epsilon: 1.0 / 32.0, ..fine };
        let a = CorrelatedTrace::sample(&fine).unwrap();
        let b = CorrelatedTrace::sample(&coarse).unwrap();
        assert_eq!(a.len(), 2 * 1024 + 1);
        for j in 0..b.len() {
            assert_eq!(b.l()[j], a.l()[2 * j]);
            assert_eq!(b.r()[j], a.r()[2 * j]);
        }
        let odd = TraceParams { epsilon: 0.03, ..fine };
        assert!(CorrelatedTrace::sample(&odd).is_err());
    }

    #[test]
    fn dyadic_increments_have_unit_variance_per_time() {
        let p = TraceParams { oversample: 1, sampler: Sampler::Dyadic, ..TraceParams::new(0.5, 1.0 / 65536.0, 1.0, 8) };
        let tr = CorrelatedTrace::sample(&p).unwrap();
        let h = tr.step();
        let n = tr.len() - 1;
        let var = (0..n).map(|j| (tr.l()[j + 1] - tr.l()[j]).powi(2)).sum::<f64>() / (n as f64 * h);
        assert!((var - 1.0).abs() < 0.02, "{var}");
        assert!((tr.increment_correlation() - correlation(0.5)).abs() < 0.01);
    }

    #[test]
    fn correlation_values() {
        assert!(correlation(core::f64::consts::SQRT_2).abs() < 1e-15);
        assert!((correlation(1.0) + core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(CorrelatedTrace::sample(&TraceParams::new(2.0, 0.1, 1.0, 0)).is_err());
        let p = TraceParams { max_vertices: 5, ..TraceParams::new(1.0, 0.1, 1.0, 0) };
        assert!(matches!(CorrelatedTrace::sample(&p), Err(CrtError::SizeCap { .. })));
    }
}
