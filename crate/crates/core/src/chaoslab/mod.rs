//! Finite-horizon chaos statistics and entropy estimators.

mod entropy;

pub use entropy::{
    induced_entropy_probe, itinerary_count_entropy, separated_counts, separated_set_entropy, word_count_entropy,
    EntropyEstimate, EntropyMethod,
};

use serde::Serialize;

use crate::coding::{Coder, CodingError};
use crate::dynsys::{DynsysError, MapSequence, Point};
use crate::hyperspace::MEMBERSHIP_TOL;
use crate::par::map_indexed;
use crate::symbolic::{sequence_metric, SymbolGenerator, SymbolicError, TransitionMatrix};

/// Truncation depth of the sequence metric.
pub const METRIC_DEPTH: usize = 40;
/// Distributional witness tolerance.
pub const DC_TOL: f64 = 0.05;
/// Li-Yorke witness: the tail minimum must drop below this times `δ`.
pub const LY_FACTOR: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ChaosError {
    #[error("orbit leaves the domain at step {0}")]
    OrbitEscapes(usize),
    #[error("estimator needs a verified one-dimensional covering")]
    CoveringRequired,
    #[error("not enough samples: {0}")]
    InsufficientSamples(String),
    #[error(transparent)]
    Coding(#[from] CodingError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

/// `count` points spaced evenly in `log` from `lo` to `hi`.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count <= 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|k| (a + (b - a) * k as f64 / (count - 1) as f64).exp())
        .collect()
}

/// Sixteen log-spaced scales from `separation / 1000` to `diameter`.
pub fn default_eps_grid(separation: f64, diameter: f64) -> Vec<f64> {
    log_grid(separation / 1e3, diameter, 16)
}

/// Statistics of a distance series `d_i`, `i < horizon`.
///
/// `liminf`/`limsup` are proxied by min/max over the tail window
/// `[horizon/4, horizon)`. Proximal-time densities are reported over the
/// whole horizon, `F(ε, n) = #{i < n : d_i < ε} / n`, and over sliding
/// windows of length `horizon/16` (stride half a window).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairStats {
    pub horizon: usize,
    pub distances: Vec<f64>,
    pub min: f64,
    pub max: f64,
    pub tail_start: usize,
    pub tail_min: f64,
    pub tail_max: f64,
    pub eps_grid: Vec<f64>,
    pub fractions: Vec<f64>,
    pub window: usize,
    pub window_max_fraction: Vec<f64>,
    pub window_min_fraction: Vec<f64>,
}

impl PairStats {
    pub fn from_distances(distances: Vec<f64>, eps_grid: Vec<f64>) -> Self {
        let horizon = distances.len();
        let tail_start = horizon / 4;
        let fold = |s: &[f64]| {
            s.iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &d| (a.min(d), b.max(d)))
        };
        let (min, max) = fold(&distances);
        let (tail_min, tail_max) = fold(&distances[tail_start..]);
        let window = (horizon / 16).max(1);
        let mut stats = PairStats {
            horizon,
            min,
            max,
            tail_start,
            tail_min,
            tail_max,
            fractions: Vec::new(),
            window,
            window_max_fraction: Vec::new(),
            window_min_fraction: Vec::new(),
            eps_grid,
            distances,
        };
        for k in 0..stats.eps_grid.len() {
            let e = stats.eps_grid[k];
            stats.fractions.push(stats.fraction(e));
            let (lo, hi) = stats.window_fraction_range(e);
            stats.window_min_fraction.push(lo);
            stats.window_max_fraction.push(hi);
        }
        stats
    }

    /// `F(ε, horizon)`.
    pub fn fraction(&self, eps: f64) -> f64 {
        if self.horizon == 0 {
            return 0.0;
        }
        self.distances.iter().filter(|&&d| d < eps).count() as f64 / self.horizon as f64
    }

    /// Smallest and largest windowed proximal density at scale `eps`.
    pub fn window_fraction_range(&self, eps: f64) -> (f64, f64) {
        let w = self.window;
        if self.horizon < w || self.horizon == 0 {
            return (0.0, 0.0);
        }
        let stride = (w / 2).max(1);
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut start = 0;
        while start + w <= self.horizon {
            let f = self.distances[start..start + w].iter().filter(|&&d| d < eps).count() as f64 / w as f64;
            lo = lo.min(f);
            hi = hi.max(f);
            start += stride;
        }
        (lo, hi)
    }

    /// Tail minimum below `LY_FACTOR · δ` and tail maximum above `δ`.
    pub fn li_yorke_witness(&self, delta: f64) -> bool {
        self.tail_min < LY_FACTOR * delta && self.tail_max > delta
    }

    /// Some window is `ε`-proximal at density `≥ 1 - tol` and another is
    /// `δ`-proximal at density `≤ tol`.
    pub fn dc_witness(&self, delta: f64, eps: f64, tol: f64) -> bool {
        self.window_fraction_range(eps).1 >= 1.0 - tol && self.window_fraction_range(delta).0 <= tol
    }
}

/// `d_i = d(f_0^i x, f_0^i y)` for `i < horizon`.
pub fn pair_stats(
    seq: &MapSequence,
    x: Point,
    y: Point,
    horizon: usize,
    eps_grid: Vec<f64>,
) -> Result<PairStats, ChaosError> {
    let orbit = |p: Point| {
        seq.orbit(0, horizon.saturating_sub(1), p).map_err(|e| match e {
            DynsysError::OutOfDomainAtStep(k) => ChaosError::OrbitEscapes(k),
            _ => ChaosError::OrbitEscapes(0),
        })
    };
    let (ox, oy) = (orbit(x)?, orbit(y)?);
    let d = ox.iter().zip(&oy).take(horizon).map(|(a, b)| a.dist(b)).collect();
    Ok(PairStats::from_distances(d, eps_grid))
}

/// `d_i = ρ̂(σ^i α, σ^i β)` truncated at [`METRIC_DEPTH`].
pub fn subshift_pair_stats(
    matrix: &TransitionMatrix,
    alpha: &SymbolGenerator,
    beta: &SymbolGenerator,
    horizon: usize,
    eps_grid: Vec<f64>,
) -> Result<PairStats, ChaosError> {
    for g in [alpha, beta] {
        let len = horizon + METRIC_DEPTH;
        if !g.is_admissible_prefix(matrix, len) {
            let w = g.prefix(len);
            let k = w.windows(2).position(|p| !matrix.allows(p[0], p[1])).unwrap_or(0);
            return Err(SymbolicError::NotAdmissible {
                index: k,
                from: w[k],
                to: w[k + 1],
            }
            .into());
        }
    }
    let d = map_indexed(horizon, |i| {
        sequence_metric(&alpha.shifted(i), &beta.shifted(i), METRIC_DEPTH)
    });
    Ok(PairStats::from_distances(d, eps_grid))
}

/// Decoded orbit pair `x_i = h_i(σ^i α)`, `y_i = h_i(σ^i β)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecodedPair {
    pub stats: PairStats,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// Largest `|f_i(x_i) - x_{i+1}|` over both orbits.
    pub orbit_residual: f64,
    /// Every `x_i`, `y_i` lies in `⋃ V_j`.
    pub bounded: bool,
}

pub fn decoded_pair_stats(
    coder: &Coder,
    alpha: &SymbolGenerator,
    beta: &SymbolGenerator,
    horizon: usize,
    eps_grid: Vec<f64>,
) -> Result<DecodedPair, ChaosError> {
    let decode_all = |g: &SymbolGenerator| -> Result<Vec<f64>, ChaosError> {
        map_indexed(horizon, |i| coder.decode(&g.shifted(i), i).map(|d| d.point))
            .into_iter()
            .collect::<Result<Vec<_>, _>>()
            .map_err(ChaosError::from)
    };
    let (x, y) = (decode_all(alpha)?, decode_all(beta)?);
    let seq = coder.sequence();
    let mut residual = 0.0f64;
    for o in [&x, &y] {
        for i in 0..o.len().saturating_sub(1) {
            let fx = seq.eval(i, o[i]).map_err(|_| ChaosError::OrbitEscapes(i))?;
            residual = residual.max((fx - o[i + 1]).abs());
        }
    }
    let outer = coder.family().outer();
    let bounded = x
        .iter()
        .chain(&y)
        .all(|&p| outer.iter().any(|v| v.contains_with_tol(p, MEMBERSHIP_TOL)));
    let d = x.iter().zip(&y).map(|(a, b)| (a - b).abs()).collect();
    Ok(DecodedPair {
        stats: PairStats::from_distances(d, eps_grid),
        x,
        y,
        orbit_residual: residual,
        bounded,
    })
}
