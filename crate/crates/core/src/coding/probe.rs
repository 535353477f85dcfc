use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::par::{item_seed, map_indexed};
use crate::symbolic::SymbolGenerator;

use super::{Coder, CodingError};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualRow {
    pub trial: usize,
    pub n: usize,
    pub point: f64,
    pub diameter: f64,
    pub depth: usize,
    /// `|f_n(h_n(α)) - h_{n+1}(σα)|`
    pub equivariance: f64,
    /// Distance between `h_n(α)` and the midpoint of the cell named by its
    /// own itinerary.
    pub roundtrip: f64,
    /// Positions where the itinerary disagrees with `α`.
    pub symbol_mismatches: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub trials: usize,
    pub horizon: usize,
    pub seed: u64,
    pub tol: f64,
    pub depth_cap: usize,
    pub max_equivariance: f64,
    pub max_roundtrip: f64,
    pub symbol_mismatches: usize,
    pub max_depth_used: usize,
    pub rows: Vec<ResidualRow>,
}

fn residual_trial(coder: &Coder, trial: usize, horizon: usize, seed: u64) -> Result<ResidualRow, CodingError> {
    let matrix = coder.family().matrix();
    let mut rng = ChaCha8Rng::seed_from_u64(item_seed(seed, trial));
    let alpha = SymbolGenerator::random(matrix, coder.depth_cap + 1, &mut rng);
    let n = rng.gen_range(0..=horizon);
    let x = coder.decode(&alpha, n)?;
    let y = coder.decode(&alpha.shift(), n + 1)?;
    let fx = coder.sequence().eval(n, x.point)?;
    let len = x.depth + 1;
    let word = coder.itinerary(x.point, n, len)?;
    let expected = alpha.prefix(len);
    let symbol_mismatches = word
        .symbols()
        .iter()
        .zip(&expected)
        .filter(|(a, b)| a != b)
        .count();
    let back = coder.nested_cell(word.symbols(), n)?.midpoint();
    Ok(ResidualRow {
        trial,
        n,
        point: x.point,
        diameter: x.diameter,
        depth: x.depth,
        equivariance: (fx - y.point).abs(),
        roundtrip: (back - x.point).abs(),
        symbol_mismatches,
    })
}

/// Equivariance `h_{n+1} ∘ σ = f_n ∘ h_n` and the itinerary round trip on
/// `trials` random admissible sequences, each started at a random
/// `n ≤ horizon`. Trial `i` draws from its own seeded stream.
pub fn conjugacy_residual(
    coder: &Coder,
    trials: usize,
    horizon: usize,
    seed: u64,
) -> Result<ResidualReport, CodingError> {
    let rows = map_indexed(trials, |t| residual_trial(coder, t, horizon, seed))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ResidualReport {
        trials,
        horizon,
        seed,
        tol: coder.tol,
        depth_cap: coder.depth_cap,
        max_equivariance: rows.iter().map(|r| r.equivariance).fold(0.0, f64::max),
        max_roundtrip: rows.iter().map(|r| r.roundtrip).fold(0.0, f64::max),
        symbol_mismatches: rows.iter().map(|r| r.symbol_mismatches).sum(),
        max_depth_used: rows.iter().map(|r| r.depth).max().unwrap_or(0),
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModulusRow {
    /// The pairs share `a_0 … a_depth`, i.e. the depth-`depth` cell.
    pub depth: usize,
    pub pairs: usize,
    pub max_distance: f64,
}

/// Worst `|h_n(α) - h_n(β)|` over random pairs sharing their first
/// `depth + 1` symbols, with `n` uniform in `0..=horizon`.
pub fn equi_modulus_probe(
    coder: &Coder,
    depths: &[usize],
    pairs: usize,
    horizon: usize,
    seed: u64,
) -> Result<Vec<ModulusRow>, CodingError> {
    let matrix = coder.family().matrix();
    let mut out = Vec::with_capacity(depths.len());
    for (di, &depth) in depths.iter().enumerate() {
        let dists = map_indexed(pairs, |p| -> Result<f64, CodingError> {
            let mut rng = ChaCha8Rng::seed_from_u64(item_seed(item_seed(seed, di), p));
            let len = depth + 1 + coder.depth_cap;
            let alpha = SymbolGenerator::random(matrix, len, &mut rng);
            let beta = SymbolGenerator::random_extension(&alpha.prefix(depth + 1), len, matrix, &mut rng)?;
            let n = rng.gen_range(0..=horizon);
            Ok((coder.decode(&alpha, n)?.point - coder.decode(&beta, n)?.point).abs())
        });
        let dists = dists.into_iter().collect::<Result<Vec<_>, _>>()?;
        out.push(ModulusRow {
            depth,
            pairs,
            max_distance: dists.into_iter().fold(0.0, f64::max),
        });
    }
    Ok(out)
}
