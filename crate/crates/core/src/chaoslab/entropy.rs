use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coding::Coder;
use crate::dynsys::{MapSequence, Point};
use crate::expansion::{ExpansionReport, Family1D};
use crate::hyperspace::{random_subregion, MEMBERSHIP_TOL};
use crate::par::{item_seed, map_indexed};
use crate::region::{Box2, IntervalUnion};
use crate::symbolic::{big_ln, Symbol, TransitionMatrix};

use super::ChaosError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntropyMethod {
    WordCount,
    ItineraryCount,
    SeparatedSet,
    InducedProbe,
}

impl EntropyMethod {
    /// How the estimate relates to the topological entropy.
    pub fn label(&self) -> &'static str {
        match self {
            EntropyMethod::WordCount => "exact word growth of the subshift",
            EntropyMethod::ItineraryCount => "lower-bound flavored: itineraries realized by decoded cells",
            EntropyMethod::SeparatedSet => "estimator, not the open-cover entropy: greedy (n, eps)-separated orbits",
            EntropyMethod::InducedProbe => "lower-bound flavored: induced itineraries of sub-regions of cells",
        }
    }
}

impl FromStr for EntropyMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "word-count" | "word_count" => Ok(EntropyMethod::WordCount),
            "itinerary-count" | "itinerary_count" => Ok(EntropyMethod::ItineraryCount),
            "separated-set" | "separated_set" => Ok(EntropyMethod::SeparatedSet),
            "induced" | "induced-probe" | "induced_probe" => Ok(EntropyMethod::InducedProbe),
            _ => Err(format!("unknown entropy method {s:?}")),
        }
    }
}

impl fmt::Display for EntropyMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntropyMethod::WordCount => "word-count",
            EntropyMethod::ItineraryCount => "itinerary-count",
            EntropyMethod::SeparatedSet => "separated-set",
            EntropyMethod::InducedProbe => "induced-probe",
        })
    }
}

/// Per-`n` values `ln(count_n) / n` and a growth rate.
///
/// `rate` is the slope of `ln(count_n)` between `⌈n_max/2⌉` and `n_max`,
/// which drops the transient that `ln(count_n) / n` carries.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyEstimate {
    pub method: EntropyMethod,
    pub label: &'static str,
    pub n: Vec<usize>,
    pub ln_counts: Vec<f64>,
    pub values: Vec<f64>,
    pub rate: f64,
    /// `log ρ(A)`
    pub reference: f64,
}

impl EntropyEstimate {
    fn new(method: EntropyMethod, ln_counts: Vec<f64>, reference: f64) -> Self {
        let n: Vec<usize> = (1..=ln_counts.len()).collect();
        let values = n.iter().zip(&ln_counts).map(|(&k, &c)| c / k as f64).collect();
        let rate = match ln_counts.len() {
            0 => 0.0,
            1 => ln_counts[0],
            m => {
                let h = m.div_ceil(2);
                (ln_counts[m - 1] - ln_counts[h - 1]) / (m - h) as f64
            }
        };
        EntropyEstimate {
            method,
            label: method.label(),
            n,
            ln_counts,
            values,
            rate,
            reference,
        }
    }

    pub fn last_value(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }
}

fn reference(matrix: &TransitionMatrix) -> f64 {
    matrix.entropy(1e-12).unwrap_or(f64::NAN)
}

/// `ln #{admissible words of length n} / n`.
pub fn word_count_entropy(matrix: &TransitionMatrix, n_max: usize) -> EntropyEstimate {
    let ln = (1..=n_max).map(|n| big_ln(&matrix.count_words(n))).collect();
    EntropyEstimate::new(EntropyMethod::WordCount, ln, reference(matrix))
}

fn require_covering(report: &ExpansionReport) -> Result<(), ChaosError> {
    if report.dim == 1 && report.weak_ce {
        Ok(())
    } else {
        Err(ChaosError::CoveringRequired)
    }
}

/// Nonempty cells `V_α^{len-1,0}` of all admissible words of length `len`,
/// built by prepending symbols from time `len - 1` back to `0`.
fn cells_of_length(coder: &Coder, len: usize, budget: usize) -> Result<Vec<(Vec<Symbol>, IntervalUnion)>, ChaosError> {
    let fam = coder.family();
    let a = fam.matrix();
    let mut level: Vec<(Vec<Symbol>, IntervalUnion)> = (1..=fam.n_symbols())
        .map(|j| (vec![j], IntervalUnion::single(*fam.set(j, len - 1))))
        .collect();
    for t in (0..len - 1).rev() {
        let next: Vec<Vec<(Vec<Symbol>, IntervalUnion)>> = map_indexed(level.len(), |k| {
            let (w, c) = &level[k];
            (1..=fam.n_symbols())
                .filter(|&i| a.allows(i, w[0]))
                .filter_map(|i| {
                    let cell = coder.prepend_cell(i, t, c);
                    (!cell.is_empty()).then(|| {
                        let mut w2 = Vec::with_capacity(w.len() + 1);
                        w2.push(i);
                        w2.extend_from_slice(w);
                        (w2, cell)
                    })
                })
                .collect()
        });
        level = next.into_iter().flatten().collect();
        if level.len() > budget {
            return Err(ChaosError::InsufficientSamples(format!(
                "more than {budget} cells at length {len}; raise the budget"
            )));
        }
    }
    Ok(level)
}

/// Distinct itineraries of the midpoints of all nonempty cells of length
/// `n`, for `n = 1, …, n_max`. `budget` caps the cells held at once.
pub fn itinerary_count_entropy(
    coder: &Coder,
    report: &ExpansionReport,
    n_max: usize,
    budget: usize,
) -> Result<EntropyEstimate, ChaosError> {
    require_covering(report)?;
    let mut ln = Vec::with_capacity(n_max);
    for len in 1..=n_max {
        let cells = cells_of_length(coder, len, budget)?;
        let words: HashSet<Vec<Symbol>> = map_indexed(cells.len(), |k| {
            let x = cells[k].1.hull().expect("nonempty").midpoint();
            coder.itinerary(x, 0, len).ok().map(|w| w.symbols().to_vec())
        })
        .into_iter()
        .flatten()
        .collect();
        if words.is_empty() {
            return Err(ChaosError::InsufficientSamples(format!("no itinerary realized at length {len}")));
        }
        ln.push((words.len() as f64).ln());
    }
    Ok(EntropyEstimate::new(
        EntropyMethod::ItineraryCount,
        ln,
        reference(coder.family().matrix()),
    ))
}

/// Symbols of `f̄_0^k(K)` for `k < len`: the unique step set containing
/// each image, or `None` once an image fits in no step set.
fn induced_word(coder: &Coder, k: &IntervalUnion, len: usize) -> Option<Vec<Symbol>> {
    let fam = coder.family();
    let seq = coder.sequence();
    let mut cur = k.clone();
    let mut out = Vec::with_capacity(len);
    for step in 0..len {
        if step > 0 {
            cur = seq.map_at(step - 1).image_of_union(&cur).ok()?;
        }
        let s = (1..=fam.n_symbols())
            .find(|&i| cur.is_subset_of(&IntervalUnion::single(*fam.set(i, step)), MEMBERSHIP_TOL))?;
        out.push(s);
    }
    Some(out)
}

/// Itinerary counting on the induced system: `samples` random compact
/// sub-regions per nonempty cell, or the midpoint singleton when
/// `samples == 0`.
pub fn induced_entropy_probe(
    coder: &Coder,
    report: &ExpansionReport,
    n_max: usize,
    samples: usize,
    seed: u64,
    budget: usize,
) -> Result<EntropyEstimate, ChaosError> {
    require_covering(report)?;
    let mut ln = Vec::with_capacity(n_max);
    for len in 1..=n_max {
        let cells = cells_of_length(coder, len, budget)?;
        let words: HashSet<Vec<Symbol>> = map_indexed(cells.len(), |c| {
            let region = &cells[c].1;
            if samples == 0 {
                let x = region.hull().expect("nonempty").midpoint();
                return induced_word(coder, &IntervalUnion::point(x), len).into_iter().collect();
            }
            let mut rng = ChaCha8Rng::seed_from_u64(item_seed(item_seed(seed, len), c));
            (0..samples)
                .filter_map(|_| induced_word(coder, &random_subregion(region, 3, &mut rng), len))
                .collect::<Vec<_>>()
        })
        .into_iter()
        .flatten()
        .collect();
        if words.is_empty() {
            return Err(ChaosError::InsufficientSamples(format!("no induced word at length {len}")));
        }
        ln.push((words.len() as f64).ln());
    }
    Ok(EntropyEstimate::new(
        EntropyMethod::InducedProbe,
        ln,
        reference(coder.family().matrix()),
    ))
}

/// Greedy `(n, ε)`-separated subsets of `orbits` under the Bowen metric
/// `max_{k<n} d(x_k, y_k)`, for every `ε` in `eps`. Scales are processed
/// from the largest down and each greedy pass starts from the set kept at
/// the previous scale, so the counts never decrease as `ε` shrinks.
pub fn separated_counts(orbits: &[Vec<Point>], n: usize, eps: &[f64]) -> Vec<usize> {
    let bowen = |a: &[Point], b: &[Point]| {
        a.iter()
            .zip(b)
            .take(n)
            .map(|(p, q)| p.dist(q))
            .fold(0.0f64, f64::max)
    };
    let mut order: Vec<usize> = (0..eps.len()).collect();
    order.sort_by(|&a, &b| eps[b].total_cmp(&eps[a]));
    let mut kept: Vec<usize> = Vec::new();
    let mut counts = vec![0; eps.len()];
    for &e in &order {
        for (i, o) in orbits.iter().enumerate() {
            if kept.contains(&i) {
                continue;
            }
            if kept.iter().all(|&k| bowen(o, &orbits[k]) > eps[e]) {
                kept.push(i);
            }
        }
        counts[e] = kept.len();
    }
    counts
}

fn sample_point<R: Rng + ?Sized>(seq: &MapSequence, fam1: Option<&Family1D>, boxes: &[Box2], rng: &mut R) -> Point {
    match (seq, fam1) {
        (MapSequence::OneD(_), Some(f)) => {
            let v = f.outer()[rng.gen_range(0..f.outer().len())];
            Point::One(rng.gen_range(v.lo..=v.hi))
        }
        _ => {
            let b = boxes[rng.gen_range(0..boxes.len())];
            Point::Two([rng.gen_range(b.x.lo..=b.x.hi), rng.gen_range(b.y.lo..=b.y.hi)])
        }
    }
}

/// Greedy separated-set growth over `samples` orbits started uniformly in
/// the outer sets. Orbits leaving the domain before `n_max` are dropped.
/// Pass the 1D family, or the planar outer boxes.
pub fn separated_set_entropy(
    seq: &MapSequence,
    fam1: Option<&Family1D>,
    boxes: &[Box2],
    matrix: &TransitionMatrix,
    n_max: usize,
    eps: f64,
    samples: usize,
    seed: u64,
) -> Result<EntropyEstimate, ChaosError> {
    if fam1.is_none() && boxes.is_empty() {
        return Err(ChaosError::InsufficientSamples("no region to sample from".into()));
    }
    let orbits: Vec<Vec<Point>> = map_indexed(samples, |s| {
        let mut rng = ChaCha8Rng::seed_from_u64(item_seed(seed, s));
        let x = sample_point(seq, fam1, boxes, &mut rng);
        seq.orbit(0, n_max.saturating_sub(1), x).ok()
    })
    .into_iter()
    .flatten()
    .collect();
    if orbits.len() < 2 {
        return Err(ChaosError::InsufficientSamples(format!(
            "{} of {samples} orbits stayed in the domain",
            orbits.len()
        )));
    }
    let ln = (1..=n_max)
        .map(|n| (separated_counts(&orbits, n, &[eps])[0] as f64).ln())
        .collect();
    Ok(EntropyEstimate::new(EntropyMethod::SeparatedSet, ln, reference(matrix)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynsys::{Map1D, Sequence1D};
    use crate::examples::{example_5_1, Pattern51};
    use crate::expansion::{check_covering_1d, Mode};
    use crate::region::Interval;

    #[test]
    fn full_shift_words_are_exact() {
        let e = word_count_entropy(&TransitionMatrix::full(2).unwrap(), 20);
        for v in &e.values {
            assert!((v - 2f64.ln()).abs() < 1e-12);
        }
        assert!((e.rate - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn golden_mean_words() {
        let a = crate::symbolic::validate_matrix(&[[1, 1], [1, 0]]).unwrap();
        let e = word_count_entropy(&a, 32);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((e.last_value() - phi.ln()).abs() < 0.02);
    }

    #[test]
    fn cell_itineraries_reach_log_two() {
        let (seq, fam) = example_5_1(&Pattern51::Alternate).unwrap();
        let r = check_covering_1d(&seq, &fam, 2).unwrap();
        let c = Coder::new(&seq, &fam).unwrap();
        let e = itinerary_count_entropy(&c, &r, 10, 1 << 20).unwrap();
        assert!((e.last_value() - 2f64.ln()).abs() < 1e-12);
        let i = induced_entropy_probe(&c, &r, 8, 1, 3, 1 << 20).unwrap();
        assert!((i.last_value() - 2f64.ln()).abs() < 1e-12);
        let s = induced_entropy_probe(&c, &r, 8, 0, 3, 1 << 20).unwrap();
        let p = itinerary_count_entropy(&c, &r, 8, 1 << 20).unwrap();
        assert_eq!(s.ln_counts, p.ln_counts);
    }

    #[test]
    fn uncovered_scenario_is_refused() {
        let seq = MapSequence::OneD(Sequence1D::constant(Map1D::affine(1.0, 0.0, 0.0, 3.0)));
        let fam = Family1D::constant(
            TransitionMatrix::full(2).unwrap(),
            vec![Interval::new(0.0, 1.0), Interval::new(2.0, 3.0)],
            Mode::Strict,
        )
        .unwrap();
        let r = check_covering_1d(&seq, &fam, 1).unwrap();
        let c = Coder::new(&seq, &fam).unwrap();
        assert_eq!(itinerary_count_entropy(&c, &r, 4, 100).unwrap_err(), ChaosError::CoveringRequired);
        assert_eq!(induced_entropy_probe(&c, &r, 4, 1, 0, 100).unwrap_err(), ChaosError::CoveringRequired);
        let e = separated_set_entropy(&seq, Some(&fam), &[], fam.matrix(), 12, 0.05, 200, 1).unwrap();
        assert_eq!(e.rate, 0.0);
    }

    #[test]
    fn budget_is_enforced() {
        let (seq, fam) = example_5_1(&Pattern51::AllF1).unwrap();
        let r = check_covering_1d(&seq, &fam, 1).unwrap();
        let c = Coder::new(&seq, &fam).unwrap();
        assert!(matches!(
            itinerary_count_entropy(&c, &r, 6, 10),
            Err(ChaosError::InsufficientSamples(_))
        ));
    }
}
