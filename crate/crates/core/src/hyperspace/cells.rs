use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coding::Coder;
use crate::dynsys::BISECTION_TOL;
use crate::par::{item_seed, map_indexed};
use crate::region::{Interval, IntervalUnion};
use crate::symbolic::{Symbol, SymbolGenerator};

use super::{random_subregion, HyperError};

/// Slack for containment of computed images in the prescribed sets.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// `K ∈ H_α^{m,n}`: `f_n^k(K) ⊆ V_{a_k, n+k}` for `k = 0, …, m`.
pub fn hyper_member(coder: &Coder, k: &IntervalUnion, prefix: &[Symbol], n: usize) -> bool {
    let seq = coder.sequence();
    let fam = coder.family();
    let mut cur = k.clone();
    for (step, &a) in prefix.iter().enumerate() {
        if step > 0 {
            match seq.map_at(n + step - 1).image_of_union(&cur) {
                Ok(img) => cur = img,
                Err(_) => return false,
            }
        }
        if !cur.is_subset_of(&IntervalUnion::single(*fam.set(a, n + step)), MEMBERSHIP_TOL) {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HyperCellReport {
    pub prefix: Vec<Symbol>,
    pub n: usize,
    pub depth: usize,
    pub cell: IntervalUnion,
    pub samples: usize,
    /// Sampled `K ⊆ V_α^{m,n}` that failed membership.
    pub inside_failures: usize,
    /// Sampled singletons `{x}`, `x ∈ V_α^{m,n}`, that failed membership.
    pub singleton_failures: usize,
    /// Regions reaching outside the cell, and how many were rejected.
    pub exterior_samples: usize,
    pub exterior_rejected: usize,
}

impl HyperCellReport {
    pub fn passed(&self) -> bool {
        self.inside_failures == 0 && self.singleton_failures == 0 && self.exterior_rejected == self.exterior_samples
    }
}

/// A point of `V_{a_0,n}` at positive distance from the cell, or a point
/// just outside `V_{a_0,n}` when the cell is all of it.
fn exterior_point<R: Rng + ?Sized>(cell: &IntervalUnion, v: &Interval, gap: f64, rng: &mut R) -> f64 {
    for _ in 0..64 {
        let x = rng.gen_range(v.lo..=v.hi);
        if cell.dist_to_point(x) > gap {
            return x;
        }
    }
    v.hi + gap.max(1e-6)
}

/// Both sides of the bridge between `V_α^{m,n}` and `H_α^{m,n}`: random
/// compact `K ⊆ V_α^{m,n}` (including singletons) are members, and regions
/// with a point outside the cell are not.
pub fn hyper_cell_check(
    coder: &Coder,
    prefix: &[Symbol],
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<HyperCellReport, HyperError> {
    let cell = coder.nested_cell(prefix, n)?;
    let v0 = *coder.family().set(prefix[0], n);
    let gap = coder.ambiguity;
    let outcomes = map_indexed(samples, |s| {
        let mut rng = ChaCha8Rng::seed_from_u64(item_seed(seed, s));
        let k = random_subregion(&cell.region, 3, &mut rng);
        let inside = hyper_member(coder, &k, prefix, n);
        let x = random_subregion(&cell.region, 1, &mut rng).parts()[0].lo;
        let single = hyper_member(coder, &IntervalUnion::point(x), prefix, n);
        let out = exterior_point(&cell.region, &v0, gap, &mut rng);
        let bad = k.union(&IntervalUnion::point(out));
        let rejected = !hyper_member(coder, &bad, prefix, n);
        (inside, single, rejected)
    });
    Ok(HyperCellReport {
        prefix: prefix.to_vec(),
        n,
        depth: cell.depth,
        samples,
        inside_failures: outcomes.iter().filter(|o| !o.0).count(),
        singleton_failures: outcomes.iter().filter(|o| !o.1).count(),
        exterior_samples: samples,
        exterior_rejected: outcomes.iter().filter(|o| o.2).count(),
        cell: cell.region,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InducedCoverRow {
    pub n: usize,
    pub i: Symbol,
    pub j: Symbol,
    pub samples: usize,
    pub failures: usize,
    /// Largest `H(f_n(K'), K)` over the samples.
    pub max_residual: f64,
}

/// `f̄_n(⟨V_{i,n}⟩) ⊇ ⟨V_{j,n+1}⟩` on samples: each random `K ⊆ V_{j,n+1}`
/// must be the image of `K' = f_n^{-1}(K) ∩ V_{i,n}`.
pub fn induced_covering_check(
    coder: &Coder,
    horizon: usize,
    samples: usize,
    seed: u64,
) -> Vec<InducedCoverRow> {
    let fam = coder.family();
    let seq = coder.sequence();
    let mut rows = Vec::new();
    let mut idx = 0;
    for n in 0..horizon {
        let f = seq.map_at(n);
        for i in 1..=fam.n_symbols() {
            for j in fam.matrix().successors(i) {
                let target = IntervalUnion::single(*fam.set(j, n + 1));
                let vi = *fam.set(i, n);
                let res = map_indexed(samples, |s| {
                    let mut rng = ChaCha8Rng::seed_from_u64(item_seed(item_seed(seed, idx), s));
                    let k = random_subregion(&target, 3, &mut rng);
                    let pre = f.preimage_union_in(&k, &vi, BISECTION_TOL);
                    if pre.is_empty() || !pre.is_subset_of(&IntervalUnion::single(vi), 0.0) {
                        return f64::INFINITY;
                    }
                    f.image_of_union(&pre).map_or(f64::INFINITY, |img| img.hausdorff(&k))
                });
                idx += 1;
                rows.push(InducedCoverRow {
                    n,
                    i,
                    j,
                    samples,
                    failures: res.iter().filter(|&&r| !(r <= MEMBERSHIP_TOL)).count(),
                    max_residual: res.iter().cloned().fold(0.0, f64::max),
                });
            }
        }
    }
    rows
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContractionRow {
    pub depth: usize,
    /// `d(V_α^{m,n})`
    pub cell_diameter: f64,
    /// Largest Hausdorff distance between sampled members of `H_α^{m,n}`.
    pub member_spread: f64,
    /// `H({lo}, {hi})` for the cell's extreme points, against `|hi - lo|`.
    pub singleton_hausdorff: f64,
    pub singleton_distance: f64,
}

/// Cell diameter against the Hausdorff spread of sampled hyper-cell
/// members, at each depth. The endpoint singletons are always among the
/// members, so the two columns agree when sampling is exact.
pub fn hausdorff_contraction_probe(
    coder: &Coder,
    alpha: &SymbolGenerator,
    n: usize,
    depths: &[usize],
    samples: usize,
    seed: u64,
) -> Result<Vec<ContractionRow>, HyperError> {
    let mut out = Vec::with_capacity(depths.len());
    for &m in depths {
        let cell = coder.nested_cell(&alpha.prefix(m + 1), n)?;
        let h = cell.hull();
        let mut rng = ChaCha8Rng::seed_from_u64(item_seed(seed, m));
        let mut members = vec![IntervalUnion::point(h.lo), IntervalUnion::point(h.hi)];
        members.extend((0..samples).map(|_| random_subregion(&cell.region, 3, &mut rng)));
        let mut spread = 0.0f64;
        for (a, x) in members.iter().enumerate() {
            for y in &members[a + 1..] {
                spread = spread.max(x.hausdorff(y));
            }
        }
        out.push(ContractionRow {
            depth: m,
            cell_diameter: cell.diameter(),
            member_spread: spread,
            singleton_hausdorff: members[0].hausdorff(&members[1]),
            singleton_distance: h.hi - h.lo,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{example_5_1, Pattern51};

    fn coder() -> Coder {
        let (seq, fam) = example_5_1(&Pattern51::Alternate).unwrap();
        Coder::new(&seq, &fam).unwrap()
    }

    #[test]
    fn sub_intervals_of_a_cell_are_members() {
        let r = hyper_cell_check(&coder(), &[1, 2], 0, 40, 1).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = hyper_cell_check(&coder(), &[2], 3, 20, 2).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn exterior_point_breaks_membership() {
        let c = coder();
        let k = IntervalUnion::from_intervals([Interval::point(0.01), Interval::point(0.2)]);
        // f_1(0.2) = 2.56 lies in neither step set of f_2
        assert!(!hyper_member(&c, &k, &[1, 1], 0));
        assert!(hyper_member(&c, &IntervalUnion::point(0.01), &[1, 1], 0));
    }

    #[test]
    fn induced_covering_holds() {
        let rows = induced_covering_check(&coder(), 2, 20, 9);
        assert_eq!(rows.len(), 8);
        assert!(rows.iter().all(|r| r.failures == 0), "{rows:?}");
    }

    #[test]
    fn spread_tracks_the_cell() {
        let c = coder();
        let a = SymbolGenerator::periodic(&[1, 2, 2], c.family().matrix()).unwrap();
        let rows = hausdorff_contraction_probe(&c, &a, 0, &[0, 2, 5], 30, 4).unwrap();
        for r in &rows {
            assert_eq!(r.member_spread, r.cell_diameter);
            assert_eq!(r.singleton_hausdorff, r.singleton_distance);
            assert!(r.cell_diameter <= 0.5 * 4f64.powi(-(r.depth as i32)));
        }
        assert_eq!(rows[0].cell_diameter, 0.25);
    }
}
