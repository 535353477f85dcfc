//! Compact regions under the Hausdorff metric and the induced set-valued
//! maps `A ↦ f_n(A)`.

mod cells;

pub use cells::{
    hausdorff_contraction_probe, hyper_cell_check, hyper_member, induced_covering_check, ContractionRow,
    HyperCellReport, InducedCoverRow, MEMBERSHIP_TOL,
};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::coding::CodingError;
use crate::dynsys::{DynsysError, MapSequence};
use crate::region::{Interval, IntervalUnion, PointSet};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HyperError {
    #[error("regions of different dimension")]
    DimensionMismatch,
    #[error("compact regions are nonempty")]
    Empty,
    #[error("induced orbit leaves the domain at step {0}")]
    OutOfDomainAtStep(usize),
    #[error(transparent)]
    Map(#[from] DynsysError),
    #[error(transparent)]
    Coding(#[from] CodingError),
}

/// A nonempty compact set: a canonical finite union of closed intervals,
/// or a finite set of planar points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "lowercase")]
pub enum CompactRegion {
    Intervals(IntervalUnion),
    Points(PointSet),
}

impl CompactRegion {
    pub fn intervals(u: IntervalUnion) -> Result<Self, HyperError> {
        if u.is_empty() {
            return Err(HyperError::Empty);
        }
        Ok(CompactRegion::Intervals(u))
    }

    pub fn points(p: Vec<[f64; 2]>) -> Result<Self, HyperError> {
        PointSet::new(p).map(CompactRegion::Points).ok_or(HyperError::Empty)
    }

    pub fn dim(&self) -> usize {
        match self {
            CompactRegion::Intervals(_) => 1,
            CompactRegion::Points(_) => 2,
        }
    }

    pub fn diameter(&self) -> f64 {
        match self {
            CompactRegion::Intervals(u) => u.diameter(),
            CompactRegion::Points(p) => p.diameter(),
        }
    }

    /// Intervals for 1D, points for 2D.
    pub fn component_count(&self) -> usize {
        match self {
            CompactRegion::Intervals(u) => u.component_count(),
            CompactRegion::Points(p) => p.len(),
        }
    }

    pub fn as_intervals(&self) -> Option<&IntervalUnion> {
        match self {
            CompactRegion::Intervals(u) => Some(u),
            CompactRegion::Points(_) => None,
        }
    }

    pub fn as_points(&self) -> Option<&PointSet> {
        match self {
            CompactRegion::Points(p) => Some(p),
            CompactRegion::Intervals(_) => None,
        }
    }
}

/// Hausdorff distance. Exact in both representations; see
/// [`IntervalUnion::directed_hausdorff`] for the interval case.
pub fn hausdorff(a: &CompactRegion, b: &CompactRegion) -> Result<f64, HyperError> {
    match (a, b) {
        (CompactRegion::Intervals(x), CompactRegion::Intervals(y)) => Ok(x.hausdorff(y)),
        (CompactRegion::Points(x), CompactRegion::Points(y)) => Ok(x.hausdorff(y)),
        _ => Err(HyperError::DimensionMismatch),
    }
}

/// `f̄_n(A) = f_n(A)`: exact interval images in 1D, pointwise in 2D.
pub fn induced_step(seq: &MapSequence, n: usize, a: &CompactRegion) -> Result<CompactRegion, HyperError> {
    match (seq, a) {
        (MapSequence::OneD(s), CompactRegion::Intervals(u)) => {
            CompactRegion::intervals(s.map_at(n).image_of_union(u)?)
        }
        (MapSequence::TwoD(s), CompactRegion::Points(p)) => {
            CompactRegion::points(p.points().iter().map(|&x| s.eval(n, x)).collect())
        }
        _ => Err(HyperError::DimensionMismatch),
    }
}

/// `A_0, A_1 = f̄_0(A_0), …` with `steps + 1` entries.
pub fn induced_orbit(seq: &MapSequence, a0: &CompactRegion, steps: usize) -> Result<Vec<CompactRegion>, HyperError> {
    let mut out = Vec::with_capacity(steps + 1);
    out.push(a0.clone());
    for k in 0..steps {
        let next = induced_step(seq, k, &out[k]).map_err(|e| match e {
            HyperError::Map(_) => HyperError::OutOfDomainAtStep(k),
            e => e,
        })?;
        out.push(next);
    }
    Ok(out)
}

/// Per-step summary of a 1D induced orbit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitSummary {
    pub step: usize,
    pub component_count: usize,
    pub diameter: f64,
    pub hull_lo: f64,
    pub hull_hi: f64,
}

pub fn summarize(orbit: &[CompactRegion]) -> Vec<OrbitSummary> {
    orbit
        .iter()
        .enumerate()
        .map(|(step, r)| {
            let (hull_lo, hull_hi) = match r {
                CompactRegion::Intervals(u) => {
                    let h = u.hull().expect("nonempty");
                    (h.lo, h.hi)
                }
                CompactRegion::Points(_) => (f64::NAN, f64::NAN),
            };
            OrbitSummary {
                step,
                component_count: r.component_count(),
                diameter: r.diameter(),
                hull_lo,
                hull_hi,
            }
        })
        .collect()
}

/// A random compact sub-region of `region`: up to `max_parts` closed
/// sub-intervals of randomly chosen components, degenerate ones included.
pub fn random_subregion<R: Rng + ?Sized>(region: &IntervalUnion, max_parts: usize, rng: &mut R) -> IntervalUnion {
    let parts = region.parts();
    assert!(!parts.is_empty(), "sampling from an empty region");
    let k = rng.gen_range(1..=max_parts.max(1));
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let p = parts[rng.gen_range(0..parts.len())];
        let a = rng.gen_range(p.lo..=p.hi);
        let b = if rng.gen_bool(0.2) { a } else { rng.gen_range(p.lo..=p.hi) };
        out.push(Interval::new(a.min(b), a.max(b)));
    }
    IntervalUnion::from_intervals(out)
}

/// A random union of up to `max_parts` intervals inside `[lo, hi]`.
pub fn random_region<R: Rng + ?Sized>(lo: f64, hi: f64, max_parts: usize, rng: &mut R) -> IntervalUnion {
    random_subregion(&IntervalUnion::single(Interval::new(lo, hi)), max_parts, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{example_5_1, example_5_2, Pattern51, FIGURE_A0};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn iv(a: f64, b: f64) -> CompactRegion {
        CompactRegion::intervals(IntervalUnion::single(Interval::new(a, b))).unwrap()
    }

    #[test]
    fn basic_distances() {
        assert_eq!(hausdorff(&iv(0.0, 1.0), &iv(2.0, 3.0)).unwrap(), 2.0);
        assert_eq!(hausdorff(&iv(0.0, 1.0), &iv(0.0, 1.0)).unwrap(), 0.0);
        assert_eq!(hausdorff(&iv(0.3, 0.3), &iv(0.8, 0.8)).unwrap(), 0.5);
        let p = CompactRegion::points(vec![[0.0, 0.0]]).unwrap();
        assert_eq!(hausdorff(&p, &iv(0.0, 1.0)).unwrap_err(), HyperError::DimensionMismatch);
    }

    #[test]
    fn empty_regions_are_refused() {
        assert_eq!(CompactRegion::intervals(IntervalUnion::empty()).unwrap_err(), HyperError::Empty);
        assert_eq!(CompactRegion::points(vec![]).unwrap_err(), HyperError::Empty);
    }

    #[test]
    fn first_step_sets_map_onto_zero_three() {
        let (seq, _) = example_5_1(&Pattern51::AllF1).unwrap();
        assert_eq!(induced_step(&seq, 0, &iv(0.0, 0.25)).unwrap(), iv(0.0, 3.0));
        let orbit = induced_orbit(&seq, &iv(0.0, 0.25), 2).unwrap();
        assert_eq!(orbit[1], iv(0.0, 3.0));
        assert_eq!(orbit[2], iv(0.0, 3.0));
        let s = summarize(&orbit);
        assert_eq!((s[1].hull_lo, s[1].hull_hi), (0.0, 3.0));
    }

    #[test]
    fn image_matches_dense_sampling() {
        let (seq, _) = example_5_1(&Pattern51::AllF2).unwrap();
        let MapSequence::OneD(s) = &seq else { unreachable!() };
        let a = iv(0.1, 1.7);
        let img = induced_step(&seq, 0, &a).unwrap();
        let img = img.as_intervals().unwrap().hull().unwrap();
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for k in 0..=10_000 {
            let y = s.eval(0, 0.1 + 1.6 * k as f64 / 10_000.0).unwrap();
            lo = lo.min(y);
            hi = hi.max(y);
        }
        assert!((img.lo - lo).abs() < 1e-3 && (img.hi - hi).abs() < 1e-12);
    }

    #[test]
    fn fixed_singleton_stays() {
        let (seq, _) = example_5_1(&Pattern51::AllF2).unwrap();
        let orbit = induced_orbit(&seq, &iv(0.0, 0.0), 5).unwrap();
        assert!(orbit.iter().all(|r| *r == iv(0.0, 0.0)));
    }

    #[test]
    fn planar_points_map_pointwise() {
        let (seq, _) = example_5_2().unwrap();
        let a0 = CompactRegion::points(FIGURE_A0.to_vec()).unwrap();
        let a1 = induced_step(&seq, 0, &a0).unwrap();
        let MapSequence::TwoD(s) = &seq else { unreachable!() };
        let want: Vec<[f64; 2]> = FIGURE_A0.iter().map(|&p| s.eval(0, p)).collect();
        assert_eq!(a1.as_points().unwrap().points(), want.as_slice());
    }

    #[test]
    fn subregions_stay_inside() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let r = IntervalUnion::from_intervals([Interval::new(0.0, 0.5), Interval::new(1.0, 2.0)]);
        for _ in 0..200 {
            let k = random_subregion(&r, 3, &mut rng);
            assert!(!k.is_empty() && k.is_subset_of(&r, 0.0));
        }
    }

    #[test]
    fn escape_is_reported_with_step() {
        let seq = MapSequence::OneD(crate::dynsys::Sequence1D::constant(crate::dynsys::Map1D::affine(
            2.0, 0.0, 0.0, 1.0,
        )));
        assert_eq!(
            induced_orbit(&seq, &iv(0.3, 0.3), 4).unwrap_err(),
            HyperError::OutOfDomainAtStep(2)
        );
    }
}
