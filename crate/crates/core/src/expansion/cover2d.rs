use crate::dynsys::{Map2D, MapSequence, Sequence2D, SineSawFamily, WeightRule};
use crate::region::Box2;

use super::{CoverRow, ExpansionError, ExpansionReport, Family2D};

/// Outcome of the face-sign test for one source box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaceOutcome {
    /// Smallest strict gap after the Lipschitz correction; positive means
    /// the image covers the hull of the targets.
    pub margin: f64,
    /// Same gap without the correction.
    pub raw_margin: f64,
}

impl FaceOutcome {
    pub fn covered(&self) -> bool {
        self.margin > 0.0
    }

    pub fn inconclusive(&self) -> bool {
        !self.covered() && self.raw_margin > 0.0
    }
}

/// For each axis `k`, component `k` of `map` must sit strictly below the
/// targets' lowest `k`-coordinate on one face of `src` normal to `k` and
/// strictly above their highest on the opposite face. Faces are sampled on
/// `grid` points and widened by `lip · h`. When both axes pass, the
/// Poincaré–Miranda theorem puts every target point in `map(src)`.
pub fn face_test(map: &Map2D, src: &Box2, targets: &[Box2], grid: usize, lip: f64) -> FaceOutcome {
    let grid = grid.max(2);
    let mut margin = f64::INFINITY;
    let mut raw_margin = f64::INFINITY;
    for k in 0..2 {
        let tlo = targets.iter().map(|t| t.axis(k).lo).fold(f64::INFINITY, f64::min);
        let thi = targets.iter().map(|t| t.axis(k).hi).fold(f64::NEG_INFINITY, f64::max);
        let along = src.axis(1 - k);
        let h = along.len() / (grid - 1) as f64;
        let face = |xk: f64| -> (f64, f64) {
            along.grid(grid).into_iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| {
                let mut p = [0.0; 2];
                p[k] = xk;
                p[1 - k] = s;
                let v = map.component(k, p);
                (lo.min(v), hi.max(v))
            })
        };
        let (lo_min, lo_max) = face(src.axis(k).lo);
        let (hi_min, hi_max) = face(src.axis(k).hi);
        let gap = |corr: f64| {
            let increasing = (tlo - lo_max - corr).min(hi_min - corr - thi);
            let decreasing = (lo_min - corr - thi).min(tlo - hi_max - corr);
            increasing.max(decreasing)
        };
        margin = margin.min(gap(lip * h));
        raw_margin = raw_margin.min(gap(0.0));
    }
    FaceOutcome { margin, raw_margin }
}

fn two_d(seq: &MapSequence) -> Result<&Sequence2D, ExpansionError> {
    match seq {
        MapSequence::TwoD(s) => Ok(s),
        MapSequence::OneD(_) => Err(ExpansionError::NotTwoDimensional),
    }
}

fn targets(fam: &Family2D, i: usize, n: usize) -> Vec<Box2> {
    fam.matrix().successors(i).map(|j| *fam.set(j, n + 1)).collect()
}

/// Face-sign covering check at the given steps. The Lipschitz constant for
/// the correction is the sampled upper band on each source box. The test
/// is affine in the weight, so passing at both ends of the weight range
/// extends the verdict to every `n`.
pub fn check_covering_2d_at(
    seq: &MapSequence,
    fam: &Family2D,
    steps: &[usize],
    grid: usize,
) -> Result<ExpansionReport, ExpansionError> {
    let s = two_d(seq)?;
    fam.check_strict()?;
    let samples = grid * grid;
    let mut rows = Vec::new();
    let mut lambda_by_step = Vec::new();
    for &n in steps {
        let map = s.map_at(n);
        let mut lam = f64::INFINITY;
        for i in 1..=fam.n_symbols() {
            let src = *fam.set(i, n);
            let (lo, hi) = s.lipschitz_band(n, &[src], samples, n as u64)?;
            lam = lam.min(lo);
            let out = face_test(&map, &src, &targets(fam, i, n), grid, hi);
            if out.inconclusive() {
                return Err(ExpansionError::FaceTestInconclusive { n, i });
            }
            rows.push(CoverRow {
                n,
                i,
                covered: out.covered(),
                margin: out.margin,
                image: None,
            });
        }
        lambda_by_step.push(lam);
    }

    let (w0, w1) = s.family.weight.range();
    let mut all_n = true;
    for phase in 0..fam.period() {
        for i in 1..=fam.n_symbols() {
            let src = *fam.set(i, phase);
            let tg = targets(fam, i, phase);
            for w in [w0, w1] {
                let map = s.family.with_weight(w);
                let probe = Sequence2D {
                    family: SineSawFamily {
                        weight: WeightRule::Constant(w),
                        scale: s.family.scale,
                    },
                };
                let (_, hi) = probe.lipschitz_band(0, &[src], samples, 0)?;
                all_n &= face_test(&map, &src, &tg, grid, hi).covered();
            }
        }
    }
    let notes = vec![
        format!("face-sign test with {grid} samples per face, Lipschitz-corrected"),
        format!("weight range [{w0}, {w1}] checked at both ends: {all_n}"),
        "lambda_by_step lists the checked steps in order; values are sampled".into(),
    ];
    Ok(ExpansionReport::finish(
        2,
        steps.len(),
        fam.period(),
        fam,
        rows,
        lambda_by_step,
        all_n,
        notes,
    ))
}

/// [`check_covering_2d_at`] for `n = 0, …, horizon - 1`.
pub fn check_covering_2d(
    seq: &MapSequence,
    fam: &Family2D,
    horizon: usize,
    grid: usize,
) -> Result<ExpansionReport, ExpansionError> {
    let steps: Vec<usize> = (0..horizon).collect();
    check_covering_2d_at(seq, fam, &steps, grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::Mode;
    use crate::symbolic::TransitionMatrix;

    fn v1() -> Box2 {
        Box2::square(-1.0 / 6.0, 1.0 / 6.0)
    }

    fn v2() -> Box2 {
        Box2::square(0.5, 5.0 / 6.0)
    }

    #[test]
    fn left_and_right_faces_of_v1() {
        let map = SineSawFamily {
            weight: WeightRule::IndexRatio,
            scale: 12.0,
        }
        .map_at(7);
        let left: f64 = (0..50)
            .map(|k| map.component(0, [-1.0 / 6.0, -1.0 / 6.0 + k as f64 / 147.0]))
            .fold(f64::NEG_INFINITY, f64::max);
        let right: f64 = (0..50)
            .map(|k| map.component(0, [1.0 / 6.0, -1.0 / 6.0 + k as f64 / 147.0]))
            .fold(f64::INFINITY, f64::min);
        assert!(left <= -1.0 && right >= 1.0);
    }

    #[test]
    fn weakened_map_fails() {
        let seq = MapSequence::TwoD(Sequence2D {
            family: SineSawFamily {
                weight: WeightRule::Constant(0.0),
                scale: 1.0,
            },
        });
        let fam = Family2D::constant(TransitionMatrix::full(2).unwrap(), vec![v1(), v2()], Mode::Strict)
            .unwrap();
        match check_covering_2d(&seq, &fam, 1, 32) {
            Ok(r) => assert!(!r.weak_ce),
            Err(e) => assert!(matches!(e, ExpansionError::FaceTestInconclusive { .. })),
        }
    }

    #[test]
    fn wrong_dimension() {
        let seq = MapSequence::OneD(crate::dynsys::Sequence1D::constant(
            crate::dynsys::Map1D::affine(2.0, 0.0, 0.0, 1.0),
        ));
        let fam = Family2D::constant(TransitionMatrix::full(2).unwrap(), vec![v1(), v2()], Mode::Strict)
            .unwrap();
        assert_eq!(
            check_covering_2d(&seq, &fam, 1, 8).unwrap_err(),
            ExpansionError::NotTwoDimensional
        );
    }
}
