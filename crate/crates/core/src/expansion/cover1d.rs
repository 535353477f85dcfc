use crate::dynsys::{MapSequence, Sequence1D};
use crate::region::{Interval, IntervalUnion};

use super::{lcm, CoverRow, ExpansionError, ExpansionReport, Family1D};

/// Grid points per set for the sampled secant bound.
pub const LAMBDA_SAMPLES: usize = 64;

fn one_d(seq: &MapSequence) -> Result<&Sequence1D, ExpansionError> {
    match seq {
        MapSequence::OneD(s) => Ok(s),
        MapSequence::TwoD(_) => Err(ExpansionError::NotOneDimensional),
    }
}

/// Slack of `t` inside `img`, or minus the directed distance when `t`
/// sticks out.
fn containment_margin(t: &Interval, img: &IntervalUnion) -> f64 {
    for p in img.parts() {
        if p.lo <= t.lo && t.hi <= p.hi {
            return (t.lo - p.lo).min(p.hi - t.hi);
        }
    }
    -IntervalUnion::single(*t).directed_hausdorff(img).max(f64::MIN_POSITIVE)
}

/// Check `f_n(V_{i,n}) ⊇ ⋃_{a_ij = 1} V_{j,n+1}` for every `n < horizon` with
/// exact interval images.
pub fn check_covering_1d(
    seq: &MapSequence,
    fam: &Family1D,
    horizon: usize,
) -> Result<ExpansionReport, ExpansionError> {
    let s = one_d(seq)?;
    let period = lcm(s.period(), fam.period());
    if horizon < period {
        return Err(ExpansionError::AperiodicRule { period, horizon });
    }
    fam.check_strict()?;
    let a = fam.matrix();
    let n_sym = fam.n_symbols();
    let mut rows = Vec::with_capacity(horizon * n_sym);
    for n in 0..horizon {
        let f = s.map_at(n);
        for i in 1..=n_sym {
            let img = f.image_of_interval(fam.set(i, n))?;
            let mut margin = f64::INFINITY;
            for j in a.successors(i) {
                margin = margin.min(containment_margin(fam.set(j, n + 1), &img));
            }
            rows.push(CoverRow {
                n,
                i,
                covered: margin >= 0.0,
                margin,
                image: img.hull().map(|h| (h.lo, h.hi)),
            });
        }
    }
    let per_period = step_lambdas_in(s, fam, period, LAMBDA_SAMPLES)?;
    let lambda_by_step = (0..horizon).map(|n| per_period[n % period]).collect();
    let notes = vec![format!(
        "maps and sets repeat with joint period {period}; {horizon} steps cover every phase"
    )];
    Ok(ExpansionReport::finish(
        1,
        horizon,
        period,
        fam,
        rows,
        lambda_by_step,
        true,
        notes,
    ))
}

fn step_lambdas_in(
    s: &Sequence1D,
    fam: &Family1D,
    horizon: usize,
    samples: usize,
) -> Result<Vec<f64>, ExpansionError> {
    let period = lcm(s.period(), fam.period());
    let mut cache: Vec<Option<f64>> = vec![None; period];
    let mut out = Vec::with_capacity(horizon);
    for n in 0..horizon {
        let slot = &mut cache[n % period];
        if slot.is_none() {
            let f = s.map_at(n);
            let mut lam = f64::INFINITY;
            for i in 1..=fam.n_symbols() {
                let v = fam.set(i, n);
                let exact = f.derivative_inf(v);
                let (sampled, _) = s.lipschitz_band(n, &IntervalUnion::single(*v), samples)?;
                lam = lam.min(exact.min(sampled));
            }
            *slot = Some(lam);
        }
        out.push(slot.expect("filled"));
    }
    Ok(out)
}

/// Per-step `λ_n = min_i inf |f_n(x) - f_n(y)| / |x - y|` over `V_{i,n}`:
/// the smaller of the closed-form derivative infimum and the sampled
/// secant infimum.
pub fn step_lambdas(
    seq: &MapSequence,
    fam: &Family1D,
    horizon: usize,
    samples: usize,
) -> Result<Vec<f64>, ExpansionError> {
    step_lambdas_in(one_d(seq)?, fam, horizon, samples)
}

/// `λ_lower = min_{n < horizon} λ_n`.
pub fn expansion_constant(
    seq: &MapSequence,
    fam: &Family1D,
    horizon: usize,
    samples: usize,
) -> Result<f64, ExpansionError> {
    Ok(step_lambdas(seq, fam, horizon, samples)?
        .into_iter()
        .fold(f64::INFINITY, f64::min))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynsys::Map1D;
    use crate::expansion::Mode;
    use crate::symbolic::TransitionMatrix;

    fn iv(a: f64, b: f64) -> Interval {
        Interval::new(a, b)
    }

    #[test]
    fn identity_does_not_cover() {
        let seq = MapSequence::OneD(Sequence1D::constant(Map1D::affine(1.0, 0.0, 0.0, 3.0)));
        let fam = Family1D::constant(
            TransitionMatrix::full(2).unwrap(),
            vec![iv(0.0, 1.0), iv(2.0, 3.0)],
            Mode::Strict,
        )
        .unwrap();
        let r = check_covering_1d(&seq, &fam, 2).unwrap();
        assert!(!r.weak_ce);
        assert!(r.rows.iter().any(|row| !row.covered && row.margin < 0.0));
    }

    #[test]
    fn touching_sets_violate_strict_mode() {
        let seq = MapSequence::OneD(Sequence1D::constant(Map1D::affine(2.0, 0.0, 0.0, 1.0)));
        let fam = Family1D::constant(
            TransitionMatrix::full(2).unwrap(),
            vec![iv(0.0, 0.5), iv(0.5, 1.0)],
            Mode::Strict,
        )
        .unwrap();
        assert!(matches!(
            check_covering_1d(&seq, &fam, 1),
            Err(ExpansionError::SeparationViolation { .. })
        ));
    }

    #[test]
    fn affine_constant_is_exact() {
        let seq = MapSequence::OneD(Sequence1D::constant(Map1D::affine(2.0, 0.0, 0.0, 1.0)));
        let fam = Family1D::constant(
            TransitionMatrix::full(2).unwrap(),
            vec![iv(0.0, 0.25), iv(0.5, 1.0)],
            Mode::Strict,
        )
        .unwrap();
        assert_eq!(expansion_constant(&seq, &fam, 1, 20).unwrap(), 2.0);
    }

    #[test]
    fn short_horizon_is_rejected() {
        let seq = MapSequence::OneD(
            Sequence1D::new(
                vec![Map1D::affine(2.0, 0.0, 0.0, 1.0), Map1D::affine(3.0, 0.0, 0.0, 1.0)],
                vec![0, 1, 1],
            )
            .unwrap(),
        );
        let fam = Family1D::constant(
            TransitionMatrix::full(2).unwrap(),
            vec![iv(0.0, 0.25), iv(0.5, 1.0)],
            Mode::Strict,
        )
        .unwrap();
        assert_eq!(
            check_covering_1d(&seq, &fam, 2).unwrap_err(),
            ExpansionError::AperiodicRule { period: 3, horizon: 2 }
        );
    }
}

#[cfg(test)]
mod example_tests {
    use super::*;
    use crate::examples::{example_5_1, Pattern51};

    #[test]
    fn quadratic_pair_covers_with_full_images() {
        for p in ["all-f1", "all-f2", "alternate", "12212"] {
            let pat: Pattern51 = p.parse().unwrap();
            let (seq, fam) = example_5_1(&pat).unwrap();
            let r = check_covering_1d(&seq, &fam, 2 * fam.period()).unwrap();
            assert!(r.weak_ce && r.strict_weak_ce, "{p}");
            assert!(r.rows.iter().all(|row| row.image == Some((0.0, 3.0))), "{p}");
            assert_eq!(r.separation, 0.25);
            let kinds = pat.kinds();
            for (n, lam) in r.lambda_by_step.iter().enumerate() {
                let want = if kinds[n % kinds.len()] == 0 { 8.0 } else { 4.0 };
                assert!((lam - want).abs() < 1e-6, "{p} step {n}: {lam}");
            }
        }
    }
}
