use crate::region::{Interval, IntervalUnion};

use super::{DynsysError, Expr};

/// Junction mismatch allowed when checking continuity.
const CONTINUITY_TOL: f64 = 1e-9;

/// One branch of a piecewise map on `[lo, hi]`, `(lo, hi]`, `[lo, hi)` or
/// `(lo, hi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece1D {
    pub span: Interval,
    pub lo_closed: bool,
    pub hi_closed: bool,
    pub expr: Expr,
}

impl Piece1D {
    pub fn new(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool, expr: Expr) -> Self {
        Piece1D {
            span: Interval::new(lo, hi),
            lo_closed,
            hi_closed,
            expr,
        }
    }

    pub fn owns(&self, x: f64) -> bool {
        let above = if self.lo_closed { x >= self.span.lo } else { x > self.span.lo };
        let below = if self.hi_closed { x <= self.span.hi } else { x < self.span.hi };
        above && below
    }

    /// Maximal monotone sub-intervals of `closure ∩ iv`.
    fn monotone_parts(&self, iv: &Interval) -> Vec<Interval> {
        let Some(j) = self.span.intersect(iv) else {
            return Vec::new();
        };
        let mut cuts = vec![j.lo];
        cuts.extend(self.expr.turning_points(j.lo, j.hi));
        cuts.push(j.hi);
        cuts.windows(2).map(|w| Interval::new(w[0], w[1])).collect()
    }
}

/// A continuous piecewise map on a closed interval.
#[derive(Debug, Clone, PartialEq)]
pub struct Map1D {
    pieces: Vec<Piece1D>,
    domain: Interval,
}

impl Map1D {
    /// Pieces must tile the domain in order, each junction owned by exactly
    /// one side, and values must agree at junctions.
    pub fn new(pieces: Vec<Piece1D>) -> Result<Self, DynsysError> {
        let bad = |m: String| Err(DynsysError::InvalidMap(m));
        let (Some(first), Some(last)) = (pieces.first(), pieces.last()) else {
            return bad("map has no pieces".into());
        };
        if !first.lo_closed || !last.hi_closed {
            return bad("domain must be closed".into());
        }
        for (k, p) in pieces.iter().enumerate() {
            if !(p.span.lo < p.span.hi) {
                return bad(format!("piece {} is empty", k + 1));
            }
        }
        for (k, w) in pieces.windows(2).enumerate() {
            let (a, b) = (&w[0], &w[1]);
            if a.span.hi != b.span.lo {
                return bad(format!("pieces {} and {} are not contiguous", k + 1, k + 2));
            }
            if a.hi_closed == b.lo_closed {
                return bad(format!(
                    "junction {} must belong to exactly one of pieces {} and {}",
                    a.span.hi,
                    k + 1,
                    k + 2
                ));
            }
            let (va, vb) = (a.expr.eval(a.span.hi), b.expr.eval(b.span.lo));
            if (va - vb).abs() > CONTINUITY_TOL * (1.0 + va.abs()) {
                return bad(format!("discontinuity at {}: {va} vs {vb}", a.span.hi));
            }
        }
        let domain = Interval::new(first.span.lo, last.span.hi);
        Ok(Map1D { pieces, domain })
    }

    /// `t ↦ p·t + q` on `[lo, hi]`.
    pub fn affine(p: f64, q: f64, lo: f64, hi: f64) -> Self {
        Map1D::new(vec![Piece1D::new(lo, hi, true, true, Expr::Affine { p, q })])
            .expect("single closed piece")
    }

    pub fn pieces(&self) -> &[Piece1D] {
        &self.pieces
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn eval(&self, x: f64) -> Result<f64, DynsysError> {
        self.pieces
            .iter()
            .find(|p| p.owns(x))
            .map(|p| p.expr.eval(x))
            .ok_or(DynsysError::OutOfDomain(x))
    }

    fn check_inside(&self, iv: &Interval) -> Result<(), DynsysError> {
        if !self.domain.contains(iv.lo) {
            return Err(DynsysError::OutOfDomain(iv.lo));
        }
        if !self.domain.contains(iv.hi) {
            return Err(DynsysError::OutOfDomain(iv.hi));
        }
        Ok(())
    }

    /// Exact image of `iv`, as a union of monotone-branch images.
    pub fn image_of_interval(&self, iv: &Interval) -> Result<IntervalUnion, DynsysError> {
        self.check_inside(iv)?;
        let mut parts = Vec::new();
        for p in &self.pieces {
            for j in p.monotone_parts(iv) {
                let (a, b) = (p.expr.eval(j.lo), p.expr.eval(j.hi));
                parts.push(Interval::new(a.min(b), a.max(b)));
            }
        }
        Ok(IntervalUnion::from_intervals(parts))
    }

    pub fn image_of_union(&self, u: &IntervalUnion) -> Result<IntervalUnion, DynsysError> {
        let mut out = IntervalUnion::empty();
        for iv in u.parts() {
            out = out.union(&self.image_of_interval(iv)?);
        }
        Ok(out)
    }

    /// `{x ∈ within : f(x) ∈ target}`. Branches with closed-form inverses
    /// are solved exactly; sine branches by bisection to `tol`.
    pub fn preimage_in(&self, target: &Interval, within: &Interval, tol: f64) -> IntervalUnion {
        let Some(within) = within.intersect(&self.domain) else {
            return IntervalUnion::empty();
        };
        let (y0, y1) = (target.lo, target.hi);
        let mut parts = Vec::new();
        for p in &self.pieces {
            for j in p.monotone_parts(&within) {
                let e = &p.expr;
                let (fl, fh) = (e.eval(j.lo), e.eval(j.hi));
                if fl == fh {
                    if target.contains(fl) {
                        parts.push(j);
                    }
                    continue;
                }
                let piece = if fl < fh {
                    let (a, b) = (y0.max(fl), y1.min(fh));
                    if a > b {
                        continue;
                    }
                    let lo = if y0 <= fl { j.lo } else { e.solve_monotone(a, j.lo, j.hi, tol) };
                    let hi = if y1 >= fh { j.hi } else { e.solve_monotone(b, j.lo, j.hi, tol) };
                    Interval::try_new(lo, hi)
                } else {
                    let (a, b) = (y1.min(fl), y0.max(fh));
                    if a < b {
                        continue;
                    }
                    let lo = if y1 >= fl { j.lo } else { e.solve_monotone(a, j.lo, j.hi, tol) };
                    let hi = if y0 <= fh { j.hi } else { e.solve_monotone(b, j.lo, j.hi, tol) };
                    Interval::try_new(lo, hi)
                };
                parts.extend(piece);
            }
        }
        IntervalUnion::from_intervals(parts)
    }

    pub fn preimage_union_in(
        &self,
        target: &IntervalUnion,
        within: &Interval,
        tol: f64,
    ) -> IntervalUnion {
        let mut out = IntervalUnion::empty();
        for t in target.parts() {
            out = out.union(&self.preimage_in(t, within, tol));
        }
        out
    }

    /// `inf |f'|` over `iv` from the closed-form derivatives, zero when the
    /// map is not strictly monotone on `iv`. Pieces meeting `iv` in a single
    /// point are skipped.
    pub fn derivative_inf(&self, iv: &Interval) -> f64 {
        let mut inf = f64::INFINITY;
        let mut sign = 0.0f64;
        for p in &self.pieces {
            let Some(j) = p.span.intersect(iv) else { continue };
            if j.is_degenerate() && !iv.is_degenerate() {
                continue;
            }
            let d = p.expr.abs_derivative_inf(j.lo, j.hi);
            if d == 0.0 {
                return 0.0;
            }
            let s = p.expr.derivative(j.midpoint()).signum();
            if sign != 0.0 && s != sign {
                return 0.0;
            }
            sign = s;
            inf = inf.min(d);
        }
        inf
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f1() -> Map1D {
        let q = Expr::Quadratic { c: 16.0, d: 1.0 };
        Map1D::new(vec![
            Piece1D::new(0.0, 0.25, true, true, q),
            Piece1D::new(0.25, 0.75, false, true, Expr::Constant(3.0)),
            Piece1D::new(0.75, 1.0, false, true, q),
            Piece1D::new(1.0, 3.0, false, true, Expr::Constant(0.0)),
        ])
        .unwrap()
    }

    #[test]
    fn validation() {
        let q = Expr::Quadratic { c: 16.0, d: 1.0 };
        let gap = Map1D::new(vec![
            Piece1D::new(0.0, 0.25, true, true, q),
            Piece1D::new(0.5, 1.0, false, true, q),
        ]);
        assert!(gap.is_err());
        let both = Map1D::new(vec![
            Piece1D::new(0.0, 0.25, true, true, q),
            Piece1D::new(0.25, 0.75, true, true, Expr::Constant(3.0)),
        ]);
        assert!(both.is_err());
        let jump = Map1D::new(vec![
            Piece1D::new(0.0, 0.25, true, true, q),
            Piece1D::new(0.25, 0.75, false, true, Expr::Constant(2.0)),
        ]);
        assert!(jump.is_err());
    }

    #[test]
    fn evaluation_and_ownership() {
        let f = f1();
        assert_eq!(f.eval(0.25).unwrap(), 3.0);
        assert_eq!(f.eval(0.5).unwrap(), 3.0);
        assert_eq!(f.eval(15.0 / 16.0).unwrap(), 15.0 / 16.0);
        assert_eq!(f.eval(2.0).unwrap(), 0.0);
        assert!(f.eval(3.5).is_err());
    }

    #[test]
    fn images() {
        let f = f1();
        let img = f.image_of_interval(&Interval::new(0.0, 0.25)).unwrap();
        assert_eq!(img.parts(), &[Interval::new(0.0, 3.0)]);
        let img = f.image_of_interval(&Interval::new(0.75, 1.0)).unwrap();
        assert_eq!(img.parts(), &[Interval::new(0.0, 3.0)]);
        let aff = Map1D::affine(2.0, 0.0, 0.0, 1.0);
        let img = aff.image_of_interval(&Interval::new(0.0, 1.0)).unwrap();
        assert_eq!(img.parts(), &[Interval::new(0.0, 2.0)]);
    }

    #[test]
    fn preimages() {
        let f = f1();
        let pre = f.preimage_in(&Interval::new(0.0, 3.0), &Interval::new(0.0, 0.25), 1e-12);
        assert_eq!(pre.parts(), &[Interval::new(0.0, 0.25)]);
        let aff = Map1D::affine(2.0, 0.0, 0.0, 1.0);
        let pre = aff.preimage_in(&Interval::new(1.0, 2.0), &Interval::new(0.0, 1.0), 1e-12);
        assert_eq!(pre.parts(), &[Interval::new(0.5, 1.0)]);
        let pre = f.preimage_in(&Interval::new(0.0, 0.5), &Interval::new(0.75, 1.0), 1e-12);
        let r = pre.parts()[0];
        assert!((f.eval(r.lo).unwrap() - 0.5).abs() < 1e-12 && r.hi == 1.0);
    }

    #[test]
    fn derivative_bounds() {
        let f = f1();
        assert_eq!(f.derivative_inf(&Interval::new(0.0, 0.25)), 8.0);
        assert_eq!(f.derivative_inf(&Interval::new(0.75, 1.0)), 8.0);
        assert_eq!(f.derivative_inf(&Interval::new(0.0, 1.0)), 0.0);
    }
}
