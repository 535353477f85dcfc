//! Geometric carriers: closed intervals, canonical unions of closed
//! intervals, axis-aligned boxes and finite planar point sets.
//!
//! Planar distances use the sup-norm `‖x‖ = max(|x₁|, |x₂|)`.

use serde::{Deserialize, Serialize};

/// Gaps narrower than this are floating-point dust and get merged when a
/// union is canonicalized. Far below every analysis tolerance.
pub const MERGE_TOL: f64 = 1e-14;

/// A closed interval `[lo, hi]`, possibly degenerate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    /// Panics if `lo > hi` or either end is NaN.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "interval [{lo}, {hi}] is reversed or NaN");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn try_new(lo: f64, hi: f64) -> Option<Self> {
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_with_tol(&self, x: f64, tol: f64) -> bool {
        self.lo - tol <= x && x <= self.hi + tol
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        Interval::try_new(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::new(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    /// Distance from a point to the interval.
    pub fn dist_to_point(&self, x: f64) -> f64 {
        if x < self.lo {
            self.lo - x
        } else if x > self.hi {
            x - self.hi
        } else {
            0.0
        }
    }

    /// Set distance `d(A, B) = inf |a - b|`.
    pub fn distance(&self, other: &Interval) -> f64 {
        (other.lo - self.hi).max(self.lo - other.hi).max(0.0)
    }

    pub fn inflate(&self, r: f64) -> Interval {
        Interval::new(self.lo - r, self.hi + r)
    }

    /// `n` evenly spaced points covering both endpoints (`n >= 2`), or the
    /// midpoint when `n == 1`.
    pub fn grid(&self, n: usize) -> Vec<f64> {
        match n {
            0 => Vec::new(),
            1 => vec![self.midpoint()],
            _ => (0..n)
                .map(|k| {
                    let t = k as f64 / (n - 1) as f64;
                    if k == n - 1 {
                        self.hi
                    } else {
                        self.lo + t * (self.hi - self.lo)
                    }
                })
                .collect(),
        }
    }
}

/// Canonical finite union of closed intervals: sorted, pairwise disjoint and
/// separated by gaps of at least [`MERGE_TOL`]. May be empty (preimages can
/// be); hyperspace elements are required to be nonempty by their callers.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntervalUnion {
    parts: Vec<Interval>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion { parts: Vec::new() }
    }

    pub fn single(iv: Interval) -> Self {
        IntervalUnion { parts: vec![iv] }
    }

    pub fn point(x: f64) -> Self {
        Self::single(Interval::point(x))
    }

    pub fn from_intervals<I: IntoIterator<Item = Interval>>(items: I) -> Self {
        let mut parts: Vec<Interval> = items.into_iter().collect();
        parts.sort_by(|a, b| a.lo.total_cmp(&b.lo).then(a.hi.total_cmp(&b.hi)));
        let mut merged: Vec<Interval> = Vec::with_capacity(parts.len());
        for iv in parts {
            match merged.last_mut() {
                Some(last) if iv.lo - last.hi < MERGE_TOL => {
                    last.hi = last.hi.max(iv.hi);
                }
                _ => merged.push(iv),
            }
        }
        IntervalUnion { parts: merged }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn component_count(&self) -> usize {
        self.parts.len()
    }

    pub fn hull(&self) -> Option<Interval> {
        Some(Interval::new(self.parts.first()?.lo, self.parts.last()?.hi))
    }

    /// Diameter of the set (0 for the empty set).
    pub fn diameter(&self) -> f64 {
        self.hull().map_or(0.0, |h| h.len())
    }

    pub fn contains(&self, x: f64) -> bool {
        self.locate(x).is_some()
    }

    fn locate(&self, x: f64) -> Option<usize> {
        let idx = self.parts.partition_point(|iv| iv.hi < x);
        (idx < self.parts.len() && self.parts[idx].lo <= x).then_some(idx)
    }

    /// Distance from `x` to the set; `+inf` for the empty set.
    pub fn dist_to_point(&self, x: f64) -> f64 {
        if self.parts.is_empty() {
            return f64::INFINITY;
        }
        let idx = self.parts.partition_point(|iv| iv.hi < x);
        let mut best = f64::INFINITY;
        if idx < self.parts.len() {
            best = best.min(self.parts[idx].dist_to_point(x));
        }
        if idx > 0 {
            best = best.min(self.parts[idx - 1].dist_to_point(x));
        }
        best
    }

    pub fn union(&self, other: &IntervalUnion) -> IntervalUnion {
        IntervalUnion::from_intervals(self.parts.iter().chain(other.parts.iter()).copied())
    }

    pub fn intersect_interval(&self, iv: &Interval) -> IntervalUnion {
        IntervalUnion {
            parts: self.parts.iter().filter_map(|p| p.intersect(iv)).collect(),
        }
    }

    pub fn intersect(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            let (a, b) = (self.parts[i], other.parts[j]);
            if let Some(c) = a.intersect(&b) {
                out.push(c);
            }
            if a.hi < b.hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalUnion::from_intervals(out)
    }

    /// `self ⊆ other`, with `other` inflated by `tol`.
    pub fn is_subset_of(&self, other: &IntervalUnion, tol: f64) -> bool {
        self.parts.iter().all(|p| {
            other
                .parts
                .iter()
                .any(|q| q.lo - tol <= p.lo && p.hi <= q.hi + tol)
        })
    }

    /// Directed Hausdorff distance `sup_{a ∈ self} d(a, other)`.
    ///
    /// `x ↦ d(x, B)` is piecewise linear: it grows moving away from `B`
    /// and, inside a gap `(b_k.hi, b_{k+1}.lo)` of `B`, rises to the gap
    /// midpoint and falls again. Restricted to a closed interval of `A` the
    /// maximum therefore sits at an endpoint of that interval or at a gap
    /// midpoint lying inside it; those are the only candidates examined.
    pub fn directed_hausdorff(&self, other: &IntervalUnion) -> f64 {
        if self.parts.is_empty() {
            return 0.0;
        }
        if other.parts.is_empty() {
            return f64::INFINITY;
        }
        let mut best = 0.0f64;
        for a in &self.parts {
            best = best.max(other.dist_to_point(a.lo));
            best = best.max(other.dist_to_point(a.hi));
        }
        for w in other.parts.windows(2) {
            let mid = 0.5 * (w[0].hi + w[1].lo);
            if self.contains(mid) {
                best = best.max(0.5 * (w[1].lo - w[0].hi));
            }
        }
        best
    }

    pub fn hausdorff(&self, other: &IntervalUnion) -> f64 {
        self.directed_hausdorff(other).max(other.directed_hausdorff(self))
    }

    /// Set distance `inf_{a, b} |a - b|`.
    pub fn distance(&self, other: &IntervalUnion) -> f64 {
        let mut best = f64::INFINITY;
        for a in &self.parts {
            for b in &other.parts {
                best = best.min(a.distance(b));
            }
        }
        best
    }
}

/// An axis-aligned closed box `[x.lo, x.hi] × [y.lo, y.hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Box2 {
    pub x: Interval,
    pub y: Interval,
}

impl Box2 {
    pub fn new(x: Interval, y: Interval) -> Self {
        Box2 { x, y }
    }

    pub fn square(lo: f64, hi: f64) -> Self {
        Box2::new(Interval::new(lo, hi), Interval::new(lo, hi))
    }

    pub fn axis(&self, k: usize) -> Interval {
        if k == 0 {
            self.x
        } else {
            self.y
        }
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        self.x.contains(p[0]) && self.y.contains(p[1])
    }

    pub fn contains_with_tol(&self, p: [f64; 2], tol: f64) -> bool {
        self.x.contains_with_tol(p[0], tol) && self.y.contains_with_tol(p[1], tol)
    }

    pub fn contains_box(&self, other: &Box2) -> bool {
        self.x.contains_interval(&other.x) && self.y.contains_interval(&other.y)
    }

    /// Sup-norm set distance.
    pub fn distance(&self, other: &Box2) -> f64 {
        self.x.distance(&other.x).max(self.y.distance(&other.y))
    }

    /// Sup-norm diameter.
    pub fn diameter(&self) -> f64 {
        self.x.len().max(self.y.len())
    }

    pub fn hull(&self, other: &Box2) -> Box2 {
        Box2::new(self.x.hull(&other.x), self.y.hull(&other.y))
    }
}

pub fn sup_dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).abs().max((a[1] - b[1]).abs())
}

/// Finite planar point set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointSet {
    points: Vec<[f64; 2]>,
}

impl PointSet {
    /// `None` when `points` is empty.
    pub fn new(points: Vec<[f64; 2]>) -> Option<Self> {
        (!points.is_empty()).then_some(PointSet { points })
    }

    pub fn points(&self) -> &[[f64; 2]] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn directed_hausdorff(&self, other: &PointSet) -> f64 {
        self.points
            .iter()
            .map(|&p| {
                other
                    .points
                    .iter()
                    .map(|&q| sup_dist(p, q))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    }

    pub fn hausdorff(&self, other: &PointSet) -> f64 {
        self.directed_hausdorff(other).max(other.directed_hausdorff(self))
    }

    pub fn diameter(&self) -> f64 {
        let mut best = 0.0f64;
        for (i, &p) in self.points.iter().enumerate() {
            for &q in &self.points[i + 1..] {
                best = best.max(sup_dist(p, q));
            }
        }
        best
    }
}
