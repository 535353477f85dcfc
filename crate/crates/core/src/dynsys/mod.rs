//! Non-autonomous map sequences `x_{n+1} = f_n(x_n)`.

mod expr;
mod map1d;
mod map2d;

pub use expr::{saw2, Expr};
pub use map1d::{Map1D, Piece1D};
pub use map2d::{Map2D, SineSawFamily, WeightRule};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::region::{sup_dist, Box2, IntervalUnion};

/// Default bisection tolerance, in domain units.
pub const BISECTION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DynsysError {
    #[error("point {0} is outside the map's domain")]
    OutOfDomain(f64),
    #[error("orbit left the domain at step {0}")]
    OutOfDomainAtStep(usize),
    #[error("region has no two distinct sample points")]
    DegenerateRegion,
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("expected a {expected}-dimensional point")]
    DimensionMismatch { expected: usize },
    #[error("map pattern is empty or refers to a missing map")]
    BadPattern,
}

/// A point of the phase space, `ℝ` or `ℝ²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Point {
    One(f64),
    Two([f64; 2]),
}

impl Point {
    pub fn dim(&self) -> usize {
        match self {
            Point::One(_) => 1,
            Point::Two(_) => 2,
        }
    }

    /// `|x - y|` in 1D, sup-norm in 2D; `∞` across dimensions.
    pub fn dist(&self, other: &Point) -> f64 {
        match (self, other) {
            (Point::One(a), Point::One(b)) => (a - b).abs(),
            (Point::Two(a), Point::Two(b)) => sup_dist(*a, *b),
            _ => f64::INFINITY,
        }
    }

    pub fn coords(&self) -> Vec<f64> {
        match *self {
            Point::One(a) => vec![a],
            Point::Two([a, b]) => vec![a, b],
        }
    }
}

/// A periodic pattern over a finite list of interval maps:
/// `f_n = maps[pattern[n mod len]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sequence1D {
    maps: Vec<Map1D>,
    pattern: Vec<usize>,
}

impl Sequence1D {
    /// `pattern` holds 0-based indices into `maps`.
    pub fn new(maps: Vec<Map1D>, pattern: Vec<usize>) -> Result<Self, DynsysError> {
        if pattern.is_empty() || pattern.iter().any(|&k| k >= maps.len()) {
            return Err(DynsysError::BadPattern);
        }
        Ok(Sequence1D { maps, pattern })
    }

    pub fn constant(map: Map1D) -> Self {
        Sequence1D {
            maps: vec![map],
            pattern: vec![0],
        }
    }

    pub fn maps(&self) -> &[Map1D] {
        &self.maps
    }

    pub fn pattern(&self) -> &[usize] {
        &self.pattern
    }

    pub fn period(&self) -> usize {
        self.pattern.len()
    }

    /// Index into [`maps`](Self::maps) of `f_n`.
    pub fn kind_at(&self, n: usize) -> usize {
        self.pattern[n % self.pattern.len()]
    }

    pub fn map_at(&self, n: usize) -> &Map1D {
        &self.maps[self.kind_at(n)]
    }

    pub fn eval(&self, n: usize, x: f64) -> Result<f64, DynsysError> {
        self.map_at(n).eval(x)
    }

    /// `f_i^n(x) = f_{i+n-1} ∘ ⋯ ∘ f_i (x)`.
    pub fn compose_forward(&self, i: usize, n: usize, x: f64) -> Result<f64, DynsysError> {
        let mut y = x;
        for k in 0..n {
            y = self
                .eval(i + k, y)
                .map_err(|_| DynsysError::OutOfDomainAtStep(k))?;
        }
        Ok(y)
    }

    /// Sampled `(inf, sup)` of `|f_n(x) - f_n(y)| / |x - y|` over all pairs
    /// of a `samples`-point grid in each component of `region`.
    pub fn lipschitz_band(
        &self,
        n: usize,
        region: &IntervalUnion,
        samples: usize,
    ) -> Result<(f64, f64), DynsysError> {
        let f = self.map_at(n);
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        let mut any = false;
        for iv in region.parts() {
            if iv.is_degenerate() || samples < 2 {
                continue;
            }
            let xs = iv.grid(samples);
            let ys: Vec<f64> = xs.iter().map(|&x| f.eval(x)).collect::<Result<_, _>>()?;
            for a in 0..xs.len() {
                for b in a + 1..xs.len() {
                    let r = (ys[a] - ys[b]).abs() / (xs[a] - xs[b]).abs();
                    lo = lo.min(r);
                    hi = hi.max(r);
                    any = true;
                }
            }
        }
        if any {
            Ok((lo, hi))
        } else {
            Err(DynsysError::DegenerateRegion)
        }
    }
}

/// The planar family `F_n` indexed by step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sequence2D {
    pub family: SineSawFamily,
}

impl Sequence2D {
    pub fn map_at(&self, n: usize) -> Map2D {
        self.family.map_at(n)
    }

    pub fn eval(&self, n: usize, x: [f64; 2]) -> [f64; 2] {
        self.map_at(n).eval(x)
    }

    pub fn compose_forward(&self, i: usize, n: usize, x: [f64; 2]) -> [f64; 2] {
        (0..n).fold(x, |y, k| self.eval(i + k, y))
    }

    /// Sampled `(inf, sup)` of `‖F_n(x) - F_n(y)‖ / ‖x - y‖` (sup-norm) over
    /// `samples` seeded uniform pairs per box.
    pub fn lipschitz_band(
        &self,
        n: usize,
        boxes: &[Box2],
        samples: usize,
        seed: u64,
    ) -> Result<(f64, f64), DynsysError> {
        let f = self.map_at(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        let mut any = false;
        for b in boxes {
            if b.x.is_degenerate() && b.y.is_degenerate() {
                continue;
            }
            let draw = |rng: &mut ChaCha8Rng| {
                [
                    b.x.lo + rng.gen::<f64>() * b.x.len(),
                    b.y.lo + rng.gen::<f64>() * b.y.len(),
                ]
            };
            for _ in 0..samples {
                let (x, y) = (draw(&mut rng), draw(&mut rng));
                let d = sup_dist(x, y);
                if d == 0.0 {
                    continue;
                }
                let r = sup_dist(f.eval(x), f.eval(y)) / d;
                lo = lo.min(r);
                hi = hi.max(r);
                any = true;
            }
        }
        if any {
            Ok((lo, hi))
        } else {
            Err(DynsysError::DegenerateRegion)
        }
    }
}

/// `f_{0,∞}` in one or two dimensions.
#[derive(Debug, Clone, PartialEq)]
pub enum MapSequence {
    OneD(Sequence1D),
    TwoD(Sequence2D),
}

impl MapSequence {
    pub fn dim(&self) -> usize {
        match self {
            MapSequence::OneD(_) => 1,
            MapSequence::TwoD(_) => 2,
        }
    }

    pub fn evaluate(&self, n: usize, x: Point) -> Result<Point, DynsysError> {
        match (self, x) {
            (MapSequence::OneD(s), Point::One(v)) => s.eval(n, v).map(Point::One),
            (MapSequence::TwoD(s), Point::Two(v)) => Ok(Point::Two(s.eval(n, v))),
            _ => Err(DynsysError::DimensionMismatch {
                expected: self.dim(),
            }),
        }
    }

    pub fn compose_forward(&self, i: usize, n: usize, x: Point) -> Result<Point, DynsysError> {
        match (self, x) {
            (MapSequence::OneD(s), Point::One(v)) => s.compose_forward(i, n, v).map(Point::One),
            (MapSequence::TwoD(s), Point::Two(v)) => Ok(Point::Two(s.compose_forward(i, n, v))),
            _ => Err(DynsysError::DimensionMismatch {
                expected: self.dim(),
            }),
        }
    }

    /// Orbit `x, f_i(x), …` of `steps + 1` points starting at time `i`.
    pub fn orbit(&self, i: usize, steps: usize, x: Point) -> Result<Vec<Point>, DynsysError> {
        let mut out = Vec::with_capacity(steps + 1);
        out.push(x);
        let mut y = x;
        for k in 0..steps {
            y = self
                .evaluate(i + k, y)
                .map_err(|e| match e {
                    DynsysError::OutOfDomain(_) => DynsysError::OutOfDomainAtStep(k),
                    e => e,
                })?;
            out.push(y);
        }
        Ok(out)
    }
}
