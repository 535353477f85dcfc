//! Weak `A`-coupled-expansion: covering, separation and expansion checks.

mod classify;
mod cover1d;
mod cover2d;

pub use classify::{classify, compact_self_map, Classification, Hypotheses, TheoremCheck};
pub use cover1d::{check_covering_1d, expansion_constant, step_lambdas};
pub use cover2d::{check_covering_2d, check_covering_2d_at, face_test, FaceOutcome};

use serde::Serialize;

use crate::dynsys::DynsysError;
use crate::region::{Box2, Interval};
use crate::symbolic::{Symbol, TransitionMatrix};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExpansionError {
    #[error("invalid covering family: {0}")]
    InvalidFamily(String),
    #[error("scenario is not one-dimensional")]
    NotOneDimensional,
    #[error("scenario is not two-dimensional")]
    NotTwoDimensional,
    #[error("joint period {period} of maps and sets exceeds the horizon {horizon}")]
    AperiodicRule { period: usize, horizon: usize },
    #[error("sets {i} and {j} are not positively separated at step {n} (distance {distance})")]
    SeparationViolation {
        n: usize,
        i: Symbol,
        j: Symbol,
        distance: f64,
    },
    #[error("face test inconclusive for set {i} at step {n}; refine the grid")]
    FaceTestInconclusive { n: usize, i: Symbol },
    #[error(transparent)]
    Map(#[from] DynsysError),
}

/// Weak families may share boundary points; strict ones are positively
/// separated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Strict,
    Weak,
}

/// Sets a covering family can hold.
pub trait CoverSet: Clone + std::fmt::Debug {
    fn set_distance(&self, other: &Self) -> f64;
    fn contains_set(&self, other: &Self) -> bool;
    fn set_diameter(&self) -> f64;
    /// Interiors intersect.
    fn interiors_meet(&self, other: &Self) -> bool;
}

impl CoverSet for Interval {
    fn set_distance(&self, other: &Self) -> f64 {
        self.distance(other)
    }
    fn contains_set(&self, other: &Self) -> bool {
        self.contains_interval(other)
    }
    fn set_diameter(&self) -> f64 {
        self.len()
    }
    fn interiors_meet(&self, other: &Self) -> bool {
        self.hi.min(other.hi) > self.lo.max(other.lo)
    }
}

impl CoverSet for Box2 {
    fn set_distance(&self, other: &Self) -> f64 {
        self.distance(other)
    }
    fn contains_set(&self, other: &Self) -> bool {
        self.contains_box(other)
    }
    fn set_diameter(&self) -> f64 {
        self.diameter()
    }
    fn interiors_meet(&self, other: &Self) -> bool {
        self.x.interiors_meet(&other.x) && self.y.interiors_meet(&other.y)
    }
}

/// Outer sets `V_i` and per-step sets `V_{i,n}`. The step sets cycle
/// through a finite list of kinds: `V_{·,n} = kinds[pattern[n mod len]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoveringFamily<S> {
    matrix: TransitionMatrix,
    outer: Vec<S>,
    kinds: Vec<Vec<S>>,
    pattern: Vec<usize>,
    mode: Mode,
}

pub type Family1D = CoveringFamily<Interval>;
pub type Family2D = CoveringFamily<Box2>;

impl<S: CoverSet> CoveringFamily<S> {
    pub fn new(
        matrix: TransitionMatrix,
        outer: Vec<S>,
        kinds: Vec<Vec<S>>,
        pattern: Vec<usize>,
        mode: Mode,
    ) -> Result<Self, ExpansionError> {
        let bad = |m: String| Err(ExpansionError::InvalidFamily(m));
        let n = matrix.n_symbols();
        if outer.len() != n {
            return bad(format!("{} outer sets for {n} symbols", outer.len()));
        }
        if kinds.is_empty() || pattern.is_empty() {
            return bad("no step sets".into());
        }
        if let Some(&k) = pattern.iter().find(|&&k| k >= kinds.len()) {
            return bad(format!("step pattern refers to missing kind {k}"));
        }
        for (k, sets) in kinds.iter().enumerate() {
            if sets.len() != n {
                return bad(format!("step kind {k} has {} sets, expected {n}", sets.len()));
            }
            for (i, s) in sets.iter().enumerate() {
                if !outer[i].contains_set(s) {
                    return bad(format!("V_{} of step kind {k} is not inside V_{}", i + 1, i + 1));
                }
                for (j, t) in sets.iter().enumerate().skip(i + 1) {
                    if s.interiors_meet(t) {
                        return bad(format!(
                            "V_{} and V_{} of step kind {k} overlap beyond their boundaries",
                            i + 1,
                            j + 1
                        ));
                    }
                }
            }
        }
        Ok(CoveringFamily {
            matrix,
            outer,
            kinds,
            pattern,
            mode,
        })
    }

    /// `V_{i,n} = V_i` for every `n`.
    pub fn constant(matrix: TransitionMatrix, outer: Vec<S>, mode: Mode) -> Result<Self, ExpansionError> {
        let kinds = vec![outer.clone()];
        CoveringFamily::new(matrix, outer, kinds, vec![0], mode)
    }

    pub fn matrix(&self) -> &TransitionMatrix {
        &self.matrix
    }

    pub fn n_symbols(&self) -> usize {
        self.matrix.n_symbols()
    }

    pub fn outer(&self) -> &[S] {
        &self.outer
    }

    pub fn kinds(&self) -> &[Vec<S>] {
        &self.kinds
    }

    pub fn pattern(&self) -> &[usize] {
        &self.pattern
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn period(&self) -> usize {
        self.pattern.len()
    }

    pub fn step_sets(&self, n: usize) -> &[S] {
        &self.kinds[self.pattern[n % self.pattern.len()]]
    }

    /// `V_{i,n}`, 1-based `i`.
    pub fn set(&self, i: Symbol, n: usize) -> &S {
        &self.step_sets(n)[i - 1]
    }

    /// `min_{i≠j} d(V_i, V_j)`.
    pub fn outer_separation(&self) -> f64 {
        min_pairwise(&self.outer)
    }

    /// `min_n min_{i≠j} d(V_{i,n}, V_{j,n})`.
    pub fn step_separation(&self) -> f64 {
        self.kinds
            .iter()
            .map(|k| min_pairwise(k))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn max_outer_diameter(&self) -> f64 {
        self.outer.iter().map(|s| s.set_diameter()).fold(0.0, f64::max)
    }

    /// In strict mode every pair of outer sets and of step sets must be
    /// positively separated.
    pub(crate) fn check_strict(&self) -> Result<(), ExpansionError> {
        if self.mode != Mode::Strict {
            return Ok(());
        }
        let n = self.n_symbols();
        for step in 0..self.period() {
            let sets = self.step_sets(step);
            for i in 0..n {
                for j in i + 1..n {
                    let d = sets[i].set_distance(&sets[j]);
                    if d <= 0.0 {
                        return Err(ExpansionError::SeparationViolation {
                            n: step,
                            i: i + 1,
                            j: j + 1,
                            distance: d,
                        });
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let d = self.outer[i].set_distance(&self.outer[j]);
                if d <= 0.0 {
                    return Err(ExpansionError::SeparationViolation {
                        n: 0,
                        i: i + 1,
                        j: j + 1,
                        distance: d,
                    });
                }
            }
        }
        Ok(())
    }
}

fn min_pairwise<S: CoverSet>(sets: &[S]) -> f64 {
    let mut best = f64::INFINITY;
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            best = best.min(a.set_distance(b));
        }
    }
    best
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// One `(n, i)` covering verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverRow {
    pub n: usize,
    pub i: Symbol,
    pub covered: bool,
    /// Containment slack in domain units; negative when coverage fails.
    pub margin: f64,
    /// Hull of `f_n(V_{i,n})` (1D only).
    pub image: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpansionReport {
    pub dim: usize,
    pub horizon: usize,
    /// Joint period of maps and sets.
    pub period: usize,
    pub mode: Mode,
    pub rows: Vec<CoverRow>,
    /// `min_{i≠j} d(V_i, V_j)` over the outer sets.
    pub separation: f64,
    /// `min_n min_{i≠j} d(V_{i,n}, V_{j,n})`.
    pub step_separation: f64,
    pub lambda_by_step: Vec<f64>,
    pub lambda_lower: f64,
    pub bounded_outer: bool,
    pub max_outer_diameter: f64,
    pub weak_ce: bool,
    pub strict_weak_ce: bool,
    pub h1_implied: bool,
    pub h2_implied: bool,
    /// The checked window covers a full period, so the verdict holds for
    /// every `n ≥ 0`.
    pub extends_to_all_n: bool,
    pub notes: Vec<String>,
}

impl ExpansionReport {
    pub(crate) fn finish<S: CoverSet>(
        dim: usize,
        horizon: usize,
        period: usize,
        fam: &CoveringFamily<S>,
        rows: Vec<CoverRow>,
        lambda_by_step: Vec<f64>,
        extends_to_all_n: bool,
        notes: Vec<String>,
    ) -> Self {
        let covered = rows.iter().all(|r| r.covered) && extends_to_all_n;
        let separation = fam.outer_separation();
        let step_separation = fam.step_separation();
        let lambda_lower = lambda_by_step.iter().cloned().fold(f64::INFINITY, f64::min);
        let bounded_outer = fam.max_outer_diameter().is_finite();
        ExpansionReport {
            dim,
            horizon,
            period,
            mode: fam.mode(),
            rows,
            separation,
            step_separation,
            lambda_by_step,
            lambda_lower,
            bounded_outer,
            max_outer_diameter: fam.max_outer_diameter(),
            weak_ce: covered,
            strict_weak_ce: covered && step_separation > 0.0,
            h1_implied: covered,
            h2_implied: lambda_lower > 1.0 && bounded_outer,
            extends_to_all_n,
            notes,
        }
    }

    pub fn all_covered(&self) -> bool {
        self.rows.iter().all(|r| r.covered)
    }

    /// `min` margin over all rows.
    pub fn min_margin(&self) -> f64 {
        self.rows.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min)
    }
}
