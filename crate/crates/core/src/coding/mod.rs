//! Nested cells `V_α^{m,n}`, the decode map `h_n` and the itinerary map
//! `φ_n` for strictly separated 1D coupled-expanding families.

mod probe;

pub use probe::{conjugacy_residual, equi_modulus_probe, ModulusRow, ResidualReport, ResidualRow};

use serde::Serialize;

use crate::dynsys::{DynsysError, MapSequence, Sequence1D, BISECTION_TOL};
use crate::expansion::{Family1D, Family2D, Mode};
use crate::region::{Box2, Interval, IntervalUnion};
use crate::symbolic::{Symbol, SymbolGenerator, SymbolWord, SymbolicError};

pub const DEFAULT_DECODE_TOL: f64 = 1e-9;
pub const DEFAULT_DEPTH_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CodingError {
    #[error("decoding needs a one-dimensional scenario")]
    NotOneDimensional,
    #[error("coding needs a strictly separated covering family")]
    NotStrict,
    #[error("nested cell of depth {depth} at n = {n} is empty")]
    EmptyCell { n: usize, depth: usize },
    #[error("cell diameter {diameter} still above tolerance at depth {depth}")]
    NoContraction { depth: usize, diameter: f64 },
    #[error("orbit leaves the covering family at step {0}")]
    OrbitEscapes(usize),
    #[error("point is within the ambiguity threshold of two sets at step {0}")]
    BoundaryAmbiguity(usize),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error(transparent)]
    Map(#[from] DynsysError),
}

/// `V_α^{m,n}` for the word `a_0 … a_m`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NestedCell {
    pub prefix: Vec<Symbol>,
    pub n: usize,
    pub depth: usize,
    pub region: IntervalUnion,
}

impl NestedCell {
    pub fn diameter(&self) -> f64 {
        self.region.diameter()
    }

    pub fn hull(&self) -> Interval {
        self.region.hull().expect("cells are nonempty")
    }

    pub fn midpoint(&self) -> f64 {
        self.hull().midpoint()
    }
}

/// `h_n(α)` to within `diameter / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Decoded {
    pub point: f64,
    pub diameter: f64,
    pub depth: usize,
}

/// Pick the unique set within `amb` of a point, given its distances.
fn pick(dists: impl Iterator<Item = f64>, amb: f64, step: usize) -> Result<Symbol, CodingError> {
    let mut found = None;
    for (i, d) in dists.enumerate() {
        if d <= amb {
            if found.is_some() {
                return Err(CodingError::BoundaryAmbiguity(step));
            }
            found = Some(i + 1);
        }
    }
    found.ok_or(CodingError::OrbitEscapes(step))
}

/// A 1D scenario prepared for coding.
#[derive(Debug, Clone)]
pub struct Coder {
    seq: Sequence1D,
    fam: Family1D,
    /// Stop deepening once the cell diameter drops below this.
    pub tol: f64,
    pub depth_cap: usize,
    /// Points this close to a set count as inside it.
    pub ambiguity: f64,
}

impl Coder {
    pub fn new(seq: &MapSequence, fam: &Family1D) -> Result<Self, CodingError> {
        let MapSequence::OneD(s) = seq else {
            return Err(CodingError::NotOneDimensional);
        };
        let sep = fam.step_separation();
        if fam.mode() != Mode::Strict || sep <= 0.0 || fam.outer_separation() <= 0.0 {
            return Err(CodingError::NotStrict);
        }
        Ok(Coder {
            seq: s.clone(),
            fam: fam.clone(),
            tol: DEFAULT_DECODE_TOL,
            depth_cap: DEFAULT_DEPTH_CAP,
            ambiguity: sep / 1e3,
        })
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_depth_cap(mut self, cap: usize) -> Self {
        self.depth_cap = cap;
        self
    }

    pub fn sequence(&self) -> &Sequence1D {
        &self.seq
    }

    pub fn family(&self) -> &Family1D {
        &self.fam
    }

    /// `V_{a_0,n} ∩ f_n^{-1}(rest)` where `rest` is the cell of the shifted
    /// word at time `n + 1`.
    pub fn prepend_cell(&self, a0: Symbol, n: usize, rest: &IntervalUnion) -> IntervalUnion {
        self.seq
            .map_at(n)
            .preimage_union_in(rest, self.fam.set(a0, n), BISECTION_TOL)
    }

    /// Exact `V_α^{m,n}` with `m = prefix.len() - 1`, by backward recursion
    /// from `V_{a_m, n+m}`.
    pub fn nested_cell(&self, prefix: &[Symbol], n: usize) -> Result<NestedCell, CodingError> {
        let word = SymbolWord::new(prefix.to_vec(), self.fam.matrix())?;
        let Some(&last) = word.symbols().last() else {
            return Err(SymbolicError::EmptyWord.into());
        };
        let m = prefix.len() - 1;
        let mut c = IntervalUnion::single(*self.fam.set(last, n + m));
        for k in (0..m).rev() {
            c = self.prepend_cell(prefix[k], n + k, &c);
            if c.is_empty() {
                return Err(CodingError::EmptyCell { n, depth: m });
            }
        }
        Ok(NestedCell {
            prefix: prefix.to_vec(),
            n,
            depth: m,
            region: c,
        })
    }

    /// Deepen the cell of `α` until its diameter is below `tol`; the
    /// midpoint of the last cell stands in for `h_n(α)`.
    pub fn decode(&self, alpha: &SymbolGenerator, n: usize) -> Result<Decoded, CodingError> {
        let mut diameter = f64::INFINITY;
        for m in 0..=self.depth_cap {
            let cell = self.nested_cell(&alpha.prefix(m + 1), n)?;
            diameter = cell.diameter();
            if diameter < self.tol {
                return Ok(Decoded {
                    point: cell.midpoint(),
                    diameter,
                    depth: m,
                });
            }
        }
        Err(CodingError::NoContraction {
            depth: self.depth_cap,
            diameter,
        })
    }

    /// Index of the set `V_{i,n}` holding `x`.
    pub fn symbol_at(&self, x: f64, n: usize, step: usize) -> Result<Symbol, CodingError> {
        pick(
            self.fam.step_sets(n).iter().map(|v| v.dist_to_point(x)),
            self.ambiguity,
            step,
        )
    }

    /// `φ_n(x)` truncated to `steps` symbols.
    pub fn itinerary(&self, x: f64, n: usize, steps: usize) -> Result<SymbolWord, CodingError> {
        let mut out = Vec::with_capacity(steps);
        let mut y = x;
        for k in 0..steps {
            if k > 0 {
                y = self
                    .seq
                    .eval(n + k - 1, y)
                    .map_err(|_| CodingError::OrbitEscapes(k))?;
            }
            out.push(self.symbol_at(y, n + k, k)?);
        }
        Ok(SymbolWord::new(out, self.fam.matrix())?)
    }
}

fn box_dist(b: &Box2, p: [f64; 2]) -> f64 {
    b.x.dist_to_point(p[0]).max(b.y.dist_to_point(p[1]))
}

/// Itinerary in a 2D scenario, where decoding is not available.
pub fn itinerary_2d(
    seq: &MapSequence,
    fam: &Family2D,
    x: [f64; 2],
    n: usize,
    steps: usize,
) -> Result<SymbolWord, CodingError> {
    let MapSequence::TwoD(s) = seq else {
        return Err(CodingError::Map(DynsysError::DimensionMismatch { expected: 1 }));
    };
    let amb = fam.step_separation() / 1e3;
    if fam.mode() != Mode::Strict || !(amb > 0.0) {
        return Err(CodingError::NotStrict);
    }
    let mut out = Vec::with_capacity(steps);
    let mut y = x;
    for k in 0..steps {
        if k > 0 {
            y = s.eval(n + k - 1, y);
        }
        out.push(pick(fam.step_sets(n + k).iter().map(|b| box_dist(b, y)), amb, k)?);
    }
    Ok(SymbolWord::new(out, fam.matrix())?)
}
