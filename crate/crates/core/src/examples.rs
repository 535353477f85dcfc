//! The two worked systems: a pattern of two quadratic interval maps, and
//! the planar sine-sawtooth family.

use std::fmt;
use std::str::FromStr;

use crate::dynsys::{Expr, Map1D, MapSequence, Piece1D, Sequence1D, Sequence2D, SineSawFamily, WeightRule};
use crate::expansion::{ExpansionError, Family1D, Family2D, Mode};
use crate::region::{Box2, Interval};
use crate::symbolic::TransitionMatrix;

/// `16x(1-x)` on `[0,1/4] ∪ (3/4,1]`, `3` between, `0` on `(1,3]`.
pub fn f1() -> Map1D {
    let q = Expr::Quadratic { c: 16.0, d: 1.0 };
    Map1D::new(vec![
        Piece1D::new(0.0, 0.25, true, true, q),
        Piece1D::new(0.25, 0.75, false, true, Expr::Constant(3.0)),
        Piece1D::new(0.75, 1.0, false, true, q),
        Piece1D::new(1.0, 3.0, false, true, Expr::Constant(0.0)),
    ])
    .expect("f1 is continuous")
}

/// `4x(2-x)` on `[0,1/2] ∪ (3/2,2]`, `3` between, `0` on `(2,3]`.
pub fn f2() -> Map1D {
    let q = Expr::Quadratic { c: 4.0, d: 2.0 };
    Map1D::new(vec![
        Piece1D::new(0.0, 0.5, true, true, q),
        Piece1D::new(0.5, 1.5, false, true, Expr::Constant(3.0)),
        Piece1D::new(1.5, 2.0, false, true, q),
        Piece1D::new(2.0, 3.0, false, true, Expr::Constant(0.0)),
    ])
    .expect("f2 is continuous")
}

/// Which of `f1`, `f2` is applied at each step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pattern51 {
    AllF1,
    AllF2,
    Alternate,
    /// Repeating string of 1s and 2s.
    Digits(Vec<u8>),
}

impl Pattern51 {
    /// 0-based map indices, one period.
    pub fn kinds(&self) -> Vec<usize> {
        match self {
            Pattern51::AllF1 => vec![0],
            Pattern51::AllF2 => vec![1],
            Pattern51::Alternate => vec![0, 1],
            Pattern51::Digits(d) => d.iter().map(|&b| (b - 1) as usize).collect(),
        }
    }
}

impl FromStr for Pattern51 {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all-f1" => Ok(Pattern51::AllF1),
            "all-f2" => Ok(Pattern51::AllF2),
            "alternate" => Ok(Pattern51::Alternate),
            _ if !s.is_empty() && s.bytes().all(|b| b == b'1' || b == b'2') => {
                Ok(Pattern51::Digits(s.bytes().map(|b| b - b'0').collect()))
            }
            _ => Err(format!(
                "unknown pattern {s:?}: use all-f1, all-f2, alternate or a string of 1s and 2s"
            )),
        }
    }
}

impl fmt::Display for Pattern51 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern51::AllF1 => f.write_str("all-f1"),
            Pattern51::AllF2 => f.write_str("all-f2"),
            Pattern51::Alternate => f.write_str("alternate"),
            Pattern51::Digits(d) => d.iter().try_for_each(|b| write!(f, "{b}")),
        }
    }
}

/// Outer sets `V_1 = [0,1/2]`, `V_2 = [3/4,2]`; step sets follow the map
/// applied at that step.
pub fn example_5_1(pattern: &Pattern51) -> Result<(MapSequence, Family1D), ExpansionError> {
    let kinds = pattern.kinds();
    let seq = Sequence1D::new(vec![f1(), f2()], kinds.clone())?;
    let fam = Family1D::new(
        TransitionMatrix::full(2).expect("2 symbols"),
        vec![Interval::new(0.0, 0.5), Interval::new(0.75, 2.0)],
        vec![
            vec![Interval::new(0.0, 0.25), Interval::new(0.75, 1.0)],
            vec![Interval::new(0.0, 0.5), Interval::new(1.5, 2.0)],
        ],
        kinds,
        Mode::Strict,
    )?;
    Ok((MapSequence::OneD(seq), fam))
}

pub fn v1_planar() -> Box2 {
    Box2::square(-1.0 / 6.0, 1.0 / 6.0)
}

pub fn v2_planar() -> Box2 {
    Box2::square(0.5, 5.0 / 6.0)
}

/// `F_n(x) = (w_n sin x₂ + saw_2(12x₁), w_n sin x₁ + saw_2(12x₂))` with
/// `w_n = n/(n+1)`.
pub fn example_5_2() -> Result<(MapSequence, Family2D), ExpansionError> {
    let seq = MapSequence::TwoD(Sequence2D {
        family: SineSawFamily {
            weight: WeightRule::IndexRatio,
            scale: 12.0,
        },
    });
    let fam = Family2D::constant(
        TransitionMatrix::full(2).expect("2 symbols"),
        vec![v1_planar(), v2_planar()],
        Mode::Strict,
    )?;
    Ok((seq, fam))
}

/// Initial point of the planar orbit figure.
pub const FIGURE_X0: [f64; 2] = [0.12, 0.01];

/// Initial four-point set of the planar set-orbit figure.
pub const FIGURE_A0: [[f64; 2]; 4] = [[0.04, 0.01], [0.05, 0.01], [0.11, 0.01], [0.12, 0.02]];

/// Steps shown in both planar figures.
pub const FIGURE_STEPS: usize = 5000;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_parsing() {
        assert_eq!("alternate".parse::<Pattern51>().unwrap().kinds(), vec![0, 1]);
        assert_eq!("1121".parse::<Pattern51>().unwrap().kinds(), vec![0, 0, 1, 0]);
        assert!("13".parse::<Pattern51>().is_err());
        assert_eq!("2212".parse::<Pattern51>().unwrap().to_string(), "2212");
    }

    #[test]
    fn quadratic_pieces_meet_the_plateau() {
        assert_eq!(f1().eval(0.25).unwrap(), 3.0);
        assert_eq!(f2().eval(1.5).unwrap(), 3.0);
        assert_eq!(f1().eval(15.0 / 16.0).unwrap(), 15.0 / 16.0);
        assert_eq!(f2().eval(1.75).unwrap(), 1.75);
    }
}
