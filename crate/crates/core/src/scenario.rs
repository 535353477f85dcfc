//! Scenario files: a versioned JSON description of a transition matrix, a
//! map sequence and a covering family. Numbers may be written as JSON
//! numbers or as strings holding decimals or exact fractions `"p/q"`.

use std::fmt;
use std::path::Path;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::dynsys::{Expr, Map1D, MapSequence, Piece1D, Sequence1D, Sequence2D, SineSawFamily, WeightRule};
use crate::examples::{Pattern51, FIGURE_A0, FIGURE_STEPS, FIGURE_X0};
use crate::expansion::{lcm, Family1D, Family2D, Mode};
use crate::region::{Box2, Interval};
use crate::symbolic::{validate_matrix, TransitionMatrix};

pub const SCENARIO_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid {field}{}: {message}", .line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    Validation {
        field: &'static str,
        line: Option<usize>,
        message: String,
    },
    #[error("unknown scenario {0:?}: not a file and not example-5.1 or example-5.2")]
    Unknown(String),
}

/// A real number parsed from a JSON number, a decimal string or `"p/q"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

pub fn parse_num(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let parsed = match t.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
            let q: f64 = q.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
            if q == 0.0 {
                return Err(format!("zero denominator in {s:?}"));
            }
            p / q
        }
        None => t.parse().map_err(|_| format!("not a number: {s:?}"))?,
    };
    if parsed.is_finite() {
        Ok(parsed)
    } else {
        Err(format!("not finite: {s:?}"))
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.0)
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Num;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or a string such as \"15/16\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Num, E> {
                Ok(Num(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Num, E> {
                Ok(Num(v as f64))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Num, E> {
                Ok(Num(v as f64))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Num, E> {
                parse_num(v).map(Num).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ExprSpec {
    Constant { value: Num },
    Affine { p: Num, q: Num },
    Quadratic { c: Num, d: Num },
    Sawtooth { scale: Num },
    SineAffine { s: Num, p: Num, q: Num },
}

impl ExprSpec {
    pub fn to_expr(&self) -> Expr {
        match *self {
            ExprSpec::Constant { value } => Expr::Constant(value.0),
            ExprSpec::Affine { p, q } => Expr::Affine { p: p.0, q: q.0 },
            ExprSpec::Quadratic { c, d } => Expr::Quadratic { c: c.0, d: d.0 },
            ExprSpec::Sawtooth { scale } => Expr::Sawtooth { scale: scale.0 },
            ExprSpec::SineAffine { s, p, q } => Expr::SineAffine { s: s.0, p: p.0, q: q.0 },
        }
    }
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceSpec {
    pub lo: Num,
    pub hi: Num,
    #[serde(default = "yes")]
    pub lo_closed: bool,
    #[serde(default = "yes")]
    pub hi_closed: bool,
    pub expr: ExprSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub pieces: Vec<PieceSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightSpec {
    IndexRatio,
    Constant(Num),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum SystemSpec {
    /// `f_n = maps[pattern[n mod len]]`, 0-based indices.
    Interval { maps: Vec<MapSpec>, pattern: Vec<usize> },
    SineSaw { weight: WeightSpec, scale: Num },
}

/// `[lo, hi]` or `[[xlo, xhi], [ylo, yhi]]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SetSpec {
    Interval([Num; 2]),
    Box([[Num; 2]; 2]),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeSpec {
    Strict,
    Weak,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub mode: ModeSpec,
    pub outer: Vec<SetSpec>,
    /// Step-set kinds; `V_{i,n} = V_i` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<Vec<Vec<SetSpec>>>,
    /// Kind index per step, cycled; defaults to the map pattern.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub geom: Num,
    pub decode: Num,
    pub merge: Num,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            geom: Num(1e-9),
            decode: Num(1e-9),
            merge: Num(crate::region::MERGE_TOL),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub version: u32,
    pub name: String,
    pub matrix: Vec<Vec<i64>>,
    pub system: SystemSpec,
    pub family: FamilySpec,
    #[serde(default)]
    pub tolerances: Tolerances,
    /// Verification horizon; must be a multiple of the joint period.
    pub horizon: usize,
    #[serde(default)]
    pub seed: u64,
    /// Declared equicontinuity of `{f_n}` on the covering sets.
    #[serde(default)]
    pub equicontinuous: bool,
    /// Planar scenarios: steps for the face test (default `0..horizon`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check_steps: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub face_grid: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<Vec<Num>>,
    /// 1D: `[lo, hi]` pairs; 2D: `[x, y]` points.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a0: Option<Vec<[Num; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BuiltFamily {
    One(Family1D),
    Two(Family2D),
}

/// A validated scenario with its library objects.
#[derive(Debug, Clone)]
pub struct Built {
    pub scenario: Scenario,
    pub matrix: TransitionMatrix,
    pub seq: MapSequence,
    pub family: BuiltFamily,
}

impl Built {
    pub fn dim(&self) -> usize {
        self.seq.dim()
    }

    pub fn family_1d(&self) -> Option<&Family1D> {
        match &self.family {
            BuiltFamily::One(f) => Some(f),
            BuiltFamily::Two(_) => None,
        }
    }

    pub fn family_2d(&self) -> Option<&Family2D> {
        match &self.family {
            BuiltFamily::Two(f) => Some(f),
            BuiltFamily::One(_) => None,
        }
    }

    /// Joint period of maps and step sets.
    pub fn period(&self) -> usize {
        let fam = match &self.family {
            BuiltFamily::One(f) => f.period(),
            BuiltFamily::Two(f) => f.period(),
        };
        match &self.seq {
            MapSequence::OneD(s) => lcm(s.period(), fam),
            MapSequence::TwoD(_) => fam,
        }
    }

    pub fn outer_separation(&self) -> f64 {
        match &self.family {
            BuiltFamily::One(f) => f.outer_separation(),
            BuiltFamily::Two(f) => f.outer_separation(),
        }
    }

    /// Diameter of the hull of the outer sets.
    pub fn outer_hull_diameter(&self) -> f64 {
        match &self.family {
            BuiltFamily::One(f) => {
                let lo = f.outer().iter().map(|v| v.lo).fold(f64::INFINITY, f64::min);
                let hi = f.outer().iter().map(|v| v.hi).fold(f64::NEG_INFINITY, f64::max);
                hi - lo
            }
            BuiltFamily::Two(f) => f.outer().iter().fold(f.outer()[0], |a, b| a.hull(b)).diameter(),
        }
    }
}

fn line_of(text: Option<&str>, key: &str) -> Option<usize> {
    let needle = format!("\"{key}\"");
    text?.lines().position(|l| l.contains(&needle)).map(|i| i + 1)
}

struct Ctx<'a> {
    text: Option<&'a str>,
}

impl Ctx<'_> {
    fn err(&self, field: &'static str, message: impl fmt::Display) -> ScenarioError {
        ScenarioError::Validation {
            field,
            line: line_of(self.text, field),
            message: message.to_string(),
        }
    }
}

fn interval_of(s: &SetSpec) -> Option<Interval> {
    match s {
        SetSpec::Interval([a, b]) => Interval::try_new(a.0, b.0),
        SetSpec::Box(_) => None,
    }
}

fn box_of(s: &SetSpec) -> Option<Box2> {
    match s {
        SetSpec::Box([[a, b], [c, d]]) => Some(Box2::new(Interval::try_new(a.0, b.0)?, Interval::try_new(c.0, d.0)?)),
        SetSpec::Interval(_) => None,
    }
}

fn convert<T>(sets: &[SetSpec], f: fn(&SetSpec) -> Option<T>) -> Option<Vec<T>> {
    sets.iter().map(f).collect()
}

impl Scenario {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenarios serialize")
    }

    /// Check every invariant and build the library objects.
    pub fn build(self) -> Result<Built, ScenarioError> {
        self.build_with(None)
    }

    fn build_with(self, text: Option<&str>) -> Result<Built, ScenarioError> {
        let cx = Ctx { text };
        if self.version != SCENARIO_VERSION {
            return Err(cx.err("version", format!("unsupported version {}", self.version)));
        }
        let t = &self.tolerances;
        let (g, d, m) = (t.geom.0, t.decode.0, t.merge.0);
        if !(m > 0.0 && g > 0.0 && d > 0.0 && m < g && g <= d) {
            return Err(cx.err("tolerances", "need 0 < merge < geom <= decode"));
        }
        let matrix = validate_matrix(&self.matrix).map_err(|e| cx.err("matrix", e))?;
        let n = matrix.n_symbols();
        let seq = match &self.system {
            SystemSpec::Interval { maps, pattern } => {
                let mut built = Vec::with_capacity(maps.len());
                for (k, spec) in maps.iter().enumerate() {
                    let pieces = spec
                        .pieces
                        .iter()
                        .map(|p| {
                            if !(p.lo.0 < p.hi.0) {
                                return Err(cx.err("pieces", format!("map {k}: piece [{}, {}] is empty", p.lo.0, p.hi.0)));
                            }
                            Ok(Piece1D::new(p.lo.0, p.hi.0, p.lo_closed, p.hi_closed, p.expr.to_expr()))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    built.push(Map1D::new(pieces).map_err(|e| cx.err("maps", format!("map {k}: {e}")))?);
                }
                MapSequence::OneD(Sequence1D::new(built, pattern.clone()).map_err(|e| cx.err("pattern", e))?)
            }
            SystemSpec::SineSaw { weight, scale } => MapSequence::TwoD(Sequence2D {
                family: SineSawFamily {
                    weight: match weight {
                        WeightSpec::IndexRatio => WeightRule::IndexRatio,
                        WeightSpec::Constant(w) => WeightRule::Constant(w.0),
                    },
                    scale: scale.0,
                },
            }),
        };
        let fs = &self.family;
        if fs.outer.len() != n {
            return Err(cx.err("outer", format!("{} outer sets for {n} symbols", fs.outer.len())));
        }
        let mode = match fs.mode {
            ModeSpec::Strict => Mode::Strict,
            ModeSpec::Weak => Mode::Weak,
        };
        let pattern = match (&fs.pattern, &fs.steps, &seq) {
            (Some(p), _, _) => p.clone(),
            (None, None, _) => vec![0],
            (None, Some(_), MapSequence::OneD(s)) => s.pattern().to_vec(),
            (None, Some(_), MapSequence::TwoD(_)) => vec![0],
        };
        let family = match &seq {
            MapSequence::OneD(_) => {
                let outer = convert(&fs.outer, interval_of).ok_or_else(|| cx.err("outer", "expected [lo, hi] intervals"))?;
                let kinds = match &fs.steps {
                    Some(k) => k
                        .iter()
                        .map(|s| convert(s, interval_of))
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| cx.err("steps", "expected [lo, hi] intervals"))?,
                    None => vec![outer.clone()],
                };
                BuiltFamily::One(Family1D::new(matrix.clone(), outer, kinds, pattern, mode).map_err(|e| cx.err("family", e))?)
            }
            MapSequence::TwoD(_) => {
                let outer = convert(&fs.outer, box_of).ok_or_else(|| cx.err("outer", "expected [[xlo, xhi], [ylo, yhi]] boxes"))?;
                let kinds = match &fs.steps {
                    Some(k) => k
                        .iter()
                        .map(|s| convert(s, box_of))
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| cx.err("steps", "expected boxes"))?,
                    None => vec![outer.clone()],
                };
                BuiltFamily::Two(Family2D::new(matrix.clone(), outer, kinds, pattern, mode).map_err(|e| cx.err("family", e))?)
            }
        };
        let built = Built {
            scenario: self,
            matrix,
            seq,
            family,
        };
        let period = built.period();
        let h = built.scenario.horizon;
        if h == 0 || !h.is_multiple_of(period) {
            return Err(cx.err("horizon", format!("{h} is not a positive multiple of the period {period}")));
        }
        let dim = built.dim();
        if let Some(x0) = &built.scenario.x0 {
            if x0.len() != dim {
                return Err(cx.err("x0", format!("expected {dim} coordinates")));
            }
        }
        if let Some(a0) = &built.scenario.a0 {
            if a0.is_empty() || (dim == 1 && a0.iter().any(|[a, b]| !(a.0 <= b.0))) {
                return Err(cx.err("a0", "expected a nonempty list of [lo, hi] with lo <= hi"));
            }
        }
        Ok(built)
    }
}

/// Parse and validate scenario text; errors carry line numbers.
pub fn parse_scenario(text: &str) -> Result<Built, ScenarioError> {
    let sc: Scenario = serde_json::from_str(text).map_err(|e| ScenarioError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    sc.build_with(Some(text))
}

/// A built-in name (`example-5.1`, `example-5.2`) or a path to a file.
/// `pattern` selects the map pattern of the first example.
pub fn load_scenario(name: &str, pattern: Option<&str>) -> Result<Built, ScenarioError> {
    let bad_pattern = |m: String| ScenarioError::Validation {
        field: "pattern",
        line: None,
        message: m,
    };
    match name {
        "example-5.1" => {
            let p: Pattern51 = pattern.unwrap_or("alternate").parse().map_err(bad_pattern)?;
            builtin_5_1(&p).build()
        }
        "example-5.2" => {
            if pattern.is_some() {
                return Err(bad_pattern("the planar example has no map pattern".into()));
            }
            builtin_5_2().build()
        }
        _ => {
            let path = Path::new(name);
            if !path.exists() {
                return Err(ScenarioError::Unknown(name.into()));
            }
            let text = std::fs::read_to_string(path).map_err(|e| ScenarioError::Io {
                path: name.into(),
                message: e.to_string(),
            })?;
            parse_scenario(&text)
        }
    }
}

fn quad(lo: f64, hi: f64, lo_closed: bool, c: f64, d: f64) -> PieceSpec {
    PieceSpec {
        lo: Num(lo),
        hi: Num(hi),
        lo_closed,
        hi_closed: true,
        expr: ExprSpec::Quadratic { c: Num(c), d: Num(d) },
    }
}

fn flat(lo: f64, hi: f64, value: f64) -> PieceSpec {
    PieceSpec {
        lo: Num(lo),
        hi: Num(hi),
        lo_closed: false,
        hi_closed: true,
        expr: ExprSpec::Constant { value: Num(value) },
    }
}

fn iv(a: f64, b: f64) -> SetSpec {
    SetSpec::Interval([Num(a), Num(b)])
}

fn sq(a: f64, b: f64) -> SetSpec {
    SetSpec::Box([[Num(a), Num(b)], [Num(a), Num(b)]])
}

/// The quadratic pair with a map pattern; horizon is two joint periods.
pub fn builtin_5_1(pattern: &Pattern51) -> Scenario {
    let kinds = pattern.kinds();
    let f1 = MapSpec {
        name: Some("f1".into()),
        pieces: vec![
            quad(0.0, 0.25, true, 16.0, 1.0),
            flat(0.25, 0.75, 3.0),
            quad(0.75, 1.0, false, 16.0, 1.0),
            flat(1.0, 3.0, 0.0),
        ],
    };
    let f2 = MapSpec {
        name: Some("f2".into()),
        pieces: vec![
            quad(0.0, 0.5, true, 4.0, 2.0),
            flat(0.5, 1.5, 3.0),
            quad(1.5, 2.0, false, 4.0, 2.0),
            flat(2.0, 3.0, 0.0),
        ],
    };
    Scenario {
        version: SCENARIO_VERSION,
        name: format!("example-5.1 ({pattern})"),
        matrix: vec![vec![1, 1], vec![1, 1]],
        system: SystemSpec::Interval {
            maps: vec![f1, f2],
            pattern: kinds.clone(),
        },
        family: FamilySpec {
            mode: ModeSpec::Strict,
            outer: vec![iv(0.0, 0.5), iv(0.75, 2.0)],
            steps: Some(vec![vec![iv(0.0, 0.25), iv(0.75, 1.0)], vec![iv(0.0, 0.5), iv(1.5, 2.0)]]),
            pattern: Some(kinds.clone()),
        },
        tolerances: Tolerances::default(),
        horizon: 2 * kinds.len(),
        seed: 0,
        equicontinuous: true,
        check_steps: None,
        face_grid: None,
        x0: None,
        a0: Some(vec![[Num(0.0), Num(0.25)]]),
        steps: None,
    }
}

/// The planar sine-sawtooth family with the figures' initial data.
pub fn builtin_5_2() -> Scenario {
    Scenario {
        version: SCENARIO_VERSION,
        name: "example-5.2".into(),
        matrix: vec![vec![1, 1], vec![1, 1]],
        system: SystemSpec::SineSaw {
            weight: WeightSpec::IndexRatio,
            scale: Num(12.0),
        },
        family: FamilySpec {
            mode: ModeSpec::Strict,
            outer: vec![sq(-1.0 / 6.0, 1.0 / 6.0), sq(0.5, 5.0 / 6.0)],
            steps: None,
            pattern: None,
        },
        tolerances: Tolerances::default(),
        horizon: 4,
        seed: 0,
        equicontinuous: true,
        check_steps: Some(vec![0, 1, 10, 1000]),
        face_grid: Some(64),
        x0: Some(FIGURE_X0.iter().map(|&v| Num(v)).collect()),
        a0: Some(FIGURE_A0.iter().map(|&[x, y]| [Num(x), Num(y)]).collect()),
        steps: Some(FIGURE_STEPS),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{example_5_1, example_5_2};

    #[test]
    fn fractions_parse_exactly() {
        assert_eq!(parse_num("15/16").unwrap(), 15.0 / 16.0);
        assert_eq!(parse_num("-1/6").unwrap(), -1.0 / 6.0);
        assert_eq!(parse_num(" 0.75 ").unwrap(), 0.75);
        assert!(parse_num("1/0").is_err());
        assert!(parse_num("abc").is_err());
    }

    #[test]
    fn builtins_match_the_library_examples() {
        for p in ["all-f1", "alternate", "2211"] {
            let pat: Pattern51 = p.parse().unwrap();
            let b = builtin_5_1(&pat).build().unwrap();
            let (seq, fam) = example_5_1(&pat).unwrap();
            assert_eq!(b.seq, seq);
            assert_eq!(b.family, BuiltFamily::One(fam));
        }
        let b = builtin_5_2().build().unwrap();
        let (seq, fam) = example_5_2().unwrap();
        assert_eq!(b.seq, seq);
        assert_eq!(b.family, BuiltFamily::Two(fam));
    }

    #[test]
    fn builtins_round_trip() {
        for sc in [builtin_5_1(&Pattern51::Alternate), builtin_5_2()] {
            let back = parse_scenario(&sc.to_json()).unwrap();
            assert_eq!(back.scenario, sc);
        }
    }

    #[test]
    fn zero_row_is_located() {
        let mut sc = builtin_5_1(&Pattern51::AllF1);
        sc.matrix = vec![vec![1, 1], vec![0, 0]];
        let text = sc.to_json();
        match parse_scenario(&text).unwrap_err() {
            ScenarioError::Validation { field, line, message } => {
                assert_eq!(field, "matrix");
                assert_eq!(line, Some(4));
                assert!(message.contains("sums to 0"), "{message}");
            }
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = parse_scenario("{\n  \"version\": 1,\n  oops\n}").unwrap_err();
        assert!(matches!(e, ScenarioError::Parse { line: 3, .. }), "{e:?}");
    }

    #[test]
    fn fraction_strings_in_files() {
        let text = builtin_5_2().to_json().replacen("-0.16666666666666666", "\"-1/6\"", 1);
        assert!(text.contains("\"-1/6\""));
        let b = parse_scenario(&text).unwrap();
        assert_eq!(b.family_2d().unwrap().outer()[0].x.lo, -1.0 / 6.0);
    }

    #[test]
    fn horizon_must_cover_whole_periods() {
        let mut sc = builtin_5_1(&Pattern51::Digits(vec![1, 2, 2]));
        sc.horizon = 4;
        assert!(matches!(
            sc.build().unwrap_err(),
            ScenarioError::Validation { field: "horizon", .. }
        ));
    }

    #[test]
    fn tolerances_must_be_ordered() {
        let mut sc = builtin_5_2();
        sc.tolerances.merge = Num(1e-3);
        assert!(matches!(
            sc.build().unwrap_err(),
            ScenarioError::Validation { field: "tolerances", .. }
        ));
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(load_scenario("no-such-thing", None), Err(ScenarioError::Unknown(_))));
        assert!(load_scenario("example-5.1", Some("3")).is_err());
    }
}
