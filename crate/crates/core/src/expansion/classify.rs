use serde::Serialize;

use crate::dynsys::MapSequence;
use crate::symbolic::TransitionMatrix;

use super::ExpansionReport;

/// The checked predicates. `equicontinuous` and `compact_space` come from
/// the caller; the rest are read off the report and the matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Hypotheses {
    pub covering: bool,
    pub outer_separated: bool,
    pub steps_disjoint: bool,
    pub lambda_gt_one: bool,
    pub bounded_outer: bool,
    pub equicontinuous: bool,
    pub compact_space: bool,
    pub irreducible: bool,
    pub row_sum_two: bool,
    pub h1: bool,
    pub h2: bool,
    pub h3: bool,
    pub h4: bool,
}

impl Hypotheses {
    fn get(&self, name: &str) -> bool {
        match name {
            "covering" => self.covering,
            "outer_separated" => self.outer_separated,
            "lambda_gt_one" => self.lambda_gt_one,
            "bounded_outer" => self.bounded_outer,
            "equicontinuous" => self.equicontinuous,
            "H1" => self.h1,
            "H2" => self.h2,
            "H3" => self.h3,
            "H4" => self.h4,
            _ => unreachable!("unknown predicate {name}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremCheck {
    pub id: &'static str,
    pub applicable: bool,
    pub requires: Vec<&'static str>,
    pub missing: Vec<&'static str>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub hypotheses: Hypotheses,
    pub theorems: Vec<TheoremCheck>,
    /// `A` irreducible with some row sum ≥ 2: the chaos conclusions of
    /// 3.6, 3.7, 4.7 and 4.8 are in force when those apply.
    pub chaos_clause: bool,
}

impl Classification {
    pub fn applicable(&self) -> Vec<&'static str> {
        self.theorems.iter().filter(|t| t.applicable).map(|t| t.id).collect()
    }

    pub fn is_applicable(&self, id: &str) -> bool {
        self.theorems.iter().any(|t| t.id == id && t.applicable)
    }
}

const TABLE: &[(&str, &[&str])] = &[
    ("3.3", &["outer_separated", "equicontinuous", "H1"]),
    ("3.4", &["outer_separated", "equicontinuous", "covering"]),
    ("3.5", &["H1", "H2"]),
    ("3.6", &["outer_separated", "equicontinuous", "H1", "H2"]),
    ("3.7", &["outer_separated", "equicontinuous", "covering", "lambda_gt_one", "bounded_outer"]),
    ("3.8", &["covering", "H3", "outer_separated"]),
    ("4.1", &["H1", "H4"]),
    ("4.2", &["covering", "H4"]),
    ("4.3", &["H1", "H4", "H2"]),
    ("4.4", &["H1", "H3", "equicontinuous", "outer_separated"]),
    ("4.5", &["covering", "H3", "equicontinuous", "outer_separated"]),
    ("4.6", &["H1", "H2", "H3"]),
    ("4.7", &["H1", "H3", "equicontinuous", "outer_separated", "H2"]),
    (
        "4.8",
        &["covering", "H3", "equicontinuous", "outer_separated", "lambda_gt_one", "bounded_outer"],
    ),
    ("4.9", &["covering", "H3", "outer_separated"]),
];

/// Which theorems have every hypothesis verified at desk scale. This is a
/// transparency report: analytic hypotheses that cannot be checked (equi-
/// continuity, compactness of the phase space) are taken from the caller.
///
/// Theorem 4.8 is also reported for the restriction to `Λ_n` when 3.7
/// applies and only compactness of the whole space is missing: then
/// `⋃ V_i` serves as the compact base space.
pub fn classify(
    report: &ExpansionReport,
    matrix: &TransitionMatrix,
    equicontinuous: bool,
    compact_space: bool,
) -> Classification {
    let covering = report.weak_ce;
    let h3 = compact_space;
    let hyp = Hypotheses {
        covering,
        outer_separated: report.separation > 0.0,
        steps_disjoint: report.step_separation > 0.0,
        lambda_gt_one: report.lambda_lower > 1.0,
        bounded_outer: report.bounded_outer,
        equicontinuous,
        compact_space,
        irreducible: matrix.is_irreducible(),
        row_sum_two: matrix.row_sum_at_least_two(),
        h1: report.h1_implied,
        h2: report.h2_implied,
        h3,
        h4: h3 && report.step_separation > 0.0,
    };
    let mut theorems: Vec<TheoremCheck> = TABLE
        .iter()
        .map(|(id, req)| {
            let missing: Vec<&'static str> = req.iter().copied().filter(|r| !hyp.get(r)).collect();
            TheoremCheck {
                id,
                applicable: missing.is_empty(),
                requires: req.to_vec(),
                missing,
                note: None,
            }
        })
        .collect();
    let t37 = theorems.iter().any(|t| t.id == "3.7" && t.applicable);
    if let Some(t48) = theorems.iter_mut().find(|t| t.id == "4.8") {
        if !t48.applicable && t37 && t48.missing == ["H3"] {
            t48.applicable = true;
            t48.note = Some("on the invariant subsystem over Λ_n, with ⋃ V_i as base space".into());
        }
    }
    let chaos_clause = hyp.irreducible && hyp.row_sum_two;
    for t in theorems.iter_mut() {
        if ["3.6", "3.7", "4.7", "4.8"].contains(&t.id) && t.applicable && chaos_clause {
            let extra = "Li-Yorke and distributional chaos clause in force";
            t.note = Some(match t.note.take() {
                Some(n) => format!("{n}; {extra}"),
                None => extra.into(),
            });
        }
    }
    Classification {
        hypotheses: hyp,
        theorems,
        chaos_clause,
    }
}

/// Every map of a 1D sequence sends its domain into itself, so the domain
/// is a compact phase space on which the maps are continuous.
pub fn compact_self_map(seq: &MapSequence) -> bool {
    match seq {
        MapSequence::OneD(s) => s.maps().iter().all(|m| {
            let d = m.domain();
            m.image_of_interval(&d)
                .ok()
                .and_then(|img| img.hull())
                .is_some_and(|h| d.contains_interval(&h))
        }),
        MapSequence::TwoD(_) => false,
    }
}
