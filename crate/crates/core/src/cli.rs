//! Command-line front end: argument parsing, dispatch and output.
//!
//! Every command renders a text document. Tables are CSV; summary lines
//! before a table start with `# `. Floats use Rust's shortest round-trip
//! formatting, so output is identical across runs and platforms.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::chaoslab::{
    decoded_pair_stats, default_eps_grid, induced_entropy_probe, itinerary_count_entropy, pair_stats,
    separated_set_entropy, subshift_pair_stats, word_count_entropy, EntropyEstimate, EntropyMethod, DC_TOL,
};
use crate::coding::{conjugacy_residual, equi_modulus_probe, itinerary_2d, Coder};
use crate::dynsys::{MapSequence, Point};
use crate::expansion::{
    check_covering_1d, check_covering_2d_at, classify, compact_self_map, Classification, ExpansionReport,
};
use crate::hyperspace::{induced_orbit, summarize, CompactRegion};
use crate::region::{Interval, IntervalUnion};
use crate::scenario::{load_scenario, parse_num, Built};
use crate::symbolic::{scrambled_pair, validate_matrix, SymbolGenerator, TransitionMatrix};

/// Threshold on the equivariance residual for `conjugacy-check`.
pub const EQUIVARIANCE_BOUND: f64 = 1e-6;
/// Cells held at once by the cell-enumerating entropy estimators.
const CELL_BUDGET: usize = 1 << 22;

#[derive(Debug, Parser)]
#[command(name = "symdyn", version, about = "Coupled-expansion, coding and chaos diagnostics for non-autonomous maps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for every random draw (defaults to the scenario's).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub horizon: Option<usize>,
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Map pattern for example-5.1: all-f1, all-f2, alternate or a string of 1s and 2s.
    #[arg(long, global = true)]
    pub pattern: Option<String>,
    /// Emit a JSON run report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectral radius, entropy and word counts of a transition matrix.
    SftInfo {
        scenario: Option<String>,
        /// Rows separated by ';', entries by ',', e.g. "1,1;1,0".
        #[arg(long)]
        matrix: Option<String>,
    },
    /// Covering, separation and expansion checks.
    VerifyExpansion { scenario: String },
    /// Decode a symbol sequence to a point.
    Decode {
        scenario: String,
        /// Periodic word "1,2,2" or prefix and periodic tail "1,2|1".
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 0)]
        n: usize,
    },
    /// Symbols visited by the orbit of a point.
    Itinerary {
        scenario: String,
        #[arg(long)]
        x0: String,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 16)]
        steps: usize,
    },
    /// Equivariance and round-trip residuals of the decode map.
    ConjugacyCheck { scenario: String },
    /// Orbit of a point as CSV.
    Orbit {
        scenario: String,
        #[arg(long)]
        x0: Option<String>,
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Orbit of a compact set under the induced map as CSV.
    SetOrbit {
        scenario: String,
        /// 1D: "lo:hi;lo:hi"; 2D: "x,y;x,y".
        #[arg(long)]
        a0: Option<String>,
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Li-Yorke and distributional statistics of a scrambled pair.
    ChaosStats {
        scenario: String,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
    },
    /// Entropy estimates against log rho(A).
    Entropy {
        scenario: String,
        /// word-count, itinerary-count, separated-set or induced-probe.
        #[arg(long)]
        method: Option<EntropyMethod>,
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Which theorems have all hypotheses verified.
    Classify { scenario: String },
    /// Summary of every check.
    Report { scenario: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::SftInfo { .. } => "sft-info",
            Command::VerifyExpansion { .. } => "verify-expansion",
            Command::Decode { .. } => "decode",
            Command::Itinerary { .. } => "itinerary",
            Command::ConjugacyCheck { .. } => "conjugacy-check",
            Command::Orbit { .. } => "orbit",
            Command::SetOrbit { .. } => "set-orbit",
            Command::ChaosStats { .. } => "chaos-stats",
            Command::Entropy { .. } => "entropy",
            Command::Classify { .. } => "classify",
            Command::Report { .. } => "report",
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct CliError(pub String);

fn fail(e: impl std::fmt::Display) -> CliError {
    CliError(e.to_string())
}

/// Rendered result of one command.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub payload: Value,
    /// False when a verification did not pass (exit code 2).
    pub ok: bool,
    /// Scenario echo for the JSON report.
    pub scenario: Value,
}

#[derive(Serialize)]
struct RunReport<'a> {
    version: &'a str,
    command: &'a str,
    seed: Option<u64>,
    scenario: &'a Value,
    payload: &'a Value,
    wall_time_ms: f64,
}

/// Summary lines followed by an optional CSV table.
#[derive(Default)]
struct Doc {
    text: String,
}

impl Doc {
    fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.text, "# {key}: {value}");
    }

    fn row(&mut self, cells: &[String]) {
        let _ = writeln!(self.text, "{}", cells.join(","));
    }

    fn header(&mut self, cols: &[&str]) {
        let _ = writeln!(self.text, "{}", cols.join(","));
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn f(v: f64) -> String {
    format!("{v}")
}

fn seed_of(cli: &Cli, b: &Built) -> u64 {
    cli.seed.unwrap_or(b.scenario.seed)
}

fn load(cli: &Cli, name: &str) -> Result<Built, CliError> {
    load_scenario(name, cli.pattern.as_deref()).map_err(fail)
}

fn parse_matrix(s: &str) -> Result<TransitionMatrix, CliError> {
    let rows = s
        .split(';')
        .map(|r| {
            r.split(',')
                .map(|v| v.trim().parse::<i64>().map_err(|_| fail(format!("bad matrix entry {v:?}"))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    validate_matrix(&rows).map_err(fail)
}

fn parse_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',').map(|v| parse_num(v).map_err(fail)).collect()
}

fn parse_symbols(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .filter(|v| !v.trim().is_empty())
        .map(|v| v.trim().parse::<usize>().map_err(|_| fail(format!("bad symbol {v:?}"))))
        .collect()
}

fn parse_alpha(s: &str, matrix: &TransitionMatrix) -> Result<SymbolGenerator, CliError> {
    match s.split_once('|') {
        Some((p, t)) => SymbolGenerator::explicit(&parse_symbols(p)?, &parse_symbols(t)?, matrix).map_err(fail),
        None => SymbolGenerator::periodic(&parse_symbols(s)?, matrix).map_err(fail),
    }
}

fn parse_point(s: &str, dim: usize) -> Result<Point, CliError> {
    match (parse_list(s)?.as_slice(), dim) {
        ([x], 1) => Ok(Point::One(*x)),
        ([x, y], 2) => Ok(Point::Two([*x, *y])),
        _ => Err(fail(format!("expected {dim} coordinate(s) in {s:?}"))),
    }
}

fn coder(cli: &Cli, b: &Built) -> Result<Coder, CliError> {
    let fam = b.family_1d().ok_or_else(|| fail("this command needs a one-dimensional scenario"))?;
    let mut c = Coder::new(&b.seq, fam).map_err(fail)?.with_tol(cli.tol.unwrap_or(b.scenario.tolerances.decode.0));
    if let Some(d) = cli.depth {
        c = c.with_depth_cap(d);
    }
    Ok(c)
}

/// Covering report at the scenario's horizon (1D) or check steps (2D).
pub fn verify(cli: &Cli, b: &Built) -> Result<ExpansionReport, CliError> {
    match &b.seq {
        MapSequence::OneD(_) => {
            let h = cli.horizon.unwrap_or(b.scenario.horizon);
            check_covering_1d(&b.seq, b.family_1d().expect("1D family"), h).map_err(fail)
        }
        MapSequence::TwoD(_) => {
            let steps: Vec<usize> = match (cli.horizon, &b.scenario.check_steps) {
                (Some(h), _) => (0..h).collect(),
                (None, Some(s)) => s.clone(),
                (None, None) => (0..b.scenario.horizon).collect(),
            };
            let grid = cli.samples.or(b.scenario.face_grid).unwrap_or(64);
            check_covering_2d_at(&b.seq, b.family_2d().expect("2D family"), &steps, grid).map_err(fail)
        }
    }
}

fn classification(b: &Built, r: &ExpansionReport) -> Classification {
    classify(r, &b.matrix, b.scenario.equicontinuous, compact_self_map(&b.seq))
}

fn sft_info(cli: &Cli, scenario: &Option<String>, matrix: &Option<String>) -> Result<Output, CliError> {
    let (a, echo) = match (matrix, scenario) {
        (Some(m), _) => (parse_matrix(m)?, Value::Null),
        (None, Some(s)) => {
            let b = load(cli, s)?;
            (b.matrix.clone(), serde_json::to_value(&b.scenario).map_err(fail)?)
        }
        (None, None) => return Err(fail("give a scenario or --matrix")),
    };
    let rho = a.spectral_radius(1e-12).map_err(fail)?;
    let words = cli.horizon.unwrap_or(16);
    let mut d = Doc::default();
    d.kv("symbols", a.n_symbols());
    d.kv("spectral_radius", f(rho));
    d.kv("entropy", f(rho.ln()));
    d.kv("irreducible", a.is_irreducible());
    d.kv("row_sum_at_least_two", a.row_sum_at_least_two());
    d.header(&["n", "count_words", "word_entropy"]);
    let mut counts = Vec::new();
    for n in 1..=words {
        let c = a.count_words(n);
        d.row(&[n.to_string(), c.to_string(), f(a.word_entropy(n))]);
        counts.push(c.to_string());
    }
    Ok(Output {
        text: d.text,
        payload: json!({
            "symbols": a.n_symbols(),
            "spectral_radius": rho,
            "entropy": rho.ln(),
            "irreducible": a.is_irreducible(),
            "row_sum_at_least_two": a.row_sum_at_least_two(),
            "count_words": counts,
        }),
        ok: true,
        scenario: echo,
    })
}

fn expansion_doc(d: &mut Doc, r: &ExpansionReport) {
    d.kv("dimension", r.dim);
    d.kv("mode", format!("{:?}", r.mode).to_lowercase());
    d.kv("period", r.period);
    d.kv("steps_checked", r.horizon);
    d.kv("weak_ce", r.weak_ce);
    d.kv("strict_weak_ce", r.strict_weak_ce);
    d.kv("extends_to_all_n", r.extends_to_all_n);
    d.kv("separation", f(r.separation));
    d.kv("step_separation", f(r.step_separation));
    d.kv("lambda_lower", f(r.lambda_lower));
    d.kv("bounded_outer", r.bounded_outer);
    d.kv("max_outer_diameter", f(r.max_outer_diameter));
    d.kv("min_margin", f(r.min_margin()));
    for n in &r.notes {
        d.kv("note", n);
    }
}

fn verify_expansion(cli: &Cli, b: &Built) -> Result<Output, CliError> {
    let r = verify(cli, b)?;
    let mut d = Doc::default();
    expansion_doc(&mut d, &r);
    d.header(&["n", "i", "covered", "margin", "image_lo", "image_hi"]);
    for row in &r.rows {
        let (lo, hi) = row.image.map_or((String::new(), String::new()), |(a, c)| (f(a), f(c)));
        d.row(&[row.n.to_string(), row.i.to_string(), row.covered.to_string(), f(row.margin), lo, hi]);
    }
    Ok(Output {
        text: d.text,
        payload: serde_json::to_value(&r).map_err(fail)?,
        ok: r.weak_ce,
        scenario: Value::Null,
    })
}

fn decode_cmd(cli: &Cli, b: &Built, alpha: &str, n: usize) -> Result<Output, CliError> {
    let c = coder(cli, b)?;
    let a = parse_alpha(alpha, &b.matrix)?;
    let x = c.decode(&a, n).map_err(fail)?;
    let mut d = Doc::default();
    d.kv("alpha_prefix", a.word(x.depth + 1));
    d.kv("tol", f(c.tol));
    d.header(&["n", "point", "diameter", "depth"]);
    d.row(&[n.to_string(), f(x.point), f(x.diameter), x.depth.to_string()]);
    Ok(Output {
        text: d.text,
        payload: serde_json::to_value(x).map_err(fail)?,
        ok: true,
        scenario: Value::Null,
    })
}

fn itinerary_cmd(b: &Built, cli: &Cli, x0: &str, n: usize, steps: usize) -> Result<Output, CliError> {
    let word = match parse_point(x0, b.dim())? {
        Point::One(x) => coder(cli, b)?.itinerary(x, n, steps).map_err(fail)?,
        Point::Two(p) => itinerary_2d(&b.seq, b.family_2d().expect("2D family"), p, n, steps).map_err(fail)?,
    };
    let mut d = Doc::default();
    d.kv("word", &word);
    d.header(&["step", "symbol"]);
    for (k, s) in word.symbols().iter().enumerate() {
        d.row(&[(n + k).to_string(), s.to_string()]);
    }
    Ok(Output {
        text: d.text,
        payload: json!({ "n": n, "word": word.symbols() }),
        ok: true,
        scenario: Value::Null,
    })
}

fn conjugacy_check(cli: &Cli, b: &Built) -> Result<Output, CliError> {
    let c = coder(cli, b)?.with_depth_cap(cli.depth.unwrap_or(20));
    let trials = cli.samples.unwrap_or(200);
    let horizon = cli.horizon.unwrap_or(b.scenario.horizon);
    let seed = seed_of(cli, b);
    let r = conjugacy_residual(&c, trials, horizon, seed).map_err(fail)?;
    let depths: Vec<usize> = (0..=8).collect();
    let modulus = equi_modulus_probe(&c, &depths, 50, horizon, seed).map_err(fail)?;
    let ok = r.max_equivariance < EQUIVARIANCE_BOUND && r.symbol_mismatches == 0;
    let mut d = Doc::default();
    d.kv("trials", trials);
    d.kv("seed", seed);
    d.kv("tol", f(r.tol));
    d.kv("depth_cap", r.depth_cap);
    d.kv("max_equivariance", f(r.max_equivariance));
    d.kv("max_roundtrip", f(r.max_roundtrip));
    d.kv("symbol_mismatches", r.symbol_mismatches);
    d.kv("max_depth_used", r.max_depth_used);
    for m in &modulus {
        d.kv(&format!("modulus_depth_{}", m.depth), f(m.max_distance));
    }
    d.header(&["trial", "n", "point", "diameter", "depth", "equivariance", "roundtrip", "symbol_mismatches"]);
    for row in &r.rows {
        d.row(&[
            row.trial.to_string(),
            row.n.to_string(),
            f(row.point),
            f(row.diameter),
            row.depth.to_string(),
            f(row.equivariance),
            f(row.roundtrip),
            row.symbol_mismatches.to_string(),
        ]);
    }
    Ok(Output {
        text: d.text,
        payload: json!({ "residuals": r, "modulus": modulus }),
        ok,
        scenario: Value::Null,
    })
}

fn orbit_cmd(b: &Built, x0: &Option<String>, steps: Option<usize>) -> Result<Output, CliError> {
    let x = match x0 {
        Some(s) => parse_point(s, b.dim())?,
        None => {
            let v: Vec<f64> = b
                .scenario
                .x0
                .as_ref()
                .ok_or_else(|| fail("no --x0 and the scenario has no x0"))?
                .iter()
                .map(|n| n.0)
                .collect();
            parse_point(&v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","), b.dim())?
        }
    };
    let steps = steps.or(b.scenario.steps).unwrap_or(b.scenario.horizon);
    let orbit = b.seq.orbit(0, steps, x).map_err(fail)?;
    let mut d = Doc::default();
    match b.dim() {
        1 => d.header(&["n", "x1"]),
        _ => d.header(&["n", "x1", "x2"]),
    }
    for (n, p) in orbit.iter().enumerate() {
        let mut cells = vec![n.to_string()];
        cells.extend(p.coords().into_iter().map(f));
        d.row(&cells);
    }
    Ok(Output {
        text: d.text,
        payload: json!({ "points": orbit.iter().map(|p| p.coords()).collect::<Vec<_>>() }),
        ok: true,
        scenario: Value::Null,
    })
}

fn parse_region(s: &str, dim: usize) -> Result<CompactRegion, CliError> {
    let parts: Vec<&str> = s.split(';').filter(|p| !p.trim().is_empty()).collect();
    let r = if dim == 1 {
        let ivs = parts
            .iter()
            .map(|p| {
                let (a, c) = p.split_once(':').unwrap_or((p, p));
                let (a, c) = (parse_num(a).map_err(fail)?, parse_num(c).map_err(fail)?);
                Interval::try_new(a, c).ok_or_else(|| fail(format!("empty interval {p:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        CompactRegion::intervals(IntervalUnion::from_intervals(ivs))
    } else {
        let pts = parts
            .iter()
            .map(|p| match parse_list(p)?.as_slice() {
                [x, y] => Ok([*x, *y]),
                _ => Err(fail(format!("expected x,y in {p:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        CompactRegion::points(pts)
    };
    r.map_err(fail)
}

fn scenario_region(b: &Built) -> Result<CompactRegion, CliError> {
    let a0 = b.scenario.a0.as_ref().ok_or_else(|| fail("no --a0 and the scenario has no a0"))?;
    let r = if b.dim() == 1 {
        CompactRegion::intervals(IntervalUnion::from_intervals(a0.iter().map(|[a, c]| Interval::new(a.0, c.0))))
    } else {
        CompactRegion::points(a0.iter().map(|[x, y]| [x.0, y.0]).collect())
    };
    r.map_err(fail)
}

fn set_orbit(b: &Built, a0: &Option<String>, steps: Option<usize>) -> Result<Output, CliError> {
    let a = match a0 {
        Some(s) => parse_region(s, b.dim())?,
        None => scenario_region(b)?,
    };
    let steps = steps.or(b.scenario.steps).unwrap_or(b.scenario.horizon);
    let orbit = induced_orbit(&b.seq, &a, steps).map_err(fail)?;
    let mut d = Doc::default();
    if b.dim() == 1 {
        d.header(&["step", "component_count", "hull_lo", "hull_hi"]);
        for s in summarize(&orbit) {
            d.row(&[s.step.to_string(), s.component_count.to_string(), f(s.hull_lo), f(s.hull_hi)]);
        }
    } else {
        d.header(&["step", "point_index", "x", "y"]);
        for (k, r) in orbit.iter().enumerate() {
            for (i, p) in r.as_points().expect("planar").points().iter().enumerate() {
                d.row(&[k.to_string(), i.to_string(), f(p[0]), f(p[1])]);
            }
        }
    }
    Ok(Output {
        text: d.text,
        payload: serde_json::to_value(&orbit).map_err(fail)?,
        ok: true,
        scenario: Value::Null,
    })
}

fn chaos_stats(cli: &Cli, b: &Built, delta: f64) -> Result<Output, CliError> {
    let horizon = cli.horizon.unwrap_or(4096);
    let grid = default_eps_grid(b.outer_separation(), b.outer_hull_diameter());
    let (alpha, beta) = scrambled_pair(&b.matrix).map_err(fail)?;
    let sym = subshift_pair_stats(&b.matrix, &alpha, &beta, horizon, grid.clone()).map_err(fail)?;
    let eps = grid[0];
    let mut d = Doc::default();
    d.kv("horizon", horizon);
    d.kv("tail_window_start", sym.tail_start);
    d.kv("dc_window", sym.window);
    d.kv("dc_tol", DC_TOL);
    d.kv("symbolic_tail_min", f(sym.tail_min));
    d.kv("symbolic_tail_max", f(sym.tail_max));
    d.kv("symbolic_li_yorke_1", sym.li_yorke_witness(1.0));
    d.kv("symbolic_dc_1", sym.dc_witness(1.0, eps, DC_TOL));
    match &b.seq {
        MapSequence::OneD(_) => {
            let c = coder(cli, b)?;
            let p = decoded_pair_stats(&c, &alpha, &beta, horizon, grid).map_err(fail)?;
            let s = &p.stats;
            let ly = s.li_yorke_witness(delta);
            let dc = s.dc_witness(delta, eps, DC_TOL);
            d.kv("delta", f(delta));
            d.kv("eps", f(eps));
            d.kv("tail_min", f(s.tail_min));
            d.kv("tail_max", f(s.tail_max));
            d.kv("li_yorke_witness", ly);
            d.kv("dc_witness", dc);
            d.kv("bounded", p.bounded);
            d.kv("orbit_residual", f(p.orbit_residual));
            d.header(&["i", "d_symbolic", "d", "x", "y"]);
            for i in 0..horizon {
                d.row(&[i.to_string(), f(sym.distances[i]), f(s.distances[i]), f(p.x[i]), f(p.y[i])]);
            }
            let ok = ly && dc && p.bounded;
            Ok(Output {
                text: d.text,
                payload: json!({
                    "symbolic": sym, "decoded": p.stats, "li_yorke_witness": ly, "dc_witness": dc,
                    "bounded": p.bounded, "orbit_residual": p.orbit_residual,
                }),
                ok,
                scenario: Value::Null,
            })
        }
        MapSequence::TwoD(_) => {
            // no decoding in the plane: report nearby-orbit separation instead
            let x0 = b.scenario.x0.as_ref().map_or([0.12, 0.01], |v| [v[0].0, v[1].0]);
            let y0 = [x0[0] + 1e-9, x0[1]];
            let p = pair_stats(&b.seq, Point::Two(x0), Point::Two(y0), horizon, grid).map_err(fail)?;
            d.kv("x0", format!("{} {}", x0[0], x0[1]));
            d.kv("y0", format!("{} {}", y0[0], y0[1]));
            d.kv("tail_min", f(p.tail_min));
            d.kv("tail_max", f(p.tail_max));
            d.header(&["i", "d_symbolic", "d"]);
            for i in 0..horizon {
                d.row(&[i.to_string(), f(sym.distances[i]), f(p.distances[i])]);
            }
            Ok(Output {
                text: d.text,
                payload: json!({ "symbolic": sym, "nearby": p }),
                ok: true,
                scenario: Value::Null,
            })
        }
    }
}

fn estimate(cli: &Cli, b: &Built, method: EntropyMethod, eps: Option<f64>) -> Result<EntropyEstimate, CliError> {
    let n_max = cli.horizon.unwrap_or(16);
    let seed = seed_of(cli, b);
    match method {
        EntropyMethod::WordCount => Ok(word_count_entropy(&b.matrix, n_max)),
        EntropyMethod::ItineraryCount | EntropyMethod::InducedProbe => {
            let c = coder(cli, b)?;
            let h = b.scenario.horizon;
            let r = check_covering_1d(&b.seq, c.family(), h).map_err(fail)?;
            if method == EntropyMethod::ItineraryCount {
                itinerary_count_entropy(&c, &r, n_max, CELL_BUDGET).map_err(fail)
            } else {
                induced_entropy_probe(&c, &r, n_max, cli.samples.unwrap_or(1), seed, CELL_BUDGET).map_err(fail)
            }
        }
        EntropyMethod::SeparatedSet => {
            let eps = eps.unwrap_or(b.outer_separation() / 10.0);
            let boxes = b.family_2d().map(|f| f.outer().to_vec()).unwrap_or_default();
            separated_set_entropy(
                &b.seq,
                b.family_1d(),
                &boxes,
                &b.matrix,
                n_max,
                eps,
                cli.samples.unwrap_or(500),
                seed,
            )
            .map_err(fail)
        }
    }
}

fn entropy_cmd(cli: &Cli, b: &Built, method: Option<EntropyMethod>, eps: Option<f64>) -> Result<Output, CliError> {
    let method = method.unwrap_or(if b.dim() == 1 {
        EntropyMethod::ItineraryCount
    } else {
        EntropyMethod::SeparatedSet
    });
    let e = estimate(cli, b, method, eps)?;
    let mut d = Doc::default();
    d.kv("method", method);
    d.kv("label", e.label);
    d.kv("rate", f(e.rate));
    d.kv("reference_log_rho", f(e.reference));
    if method == EntropyMethod::SeparatedSet {
        d.kv("note", "counts saturate at the number of sampled orbits; raise --samples to see further growth");
    }
    d.header(&["n", "ln_count", "value"]);
    for k in 0..e.n.len() {
        d.row(&[e.n[k].to_string(), f(e.ln_counts[k]), f(e.values[k])]);
    }
    Ok(Output {
        text: d.text,
        payload: serde_json::to_value(&e).map_err(fail)?,
        ok: true,
        scenario: Value::Null,
    })
}

fn classify_cmd(cli: &Cli, b: &Built) -> Result<Output, CliError> {
    let r = verify(cli, b)?;
    let c = classification(b, &r);
    let mut d = Doc::default();
    let h = serde_json::to_value(c.hypotheses).map_err(fail)?;
    for (k, v) in h.as_object().expect("struct") {
        d.kv(k, v);
    }
    d.kv("chaos_clause", c.chaos_clause);
    d.kv("applicable", c.applicable().join(" "));
    d.header(&["theorem", "applicable", "requires", "missing", "note"]);
    for t in &c.theorems {
        d.row(&[
            t.id.to_string(),
            t.applicable.to_string(),
            t.requires.join(" "),
            t.missing.join(" "),
            csv_cell(t.note.as_deref().unwrap_or("")),
        ]);
    }
    Ok(Output {
        text: d.text,
        payload: serde_json::to_value(&c).map_err(fail)?,
        ok: r.weak_ce,
        scenario: Value::Null,
    })
}

fn report_cmd(cli: &Cli, b: &Built) -> Result<Output, CliError> {
    let mut t = String::new();
    let mut payload = serde_json::Map::new();
    let rho = b.matrix.spectral_radius(1e-12).map_err(fail)?;
    let _ = writeln!(t, "scenario: {}", b.scenario.name);
    let _ = writeln!(t, "\n[subshift]");
    let _ = writeln!(t, "symbols: {}", b.matrix.n_symbols());
    let _ = writeln!(t, "spectral_radius: {rho}");
    let _ = writeln!(t, "entropy: {}", rho.ln());
    let _ = writeln!(t, "irreducible: {}", b.matrix.is_irreducible());
    let _ = writeln!(t, "row_sum_at_least_two: {}", b.matrix.row_sum_at_least_two());

    let r = verify(cli, b)?;
    let mut d = Doc::default();
    expansion_doc(&mut d, &r);
    let _ = writeln!(t, "\n[expansion]");
    t.push_str(&d.text.replace("# ", ""));
    let c = classification(b, &r);
    let _ = writeln!(t, "\n[theorems]");
    let _ = writeln!(t, "applicable: {}", c.applicable().join(" "));
    for th in c.theorems.iter().filter(|x| x.note.is_some()) {
        let _ = writeln!(t, "note {}: {}", th.id, th.note.as_deref().unwrap_or(""));
    }
    payload.insert("expansion".into(), serde_json::to_value(&r).map_err(fail)?);
    payload.insert("classification".into(), serde_json::to_value(&c).map_err(fail)?);

    if b.dim() == 1 && r.weak_ce {
        let cd = coder(cli, b)?.with_depth_cap(cli.depth.unwrap_or(20));
        let seed = seed_of(cli, b);
        let res = conjugacy_residual(&cd, 50, b.scenario.horizon, seed).map_err(fail)?;
        let _ = writeln!(t, "\n[coding]");
        let _ = writeln!(t, "trials: 50");
        let _ = writeln!(t, "max_equivariance: {}", res.max_equivariance);
        let _ = writeln!(t, "symbol_mismatches: {}", res.symbol_mismatches);
        let e = itinerary_count_entropy(&cd, &r, 12, CELL_BUDGET).map_err(fail)?;
        let _ = writeln!(t, "\n[entropy]");
        let _ = writeln!(t, "itinerary_count_n12: {}", e.last_value());
        let _ = writeln!(t, "log_rho: {}", e.reference);
        payload.insert("max_equivariance".into(), json!(res.max_equivariance));
        payload.insert("itinerary_entropy".into(), json!(e.last_value()));
    }
    if let (MapSequence::TwoD(s), Some(fam)) = (&b.seq, b.family_2d()) {
        let steps = b.scenario.check_steps.clone().unwrap_or_else(|| (0..b.scenario.horizon).collect());
        let _ = writeln!(t, "\n[lipschitz]");
        let mut bands = Vec::new();
        for &n in &steps {
            let (lo, hi) = s.lipschitz_band(n, fam.outer(), 5000, seed_of(cli, b)).map_err(fail)?;
            let _ = writeln!(t, "band_n{n}: [{lo}, {hi}]");
            bands.push(json!({ "n": n, "lo": lo, "hi": hi }));
        }
        payload.insert("lipschitz".into(), Value::Array(bands));
    }
    Ok(Output {
        text: t,
        payload: Value::Object(payload),
        ok: r.weak_ce,
        scenario: Value::Null,
    })
}

/// Run one parsed command.
pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let named = |s: &str| -> Result<Built, CliError> { load(cli, s) };
    let (mut out, echo) = match &cli.command {
        Command::SftInfo { scenario, matrix } => {
            let o = sft_info(cli, scenario, matrix)?;
            let e = o.scenario.clone();
            (o, e)
        }
        cmd => {
            let name = match cmd {
                Command::VerifyExpansion { scenario }
                | Command::Decode { scenario, .. }
                | Command::Itinerary { scenario, .. }
                | Command::ConjugacyCheck { scenario }
                | Command::Orbit { scenario, .. }
                | Command::SetOrbit { scenario, .. }
                | Command::ChaosStats { scenario, .. }
                | Command::Entropy { scenario, .. }
                | Command::Classify { scenario }
                | Command::Report { scenario } => scenario,
                Command::SftInfo { .. } => unreachable!(),
            };
            let b = named(name)?;
            let mut sc = b.scenario.clone();
            sc.seed = seed_of(cli, &b);
            let echo = serde_json::to_value(&sc).map_err(fail)?;
            let o = match cmd {
                Command::VerifyExpansion { .. } => verify_expansion(cli, &b),
                Command::Decode { alpha, n, .. } => decode_cmd(cli, &b, alpha, *n),
                Command::Itinerary { x0, n, steps, .. } => itinerary_cmd(&b, cli, x0, *n, *steps),
                Command::ConjugacyCheck { .. } => conjugacy_check(cli, &b),
                Command::Orbit { x0, steps, .. } => orbit_cmd(&b, x0, *steps),
                Command::SetOrbit { a0, steps, .. } => set_orbit(&b, a0, *steps),
                Command::ChaosStats { delta, .. } => chaos_stats(cli, &b, *delta),
                Command::Entropy { method, eps, .. } => entropy_cmd(cli, &b, *method, *eps),
                Command::Classify { .. } => classify_cmd(cli, &b),
                Command::Report { .. } => report_cmd(cli, &b),
                Command::SftInfo { .. } => unreachable!(),
            }?;
            (o, echo)
        }
    };
    out.scenario = echo;
    Ok(out)
}

/// Parse `args`, run, write the output, and return the exit code:
/// 0 on success, 2 when a verification fails, 1 on any error.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    crate::par::init_threads_from_env();
    let start = Instant::now();
    let out = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let text = if cli.json {
        let report = RunReport {
            version: env!("CARGO_PKG_VERSION"),
            command: cli.command.name(),
            seed: out.scenario.get("seed").and_then(Value::as_u64),
            scenario: &out.scenario,
            payload: &out.payload,
            wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        };
        serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
    } else {
        out.text
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 1;
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
                Ok(()) => {}
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                Err(e) => {
                    eprintln!("error: cannot write output: {e}");
                    return 1;
                }
            }
        }
    }
    if out.ok {
        0
    } else {
        2
    }
}
