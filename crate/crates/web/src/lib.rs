//! Browser bindings: planar orbits and set orbits of the sine-sawtooth
//! family, and nested cells of the quadratic/plateau example.
//!
//! The plain functions return flat `f64` buffers and are usable natively;
//! the `wasm_bindgen` wrappers turn errors into JS exceptions.

use symdyn::coding::Coder;
use symdyn::dynsys::Point;
use symdyn::examples::{example_5_1, example_5_2, Pattern51};
use symdyn::hyperspace::{induced_orbit, CompactRegion};
use wasm_bindgen::prelude::*;

/// Largest step count accepted from the page.
pub const MAX_STEPS: usize = 200_000;
/// Deepest cell level drawn; level `d` has at most `2^(d+1)` cells.
pub const MAX_DEPTH: usize = 12;

fn check_steps(steps: usize) -> Result<(), String> {
    if steps > MAX_STEPS {
        return Err(format!("steps must be at most {MAX_STEPS}"));
    }
    Ok(())
}

/// Orbit of `(x, y)` as `[x_0, y_0, x_1, y_1, ...]`, `steps + 1` points.
pub fn planar_orbit(x: f64, y: f64, steps: usize) -> Result<Vec<f64>, String> {
    check_steps(steps)?;
    let (seq, _) = example_5_2().map_err(|e| e.to_string())?;
    let orbit = seq.orbit(0, steps, Point::Two([x, y])).map_err(|e| e.to_string())?;
    Ok(orbit.iter().flat_map(|p| p.coords()).collect())
}

/// Orbit of a finite point set under the induced map, as
/// `[step, x, y, ...]` triples. `points` is `[x_0, y_0, x_1, y_1, ...]`.
pub fn planar_set_orbit(points: &[f64], steps: usize) -> Result<Vec<f64>, String> {
    check_steps(steps)?;
    if points.is_empty() || !points.len().is_multiple_of(2) {
        return Err("points must be a nonempty list of x, y pairs".into());
    }
    let (seq, _) = example_5_2().map_err(|e| e.to_string())?;
    let pts = points.chunks(2).map(|c| [c[0], c[1]]).collect();
    let a0 = CompactRegion::points(pts).map_err(|e| e.to_string())?;
    let orbit = induced_orbit(&seq, &a0, steps).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    for (k, r) in orbit.iter().enumerate() {
        for p in r.as_points().expect("planar region").points() {
            out.extend([k as f64, p[0], p[1]]);
        }
    }
    Ok(out)
}

/// Every nested cell `V_α^{m,0}` with `m ≤ depth` for the given map
/// pattern, as `[m, lo, hi, ...]` triples, one per interval component.
pub fn interval_cells(pattern: &str, depth: usize) -> Result<Vec<f64>, String> {
    if depth > MAX_DEPTH {
        return Err(format!("depth must be at most {MAX_DEPTH}"));
    }
    let p: Pattern51 = pattern.parse()?;
    let (seq, fam) = example_5_1(&p).map_err(|e| e.to_string())?;
    let coder = Coder::new(&seq, &fam).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    let mut words: Vec<Vec<usize>> = vec![vec![1], vec![2]];
    for m in 0..=depth {
        for w in &words {
            let cell = coder.nested_cell(w, 0).map_err(|e| e.to_string())?;
            for iv in cell.region.parts() {
                out.extend([m as f64, iv.lo, iv.hi]);
            }
        }
        words = words
            .iter()
            .flat_map(|w| (1..=2).map(move |s| [w.as_slice(), &[s]].concat()))
            .collect();
    }
    Ok(out)
}

#[wasm_bindgen(js_name = planarOrbit)]
pub fn planar_orbit_js(x: f64, y: f64, steps: usize) -> Result<Vec<f64>, JsError> {
    planar_orbit(x, y, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = planarSetOrbit)]
pub fn planar_set_orbit_js(points: &[f64], steps: usize) -> Result<Vec<f64>, JsError> {
    planar_set_orbit(points, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = intervalCells)]
pub fn interval_cells_js(pattern: &str, depth: usize) -> Result<Vec<f64>, JsError> {
    interval_cells(pattern, depth).map_err(|e| JsError::new(&e))
}
