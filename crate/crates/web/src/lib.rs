//! Browser demo bindings. Every export returns a JSON string; errors come
//! back as a thrown string.
//!
//! The `*_json` functions hold the logic so native tests can call them.

use caterpack::layout::{rotate, short_edges, used_slope_window, zigzag_drawing, Side};
use caterpack::packing::{
    halve_by_sides, pack_divisible, pack_mixed, place_copies, place_three_2planar, place_three_by_rule, Checks,
    PackingLayout,
};
use caterpack::render::render_svg;
use caterpack::verify::{crossing_counts, host_graph, BoundSheet};
use caterpack::{make_regular_caterpillar, Error};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn text(e: Error) -> String {
    e.to_string()
}

fn parse_list(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| format!("not a degree: {t:?}")))
        .collect()
}

/// The heaviest edges of the drawing: (a, b, crossings).
fn hot_edges(layout: &PackingLayout) -> Result<Value, String> {
    let r = crossing_counts(layout).map_err(text)?;
    let hot: Vec<_> = r.per_edge.iter().filter(|e| e.2 == r.k && r.k > 0).take(12).collect();
    Ok(json!({ "k": r.k, "total": r.total_crossings(), "hottest": hot }))
}

/// One zig-zag drawing, optionally rotated.
pub fn zigzag_json(delta: usize, sigma: usize, start: usize, steps: i64) -> Result<String, String> {
    let c = make_regular_caterpillar(delta, sigma).map_err(text)?;
    let n = c.n();
    let d = rotate(&zigzag_drawing(&c, start % n, Side::Inner).map_err(text)?, steps);
    let window: Vec<usize> = used_slope_window(&d).map_err(text)?.into_iter().map(|s| s.0).collect();
    let (s1, s2) = short_edges(&d).map_err(text)?;
    let layout = PackingLayout::new(n, vec![d.clone()]).map_err(text)?;
    Ok(json!({
        "n": n,
        "start": d.start,
        "ending_point": d.ending_point().map_err(text)?,
        "spine": d.spine_positions(),
        "slope_window": window,
        "short_edges": [s1.pair(), s2.pair()],
        "svg": render_svg(&layout),
    })
    .to_string())
}

/// Builds a packing with one of the constructions and measures it.
pub fn pack_json(scheme: &str, deltas: &str, sigma: usize, h: usize, n: usize, halve: bool) -> Result<String, String> {
    let list = parse_list(deltas)?;
    let first = *list.first().ok_or("give at least one degree")?;
    let mut layout = match scheme {
        "place" => place_copies(first, sigma, h, Checks::Verified),
        "mixed" => pack_mixed(&list, n, Checks::Verified),
        "divisible" => pack_divisible(&list, n, Checks::Verified),
        other => return Err(format!("unknown scheme {other:?}")),
    }
    .map_err(text)?;
    if halve {
        layout = halve_by_sides(&layout);
    }
    let mut sorted: Vec<usize> = match scheme {
        "place" => vec![first; h],
        _ => list,
    };
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let sheet = BoundSheet::evaluate(layout.n, &sorted, 1).map_err(text)?;
    Ok(json!({
        "n": layout.n,
        "h": layout.h(),
        "offsets": layout.offsets(),
        "simple": host_graph(&layout).simple,
        "crossings": hot_edges(&layout)?,
        "bounds": sheet,
        "svg": render_svg(&layout),
    })
    .to_string())
}

/// Three copies drawn two-planar where the construction allows it. When it
/// refuses, the leaf rule's own drawing is returned with `certified: false`
/// so the offending edges can be inspected.
pub fn three_copies_json(delta: usize, sigma: usize) -> Result<String, String> {
    let (layout, certified, note) = match place_three_2planar(delta, sigma, Checks::Verified) {
        Ok(l) => (l, true, String::new()),
        Err(Error::Construction(msg)) => (place_three_by_rule(delta, sigma).map_err(text)?, false, msg),
        Err(e) => return Err(text(e)),
    };
    Ok(json!({
        "n": layout.n,
        "certified": certified,
        "note": note,
        "crossings": hot_edges(&layout)?,
        "svg": render_svg(&layout),
    })
    .to_string())
}

#[wasm_bindgen]
pub fn zigzag(delta: usize, sigma: usize, start: usize, steps: i32) -> Result<String, JsValue> {
    zigzag_json(delta, sigma, start, steps as i64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn pack(scheme: &str, deltas: &str, sigma: usize, h: usize, n: usize, halve: bool) -> Result<String, JsValue> {
    pack_json(scheme, deltas, sigma, h, n, halve).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn three_copies(delta: usize, sigma: usize) -> Result<String, JsValue> {
    three_copies_json(delta, sigma).map_err(|e| JsValue::from_str(&e))
}
