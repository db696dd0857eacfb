//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export takes and returns strings (words, or JSON) so the page needs
//! no glue beyond `wasm-bindgen`. The `*_json` functions are the plain Rust
//! versions and are what the tests exercise.

use num_complex::Complex64;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use sl3char::io::{approx_point_to_json, complex_to_json, exact_point_to_json, parse_point, AnyPoint};
use sl3char::rewrite::TraceReducer;
use sl3char::sample::{exact_pair_from, trial_rng, Family};
use sl3char::symmetry::{act_on_point, DihedralElement};
use sl3char::variety::{
    branching_family, branching_partials_closed_form, chi, discriminant, fiber_over, surface_residual,
};
use sl3char::Word;

/// `{"word", "polynomial", "terms", "degree"}` for a word such as `a*b^2*A`.
pub fn reduce_json(word: &str) -> Result<Value, String> {
    let w: Word = word.parse().map_err(|e| format!("{e}"))?;
    let p = TraceReducer::new().try_reduce(&w).map_err(|e| e.to_string())?;
    Ok(json!({
        "word": w.to_string(),
        "polynomial": p.to_string(),
        "terms": p.num_terms(),
        "degree": p.total_degree(),
    }))
}

/// The point of the branching family at `(a, c)` with its fibre, the
/// discriminant and the two nonvanishing Jacobian values next to their
/// closed forms.
pub fn branching_json(a: Complex64, c: Complex64) -> Result<Value, String> {
    let s = branching_family(a, c).map_err(|e| e.to_string())?;
    let (r1, r2) = fiber_over(&s.point.base());
    let (e1, e2) = branching_partials_closed_form(a);
    Ok(json!({
        "point": approx_point_to_json(&s.point),
        "roots": [complex_to_json(r1), complex_to_json(r2)],
        "discriminant": complex_to_json(discriminant(&s.point.base())),
        "residual": complex_to_json(surface_residual(&s.point)),
        "partials": [complex_to_json(s.nonzero_partials.0), complex_to_json(s.nonzero_partials.1)],
        "closed_form": [complex_to_json(e1), complex_to_json(e2)],
    }))
}

/// Coordinates of random pair `index` under `seed`; exact.
pub fn sample_json(seed: u64, index: u64) -> Value {
    let pair = exact_pair_from(&mut trial_rng(seed, index), Family::Generic).expect("exact family");
    exact_point_to_json(&chi(&pair))
}

/// Image of a point under a dihedral element, with the surface residual
/// before and after.
pub fn symmetry_json(element: &str, point: &str) -> Result<Value, String> {
    let g: DihedralElement = element.parse().map_err(|e| format!("{e}"))?;
    let pt = parse_point(point).map_err(|e| e.to_string())?;
    Ok(match pt {
        AnyPoint::Exact(p) => {
            let image = act_on_point(g, &p);
            json!({
                "element": g.name(),
                "image": exact_point_to_json(&image),
                "residual_before": surface_residual(&p).to_string(),
                "residual_after": surface_residual(&image).to_string(),
            })
        }
        AnyPoint::Approx(p) => {
            let image = act_on_point(g, &p);
            json!({
                "element": g.name(),
                "image": approx_point_to_json(&image),
                "residual_before": complex_to_json(surface_residual(&p)),
                "residual_after": complex_to_json(surface_residual(&image)),
            })
        }
    })
}

fn to_js(r: Result<Value, String>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn reduce(word: &str) -> Result<String, JsError> {
    to_js(reduce_json(word))
}

#[wasm_bindgen]
pub fn branching(a_re: f64, a_im: f64, c_re: f64, c_im: f64) -> Result<String, JsError> {
    to_js(branching_json(Complex64::new(a_re, a_im), Complex64::new(c_re, c_im)))
}

#[wasm_bindgen]
pub fn sample_point(seed: u32, index: u32) -> String {
    sample_json(seed.into(), index.into()).to_string()
}

#[wasm_bindgen]
pub fn apply_symmetry(element: &str, point: &str) -> Result<String, JsError> {
    to_js(symmetry_json(element, point))
}
