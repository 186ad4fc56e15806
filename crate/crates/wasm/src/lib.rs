//! Browser bindings for the static demo page in `www/`.
//!
//! Each export has a plain Rust twin in [`demo`] so the logic is testable
//! off the browser.

use wasm_bindgen::prelude::*;

pub mod demo;

/// Full analysis report as JSON.
#[wasm_bindgen]
pub fn analyze(phi: &str, p_list: &str) -> Result<String, JsError> {
    demo::analyze_json(phi, p_list).map_err(|e| JsError::new(&e))
}

/// The Newton polygon of `phi` as an SVG document.
#[wasm_bindgen]
pub fn newton_polygon_svg(phi: &str) -> Result<String, JsError> {
    demo::polygon(phi).map_err(|e| JsError::new(&e))
}

/// `k_p` against `1/p` for a supported phase, with the two height bounds.
#[wasm_bindgen]
pub fn exponent_profile_svg(phi: &str) -> Result<String, JsError> {
    demo::profile(phi).map_err(|e| JsError::new(&e))
}

/// One value `I(λ, 0)` as JSON `{lambda, re, im, abs, err}`.
#[wasm_bindgen]
pub fn oscillatory_value(phi: &str, lambda: f64, radius: f64) -> Result<String, JsError> {
    demo::oscillatory(phi, lambda, radius).map_err(|e| JsError::new(&e))
}
