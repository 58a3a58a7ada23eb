//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every export returns a flat `Float64Array` of interleaved tuples so the
//! page can plot without any object marshalling. Undefined values are NaN.

use wasm_bindgen::prelude::*;

pub mod demo;

/// `[x0, v0, x1, v1, ...]` for the criterion along the mixing parameter.
#[wasm_bindgen]
pub fn curve(
    family: &str,
    n_qubits: usize,
    partition: &str,
    criterion: &str,
    q: f64,
    step: f64,
) -> Result<Vec<f64>, JsError> {
    demo::curve(family, n_qubits, partition, criterion, q, step).map_err(|e| JsError::new(&e))
}

/// `[q0, x0, q1, x1, ...]`: the threshold x*(q) on a geometric q grid.
#[wasm_bindgen]
pub fn implicit(
    family: &str,
    n_qubits: usize,
    partition: &str,
    criterion: &str,
    q_max: f64,
    count: usize,
) -> Result<Vec<f64>, JsError> {
    demo::implicit(family, n_qubits, partition, criterion, q_max, count).map_err(|e| JsError::new(&e))
}

/// `[q0, e0, s0, q1, e1, s1, ...]`: CSTRE of the entangled and separable isospectral states.
#[wasm_bindgen]
pub fn isospectral(q_min: f64, q_max: f64, count: usize) -> Result<Vec<f64>, JsError> {
    demo::isospectral(q_min, q_max, count).map_err(|e| JsError::new(&e))
}
