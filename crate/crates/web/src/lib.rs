//! WebAssembly bindings for the browser demo.
//!
//! Each exported function is a thin wrapper over a plain Rust function that
//! returns `Result<_, String>`, so the logic is testable natively.

use std::sync::Arc;

use lattice_sugeno::axioms::FunctionTable;
use lattice_sugeno::bench::{render_cost_table, run_bench};
use lattice_sugeno::relations::{check_coords, RelationKind};
use lattice_sugeno::{Capacity, Lattice, SugenoForm};
use wasm_bindgen::prelude::*;

/// Largest grid chain the demo accepts.
pub const MAX_K: usize = 32;

/// Cell code bits for [`region_codes`].
pub const IN_A: u8 = 1;
pub const IN_B: u8 = 2;
pub const IN_C: u8 = 4;

fn grid_chain(k: usize) -> Result<Arc<Lattice>, String> {
    if !(2..=MAX_K).contains(&k) {
        return Err(format!("chain size must be between 2 and {MAX_K}, got {k}"));
    }
    Lattice::chain(k).map(Arc::new).map_err(|e| e.to_string())
}

/// For every `y` in `chain(k)^2`, row-major with `y1` as the row, the set
/// of regions it belongs to: comonotone with `x` (A), comparable (B),
/// g-comonotone (C).
pub fn region_codes(k: usize, x1: usize, x2: usize) -> Result<Vec<u8>, String> {
    let l = grid_chain(k)?;
    if x1 >= k || x2 >= k {
        return Err(format!("x = ({x1},{x2}) is outside chain({k})"));
    }
    let x = [x1, x2];
    let mut out = Vec::with_capacity(k * k);
    for y1 in 0..k {
        for y2 in 0..k {
            let y = [y1, y2];
            let mut code = 0;
            for (bit, kind) in
                [(IN_A, RelationKind::Comonotone), (IN_B, RelationKind::Comparable), (IN_C, RelationKind::GComonotone)]
            {
                if check_coords(&l, &x, &y, kind).is_none() {
                    code |= bit;
                }
            }
            out.push(code);
        }
    }
    Ok(out)
}

/// `Su_m(x1, x2)` over `chain(k)^2`, row-major with `x1` as the row, for
/// the binary capacity with `m({1}) = m1` and `m({2}) = m2`.
pub fn sugeno_grid(k: usize, m1: usize, m2: usize, inf_form: bool) -> Result<Vec<u32>, String> {
    let l = grid_chain(k)?;
    let m = Capacity::validate(l, 2, vec![0, m1, m2, k - 1]).map_err(|e| e.to_string())?;
    let form = if inf_form { SugenoForm::InfOfJoins } else { SugenoForm::SupOfMeets };
    let f = FunctionTable::of_capacity(&m, form);
    Ok(f.values().iter().map(|&v| v as u32).collect())
}

/// The pair-count table measured on the join integral over `chain(k)^n`.
pub fn cost_text(k: usize, n: usize) -> Result<String, String> {
    let l = grid_chain(k)?;
    if !(1..=4).contains(&n) || k.pow(n as u32) > 4096 {
        return Err(format!("arity {n} over chain({k}) is too large for the demo"));
    }
    let values = (0..1usize << n).map(|s| if s == 0 { 0 } else { k - 1 }).collect();
    let m = Capacity::validate(l, n, values).map_err(|e| e.to_string())?;
    Ok(render_cost_table(&[run_bench(&FunctionTable::of_capacity(&m, SugenoForm::SupOfMeets))]))
}

#[wasm_bindgen(js_name = regionCodes)]
pub fn region_codes_js(k: usize, x1: usize, x2: usize) -> Result<Vec<u8>, JsError> {
    region_codes(k, x1, x2).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = sugenoGrid)]
pub fn sugeno_grid_js(k: usize, m1: usize, m2: usize, inf_form: bool) -> Result<Vec<u32>, JsError> {
    sugeno_grid(k, m1, m2, inf_form).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = costText)]
pub fn cost_text_js(k: usize, n: usize) -> Result<String, JsError> {
    cost_text(k, n).map_err(|e| JsError::new(&e))
}
