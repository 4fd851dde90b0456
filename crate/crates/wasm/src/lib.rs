//! Browser bindings for the demo page in `www/`.
//!
//! Arrangements are given as vectors separated by `;`, e.g. `1,0; 0,1; 1,1`,
//! and expressions in the text syntax of `jkres_core::expr`.

use jkres_core::expr::parse_element;
use jkres_core::geometry::{find_chamber, Space};
use jkres_core::laplace::inverse_laplace;
use jkres_core::linalg::{format_vector, parse_vector};
use jkres_core::plot::fan_svg;
use jkres_core::residue::Session;
use jkres_core::{Arrangement, RationalElement};
use wasm_bindgen::prelude::*;

pub fn parse_arrangement(vectors: &str) -> Result<Arrangement, String> {
    let vs = vectors
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(parse_vector)
        .collect::<jkres_core::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    let dim = vs.first().map(|v| v.len()).ok_or("no vectors given")?;
    let arr = Arrangement::with_dim(dim, vs).map_err(|e| e.to_string())?;
    if arr.rank() < dim {
        return Err(jkres_core::Error::NotSpanning { rank: arr.rank(), dim }.to_string());
    }
    Ok(arr)
}

fn load(vectors: &str, expression: &str) -> Result<(Arrangement, RationalElement), String> {
    let arr = parse_arrangement(vectors)?;
    let f = parse_element(&arr, expression).map_err(|e| e.to_string())?;
    Ok((arr, f))
}

fn basis_str(arr: &Arrangement, b: &[usize]) -> String {
    let vs: Vec<String> = arr.vectors_of(b).iter().map(|v| format_vector(v)).collect();
    format!("({})", vs.join(","))
}

/// Canonical form, one line per term group.
pub fn normalize_text(vectors: &str, expression: &str) -> Result<String, String> {
    let (arr, f) = load(vectors, expression)?;
    Ok(Session::new(&arr).normalize(&f).display(&arr))
}

/// Residue coordinates on each nbc basis; for `exp_sign` = 1 or -1 those of
/// `exp(exp_sign <h,z>) phi`, as polynomials in `h`.
pub fn jk_residue_text(vectors: &str, expression: &str, exp_sign: i32) -> Result<String, String> {
    let (arr, f) = load(vectors, expression)?;
    let mut s = Session::new(&arr);
    let values: Vec<String> = match exp_sign {
        0 => s.jk_residue(&f).iter().map(|x| x.to_string()).collect(),
        1 | -1 => s.jk_residue_exp(&f, exp_sign).iter().map(|p| p.display_with("h")).collect(),
        _ => return Err("exponential sign must be 0, 1 or -1".into()),
    };
    let mut out = String::new();
    for (b, v) in s.nbc().iter().zip(&values) {
        out.push_str(&format!("{}: {v}\n", basis_str(&arr, b)));
    }
    Ok(out)
}

/// Inverse Laplace pieces as text; with `svg` set, the labelled fan (rank 2 only).
pub fn inverse_laplace_text(vectors: &str, expression: &str, delta_witness: &str, svg: bool) -> Result<String, String> {
    let (arr, f) = load(vectors, expression)?;
    let y = parse_vector(delta_witness).map_err(|e| e.to_string())?;
    let delta = find_chamber(&arr, &y, Space::Dual).map_err(|e| e.to_string())?;
    let pp = inverse_laplace(&arr, &f, &delta).map_err(|e| e.to_string())?;
    if svg {
        return fan_svg(&arr, Some(&pp)).map_err(|e| e.to_string());
    }
    let mut out = String::new();
    for (c, p) in pp.chambers.iter().zip(&pp.pieces) {
        out.push_str(&format!("{} on chamber{}\n", p.display_with("h"), format_vector(&c.witness)));
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn normalize(vectors: &str, expression: &str) -> Result<String, JsError> {
    normalize_text(vectors, expression).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn jk_residue(vectors: &str, expression: &str, exp_sign: i32) -> Result<String, JsError> {
    jk_residue_text(vectors, expression, exp_sign).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn inverse_laplace_pieces(vectors: &str, expression: &str, delta_witness: &str) -> Result<String, JsError> {
    inverse_laplace_text(vectors, expression, delta_witness, false).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn inverse_laplace_svg(vectors: &str, expression: &str, delta_witness: &str) -> Result<String, JsError> {
    inverse_laplace_text(vectors, expression, delta_witness, true).map_err(|e| JsError::new(&e))
}
