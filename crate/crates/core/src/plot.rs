//! SVG picture of the chamber fan of a rank 2 arrangement.

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::geometry::{find_chamber, Space};
use crate::laplace::PiecewisePoly;
use crate::linalg::format_vector;
use crate::Q;
use num_traits::{Signed, ToPrimitive};
use std::fmt::Write;

const SIZE: f64 = 480.0;
const HALF: f64 = 200.0;

fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

/// Scales `v` onto the boundary of the unit box.
fn to_box(v: &[Q]) -> Vec<Q> {
    let m = v.iter().map(|x| x.abs()).max().expect("nonempty");
    v.iter().map(|x| x / &m).collect()
}

fn screen(v: &[Q], s: f64) -> (f64, f64) {
    (SIZE / 2.0 + s * HALF * to_f64(&v[0]), SIZE / 2.0 - s * HALF * to_f64(&v[1]))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Rays of the fan (both directions of every line), sorted by angle.
fn rays(arr: &Arrangement) -> Vec<Vec<Q>> {
    let mut rs: Vec<Vec<Q>> = Vec::new();
    for l in arr.lines() {
        rs.push(to_box(l));
        rs.push(to_box(&l.iter().map(|x| -x).collect::<Vec<_>>()));
    }
    rs.sort_by(|a, b| {
        let ta = to_f64(&a[1]).atan2(to_f64(&a[0]));
        let tb = to_f64(&b[1]).atan2(to_f64(&b[0]));
        ta.partial_cmp(&tb).unwrap()
    });
    rs
}

/// The fan clipped to the unit box; chambers are labelled with the pieces of `pp`
/// (graded lexicographic order) or with their witness when `pp` is absent.
pub fn fan_svg(arr: &Arrangement, pp: Option<&PiecewisePoly>) -> Result<String> {
    if arr.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: arr.dim() });
    }
    let rs = rays(arr);
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#).unwrap();
    let (x0, y0) = screen(&[Q::from_integer((-1).into()), Q::from_integer(1.into())], 1.0);
    writeln!(out, r##"<rect x="{x0:.2}" y="{y0:.2}" width="{w:.2}" height="{w:.2}" fill="#fafafa" stroke="#999"/>"##, w = 2.0 * HALF).unwrap();
    let (cx, cy) = screen(&[Q::from_integer(0.into()), Q::from_integer(0.into())], 1.0);
    for r in &rs {
        let (x, y) = screen(r, 1.0);
        writeln!(out, r##"<line x1="{cx:.2}" y1="{cy:.2}" x2="{x:.2}" y2="{y:.2}" stroke="#333" stroke-width="1.5"/>"##).unwrap();
    }
    for (i, a) in rs.iter().enumerate() {
        let b = &rs[(i + 1) % rs.len()];
        let mid: Vec<Q> = to_box(&a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>());
        let ch = find_chamber(arr, &mid, Space::Primal)?;
        let label = match pp {
            Some(pp) => pp.piece_for_signs(&ch.signs).ok_or(Error::ChamberNotFound)?.display_with("h"),
            None => format!("chamber{}", format_vector(&ch.witness)),
        };
        let (x, y) = screen(&mid, 0.62);
        writeln!(out, r#"<text x="{x:.2}" y="{y:.2}" font-family="monospace" font-size="13" text-anchor="middle">{}</text>"#, escape(&label)).unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}
