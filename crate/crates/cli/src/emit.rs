//! Byte-stable output writers: JSON, CSV and single-polyline SVG.
//!
//! CSV and SVG print floats with 17 significant digits (`{:.16e}`), locale
//! free; JSON goes through serde with exact round-trip formatting. Identical
//! inputs produce identical bytes.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use eigensum::qhorn::Figure1Row;

/// 17 significant digits, `.` decimal separator.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_output(bytes: &[u8], out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).with_context(|| format!("creating {parent:?}"))?;
            }
            std::fs::write(path, bytes).with_context(|| format!("writing {path:?}"))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            Ok(stdout.flush()?)
        }
    }
}

pub fn to_json_bytes<T: serde::Serialize>(value: &T) -> anyhow::Result<Vec<u8>> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text.into_bytes())
}

pub fn figure_csv(rows: &[Figure1Row]) -> Vec<u8> {
    let mut out = String::from("t,lam1,lam2,lam3,lam4\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt17(r.t),
            fmt17(r.lam1),
            fmt17(r.lam2),
            fmt17(r.lam3),
            fmt17(r.lam4)
        ));
    }
    out.into_bytes()
}

/// One polyline through `(λ₃, λ₄)`, viewBox fitted to the data with 5% pad;
/// the y axis is flipped so larger `λ₄` is higher.
pub fn figure_svg(rows: &[Figure1Row]) -> Vec<u8> {
    let xs: Vec<f64> = rows.iter().map(|r| r.lam3).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.lam4).collect();
    let (x_min, x_max) = bounds(&xs);
    let (y_min, y_max) = bounds(&ys);
    let pad_x = 0.05 * (x_max - x_min).max(1e-9);
    let pad_y = 0.05 * (y_max - y_min).max(1e-9);
    let view = (
        x_min - pad_x,
        -(y_max + pad_y),
        (x_max - x_min) + 2.0 * pad_x,
        (y_max - y_min) + 2.0 * pad_y,
    );
    let points: Vec<String> = rows.iter().map(|r| format!("{},{}", fmt17(r.lam3), fmt17(-r.lam4))).collect();
    let svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"{}\" points=\"{}\"/>\n</svg>\n",
        fmt17(view.0),
        fmt17(view.1),
        fmt17(view.2),
        fmt17(view.3),
        fmt17(view.2 / 200.0),
        points.join(" ")
    );
    svg.into_bytes()
}

fn bounds(xs: &[f64]) -> (f64, f64) {
    let min = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (min, max)
}

/// Read a file, or stdin when the path is `-`.
pub fn read_input(path: &Path) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin().lock(), &mut buf)?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path:?}"))
    }
}
