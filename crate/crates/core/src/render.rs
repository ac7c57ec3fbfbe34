//! CSV, JSON and SVG renderings of a slice report.
//!
//! CSV columns are `b0,...,bm,j,p,value,classification,provenance`, LF line
//! endings, an empty `value` when unknown. JSON is an array of objects keyed by
//! the same headers. The SVG draws the triangular slice of an `m = 2` scan
//! with the bound lines and one dot per degree; positions and statuses are
//! carried in `data-*` attributes.

use std::fmt::Write;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::theorems::{Classification, SliceCell, SliceReport};

fn header(dims: usize) -> Vec<String> {
    (0..dims)
        .map(|t| format!("b{t}"))
        .chain(["j", "p", "value", "classification", "provenance"].map(String::from))
        .collect()
}

pub fn to_csv(report: &SliceReport, dims: usize) -> String {
    let mut out = header(dims).join(",");
    out.push('\n');
    for c in &report.cells {
        let coords = c.b.coords().iter().map(u64::to_string);
        let value = c.value().map_or(String::new(), |v| v.to_string());
        let row: Vec<String> = coords
            .chain([
                c.j.to_string(),
                c.p.to_string(),
                value,
                c.classification.to_string(),
                c.provenance().to_string(),
            ])
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn to_json(report: &SliceReport, dims: usize) -> String {
    let keys = header(dims);
    let rows: Vec<Value> = report
        .cells
        .iter()
        .map(|c| {
            let mut obj = Map::new();
            for (t, &x) in c.b.coords().iter().enumerate() {
                obj.insert(keys[t].clone(), x.into());
            }
            obj.insert("j".into(), c.j.into());
            obj.insert("p".into(), c.p.into());
            obj.insert("value".into(), c.value().map_or(Value::Null, Value::from));
            obj.insert("classification".into(), c.classification.as_str().into());
            obj.insert("provenance".into(), c.provenance().into());
            Value::Object(obj)
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&Value::Array(rows)).expect("serializable");
    s.push('\n');
    s
}

const SPACING: f64 = 28.0;
const MARGIN: f64 = 40.0;

struct Layout {
    total: f64,
}

impl Layout {
    /// Barycentric placement: `b_0` grows upward, `b_1` to the left and
    /// `b_2` to the right.
    fn position(&self, b: [f64; 3]) -> (f64, f64) {
        let row_height = SPACING * 3f64.sqrt() / 2.0;
        let x = MARGIN + SPACING * (self.total / 2.0 + (b[2] - b[1]) / 2.0);
        let y = MARGIN + row_height * (self.total - b[0]);
        (x, y)
    }

    fn size(&self) -> (f64, f64) {
        let row_height = SPACING * 3f64.sqrt() / 2.0;
        (2.0 * MARGIN + SPACING * self.total, 2.0 * MARGIN + row_height * self.total + 30.0)
    }

    /// Endpoints of `{b_coord = value}` on the triangle's boundary.
    fn level_line(&self, coord: usize, value: f64) -> ((f64, f64), (f64, f64)) {
        let rest = self.total - value;
        let others: Vec<usize> = (0..3).filter(|&t| t != coord).collect();
        let mut p = [0.0; 3];
        let mut q = [0.0; 3];
        p[coord] = value;
        q[coord] = value;
        p[others[0]] = rest;
        q[others[1]] = rest;
        (self.position(p), self.position(q))
    }
}

fn color(c: &SliceCell) -> &'static str {
    match c.classification {
        Classification::VanishUpper | Classification::VanishLower => "black",
        Classification::Theorem => "red",
        Classification::Oracle if c.value().unwrap_or(0) > 0 => "red",
        Classification::Oracle => "gray",
        Classification::Unknown => "purple",
    }
}

/// Renders one `p` of an `m = 2` slice.
pub fn to_svg(report: &SliceReport, m: usize, d: u64, p: usize) -> Result<String> {
    if m != 2 {
        return Err(Error::InvalidParameters("SVG output needs m = 2".into()));
    }
    let total = d * report.j as u64;
    let layout = Layout { total: total as f64 };
    let (w, h) = layout.size();
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.2}" height="{h:.2}" viewBox="0 0 {w:.2} {h:.2}" data-m="{m}" data-d="{d}" data-j="{}" data-p="{p}">"#,
        report.j
    );
    let _ = writeln!(
        s,
        r#"<text x="{MARGIN:.2}" y="20.00" font-family="sans-serif" font-size="14">beta_{{{p},b}} for |b| = {total}</text>"#
    );
    let (c0, c1, c2) = (
        layout.position([total as f64, 0.0, 0.0]),
        layout.position([0.0, total as f64, 0.0]),
        layout.position([0.0, 0.0, total as f64]),
    );
    let _ = writeln!(
        s,
        r#"<polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="none" stroke="lightgray"/>"#,
        c0.0, c0.1, c1.0, c1.1, c2.0, c2.1
    );
    let mut lines = vec![("upper", "orange", report.a_j as i64)];
    if let Some(l) = report.l_tilde.filter(|&l| l >= 0) {
        lines.push(("lower", "green", l));
    }
    for (kind, stroke, value) in lines {
        if value as u64 > total {
            continue;
        }
        for coord in 0..3 {
            let ((x1, y1), (x2, y2)) = layout.level_line(coord, value as f64);
            let _ = writeln!(
                s,
                r#"<line class="bound" data-bound="{kind}" data-coord="{coord}" data-value="{value}" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{stroke}" stroke-width="2"/>"#
            );
        }
    }
    for c in report.cells.iter().filter(|c| c.p == p) {
        let b = c.b.coords();
        let (x, y) = layout.position([b[0] as f64, b[1] as f64, b[2] as f64]);
        let value = c.value().map_or(String::new(), |v| v.to_string());
        let _ = writeln!(
            s,
            r#"<circle class="cell" data-b="{},{},{}" data-status="{}" data-value="{value}" cx="{x:.2}" cy="{y:.2}" r="4" fill="{}"/>"#,
            b[0],
            b[1],
            b[2],
            c.classification,
            color(c)
        );
        if c.value().unwrap_or(0) > 0 {
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="10">{value}</text>"#,
                x + 5.0,
                y - 5.0
            );
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}
