//! Serialization of reports: pretty JSON, scan tables as CSV and simple
//! polyline charts as SVG. All output is deterministic for a given input.

use std::fmt::Write as _;

use serde::Serialize;

use crate::arith::{fmt_rational, to_f64};
use crate::families::ScanReport;

/// Column names of the scan table.
pub const SCAN_COLUMNS: [&str; 9] = ["n", "rot_c", "rot_d", "len_rot", "entropy_lo", "entropy_hi", "sbc", "bc", "flags"];

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// One row per parameter. Rotation endpoints are exact rationals and the
/// entropy columns are the outward-rounded bounds of `log` of the spectral radius.
pub fn scan_csv(report: &ScanReport) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SCAN_COLUMNS)?;
    for r in &report.rows {
        let (c, d) = r.rotation.as_ref().map_or((String::new(), String::new()), |rot| (fmt_rational(&rot.c), fmt_rational(&rot.d)));
        let (lo, hi) = r.entropy_log.map_or((String::new(), String::new()), |(lo, hi)| (format!("{lo:.12}"), format!("{hi:.12}")));
        w.write_record([
            r.n.to_string(),
            c,
            d,
            r.len_rot.as_ref().map(fmt_rational).unwrap_or_default(),
            lo,
            hi,
            opt(r.sbc),
            opt(r.bc),
            r.flags.join(";"),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// A named sequence of points for `svg_polyline`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 48.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

/// A line chart of the given series, scaled to their common bounding box.
pub fn svg_polyline(title: &str, series: &[Series]) -> String {
    let pts = series.iter().flat_map(|s| s.points.iter()).filter(|(x, y)| x.is_finite() && y.is_finite());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 <= x0 {
        x1 = x0 + 1.0;
    }
    if y1 <= y0 {
        y1 = y0 + 1.0;
    }
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#);
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{MARGIN}" y="24" font-family="sans-serif" font-size="14">{}</text>"#, escape(title));
    let _ = writeln!(
        out,
        r##"<polyline points="{m},{t} {m},{b} {r},{b}" fill="none" stroke="#444"/>"##,
        m = MARGIN,
        t = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN
    );
    let _ = writeln!(out, r#"<text x="{MARGIN}" y="{}" font-family="sans-serif" font-size="11">{x0:.4}</text>"#, HEIGHT - MARGIN + 16.0);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="end">{x1:.4}</text>"#,
        WIDTH - MARGIN,
        HEIGHT - MARGIN + 16.0
    );
    let _ = writeln!(out, r#"<text x="4" y="{}" font-family="sans-serif" font-size="11">{y0:.4}</text>"#, HEIGHT - MARGIN);
    let _ = writeln!(out, r#"<text x="4" y="{}" font-family="sans-serif" font-size="11">{y1:.4}</text>"#, MARGIN + 4.0);
    for (i, s) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let coords: Vec<String> =
            s.points.iter().filter(|(x, y)| x.is_finite() && y.is_finite()).map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        let _ = writeln!(out, r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#, coords.join(" "));
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" fill="{color}">{}</text>"#,
            WIDTH - MARGIN - 140.0,
            MARGIN + 16.0 * i as f64,
            escape(&s.label)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Entropy and rotation-interval length against `n`.
pub fn scan_svg(report: &ScanReport) -> String {
    let entropy = Series {
        label: "entropy (upper)".into(),
        points: report.rows.iter().filter_map(|r| r.entropy_log.map(|(_, hi)| (r.n as f64, hi))).collect(),
    };
    let len = Series {
        label: "len Rot".into(),
        points: report.rows.iter().filter_map(|r| r.len_rot.as_ref().map(|l| (r.n as f64, to_f64(l)))).collect(),
    };
    svg_polyline(&format!("{} family scan", report.family), &[entropy, len])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn svg_is_deterministic() {
        let s = [Series { label: "a<b".into(), points: vec![(0.0, 1.0), (1.0, 0.5), (2.0, f64::NAN)] }];
        let a = svg_polyline("t", &s);
        assert_eq!(a, svg_polyline("t", &s));
        assert!(a.contains("a&lt;b"));
        assert!(a.starts_with("<svg") && a.ends_with("</svg>\n"));
    }

    #[test]
    fn empty_chart_still_renders() {
        let a = svg_polyline("empty", &[]);
        assert!(a.contains("</svg>"));
    }
}
