//! Self-contained SVG 1.1 plots rendered from emitted CSV text.

use std::fmt::Write as _;

use super::table::Table;

const WIDTH: f64 = 960.0;
const HEIGHT: f64 = 360.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 36.0;
const BOTTOM: f64 = 40.0;

#[derive(Debug, Clone)]
pub struct Series {
    /// CSV column holding the series.
    pub column: String,
    pub label: String,
    pub color: &'static str,
    pub dashed: bool,
}

impl Series {
    pub fn new(column: &str, label: impl Into<String>, color: &'static str) -> Self {
        Series {
            column: column.to_owned(),
            label: label.into(),
            color,
            dashed: false,
        }
    }

    pub fn dashed(mut self) -> Self {
        self.dashed = true;
        self
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

struct Frame {
    y_min: f64,
    y_max: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        LEFT + x * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        let t = (y - self.y_min) / (self.y_max - self.y_min);
        HEIGHT - BOTTOM - t * (HEIGHT - TOP - BOTTOM)
    }
}

fn open(out: &mut String, title: &str) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="20" font-family="sans-serif" font-size="13" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
}

fn axes(out: &mut String, frame: &Frame, y_ticks: bool) {
    let (x0, x1) = (frame.px(0.0), frame.px(1.0));
    let (y0, y1) = (HEIGHT - BOTTOM, TOP);
    let _ = writeln!(
        out,
        r#"<rect x="{x0:.2}" y="{y1:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black" stroke-width="1"/>"#,
        x1 - x0,
        y0 - y1
    );
    for i in 0..=4 {
        let x = f64::from(i) / 4.0;
        let px = frame.px(x);
        let _ = writeln!(
            out,
            r#"<line x1="{px:.2}" y1="{y0:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/><text x="{px:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="middle">{x}</text>"#,
            y0 + 5.0,
            y0 + 18.0
        );
    }
    if y_ticks {
        for i in 0..=4 {
            let y = frame.y_min + (frame.y_max - frame.y_min) * f64::from(i) / 4.0;
            let py = frame.py(y);
            let _ = writeln!(
                out,
                r#"<line x1="{:.2}" y1="{py:.2}" x2="{x0:.2}" y2="{py:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="end">{y:.3}</text>"#,
                x0 - 5.0,
                x0 - 8.0,
                py + 4.0
            );
        }
    }
}

fn legend(out: &mut String, entries: &[(&str, &'static str, bool)]) {
    let x = WIDTH - RIGHT - 190.0;
    let _ = writeln!(
        out,
        r#"<rect x="{:.2}" y="{:.2}" width="184" height="{:.2}" fill="white" fill-opacity="0.85" stroke="gray"/>"#,
        x - 6.0,
        TOP + 4.0,
        16.0 * entries.len() as f64 + 8.0
    );
    for (i, (label, color, dashed)) in entries.iter().enumerate() {
        let y = TOP + 16.0 + 16.0 * i as f64;
        let dash = if *dashed {
            r#" stroke-dasharray="6,3""#
        } else {
            ""
        };
        let _ = writeln!(
            out,
            r#"<line x1="{x:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="2"{dash}/><text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11">{}</text>"#,
            y - 4.0,
            x + 22.0,
            y - 4.0,
            x + 28.0,
            y,
            escape(label)
        );
    }
}

/// Line plot of `series` against the `x` column.
pub fn curve_svg(csv: &str, title: &str, series: &[Series]) -> Result<String, String> {
    let table = Table::parse_csv(csv)?;
    let xs = table.column("x").ok_or("CSV has no `x` column")?;
    let mut columns = Vec::with_capacity(series.len());
    for s in series {
        let ys = table
            .column(&s.column)
            .ok_or_else(|| format!("CSV has no `{}` column", s.column))?;
        if ys.len() != xs.len() {
            return Err(format!("column `{}` has empty cells", s.column));
        }
        columns.push(ys);
    }
    let (mut lo, mut hi) = columns
        .iter()
        .flatten()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    if !lo.is_finite() || !hi.is_finite() {
        return Err("no finite data to plot".into());
    }
    if hi - lo < 1e-12 {
        lo -= 0.5;
        hi += 0.5;
    }
    let pad = 0.05 * (hi - lo);
    let frame = Frame {
        y_min: lo - pad,
        y_max: hi + pad,
    };

    let mut out = String::new();
    open(&mut out, title);
    axes(&mut out, &frame, true);
    for (s, ys) in series.iter().zip(&columns) {
        let dash = if s.dashed {
            r#" stroke-dasharray="6,3""#
        } else {
            ""
        };
        let _ = write!(
            out,
            r#"<polyline fill="none" stroke="{}" stroke-width="1.5"{dash} points=""#,
            s.color
        );
        for (i, (x, y)) in xs.iter().zip(ys).enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{:.2},{:.2}", frame.px(*x), frame.py(*y));
        }
        out.push_str("\"/>\n");
    }
    let entries: Vec<_> = series
        .iter()
        .map(|s| (s.label.as_str(), s.color, s.dashed))
        .collect();
    legend(&mut out, &entries);
    out.push_str("</svg>\n");
    Ok(out)
}

/// One horizontal lane of node markers.
#[derive(Debug, Clone)]
pub struct Lane {
    pub label: String,
    pub color: &'static str,
    pub nodes: Vec<f64>,
}

/// Builds lanes from a node CSV: the Bernstein nodes once, then one lane of
/// Stancu nodes per `(alpha, beta)` group (a single group when the CSV has
/// no `alpha` column).
pub fn node_lanes(
    csv: &str,
    bernstein_color: &'static str,
    stancu: &[(String, &'static str)],
) -> Result<Vec<Lane>, String> {
    let table = Table::parse_csv(csv)?;
    let kcol = table.column_index("k").ok_or("CSV has no `k` column")?;
    let bcol = table
        .column_index("bernstein_node")
        .ok_or("CSV has no `bernstein_node` column")?;
    let scol = table
        .column_index("stancu_node")
        .ok_or("CSV has no `stancu_node` column")?;

    // a new group starts wherever k resets to 0
    let mut groups: Vec<Vec<&Vec<Option<f64>>>> = Vec::new();
    for row in &table.rows {
        if row[kcol] == Some(0.0) || groups.is_empty() {
            groups.push(Vec::new());
        }
        groups.last_mut().unwrap().push(row);
    }
    if groups.len() != stancu.len() {
        return Err(format!(
            "{} node groups in CSV, {} styles given",
            groups.len(),
            stancu.len()
        ));
    }
    let mut lanes = vec![Lane {
        label: "Bernstein nodes k/n".to_owned(),
        color: bernstein_color,
        nodes: groups[0].iter().filter_map(|r| r[bcol]).collect(),
    }];
    for (group, (label, color)) in groups.iter().zip(stancu) {
        lanes.push(Lane {
            label: label.clone(),
            color,
            nodes: group.iter().filter_map(|r| r[scol]).collect(),
        });
    }
    Ok(lanes)
}

/// Node positions on `[0,1]`, one lane per family, with an optional marker
/// line at the clustering point `m`.
pub fn node_svg(title: &str, lanes: &[Lane], m: Option<f64>) -> String {
    let frame = Frame {
        y_min: 0.0,
        y_max: lanes.len() as f64 + 1.0,
    };
    let mut out = String::new();
    open(&mut out, title);
    axes(&mut out, &frame, false);
    if let Some(m) = m {
        let px = frame.px(m);
        let _ = writeln!(
            out,
            r#"<line x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{:.2}" stroke="gray" stroke-dasharray="4,4"/><text x="{px:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="middle">m = {m}</text>"#,
            TOP,
            HEIGHT - BOTTOM,
            TOP - 3.0
        );
    }
    for (i, lane) in lanes.iter().enumerate() {
        let py = frame.py((lanes.len() - i) as f64);
        let _ = writeln!(
            out,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="{}" stroke-opacity="0.3"/>"#,
            frame.px(0.0),
            frame.px(1.0),
            lane.color
        );
        let _ = write!(out, r#"<g fill="{}">"#, lane.color);
        for x in &lane.nodes {
            let _ = write!(
                out,
                r#"<circle cx="{:.2}" cy="{py:.2}" r="2.5"/>"#,
                frame.px(*x)
            );
        }
        out.push_str("</g>\n");
    }
    let entries: Vec<_> = lanes
        .iter()
        .map(|l| (l.label.as_str(), l.color, false))
        .collect();
    legend(&mut out, &entries);
    out.push_str("</svg>\n");
    out
}
