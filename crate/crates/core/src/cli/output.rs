use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use crate::certify::TheoremReport;
use crate::topology::{nesting_forest, TraceResult};

/// Stroke colors by nesting depth, cycling past the end.
const DEPTH_COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

/// Standalone SVG with one `<path>` per component; the `y` axis points up.
pub fn svg_string(trace: &TraceResult) -> String {
    let [x0, y0, x1, y1] = trace.bbox.as_f64();
    let depths: Vec<usize> = match nesting_forest(&trace.components) {
        Ok(f) => (0..trace.components.len()).map(|i| f.depth(i)).collect(),
        Err(_) => vec![0; trace.components.len()],
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x0} {} {} {}">"#,
        -y1,
        x1 - x0,
        y1 - y0
    );
    let _ = writeln!(
        out,
        r#"<rect x="{x0}" y="{}" width="{}" height="{}" fill="white"/>"#,
        -y1,
        x1 - x0,
        y1 - y0
    );
    for (i, c) in trace.components.iter().enumerate() {
        let mut d = String::new();
        for (k, p) in c.polyline.iter().enumerate() {
            let _ = write!(
                d,
                "{}{:.6} {:.6} ",
                if k == 0 { "M" } else { "L" },
                p[0],
                -p[1]
            );
        }
        if c.closed {
            d.push('Z');
        }
        let color = DEPTH_COLORS[depths[i] % DEPTH_COLORS.len()];
        let _ = writeln!(
            out,
            r#"<path d="{}" fill="none" stroke="{color}" stroke-width="2" vector-effect="non-scaling-stroke" data-depth="{}"/>"#,
            d.trim_end(),
            depths[i]
        );
    }
    out.push_str("</svg>\n");
    out
}

pub fn emit_svg(trace: &TraceResult, path: &Path) -> io::Result<()> {
    fs::write(path, svg_string(trace))
}

/// Columns `component,vertex_index,x,y`.
pub fn csv_string(trace: &TraceResult) -> String {
    let mut out = String::from("component,vertex_index,x,y\n");
    for (i, c) in trace.components.iter().enumerate() {
        for (k, p) in c.polyline.iter().enumerate() {
            let _ = writeln!(out, "{i},{k},{},{}", p[0], p[1]);
        }
    }
    out
}

pub fn emit_csv(trace: &TraceResult, path: &Path) -> io::Result<()> {
    fs::write(path, csv_string(trace))
}

/// Pretty JSON with sorted keys.
pub fn emit_report(report: &TheoremReport, path: &Path) -> io::Result<()> {
    let mut text = serde_json::to_string_pretty(&report.to_json()).expect("report is serializable");
    text.push('\n');
    fs::write(path, text)
}
