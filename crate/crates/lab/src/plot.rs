//! Curves of `frac_H_vanishes` and `frac_no_isolated` against `ω`, written
//! as SVG (for `.svg` paths) or as a whitespace-separated gnuplot data file.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{LabError, LabResult};
use crate::sweep::SweepRow;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotFormat {
    Svg,
    GnuplotData,
}

pub fn emit_plot(rows: &[SweepRow], path: &Path) -> LabResult<PlotFormat> {
    if rows.is_empty() {
        return Err(LabError::EmptyPlot);
    }
    let is_svg = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("svg"));
    let (body, format) = if is_svg {
        (svg(rows), PlotFormat::Svg)
    } else {
        (gnuplot_data(rows), PlotFormat::GnuplotData)
    };
    fs::write(path, body)?;
    Ok(format)
}

fn gnuplot_data(rows: &[SweepRow]) -> String {
    let mut out = String::from("# omega frac_H_vanishes frac_no_isolated\n");
    for r in rows {
        writeln!(out, "{} {:.6} {:.6}", r.omega, r.frac_h_vanishes, r.frac_no_isolated).unwrap();
    }
    out
}

const W: f64 = 640.0;
const H: f64 = 400.0;
const MARGIN: f64 = 50.0;

fn svg(rows: &[SweepRow]) -> String {
    let lo = rows.first().unwrap().omega;
    let hi = rows.last().unwrap().omega;
    let span = if hi > lo { hi - lo } else { 1.0 };
    let x = |w: f64| {
        if hi > lo {
            MARGIN + (w - lo) / span * (W - 2.0 * MARGIN)
        } else {
            W / 2.0
        }
    };
    let y = |f: f64| H - MARGIN - f * (H - 2.0 * MARGIN);

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="{W}" height="{H}" fill="white"/>"#).unwrap();
    writeln!(
        out,
        r#"<path d="M{m} {t} L{m} {b} L{r} {b}" stroke="black" fill="none"/>"#,
        m = MARGIN,
        t = MARGIN,
        b = H - MARGIN,
        r = W - MARGIN
    )
    .unwrap();
    for (label, v) in [("0", 0.0), ("0.5", 0.5), ("1", 1.0)] {
        writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="12" text-anchor="end">{label}</text>"#,
            MARGIN - 6.0,
            y(v) + 4.0
        )
        .unwrap();
    }
    for w in [lo, hi] {
        writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">{w}</text>"#,
            x(w),
            H - MARGIN + 18.0
        )
        .unwrap();
    }
    writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="13" text-anchor="middle">omega</text>"#,
        W / 2.0,
        H - 10.0
    )
    .unwrap();

    let series: [(&str, &str, fn(&SweepRow) -> f64); 2] = [
        ("frac_H_vanishes", "#1f77b4", |r| r.frac_h_vanishes),
        ("frac_no_isolated", "#d62728", |r| r.frac_no_isolated),
    ];
    for (i, (name, color, get)) in series.iter().enumerate() {
        let points: Vec<String> = rows
            .iter()
            .map(|r| format!("{:.2},{:.2}", x(r.omega), y(get(r))))
            .collect();
        writeln!(
            out,
            r#"<polyline points="{}" stroke="{color}" stroke-width="2" fill="none"/>"#,
            points.join(" ")
        )
        .unwrap();
        for r in rows {
            writeln!(
                out,
                r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#,
                x(r.omega),
                y(get(r))
            )
            .unwrap();
        }
        writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="12" fill="{color}">{name}</text>"#,
            MARGIN + 10.0,
            MARGIN + 16.0 * i as f64
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}
