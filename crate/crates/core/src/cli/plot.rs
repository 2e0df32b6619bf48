use std::fmt::Write as _;
use std::path::Path;

use super::config::SweepParameter;
use super::sweep::ResultRow;
use crate::analytic::ModelPoint;
use crate::error::{Error, Result};

const W: f64 = 640.0;
const H: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 50.0;

const CORR: &str = "#1f5fbf";
const UNCORR: &str = "#c0392b";

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        let span = if self.x1 > self.x0 { self.x1 - self.x0 } else { 1.0 };
        LEFT + (x - self.x0) / span * (W - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        H - BOTTOM - (y - self.y0) / (self.y1 - self.y0) * (H - TOP - BOTTOM)
    }
}

struct Series<'a> {
    label: &'a str,
    colour: &'a str,
    /// (x, y, stderr)
    points: Vec<(f64, f64, f64)>,
    markers: bool,
}

fn axis_label(p: SweepParameter) -> &'static str {
    match p {
        SweepParameter::PhiMax => "phi_max (rad)",
        SweepParameter::TCav => "T_cav (ms)",
        SweepParameter::AlphaSq => "|alpha|^2",
    }
}

fn render(series: &[Series], xlabel: &str) -> String {
    let all = series.iter().flat_map(|s| s.points.iter());
    let (mut x0, mut x1, mut ylo) = (f64::INFINITY, f64::NEG_INFINITY, 1.0f64);
    for &(x, y, e) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        ylo = ylo.min(y - e);
    }
    let y0 = ((ylo.max(0.0) * 10.0).floor() / 10.0).min(0.9);
    let f = Frame { x0, x1, y0, y1: 1.0 };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let (bx, by) = (f.px(x0), f.py(1.0));
    let (bw, bh) = (f.px(x1) - bx, f.py(y0) - by);
    let _ = writeln!(s, r#"<rect x="{bx}" y="{by}" width="{bw}" height="{bh}" fill="none" stroke="black"/>"#);
    for k in 0..=((1.0 - y0) * 10.0).round() as usize {
        let y = y0 + 0.1 * k as f64;
        let yy = f.py(y);
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{yy:.2}" x2="{}" y2="{yy:.2}" stroke="gainsboro"/><text x="{}" y="{:.2}" text-anchor="end">{y:.1}</text>"#,
            f.px(x0),
            f.px(x1),
            LEFT - 6.0,
            yy + 4.0
        );
    }
    for k in 0..=4 {
        let x = x0 + (x1 - x0) * k as f64 / 4.0;
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{}" text-anchor="middle">{}</text>"#,
            f.px(x),
            H - BOTTOM + 18.0,
            trim(x)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">{xlabel}</text>"#,
        0.5 * (LEFT + W - RIGHT),
        H - 12.0
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{}" text-anchor="middle" transform="rotate(-90 18 {})">fidelity</text>"#,
        0.5 * H,
        0.5 * H
    );

    for (k, ser) in series.iter().enumerate() {
        let path: Vec<String> = ser
            .points
            .iter()
            .map(|&(x, y, _)| format!("{:.2},{:.2}", f.px(x), f.py(y)))
            .collect();
        let dash = if ser.markers { "" } else { r#" stroke-dasharray="6 4""# };
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="1.5"{dash}/>"#,
            path.join(" "),
            ser.colour
        );
        if ser.markers {
            for &(x, y, e) in &ser.points {
                let (xx, yy) = (f.px(x), f.py(y));
                let _ = writeln!(
                    s,
                    r#"<line x1="{xx:.2}" y1="{:.2}" x2="{xx:.2}" y2="{:.2}" stroke="{}"/><circle cx="{xx:.2}" cy="{yy:.2}" r="3" fill="{}"/>"#,
                    f.py((y + e).min(1.0)),
                    f.py((y - e).max(y0)),
                    ser.colour,
                    ser.colour
                );
            }
        }
        let ly = TOP + 16.0 + 16.0 * k as f64;
        let lx = W - RIGHT - 190.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{}" stroke-width="1.5"{dash}/><text x="{}" y="{}">{}</text>"#,
            lx + 24.0,
            ser.colour,
            lx + 30.0,
            ly + 4.0,
            ser.label
        );
    }
    s.push_str("</svg>\n");
    s
}

fn trim(x: f64) -> String {
    let t = format!("{x:.3}");
    t.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Both fidelities against the swept parameter with one-standard-error
/// bars, plus the averaged single-qubit model if `model` is given.
pub fn render_plot(rows: &[ResultRow], parameter: SweepParameter, model: Option<&[ModelPoint]>) -> String {
    let mut series = Vec::new();
    let corr: Vec<_> = rows
        .iter()
        .filter_map(|r| Some((r.swept(parameter), r.f_corr?, r.f_corr_se?)))
        .collect();
    if !corr.is_empty() {
        series.push(Series {
            label: "with correction",
            colour: CORR,
            points: corr,
            markers: true,
        });
    }
    series.push(Series {
        label: "without correction",
        colour: UNCORR,
        points: rows
            .iter()
            .map(|r| (r.swept(parameter), r.f_uncorr, r.f_uncorr_se))
            .collect(),
        markers: true,
    });
    if let Some(m) = model {
        series.extend(model_series(m));
    }
    render(&series, axis_label(parameter))
}

fn model_series(m: &[ModelPoint]) -> [Series<'static>; 2] {
    [
        Series {
            label: "model, feedback",
            colour: CORR,
            points: m.iter().map(|p| (p.phi_max, p.f_fb_ave, 0.0)).collect(),
            markers: false,
        },
        Series {
            label: "model, no feedback",
            colour: UNCORR,
            points: m.iter().map(|p| (p.phi_max, p.f_nofb_ave, 0.0)).collect(),
            markers: false,
        },
    ]
}

pub fn render_model_plot(model: &[ModelPoint]) -> String {
    render(&model_series(model), axis_label(SweepParameter::PhiMax))
}

pub fn write_svg(svg: &str, path: &Path) -> Result<()> {
    std::fs::write(path, svg).map_err(|e| Error::io(path, e))
}
