//! Minimal SVG curves of the bi-anisotropic component: `|chi_12|` on log-log
//! axes above, `Re` and `Im chi_12` on a symlog axis below.

use std::fmt::Write;

use super::sweep::SweepResult;

const WIDTH: f64 = 640.0;
const PANEL: f64 = 260.0;
const MARGIN: f64 = 50.0;

fn symlog(y: f64, lin: f64) -> f64 {
    y.signum() * (1.0 + y.abs() / lin).log10()
}

fn polyline(out: &mut String, xs: &[f64], ys: &[f64], top: f64, colour: &str) {
    let finite: Vec<(f64, f64)> = xs.iter().zip(ys).filter(|(x, y)| x.is_finite() && y.is_finite()).map(|(x, y)| (*x, *y)).collect();
    if finite.is_empty() {
        return;
    }
    let (x0, x1) = bounds(finite.iter().map(|p| p.0));
    let (y0, y1) = bounds(finite.iter().map(|p| p.1));
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| top + PANEL - (y - y0) / (y1 - y0) * PANEL;
    let pts: Vec<String> = finite.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
    let _ = writeln!(out, r#"<polyline fill="none" stroke="{colour}" stroke-width="1.2" points="{}"/>"#, pts.join(" "));
}

fn bounds(v: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = v.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
    if hi > lo {
        (lo, hi)
    } else {
        (lo - 0.5, lo + 0.5)
    }
}

fn frame(out: &mut String, top: f64, label: &str) {
    let _ = writeln!(
        out,
        r#"<rect x="{MARGIN}" y="{top}" width="{}" height="{PANEL}" fill="none" stroke="black"/>"#,
        WIDTH - 2.0 * MARGIN
    );
    let _ = writeln!(out, r#"<text x="{MARGIN}" y="{}" font-size="12">{label}</text>"#, top - 6.0);
}

pub fn render_svg(res: &SweepResult) -> String {
    let height = 2.0 * PANEL + 3.0 * MARGIN;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">"#
    );
    let xs: Vec<f64> = res.rows.iter().map(|r| res.axis.convert(r.omega).log10()).collect();
    let axis = match res.axis {
        super::config::Axis::RadS => "rad/s",
        super::config::Axis::Hz => "Hz",
    };

    let top = MARGIN;
    frame(&mut out, top, &format!("log10 |chi12| (dimensionless) vs log10 omega [{axis}]"));
    let mags: Vec<f64> = res.rows.iter().map(|r| r.chi12_dimless.norm().log10()).collect();
    polyline(&mut out, &xs, &mags, top, "black");

    let top = 2.0 * MARGIN + PANEL;
    frame(&mut out, top, "symlog Re chi12 (blue), Im chi12 (red)");
    let peak = res.rows.iter().map(|r| r.chi12_dimless.re.abs().max(r.chi12_dimless.im.abs())).fold(0.0, f64::max);
    let lin = if peak > 0.0 { peak * 1e-12 } else { 1.0 };
    let re: Vec<f64> = res.rows.iter().map(|r| symlog(r.chi12_dimless.re, lin)).collect();
    let im: Vec<f64> = res.rows.iter().map(|r| symlog(r.chi12_dimless.im, lin)).collect();
    polyline(&mut out, &xs, &re, top, "blue");
    polyline(&mut out, &xs, &im, top, "red");
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::{run_sweep, SweepConfig};

    #[test]
    fn renders_two_panels() {
        let res = run_sweep(&SweepConfig { points: 9, n_max: 3, ..Default::default() }).unwrap();
        let svg = render_svg(&res);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polyline").count(), 3);
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn symlog_is_odd_and_monotone() {
        assert_eq!(symlog(0.0, 1.0), 0.0);
        assert_eq!(symlog(-5.0, 1.0), -symlog(5.0, 1.0));
        assert!(symlog(10.0, 1.0) > symlog(5.0, 1.0));
    }
}
