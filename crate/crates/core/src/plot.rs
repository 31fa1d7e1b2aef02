//! SVG rendering of BER curves: log-scaled BER against SNR in dB, one
//! curve per scheme with confidence whiskers.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::montecarlo::BerPoint;
use crate::phy::Scheme;

/// BER values of zero are drawn here, with open markers.
pub const PLOT_FLOOR: f64 = 1e-8;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;

fn color(scheme: Scheme) -> &'static str {
    match scheme {
        Scheme::Stbc => "#d62728",
        Scheme::MaxSel => "#1f77b4",
    }
}

fn label(scheme: Scheme) -> &'static str {
    match scheme {
        Scheme::Stbc => "STBC",
        Scheme::MaxSel => "Max-antenna selection",
    }
}

struct Axes {
    x_lo: f64,
    x_hi: f64,
    decade_lo: i32,
    decade_hi: i32,
}

impl Axes {
    fn x(&self, snr: f64) -> f64 {
        let span = (self.x_hi - self.x_lo).max(1e-9);
        LEFT + (snr - self.x_lo) / span * (WIDTH - LEFT - RIGHT)
    }

    fn y(&self, ber: f64) -> f64 {
        let v = ber.max(PLOT_FLOOR).log10();
        let span = f64::from(self.decade_hi - self.decade_lo);
        TOP + (f64::from(self.decade_hi) - v) / span * (HEIGHT - TOP - BOTTOM)
    }
}

/// Renders the points as an SVG document.
pub fn render_ber_svg(points: &[BerPoint], title: &str) -> Result<String> {
    if points.is_empty() {
        return Err(Error::InvalidInput("no data points to plot".into()));
    }
    let x_lo = points
        .iter()
        .map(|p| p.snr_db)
        .fold(f64::INFINITY, f64::min);
    let x_hi = points
        .iter()
        .map(|p| p.snr_db)
        .fold(f64::NEG_INFINITY, f64::max);
    let lowest = points
        .iter()
        .flat_map(|p| [p.ber, p.ci_low])
        .map(|v| v.max(PLOT_FLOOR))
        .fold(1.0, f64::min);
    let axes = Axes {
        x_lo,
        x_hi: if x_hi > x_lo { x_hi } else { x_lo + 1.0 },
        decade_lo: lowest.log10().floor() as i32,
        decade_hi: 0,
    };
    let axes = Axes {
        decade_lo: axes.decade_lo.min(-1),
        ..axes
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="18" text-anchor="middle" font-size="14">{}</text>"#,
        (LEFT + WIDTH - RIGHT) / 2.0,
        escape(title)
    );

    // grid and ticks
    let (px0, px1) = (axes.x(axes.x_lo), axes.x(axes.x_hi));
    for d in axes.decade_lo..=axes.decade_hi {
        let y = axes.y(10f64.powi(d));
        let _ = writeln!(
            s,
            r##"<line x1="{px0:.2}" y1="{y:.2}" x2="{px1:.2}" y2="{y:.2}" stroke="#dddddd"/>"##
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">1e{d}</text>"#,
            px0 - 6.0,
            y + 4.0
        );
    }
    let x_ticks = 5;
    for i in 0..=x_ticks {
        let v = axes.x_lo + (axes.x_hi - axes.x_lo) * f64::from(i) / f64::from(x_ticks);
        let x = axes.x(v);
        let _ = writeln!(
            s,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{v:.1}</text>"#,
            HEIGHT - BOTTOM + 18.0
        );
    }
    let _ = writeln!(
        s,
        r#"<rect x="{px0:.2}" y="{TOP:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
        px1 - px0,
        HEIGHT - TOP - BOTTOM
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">SNR (dB)</text>"#,
        (px0 + px1) / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">Bit error rate</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );

    let mut schemes: Vec<Scheme> = points.iter().map(|p| p.scheme).collect();
    schemes.sort();
    schemes.dedup();
    for (row, scheme) in schemes.iter().enumerate() {
        let mut pts: Vec<&BerPoint> = points.iter().filter(|p| p.scheme == *scheme).collect();
        pts.sort_by(|a, b| a.snr_db.total_cmp(&b.snr_db));
        let c = color(*scheme);
        let _ = writeln!(s, r#"<g class="curve" data-scheme="{scheme}">"#);
        let path = pts
            .iter()
            .map(|p| format!("{:.2},{:.2}", axes.x(p.snr_db), axes.y(p.ber)))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(
            s,
            r#"<polyline points="{path}" fill="none" stroke="{c}" stroke-width="1.5"/>"#
        );
        for p in &pts {
            let x = axes.x(p.snr_db);
            let _ = writeln!(
                s,
                r#"<line class="whisker" x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="{c}"/>"#,
                axes.y(p.ci_low),
                axes.y(p.ci_high)
            );
            let fill = if p.ber > 0.0 { c } else { "white" };
            let _ = writeln!(
                s,
                r#"<circle class="marker" cx="{x:.2}" cy="{:.2}" r="3.5" fill="{fill}" stroke="{c}"/>"#,
                axes.y(p.ber)
            );
        }
        let _ = writeln!(s, "</g>");
        let ly = TOP + 20.0 + 20.0 * row as f64;
        let lx = WIDTH - RIGHT + 12.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{c}" stroke-width="1.5"/>"#,
            lx + 20.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 26.0,
            ly + 4.0,
            label(*scheme)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
