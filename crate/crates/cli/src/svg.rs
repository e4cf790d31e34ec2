//! Log-log scatter of separation radius against N as a standalone SVG.

use std::fmt::Write;

use sobolsep::io::RadiusSample;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;
const MARGIN: (f64, f64, f64, f64) = (70.0, 30.0, 40.0, 60.0); // left, right, top, bottom

const COLORS: [&str; 3] = ["#1f77b4", "#d62728", "#2ca02c"];

/// A reference line `log2 q = offset + slope * log2 N`.
pub struct Reference {
    pub slope: f64,
    pub offset: f64,
    pub label: &'static str,
    pub dash: &'static str,
}

pub const REFERENCES: [Reference; 2] = [
    Reference {
        slope: -0.5,
        offset: -1.0,
        label: "N^(-1/2) / 2",
        dash: "6,4",
    },
    Reference {
        slope: -0.75,
        offset: -0.5,
        label: "2^(-1/2) N^(-3/4)",
        dash: "2,3",
    },
];

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        let (l, r) = (MARGIN.0, WIDTH - MARGIN.1);
        l + (x - self.x.0) / (self.x.1 - self.x.0) * (r - l)
    }

    fn py(&self, y: f64) -> f64 {
        let (t, b) = (MARGIN.2, HEIGHT - MARGIN.3);
        b - (y - self.y.0) / (self.y.1 - self.y.0) * (b - t)
    }
}

/// Renders the samples; each norm gets its own color. Output depends only
/// on the input, so repeated runs are byte-identical.
pub fn render(samples: &[RadiusSample], title: &str) -> String {
    let pts: Vec<(f64, f64, &str)> = samples
        .iter()
        .filter(|s| s.n >= 1 && s.radius > 0.0)
        .map(|s| ((s.n as f64).log2(), s.radius.log2(), s.norm.as_str()))
        .collect();
    let fold = |f: fn(&(f64, f64, &str)) -> f64| {
        pts.iter()
            .map(f)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
    };
    let (x0, x1) = fold(|p| p.0);
    let (y0, y1) = fold(|p| p.1);
    let frame = Frame {
        x: (x0.floor().min(0.0), x1.ceil().max(x0.floor() + 1.0)),
        y: (y0.floor() - 1.0, y1.ceil().max(0.0) + 1.0),
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="22" text-anchor="middle" font-size="15">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    let _ = writeln!(s, r#"<clipPath id="plot"><rect x="{}" y="{}" width="{}" height="{}"/></clipPath>"#,
        MARGIN.0, MARGIN.2, WIDTH - MARGIN.0 - MARGIN.1, HEIGHT - MARGIN.2 - MARGIN.3);

    // Axes with integer ticks.
    let (l, r, t, b) = (MARGIN.0, WIDTH - MARGIN.1, MARGIN.2, HEIGHT - MARGIN.3);
    let _ = writeln!(s, r#"<rect x="{l}" y="{t}" width="{}" height="{}" fill="none" stroke="black"/>"#, r - l, b - t);
    let step = |span: f64| ((span / 12.0).ceil() as i64).max(1);
    let xs = step(frame.x.1 - frame.x.0);
    let mut i = frame.x.0 as i64;
    while i as f64 <= frame.x.1 {
        let px = frame.px(i as f64);
        let _ = writeln!(s, r#"<line x1="{px:.2}" y1="{b}" x2="{px:.2}" y2="{:.1}" stroke="black"/>"#, b + 5.0);
        let _ = writeln!(s, r#"<text x="{px:.2}" y="{:.1}" text-anchor="middle">{i}</text>"#, b + 19.0);
        i += xs;
    }
    let ys = step(frame.y.1 - frame.y.0);
    let mut j = frame.y.0 as i64;
    while j as f64 <= frame.y.1 {
        let py = frame.py(j as f64);
        let _ = writeln!(s, r#"<line x1="{:.1}" y1="{py:.2}" x2="{l}" y2="{py:.2}" stroke="black"/>"#, l - 5.0);
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.2}" text-anchor="end">{j}</text>"#, l - 8.0, py + 4.0);
        j += ys;
    }
    let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">log2 N</text>"#, (l + r) / 2.0, HEIGHT - 15.0);
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.1}" text-anchor="middle" transform="rotate(-90 18 {:.1})">log2 q(Q_N)</text>"#,
        (t + b) / 2.0,
        (t + b) / 2.0
    );

    let _ = writeln!(s, r#"<g clip-path="url(#plot)">"#);
    for rf in &REFERENCES {
        let (ya, yb) = (rf.offset + rf.slope * frame.x.0, rf.offset + rf.slope * frame.x.1);
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="gray" stroke-dasharray="{}"/>"#,
            frame.px(frame.x.0),
            frame.py(ya),
            frame.px(frame.x.1),
            frame.py(yb),
            rf.dash
        );
    }
    let mut norms: Vec<&str> = pts.iter().map(|p| p.2).collect();
    norms.sort_unstable();
    norms.dedup();
    for &(x, y, norm) in &pts {
        let c = COLORS[norms.iter().position(|&n| n == norm).unwrap_or(0) % COLORS.len()];
        let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="{c}"/>"#, frame.px(x), frame.py(y));
    }
    let _ = writeln!(s, "</g>");

    // Legend.
    let mut ly = t + 16.0;
    for rf in &REFERENCES {
        let _ = writeln!(
            s,
            r#"<line x1="{:.1}" y1="{ly:.1}" x2="{:.1}" y2="{ly:.1}" stroke="gray" stroke-dasharray="{}"/><text x="{:.1}" y="{:.1}">{}</text>"#,
            r - 190.0,
            r - 160.0,
            rf.dash,
            r - 152.0,
            ly + 4.0,
            rf.label
        );
        ly += 18.0;
    }
    for (i, norm) in norms.iter().enumerate() {
        let _ = writeln!(
            s,
            r#"<circle cx="{:.1}" cy="{ly:.1}" r="3" fill="{}"/><text x="{:.1}" y="{:.1}">q, {}</text>"#,
            r - 175.0,
            COLORS[i % COLORS.len()],
            r - 152.0,
            ly + 4.0,
            escape(norm)
        );
        ly += 18.0;
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(n: usize, radius: f64) -> RadiusSample {
        RadiusSample {
            n,
            norm: "linf".into(),
            radius,
        }
    }

    #[test]
    fn canvas_and_content() {
        let svg = render(&[sample(4, 0.125), sample(64, 1.0 / 64.0)], "t <1>");
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains(r#"width="800" height="600""#));
        assert_eq!(svg.matches("<circle").count(), 2 + 1);
        assert!(svg.contains("t &lt;1&gt;"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn deterministic() {
        let data = [sample(2, 0.25), sample(3, 0.125), sample(8, 0.0625)];
        assert_eq!(render(&data, "x"), render(&data, "x"));
    }
}
