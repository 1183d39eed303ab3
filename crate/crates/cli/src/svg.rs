//! Minimal SVG writer: a canvas holding side-by-side panels, each with its
//! own world window. Output is plain text with fixed float formatting, so
//! equal inputs give byte-identical files.

use std::fmt::Write;

const PANEL: f64 = 420.0;
const MARGIN: f64 = 30.0;

#[derive(Clone, Copy, Debug)]
pub struct Panel {
    x0: f64,
    lo: [f64; 2],
    hi: [f64; 2],
}

impl Panel {
    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        let sx = (p[0] - self.lo[0]) / (self.hi[0] - self.lo[0]);
        let sy = (p[1] - self.lo[1]) / (self.hi[1] - self.lo[1]);
        (self.x0 + MARGIN + sx * PANEL, MARGIN + (1.0 - sy) * PANEL)
    }

    fn scale(&self) -> [f64; 2] {
        [PANEL / (self.hi[0] - self.lo[0]), PANEL / (self.hi[1] - self.lo[1])]
    }
}

pub struct Canvas {
    panels: usize,
    body: String,
}

impl Canvas {
    pub fn new() -> Canvas {
        Canvas { panels: 0, body: String::new() }
    }

    /// Add a panel showing the world box `[lo, hi]`, framed and titled.
    pub fn panel(&mut self, lo: [f64; 2], hi: [f64; 2], title: &str) -> Panel {
        let hi = [if hi[0] > lo[0] { hi[0] } else { lo[0] + 1.0 }, if hi[1] > lo[1] { hi[1] } else { lo[1] + 1.0 }];
        let p = Panel { x0: self.panels as f64 * (PANEL + 2.0 * MARGIN), lo, hi };
        self.panels += 1;
        let _ = writeln!(
            self.body,
            r##"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="#999"/>"##,
            p.x0 + MARGIN,
            MARGIN,
            PANEL,
            PANEL
        );
        let _ = writeln!(self.body, r#"<text x="{:.2}" y="{:.2}" font-size="13">{}</text>"#, p.x0 + MARGIN, MARGIN - 8.0, escape(title));
        p
    }

    pub fn line(&mut self, p: &Panel, a: [f64; 2], b: [f64; 2], color: &str, width: f64) {
        let (x1, y1) = p.map(a);
        let (x2, y2) = p.map(b);
        let _ = writeln!(
            self.body,
            r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{color}" stroke-width="{width}"/>"#
        );
    }

    pub fn polyline(&mut self, p: &Panel, pts: &[[f64; 2]], color: &str, width: f64) {
        if pts.len() < 2 {
            return;
        }
        let coords: Vec<String> = pts
            .iter()
            .map(|&q| {
                let (x, y) = p.map(q);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            self.body,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="{width}"/>"#,
            coords.join(" ")
        );
    }

    pub fn dot(&mut self, p: &Panel, a: [f64; 2], r: f64, color: &str) {
        let (x, y) = p.map(a);
        let _ = writeln!(self.body, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r}" fill="{color}"/>"#);
    }

    /// Filled world-space rectangle with lower-left corner `a`.
    pub fn cell(&mut self, p: &Panel, a: [f64; 2], size: [f64; 2], color: &str) {
        let (x, y) = p.map([a[0], a[1] + size[1]]);
        let s = p.scale();
        let _ = writeln!(
            self.body,
            r#"<rect x="{x:.2}" y="{y:.2}" width="{:.2}" height="{:.2}" fill="{color}"/>"#,
            size[0] * s[0],
            size[1] * s[1]
        );
    }

    pub fn label(&mut self, p: &Panel, a: [f64; 2], text: &str) {
        let (x, y) = p.map(a);
        let _ = writeln!(self.body, r#"<text x="{:.2}" y="{:.2}" font-size="10">{}</text>"#, x + 3.0, y - 3.0, escape(text));
    }

    pub fn finish(self) -> String {
        let w = self.panels.max(1) as f64 * (PANEL + 2.0 * MARGIN);
        let h = PANEL + 2.0 * MARGIN;
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">\n\
             <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.body
        )
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Clip the ray `a + t·d`, `t ≥ 0`, to the box; returns the far endpoint.
pub fn clip_ray(a: [f64; 2], d: [f64; 2], lo: [f64; 2], hi: [f64; 2]) -> Option<[f64; 2]> {
    let mut t_max = f64::INFINITY;
    for k in 0..2 {
        if d[k] > 0.0 {
            t_max = t_max.min((hi[k] - a[k]) / d[k]);
        } else if d[k] < 0.0 {
            t_max = t_max.min((lo[k] - a[k]) / d[k]);
        }
    }
    (t_max.is_finite() && t_max >= 0.0).then(|| [a[0] + t_max * d[0], a[1] + t_max * d[1]])
}
