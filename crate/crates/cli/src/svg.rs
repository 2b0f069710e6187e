//! Static figure of the `(p, α)` plane: cells with thin outlines and the
//! sawtooth `β(N, ·)` drawn thick.

use std::fmt::Write;

use polyharm::cellgeom::{Cell, PiecewiseAffine};
use polyharm::Rational;

use crate::output::f;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 540.0;
const MARGIN: f64 = 64.0;
const FILLS: [&str; 6] = ["#dbe9f6", "#fde2c8", "#d8f0d2", "#f3d5e6", "#e8e2f5", "#f6f1c7"];

type Polygon = Vec<(f64, f64)>;

pub struct Figure {
    n: u32,
    p_max: f64,
    alpha_min: f64,
    beta: Vec<(Rational, Rational)>,
    cells: Vec<(String, Vec<Polygon>)>,
}

fn fmt_tick(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl Figure {
    pub fn new(n: u32, p_max: &Rational, beta: &PiecewiseAffine<Rational>, cells: &[Cell<Rational>]) -> Self {
        let beta = beta.vertices(p_max);
        let lowest = beta.iter().map(|(_, a)| f(a)).fold(0.0, f64::min);
        let cells = cells
            .iter()
            .map(|c| {
                let comps = c.components.iter().map(|poly| poly.iter().map(|(p, a)| (f(p), f(a))).collect()).collect();
                (c.cell_id().to_string(), comps)
            })
            .collect();
        Self { n, p_max: f(p_max), alpha_min: (lowest - 0.25).floor(), beta, cells }
    }

    fn x(&self, p: f64) -> f64 {
        MARGIN + p / self.p_max * (WIDTH - 2.0 * MARGIN)
    }

    fn y(&self, alpha: f64) -> f64 {
        MARGIN + alpha / self.alpha_min * (HEIGHT - 2.0 * MARGIN)
    }

    fn path(&self, pts: &[(f64, f64)]) -> String {
        pts.iter().map(|&(p, a)| format!("{:.2},{:.2}", self.x(p), self.y(a))).collect::<Vec<_>>().join(" ")
    }

    /// Shoelace area in pixels.
    fn pixel_area(&self, poly: &[(f64, f64)]) -> f64 {
        let k = poly.len();
        let twice: f64 = (0..k)
            .map(|i| {
                let (p0, a0) = poly[i];
                let (p1, a1) = poly[(i + 1) % k];
                self.x(p0) * self.y(a1) - self.x(p1) * self.y(a0)
            })
            .sum();
        twice.abs() / 2.0
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">"#
        );
        let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);

        for (i, (id, comps)) in self.cells.iter().enumerate() {
            let fill = FILLS[i % FILLS.len()];
            for poly in comps {
                let _ = writeln!(
                    s,
                    r#"<polygon points="{}" fill="{fill}" stroke="black" stroke-width="0.6"/>"#,
                    self.path(poly)
                );
            }
            // label the largest component at its vertex mean, if the label fits
            let area = |c: &Polygon| self.pixel_area(c);
            if let Some(poly) = comps.iter().max_by(|a, b| area(a).total_cmp(&area(b))) {
                if area(poly) >= 40.0 * id.len() as f64 * 14.0 {
                    let k = poly.len() as f64;
                    let (cp, ca) = poly.iter().fold((0.0, 0.0), |(x, y), &(p, a)| (x + p / k, y + a / k));
                    let _ = writeln!(
                        s,
                        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{id}</text>"#,
                        self.x(cp),
                        self.y(ca) + 4.0
                    );
                }
            }
        }

        let beta: Vec<(f64, f64)> = self.beta.iter().map(|(p, a)| (f(p), f(a))).collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="black" stroke-width="3" stroke-linejoin="round"/>"#,
            self.path(&beta)
        );

        // axes
        let (x0, x1, y0, y1) = (self.x(0.0), self.x(self.p_max), self.y(0.0), self.y(self.alpha_min));
        let _ = writeln!(s, r#"<line x1="{x0:.2}" y1="{y1:.2}" x2="{x1:.2}" y2="{y1:.2}" stroke="black"/>"#);
        let _ = writeln!(s, r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x0:.2}" y2="{y1:.2}" stroke="black"/>"#);
        let mut last_label = f64::NEG_INFINITY;
        let mut lowered = false;
        for (p, _) in self.beta.iter().skip(1) {
            let x = self.x(f(p));
            lowered = x - last_label < 30.0 && !lowered;
            last_label = x;
            let drop = if lowered { 11.0 } else { 0.0 };
            let _ = writeln!(s, r#"<line x1="{x:.2}" y1="{y1:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#, y1 + 5.0);
            let _ = writeln!(
                s,
                r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle" font-size="9">{}</text>"#,
                y1 + 17.0 + drop,
                fmt_tick(p)
            );
        }
        let mut a = 0.0;
        while a >= self.alpha_min {
            let y = self.y(a);
            let _ = writeln!(s, r#"<line x1="{:.2}" y1="{y:.2}" x2="{x0:.2}" y2="{y:.2}" stroke="black"/>"#, x0 - 5.0);
            let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{a}</text>"#, x0 - 8.0, y + 4.0);
            a -= 1.0;
        }
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">p</text>"#, (x0 + x1) / 2.0, y1 + 46.0);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">α</text>"#, x0 - 40.0, (y0 + y1) / 2.0);
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="13">β({}, p), p ≤ {}</text>"#,
            (x0 + x1) / 2.0,
            MARGIN - 24.0,
            self.n,
            fmt_tick(&self.beta.last().expect("endpoint").0)
        );
        s.push_str("</svg>\n");
        s
    }
}
