//! Static SVG drawings: the Newton polygon and a log-log decay plot.

use std::fmt::Write;

use crate::newton::{Face, NewtonPolygon, RayDirection};
use crate::polyring::to_f64;

const SIZE: f64 = 420.0;
const PAD: f64 = 40.0;

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        PAD + (x - self.x0) / (self.x1 - self.x0) * (SIZE - 2.0 * PAD)
    }

    fn py(&self, y: f64) -> f64 {
        SIZE - PAD - (y - self.y0) / (self.y1 - self.y0) * (SIZE - 2.0 * PAD)
    }

    fn point(&self, x: f64, y: f64) -> String {
        format!("{:.2},{:.2}", self.px(x), self.py(y))
    }
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    let _ = writeln!(out, r##"<rect width="{SIZE}" height="{SIZE}" fill="#fff"/>"##);
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Newton polygon with its faces, the bisectrix and the point `(d, d)`.
pub fn polygon_svg(poly: &NewtonPolygon, title: &str) -> String {
    let d = to_f64(poly.distance());
    let extent = poly
        .vertices()
        .iter()
        .map(|&(a, b)| f64::from(a.max(b)))
        .fold(d, f64::max)
        .ceil()
        + 1.0;
    let f = Frame {
        x0: 0.0,
        x1: extent,
        y0: 0.0,
        y1: extent,
    };
    let mut out = String::new();
    header(&mut out, title);

    // lattice grid
    for k in 0..=extent as u32 {
        let k = f64::from(k);
        let _ = writeln!(
            out,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#eee"/>"##,
            f.px(k),
            f.py(0.0),
            f.px(k),
            f.py(extent)
        );
        let _ = writeln!(
            out,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#eee"/>"##,
            f.px(0.0),
            f.py(k),
            f.px(extent),
            f.py(k)
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{k}</text>"#,
            f.px(k),
            f.py(0.0) + 14.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{k}</text>"#,
            f.px(0.0) - 5.0,
            f.py(k) + 4.0
        );
    }

    // boundary: vertical ray, compact edges, horizontal ray
    let mut boundary: Vec<(f64, f64)> = Vec::new();
    if let Some(&(a, _)) = poly.vertices().first() {
        boundary.push((f64::from(a), extent));
    }
    boundary.extend(poly.vertices().iter().map(|&(a, b)| (f64::from(a), f64::from(b))));
    if let Some(&(_, b)) = poly.vertices().last() {
        boundary.push((extent, f64::from(b)));
    }
    let mut region: Vec<String> = boundary.iter().map(|&(x, y)| f.point(x, y)).collect();
    region.push(f.point(extent, extent));
    let _ = writeln!(
        out,
        r##"<polygon points="{}" fill="#dbe8f6" stroke="none"/>"##,
        region.join(" ")
    );
    for face in poly.edges() {
        let (a, b) = match face {
            Face::Edge { from, to, .. } => (
                (f64::from(from.0), f64::from(from.1)),
                (f64::from(to.0), f64::from(to.1)),
            ),
            Face::Ray { origin, direction, .. } => {
                let v = (f64::from(origin.0), f64::from(origin.1));
                match direction {
                    RayDirection::Right => (v, (extent, v.1)),
                    RayDirection::Up => (v, (v.0, extent)),
                }
            }
            Face::Vertex(_) => continue,
        };
        let _ = writeln!(
            out,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#1f4e8c" stroke-width="2"/>"##,
            f.px(a.0),
            f.py(a.1),
            f.px(b.0),
            f.py(b.1)
        );
    }
    for &(a, b) in poly.vertices() {
        let _ = writeln!(
            out,
            r##"<circle cx="{:.2}" cy="{:.2}" r="4" fill="#1f4e8c"/>"##,
            f.px(f64::from(a)),
            f.py(f64::from(b))
        );
    }
    let _ = writeln!(
        out,
        r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#999" stroke-dasharray="4 3"/>"##,
        f.px(0.0),
        f.py(0.0),
        f.px(extent),
        f.py(extent)
    );
    let _ = writeln!(
        out,
        r##"<circle cx="{:.2}" cy="{:.2}" r="5" fill="none" stroke="#c0392b" stroke-width="2"/>"##,
        f.px(d),
        f.py(d)
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}">(d, d), d = {}</text>"#,
        f.px(d) + 8.0,
        f.py(d) - 8.0,
        crate::polyring::format_rational(poly.distance())
    );
    out.push_str("</svg>\n");
    out
}

/// `log₂|I|` against `log₂ λ`, with the fitted line and a reference slope.
pub fn decay_svg(lambdas: &[f64], magnitudes: &[f64], gamma_hat: f64, reference_gamma: f64, title: &str) -> String {
    let xs: Vec<f64> = lambdas.iter().map(|l| l.log2()).collect();
    let ys: Vec<f64> = magnitudes.iter().map(|m| m.log2()).collect();
    let mut out = String::new();
    header(&mut out, title);
    if xs.is_empty() {
        out.push_str("</svg>\n");
        return out;
    }
    let (x0, x1) = (xs[0].floor(), xs[xs.len() - 1].ceil().max(xs[0].floor() + 1.0));
    let ymin = ys.iter().copied().fold(f64::INFINITY, f64::min).floor() - 1.0;
    let ymax = ys.iter().copied().fold(f64::NEG_INFINITY, f64::max).ceil() + 1.0;
    let f = Frame {
        x0,
        x1,
        y0: ymin,
        y1: ymax,
    };
    let _ = writeln!(
        out,
        r##"<rect x="{PAD}" y="{PAD}" width="{w}" height="{w}" fill="none" stroke="#ccc"/>"##,
        w = SIZE - 2.0 * PAD
    );
    for k in x0 as i32..=x1 as i32 {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">2^{k}</text>"#,
            f.px(f64::from(k)),
            SIZE - PAD + 14.0
        );
    }
    // lines anchored at the mean of the data
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let my = ys.iter().sum::<f64>() / ys.len() as f64;
    for (slope, colour, dash) in [
        (-gamma_hat, "#c0392b", ""),
        (-reference_gamma, "#555", r#" stroke-dasharray="5 4""#),
    ] {
        let _ = writeln!(
            out,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{colour}"{dash}/>"#,
            f.px(x0),
            f.py(my + slope * (x0 - mx)),
            f.px(x1),
            f.py(my + slope * (x1 - mx))
        );
    }
    for (x, y) in xs.iter().zip(&ys) {
        let _ = writeln!(
            out,
            r##"<circle cx="{:.2}" cy="{:.2}" r="3.5" fill="#1f4e8c"/>"##,
            f.px(*x),
            f.py(*y)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{PAD}" y="{:.2}">fitted slope {:.4}, reference {:.4}</text>"#,
        PAD - 10.0,
        -gamma_hat,
        -reference_gamma
    );
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::polygon_of;
    use crate::polyring::parse_polynomial;

    #[test]
    fn polygon_svg_marks_distance() {
        let poly = polygon_of(&parse_polynomial("x^2*y + y^3").unwrap()).unwrap();
        let svg = polygon_svg(&poly, "x^2*y + y^3");
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("d = 3/2"));
        assert_eq!(svg.matches("<circle").count(), poly.vertices().len() + 1);
        assert_eq!(svg, polygon_svg(&poly, "x^2*y + y^3"));
    }

    #[test]
    fn decay_svg_has_one_marker_per_point() {
        let svg = decay_svg(&[64.0, 128.0, 256.0], &[0.1, 0.05, 0.025], 1.0, 1.0, "t");
        assert_eq!(svg.matches("<circle").count(), 3);
        assert!(svg.contains("fitted slope -1.0000"));
    }
}
