//! Text table and SVG ray picture of a diagram.

use std::fmt::Write as _;

use scattering::permissible::{classify, QuadraticData};
use scattering::{Generators, ScatteringDiagram};

fn source_label(d: &ScatteringDiagram) -> String {
    match d.source() {
        Generators::Kronecker { ell1, ell2 } => format!("(l1,l2)=({ell1},{ell2})"),
        Generators::Polynomial { p1, p2 } => {
            let join = |p: &[scattering::Rational]| {
                p.iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            format!("p1=[{}] p2=[{}]", join(p1), join(p2))
        }
        Generators::Custom => "custom".to_string(),
    }
}

/// One row `(a,b): f(z)` per wall, directions padded to a common width.
pub fn text(d: &ScatteringDiagram) -> String {
    let mut out = format!(
        "# {} order {}; z = (tx)^a (ty)^b on the ray (a,b), f known to z^floor(order/(a+b))\n",
        source_label(d),
        d.order()
    );
    let labels: Vec<String> = d.walls().map(|w| w.direction().to_string()).collect();
    let width = labels.iter().map(String::len).max().unwrap_or(0);
    for (label, w) in labels.iter().zip(d.walls()) {
        let _ = writeln!(out, "{:>width$}: {}", label, w.function());
    }
    out
}

const SIZE: f64 = 560.0;
const MARGIN: f64 = 40.0;

fn num(x: f64) -> String {
    format!("{x:.3}")
}

/// First-quadrant picture: one `ray` line per nontrivial wall, the initial
/// walls on the axes, and the cone between the roots shaded when real.
pub fn svg(d: &ScatteringDiagram) -> String {
    let origin = (MARGIN, SIZE - MARGIN);
    let len = SIZE - 2.0 * MARGIN;
    let point = |angle: f64, r: f64| (origin.0 + r * angle.cos(), origin.1 - r * angle.sin());
    let multiplicities = d.source().multiplicities().filter(|&(a, b)| a > 0 && b > 0);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
        s = SIZE
    );
    let _ = writeln!(
        out,
        "<title>{} order {}</title>",
        source_label(d),
        d.order()
    );
    out.push_str(
        "<style>.ray{stroke-width:1.5}.discrete{stroke:#1f4e9c}.cone{stroke:#b3541e;stroke-dasharray:4 3}\
         .axis{stroke:#000;stroke-width:2}text{font:10px monospace}</style>\n",
    );

    if let Some((l1, l2)) = multiplicities {
        let q = QuadraticData::new(l1, l2).expect("positive multiplicities");
        if q.has_real_roots() {
            // display only: float roots of z^2/l2 - z + 1/l1
            let s = (1.0 - 4.0 / f64::from(l1 * l2)).sqrt();
            let (lo, hi) = (
                f64::from(l2) / 2.0 * (1.0 - s),
                f64::from(l2) / 2.0 * (1.0 + s),
            );
            let (p, r) = (point(lo.atan(), len), point(hi.atan(), len));
            let _ = writeln!(
                out,
                r##"<path class="sector" d="M{} {} L{} {} A{} {} 0 0 0 {} {} Z" fill="#f3e3c3" stroke="none"/>"##,
                num(origin.0),
                num(origin.1),
                num(p.0),
                num(p.1),
                num(len),
                num(len),
                num(r.0),
                num(r.1)
            );
        }
    }

    for (x, y) in [(origin.0 + len, origin.1), (origin.0, origin.1 - len)] {
        let _ = writeln!(
            out,
            r#"<line class="axis" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            num(origin.0),
            num(origin.1),
            num(x),
            num(y)
        );
    }

    for w in d.walls() {
        let dir = w.direction();
        let angle = (dir.b() as f64).atan2(dir.a() as f64);
        let end = point(angle, len);
        let discrete = multiplicities
            .and_then(|(l1, l2)| classify(l1, l2, dir.a(), dir.b()).ok())
            .is_some_and(|c| c.is_discrete());
        let class = if discrete { "ray discrete" } else { "ray cone" };
        let leading = w
            .function()
            .coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, c)| !num_traits::Zero::is_zero(*c))
            .map(|(k, c)| match k {
                1 => format!("1+{c}z"),
                _ => format!("1+{c}z^{k}"),
            })
            .unwrap_or_else(|| "1".into());
        let _ = writeln!(
            out,
            r#"<line class="{class}" data-a="{}" data-b="{}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            dir.a(),
            dir.b(),
            num(origin.0),
            num(origin.1),
            num(end.0),
            num(end.1)
        );
        let label = point(angle, len + 4.0);
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}">{dir} {leading}</text>"#,
            num(label.0),
            num(label.1)
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_rows() {
        let d = ScatteringDiagram::kronecker(1, 1, 6).unwrap();
        let t = text(&d);
        assert_eq!(t.lines().nth(1), Some("(1,1): 1+z"));
        assert_eq!(t.lines().count(), 2);
    }

    #[test]
    fn svg_has_one_ray_per_wall() {
        let d = ScatteringDiagram::kronecker(2, 2, 12).unwrap();
        let s = svg(&d);
        assert_eq!(s.matches(r#"class="ray "#).count(), d.len());
        assert!(s.contains(r#"class="ray cone" data-a="1" data-b="1""#));
        assert!(s.contains(r#"class="ray discrete" data-a="1" data-b="2""#));
        assert_eq!(s, svg(&d));
    }
}
