//! Deterministic SVG figures. Geometry stays rational up to the final
//! formatting, where coordinates are printed with six decimals.

use std::fmt::Write;

use geoextract_core::octants::compute_cmax;
use geoextract_core::{Axis, Coloring, Instance, ObjectClass, Orientation, Rational, Result};

const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e"];
const CANVAS: i64 = 600;
const MARGIN: i64 = 20;
const CROSS: i64 = 5;

enum Shape {
    Line { from: (Rational, Rational), to: (Rational, Rational), arrow: bool },
    Triangle([(Rational, Rational); 3]),
}

struct Figure {
    shapes: Vec<Shape>,
    crosses: Vec<(Rational, Rational)>,
}

fn r(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn bbox<'a>(coords: impl Iterator<Item = &'a (Rational, Rational)>) -> Option<[Rational; 4]> {
    let mut b: Option<[Rational; 4]> = None;
    for (x, y) in coords {
        b = Some(match b {
            None => [x.clone(), x.clone(), y.clone(), y.clone()],
            Some([x0, x1, y0, y1]) => [
                Rational::min_of(&x0, x).clone(),
                Rational::max_of(&x1, x).clone(),
                Rational::min_of(&y0, y).clone(),
                Rational::max_of(&y1, y).clone(),
            ],
        });
    }
    b
}

fn target_xy(instance: &Instance) -> Vec<(Rational, Rational)> {
    instance
        .points()
        .iter()
        .map(|p| match p.0.as_slice() {
            [x] => (x.clone(), r(0)),
            [x, y, ..] => (x.clone(), y.clone()),
            [] => (r(0), r(0)),
        })
        .collect()
}

fn figure(instance: &Instance) -> Result<Figure> {
    let crosses = target_xy(instance);
    let mut shapes = Vec::with_capacity(instance.len());
    match instance.class() {
        ObjectClass::Intervals => {
            // interval i drawn as a bar at height i + 1, targets on the axis
            for (i, iv) in instance.intervals()?.into_iter().enumerate() {
                let y = r(i as i64 + 1);
                shapes.push(Shape::Line { from: (iv.a, y.clone()), to: (iv.b, y), arrow: false });
            }
        }
        ObjectClass::Segments => {
            for s in instance.segments()? {
                let (from, to) = match s.axis {
                    Axis::Horizontal => ((s.lo, s.line.clone()), (s.hi, s.line)),
                    Axis::Vertical => ((s.line.clone(), s.lo), (s.line, s.hi)),
                };
                shapes.push(Shape::Line { from, to, arrow: false });
            }
        }
        ObjectClass::Rays => {
            let rays = instance.rays()?;
            let apexes: Vec<(Rational, Rational)> = rays.iter().map(|ray| (ray.x.clone(), ray.y.clone())).collect();
            let [x0, x1, y0, y1] = bbox(apexes.iter().chain(&crosses)).unwrap_or([r(0), r(0), r(0), r(0)]);
            let (x0, x1, y0, y1) = (&x0 - &r(1), &x1 + &r(1), &y0 - &r(1), &y1 + &r(1));
            for ray in rays {
                let to = match ray.orientation {
                    Orientation::Right => (x1.clone(), ray.y.clone()),
                    Orientation::Left => (x0.clone(), ray.y.clone()),
                    Orientation::Up => (ray.x.clone(), y1.clone()),
                    Orientation::Down => (ray.x.clone(), y0.clone()),
                };
                shapes.push(Shape::Line { from: (ray.x, ray.y), to, arrow: true });
            }
        }
        ObjectClass::Octants => {
            let octants = instance.octants()?;
            let all: Vec<usize> = (0..octants.len()).collect();
            let mut plane = compute_cmax(&octants, &all)?;
            for o in &octants {
                let [a, b, c] = &o.apex;
                let s = a + b + c + r(1);
                plane = Rational::max_of(&plane, &s).clone();
            }
            for p in instance.points() {
                let s: Rational = p.0.iter().sum();
                plane = Rational::max_of(&plane, &s).clone();
            }
            for o in octants {
                let [a, b, c] = o.apex;
                let s = &plane - &c;
                shapes.push(Shape::Triangle([
                    (a.clone(), b.clone()),
                    (&s - &b, b.clone()),
                    (a.clone(), &s - &a),
                ]));
            }
        }
    }
    Ok(Figure { shapes, crosses })
}

/// Palette slot of object `index`; colors beyond four wrap around.
fn slot(coloring: &Coloring, index: usize) -> usize {
    let c = coloring.colors.get(index).copied().unwrap_or(1).max(1);
    (c as usize - 1) % PALETTE.len()
}

/// Renders `instance` with objects stroked by their color in `coloring`,
/// targets as crosses, and rays clipped to a padded viewport.
pub fn render_svg(instance: &Instance, coloring: &Coloring) -> Result<String> {
    let fig = figure(instance)?;
    let mut coords: Vec<&(Rational, Rational)> = fig.crosses.iter().collect();
    for s in &fig.shapes {
        match s {
            Shape::Line { from, to, .. } => coords.extend([from, to]),
            Shape::Triangle(v) => coords.extend(v.iter()),
        }
    }
    let [x0, x1, y0, y1] = bbox(coords.into_iter()).unwrap_or([r(0), r(1), r(0), r(1)]);
    let span = Rational::max_of(&(&x1 - &x0), &(&y1 - &y0)).clone();
    let scale = if span.is_zero() { r(1) } else { &r(CANVAS) / &span };
    let sx = |x: &Rational| (&r(MARGIN) + &(&(x - &x0) * &scale)).to_decimal6();
    let sy = |y: &Rational| (&r(MARGIN) + &(&(&y1 - y) * &scale)).to_decimal6();
    let width = (&r(2 * MARGIN) + &(&(&x1 - &x0) * &scale)).to_decimal6();
    let height = (&r(2 * MARGIN) + &(&(&y1 - &y0) * &scale)).to_decimal6();

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    out.push_str("<defs>\n");
    for (i, c) in PALETTE.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<marker id="arrow-{}" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto-start-reverse"><path d="M 0 0 L 10 5 L 0 10 z" fill="{c}"/></marker>"#,
            i + 1
        );
    }
    out.push_str("</defs>\n");
    let _ = writeln!(out, r##"<rect width="{width}" height="{height}" fill="#ffffff"/>"##);

    for (i, shape) in fig.shapes.iter().enumerate() {
        let slot = slot(coloring, i);
        let stroke = PALETTE[slot];
        match shape {
            Shape::Line { from, to, arrow } => {
                let marker = if *arrow {
                    format!(r#" marker-end="url(#arrow-{})""#, slot + 1)
                } else {
                    String::new()
                };
                let _ = writeln!(
                    out,
                    r#"<line class="object" data-index="{i}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{stroke}" stroke-width="3"{marker}/>"#,
                    sx(&from.0),
                    sy(&from.1),
                    sx(&to.0),
                    sy(&to.1)
                );
            }
            Shape::Triangle(v) => {
                let pts: Vec<String> = v.iter().map(|(x, y)| format!("{},{}", sx(x), sy(y))).collect();
                let _ = writeln!(
                    out,
                    r#"<polygon class="object" data-index="{i}" points="{}" fill="{stroke}" fill-opacity="0.15" stroke="{stroke}" stroke-width="2"/>"#,
                    pts.join(" ")
                );
            }
        }
    }
    let d = r(CROSS);
    for (x, y) in &fig.crosses {
        let (px, py) = (&r(MARGIN) + &(&(x - &x0) * &scale), &r(MARGIN) + &(&(&y1 - y) * &scale));
        let _ = writeln!(
            out,
            r##"<path class="target" d="M {} {} L {} {} M {} {} L {} {}" stroke="#000000" stroke-width="1.5"/>"##,
            (&px - &d).to_decimal6(),
            (&py - &d).to_decimal6(),
            (&px + &d).to_decimal6(),
            (&py + &d).to_decimal6(),
            (&px - &d).to_decimal6(),
            (&py + &d).to_decimal6(),
            (&px + &d).to_decimal6(),
            (&py - &d).to_decimal6()
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
