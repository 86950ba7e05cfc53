//! SVG 1.1 plot of a logarithmic image in `(log|z₁|, log|z₂|)`.

use std::fmt::Write;

use rk_core::cx::CounterexampleDomain;
use rk_core::domain::Domain;
use rk_core::scalar::rational::to_f64;
use rk_core::scalar::Scalar;

const SIZE: f64 = 480.0;

/// `a·x + b·y < c`.
#[derive(Clone, Copy, Debug)]
struct HalfPlane {
    a: f64,
    b: f64,
    c: f64,
}

impl HalfPlane {
    fn value(&self, p: (f64, f64)) -> f64 {
        self.a * p.0 + self.b * p.1 - self.c
    }
}

#[derive(Clone, Copy, Debug)]
struct Segment {
    from: (f64, f64),
    to: (f64, f64),
}

pub struct Scene {
    halfplanes: Vec<HalfPlane>,
    directions: Vec<(f64, f64)>,
    slits: Vec<(&'static str, Segment)>,
    marked: Vec<(&'static str, HalfPlane)>,
}

impl Scene {
    pub fn plain(d: &Domain, lineality: Option<&[Scalar]>) -> Result<Self, String> {
        let region = d.log_image().map_err(|e| e.to_string())?;
        let halfplanes = region
            .constraints()
            .iter()
            .map(|c| {
                let w = c.weights();
                HalfPlane { a: w[0].to_f64(), b: w[1].to_f64(), c: to_f64(c.bound()).ln() }
            })
            .collect();
        let directions = lineality.map(|v| vec![(v[0].to_f64(), v[1].to_f64())]).unwrap_or_default();
        Ok(Self { halfplanes, directions, slits: Vec::new(), marked: Vec::new() })
    }

    /// Ambient band, the two slits, and the level line through both slit ends.
    pub fn counterexample(d: &CounterexampleDomain) -> Self {
        let g = d.gamma().to_f64();
        let s = d.slits_log();
        let far = 1e6;
        let level_end = -g * s.i2_y;
        Self {
            halfplanes: vec![HalfPlane { a: 1.0, b: g, c: 0.0 }],
            directions: vec![(g, -1.0)],
            slits: vec![
                ("slit-i1", Segment { from: (s.i1_x, -far), to: (s.i1_x, s.i1_y_max) }),
                ("slit-i2", Segment { from: (s.i2_x_min, s.i2_y), to: (level_end, s.i2_y) }),
            ],
            marked: vec![("level-half", HalfPlane { a: 1.0, b: g, c: -(2f64.ln()) })],
        }
    }
}

fn clip(poly: &[(f64, f64)], h: &HalfPlane) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for (i, &p) in poly.iter().enumerate() {
        let q = poly[(i + 1) % poly.len()];
        let (vp, vq) = (h.value(p), h.value(q));
        if vp <= 0.0 {
            out.push(p);
        }
        if (vp < 0.0) != (vq < 0.0) && vp != vq {
            let t = vp / (vp - vq);
            out.push((p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1)));
        }
    }
    out
}

/// Clips a segment to the viewport (Liang–Barsky).
fn clip_segment(s: Segment, v: [f64; 4]) -> Option<Segment> {
    let (dx, dy) = (s.to.0 - s.from.0, s.to.1 - s.from.1);
    let (mut t0, mut t1) = (0f64, 1f64);
    for (p, q) in [(-dx, s.from.0 - v[0]), (dx, v[1] - s.from.0), (-dy, s.from.1 - v[2]), (dy, v[3] - s.from.1)] {
        if p == 0.0 {
            if q < 0.0 {
                return None;
            }
            continue;
        }
        let r = q / p;
        if p < 0.0 {
            t0 = t0.max(r);
        } else {
            t1 = t1.min(r);
        }
        if t0 > t1 {
            return None;
        }
    }
    Some(Segment { from: (s.from.0 + t0 * dx, s.from.1 + t0 * dy), to: (s.from.0 + t1 * dx, s.from.1 + t1 * dy) })
}

/// The part of `a·x + b·y = c` inside the viewport.
fn line_segment(h: &HalfPlane, v: [f64; 4]) -> Option<Segment> {
    let n = h.a.hypot(h.b);
    if n == 0.0 {
        return None;
    }
    let p0 = (h.a * h.c / (n * n), h.b * h.c / (n * n));
    let dir = (-h.b / n, h.a / n);
    let reach = (v[1] - v[0]).abs() + (v[3] - v[2]).abs() + p0.0.abs() + p0.1.abs();
    clip_segment(
        Segment { from: (p0.0 - reach * dir.0, p0.1 - reach * dir.1), to: (p0.0 + reach * dir.0, p0.1 + reach * dir.1) },
        v,
    )
}

struct Frame {
    v: [f64; 4],
}

impl Frame {
    fn px(&self, p: (f64, f64)) -> (f64, f64) {
        let x = (p.0 - self.v[0]) / (self.v[1] - self.v[0]) * SIZE;
        let y = SIZE - (p.1 - self.v[2]) / (self.v[3] - self.v[2]) * SIZE;
        // Rounded to the printed precision, then + 0.0 folds −0: no "-0.000" in the output.
        let r = |t: f64| (t * 1000.0).round() / 1000.0 + 0.0;
        (r(x), r(y))
    }

    fn line(&self, out: &mut String, s: Segment, attrs: &str) {
        let (a, b) = (self.px(s.from), self.px(s.to));
        let _ = writeln!(out, r#"  <line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" {attrs}/>"#, a.0, a.1, b.0, b.1);
    }
}

pub fn svg(scene: &Scene, v: [f64; 4]) -> String {
    let f = Frame { v };
    let mut poly = vec![(v[0], v[2]), (v[1], v[2]), (v[1], v[3]), (v[0], v[3])];
    for h in &scene.halfplanes {
        poly = clip(&poly, h);
    }
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(
        out,
        r#"  <desc>log|z1| in [{:.3}, {:.3}], log|z2| in [{:.3}, {:.3}]</desc>"#,
        v[0], v[1], v[2], v[3]
    );
    let _ = writeln!(
        out,
        r##"  <defs><marker id="arrow" markerWidth="8" markerHeight="8" refX="6" refY="4" orient="auto"><path d="M0,0 L8,4 L0,8 z" fill="#b03030"/></marker></defs>"##
    );
    let _ = writeln!(out, r##"  <rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="#ffffff" stroke="#000000"/>"##);
    if poly.len() >= 3 {
        let d: Vec<String> = poly.iter().map(|&p| f.px(p)).map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
        let _ = writeln!(out, r##"  <polygon class="region" points="{}" fill="#9ec5e8" fill-opacity="0.6" stroke="none"/>"##, d.join(" "));
    }
    for (axis, seg) in [
        ("axis-x", Segment { from: (v[0], 0.0), to: (v[1], 0.0) }),
        ("axis-y", Segment { from: (0.0, v[2]), to: (0.0, v[3]) }),
    ] {
        if let Some(s) = clip_segment(seg, v) {
            f.line(&mut out, s, &format!(r##"class="axis" id="{axis}" stroke="#888888" stroke-width="0.5""##));
        }
    }
    for h in &scene.halfplanes {
        if let Some(s) = line_segment(h, v) {
            f.line(&mut out, s, r##"class="boundary" stroke="#1f4e79" stroke-width="1.5""##);
        }
    }
    for (id, h) in &scene.marked {
        if let Some(s) = line_segment(h, v) {
            f.line(&mut out, s, &format!(r##"class="level" id="{id}" stroke="#2e7d32" stroke-dasharray="6,4""##));
        }
    }
    for (id, seg) in &scene.slits {
        if let Some(s) = clip_segment(*seg, v) {
            f.line(&mut out, s, &format!(r##"class="slit" id="{id}" stroke="#d32f2f" stroke-width="3""##));
        }
    }
    if poly.len() >= 3 {
        let n = poly.len() as f64;
        let c = (poly.iter().map(|p| p.0).sum::<f64>() / n, poly.iter().map(|p| p.1).sum::<f64>() / n);
        let len = 0.2 * (v[1] - v[0]).min(v[3] - v[2]);
        for d in &scene.directions {
            let norm = d.0.hypot(d.1);
            if norm == 0.0 {
                continue;
            }
            let u = (d.0 / norm * len, d.1 / norm * len);
            for s in [-1.0, 1.0] {
                let seg = Segment { from: c, to: (c.0 + s * u.0, c.1 + s * u.1) };
                f.line(&mut out, seg, r##"class="lineality" stroke="#b03030" stroke-width="2" marker-end="url(#arrow)""##);
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halfplane_clip_keeps_inside() {
        let sq = vec![(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)];
        let p = clip(&sq, &HalfPlane { a: 1.0, b: 0.0, c: 0.0 });
        assert!(p.iter().all(|q| q.0 <= 1e-12));
        assert_eq!(p.len(), 4);
    }

    #[test]
    fn segment_outside_viewport_vanishes() {
        let s = Segment { from: (5.0, 5.0), to: (6.0, 6.0) };
        assert!(clip_segment(s, [-1.0, 1.0, -1.0, 1.0]).is_none());
        let l = line_segment(&HalfPlane { a: 0.0, b: 1.0, c: 0.5 }, [-1.0, 1.0, -1.0, 1.0]).unwrap();
        assert!((l.from.1 - 0.5).abs() < 1e-12 && (l.to.0 - l.from.0).abs() > 1.99);
    }
}
