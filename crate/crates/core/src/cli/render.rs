//! SVG drawings of base surfaces, finite coverings and windows of the infinite covering.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;

use crate::certificates::base_cylinders;
use crate::covering::{build_cover, cover_cylinders};
use crate::cylinders::{Direction, Strip};
use crate::error::{Error, Result};
use crate::field::RealAlg;
use crate::flat_surface::{build_base, EdgeRef, TranslationSurface, Vec2};
use crate::infinite_cover::std_infinite_monodromy;

/// What to draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RenderTarget {
    Base,
    Cover { d: usize },
    /// Copies `-w..=w` of the infinite covering.
    InfiniteWindow { w: usize },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Palette {
    #[default]
    Light,
    Dark,
    Mono,
}

impl Palette {
    fn background(self) -> &'static str {
        match self {
            Palette::Light | Palette::Mono => "#ffffff",
            Palette::Dark => "#1e1e24",
        }
    }

    fn ink(self) -> &'static str {
        match self {
            Palette::Light | Palette::Mono => "#202020",
            Palette::Dark => "#e8e8e8",
        }
    }

    fn fill(self, k: usize) -> &'static str {
        const LIGHT: [&str; 6] = ["#8dd3c7", "#fdb462", "#bebada", "#fb8072", "#80b1d3", "#b3de69"];
        const DARK: [&str; 6] = ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02"];
        const MONO: [&str; 4] = ["#d0d0d0", "#a0a0a0", "#707070", "#e8e8e8"];
        match self {
            Palette::Light => LIGHT[k % LIGHT.len()],
            Palette::Dark => DARK[k % DARK.len()],
            Palette::Mono => MONO[k % MONO.len()],
        }
    }
}

/// A drawing request.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RenderSpec {
    pub n: usize,
    pub target: RenderTarget,
    /// Shade the cylinders in direction `R^l (1, 0)`.
    pub overlay: Option<i64>,
    pub palette: Palette,
}

impl RenderSpec {
    pub fn validate(&self) -> Result<()> {
        match self.target {
            RenderTarget::InfiniteWindow { w: 0 } => {
                Err(Error::InvalidSurface("the window of the infinite covering needs w >= 1".into()))
            }
            RenderTarget::Cover { d } if d < 2 => Err(Error::InvalidDegree(d)),
            _ => Ok(()),
        }
    }
}

fn num(x: &RealAlg) -> String {
    x.approx(20)
}

fn f(x: &RealAlg) -> f64 {
    num(x).parse().unwrap_or_else(|_| x.to_f64())
}

/// One polygon to draw: its vertices, horizontal offset and edge captions.
struct Piece {
    vertices: Vec<Vec2>,
    offset: f64,
    captions: Vec<String>,
    bands: Vec<(usize, RealAlg, RealAlg)>,
}

/// Parts of the convex polygon `pts` with `lo <= cross(v, x) <= hi`.
fn clip_band(pts: &[(f64, f64)], v: (f64, f64), lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let cross = |p: (f64, f64)| v.0 * p.1 - v.1 * p.0;
    let clip = |pts: Vec<(f64, f64)>, keep: &dyn Fn(f64) -> f64| -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        for i in 0..pts.len() {
            let (a, b) = (pts[i], pts[(i + 1) % pts.len()]);
            let (fa, fb) = (keep(cross(a)), keep(cross(b)));
            if fa >= 0.0 {
                out.push(a);
            }
            if (fa >= 0.0) != (fb >= 0.0) {
                let t = fa / (fa - fb);
                out.push((a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)));
            }
        }
        out
    };
    let lower = clip(pts.to_vec(), &|c| c - lo);
    clip(lower, &|c| hi - c)
}

fn pieces_for(s: &TranslationSurface, copies: &[i64], caption: &dyn Fn(EdgeRef, i64) -> String) -> (Vec<Piece>, f64) {
    let (mut lo, mut hi) = (f64::MAX, f64::MIN);
    for p in s.polygons() {
        for v in &p.vertices {
            lo = lo.min(f(&v.x));
            hi = hi.max(f(&v.x));
        }
    }
    let width = hi - lo + 0.6;
    let mut out = Vec::new();
    for (slot, &c) in copies.iter().enumerate() {
        for (pi, p) in s.polygons().iter().enumerate() {
            out.push(Piece {
                vertices: p.vertices.clone(),
                offset: slot as f64 * width - lo,
                captions: (0..p.len()).map(|side| caption(EdgeRef::new(pi, side), c)).collect(),
                bands: Vec::new(),
            });
        }
    }
    (out, width * copies.len() as f64)
}

fn add_bands(pieces: &mut [Piece], per_copy: usize, copies: usize, cylinders: &[(usize, Vec<Strip>)]) {
    for (k, strips) in cylinders {
        for st in strips {
            for c in 0..copies {
                if let Some(p) = pieces.get_mut(c * per_copy + st.polygon) {
                    p.bands.push((*k, st.t_low.clone(), st.t_high.clone()));
                }
            }
        }
    }
}

/// Renders the drawing as an SVG 1.1 document.
pub fn render_svg(req: &RenderSpec) -> Result<String> {
    req.validate()?;
    let n = req.n;
    let base = build_base(n)?;
    let dir = req.overlay.map(|l| Direction::rotated(n, l));
    let per_copy = base.polygons().len();
    let (mut pieces, width) = match req.target {
        RenderTarget::Base => {
            let (mut p, w) = pieces_for(&base, &[0], &|e, _| base.edge_name(e).to_string());
            if let Some(l) = req.overlay {
                let cyl: Vec<(usize, Vec<Strip>)> = base_cylinders(n, l)?
                    .iter()
                    .enumerate()
                    .map(|(k, c)| (k, c.strips.clone()))
                    .collect();
                add_bands(&mut p, per_copy, 1, &cyl);
            }
            (p, w)
        }
        RenderTarget::Cover { d } => {
            let c = build_cover(n, d)?;
            let copies: Vec<i64> = (0..d as i64).collect();
            let m = &c.monodromy;
            let (mut p, w) = pieces_for(&base, &copies, &|e, copy| match base.label(e) {
                Some(l) => format!("{}→{}", base.edge_name(e), m.step(copy as usize, l)),
                None => base.edge_name(e).to_string(),
            });
            if let Some(dir) = &dir {
                let cyl: Vec<(usize, Vec<Strip>)> = cover_cylinders(&c, dir)?
                    .into_iter()
                    .enumerate()
                    .map(|(k, c)| (k, c.strips))
                    .collect();
                add_bands(&mut p, 1, 1, &cyl);
            }
            (p, w)
        }
        RenderTarget::InfiniteWindow { w } => {
            let m = std_infinite_monodromy(n)?;
            let copies: Vec<i64> = (-(w as i64)..=w as i64).collect();
            let (mut p, width) = pieces_for(&base, &copies, &|e, copy| match base.label(e) {
                Some(l) => format!("{}→{}", base.edge_name(e), m.letter(l).apply(copy)),
                None => base.edge_name(e).to_string(),
            });
            if let Some(l) = req.overlay {
                let cyl: Vec<(usize, Vec<Strip>)> = base_cylinders(n, l)?
                    .iter()
                    .enumerate()
                    .map(|(k, c)| (k, c.strips.clone()))
                    .collect();
                add_bands(&mut p, per_copy, copies.len(), &cyl);
            }
            (p, width)
        }
    };
    let top = base
        .polygons()
        .iter()
        .flat_map(|p| p.vertices.iter().map(|v| f(&v.y).abs()))
        .fold(0.0, f64::max);
    let height = 2.0 * top + 0.6;
    let scale = 120.0;
    let pal = req.palette;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{:.0}" height="{:.0}" viewBox="0 0 {:.4} {:.4}">"#,
        width * scale,
        height * scale,
        width,
        height
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="{}"/>"#, pal.background());
    let _ = writeln!(
        svg,
        r#"<g transform="translate(0 {:.6}) scale(1 -1)">"#,
        height / 2.0
    );
    let v = dir.as_ref().map(|d| (f(&d.vector.x), f(&d.vector.y)));
    for piece in &pieces {
        let pts: Vec<String> = piece
            .vertices
            .iter()
            .map(|p| format!("{},{}", num(&p.x), num(&p.y)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<g transform="translate({:.6} 0)"><polygon points="{}" fill="none" stroke="{}" stroke-width="0.01"/>"#,
            piece.offset,
            pts.join(" "),
            pal.ink()
        );
        if let Some(v) = v {
            let poly: Vec<(f64, f64)> = piece.vertices.iter().map(|p| (f(&p.x), f(&p.y))).collect();
            for (k, lo, hi) in &piece.bands {
                let band = clip_band(&poly, v, f(lo), f(hi));
                if band.len() >= 3 {
                    let b: Vec<String> = band.iter().map(|(x, y)| format!("{:.6},{:.6}", x, y)).collect();
                    let _ = writeln!(
                        svg,
                        r#"<polygon points="{}" fill="{}" fill-opacity="0.6" stroke="none"/>"#,
                        b.join(" "),
                        pal.fill(*k)
                    );
                }
            }
        }
        let _ = writeln!(svg, "</g>");
    }
    let _ = writeln!(svg, "</g>");
    for piece in &mut pieces {
        let k = piece.vertices.len();
        let (cx, cy) = piece.vertices.iter().fold((0.0, 0.0), |(a, b), p| (a + f(&p.x), b + f(&p.y)));
        let (cx, cy) = (cx / k as f64, cy / k as f64);
        for (i, caption) in piece.captions.iter().enumerate() {
            let (a, b) = (&piece.vertices[i], &piece.vertices[(i + 1) % k]);
            let mx = (f(&a.x) + f(&b.x)) / 2.0;
            let my = (f(&a.y) + f(&b.y)) / 2.0;
            let (x, y) = (mx + 0.15 * (cx - mx) + piece.offset, -(my + 0.15 * (cy - my)) + height / 2.0);
            let _ = writeln!(
                svg,
                r#"<text x="{:.4}" y="{:.4}" font-size="0.08" font-family="sans-serif" text-anchor="middle" fill="{}">{}</text>"#,
                x,
                y,
                pal.ink(),
                caption
            );
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn band_clipping() {
        let square = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
        let b = clip_band(&square, (1.0, 0.0), 0.25, 0.5);
        let ys: Vec<f64> = b.iter().map(|p| p.1).collect();
        assert!(ys.iter().all(|&y| (0.25 - 1e-12..=0.5 + 1e-12).contains(&y)));
        assert_eq!(b.len(), 4);
    }

    #[test]
    fn svg_documents() {
        for target in [
            RenderTarget::Base,
            RenderTarget::Cover { d: 3 },
            RenderTarget::InfiniteWindow { w: 1 },
        ] {
            let s = render_svg(&RenderSpec {
                n: 5,
                target,
                overlay: Some(1),
                palette: Palette::Light,
            })
            .unwrap();
            assert!(s.starts_with("<?xml"));
            assert!(s.trim_end().ends_with("</svg>"));
            assert!(s.contains("fill-opacity"));
        }
        let bad = RenderSpec {
            n: 5,
            target: RenderTarget::InfiniteWindow { w: 0 },
            overlay: None,
            palette: Palette::Mono,
        };
        assert!(render_svg(&bad).is_err());
    }
}
