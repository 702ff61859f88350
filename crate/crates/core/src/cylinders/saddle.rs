//! Enumeration of saddle connections up to a length bound.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::RealAlg;
use crate::flat_surface::{EdgeRef, TranslationSurface, Vec2};
use crate::word::{Letter, Word};

use super::trace::FlowCtx;
use super::SaddleConnection;

/// Saddle connections with `|holonomy|^2 <= bound^2`, each reported once with holonomy
/// oriented by `y > 0` or `y = 0, x > 0`. Sorted by length, then start corner.
///
/// Rays from every corner are followed through a developed chain of polygons; the set of
/// directions still alive is an open wedge narrowed at every crossed side.
pub fn saddle_connections(s: &TranslationSurface, bound: &RealAlg) -> Result<Vec<SaddleConnection>> {
    let cones = corner_cones(s)?;
    let bound_sq = bound * bound;
    let bound_f = bound.to_f64();
    let mut out = edge_connections(s, &cones, &bound_sq);
    for (p, poly) in s.polygons().iter().enumerate() {
        let k = poly.len();
        for i in 0..k {
            let mut search = WedgeSearch {
                s,
                cones: &cones,
                corner: (p, i),
                source: poly.vertex(i).clone(),
                bound_sq: &bound_sq,
                bound_f,
                out: &mut out,
            };
            let a = poly.edge(i);
            let b = -poly.edge(i + k - 1);
            search.visit(p, &Vec2::zero(s.field()), None, &a, &b, &mut Vec::new());
        }
    }
    sort_connections(&mut out);
    Ok(out)
}

fn corner_cones(s: &TranslationSurface) -> Result<Vec<Vec<usize>>> {
    let mut cone_of: Vec<Vec<usize>> = s.polygons().iter().map(|p| vec![0; p.len()]).collect();
    for (id, c) in s.cone_points()?.iter().enumerate() {
        for &(p, i) in &c.corners {
            cone_of[p][i] = id;
        }
    }
    Ok(cone_of)
}

fn edge_connections(
    s: &TranslationSurface,
    cones: &[Vec<usize>],
    bound_sq: &RealAlg,
) -> Vec<SaddleConnection> {
    let mut out = Vec::new();
    for (a, b) in s.gluing_pairs() {
        let e = s.edge_vector(a);
        let edge = if e.normalized_direction() == e { a } else { b };
        let hol = s.edge_vector(edge);
        if &hol.norm_sq() > bound_sq {
            continue;
        }
        let k = s.polygon(edge.polygon).len();
        out.push(SaddleConnection {
            start: cones[edge.polygon][edge.side],
            end: cones[edge.polygon][(edge.side + 1) % k],
            start_corner: (edge.polygon, edge.side),
            holonomy: hol,
            crossing_word: Word::empty(),
        });
    }
    out
}

fn sort_connections(out: &mut [SaddleConnection]) {
    out.sort_by(|x, y| {
        x.holonomy
            .norm_sq()
            .cmp(&y.holonomy.norm_sq())
            .then_with(|| x.start_corner.cmp(&y.start_corner))
            .then_with(|| x.holonomy.x.cmp(&y.holonomy.x))
    });
}

fn is_positive_orientation(v: &Vec2) -> bool {
    v.normalized_direction() == *v
}

/// Counter-clockwise order of directions starting at `a`.
fn cmp_from(a: &Vec2, x: &Vec2, y: &Vec2) -> Ordering {
    let half = |u: &Vec2| -> u8 {
        let c = a.cross(u).sign();
        if c > 0 || (c == 0 && a.dot(u).is_positive()) {
            0
        } else {
            1
        }
    };
    half(x).cmp(&half(y)).then_with(|| match x.cross(y).sign() {
        1 => Ordering::Less,
        -1 => Ordering::Greater,
        _ => Ordering::Equal,
    })
}

struct WedgeSearch<'a> {
    s: &'a TranslationSurface,
    cones: &'a [Vec<usize>],
    corner: (usize, usize),
    source: Vec2,
    bound_sq: &'a RealAlg,
    bound_f: f64,
    out: &'a mut Vec<SaddleConnection>,
}

impl WedgeSearch<'_> {
    /// Explores polygon `q` developed at `offset`, entered through `entry`, with live
    /// directions in the open wedge `(a, b)`.
    fn visit(
        &mut self,
        q: usize,
        offset: &Vec2,
        entry: Option<usize>,
        a: &Vec2,
        b: &Vec2,
        letters: &mut Vec<Letter>,
    ) {
        let poly = self.s.polygon(q);
        let k = poly.len();
        let rel: Vec<Vec2> = poly
            .vertices
            .iter()
            .map(|x| &(offset + x) - &self.source)
            .collect();
        for (j, w) in rel.iter().enumerate() {
            if w.is_zero() || !a.cross(w).is_positive() || !w.cross(b).is_positive() {
                continue;
            }
            if &w.norm_sq() <= self.bound_sq && is_positive_orientation(w) {
                self.out.push(SaddleConnection {
                    start: self.cones[self.corner.0][self.corner.1],
                    end: self.cones[q][j],
                    start_corner: self.corner,
                    holonomy: w.clone(),
                    crossing_word: Word(letters.clone()),
                });
            }
        }
        for side in 0..k {
            if Some(side) == entry {
                continue;
            }
            let lo = &rel[side];
            let hi = &rel[(side + 1) % k];
            if !lo.cross(hi).is_positive() {
                continue;
            }
            if segment_distance(lo, hi) > self.bound_f * (1.0 + 1e-9) + 1e-9 {
                continue;
            }
            let wrap = cmp_from(a, lo, hi) == Ordering::Greater;
            let na = if wrap || cmp_from(a, lo, a) != Ordering::Greater {
                a
            } else {
                lo
            };
            let nb = if cmp_from(a, hi, b) == Ordering::Less { hi } else { b };
            if cmp_from(a, na, nb) != Ordering::Less || !na.cross(nb).is_positive() {
                continue;
            }
            let edge = EdgeRef::new(q, side);
            let next = self.s.partner(edge);
            let noffset = offset - &self.s.translation(edge);
            let label = self.s.label(edge);
            if let Some(l) = label {
                letters.push(l);
            }
            let (na, nb) = (na.clone(), nb.clone());
            self.visit(next.polygon, &noffset, Some(next.side), &na, &nb, letters);
            if label.is_some() {
                letters.pop();
            }
        }
    }
}

/// Euclidean distance from the origin to the segment `[p, q]`, in floating point.
fn segment_distance(p: &Vec2, q: &Vec2) -> f64 {
    let (px, py) = p.to_f64();
    let (qx, qy) = q.to_f64();
    let (dx, dy) = (qx - px, qy - py);
    let len2 = dx * dx + dy * dy;
    let t = if len2 > 0.0 {
        (-(px * dx + py * dy) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let (x, y) = (px + t * dx, py + t * dy);
    (x * x + y * y).sqrt()
}

const MAX_CHAIN: usize = 256;

/// Independent enumeration: every developed vertex within the bound is a candidate, and
/// the separatrix tracer decides whether the straight segment reaches it unobstructed.
pub fn saddle_connections_brute_force(
    s: &TranslationSurface,
    bound: &RealAlg,
) -> Result<Vec<SaddleConnection>> {
    let cones = corner_cones(s)?;
    let bound_sq = bound * bound;
    let bound_f = bound.to_f64();
    let mut out = edge_connections(s, &cones, &bound_sq);
    for (p, poly) in s.polygons().iter().enumerate() {
        let k = poly.len();
        for i in 0..k {
            let ea = poly.edge(i);
            let eb = -poly.edge(i + k - 1);
            let source = poly.vertex(i).clone();
            let mut candidates: Vec<Vec2> = Vec::new();
            let mut stack = vec![(p, Vec2::zero(s.field()), None::<usize>, 0usize)];
            while let Some((q, offset, entry, depth)) = stack.pop() {
                if depth > MAX_CHAIN {
                    return Err(Error::Internal("polygon chain search did not terminate".into()));
                }
                let qp = s.polygon(q);
                let rel: Vec<Vec2> = qp.vertices.iter().map(|x| &(&offset + x) - &source).collect();
                for w in &rel {
                    if w.is_zero() || w.norm_sq() > bound_sq {
                        continue;
                    }
                    if ea.cross(w).is_positive() && w.cross(&eb).is_positive() && !candidates.contains(w) {
                        candidates.push(w.clone());
                    }
                }
                for side in 0..qp.len() {
                    if Some(side) == entry {
                        continue;
                    }
                    let lo = &rel[side];
                    let hi = &rel[(side + 1) % qp.len()];
                    if !lo.cross(hi).is_positive() {
                        continue;
                    }
                    if segment_distance(lo, hi) > bound_f * (1.0 + 1e-9) + 1e-9 {
                        continue;
                    }
                    let edge = EdgeRef::new(q, side);
                    let next = s.partner(edge);
                    stack.push((next.polygon, &offset - &s.translation(edge), Some(next.side), depth + 1));
                }
            }
            for w in candidates {
                if !is_positive_orientation(&w) {
                    continue;
                }
                let ctx = FlowCtx::new(s, &w)?;
                let cap = w.norm_sq().to_f64().sqrt() * 1.001 + 1e-6;
                let tr = match ctx.trace_from_corner(p, i, cap) {
                    Ok(tr) => tr,
                    Err(_) => continue,
                };
                if tr.holonomy == w {
                    out.push(SaddleConnection {
                        start: cones[p][i],
                        end: cones[tr.end_corner.0][tr.end_corner.1],
                        start_corner: (p, i),
                        holonomy: w,
                        crossing_word: tr.word,
                    });
                }
            }
        }
    }
    sort_connections(&mut out);
    Ok(out)
}
