//! Straight-line flow in a fixed direction, tracked by transverse coordinates.
//!
//! Inside polygon `p` a flow line in direction `v` is the set `cross(v, x) = t`. Leaving
//! through side `k` shifts `t` by `cross(v, tau)` where `tau` is the gluing translation, so a
//! trajectory is a sequence of `(polygon, t)` pairs and every predicate is an exact sign.

use crate::error::{Error, Result};
use crate::field::RealAlg;
use crate::flat_surface::{EdgeRef, TranslationSurface, Vec2};
use crate::word::{Letter, Word};

/// Transverse data of a surface for one direction.
pub(crate) struct FlowCtx<'a> {
    pub surface: &'a TranslationSurface,
    pub v: Vec2,
    /// `cross(v, V_k)` for every vertex.
    pub tv: Vec<Vec<RealAlg>>,
    /// `cross(v, e_k)`: positive on exit sides, negative on entry sides.
    pub ce: Vec<Vec<i32>>,
    /// `cross(v, tau)` for the gluing translation of every side.
    pub shift: Vec<Vec<RealAlg>>,
    /// Cone point index of every corner.
    pub cone_of: Vec<Vec<usize>>,
}

/// Result of following a separatrix until it hits a vertex.
#[derive(Clone, Debug)]
pub(crate) struct Trace {
    pub end_corner: (usize, usize),
    pub holonomy: Vec2,
    pub word: Word,
    /// `(polygon, t)` of every chord traversed, including the start polygon.
    pub chords: Vec<(usize, RealAlg)>,
}

impl<'a> FlowCtx<'a> {
    pub fn new(surface: &'a TranslationSurface, v: &Vec2) -> Result<FlowCtx<'a>> {
        let mut tv = Vec::new();
        let mut ce = Vec::new();
        let mut shift = Vec::new();
        for (p, poly) in surface.polygons().iter().enumerate() {
            let t: Vec<RealAlg> = poly.vertices.iter().map(|x| v.cross(x)).collect();
            let k = poly.len();
            ce.push((0..k).map(|i| (&t[(i + 1) % k] - &t[i]).sign()).collect());
            shift.push(
                (0..k)
                    .map(|i| v.cross(&surface.translation(EdgeRef::new(p, i))))
                    .collect(),
            );
            tv.push(t);
        }
        let mut cone_of: Vec<Vec<usize>> =
            surface.polygons().iter().map(|p| vec![0; p.len()]).collect();
        for (id, c) in surface.cone_points()?.iter().enumerate() {
            for &(p, i) in &c.corners {
                cone_of[p][i] = id;
            }
        }
        Ok(FlowCtx {
            surface,
            v: v.clone(),
            tv,
            ce,
            shift,
            cone_of,
        })
    }

    /// Whether `v` lies in the half-open corner cone `[e_i, -e_{i-1})` at vertex `i` of `p`.
    pub fn corner_emits(&self, p: usize, i: usize) -> bool {
        let poly = self.surface.polygon(p);
        let k = poly.len();
        let a = poly.edge(i);
        let b = -poly.edge(i + k - 1);
        let ca = a.cross(&self.v).sign();
        if ca == 0 {
            return a.dot(&self.v).is_positive();
        }
        ca > 0 && self.v.cross(&b).is_positive()
    }

    /// Follows the separatrix leaving corner `(p, i)` in direction `v`, which must lie in
    /// the corner cone. Fails once the travelled length exceeds `cap`.
    pub fn trace_from_corner(&self, p: usize, i: usize, cap: f64) -> Result<Trace> {
        let s = self.surface;
        let poly = s.polygon(p);
        let k = poly.len();
        let e = poly.edge(i);
        if e.cross(&self.v).is_zero() {
            // ray runs along side i
            let len = e.norm_sq().to_f64().sqrt();
            if len > cap {
                let (dx, dy) = self.v.to_f64();
                return Err(Error::BoundExceeded { cap, dx, dy });
            }
            let partner = s.partner(EdgeRef::new(p, i));
            let (ep, es) = (partner.polygon, partner.side);
            return Ok(Trace {
                end_corner: (p, (i + 1) % k),
                holonomy: e,
                word: Word::empty(),
                chords: vec![(p, self.tv[p][i].clone()), (ep, self.tv[ep][es].clone())],
            });
        }
        let start = poly.vertex(i).clone();
        let mut q = p;
        let mut t = self.tv[p][i].clone();
        let mut sum_tau = Vec2::zero(s.field());
        let mut letters: Vec<Letter> = Vec::new();
        let mut chords = Vec::new();
        let (vx, vy) = self.v.to_f64();
        let vnorm = (vx * vx + vy * vy).sqrt();
        let mut travelled = 0.0f64;
        let mut entry = start.to_f64();
        loop {
            chords.push((q, t.clone()));
            let (exit, hit) = self.find_exit(q, &t);
            let qpoly = s.polygon(q);
            if let Some(vertex) = hit {
                let end = qpoly.vertex(vertex);
                let e64 = end.to_f64();
                travelled += ((e64.0 - entry.0) * vx + (e64.1 - entry.1) * vy) / vnorm;
                if travelled > cap {
                    return Err(Error::BoundExceeded {
                        cap,
                        dx: vx,
                        dy: vy,
                    });
                }
                let holonomy = &(end - &start) - &sum_tau;
                return Ok(Trace {
                    end_corner: (q, vertex),
                    holonomy,
                    word: Word(letters),
                    chords,
                });
            }
            let side = exit.expect("flow line must leave the polygon");
            let a = qpoly.vertex(side).to_f64();
            let b = qpoly.vertex(side + 1).to_f64();
            let ta = self.tv[q][side].to_f64();
            let tb = self.tv[q][side + 1].to_f64();
            let lam = ((t.to_f64() - ta) / (tb - ta)).clamp(0.0, 1.0);
            let out = (a.0 + lam * (b.0 - a.0), a.1 + lam * (b.1 - a.1));
            travelled += ((out.0 - entry.0) * vx + (out.1 - entry.1) * vy) / vnorm;
            if travelled > cap {
                return Err(Error::BoundExceeded {
                    cap,
                    dx: vx,
                    dy: vy,
                });
            }
            let edge = EdgeRef::new(q, side);
            if let Some(l) = s.label(edge) {
                letters.push(l);
            }
            let tau = s.translation(edge);
            let tau64 = tau.to_f64();
            entry = (out.0 + tau64.0, out.1 + tau64.1);
            t = &t + &self.shift[q][side];
            sum_tau = &sum_tau + &tau;
            q = s.partner(edge).polygon;
        }
    }

    /// Exit side of the flow line at `t` in polygon `q`, or the vertex it runs into.
    pub fn find_exit(&self, q: usize, t: &RealAlg) -> (Option<usize>, Option<usize>) {
        let tv = &self.tv[q];
        let k = tv.len();
        for side in 0..k {
            if self.ce[q][side] <= 0 {
                continue;
            }
            let lo = &tv[side];
            let hi = &tv[(side + 1) % k];
            if t == lo {
                return (None, Some(side));
            }
            if t == hi {
                return (None, Some((side + 1) % k));
            }
            if lo < t && t < hi {
                return (Some(side), None);
            }
        }
        (None, None)
    }

    /// Exit side of an interior flow line at `t`, which must avoid all vertex levels.
    pub fn exit_side(&self, q: usize, t: &RealAlg) -> Option<usize> {
        let tv = &self.tv[q];
        let k = tv.len();
        (0..k).find(|&side| {
            self.ce[q][side] > 0 && &tv[side] < t && t < &tv[(side + 1) % k]
        })
    }
}
