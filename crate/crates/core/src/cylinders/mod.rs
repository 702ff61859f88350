//! Cylinder decompositions in periodic directions.

mod saddle;
pub(crate) mod trace;

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, RealAlg};
use crate::flat_surface::{check_n, EdgeRef, TranslationSurface, Vec2};
use crate::word::{Letter, Word};

pub use saddle::{saddle_connections, saddle_connections_brute_force};
use trace::FlowCtx;

/// A direction in the plane, up to sign: `y > 0`, or `y = 0` and `x > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Direction {
    pub vector: Vec2,
}

impl Direction {
    pub fn new(v: Vec2) -> Result<Direction> {
        if v.is_zero() {
            return Err(Error::InvalidSurface("direction vector is zero".into()));
        }
        Ok(Direction {
            vector: v.normalized_direction(),
        })
    }

    /// `(1, 0)` rotated by `l pi / n`.
    pub fn rotated(n: usize, l: i64) -> Direction {
        let f = Field::for_polygon(n);
        let v = Vec2::new(f.cos_pi_frac(l, n), f.sin_pi_frac(l, n));
        Direction {
            vector: v.normalized_direction(),
        }
    }

    pub fn horizontal(field: &Field) -> Direction {
        Direction {
            vector: Vec2::new(RealAlg::one(field), RealAlg::zero(field)),
        }
    }

    /// Whether `|v| = 1`, in which case heights and circumferences are true lengths.
    pub fn is_unit(&self) -> bool {
        self.vector.norm_sq() == RealAlg::one(self.vector.field())
    }
}

/// A straight segment between cone points with no cone point in its interior.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SaddleConnection {
    pub start: usize,
    pub end: usize,
    /// Start corner `(polygon, vertex)` the segment leaves from.
    pub start_corner: (usize, usize),
    pub holonomy: Vec2,
    pub crossing_word: Word,
}

/// One piece of a cylinder inside a polygon: the band `t_low <= cross(v, x) <= t_high`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Strip {
    pub polygon: usize,
    pub t_low: RealAlg,
    pub t_high: RealAlg,
}

/// A maximal cylinder of closed trajectories.
///
/// For a direction vector `v` of length `|v|` the reported height and circumference are the
/// true lengths multiplied by `|v|`; the inverse modulus is always exact.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cylinder {
    pub direction: Vec2,
    pub height: RealAlg,
    pub circumference: RealAlg,
    pub inverse_modulus: RealAlg,
    pub core_word: Word,
    /// Sides crossed by the core curve, as the side left.
    pub crossed_edges: Vec<EdgeRef>,
    /// Indices into the saddle connections of the decomposition.
    pub boundary: Vec<usize>,
    pub strips: Vec<Strip>,
}

impl Cylinder {
    pub fn crosses_edge(&self, surface: &TranslationSurface, name: &str) -> bool {
        self.crossed_edges.iter().any(|&e| {
            surface.edge_name(e) == name || surface.edge_name(surface.partner(e)) == name
        })
    }
}

/// Cylinders and the saddle connections bounding them.
#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub direction: Direction,
    pub cylinders: Vec<Cylinder>,
    pub saddle_connections: Vec<SaddleConnection>,
}

/// `8 n sin(pi / n)`, the default separatrix length cap for a base surface.
pub fn default_cap(n: usize) -> f64 {
    8.0 * n as f64 * (std::f64::consts::PI / n as f64).sin()
}

/// Cylinders of `s` in direction `dir`; see [`decomposition`].
pub fn decompose(s: &TranslationSurface, dir: &Direction, bound: f64) -> Result<Vec<Cylinder>> {
    Ok(decomposition(s, dir, bound)?.cylinders)
}

/// Retries [`decomposition`] with the cap multiplied by 4, at most four times.
pub fn decomposition_auto(
    s: &TranslationSurface,
    dir: &Direction,
    initial_cap: f64,
) -> Result<Decomposition> {
    let mut cap = initial_cap;
    let mut last = None;
    for _ in 0..5 {
        match decomposition(s, dir, cap) {
            Err(e @ Error::BoundExceeded { .. }) => {
                last = Some(e);
                cap *= 4.0;
            }
            other => return other,
        }
    }
    Err(last.expect("at least one attempt"))
}

/// Traces every separatrix in direction `dir`; when all of them end in cone points within
/// length `bound`, cuts the surface along them and returns the cylinders.
///
/// Cylinders are sorted by height, then circumference, then the first strip.
pub fn decomposition(s: &TranslationSurface, dir: &Direction, bound: f64) -> Result<Decomposition> {
    let v = &dir.vector;
    let ctx = FlowCtx::new(s, v)?;
    let cones = s.cone_points()?;

    let mut saddles = Vec::new();
    let mut chord_owner: HashMap<(usize, RealAlg), usize> = HashMap::new();
    let mut critical: Vec<Vec<RealAlg>> = ctx.tv.clone();
    let mut emitted = vec![0usize; cones.len()];
    for (p, poly) in s.polygons().iter().enumerate() {
        for i in 0..poly.len() {
            if !ctx.corner_emits(p, i) {
                continue;
            }
            emitted[ctx.cone_of[p][i]] += 1;
            let tr = ctx.trace_from_corner(p, i, bound)?;
            let id = saddles.len();
            for (q, t) in &tr.chords {
                critical[*q].push(t.clone());
                chord_owner.entry((*q, t.clone())).or_insert(id);
            }
            saddles.push(SaddleConnection {
                start: ctx.cone_of[p][i],
                end: ctx.cone_of[tr.end_corner.0][tr.end_corner.1],
                start_corner: (p, i),
                holonomy: tr.holonomy,
                crossing_word: tr.word,
            });
        }
    }
    for (c, cone) in cones.iter().enumerate() {
        if emitted[c] != cone.angle_multiple {
            return Err(Error::Internal(format!(
                "cone point {} emits {} separatrices, expected {}",
                c, emitted[c], cone.angle_multiple
            )));
        }
    }
    for c in critical.iter_mut() {
        c.sort();
        c.dedup();
    }

    // strips between consecutive critical levels and their successors under the flow
    let mut strip_ids: Vec<Vec<usize>> = Vec::new();
    let mut strips: Vec<(usize, usize)> = Vec::new();
    for (p, levels) in critical.iter().enumerate() {
        let mut ids = Vec::new();
        for j in 0..levels.len().saturating_sub(1) {
            ids.push(strips.len());
            strips.push((p, j));
        }
        strip_ids.push(ids);
    }
    let half = num_rational::BigRational::new(1.into(), 2.into());
    let mut successor = vec![(0usize, EdgeRef::new(0, 0)); strips.len()];
    for (id, &(p, j)) in strips.iter().enumerate() {
        let lo = &critical[p][j];
        let hi = &critical[p][j + 1];
        let mid = (lo + hi).scale(&half);
        let side = ctx
            .exit_side(p, &mid)
            .ok_or_else(|| Error::Internal(format!("strip {} in polygon {} has no exit", j, p)))?;
        let edge = EdgeRef::new(p, side);
        let q = s.partner(edge).polygon;
        let shift = &ctx.shift[p][side];
        let (nlo, nhi) = (lo + shift, hi + shift);
        let pos = critical[q]
            .binary_search(&nlo)
            .map_err(|_| Error::Internal(format!("strip image misses a level in polygon {}", q)))?;
        if pos + 1 >= critical[q].len() || critical[q][pos + 1] != nhi {
            return Err(Error::Internal(format!(
                "strip image in polygon {} is not a strip",
                q
            )));
        }
        successor[id] = (strip_ids[q][pos], edge);
    }

    let mut seen = vec![false; strips.len()];
    let mut cylinders = Vec::new();
    for start in 0..strips.len() {
        if seen[start] {
            continue;
        }
        let mut cur = start;
        let mut pieces = Vec::new();
        let mut letters: Vec<Letter> = Vec::new();
        let mut crossed = Vec::new();
        let mut sum_tau = Vec2::zero(s.field());
        let mut boundary = Vec::new();
        while !seen[cur] {
            seen[cur] = true;
            let (p, j) = strips[cur];
            let lo = critical[p][j].clone();
            let hi = critical[p][j + 1].clone();
            for t in [&lo, &hi] {
                if let Some(&sc) = chord_owner.get(&(p, t.clone())) {
                    boundary.push(sc);
                }
            }
            pieces.push(Strip {
                polygon: p,
                t_low: lo,
                t_high: hi,
            });
            let (next, edge) = successor[cur];
            if let Some(l) = s.label(edge) {
                letters.push(l);
            }
            crossed.push(edge);
            sum_tau = &sum_tau + &s.translation(edge);
            cur = next;
        }
        if cur != start {
            return Err(Error::Internal("strip successor map is not a permutation".into()));
        }
        let height = &pieces[0].t_high - &pieces[0].t_low;
        if pieces.iter().any(|st| &st.t_high - &st.t_low != height) {
            return Err(Error::Internal("strips of one cylinder differ in width".into()));
        }
        let circumference = -v.dot(&sum_tau);
        let inverse_modulus = &circumference / &height;
        boundary.sort_unstable();
        boundary.dedup();
        cylinders.push(Cylinder {
            direction: v.clone(),
            height,
            circumference,
            inverse_modulus,
            core_word: Word(letters).cyclically_reduced(),
            crossed_edges: crossed,
            boundary,
            strips: pieces,
        });
    }

    let total: RealAlg = cylinders
        .iter()
        .fold(RealAlg::zero(s.field()), |acc, c| acc + &c.height * &c.circumference);
    if total != &s.area() * &v.norm_sq() {
        return Err(Error::Internal("cylinder areas do not add up to the surface area".into()));
    }
    cylinders.sort_by(|a, b| {
        a.height
            .cmp(&b.height)
            .then_with(|| a.circumference.cmp(&b.circumference))
    });
    Ok(Decomposition {
        direction: dir.clone(),
        cylinders,
        saddle_connections: saddles,
    })
}

/// Height and circumference of horizontal cylinder `i` of the base surface from the closed
/// formulas.
///
/// Odd `n`, `1 <= i <= (n-1)/2`, `j = (n+1)/2 - i`:
/// `h = 2 sin((2j-1) pi/n) sin(pi/n)`, `l = 4 sin((2j-1) pi/n) cos(pi/n)`.
/// Even `n`, `1 <= i <= floor(n/4)`:
/// `h = 2 cos((2i-1) pi/n) sin(pi/n)`, `l = 4 cos((2i-1) pi/n) cos(pi/n)`.
pub fn closed_form_base(n: usize, i: usize) -> Result<(RealAlg, RealAlg)> {
    check_n(n)?;
    let f = Field::for_polygon(n);
    let count = horizontal_cylinder_count(n);
    if i == 0 || i > count {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: count,
        });
    }
    let s1 = f.sin_pi_frac(1, n);
    let c1 = f.cos_pi_frac(1, n);
    let m = if n % 2 == 1 {
        let j = n.div_ceil(2) - i;
        f.sin_pi_frac(2 * j as i64 - 1, n)
    } else {
        f.cos_pi_frac(2 * i as i64 - 1, n)
    };
    Ok(((&m * &s1).scale_int(2), (&m * &c1).scale_int(4)))
}

/// `(n-1)/2` for odd `n`, `floor(n/4)` for even `n`.
pub fn horizontal_cylinder_count(n: usize) -> usize {
    if n % 2 == 1 {
        (n - 1) / 2
    } else {
        n / 4
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::lambda_n;
    use crate::flat_surface::build_base;

    fn horizontal(n: usize) -> Vec<Cylinder> {
        let s = build_base(n).unwrap();
        decompose(&s, &Direction::rotated(n, 0), default_cap(n)).unwrap()
    }

    #[test]
    fn x9_has_four_horizontal_cylinders() {
        assert_eq!(horizontal(9).len(), 4);
    }

    #[test]
    fn x5_inner_core_word() {
        let cyl = horizontal(5);
        let w: Word = "x2 x3^-1".parse().unwrap();
        assert!(cyl.iter().any(|c| c.core_word == w));
    }

    #[test]
    fn inverse_modulus_is_lambda() {
        for n in [5, 7, 8, 10] {
            let l = lambda_n(n);
            for c in horizontal(n) {
                assert_eq!(c.inverse_modulus, l);
                assert_eq!(&c.inverse_modulus * &c.height, c.circumference);
            }
        }
    }

    #[test]
    fn closed_forms_match_tracer() {
        for n in [5, 7, 8, 10, 12] {
            let mut expected: Vec<(RealAlg, RealAlg)> = (1..=horizontal_cylinder_count(n))
                .map(|i| closed_form_base(n, i).unwrap())
                .collect();
            let mut got: Vec<(RealAlg, RealAlg)> = horizontal(n)
                .into_iter()
                .map(|c| (c.height, c.circumference))
                .collect();
            expected.sort();
            got.sort();
            assert_eq!(got, expected, "n = {}", n);
        }
    }

    #[test]
    fn closed_form_rejects_out_of_range() {
        assert!(closed_form_base(9, 0).is_err());
        assert!(closed_form_base(9, 5).is_err());
        assert!(closed_form_base(8, 3).is_err());
    }

    #[test]
    fn tiny_cap_is_reported() {
        let s = build_base(5).unwrap();
        let r = decompose(&s, &Direction::rotated(5, 0), 1e-3);
        assert!(matches!(r, Err(Error::BoundExceeded { .. })));
    }
}
