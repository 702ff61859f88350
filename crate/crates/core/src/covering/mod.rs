//! Finite translation coverings of the base surfaces defined by monodromy.

mod perm;

use serde::Serialize;

use crate::cylinders::{self, Cylinder, Direction, Strip};
use crate::error::{Error, Result};
use crate::flat_surface::{base_generator_count, build_base, check_n, EdgeRef, Polygon, TranslationSurface};

pub use crate::word::{Letter, Word};
pub use perm::{orbit_size, Perm};

/// The two distinguished generator indices `(k1, k2)` of the base surface.
///
/// Odd `n`: `((n-1)/2, (n+1)/2)`; `n = 0 mod 4`: `(n/4 - 1, n/4)`;
/// `n = 2 mod 4`: `((n-2)/4 - 1, (n-2)/4 + 1)`.
pub fn special_generators(n: usize) -> Result<(usize, usize)> {
    check_n(n)?;
    Ok(if n % 2 == 1 {
        ((n - 1) / 2, n.div_ceil(2))
    } else if n.is_multiple_of(4) {
        (n / 4 - 1, n / 4)
    } else {
        ((n - 2) / 4 - 1, (n - 2) / 4 + 1)
    })
}

/// Pairs `(0 1)(2 3)...` covering `0..d` (even `d`) or `0..d-1` (odd `d`).
pub fn sigma_1(d: usize) -> Perm {
    let cycles: Vec<Vec<usize>> = (0..d / 2).map(|k| vec![2 * k, 2 * k + 1]).collect();
    Perm::from_cycles(d, &cycles).expect("valid cycles")
}

/// Pairs `(1 2)(3 4)...`, closed up by `(d-1 0)` when `d` is even.
pub fn sigma_2(d: usize) -> Perm {
    let mut cycles: Vec<Vec<usize>> = (0..(d - 1) / 2).map(|k| vec![2 * k + 1, 2 * k + 2]).collect();
    if d.is_multiple_of(2) {
        cycles.push(vec![d - 1, 0]);
    }
    Perm::from_cycles(d, &cycles).expect("valid cycles")
}

/// Images of the base generators in the symmetric group on `{0, ..., d-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Monodromy {
    pub n: usize,
    pub degree: usize,
    pub perms: Vec<Perm>,
    pub k1: usize,
    pub k2: usize,
    /// Whether this is the standard family member rather than user data.
    pub standard: bool,
}

impl Monodromy {
    /// User-supplied monodromy over the base surface for `n`; `k1`, `k2` follow the
    /// standard table. Transitivity is checked when the cover is built.
    pub fn custom(n: usize, perms: Vec<Perm>) -> Result<Monodromy> {
        let (k1, k2) = special_generators(n)?;
        let g = base_generator_count(n);
        if perms.len() != g {
            return Err(Error::InvalidMonodromy(format!(
                "expected {} generator images, found {}",
                g,
                perms.len()
            )));
        }
        let degree = perms.first().map(|p| p.degree()).unwrap_or(0);
        if degree < 2 {
            return Err(Error::InvalidDegree(degree));
        }
        if perms.iter().any(|p| p.degree() != degree) {
            return Err(Error::InvalidMonodromy("generator images differ in degree".into()));
        }
        Ok(Monodromy {
            n,
            degree,
            perms,
            k1,
            k2,
            standard: false,
        })
    }

    pub fn perm(&self, generator: usize) -> &Perm {
        &self.perms[generator]
    }

    pub fn letter(&self, l: Letter) -> Perm {
        if l.exponent > 0 {
            self.perms[l.generator].clone()
        } else {
            self.perms[l.generator].inverse()
        }
    }

    /// Sheet reached from sheet `i` after crossing `l`.
    pub fn step(&self, i: usize, l: Letter) -> usize {
        let p = &self.perms[l.generator];
        if l.exponent > 0 {
            p.apply(i)
        } else {
            p.images().iter().position(|&j| j == i).expect("permutation")
        }
    }

    pub fn is_transitive(&self) -> bool {
        orbit_size(&self.perms, self.degree) == self.degree
    }

    /// With `k1` replaced: `sigma_1 ∘ (0 d-1)`. Used to check that certificates detect a
    /// changed transposition.
    pub fn mutated(&self) -> Monodromy {
        let d = self.degree;
        let swap = Perm::from_cycles(d, &[vec![0, d - 1]]).expect("valid cycle");
        let mut perms = self.perms.clone();
        perms[self.k1] = perms[self.k1].compose(&swap);
        Monodromy {
            perms,
            standard: false,
            ..self.clone()
        }
    }
}

/// The standard monodromy: `x_{k1} -> sigma_1`, `x_{k2} -> sigma_2`, other generators
/// trivial.
pub fn standard_monodromy(n: usize, d: usize) -> Result<Monodromy> {
    let (k1, k2) = special_generators(n)?;
    if d < 2 {
        return Err(Error::InvalidDegree(d));
    }
    let mut perms = vec![Perm::identity(d); base_generator_count(n)];
    perms[k1] = sigma_1(d);
    perms[k2] = sigma_2(d);
    Ok(Monodromy {
        n,
        degree: d,
        perms,
        k1,
        k2,
        standard: true,
    })
}

/// Anti-homomorphic evaluation: the permutation of `w = a_1 ... a_k` is
/// `m(a_k) ∘ ... ∘ m(a_1)`.
pub fn eval_word(m: &Monodromy, w: &Word) -> Result<Perm> {
    w.validate(m.perms.len())?;
    let mut out = Perm::identity(m.degree);
    for &l in w.letters() {
        out = m.letter(l).compose(&out);
    }
    Ok(out)
}

/// A degree `d` covering realised as `d` labelled copies of the base polygons.
///
/// Polygon `c * B + p` of the cover is polygon `p` of copy `c`, where `B` is the number of
/// base polygons; it carries the same local coordinates and crossing labels.
#[derive(Clone, Debug)]
pub struct CoveringSurface {
    pub n: usize,
    pub base: TranslationSurface,
    pub monodromy: Monodromy,
    pub surface: TranslationSurface,
}

impl CoveringSurface {
    pub fn degree(&self) -> usize {
        self.monodromy.degree
    }

    pub fn base_polygon_count(&self) -> usize {
        self.base.polygons().len()
    }

    /// `(copy, base polygon)` of a cover polygon.
    pub fn locate(&self, polygon: usize) -> (usize, usize) {
        let b = self.base_polygon_count();
        (polygon / b, polygon % b)
    }

    pub fn polygon_index(&self, copy: usize, base_polygon: usize) -> usize {
        copy * self.base_polygon_count() + base_polygon
    }

    pub fn genus(&self) -> Result<usize> {
        self.surface.genus()
    }
}

/// The standard covering of degree `d`.
pub fn build_cover(n: usize, d: usize) -> Result<CoveringSurface> {
    build_cover_with(standard_monodromy(n, d)?)
}

/// Realises the covering for any monodromy over the base surface for `m.n`.
pub fn build_cover_with(m: Monodromy) -> Result<CoveringSurface> {
    let base = build_base(m.n)?;
    if m.perms.len() != base.generator_count() {
        return Err(Error::InvalidMonodromy("generator count mismatch".into()));
    }
    if !m.is_transitive() {
        return Err(Error::IntransitiveMonodromy {
            orbit: orbit_size(&m.perms, m.degree),
            degree: m.degree,
        });
    }
    let d = m.degree;
    let b = base.polygons().len();
    let mut polygons = Vec::with_capacity(d * b);
    let mut labels = Vec::with_capacity(d * b);
    let mut names = Vec::with_capacity(d * b);
    for c in 0..d {
        for (p, poly) in base.polygons().iter().enumerate() {
            polygons.push(Polygon {
                id: c * b + p,
                vertices: poly.vertices.clone(),
            });
            labels.push(
                (0..poly.len())
                    .map(|s| base.label(EdgeRef::new(p, s)))
                    .collect(),
            );
            names.push(
                (0..poly.len())
                    .map(|s| base.edge_name(EdgeRef::new(p, s)).to_string())
                    .collect(),
            );
        }
    }
    let mut pairs = Vec::new();
    for (e, f) in base.gluing_pairs() {
        for c in 0..d {
            let (from, to, target) = match base.label(e) {
                Some(l) => (e, f, m.step(c, l)),
                None => (e, f, c),
            };
            pairs.push((
                EdgeRef::new(c * b + from.polygon, from.side),
                EdgeRef::new(target * b + to.polygon, to.side),
            ));
        }
    }
    let surface = TranslationSurface::new(base.field().clone(), polygons, &pairs, labels, names)?;
    Ok(CoveringSurface {
        n: m.n,
        base,
        monodromy: m,
        surface,
    })
}

/// Genus of the cover from the base data alone: every base cone point with loop word `p`
/// has one preimage per cycle of `m(p)`.
pub fn riemann_hurwitz_genus(base: &TranslationSurface, m: &Monodromy) -> Result<usize> {
    let d = m.degree as i64;
    let mut vertices = 0i64;
    for c in base.cone_points()? {
        vertices += eval_word(m, &c.loop_word)?.cycles().len() as i64;
    }
    let chi = vertices - d * base.edge_count() as i64 + d * base.polygons().len() as i64;
    if chi > 2 || chi % 2 != 0 {
        return Err(Error::Internal(format!("cover Euler characteristic {}", chi)));
    }
    Ok(((2 - chi) / 2) as usize)
}

/// Cover cylinders predicted from the base decomposition: a base cylinder whose core curve
/// has monodromy with a cycle of length `a` lifts to one cylinder of the same height and
/// `a` times the circumference. Boundary indices are left empty.
pub fn cover_cylinders(c: &CoveringSurface, dir: &Direction) -> Result<Vec<Cylinder>> {
    let base = cylinders::decomposition_auto(&c.base, dir, cylinders::default_cap(c.n))?;
    let m = &c.monodromy;
    let d = m.degree;
    let b = c.base_polygon_count();
    let mut out = Vec::new();
    for cyl in &base.cylinders {
        let mut used = vec![false; d];
        for c0 in 0..d {
            if used[c0] {
                continue;
            }
            let mut copy = c0;
            let mut strips = Vec::new();
            let mut crossed = Vec::new();
            let mut laps = 0i64;
            loop {
                used[copy] = true;
                laps += 1;
                for (st, &e) in cyl.strips.iter().zip(&cyl.crossed_edges) {
                    strips.push(Strip {
                        polygon: copy * b + st.polygon,
                        t_low: st.t_low.clone(),
                        t_high: st.t_high.clone(),
                    });
                    crossed.push(EdgeRef::new(copy * b + e.polygon, e.side));
                    if let Some(l) = c.base.label(e) {
                        copy = m.step(copy, l);
                    }
                }
                if copy == c0 {
                    break;
                }
            }
            out.push(Cylinder {
                direction: cyl.direction.clone(),
                height: cyl.height.clone(),
                circumference: cyl.circumference.scale_int(laps),
                inverse_modulus: cyl.inverse_modulus.scale_int(laps),
                core_word: cyl.core_word.pow(laps).cyclically_reduced(),
                crossed_edges: crossed,
                boundary: Vec::new(),
                strips,
            });
        }
    }
    out.sort_by(|x, y| {
        x.height
            .cmp(&y.height)
            .then_with(|| x.circumference.cmp(&y.circumference))
    });
    Ok(out)
}

/// Direct decomposition of the realised cover.
pub fn cover_decompose(c: &CoveringSurface, dir: &Direction) -> Result<Vec<Cylinder>> {
    let cap = cylinders::default_cap(c.n) * c.degree() as f64;
    Ok(cylinders::decomposition_auto(&c.surface, dir, cap)?.cylinders)
}

/// JSON descriptor of a cover.
#[derive(Serialize)]
pub struct CoverDescriptor {
    pub n: usize,
    pub d: usize,
    pub k1: usize,
    pub k2: usize,
    pub sigma1: Vec<Vec<usize>>,
    pub sigma2: Vec<Vec<usize>>,
    pub polygons: usize,
    pub genus: usize,
    pub cone_angles: Vec<usize>,
}

impl CoverDescriptor {
    pub fn new(c: &CoveringSurface) -> Result<CoverDescriptor> {
        let m = &c.monodromy;
        let mut cone_angles: Vec<usize> = c
            .surface
            .cone_points()?
            .iter()
            .map(|p| p.angle_multiple)
            .collect();
        cone_angles.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CoverDescriptor {
            n: c.n,
            d: m.degree,
            k1: m.k1,
            k2: m.k2,
            sigma1: m.perm(m.k1).nontrivial_cycles(),
            sigma2: m.perm(m.k2).nontrivial_cycles(),
            polygons: c.surface.polygons().len(),
            genus: c.genus()?,
            cone_angles,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::lambda_n;

    #[test]
    fn standard_tables() {
        let m = standard_monodromy(5, 4).unwrap();
        assert_eq!((m.k1, m.k2), (2, 3));
        assert_eq!(m.perm(2).to_string(), "(0 1)(2 3)");
        assert_eq!(*m.perm(3), Perm::from_cycles(4, &[vec![1, 2], vec![3, 0]]).unwrap());
        let m5 = standard_monodromy(5, 5).unwrap();
        assert_eq!(m5.perm(2).to_string(), "(0 1)(2 3)");
        assert_eq!(m5.perm(3).to_string(), "(1 2)(3 4)");
        assert_eq!(special_generators(8).unwrap(), (1, 2));
        assert_eq!(special_generators(10).unwrap(), (1, 3));
        assert!(standard_monodromy(5, 1).is_err());
        assert!(standard_monodromy(6, 3).is_err());
    }

    #[test]
    fn inner_cylinder_monodromy() {
        let w: Word = "x2 x3^-1".parse().unwrap();
        let m4 = standard_monodromy(5, 4).unwrap();
        assert_eq!(eval_word(&m4, &w).unwrap().to_string(), "(0 2)(1 3)");
        let m5 = standard_monodromy(5, 5).unwrap();
        assert_eq!(eval_word(&m5, &w).unwrap().to_string(), "(0 2 4 3 1)");
        assert!(eval_word(&m5, &Word::empty()).unwrap().is_identity());
    }

    #[test]
    fn cover_shapes() {
        let y52 = build_cover(5, 2).unwrap();
        assert_eq!(y52.surface.polygons().len(), 4);
        assert_eq!(y52.genus().unwrap(), 3);
        assert_eq!(riemann_hurwitz_genus(&y52.base, &y52.monodromy).unwrap(), 3);
        assert_eq!(build_cover(8, 3).unwrap().surface.polygons().len(), 3);
    }

    #[test]
    fn intransitive_rejected() {
        let m = Monodromy::custom(5, vec![Perm::identity(3); 4]).unwrap();
        assert!(matches!(
            build_cover_with(m),
            Err(Error::IntransitiveMonodromy { orbit: 1, degree: 3 })
        ));
    }

    #[test]
    fn horizontal_moduli_of_covers() {
        let lam = lambda_n(5);
        let dir = Direction::rotated(5, 0);
        let c4 = cover_cylinders(&build_cover(5, 4).unwrap(), &dir).unwrap();
        assert_eq!(c4.iter().filter(|c| c.inverse_modulus == lam.scale_int(2)).count(), 2);
        let c5 = cover_cylinders(&build_cover(5, 5).unwrap(), &dir).unwrap();
        assert_eq!(c5.iter().filter(|c| c.inverse_modulus == lam.scale_int(5)).count(), 1);
    }

    #[test]
    fn prediction_matches_direct_decomposition() {
        for (n, d) in [(5, 3), (8, 2), (7, 4)] {
            let c = build_cover(n, d).unwrap();
            for l in 0..n as i64 {
                let dir = Direction::rotated(n, l);
                let mut a: Vec<_> = cover_cylinders(&c, &dir)
                    .unwrap()
                    .into_iter()
                    .map(|c| (c.height, c.circumference))
                    .collect();
                let mut b: Vec<_> = cover_decompose(&c, &dir)
                    .unwrap()
                    .into_iter()
                    .map(|c| (c.height, c.circumference))
                    .collect();
                a.sort();
                b.sort();
                assert_eq!(a, b, "n={} d={} l={}", n, d, l);
            }
        }
    }
}
