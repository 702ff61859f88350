//! Translation surfaces glued from convex polygons.

mod vector;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{Field, RealAlg};
use crate::word::{Letter, Word};

pub use vector::Vec2;

/// A strictly convex polygon with counter-clockwise vertices.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Polygon {
    pub id: usize,
    pub vertices: Vec<Vec2>,
}

impl Polygon {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> &Vec2 {
        &self.vertices[i % self.vertices.len()]
    }

    /// Edge vector from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> Vec2 {
        self.vertex(i + 1) - self.vertex(i)
    }

    fn validate(&self) -> Result<()> {
        let k = self.len();
        if k < 3 {
            return Err(Error::InvalidSurface(format!(
                "polygon {} has {} vertices",
                self.id, k
            )));
        }
        let mut windings = 0;
        for i in 0..k {
            let a = self.edge(i);
            let b = self.edge(i + 1);
            if a.is_zero() {
                return Err(Error::InvalidSurface(format!(
                    "polygon {} has repeated vertex {}",
                    self.id, i
                )));
            }
            if !a.cross(&b).is_positive() {
                return Err(Error::InvalidSurface(format!(
                    "polygon {} is not strictly convex at vertex {}",
                    self.id,
                    (i + 1) % k
                )));
            }
            if in_cone_positive_x(&a, &b) {
                windings += 1;
            }
        }
        if windings != 1 {
            return Err(Error::InvalidSurface(format!(
                "polygon {} winds {} times",
                self.id, windings
            )));
        }
        Ok(())
    }
}

/// Whether `(1, 0)` lies in the half-open counter-clockwise cone `[a, b)` of angle below `pi`.
fn in_cone_positive_x(a: &Vec2, b: &Vec2) -> bool {
    let ay = a.y.sign();
    (ay < 0 && b.y.is_positive()) || (ay == 0 && a.x.is_positive())
}

/// Whether `(-1, 0)` lies in the half-open counter-clockwise cone `[a, b)` of angle below `pi`.
fn in_cone_negative_x(a: &Vec2, b: &Vec2) -> bool {
    let ay = a.y.sign();
    (ay > 0 && b.y.is_negative()) || (ay == 0 && a.x.is_negative())
}

/// Side `side` of polygon `polygon`, running from vertex `side` to vertex `side + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeRef {
    pub polygon: usize,
    pub side: usize,
}

impl EdgeRef {
    pub fn new(polygon: usize, side: usize) -> EdgeRef {
        EdgeRef { polygon, side }
    }
}

/// A vertex class of the surface.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConePoint {
    /// `(polygon, vertex)` incidences in counter-clockwise order.
    pub corners: Vec<(usize, usize)>,
    /// Cone angle divided by `2 pi`.
    pub angle_multiple: usize,
    /// Generators crossed by a small counter-clockwise loop around the point.
    pub loop_word: Word,
}

/// Polygons glued along parallel sides by translations.
#[derive(Clone, Debug)]
pub struct TranslationSurface {
    field: Field,
    polygons: Vec<Polygon>,
    partner: Vec<Vec<EdgeRef>>,
    labels: Vec<Vec<Option<Letter>>>,
    edge_names: Vec<Vec<String>>,
    generators: usize,
}

impl TranslationSurface {
    /// Assembles and validates a surface.
    ///
    /// `labels[p][s]` is the generator crossed when leaving polygon `p` through side `s`;
    /// crossing the glued side in the other direction must carry the inverse letter.
    pub fn new(
        field: Field,
        polygons: Vec<Polygon>,
        pairs: &[(EdgeRef, EdgeRef)],
        labels: Vec<Vec<Option<Letter>>>,
        edge_names: Vec<Vec<String>>,
    ) -> Result<TranslationSurface> {
        for (i, p) in polygons.iter().enumerate() {
            if p.id != i {
                return Err(Error::InvalidSurface(format!(
                    "polygon at position {} has id {}",
                    i, p.id
                )));
            }
            p.validate()?;
        }
        let mut partner: Vec<Vec<Option<EdgeRef>>> =
            polygons.iter().map(|p| vec![None; p.len()]).collect();
        for &(a, b) in pairs {
            for e in [a, b] {
                if e.polygon >= polygons.len() || e.side >= polygons[e.polygon].len() {
                    return Err(Error::InvalidSurface(format!("edge {:?} does not exist", e)));
                }
            }
            if a == b {
                return Err(Error::InvalidSurface(format!("edge {:?} glued to itself", a)));
            }
            for (x, y) in [(a, b), (b, a)] {
                if partner[x.polygon][x.side].replace(y).is_some() {
                    return Err(Error::InvalidSurface(format!("edge {:?} glued twice", x)));
                }
            }
            let ea = polygons[a.polygon].edge(a.side);
            let eb = polygons[b.polygon].edge(b.side);
            if !(&ea + &eb).is_zero() {
                return Err(Error::InvalidSurface(format!(
                    "edges {:?} and {:?} are not glued by a translation",
                    a, b
                )));
            }
        }
        let partner: Vec<Vec<EdgeRef>> = partner
            .into_iter()
            .enumerate()
            .map(|(p, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(s, e)| {
                        e.ok_or_else(|| {
                            Error::InvalidSurface(format!("edge {:?} is not glued", EdgeRef::new(p, s)))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if labels.len() != polygons.len()
            || labels.iter().zip(&polygons).any(|(l, p)| l.len() != p.len())
        {
            return Err(Error::InvalidSurface("label table has wrong shape".into()));
        }
        let mut generators = 0;
        for (p, row) in labels.iter().enumerate() {
            for (s, l) in row.iter().enumerate() {
                let back = partner[p][s];
                let expected = l.map(|x| x.inverse());
                if labels[back.polygon][back.side] != expected {
                    return Err(Error::InvalidSurface(format!(
                        "crossing labels of {:?} and {:?} are not inverse",
                        EdgeRef::new(p, s),
                        back
                    )));
                }
                if let Some(x) = l {
                    generators = generators.max(x.generator + 1);
                }
            }
        }
        let surface = TranslationSurface {
            field,
            polygons,
            partner,
            labels,
            edge_names,
            generators,
        };
        surface.cone_points()?;
        Ok(surface)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn polygons(&self) -> &[Polygon] {
        &self.polygons
    }

    pub fn polygon(&self, p: usize) -> &Polygon {
        &self.polygons[p]
    }

    /// Number of fundamental-group generators carried by crossing labels.
    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn partner(&self, e: EdgeRef) -> EdgeRef {
        self.partner[e.polygon][e.side]
    }

    /// Letter recorded when leaving `e.polygon` through `e`.
    pub fn label(&self, e: EdgeRef) -> Option<Letter> {
        self.labels[e.polygon][e.side]
    }

    pub fn edge_name(&self, e: EdgeRef) -> &str {
        &self.edge_names[e.polygon][e.side]
    }

    pub fn edge_vector(&self, e: EdgeRef) -> Vec2 {
        self.polygons[e.polygon].edge(e.side)
    }

    /// Translation taking points of side `e` to the same points in the partner polygon.
    pub fn translation(&self, e: EdgeRef) -> Vec2 {
        let f = self.partner(e);
        self.polygons[f.polygon].vertex(f.side + 1) - self.polygons[e.polygon].vertex(e.side)
    }

    /// Each glued pair once, smaller edge first.
    pub fn gluing_pairs(&self) -> Vec<(EdgeRef, EdgeRef)> {
        let mut out = Vec::new();
        for (p, row) in self.partner.iter().enumerate() {
            for (s, &f) in row.iter().enumerate() {
                let e = EdgeRef::new(p, s);
                if e < f {
                    out.push((e, f));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.polygons.iter().map(|p| p.len()).sum::<usize>() / 2
    }

    /// Vertex classes with their cone angles, in order of their first corner.
    pub fn cone_points(&self) -> Result<Vec<ConePoint>> {
        let mut seen: Vec<Vec<bool>> = self.polygons.iter().map(|p| vec![false; p.len()]).collect();
        let mut out = Vec::new();
        for p in 0..self.polygons.len() {
            for i in 0..self.polygons[p].len() {
                if seen[p][i] {
                    continue;
                }
                let mut corners = Vec::new();
                let mut word = Vec::new();
                let (mut plus, mut minus) = (0usize, 0usize);
                let (mut q, mut j) = (p, i);
                while !seen[q][j] {
                    seen[q][j] = true;
                    corners.push((q, j));
                    let poly = &self.polygons[q];
                    let k = poly.len();
                    let a = poly.edge(j);
                    let b = -poly.edge(j + k - 1);
                    if in_cone_positive_x(&a, &b) {
                        plus += 1;
                    }
                    if in_cone_negative_x(&a, &b) {
                        minus += 1;
                    }
                    let out_edge = EdgeRef::new(q, (j + k - 1) % k);
                    if let Some(l) = self.label(out_edge) {
                        word.push(l);
                    }
                    let next = self.partner(out_edge);
                    q = next.polygon;
                    j = next.side;
                }
                if (q, j) != (p, i) {
                    return Err(Error::InvalidSurface(format!(
                        "corner walk from ({}, {}) does not close",
                        p, i
                    )));
                }
                if plus != minus || plus == 0 {
                    return Err(Error::InvalidSurface(format!(
                        "total angle at vertex ({}, {}) is not a multiple of 2 pi",
                        p, i
                    )));
                }
                out.push(ConePoint {
                    corners,
                    angle_multiple: plus,
                    loop_word: Word(word),
                });
            }
        }
        Ok(out)
    }

    /// Euler characteristic `V - E + F` of the polygon complex.
    pub fn euler_characteristic(&self) -> Result<i64> {
        let v = self.cone_points()?.len() as i64;
        Ok(v - self.edge_count() as i64 + self.polygons.len() as i64)
    }

    /// Genus from the Euler characteristic, checked against Gauss–Bonnet.
    pub fn genus(&self) -> Result<usize> {
        let cones = self.cone_points()?;
        let chi = cones.len() as i64 - self.edge_count() as i64 + self.polygons.len() as i64;
        if chi > 2 || chi % 2 != 0 {
            return Err(Error::InvalidSurface(format!("Euler characteristic {}", chi)));
        }
        let excess: i64 = cones.iter().map(|c| c.angle_multiple as i64 - 1).sum();
        if excess != -chi {
            return Err(Error::InvalidSurface(format!(
                "cone excess {} contradicts Euler characteristic {}",
                excess, chi
            )));
        }
        Ok(((2 - chi) / 2) as usize)
    }

    /// Sum of polygon areas.
    pub fn area(&self) -> RealAlg {
        let mut total = RealAlg::zero(&self.field);
        for p in &self.polygons {
            for i in 0..p.len() {
                total = total + p.vertex(i).cross(p.vertex(i + 1));
            }
        }
        total.scale(&num_rational::BigRational::new(1.into(), 2.into()))
    }
}

impl Serialize for TranslationSurface {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Pair {
            a: EdgeRef,
            b: EdgeRef,
            name: String,
        }
        #[derive(Serialize)]
        struct LabelEntry {
            edge: EdgeRef,
            generator: usize,
            exponent: i8,
        }
        let pairs: Vec<Pair> = self
            .gluing_pairs()
            .into_iter()
            .map(|(a, b)| Pair {
                a,
                b,
                name: self.edge_name(a).to_string(),
            })
            .collect();
        let mut labels = Vec::new();
        for (p, row) in self.labels.iter().enumerate() {
            for (side, l) in row.iter().enumerate() {
                if let Some(l) = l {
                    labels.push(LabelEntry {
                        edge: EdgeRef::new(p, side),
                        generator: l.generator,
                        exponent: l.exponent,
                    });
                }
            }
        }
        let mut st = s.serialize_struct("TranslationSurface", 4)?;
        st.serialize_field("polygons", &self.polygons)?;
        st.serialize_field("gluing", &pairs)?;
        st.serialize_field("generator_labels", &labels)?;
        st.serialize_field("edge_names", &self.edge_names)?;
        st.end()
    }
}

/// Checks `n >= 5`, `n != 6`.
pub fn check_n(n: usize) -> Result<()> {
    if n < 5 || n == 6 {
        Err(Error::InvalidN(n))
    } else {
        Ok(())
    }
}

/// Number of fundamental-group generators of the base surface: `n - 1` (odd) or `n / 2` (even).
pub fn base_generator_count(n: usize) -> usize {
    if n % 2 == 1 {
        n - 1
    } else {
        n / 2
    }
}

/// The regular double `n`-gon (odd `n`) or the regular `n`-gon with opposite sides glued
/// (even `n`), circumradius 1.
///
/// Odd `n`: polygon 0 lies above its horizontal side 0 and polygon 1 below its horizontal
/// side 0; side `i` of one is glued to side `i` of the other. Leaving polygon 0 through side
/// `i < n - 1` crosses generator `x_i`; side `n - 1` carries no generator.
///
/// Even `n`: vertex `j` at `(cos(2 pi j / n), sin(2 pi j / n))`; side `s < n/2` is glued to
/// side `s + n/2` and leaving through side `s` crosses `x_s`.
pub fn build_base(n: usize) -> Result<TranslationSurface> {
    check_n(n)?;
    let field = Field::for_polygon(n);
    if n % 2 == 1 {
        let c = field.cos_pi_frac(1, n);
        let zero = RealAlg::zero(&field);
        let centre_p = Vec2::new(zero.clone(), c.clone());
        let centre_q = Vec2::new(zero, -c);
        let ni = n as i64;
        let ring = |centre: &Vec2, offset: i64| -> Vec<Vec2> {
            (0..ni)
                .map(|i| centre + &Vec2::from_complex(&field.root(4 * i + offset)))
                .collect()
        };
        let p = Polygon {
            id: 0,
            vertices: ring(&centre_p, -ni - 2),
        };
        let q = Polygon {
            id: 1,
            vertices: ring(&centre_q, ni - 2),
        };
        let pairs: Vec<(EdgeRef, EdgeRef)> =
            (0..n).map(|i| (EdgeRef::new(0, i), EdgeRef::new(1, i))).collect();
        let mut labels = vec![vec![None; n], vec![None; n]];
        for i in 0..n - 1 {
            labels[0][i] = Some(Letter::new(i, 1));
            labels[1][i] = Some(Letter::new(i, -1));
        }
        let names = vec![
            (0..n).map(|i| format!("x{}", i)).collect(),
            (0..n).map(|i| format!("x{}'", i)).collect(),
        ];
        TranslationSurface::new(field, vec![p, q], &pairs, labels, names)
    } else {
        let h = n / 2;
        let poly = Polygon {
            id: 0,
            vertices: (0..n as i64)
                .map(|j| Vec2::from_complex(&field.root(4 * j)))
                .collect(),
        };
        let pairs: Vec<(EdgeRef, EdgeRef)> =
            (0..h).map(|s| (EdgeRef::new(0, s), EdgeRef::new(0, s + h))).collect();
        let mut labels = vec![vec![None; n]];
        let mut names = vec![vec![String::new(); n]];
        for s in 0..h {
            labels[0][s] = Some(Letter::new(s, 1));
            labels[0][s + h] = Some(Letter::new(s, -1));
            names[0][s] = format!("x{}", s);
            names[0][s + h] = format!("x{}'", s);
        }
        TranslationSurface::new(field, vec![poly], &pairs, labels, names)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_base_shape() {
        let s = build_base(9).unwrap();
        assert_eq!(s.polygons().len(), 2);
        assert_eq!(s.gluing_pairs().len(), 9);
        assert_eq!(s.generator_count(), 8);
        let e = s.edge_vector(EdgeRef::new(0, 0));
        assert!(e.y.is_zero() && e.x.is_positive());
        assert!(s.polygon(0).vertex(3).y.is_positive());
        assert!(s.polygon(1).vertex(3).y.is_negative());
    }

    #[test]
    fn edge_length_is_two_sin() {
        let s = build_base(5).unwrap();
        let f = s.field().clone();
        let two_sin = f.sin_pi_frac(1, 5).scale_int(2);
        for p in s.polygons() {
            for i in 0..5 {
                assert_eq!(p.edge(i).norm_sq(), &two_sin * &two_sin);
            }
        }
        assert_eq!(s.edge_vector(EdgeRef::new(0, 0)).x, two_sin);
    }

    #[test]
    fn even_base_shape() {
        let s = build_base(8).unwrap();
        assert_eq!(s.polygons().len(), 1);
        assert_eq!(s.gluing_pairs().len(), 4);
        assert_eq!(s.generator_count(), 4);
    }

    #[test]
    fn cone_points_and_genus() {
        let x5 = build_base(5).unwrap();
        let c = x5.cone_points().unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].angle_multiple, 3);
        assert_eq!(build_base(9).unwrap().genus().unwrap(), 4);
        assert_eq!(build_base(8).unwrap().cone_points().unwrap().len(), 1);
        assert_eq!(build_base(8).unwrap().genus().unwrap(), 2);
        assert_eq!(build_base(10).unwrap().cone_points().unwrap().len(), 2);
        assert_eq!(build_base(10).unwrap().genus().unwrap(), 2);
    }

    #[test]
    fn rejects_bad_n() {
        for n in [3, 4, 6] {
            assert_eq!(build_base(n).unwrap_err(), Error::InvalidN(n));
        }
    }

    #[test]
    fn rejects_non_translation_gluing() {
        let s = build_base(5).unwrap();
        let polys = s.polygons().to_vec();
        let pairs = [
            (EdgeRef::new(0, 0), EdgeRef::new(1, 1)),
            (EdgeRef::new(0, 1), EdgeRef::new(1, 0)),
            (EdgeRef::new(0, 2), EdgeRef::new(1, 2)),
            (EdgeRef::new(0, 3), EdgeRef::new(1, 3)),
            (EdgeRef::new(0, 4), EdgeRef::new(1, 4)),
        ];
        let labels = vec![vec![None; 5], vec![None; 5]];
        let names = vec![vec![String::new(); 5]; 2];
        let err = TranslationSurface::new(s.field().clone(), polys, &pairs, labels, names);
        assert!(matches!(err, Err(Error::InvalidSurface(_))));
    }

    #[test]
    fn singularity_loop_visits_every_generator_twice() {
        let c = build_base(5).unwrap().cone_points().unwrap();
        let w = &c[0].loop_word;
        assert_eq!(w.len(), 8);
        for g in 0..4 {
            assert_eq!(w.letters().iter().filter(|l| l.generator == g).count(), 2);
        }
    }
}
