//! Exact `2 x 2` matrices of the Veech group of the base surface, its presentations, and
//! coset enumeration for the subgroup generated by the covering's affine maps.

mod coset;
mod presentation;

use std::collections::HashMap;
use std::fmt;
use std::ops::Mul;

use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::field::{lambda_n, Field, RealAlg};
use crate::flat_surface::{check_n, Vec2};

pub use coset::{coset_cap, coset_enumerate, coset_enumerate_with_cap, schreier_generators, CosetTable, DEFAULT_COSET_CAP};
pub use presentation::Presentation;

/// A `2 x 2` matrix `[[a, b], [c, d]]` over a real cyclotomic field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Mat2 {
    pub a: RealAlg,
    pub b: RealAlg,
    pub c: RealAlg,
    pub d: RealAlg,
}

impl Mat2 {
    pub fn new(a: RealAlg, b: RealAlg, c: RealAlg, d: RealAlg) -> Mat2 {
        Mat2 { a, b, c, d }
    }

    pub fn identity(field: &Field) -> Mat2 {
        let (o, z) = (RealAlg::one(field), RealAlg::zero(field));
        Mat2::new(o.clone(), z.clone(), z, o)
    }

    pub fn det(&self) -> RealAlg {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> RealAlg {
        &self.a + &self.d
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse(&self) -> Mat2 {
        assert!(self.det() == RealAlg::one(self.a.field()), "determinant is not 1");
        Mat2::new(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn neg(&self) -> Mat2 {
        Mat2::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }

    pub fn pow(&self, k: i64) -> Mat2 {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Mat2::identity(self.a.field());
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity(self.a.field())
    }

    pub fn is_minus_identity(&self) -> bool {
        self.neg().is_identity()
    }

    pub fn apply(&self, v: &Vec2) -> Vec2 {
        Vec2::new(&self.a * &v.x + &self.b * &v.y, &self.c * &v.x + &self.d * &v.y)
    }

    /// Representative of `{M, -M}`.
    pub fn projective(&self) -> Mat2 {
        let lead = [&self.a, &self.b, &self.c, &self.d]
            .into_iter()
            .find(|x| !x.is_zero())
            .expect("nonzero matrix");
        if lead.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> [[f64; 2]; 2] {
        [[self.a.to_f64(), self.b.to_f64()], [self.c.to_f64(), self.d.to_f64()]]
    }
}

impl Mul<&Mat2> for &Mat2 {
    type Output = Mat2;
    fn mul(self, o: &Mat2) -> Mat2 {
        Mat2::new(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }
}

/// A reduced word in numbered group generators: syllables `(generator, exponent)` with
/// nonzero exponents and distinct neighbours.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupWord(Vec<(usize, i64)>);

/// Generator names of words in the rotation and the shear.
pub const RT_NAMES: [&str; 2] = ["R", "T"];
/// Index of the rotation in [`RT_NAMES`].
pub const GEN_R: usize = 0;
/// Index of the shear in [`RT_NAMES`].
pub const GEN_T: usize = 1;

impl GroupWord {
    pub fn identity() -> GroupWord {
        GroupWord(Vec::new())
    }

    pub fn from_syllables(s: &[(usize, i64)]) -> GroupWord {
        let mut w = GroupWord::identity();
        for &(g, e) in s {
            w.push(g, e);
        }
        w
    }

    pub fn gen(g: usize, e: i64) -> GroupWord {
        GroupWord::from_syllables(&[(g, e)])
    }

    fn push(&mut self, g: usize, e: i64) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.0.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    self.0.pop();
                }
                return;
            }
        }
        self.0.push((g, e));
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut w = self.clone();
        for &(g, e) in &other.0 {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn pow(&self, k: i64) -> GroupWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = GroupWord::identity();
        for _ in 0..k.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// `self * other * self^-1`.
    pub fn conjugate(&self, other: &GroupWord) -> GroupWord {
        self.concat(other).concat(&self.inverse())
    }

    /// Letters with exponent `+1` or `-1`, left to right.
    pub fn letters(&self) -> Vec<(usize, i64)> {
        let mut out = Vec::new();
        for &(g, e) in &self.0 {
            for _ in 0..e.unsigned_abs() {
                out.push((g, e.signum()));
            }
        }
        out
    }

    /// Left-to-right product of generator matrices.
    pub fn eval(&self, gens: &[Mat2]) -> Mat2 {
        let mut m = Mat2::identity(gens[0].a.field());
        for &(g, e) in &self.0 {
            m = &m * &gens[g].pow(e);
        }
        m
    }

    pub fn render(&self, names: &[&str]) -> String {
        if self.0.is_empty() {
            return "I".into();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    names[g].to_string()
                } else {
                    format!("{}^{}", names[g], e)
                }
            })
            .collect();
        parts.join(" ")
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&RT_NAMES))
    }
}

impl Serialize for GroupWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Rotation by `pi / n`.
pub fn gen_r(n: usize) -> Mat2 {
    let f = Field::for_polygon(n);
    let c = f.cos_pi_frac(1, n);
    let s = f.sin_pi_frac(1, n);
    Mat2::new(c.clone(), -&s, s, c)
}

/// Horizontal shear by `lambda_n = 2 cot(pi / n)`.
pub fn gen_t(n: usize) -> Mat2 {
    let f = Field::for_polygon(n);
    Mat2::new(RealAlg::one(&f), lambda_n(n), RealAlg::zero(&f), RealAlg::one(&f))
}

/// Value of a word in `R` and `T`.
pub fn eval_group_word(n: usize, w: &GroupWord) -> Mat2 {
    w.eval(&[gen_r(n), gen_t(n)])
}

/// `R^l T^2 R^-l` as a word.
pub fn shear_word(l: i64) -> GroupWord {
    GroupWord::gen(GEN_R, l).conjugate(&GroupWord::gen(GEN_T, 2))
}

/// `R^l T^2 R^-l`: the shear fixing `R^l (1, 0)` with factor `2 lambda_n`.
pub fn shear_matrix(n: usize, l: i64) -> Mat2 {
    eval_group_word(n, &shear_word(l))
}

/// The shear with factor `2 lambda_n` along `R^l (1, 0)` written out from `cos(l pi/n)`
/// and `sin(l pi/n)`.
pub fn shear_closed_form(n: usize, l: i64) -> Mat2 {
    let f = Field::for_polygon(n);
    let c = f.cos_pi_frac(l, n);
    let s = f.sin_pi_frac(l, n);
    let two_lambda = lambda_n(n).scale_int(2);
    let one = RealAlg::one(&f);
    let cs = &two_lambda * &(&c * &s);
    Mat2::new(
        &one - &cs,
        &two_lambda * &(&c * &c),
        -(&two_lambda * &(&s * &s)),
        &one + &cs,
    )
}

/// How a generator of the subgroup is certified on the covering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    MinusIdentity,
    /// The horizontal shear by `lambda_n`.
    Shear,
    /// The shear by `2 lambda_n` along the direction `R^index (1, 0)`.
    DoubleShear { index: i64 },
}

/// A generator of the subgroup together with its matrix.
#[derive(Clone, Debug, Serialize)]
pub struct GammaGenerator {
    pub word: GroupWord,
    pub kind: GeneratorKind,
    pub matrix: Mat2,
}

/// Generators of the subgroup shared by all coverings in the family.
///
/// Odd `n`: `-I`, `T` and `R^j T^2 R^-j` for `1 <= j <= (n-1)/2`. Even `n`: `-I`, `T`,
/// `R^2j T^2 R^-2j` for `1 <= j <= (n-2)/2` and `R^2j (T^-1 R^2)^2 R^-2j` for
/// `0 <= j <= (n-2)/2`.
pub fn gamma_generators(n: usize) -> Result<Vec<GammaGenerator>> {
    check_n(n)?;
    let ni = n as i64;
    let mut out = vec![
        (GroupWord::gen(GEN_R, ni), GeneratorKind::MinusIdentity),
        (GroupWord::gen(GEN_T, 1), GeneratorKind::Shear),
    ];
    if n % 2 == 1 {
        for j in 1..=(ni - 1) / 2 {
            out.push((shear_word(j), GeneratorKind::DoubleShear { index: j }));
        }
    } else {
        for j in 1..=(ni - 2) / 2 {
            out.push((shear_word(2 * j), GeneratorKind::DoubleShear { index: 2 * j }));
        }
        let twisted = GroupWord::from_syllables(&[(GEN_T, -1), (GEN_R, 2)]).pow(2);
        for j in 0..=(ni - 2) / 2 {
            out.push((
                GroupWord::gen(GEN_R, 2 * j).conjugate(&twisted),
                GeneratorKind::DoubleShear { index: 2 * j - 1 },
            ));
        }
    }
    Ok(out
        .into_iter()
        .map(|(word, kind)| {
            let matrix = eval_group_word(n, &word);
            GammaGenerator { word, kind, matrix }
        })
        .collect())
}

/// Coset representatives of the subgroup: `R^j` for `0 <= j < n` (odd) or `R^2j` for
/// `0 <= j < n/2` (even).
pub fn rotation_representatives(n: usize) -> Vec<i64> {
    if n % 2 == 1 {
        (0..n as i64).collect()
    } else {
        (0..n as i64).step_by(2).collect()
    }
}

/// Writes `target` as a product of at most `2 * depth` letters from `gens` and their
/// inverses, up to sign. Returns the syllables `(generator index, +-1)`.
pub fn express_up_to_sign(target: &Mat2, gens: &[Mat2], depth: usize) -> Option<Vec<(usize, i64)>> {
    let field = target.a.field().clone();
    let mut letters: Vec<(usize, i64, Mat2)> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        letters.push((i, 1, g.clone()));
        letters.push((i, -1, g.inverse()));
    }
    // all products of at most `depth` letters, keyed by their projective class
    let mut left: HashMap<Mat2, Vec<(usize, i64)>> = HashMap::new();
    let mut layer: Vec<(Mat2, Vec<(usize, i64)>)> = vec![(Mat2::identity(&field), Vec::new())];
    left.insert(Mat2::identity(&field), Vec::new());
    for _ in 0..depth {
        let mut next = Vec::new();
        for (m, w) in &layer {
            for (i, e, g) in &letters {
                let p = m * g;
                let key = p.projective();
                if left.contains_key(&key) {
                    continue;
                }
                let mut nw = w.clone();
                nw.push((*i, *e));
                left.insert(key, nw.clone());
                next.push((p, nw));
            }
        }
        layer = next;
    }
    // target = u * v with u in `left`, v a product of at most `depth` letters
    for vw in left.values() {
        let vm = vw.iter().fold(Mat2::identity(&field), |acc, &(i, e)| {
            &acc * &if e > 0 { gens[i].clone() } else { gens[i].inverse() }
        });
        let u = (target * &vm.inverse()).projective();
        if let Some(uw) = left.get(&u) {
            let mut w = uw.clone();
            w.extend(vw.iter().copied());
            return Some(w);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_and_shear_identities() {
        for n in [5usize, 7, 8, 10] {
            let ni = n as i64;
            let r = gen_r(n);
            let t = gen_t(n);
            assert!(r.pow(ni).is_minus_identity());
            assert!(r.pow(2 * ni).is_identity());
            let s = &t.inverse() * &r;
            assert!(s.pow(2).is_minus_identity());
            let trt = &(&t * &r.inverse()) * &t;
            assert_eq!(trt, r.neg());
            assert_eq!(&(&r * &t) * &r.inverse(), &r.pow(ni + 2) * &t.inverse());
            assert_eq!(r.det(), RealAlg::one(r.a.field()));
        }
    }

    #[test]
    fn shear_closed_forms() {
        for n in [5usize, 8, 9] {
            for l in 0..n as i64 {
                let m = shear_matrix(n, l);
                assert_eq!(m, shear_closed_form(n, l));
                let f = Field::for_polygon(n);
                let v = Vec2::new(f.cos_pi_frac(l, n), f.sin_pi_frac(l, n));
                assert_eq!(m.apply(&v), v);
            }
        }
        assert_eq!(shear_matrix(5, 0), gen_t(5).pow(2));
    }

    #[test]
    fn even_twisted_shear() {
        let n = 8;
        let (r, t) = (gen_r(n), gen_t(n));
        let x = &t.inverse() * &r.pow(2);
        assert_eq!(x.pow(2), &(&r.inverse() * &t.pow(2)) * &r);
    }

    #[test]
    fn generator_lists() {
        let g5 = gamma_generators(5).unwrap();
        assert_eq!(g5.len(), 4);
        assert!(g5[0].matrix.is_minus_identity());
        assert!(g5[0].matrix.pow(2).is_identity());
        let g8 = gamma_generators(8).unwrap();
        assert_eq!(g8.len(), 2 + 3 + 4);
        assert_eq!(g8[2].word.to_string(), "R^2 T^2 R^-2");
        for g in &g8 {
            if let GeneratorKind::DoubleShear { index } = g.kind {
                assert_eq!(g.matrix, shear_matrix(8, index));
            }
        }
    }

    #[test]
    fn word_algebra() {
        let w = GroupWord::from_syllables(&[(0, 2), (1, 1), (1, -1), (0, -2)]);
        assert!(w.is_identity());
        let u = GroupWord::from_syllables(&[(0, 1), (1, -2)]);
        assert!(u.concat(&u.inverse()).is_identity());
        assert_eq!(u.to_string(), "R T^-2");
        assert_eq!(u.letters().len(), 3);
    }

    #[test]
    fn search_finds_products() {
        let n = 5;
        let gens: Vec<Mat2> = gamma_generators(n).unwrap().into_iter().map(|g| g.matrix).collect();
        let target = &(&gens[1] * &gens[2].inverse()) * &gens[3];
        let w = express_up_to_sign(&target.neg(), &gens[1..], 2).unwrap();
        assert!(w.len() <= 4);
    }
}
