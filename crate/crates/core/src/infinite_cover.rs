//! The `Z`-indexed covering of the base surface.
//!
//! Copies are indexed by all integers. The monodromy of every generator is a parity-affine
//! bijection `l -> l + t_(l mod 2)`, so every statement about the infinite surface reduces to
//! integer arithmetic on two shifts.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::covering::{special_generators, CoveringSurface};
use crate::error::{Error, Result};
use crate::flat_surface::{base_generator_count, build_base, EdgeRef, Vec2};
use crate::word::{Letter, Word};

/// The bijection `l -> l + t_even` for even `l` and `l -> l + t_odd` for odd `l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZPermutation {
    pub t_even: i64,
    pub t_odd: i64,
}

/// Orbit structure of a [`ZPermutation`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZOrbits {
    /// Number of infinite orbits.
    pub infinite: u64,
    /// Lengths of the finite orbits; each occurs infinitely often.
    pub finite_lengths: Vec<u64>,
}

impl ZPermutation {
    /// Fails unless both shifts are even (parity preserved) or both odd (parities swapped).
    pub fn new(t_even: i64, t_odd: i64) -> Result<ZPermutation> {
        if t_even.is_even() != t_odd.is_even() {
            return Err(Error::InvalidMonodromy(format!(
                "shifts ({}, {}) do not define a bijection of Z",
                t_even, t_odd
            )));
        }
        Ok(ZPermutation { t_even, t_odd })
    }

    pub fn identity() -> ZPermutation {
        ZPermutation { t_even: 0, t_odd: 0 }
    }

    fn shift_at(&self, l: i64) -> i64 {
        if l.is_even() {
            self.t_even
        } else {
            self.t_odd
        }
    }

    pub fn apply(&self, l: i64) -> i64 {
        l + self.shift_at(l)
    }

    pub fn swaps_parity(&self) -> bool {
        self.t_even.is_odd()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &ZPermutation) -> ZPermutation {
        ZPermutation {
            t_even: other.t_even + self.shift_at(other.t_even),
            t_odd: other.t_odd + self.shift_at(1 + other.t_odd),
        }
    }

    pub fn inverse(&self) -> ZPermutation {
        if self.swaps_parity() {
            // an even l is the image of the odd l - t_odd
            ZPermutation {
                t_even: -self.t_odd,
                t_odd: -self.t_even,
            }
        } else {
            ZPermutation {
                t_even: -self.t_even,
                t_odd: -self.t_odd,
            }
        }
    }

    pub fn pow(&self, k: i64) -> ZPermutation {
        let base = if k < 0 { self.inverse() } else { *self };
        let mut out = ZPermutation::identity();
        for _ in 0..k.unsigned_abs() {
            out = base.compose(&out);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.t_even == 0 && self.t_odd == 0
    }

    pub fn orbits(&self) -> ZOrbits {
        let mut infinite = 0;
        let mut finite_lengths = Vec::new();
        if self.swaps_parity() {
            let s = self.t_even + self.t_odd;
            if s == 0 {
                finite_lengths.push(2);
            } else {
                // one orbit per residue class of the even numbers modulo |s|
                infinite = s.unsigned_abs() / 2;
            }
        } else {
            for t in [self.t_even, self.t_odd] {
                if t == 0 {
                    finite_lengths.push(1);
                } else {
                    infinite += t.unsigned_abs() / 2;
                }
            }
        }
        finite_lengths.sort_unstable();
        finite_lengths.dedup();
        ZOrbits {
            infinite,
            finite_lengths,
        }
    }
}

impl fmt::Display for ZPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "even l -> l{:+}, odd l -> l{:+}", self.t_even, self.t_odd)
    }
}

/// Monodromy of the infinite covering: one parity-affine bijection per base generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZMonodromy {
    pub n: usize,
    pub k1: usize,
    pub k2: usize,
    pub perms: Vec<ZPermutation>,
}

impl ZMonodromy {
    pub fn letter(&self, l: Letter) -> ZPermutation {
        let p = self.perms[l.generator];
        if l.exponent > 0 {
            p
        } else {
            p.inverse()
        }
    }

    /// Anti-homomorphic evaluation: `a_1 ... a_k` maps to `m(a_k) ∘ ... ∘ m(a_1)`.
    pub fn eval(&self, w: &Word) -> Result<ZPermutation> {
        w.validate(self.perms.len())?;
        let mut out = ZPermutation::identity();
        for &l in w.letters() {
            out = self.letter(l).compose(&out);
        }
        Ok(out)
    }
}

/// `x_k1 -> (even +1, odd -1)`, `x_k2 -> (even -1, odd +1)`, all other generators trivial.
pub fn std_infinite_monodromy(n: usize) -> Result<ZMonodromy> {
    let (k1, k2) = special_generators(n)?;
    let mut perms = vec![ZPermutation::identity(); base_generator_count(n)];
    perms[k1] = ZPermutation { t_even: 1, t_odd: -1 };
    perms[k2] = ZPermutation { t_even: -1, t_odd: 1 };
    Ok(ZMonodromy { n, k1, k2, perms })
}

/// Preimages of one base cone point.
#[derive(Clone, Debug, Serialize)]
pub struct SingularFibre {
    pub loop_word: Word,
    pub monodromy: ZPermutation,
    pub orbits: ZOrbits,
}

/// Infinite-angle singularities of the infinite covering.
#[derive(Clone, Debug, Serialize)]
pub struct InfiniteSingularities {
    pub n: usize,
    pub fibres: Vec<SingularFibre>,
    pub total: u64,
}

/// Counts the infinite orbits of the loop monodromy over every base cone point.
pub fn infinite_singularities(n: usize) -> Result<InfiniteSingularities> {
    let m = std_infinite_monodromy(n)?;
    let base = build_base(n)?;
    let mut fibres = Vec::new();
    for c in base.cone_points()? {
        let p = m.eval(&c.loop_word)?;
        fibres.push(SingularFibre {
            loop_word: c.loop_word,
            monodromy: p,
            orbits: p.orbits(),
        });
    }
    let total = fibres.iter().map(|f| f.orbits.infinite).sum();
    Ok(InfiniteSingularities { n, fibres, total })
}

/// Image of one loop of the degree-two covering.
#[derive(Clone, Debug, Serialize)]
pub struct BasisImage {
    pub word: Word,
    /// Shift of the even copies.
    pub shift: i64,
}

/// The infinite covering as a `Z`-covering of the degree-two covering.
#[derive(Clone, Debug, Serialize)]
pub struct ZCoverStructure {
    pub n: usize,
    pub basis: Vec<BasisImage>,
    /// Shift generating the deck group on the even copies.
    pub deck_shift: i64,
    pub note: String,
}

/// The listed free basis of the fundamental group of the punctured degree-two covering, as
/// words in the base generators based at copy 0.
pub fn degree_two_basis(n: usize) -> Result<Vec<Word>> {
    let (k1, k2) = special_generators(n)?;
    let x = |i: usize| Word::gen(i);
    let xi = |i: usize| Word::gen_inv(i);
    let mut out = vec![x(k2).concat(&xi(k1)), x(k1).concat(&x(k1)), x(k1).concat(&x(k2))];
    for i in (0..base_generator_count(n)).filter(|&i| i != k1 && i != k2) {
        out.push(x(i));
        out.push(x(k1).concat(&x(i)).concat(&xi(k1)));
    }
    Ok(out)
}

/// Checks that the infinite monodromy restricted to the degree-two basis acts on the even
/// copies by `x_k1 x_k2 -> +2`, `x_k2 x_k1^-1 -> -2` and trivially otherwise.
pub fn z_cover_structure(n: usize) -> Result<ZCoverStructure> {
    let m = std_infinite_monodromy(n)?;
    let (k1, k2) = (m.k1, m.k2);
    let up = Word::gen(k1).concat(&Word::gen(k2));
    let down = Word::gen(k2).concat(&Word::gen_inv(k1));
    let mut basis = Vec::new();
    let mut deck = 0i64;
    for w in degree_two_basis(n)? {
        let p = m.eval(&w)?;
        if p.t_even.is_odd() {
            return Err(Error::VerificationFailed {
                word: w.to_string(),
                reason: "not a closed loop at an even copy".into(),
            });
        }
        let expected = if w == up {
            2
        } else if w == down {
            -2
        } else {
            0
        };
        if p.t_even != expected {
            return Err(Error::VerificationFailed {
                word: w.to_string(),
                reason: format!("even copies shift by {}, expected {}", p.t_even, expected),
            });
        }
        deck = deck.gcd(&p.t_even);
        basis.push(BasisImage {
            word: w,
            shift: p.t_even,
        });
    }
    if deck != 2 {
        return Err(Error::VerificationFailed {
            word: "basis".into(),
            reason: format!("even-copy shifts generate {}Z, expected 2Z", deck),
        });
    }
    Ok(ZCoverStructure {
        n,
        basis,
        deck_shift: deck,
        note: "the basis property of the listed loops is assumed, not derived".into(),
    })
}

/// One term of an edge chain: `coefficient` times the oriented side `edge`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChainTerm {
    pub edge: EdgeRef,
    pub coefficient: i64,
}

/// Holonomy of a chain of sides of the covering, relative to its cone points.
pub fn holonomy(c: &CoveringSurface, chain: &[ChainTerm]) -> Result<Vec2> {
    if chain.is_empty() {
        return Err(Error::NotAChain("empty chain".into()));
    }
    let s = &c.surface;
    let mut total = Vec2::zero(s.field());
    for t in chain {
        let e = t.edge;
        if e.polygon >= s.polygons().len() || e.side >= s.polygon(e.polygon).len() {
            return Err(Error::NotAChain(format!(
                "side {} of polygon {} does not exist",
                e.side, e.polygon
            )));
        }
        if t.coefficient == 0 {
            return Err(Error::NotAChain("zero coefficient".into()));
        }
        total = &total + &s.edge_vector(e).scale_int(t.coefficient);
    }
    Ok(total)
}

/// The side of copy `copy` that is crossed positively by generator `generator`.
pub fn generator_edge(c: &CoveringSurface, copy: usize, generator: usize) -> Result<EdgeRef> {
    let b = c.base_polygon_count();
    for p in 0..b {
        for side in 0..c.base.polygon(p).len() {
            if c.base.label(EdgeRef::new(p, side)) == Some(Letter::new(generator, 1)) {
                return Ok(EdgeRef::new(c.polygon_index(copy, p), side));
            }
        }
    }
    Err(Error::IndexOutOfRange {
        index: generator,
        max: c.base.generator_count().saturating_sub(1),
    })
}

/// The relative class defining the infinite covering: the sides `x_k2` of copies 0 and 1 of
/// the degree-two covering with opposite orientations.
pub fn defining_chain(c: &CoveringSurface) -> Result<Vec<ChainTerm>> {
    let k2 = c.monodromy.k2;
    Ok(vec![
        ChainTerm {
            edge: generator_edge(c, 0, k2)?,
            coefficient: 1,
        },
        ChainTerm {
            edge: generator_edge(c, 1, k2)?,
            coefficient: -1,
        },
    ])
}

/// The parity-affine `sigma_T`: fixes even copies and shifts odd copies by 2.
pub fn infinite_sigma_t() -> ZPermutation {
    ZPermutation { t_even: 0, t_odd: 2 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::build_cover;

    #[test]
    fn generator_images() {
        let m = std_infinite_monodromy(5).unwrap();
        let s1 = m.perms[m.k1];
        assert!(s1.compose(&s1).is_identity());
        let suc = m.eval(&"x2 x3^-1".parse().unwrap()).unwrap();
        assert_eq!((suc.t_even, suc.t_odd), (2, -2));
        assert_eq!(suc.orbits().infinite, 2);
        assert!(m.perms[0].is_identity());
    }

    #[test]
    fn rejects_mixed_parity() {
        assert!(ZPermutation::new(1, 2).is_err());
        assert!(ZPermutation::new(3, -1).is_ok());
    }

    #[test]
    fn inverse_of_swap() {
        let p = ZPermutation::new(3, -5).unwrap();
        for l in -20..20 {
            assert_eq!(p.inverse().apply(p.apply(l)), l);
        }
    }

    #[test]
    fn singularity_counts() {
        for n in [5, 7, 8, 9, 10, 12, 14] {
            assert_eq!(infinite_singularities(n).unwrap().total, 4, "n = {}", n);
        }
        let s10 = infinite_singularities(10).unwrap();
        assert_eq!(s10.fibres.len(), 2);
        assert!(s10.fibres.iter().all(|f| f.orbits.infinite == 2));
        let s5 = infinite_singularities(5).unwrap();
        let p = s5.fibres[0].monodromy;
        assert_eq!((p.t_even.abs(), p.t_odd.abs()), (4, 4));
    }

    #[test]
    fn degree_two_structure() {
        for n in [5, 7, 8, 10] {
            let z = z_cover_structure(n).unwrap();
            assert_eq!(z.deck_shift, 2);
        }
        let z8 = z_cover_structure(8).unwrap();
        let sq = z8.basis.iter().find(|b| b.word.to_string() == "x1 x1").unwrap();
        assert_eq!(sq.shift, 0);
    }

    #[test]
    fn defining_class_has_zero_holonomy() {
        let y = build_cover(8, 2).unwrap();
        let w = defining_chain(&y).unwrap();
        assert!(holonomy(&y, &w).unwrap().is_zero());
        assert!(!holonomy(&y, &w[..1]).unwrap().is_zero());
        assert!(holonomy(&y, &[]).is_err());
    }

    #[test]
    fn sigma_t_conditions() {
        let m = std_infinite_monodromy(7).unwrap();
        let suc = m.eval(&Word::gen(m.k1).concat(&Word::gen_inv(m.k2))).unwrap();
        let st = infinite_sigma_t();
        assert_eq!(st.compose(&suc), suc.compose(&st));
        assert_eq!(m.perms[m.k1].compose(&st), st.compose(&m.perms[m.k2]));
    }
}
