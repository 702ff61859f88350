use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flat_surface::check_n;

use super::{gen_r, gen_t, GroupWord, Mat2, GEN_R, GEN_T};

/// A finite presentation of the Veech group of the base surface together with the data
/// needed to read off the quotient: its elliptic generators, cusp representatives and
/// orbifold Euler characteristic.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub n: usize,
    pub names: Vec<String>,
    pub matrices: Vec<Mat2>,
    pub relators: Vec<GroupWord>,
    /// Rotation whose powers represent the cosets of the subgroup.
    pub rotation: GroupWord,
    /// Torsion elements and their orders modulo `-I`.
    pub elliptic: Vec<(GroupWord, u64)>,
    /// One parabolic per cusp class of the base quotient.
    pub cusps: Vec<GroupWord>,
    pub chi_orb: BigRational,
}

#[derive(Serialize)]
struct PresentationJson<'a> {
    n: usize,
    generators: &'a [String],
    relators: Vec<String>,
}

impl Serialize for Presentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PresentationJson {
            n: self.n,
            generators: &self.names,
            relators: self.relators.iter().map(|w| self.render(w)).collect(),
        }
        .serialize(s)
    }
}

fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

impl Presentation {
    /// Odd `n`: `<R, T | R^n (T^-1 R)^-2, R^2n, R^n T R^-n T^-1>`.
    ///
    /// Even `n`: generators `r = R^2`, `t = T`, `z = R^n = -I` with relators `r^(n/2) z^-1`,
    /// `z^2`, `[z, r]`, `[z, t]`.
    pub fn for_base(n: usize) -> Result<Presentation> {
        check_n(n)?;
        let ni = n as i64;
        let (r, t) = (gen_r(n), gen_t(n));
        let p = if n % 2 == 1 {
            let s = GroupWord::from_syllables(&[(GEN_T, -1), (GEN_R, 1)]);
            let rn = GroupWord::gen(GEN_R, ni);
            Presentation {
                n,
                names: vec!["R".into(), "T".into()],
                matrices: vec![r, t],
                relators: vec![
                    rn.concat(&s.pow(-2)),
                    GroupWord::gen(GEN_R, 2 * ni),
                    rn.conjugate(&GroupWord::gen(GEN_T, 1)).concat(&GroupWord::gen(GEN_T, -1)),
                ],
                rotation: GroupWord::gen(GEN_R, 1),
                elliptic: vec![(GroupWord::gen(GEN_R, 1), n as u64), (s, 2)],
                cusps: vec![GroupWord::gen(GEN_T, 1)],
                chi_orb: ratio(1, ni) - ratio(1, 2),
            }
        } else {
            let (gr, gt, gz) = (0usize, 1usize, 2usize);
            let z = GroupWord::gen(gz, 1);
            let comm = |g: usize| {
                z.concat(&GroupWord::gen(g, 1))
                    .concat(&GroupWord::gen(gz, -1))
                    .concat(&GroupWord::gen(g, -1))
            };
            Presentation {
                n,
                names: vec!["r".into(), "t".into(), "z".into()],
                matrices: vec![r.pow(2), t, r.pow(ni)],
                relators: vec![
                    GroupWord::gen(gr, ni / 2).concat(&GroupWord::gen(gz, -1)),
                    GroupWord::gen(gz, 2),
                    comm(gr),
                    comm(gt),
                ],
                rotation: GroupWord::gen(gr, 1),
                elliptic: vec![(GroupWord::gen(gr, 1), (n / 2) as u64)],
                cusps: vec![
                    GroupWord::gen(gt, 1),
                    GroupWord::from_syllables(&[(gt, -1), (gr, 1)]),
                ],
                chi_orb: ratio(2, ni) - ratio(1, 1),
            }
        };
        for w in &p.relators {
            if !w.eval(&p.matrices).is_identity() {
                return Err(Error::BadRelator(p.render(w)));
            }
        }
        Ok(p)
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn render(&self, w: &GroupWord) -> String {
        let names: Vec<&str> = self.names.iter().map(|s| s.as_str()).collect();
        w.render(&names)
    }

    pub fn eval(&self, w: &GroupWord) -> Mat2 {
        w.eval(&self.matrices)
    }

    /// Rewrites a word in `R` and `T` over this presentation's generators. For even `n`
    /// every power of `R` must be even.
    pub fn from_rt_word(&self, w: &GroupWord) -> Result<GroupWord> {
        if self.n % 2 == 1 {
            return Ok(w.clone());
        }
        let mut out = Vec::new();
        for &(g, e) in w.syllables() {
            if g == GEN_R {
                if e % 2 != 0 {
                    return Err(Error::InvalidWord(format!(
                        "{} has an odd power of R",
                        w
                    )));
                }
                out.push((0, e / 2));
            } else {
                out.push((1, e));
            }
        }
        Ok(GroupWord::from_syllables(&out))
    }

    /// `R^j` over this presentation's generators.
    pub fn rotation_power(&self, j: i64) -> Result<GroupWord> {
        self.from_rt_word(&GroupWord::gen(GEN_R, j))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relators_hold() {
        for n in [5, 7, 8, 9, 10, 12, 13] {
            let p = Presentation::for_base(n).unwrap();
            for w in &p.relators {
                assert!(p.eval(w).is_identity());
            }
        }
    }

    #[test]
    fn odd_relators_read_back() {
        let p = Presentation::for_base(5).unwrap();
        let shown: Vec<String> = p.relators.iter().map(|w| p.render(w)).collect();
        assert_eq!(shown, ["R^4 T R^-1 T", "R^10", "R^5 T R^-5 T^-1"]);
    }

    #[test]
    fn even_words_translate() {
        let p = Presentation::for_base(8).unwrap();
        let w = GroupWord::from_syllables(&[(GEN_R, 2), (GEN_T, 2), (GEN_R, -2)]);
        assert_eq!(p.render(&p.from_rt_word(&w).unwrap()), "r t^2 r^-1");
        assert!(p.from_rt_word(&GroupWord::gen(GEN_R, 1)).is_err());
    }
}
