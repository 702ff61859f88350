use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::covering::{eval_word, standard_monodromy, CoveringSurface, Monodromy, Perm};
use crate::cylinders::{decomposition_auto, default_cap, Cylinder, Direction};
use crate::error::{Error, Result};
use crate::field::RealAlg;
use crate::flat_surface::{build_base, check_n};
use crate::infinite_cover::{std_infinite_monodromy, ZMonodromy, ZPermutation};
use crate::word::Word;

/// Number of sheets of a covering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degree {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Finite(d) => write!(f, "{}", d),
            Degree::Infinite => write!(f, "infinity"),
        }
    }
}

impl FromStr for Degree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Degree> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Degree::Infinite),
            t => {
                let d: usize = t
                    .parse()
                    .map_err(|_| Error::InvalidMonodromy(format!("'{}' is not a degree", t)))?;
                if d < 2 {
                    return Err(Error::InvalidDegree(d));
                }
                Ok(Degree::Finite(d))
            }
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Degree::Finite(d) => s.serialize_u64(*d as u64),
            Degree::Infinite => s.serialize_str("infinity"),
        }
    }
}

impl<'de> Deserialize<'de> for Degree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Degree, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(k) => Ok(Degree::Finite(k as usize)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Action of a loop on the sheets, finite or `Z`-indexed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SheetMap {
    Finite(Perm),
    Infinite(ZPermutation),
}

/// Cylinders over one base cylinder that share a sheet count.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LiftClass {
    /// Sheets covered by one lift; `None` for an infinite cylinder.
    pub sheets: Option<u64>,
    /// Number of such lifts; `None` for infinitely many.
    pub count: Option<u64>,
}

impl SheetMap {
    /// `self ∘ other`.
    pub fn compose(&self, other: &SheetMap) -> Result<SheetMap> {
        match (self, other) {
            (SheetMap::Finite(a), SheetMap::Finite(b)) if a.degree() == b.degree() => {
                Ok(SheetMap::Finite(a.compose(b)))
            }
            (SheetMap::Infinite(a), SheetMap::Infinite(b)) => Ok(SheetMap::Infinite(a.compose(b))),
            _ => Err(Error::InvalidMonodromy("sheet maps of different coverings".into())),
        }
    }

    pub fn inverse(&self) -> SheetMap {
        match self {
            SheetMap::Finite(p) => SheetMap::Finite(p.inverse()),
            SheetMap::Infinite(p) => SheetMap::Infinite(p.inverse()),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            SheetMap::Finite(p) => p.is_identity(),
            SheetMap::Infinite(p) => p.is_identity(),
        }
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).map(|s| s.is_identity()).unwrap_or(false)
    }

    /// Orbit structure, one class per orbit length.
    pub fn lift_classes(&self) -> Vec<LiftClass> {
        let mut out: Vec<LiftClass> = Vec::new();
        match self {
            SheetMap::Finite(p) => {
                for len in p.cycle_type() {
                    let len = Some(len as u64);
                    match out.iter_mut().find(|c| c.sheets == len) {
                        Some(c) => c.count = c.count.map(|k| k + 1),
                        None => out.push(LiftClass {
                            sheets: len,
                            count: Some(1),
                        }),
                    }
                }
            }
            SheetMap::Infinite(p) => {
                let o = p.orbits();
                if o.infinite > 0 {
                    out.push(LiftClass {
                        sheets: None,
                        count: Some(o.infinite),
                    });
                }
                for len in o.finite_lengths {
                    out.push(LiftClass {
                        sheets: Some(len),
                        count: None,
                    });
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for SheetMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SheetMap::Finite(p) => write!(f, "{}", p),
            SheetMap::Infinite(p) => write!(f, "{}", p),
        }
    }
}

/// Monodromy of a finite or infinite covering.
#[derive(Clone, Debug)]
pub enum Sheets {
    Finite(Monodromy),
    Infinite(ZMonodromy),
}

/// A covering of the base surface described by its monodromy alone.
#[derive(Clone, Debug)]
pub struct CoverModel {
    pub n: usize,
    pub sheets: Sheets,
    /// Whether the monodromy is the standard one for its degree.
    pub standard: bool,
}

impl CoverModel {
    pub fn standard(n: usize, d: Degree) -> Result<CoverModel> {
        check_n(n)?;
        let sheets = match d {
            Degree::Finite(d) => Sheets::Finite(standard_monodromy(n, d)?),
            Degree::Infinite => Sheets::Infinite(std_infinite_monodromy(n)?),
        };
        Ok(CoverModel {
            n,
            sheets,
            standard: true,
        })
    }

    pub fn from_monodromy(m: Monodromy) -> CoverModel {
        CoverModel {
            n: m.n,
            standard: m.standard,
            sheets: Sheets::Finite(m),
        }
    }

    pub fn from_cover(c: &CoveringSurface) -> CoverModel {
        CoverModel::from_monodromy(c.monodromy.clone())
    }

    pub fn degree(&self) -> Degree {
        match &self.sheets {
            Sheets::Finite(m) => Degree::Finite(m.degree),
            Sheets::Infinite(_) => Degree::Infinite,
        }
    }

    pub fn special_generators(&self) -> (usize, usize) {
        match &self.sheets {
            Sheets::Finite(m) => (m.k1, m.k2),
            Sheets::Infinite(m) => (m.k1, m.k2),
        }
    }

    pub fn generator_count(&self) -> usize {
        match &self.sheets {
            Sheets::Finite(m) => m.perms.len(),
            Sheets::Infinite(m) => m.perms.len(),
        }
    }

    pub fn generator(&self, g: usize) -> SheetMap {
        match &self.sheets {
            Sheets::Finite(m) => SheetMap::Finite(m.perms[g].clone()),
            Sheets::Infinite(m) => SheetMap::Infinite(m.perms[g]),
        }
    }

    /// Anti-homomorphic evaluation of a loop.
    pub fn eval(&self, w: &Word) -> Result<SheetMap> {
        Ok(match &self.sheets {
            Sheets::Finite(m) => SheetMap::Finite(eval_word(m, w)?),
            Sheets::Infinite(m) => SheetMap::Infinite(m.eval(w)?),
        })
    }
}

type CylinderCache = Mutex<HashMap<(usize, i64), Arc<Vec<Cylinder>>>>;

static BASE_CYLINDERS: Lazy<CylinderCache> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Cylinders of the base surface in the direction `(1, 0)` rotated by `l pi / n`, cached.
pub fn base_cylinders(n: usize, l: i64) -> Result<Arc<Vec<Cylinder>>> {
    let key = (n, l.rem_euclid(n as i64));
    if let Some(c) = BASE_CYLINDERS.lock().expect("cache lock").get(&key) {
        return Ok(c.clone());
    }
    let s = build_base(n)?;
    let d = decomposition_auto(&s, &Direction::rotated(n, key.1), default_cap(n))?;
    let c = Arc::new(d.cylinders);
    BASE_CYLINDERS
        .lock()
        .expect("cache lock")
        .insert(key, c.clone());
    Ok(c)
}

/// Cylinders of a covering over one base cylinder.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftedCylinder {
    pub base_cylinder: usize,
    pub height: RealAlg,
    /// Circumference over height; `None` for an infinite cylinder.
    pub inverse_modulus: Option<RealAlg>,
    pub sheets: Option<u64>,
    pub count: Option<u64>,
}

/// A base cylinder with the sheet action of its core curve and its lifts.
#[derive(Clone, Debug)]
pub struct BaseLift {
    pub index: usize,
    pub cylinder: Cylinder,
    pub core_monodromy: SheetMap,
    pub lifts: Vec<LiftedCylinder>,
}

/// Lifts of every base cylinder in direction `l` to the covering, read off from the
/// orbits of the core curve monodromy.
pub fn lifted_cylinders(model: &CoverModel, l: i64) -> Result<Vec<BaseLift>> {
    let base = base_cylinders(model.n, l)?;
    let mut out = Vec::with_capacity(base.len());
    for (i, c) in base.iter().enumerate() {
        let core = model.eval(&c.core_word)?;
        let lifts = core
            .lift_classes()
            .into_iter()
            .map(|cl| LiftedCylinder {
                base_cylinder: i,
                height: c.height.clone(),
                inverse_modulus: cl.sheets.map(|k| c.inverse_modulus.scale_int(k as i64)),
                sheets: cl.sheets,
                count: cl.count,
            })
            .collect();
        out.push(BaseLift {
            index: i,
            cylinder: c.clone(),
            core_monodromy: core,
            lifts,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_text() {
        assert_eq!("7".parse::<Degree>().unwrap(), Degree::Finite(7));
        assert_eq!("infinity".parse::<Degree>().unwrap(), Degree::Infinite);
        assert!("1".parse::<Degree>().is_err());
        assert!("x".parse::<Degree>().is_err());
        let j = serde_json::to_string(&[Degree::Finite(3), Degree::Infinite]).unwrap();
        assert_eq!(j, r#"[3,"infinity"]"#);
        let back: Vec<Degree> = serde_json::from_str(&j).unwrap();
        assert_eq!(back, vec![Degree::Finite(3), Degree::Infinite]);
    }

    #[test]
    fn horizontal_lifts_of_degree_three() {
        let m = CoverModel::standard(5, Degree::Finite(3)).unwrap();
        let lifts = lifted_cylinders(&m, 0).unwrap();
        let sheets: usize = lifts
            .iter()
            .flat_map(|b| &b.lifts)
            .map(|l| (l.sheets.unwrap() * l.count.unwrap()) as usize)
            .sum();
        assert_eq!(sheets, 3 * lifts.len());
    }

    #[test]
    fn infinite_classes() {
        let p = SheetMap::Infinite(ZPermutation { t_even: 2, t_odd: -2 });
        assert_eq!(
            p.lift_classes(),
            vec![LiftClass {
                sheets: None,
                count: Some(2)
            }]
        );
        let q = SheetMap::Infinite(ZPermutation::identity());
        assert_eq!(
            q.lift_classes(),
            vec![LiftClass {
                sheets: Some(1),
                count: None
            }]
        );
    }
}
