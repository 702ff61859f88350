//! Machine-checkable certificates that a covering has the expected Veech group.
//!
//! Each generator of the subgroup gets a certificate that it lifts to an affine map of the
//! covering, and each nontrivial rotation coset representative gets a certificate that it
//! does not. Every certificate carries the data its verdict depends on, and
//! [`Certificate::revalidate`] recomputes the verdict from that data alone.

mod model;
mod sheet_action;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::covering::{sigma_1, sigma_2, Perm};
use crate::error::{Error, Result};
use crate::field::{lambda_n, RealAlg};
use crate::flat_surface::check_n;
use crate::infinite_cover::ZPermutation;
use crate::veech_group::{
    coset_enumerate, gamma_generators, rotation_representatives, GammaGenerator, GeneratorKind,
    GroupWord, Presentation, GEN_R, GEN_T,
};
use crate::word::Word;

pub use model::{
    base_cylinders, lifted_cylinders, BaseLift, CoverModel, Degree, LiftClass, LiftedCylinder,
    SheetMap, Sheets,
};
pub use sheet_action::{intertwiner, rotated_generators, SheetActionObstruction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// A verdict together with the evidence it rests on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: usize,
    pub d: Degree,
    pub standard: bool,
    pub verdict: Verdict,
    #[serde(flatten)]
    pub evidence: Evidence,
    /// Human-readable summary lines.
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "snake_case")]
pub enum Evidence {
    ShearMembership(ShearEvidence),
    RotationObstruction(RotationEvidence),
    SigmaT(SigmaTEvidence),
    MinusIdentity(MinusIdentityEvidence),
    FullTheorem(TheoremEvidence),
}

/// A lifted cylinder and the number of Dehn twists a shear performs on it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwistedCylinder {
    #[serde(flatten)]
    pub lift: LiftedCylinder,
    /// `factor / inverse_modulus` when it is a positive integer.
    pub twist: Option<u64>,
}

fn twist_of(factor: &RealAlg, lift: &LiftedCylinder) -> Option<u64> {
    let mu = lift.inverse_modulus.as_ref()?;
    (factor / mu).to_positive_integer()
}

fn twisted(factor: &RealAlg, lift: LiftedCylinder) -> TwistedCylinder {
    TwistedCylinder {
        twist: twist_of(factor, &lift),
        lift,
    }
}

fn twists_hold(factor: &RealAlg, cyls: &[TwistedCylinder]) -> bool {
    cyls.iter()
        .all(|c| c.twist.is_some() && twist_of(factor, &c.lift) == c.twist)
}

/// A shear lifts as a multi-twist: every lifted cylinder in its direction is twisted an
/// integral number of times.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShearEvidence {
    pub generator: String,
    pub direction_index: i64,
    pub factor: RealAlg,
    pub cylinders: Vec<TwistedCylinder>,
}

/// Cylinders of one height and inverse modulus, with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CylinderClass {
    pub height: RealAlg,
    pub inverse_modulus: Option<RealAlg>,
    /// `None` for infinitely many.
    pub count: Option<u64>,
}

fn classes(lifts: &[LiftedCylinder]) -> Vec<CylinderClass> {
    let mut out: Vec<CylinderClass> = Vec::new();
    for l in lifts {
        match out
            .iter_mut()
            .find(|c| c.height == l.height && c.inverse_modulus == l.inverse_modulus)
        {
            Some(c) => c.count = c.count.zip(l.count).map(|(a, b)| a + b),
            None => out.push(CylinderClass {
                height: l.height.clone(),
                inverse_modulus: l.inverse_modulus.clone(),
                count: l.count,
            }),
        }
    }
    out.sort();
    out
}

/// A rotation is not affine on the covering: it would carry the horizontal cylinders onto
/// those in the rotated direction, but the two lists of heights and moduli differ. When they
/// agree on a finite covering of an even base polygon, the rotation is excluded by showing
/// that it does not lift to the sheets.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RotationEvidence {
    pub rotation: String,
    pub direction_index: i64,
    pub horizontal: Vec<CylinderClass>,
    pub rotated: Vec<CylinderClass>,
    #[serde(default)]
    pub sheet_action: Option<SheetActionObstruction>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaVariant {
    /// `T` on the horizontal cylinders.
    Horizontal,
    /// `R^(n/2) T R^(-n/2)` on the vertical cylinders.
    Vertical,
}

/// A base cylinder whose core curve acts nontrivially on the sheets.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecialCylinder {
    pub base_cylinder: usize,
    pub core_word: Word,
    pub core_monodromy: SheetMap,
    pub lifts: Vec<LiftedCylinder>,
}

/// A shear by `lambda_n` lifts by permuting the sheets with `sigma`.
///
/// Horizontal: `suc = m(x_k2)^-1 ∘ m(x_k1)`, and `sigma` must commute with `suc` and satisfy
/// `m(x_k1) ∘ sigma = sigma ∘ m(x_k2)`. Vertical: `suc = m(x_k1) ∘ m(x_k2)`, and `sigma`
/// must commute with `suc` and satisfy `m(x_k2) ∘ sigma = sigma ∘ m(x_k2) ∘ suc^-1`. In both
/// cases the core curves acting nontrivially on the sheets have the orbit structure of
/// `suc`, and every other base cylinder in the direction lifts to single-sheet cylinders that
/// the shear twists an integral number of times.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SigmaTEvidence {
    pub generator: String,
    pub variant: SigmaVariant,
    pub direction_index: i64,
    pub factor: RealAlg,
    pub sigma: SheetMap,
    pub suc: SheetMap,
    pub first: SheetMap,
    pub second: SheetMap,
    pub commutes: bool,
    pub intertwines: bool,
    pub special: Vec<SpecialCylinder>,
    pub others: Vec<TwistedCylinder>,
    /// Whether the certified shear generates the subgroup generator it stands for, up to
    /// its square.
    pub generates: bool,
}

/// `-I` lifts when every generator acts on the sheets by an involution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinusIdentityEvidence {
    pub images: Vec<SheetMap>,
    pub non_involutions: Vec<usize>,
}

/// Which part certifies a generator of the subgroup.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorCheck {
    pub word: String,
    pub kind: GeneratorKindTag,
    pub part: usize,
}

/// Serializable copy of [`GeneratorKind`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKindTag {
    MinusIdentity,
    Shear,
    DoubleShear { index: i64 },
}

impl From<GeneratorKind> for GeneratorKindTag {
    fn from(k: GeneratorKind) -> GeneratorKindTag {
        match k {
            GeneratorKind::MinusIdentity => GeneratorKindTag::MinusIdentity,
            GeneratorKind::Shear => GeneratorKindTag::Shear,
            GeneratorKind::DoubleShear { index } => GeneratorKindTag::DoubleShear { index },
        }
    }
}

/// The Veech group equals the subgroup: every generator lifts, and no nontrivial
/// representative of a rotation coset does.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremEvidence {
    /// Index of the subgroup in the base Veech group, from coset enumeration.
    pub index: u64,
    pub expected_index: u64,
    /// Whether the rotation representatives hit distinct cosets.
    pub transversal: bool,
    pub representatives_distinct: bool,
    pub generators: Vec<GeneratorCheck>,
    pub parts: Vec<Certificate>,
}

impl Certificate {
    /// The verdict implied by the evidence, recomputed without access to any surface.
    pub fn revalidate(&self) -> Verdict {
        match &self.evidence {
            Evidence::ShearMembership(e) => Verdict::from_bool(
                !e.cylinders.is_empty() && twists_hold(&e.factor, &e.cylinders),
            ),
            Evidence::RotationObstruction(e) => {
                if e.horizontal != e.rotated || e.sheet_action.as_ref().is_some_and(|o| o.holds()) {
                    Verdict::Pass
                } else if self.standard {
                    Verdict::Fail
                } else {
                    Verdict::Inconclusive
                }
            }
            Evidence::SigmaT(e) => Verdict::from_bool(sigma_holds(e)),
            Evidence::MinusIdentity(e) => {
                let bad: Vec<usize> = e
                    .images
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| !p.is_involution())
                    .map(|(i, _)| i)
                    .collect();
                Verdict::from_bool(bad.is_empty() && bad == e.non_involutions)
            }
            Evidence::FullTheorem(e) => {
                let parts: Vec<Verdict> = e.parts.iter().map(|p| p.revalidate()).collect();
                let distinct = e
                    .parts
                    .iter()
                    .zip(&parts)
                    .filter(|(p, _)| matches!(p.evidence, Evidence::RotationObstruction(_)))
                    .all(|(_, v)| *v == Verdict::Pass);
                let generators_ok = e
                    .generators
                    .iter()
                    .all(|g| parts.get(g.part) == Some(&Verdict::Pass));
                let ok = parts.iter().all(|v| *v == Verdict::Pass)
                    && generators_ok
                    && distinct == e.representatives_distinct
                    && e.transversal
                    && e.index == e.expected_index
                    && e.parts.iter().all(|p| p.n == self.n && p.d == self.d);
                if ok {
                    Verdict::Pass
                } else if self.standard {
                    Verdict::Fail
                } else {
                    Verdict::Inconclusive
                }
            }
        }
    }

    /// Whether the stored verdict matches the evidence.
    pub fn is_consistent(&self) -> bool {
        self.revalidate() == self.verdict
    }

    /// Sub-certificates, for a full theorem certificate.
    pub fn parts(&self) -> &[Certificate] {
        match &self.evidence {
            Evidence::FullTheorem(e) => &e.parts,
            _ => &[],
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.evidence {
            Evidence::ShearMembership(_) => "shear_membership",
            Evidence::RotationObstruction(_) => "rotation_obstruction",
            Evidence::SigmaT(_) => "sigma_t",
            Evidence::MinusIdentity(_) => "minus_identity",
            Evidence::FullTheorem(_) => "full_theorem",
        }
    }
}

fn sigma_conditions(
    variant: SigmaVariant,
    sigma: &SheetMap,
    first: &SheetMap,
    second: &SheetMap,
) -> Result<(SheetMap, bool, bool)> {
    match variant {
        SigmaVariant::Horizontal => {
            let suc = second.inverse().compose(first)?;
            let commutes = sigma.compose(&suc)? == suc.compose(sigma)?;
            let intertwines = first.compose(sigma)? == sigma.compose(second)?;
            Ok((suc, commutes, intertwines))
        }
        SigmaVariant::Vertical => {
            let suc = first.compose(second)?;
            let commutes = sigma.compose(&suc)? == suc.compose(sigma)?;
            let intertwines =
                second.compose(sigma)? == sigma.compose(second)?.compose(&suc.inverse())?;
            Ok((suc, commutes, intertwines))
        }
    }
}

fn sigma_holds(e: &SigmaTEvidence) -> bool {
    let Ok((suc, commutes, intertwines)) = sigma_conditions(e.variant, &e.sigma, &e.first, &e.second)
    else {
        return false;
    };
    suc == e.suc
        && commutes
        && intertwines
        && e.commutes
        && e.intertwines
        && e.generates
        && e.special.iter().all(|s| {
            s.lifts.iter().all(|l| l.base_cylinder == s.base_cylinder)
                && s.core_monodromy.lift_classes() == e.suc.lift_classes()
                && s.core_monodromy.lift_classes().len() == s.lifts.len()
        })
        && e.others.iter().all(|c| c.lift.sheets == Some(1))
        && twists_hold(&e.factor, &e.others)
}

fn header(model: &CoverModel, verdict: Verdict, evidence: Evidence, witnesses: Vec<String>) -> Certificate {
    Certificate {
        n: model.n,
        d: model.degree(),
        standard: model.standard,
        verdict,
        evidence,
        witnesses,
    }
}

fn describe(l: &LiftedCylinder) -> String {
    let sheets = l.sheets.map_or("infinite".to_string(), |k| format!("{} sheet(s)", k));
    let count = l.count.map_or("infinitely many".to_string(), |k| k.to_string());
    let mu = l
        .inverse_modulus
        .as_ref()
        .map_or("-".to_string(), |m| format!("{:.6}", m.to_f64()));
    format!(
        "base cylinder {}: {} lift(s) over {}, height {:.6}, inverse modulus {}",
        l.base_cylinder,
        count,
        sheets,
        l.height.to_f64(),
        mu
    )
}

fn rt_word(w: &GroupWord) -> String {
    w.to_string()
}

/// Direction `R^l (1, 0)` is vertical.
fn is_vertical(n: usize, l: i64) -> bool {
    n.is_multiple_of(2) && l.rem_euclid(n as i64) == (n / 2) as i64
}

/// Certifies that the shear with factor `factor` along direction `l` lifts as a multi-twist.
pub fn certify_shear(model: &CoverModel, generator: &str, l: i64, factor: &RealAlg) -> Result<Certificate> {
    let cylinders: Vec<TwistedCylinder> = lifted_cylinders(model, l)?
        .into_iter()
        .flat_map(|b| b.lifts)
        .map(|lift| twisted(factor, lift))
        .collect();
    let ok = !cylinders.is_empty() && twists_hold(factor, &cylinders);
    let witnesses = cylinders
        .iter()
        .map(|c| match c.twist {
            Some(k) => format!("{}: {} twist(s)", describe(&c.lift), k),
            None => format!("{}: no integral twist", describe(&c.lift)),
        })
        .collect();
    let evidence = Evidence::ShearMembership(ShearEvidence {
        generator: generator.to_string(),
        direction_index: l,
        factor: factor.clone(),
        cylinders,
    });
    Ok(header(model, Verdict::from_bool(ok), evidence, witnesses))
}

/// Certifies that `R^j` is not affine on the covering.
pub fn certify_rotation_obstruction(model: &CoverModel, j: i64) -> Result<Certificate> {
    let flat = |l: i64| -> Result<Vec<LiftedCylinder>> {
        Ok(lifted_cylinders(model, l)?
            .into_iter()
            .flat_map(|b| b.lifts)
            .collect())
    };
    let horizontal = classes(&flat(0)?);
    let rotated = classes(&flat(j)?);
    let fmt = |c: &[CylinderClass]| {
        c.iter()
            .map(|x| {
                format!(
                    "({:.6}, {}, {})",
                    x.height.to_f64(),
                    x.inverse_modulus
                        .as_ref()
                        .map_or("inf".to_string(), |m| format!("{:.6}", m.to_f64())),
                    x.count.map_or("inf".to_string(), |k| k.to_string())
                )
            })
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut witnesses = vec![
        format!("horizontal (height, inverse modulus, count): {}", fmt(&horizontal)),
        format!("direction {} (height, inverse modulus, count): {}", j, fmt(&rotated)),
    ];
    let sheet_action = match &model.sheets {
        Sheets::Finite(m) if horizontal == rotated && model.n.is_multiple_of(2) => {
            let o = SheetActionObstruction::new(model.n, j, &m.perms)?;
            witnesses.push(match &o.conjugator {
                Some(t) => format!("the rotation lifts to the sheets by {}", t),
                None => "the rotation does not lift to the sheets".to_string(),
            });
            Some(o)
        }
        _ => None,
    };
    let mut cert = header(
        model,
        Verdict::Pass,
        Evidence::RotationObstruction(RotationEvidence {
            rotation: rt_word(&GroupWord::gen(GEN_R, j)),
            direction_index: j,
            horizontal,
            rotated,
            sheet_action,
        }),
        witnesses,
    );
    cert.verdict = cert.revalidate();
    Ok(cert)
}

/// The sheet permutation accompanying `T` on the standard covering: `(1 3 5 ... d-1)` for
/// even `d`, `(sigma_2 ∘ sigma_1)^((d-1)/2)` for odd `d`, and `l -> l + 2` on odd copies of
/// the infinite covering.
pub fn standard_sigma_t(d: Degree) -> Result<SheetMap> {
    Ok(match d {
        Degree::Infinite => SheetMap::Infinite(ZPermutation { t_even: 0, t_odd: 2 }),
        Degree::Finite(d) if d < 2 => return Err(Error::InvalidDegree(d)),
        Degree::Finite(d) if d % 2 == 0 => {
            let cycle: Vec<usize> = (1..d).step_by(2).collect();
            SheetMap::Finite(Perm::from_cycles(d, &[cycle])?)
        }
        Degree::Finite(d) => {
            SheetMap::Finite(sigma_2(d).compose(&sigma_1(d)).pow(((d - 1) / 2) as i64))
        }
    })
}

/// Certifies that the shear by `lambda_n` in the horizontal or vertical direction lifts,
/// permuting the sheets by `sigma`.
pub fn certify_sigma_t(model: &CoverModel, variant: SigmaVariant, sigma: &SheetMap) -> Result<Certificate> {
    let n = model.n;
    let ni = n as i64;
    let (k1, k2) = model.special_generators();
    let (first, second) = (model.generator(k1), model.generator(k2));
    let (l, generator, generates) = match variant {
        SigmaVariant::Horizontal => (0, GroupWord::gen(GEN_T, 1), true),
        SigmaVariant::Vertical => {
            if n % 2 == 1 {
                return Err(Error::InvalidSurface(format!("n = {} has no vertical shear", n)));
            }
            let m = GroupWord::gen(GEN_R, ni / 2).conjugate(&GroupWord::gen(GEN_T, 1));
            let target = gamma_generators(n)?
                .into_iter()
                .find(|g| matches!(g.kind, GeneratorKind::DoubleShear { index } if is_vertical(n, index)));
            let generates = target.is_some_and(|g| {
                crate::veech_group::eval_group_word(n, &m.pow(2)) == g.matrix
            });
            (ni / 2, m, generates)
        }
    };
    let factor = lambda_n(n);
    let (suc, commutes, intertwines) = sigma_conditions(variant, sigma, &first, &second)?;
    let mut special = Vec::new();
    let mut others = Vec::new();
    for b in lifted_cylinders(model, l)? {
        if b.core_monodromy.is_identity() {
            others.extend(b.lifts.into_iter().map(|lift| twisted(&factor, lift)));
        } else {
            special.push(SpecialCylinder {
                base_cylinder: b.index,
                core_word: b.cylinder.core_word.clone(),
                core_monodromy: b.core_monodromy,
                lifts: b.lifts,
            });
        }
    }
    let mut witnesses = vec![
        format!("sigma = {}", sigma),
        format!("suc = {}", suc),
        format!("sigma commutes with suc: {}", commutes),
        format!("intertwining condition: {}", intertwines),
    ];
    for s in &special {
        witnesses.push(format!(
            "special base cylinder {} with core word {} acting by {}",
            s.base_cylinder, s.core_word, s.core_monodromy
        ));
    }
    for c in &others {
        witnesses.push(match c.twist {
            Some(k) => format!("{}: {} twist(s)", describe(&c.lift), k),
            None => format!("{}: no integral twist", describe(&c.lift)),
        });
    }
    let e = SigmaTEvidence {
        generator: rt_word(&generator),
        variant,
        direction_index: l,
        factor,
        sigma: sigma.clone(),
        suc,
        first,
        second,
        commutes,
        intertwines,
        special,
        others,
        generates,
    };
    let verdict = Verdict::from_bool(sigma_holds(&e));
    Ok(header(model, verdict, Evidence::SigmaT(e), witnesses))
}

/// [`certify_sigma_t`] with the standard sheet permutation; the vertical variant uses its
/// inverse.
pub fn certify_sigma_t_standard(model: &CoverModel, variant: SigmaVariant) -> Result<Certificate> {
    let s = standard_sigma_t(model.degree())?;
    let s = match variant {
        SigmaVariant::Horizontal => s,
        SigmaVariant::Vertical => s.inverse(),
    };
    certify_sigma_t(model, variant, &s)
}

/// Certifies that `-I` lifts.
pub fn certify_minus_identity(model: &CoverModel) -> Result<Certificate> {
    let images: Vec<SheetMap> = (0..model.generator_count()).map(|g| model.generator(g)).collect();
    let non_involutions: Vec<usize> = images
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_involution())
        .map(|(i, _)| i)
        .collect();
    let witnesses = if non_involutions.is_empty() {
        vec!["every generator acts by an involution".to_string()]
    } else {
        non_involutions
            .iter()
            .map(|g| format!("generator {} does not act by an involution", g))
            .collect()
    };
    let ok = non_involutions.is_empty();
    let evidence = Evidence::MinusIdentity(MinusIdentityEvidence {
        images,
        non_involutions,
    });
    Ok(header(model, Verdict::from_bool(ok), evidence, witnesses))
}

enum Task {
    MinusIdentity,
    Sigma(SigmaVariant),
    Shear(String, i64),
    Rotation(i64),
}

fn run_task(model: &CoverModel, t: &Task) -> Result<Certificate> {
    match t {
        Task::MinusIdentity => certify_minus_identity(model),
        Task::Sigma(v) => certify_sigma_t_standard(model, *v),
        Task::Shear(w, l) => certify_shear(model, w, *l, &lambda_n(model.n).scale_int(2)),
        Task::Rotation(j) => certify_rotation_obstruction(model, *j),
    }
}

fn task_for(n: usize, g: &GammaGenerator) -> Task {
    match g.kind {
        GeneratorKind::MinusIdentity => Task::MinusIdentity,
        GeneratorKind::Shear => Task::Sigma(SigmaVariant::Horizontal),
        GeneratorKind::DoubleShear { index } if is_vertical(n, index) => {
            Task::Sigma(SigmaVariant::Vertical)
        }
        GeneratorKind::DoubleShear { index } => Task::Shear(rt_word(&g.word), index),
    }
}

/// Checks every generator of the subgroup and every rotation coset representative on the
/// covering described by `model`.
pub fn verify_model(model: &CoverModel) -> Result<Certificate> {
    let n = model.n;
    check_n(n)?;
    let gens = gamma_generators(n)?;
    let reps = rotation_representatives(n);
    let mut tasks: Vec<Task> = gens.iter().map(|g| task_for(n, g)).collect();
    let first_rotation = tasks.len();
    tasks.extend(reps.iter().filter(|&&j| j != 0).map(|&j| Task::Rotation(j)));
    let parts = tasks
        .par_iter()
        .map(|t| run_task(model, t))
        .collect::<Result<Vec<_>>>()?;

    let p = Presentation::for_base(n)?;
    let sub = gens
        .iter()
        .map(|g| p.from_rt_word(&g.word))
        .collect::<Result<Vec<_>>>()?;
    let table = coset_enumerate(&p, &sub)?;
    let mut hit = Vec::with_capacity(reps.len());
    for &j in &reps {
        hit.push(table.coset_of(&p.rotation_power(j)?));
    }
    hit.sort_unstable();
    hit.dedup();
    let transversal = hit.len() == reps.len() && reps.len() == table.index;

    let generators: Vec<GeneratorCheck> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| GeneratorCheck {
            word: rt_word(&g.word),
            kind: g.kind.into(),
            part: i,
        })
        .collect();
    let representatives_distinct = parts[first_rotation..]
        .iter()
        .all(|c| c.verdict == Verdict::Pass);
    let mut witnesses = vec![
        format!("index of the subgroup: {}", table.index),
        format!("rotation representatives form a transversal: {}", transversal),
    ];
    for (g, c) in generators.iter().zip(&parts) {
        witnesses.push(format!("{}: {} {:?}", g.word, c.kind(), c.verdict));
    }
    for c in &parts[first_rotation..] {
        if let Evidence::RotationObstruction(e) = &c.evidence {
            witnesses.push(format!("{} excluded: {:?}", e.rotation, c.verdict));
        }
    }
    let evidence = Evidence::FullTheorem(TheoremEvidence {
        index: table.index as u64,
        expected_index: reps.len() as u64,
        transversal,
        representatives_distinct,
        generators,
        parts,
    });
    let mut cert = header(model, Verdict::Pass, evidence, witnesses);
    cert.verdict = cert.revalidate();
    Ok(cert)
}

/// [`verify_model`] for the standard covering of degree `d`.
pub fn verify_theorem(n: usize, d: Degree) -> Result<Certificate> {
    verify_model(&CoverModel::standard(n, d)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::standard_monodromy;

    fn sub_verdicts(c: &Certificate) -> Vec<(&'static str, Verdict)> {
        c.parts().iter().map(|p| (p.kind(), p.verdict)).collect()
    }

    #[test]
    fn theorem_holds_for_small_cases() {
        for (n, d) in [
            (5, Degree::Finite(2)),
            (5, Degree::Finite(3)),
            (7, Degree::Finite(4)),
            (8, Degree::Finite(2)),
            (8, Degree::Finite(3)),
            (10, Degree::Finite(3)),
            (5, Degree::Infinite),
            (8, Degree::Infinite),
            (10, Degree::Infinite),
        ] {
            let c = verify_theorem(n, d).unwrap();
            assert_eq!(c.verdict, Verdict::Pass, "n={} d={} {:?}", n, d, sub_verdicts(&c));
            assert!(c.is_consistent());
        }
    }

    #[test]
    fn sigma_t_of_degree_five() {
        let s = standard_sigma_t(Degree::Finite(5)).unwrap();
        let expected = Perm::from_cycles(5, &[vec![0, 4, 1, 2, 3]]).unwrap();
        assert_eq!(s, SheetMap::Finite(expected));
    }

    #[test]
    fn mutation_is_detected() {
        let m = standard_monodromy(5, 4).unwrap().mutated();
        let c = verify_model(&CoverModel::from_monodromy(m)).unwrap();
        assert_ne!(c.verdict, Verdict::Pass);
        assert!(c.parts().iter().any(|p| p.verdict == Verdict::Fail));
        assert!(c.is_consistent());
    }

    #[test]
    fn json_round_trip_keeps_verdict() {
        let c = verify_theorem(8, Degree::Finite(3)).unwrap();
        let j = serde_json::to_string(&c).unwrap();
        let back: Certificate = serde_json::from_str(&j).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.revalidate(), Verdict::Pass);
    }

    #[test]
    fn tampered_twist_is_rejected() {
        let m = CoverModel::standard(7, Degree::Finite(3)).unwrap();
        let mut c = certify_shear(&m, "R T^2 R^-1", 1, &lambda_n(7).scale_int(2)).unwrap();
        assert_eq!(c.verdict, Verdict::Pass);
        if let Evidence::ShearMembership(e) = &mut c.evidence {
            e.cylinders[0].twist = e.cylinders[0].twist.map(|k| k + 1);
        }
        assert_eq!(c.revalidate(), Verdict::Fail);
    }

    #[test]
    fn sheet_action_agrees_with_cylinder_obstruction() {
        for n in [8usize, 10, 12] {
            for d in 2..7 {
                let m = standard_monodromy(n, d).unwrap();
                for j in rotation_representatives(n).into_iter().filter(|&j| j != 0) {
                    let o = SheetActionObstruction::new(n, j, &m.perms).unwrap();
                    assert!(o.holds(), "n={} d={} R^{}", n, d, j);
                }
            }
        }
    }

    #[test]
    fn rotation_is_not_affine() {
        let m = CoverModel::standard(5, Degree::Finite(2)).unwrap();
        for j in 1..5 {
            let c = certify_rotation_obstruction(&m, j).unwrap();
            assert_eq!(c.verdict, Verdict::Pass, "R^{}", j);
        }
    }
}
