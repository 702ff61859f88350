//! Invariants of the quotient of the hyperbolic plane by the subgroup, read off from the
//! coset action.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::veech_group::{coset_enumerate, gamma_generators, CosetTable, Presentation};

/// Genus, cusps and elliptic points of the quotient orbifold.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuotientInvariants {
    pub genus: u64,
    /// Relative cusp widths, sorted.
    pub cusps: Vec<u64>,
    /// `(order, count)` of elliptic points, sorted by order.
    pub elliptic: Vec<(u64, u64)>,
    #[serde(rename = "chi_orb", serialize_with = "serialize_rational")]
    pub euler_characteristic_orbifold: BigRational,
    pub index: u64,
}

fn serialize_rational<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

fn int(k: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// Reads the invariants of `H / G` from the action of the base group on the cosets of `G`.
///
/// Cusps are the cycles of each base parabolic, with cycle length as relative width. A base
/// elliptic element of order `q` contributes a point of order `q / l` for each cycle of
/// length `l < q`. The genus is solved from the orbifold Euler characteristic and checked
/// against the Riemann-Hurwitz count for the coset action.
pub fn quotient_invariants(t: &CosetTable, p: &Presentation) -> Result<QuotientInvariants> {
    let index = t.index as u64;
    let mut cusps = Vec::new();
    let mut cycle_count = 0u64;
    for c in &p.cusps {
        let cycles = t.word_action(c).cycle_type();
        cycle_count += cycles.len() as u64;
        cusps.extend(cycles.iter().map(|&l| l as u64));
    }
    cusps.sort_unstable();
    let mut elliptic: Vec<(u64, u64)> = Vec::new();
    let mut elliptic_defect = BigRational::zero();
    for (w, q) in &p.elliptic {
        let cycles = t.word_action(w).cycle_type();
        cycle_count += cycles.len() as u64;
        for l in cycles {
            let l = l as u64;
            if q % l != 0 {
                return Err(Error::Internal(format!(
                    "{} of order {} has a coset cycle of length {}",
                    p.render(w),
                    q,
                    l
                )));
            }
            let order = q / l;
            if order > 1 {
                match elliptic.iter_mut().find(|(o, _)| *o == order) {
                    Some(e) => e.1 += 1,
                    None => elliptic.push((order, 1)),
                }
                elliptic_defect += BigRational::one() - BigRational::new(BigInt::one(), BigInt::from(order));
            }
        }
    }
    elliptic.sort_unstable();
    let chi = &p.chi_orb * int(index);
    // chi = 2 - 2g - cusps - sum(1 - 1/order)
    let two_minus_2g = &chi + int(cusps.len() as u64) + &elliptic_defect;
    if !two_minus_2g.is_integer() {
        return Err(Error::Internal(format!(
            "orbifold Euler characteristic {} leaves a non-integral genus term {}",
            chi, two_minus_2g
        )));
    }
    let v = two_minus_2g.to_integer().to_i64().unwrap_or(i64::MIN);
    if v > 2 || (2 - v) % 2 != 0 {
        return Err(Error::Internal(format!("genus term 2 - 2g = {}", v)));
    }
    let genus = ((2 - v) / 2) as u64;
    // the base quotient is a sphere with one point per cusp class and elliptic generator,
    // so the coset action is a branched cover of it: 2 - 2g = cycles - (points - 2) index
    let points = (p.cusps.len() + p.elliptic.len()) as i64;
    let rh = cycle_count as i64 - (points - 2) * index as i64;
    if rh != v {
        return Err(Error::Internal(format!(
            "Riemann-Hurwitz gives 2 - 2g = {}, Euler characteristic gives {}",
            rh, v
        )));
    }
    Ok(QuotientInvariants {
        genus,
        cusps,
        elliptic,
        euler_characteristic_orbifold: chi,
        index,
    })
}

/// Quotient invariants of the subgroup shared by the coverings over the base surface.
pub fn quotient_for(n: usize) -> Result<(CosetTable, QuotientInvariants)> {
    let p = Presentation::for_base(n)?;
    let sub = gamma_generators(n)?
        .iter()
        .map(|g| p.from_rt_word(&g.word))
        .collect::<Result<Vec<_>>>()?;
    let t = coset_enumerate(&p, &sub)?;
    let q = quotient_invariants(&t, &p)?;
    Ok((t, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pentagon_quotient() {
        let (_, q) = quotient_for(5).unwrap();
        assert_eq!(q.genus, 0);
        assert_eq!(q.cusps, vec![1, 2, 2]);
        assert_eq!(q.elliptic, vec![(2, 1)]);
    }

    #[test]
    fn cusp_counts() {
        for n in [5usize, 7, 9, 11, 13] {
            let (_, q) = quotient_for(n).unwrap();
            assert_eq!(q.genus, 0);
            assert_eq!(q.cusps.len(), n.div_ceil(2));
            assert_eq!(q.cusps.iter().filter(|&&w| w == 1).count(), 1);
        }
        for n in [8usize, 10, 12] {
            let (_, q) = quotient_for(n).unwrap();
            assert_eq!(q.genus, 0);
            assert_eq!(q.cusps.len(), (n + 2) / 2);
        }
    }
}
