use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A permutation of `{0, ..., d-1}` stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(d: usize) -> Perm {
        Perm((0..d).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm, Error> {
        let d = images.len();
        let mut hit = vec![false; d];
        for &i in &images {
            if i >= d || hit[i] {
                return Err(Error::InvalidMonodromy(format!(
                    "{:?} is not a permutation",
                    images
                )));
            }
            hit[i] = true;
        }
        Ok(Perm(images))
    }

    /// Product of the given cycles on `{0, ..., d-1}`; cycles may overlap and are applied
    /// right to left.
    pub fn from_cycles(d: usize, cycles: &[Vec<usize>]) -> Result<Perm, Error> {
        let mut p = Perm::identity(d);
        for c in cycles.iter().rev() {
            if c.iter().any(|&i| i >= d) {
                return Err(Error::InvalidMonodromy(format!(
                    "cycle {:?} leaves 0..{}",
                    c, d
                )));
            }
            let mut img: Vec<usize> = (0..d).collect();
            for (k, &i) in c.iter().enumerate() {
                img[i] = c[(k + 1) % c.len()];
            }
            let cyc = Perm::from_images(img)?;
            p = p.compose(&cyc);
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Perm::identity(self.degree());
        for _ in 0..k.unsigned_abs() {
            out = base.compose(&out);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).is_identity()
    }

    /// All cycles including fixed points, each starting at its smallest element, ordered by
    /// that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for s in 0..self.0.len() {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                c.push(i);
                i = self.0[i];
            }
            out.push(c);
        }
        out
    }

    /// Cycles of length at least two.
    pub fn nontrivial_cycles(&self) -> Vec<Vec<usize>> {
        self.cycles().into_iter().filter(|c| c.len() > 1).collect()
    }

    /// Cycle lengths in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|(i, &j)| *i == j).count()
    }
}

/// Size of the orbit of `0` under the group generated by `perms`.
pub fn orbit_size(perms: &[Perm], d: usize) -> usize {
    let mut seen = vec![false; d];
    let mut stack = vec![0];
    if d == 0 {
        return 0;
    }
    seen[0] = true;
    let mut count = 1;
    while let Some(i) = stack.pop() {
        for p in perms {
            for j in [p.apply(i), p.inverse().apply(i)] {
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
    }
    count
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cyc = self.nontrivial_cycles();
        if cyc.is_empty() {
            return write!(f, "()");
        }
        for c in cyc {
            let body: Vec<String> = c.iter().map(|i| i.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[derive(Serialize, Deserialize)]
struct PermJson {
    degree: usize,
    cycles: Vec<Vec<usize>>,
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PermJson {
            degree: self.degree(),
            cycles: self.nontrivial_cycles(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Perm, D::Error> {
        let raw = PermJson::deserialize(d)?;
        Perm::from_cycles(raw.degree, &raw.cycles).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_applies_right_first() {
        let a = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[vec![1, 2]]).unwrap();
        // a∘b: 1 -> 2 -> 2, 2 -> 1 -> 0, 0 -> 0 -> 1
        assert_eq!(a.compose(&b).to_string(), "(0 1 2)");
        assert_eq!(b.compose(&a).to_string(), "(0 2 1)");
    }

    #[test]
    fn cycles_and_inverse() {
        let p = Perm::from_cycles(5, &[vec![0, 2, 4, 3, 1]]).unwrap();
        assert_eq!(p.cycle_type(), vec![5]);
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(p.pow(2).to_string(), "(0 4 1 2 3)");
        assert_eq!(p.pow(5), Perm::identity(5));
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Perm::from_images(vec![0, 0]).is_err());
        assert!(Perm::from_cycles(2, &[vec![0, 2]]).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let p = Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"degree":4,"cycles":[[0,1],[2,3]]}"#);
        assert_eq!(serde_json::from_str::<Perm>(&s).unwrap(), p);
    }
}
