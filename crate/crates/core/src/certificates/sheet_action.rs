//! Rotations of the even base polygon acting on the sheets of a finite covering.

use serde::{Deserialize, Serialize};

use crate::covering::Perm;
use crate::error::{Error, Result};
use crate::flat_surface::check_n;
use crate::word::{Letter, Word};

/// Images of the generators under the rotation by `j pi / n` of the even base polygon about
/// its centre. `j` must be even, so that the rotation maps sides to sides.
///
/// The loop `x_s` leaves the centre through side `s`; its image leaves through side
/// `s + j/2 (mod n)`, which is `x_t` for a side `t < n/2` and `x_t^-1` for side `t + n/2`.
pub fn rotated_generators(n: usize, j: i64) -> Result<Vec<Letter>> {
    check_n(n)?;
    if n % 2 == 1 || j % 2 != 0 {
        return Err(Error::InvalidSurface(format!(
            "the rotation by {} pi / {} does not map the polygon to itself",
            j, n
        )));
    }
    let h = n / 2;
    let shift = (j / 2).rem_euclid(n as i64) as usize;
    Ok((0..h)
        .map(|s| {
            let side = (s + shift) % n;
            if side < h {
                Letter::new(side, 1)
            } else {
                Letter::new(side - h, -1)
            }
        })
        .collect())
}

fn letter_perm(perms: &[Perm], l: Letter) -> Perm {
    if l.exponent > 0 {
        perms[l.generator].clone()
    } else {
        perms[l.generator].inverse()
    }
}

/// A bijection `tau` of the sheets with `tau ∘ m(x_s) = m(image_s) ∘ tau` for every
/// generator, if one exists. Such a `tau` is exactly a lift of the rotation.
pub fn intertwiner(perms: &[Perm], images: &[Letter]) -> Option<Perm> {
    let d = perms.first()?.degree();
    let targets: Vec<Perm> = images.iter().map(|&l| letter_perm(perms, l)).collect();
    'candidate: for start in 0..d {
        let mut tau = vec![usize::MAX; d];
        let mut used = vec![false; d];
        tau[0] = start;
        used[start] = true;
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            for (p, q) in perms.iter().zip(&targets) {
                for (a, b) in [(p.apply(i), q.apply(tau[i])), (p.inverse().apply(i), q.inverse().apply(tau[i]))] {
                    if tau[a] == usize::MAX {
                        if used[b] {
                            continue 'candidate;
                        }
                        tau[a] = b;
                        used[b] = true;
                        stack.push(a);
                    } else if tau[a] != b {
                        continue 'candidate;
                    }
                }
            }
        }
        if tau.contains(&usize::MAX) {
            // intransitive action: sheets outside the orbit of 0 are not constrained here
            continue;
        }
        return Perm::from_images(tau).ok();
    }
    None
}

/// The rotation permutes the generator loops, and no bijection of the sheets intertwines
/// the monodromy with its rotated copy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SheetActionObstruction {
    pub generator_images: Vec<Word>,
    pub perms: Vec<Perm>,
    /// A lift of the rotation to the sheets, when one exists.
    pub conjugator: Option<Perm>,
}

impl SheetActionObstruction {
    pub fn new(n: usize, j: i64, perms: &[Perm]) -> Result<SheetActionObstruction> {
        let images = rotated_generators(n, j)?;
        Ok(SheetActionObstruction {
            conjugator: intertwiner(perms, &images),
            generator_images: images.into_iter().map(|l| Word(vec![l])).collect(),
            perms: perms.to_vec(),
        })
    }

    /// Whether the payload shows that the rotation does not lift.
    pub fn holds(&self) -> bool {
        let images: Option<Vec<Letter>> = self
            .generator_images
            .iter()
            .map(|w| match w.letters() {
                [l] if l.generator < self.perms.len() => Some(*l),
                _ => None,
            })
            .collect();
        match images {
            Some(images) if images.len() == self.perms.len() => {
                self.conjugator.is_none() && intertwiner(&self.perms, &images).is_none()
            }
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::standard_monodromy;

    #[test]
    fn full_turn_is_trivial() {
        let r = rotated_generators(8, 16).unwrap();
        assert_eq!(r, (0..4).map(|s| Letter::new(s, 1)).collect::<Vec<_>>());
        let half = rotated_generators(8, 8).unwrap();
        assert_eq!(half, (0..4).map(|s| Letter::new(s, -1)).collect::<Vec<_>>());
    }

    #[test]
    fn identity_and_half_turn_lift() {
        // -I lifts because the generators act by involutions
        for d in 2..7 {
            let m = standard_monodromy(8, d).unwrap();
            assert!(intertwiner(&m.perms, &rotated_generators(8, 0).unwrap()).is_some());
            assert!(intertwiner(&m.perms, &rotated_generators(8, 8).unwrap()).is_some());
        }
    }

    #[test]
    fn quarter_turn_of_degree_two_does_not_lift() {
        let m = standard_monodromy(8, 2).unwrap();
        let o = SheetActionObstruction::new(8, 4, &m.perms).unwrap();
        assert!(o.conjugator.is_none());
        assert!(o.holds());
    }
}
