//! Todd-Coxeter coset enumeration, HLT strategy.

use serde::Serialize;

use crate::covering::Perm;
use crate::error::{Error, Result};

use super::{GroupWord, Presentation};

pub const DEFAULT_COSET_CAP: usize = 100_000;

const UNDEF: usize = usize::MAX;

/// The enumeration cap: `VEECHLAB_COSET_CAP` if set and valid, otherwise the default.
pub fn coset_cap() -> usize {
    std::env::var("VEECHLAB_COSET_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&c: &usize| c > 0)
        .unwrap_or(DEFAULT_COSET_CAP)
}

/// Right action of the presentation generators on the cosets of a subgroup.
#[derive(Clone, Debug)]
pub struct CosetTable {
    pub index: usize,
    /// `action[g]` maps coset `i` to coset `i * g`.
    pub action: Vec<Perm>,
    /// `transversal[i]` represents coset `i`; coset 0 is the subgroup.
    pub transversal: Vec<GroupWord>,
    pub generator_names: Vec<String>,
}

#[derive(Serialize)]
struct CosetTableJson<'a> {
    index: usize,
    perms: Vec<(&'a str, Vec<Vec<usize>>)>,
    transversal: Vec<String>,
}

impl Serialize for CosetTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let names: Vec<&str> = self.generator_names.iter().map(|x| x.as_str()).collect();
        CosetTableJson {
            index: self.index,
            perms: names
                .iter()
                .zip(&self.action)
                .map(|(n, p)| (*n, p.nontrivial_cycles()))
                .collect(),
            transversal: self.transversal.iter().map(|w| w.render(&names)).collect(),
        }
        .serialize(s)
    }
}

impl CosetTable {
    /// Permutation of the cosets induced by `w`, letters acting left to right.
    pub fn word_action(&self, w: &GroupWord) -> Perm {
        let mut p = Perm::identity(self.index);
        for (g, e) in w.letters() {
            let step = if e > 0 {
                self.action[g].clone()
            } else {
                self.action[g].inverse()
            };
            p = step.compose(&p);
        }
        p
    }

    /// Coset reached from coset 0 by `w`.
    pub fn coset_of(&self, w: &GroupWord) -> usize {
        self.word_action(w).apply(0)
    }
}

fn column(g: usize, e: i64) -> usize {
    2 * g + usize::from(e < 0)
}

fn inv_col(c: usize) -> usize {
    c ^ 1
}

fn to_columns(w: &GroupWord) -> Vec<usize> {
    w.letters().into_iter().map(|(g, e)| column(g, e)).collect()
}

struct Enumerator {
    cols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    queue: Vec<usize>,
    live: usize,
    cap: usize,
}

impl Enumerator {
    fn rep(&mut self, mut k: usize) -> usize {
        let mut root = k;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[k] != root {
            let next = self.parent[k];
            self.parent[k] = root;
            k = next;
        }
        root
    }

    fn alive(&self, k: usize) -> bool {
        self.parent[k] == k
    }

    fn define(&mut self, a: usize, c: usize) -> Result<()> {
        if self.live >= self.cap {
            return Err(Error::CapExceeded(self.cap));
        }
        let b = self.table.len();
        self.table.push(vec![UNDEF; self.cols]);
        self.parent.push(b);
        self.live += 1;
        self.table[a][c] = b;
        self.table[b][inv_col(c)] = a;
        Ok(())
    }

    fn merge(&mut self, k: usize, l: usize) {
        let (k, l) = (self.rep(k), self.rep(l));
        if k == l {
            return;
        }
        let (lo, hi) = (k.min(l), k.max(l));
        self.parent[hi] = lo;
        self.live -= 1;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let d = self.table[g][x];
                if d == UNDEF {
                    continue;
                }
                if self.table[d][inv_col(x)] == g {
                    self.table[d][inv_col(x)] = UNDEF;
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                if self.table[mu][x] != UNDEF {
                    let t = self.table[mu][x];
                    self.merge(nu, t);
                } else if self.table[nu][inv_col(x)] != UNDEF {
                    let t = self.table[nu][inv_col(x)];
                    self.merge(mu, t);
                } else {
                    self.table[mu][x] = nu;
                    self.table[nu][inv_col(x)] = mu;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, a: usize, w: &[usize]) -> Result<()> {
        let (mut f, mut b) = (a, a);
        let (mut i, mut j) = (0isize, w.len() as isize - 1);
        loop {
            while i <= j && self.table[f][w[i as usize]] != UNDEF {
                f = self.table[f][w[i as usize]];
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.table[b][inv_col(w[j as usize])] != UNDEF {
                b = self.table[b][inv_col(w[j as usize])];
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let c = w[i as usize];
                self.table[f][c] = b;
                self.table[b][inv_col(c)] = f;
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` with the cap from
/// [`coset_cap`].
pub fn coset_enumerate(p: &Presentation, subgroup: &[GroupWord]) -> Result<CosetTable> {
    coset_enumerate_with_cap(p, subgroup, coset_cap())
}

/// Enumerates cosets, failing with `CapExceeded` once more than `cap` cosets are alive.
///
/// Cosets are renumbered in breadth-first order from the subgroup, scanning generators and
/// then inverses in presentation order, so the table is determined by the input.
pub fn coset_enumerate_with_cap(
    p: &Presentation,
    subgroup: &[GroupWord],
    cap: usize,
) -> Result<CosetTable> {
    let g = p.generator_count();
    for w in subgroup {
        if w.syllables().iter().any(|&(x, _)| x >= g) {
            return Err(Error::InvalidWord(format!("{} uses an unknown generator", p.render(w))));
        }
    }
    let mut e = Enumerator {
        cols: 2 * g,
        table: vec![vec![UNDEF; 2 * g]],
        parent: vec![0],
        queue: Vec::new(),
        live: 1,
        cap: cap.max(1),
    };
    let rels: Vec<Vec<usize>> = p.relators.iter().map(to_columns).collect();
    for w in subgroup {
        e.scan_and_fill(0, &to_columns(w))?;
    }
    let mut a = 0;
    while a < e.table.len() {
        for r in &rels {
            if !e.alive(a) {
                break;
            }
            e.scan_and_fill(a, r)?;
        }
        if e.alive(a) {
            for c in 0..e.cols {
                if e.table[a][c] == UNDEF {
                    e.define(a, c)?;
                }
            }
        }
        a += 1;
    }
    standardize(p, &mut e)
}

fn standardize(p: &Presentation, e: &mut Enumerator) -> Result<CosetTable> {
    let g = p.generator_count();
    let start = e.rep(0);
    let mut number = vec![UNDEF; e.table.len()];
    let mut order = vec![start];
    let mut words = vec![GroupWord::identity()];
    number[start] = 0;
    let mut i = 0;
    while i < order.len() {
        let a = order[i];
        for c in 0..e.cols {
            let raw = e.table[a][c];
            if raw == UNDEF {
                return Err(Error::Internal("coset table is incomplete".into()));
            }
            let b = e.rep(raw);
            if number[b] == UNDEF {
                number[b] = order.len();
                order.push(b);
                let (gen, exp) = (c / 2, if c % 2 == 0 { 1 } else { -1 });
                words.push(words[i].concat(&GroupWord::gen(gen, exp)));
            }
        }
        i += 1;
    }
    let index = order.len();
    let mut action = Vec::with_capacity(g);
    for gen in 0..g {
        let mut img = Vec::with_capacity(index);
        for &a in &order {
            let b = e.rep(e.table[a][2 * gen]);
            img.push(number[b]);
        }
        action.push(Perm::from_images(img).map_err(|err| Error::Internal(err.to_string()))?);
    }
    let table = CosetTable {
        index,
        action,
        transversal: words,
        generator_names: p.names.clone(),
    };
    for r in &p.relators {
        if !table.word_action(r).is_identity() {
            return Err(Error::Internal(format!("relator {} acts nontrivially", p.render(r))));
        }
    }
    Ok(table)
}

/// Schreier generators `u_i g u_(i g)^-1` for every coset `i` and generator `g` that is not
/// a transversal tree edge.
pub fn schreier_generators(t: &CosetTable) -> Vec<GroupWord> {
    let mut out = Vec::new();
    for i in 0..t.index {
        for (g, a) in t.action.iter().enumerate() {
            let j = a.apply(i);
            let w = t.transversal[i]
                .concat(&GroupWord::gen(g, 1))
                .concat(&t.transversal[j].inverse());
            if !w.is_identity() {
                out.push(w);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::veech_group::{gamma_generators, GEN_R, GEN_T};

    fn subgroup(p: &Presentation) -> Vec<GroupWord> {
        gamma_generators(p.n)
            .unwrap()
            .iter()
            .map(|g| p.from_rt_word(&g.word).unwrap())
            .collect()
    }

    #[test]
    fn odd_index() {
        for n in [5, 7, 9] {
            let p = Presentation::for_base(n).unwrap();
            let t = coset_enumerate(&p, &subgroup(&p)).unwrap();
            assert_eq!(t.index, n);
            let r = &t.action[GEN_R];
            assert_eq!(r.cycle_type(), vec![n]);
        }
    }

    #[test]
    fn even_index() {
        for n in [8, 10, 12] {
            let p = Presentation::for_base(n).unwrap();
            let t = coset_enumerate(&p, &subgroup(&p)).unwrap();
            assert_eq!(t.index, n / 2);
            assert_eq!(t.action[0].cycle_type(), vec![n / 2]);
        }
    }

    #[test]
    fn whole_group() {
        let p = Presentation::for_base(5).unwrap();
        let t = coset_enumerate(&p, &[GroupWord::gen(GEN_R, 1), GroupWord::gen(GEN_T, 1)]).unwrap();
        assert_eq!(t.index, 1);
    }

    #[test]
    fn trivial_subgroup_of_finite_quotient() {
        // <R> alone has infinite index: the enumeration must stop at the cap
        let p = Presentation::for_base(5).unwrap();
        let r = coset_enumerate_with_cap(&p, &[GroupWord::gen(GEN_R, 1)], 500);
        assert_eq!(r.unwrap_err(), Error::CapExceeded(500));
    }

    #[test]
    fn rotation_powers_are_a_transversal() {
        let p = Presentation::for_base(5).unwrap();
        let t = coset_enumerate(&p, &subgroup(&p)).unwrap();
        let mut seen: Vec<usize> = (0..5).map(|j| t.coset_of(&GroupWord::gen(GEN_R, j))).collect();
        seen.sort_unstable();
        assert_eq!(seen, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn deterministic_numbering() {
        let p = Presentation::for_base(7).unwrap();
        let a = coset_enumerate(&p, &subgroup(&p)).unwrap();
        let b = coset_enumerate(&p, &subgroup(&p)).unwrap();
        assert_eq!(a.action, b.action);
        assert_eq!(a.transversal, b.transversal);
    }
}
