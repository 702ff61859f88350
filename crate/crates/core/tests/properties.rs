use std::collections::{BTreeSet, HashMap};

use num_rational::BigRational;
use proptest::prelude::*;

use veechlab::covering::{eval_word, Letter, Monodromy, Perm, Word};
use veechlab::field::{CycloNumber, Field, RealAlg};
use veechlab::infinite_cover::ZPermutation;

fn field() -> Field {
    Field::for_polygon(5)
}

fn cyclo() -> impl Strategy<Value = CycloNumber> {
    let f = field();
    prop::collection::vec((-9i64..=9, 1i64..=6), f.degree()).prop_map(move |c| {
        let q: Vec<BigRational> = c.iter().map(|&(a, b)| BigRational::new(a.into(), b.into())).collect();
        f.from_coeffs(&q)
    })
}

fn real() -> impl Strategy<Value = RealAlg> {
    cyclo().prop_map(|z| RealAlg::real_part(&z))
}

fn perm(d: usize) -> impl Strategy<Value = Perm> {
    Just((0..d).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

fn word(generators: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..generators, prop::bool::ANY), 0..8).prop_map(|ls| {
        Word(
            ls.into_iter()
                .map(|(g, inv)| Letter::new(g, if inv { -1 } else { 1 }))
                .collect(),
        )
    })
}

fn zperm() -> impl Strategy<Value = ZPermutation> {
    (-4i64..=4, -4i64..=4, prop::bool::ANY).prop_map(|(a, b, swap)| {
        let (a, b) = if swap { (2 * a + 1, 2 * b + 1) } else { (2 * a, 2 * b) };
        ZPermutation::new(a, b).unwrap()
    })
}

proptest! {
    #[test]
    fn field_ring_axioms(a in cyclo(), b in cyclo(), c in cyclo()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn field_inverse(a in cyclo()) {
        prop_assume!(!a.is_zero());
        let inv = a.inverse().unwrap();
        prop_assert!(a.mul(&inv).is_one());
        prop_assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn sign_is_ordered(a in real(), b in real()) {
        let d = &a - &b;
        prop_assert_eq!(d.sign(), -(&b - &a).sign());
        prop_assert_eq!((&a * &b).sign(), a.sign() * b.sign());
        let v = d.to_f64();
        if v.abs() > 1e-9 {
            prop_assert_eq!(d.sign(), if v > 0.0 { 1 } else { -1 });
        }
    }

    #[test]
    fn monodromy_is_anti_homomorphic(
        perms in prop::collection::vec(perm(5), 4),
        u in word(4),
        v in word(4),
    ) {
        let m = Monodromy::custom(5, perms).unwrap();
        let uv = eval_word(&m, &u.concat(&v)).unwrap();
        let split = eval_word(&m, &v).unwrap().compose(&eval_word(&m, &u).unwrap());
        prop_assert_eq!(uv, split);
        let inv = eval_word(&m, &u.inverse()).unwrap();
        prop_assert_eq!(inv, eval_word(&m, &u).unwrap().inverse());
    }

    #[test]
    fn composition_is_associative(a in perm(7), b in perm(7), c in perm(7)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        for i in 0..7 {
            prop_assert_eq!(a.compose(&b).apply(i), a.apply(b.apply(i)));
        }
        prop_assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn zpermutation_matches_brute_force(p in zperm(), q in zperm(), k in -3i64..=3) {
        let pq = p.compose(&q);
        let inv = p.inverse();
        let pk = p.pow(k);
        for l in -100i64..=100 {
            prop_assert_eq!(pq.apply(l), p.apply(q.apply(l)));
            prop_assert_eq!(inv.apply(p.apply(l)), l);
            let mut x = l;
            for _ in 0..k.abs() {
                x = if k > 0 { p.apply(x) } else { inv.apply(x) };
            }
            prop_assert_eq!(pk.apply(l), x);
        }
    }

    #[test]
    fn zpermutation_orbits_match_brute_force(p in zperm()) {
        let (lo, hi) = (-1000i64, 1000i64);
        let mut parent: HashMap<i64, i64> = (lo..=hi).map(|l| (l, l)).collect();
        fn find(parent: &mut HashMap<i64, i64>, x: i64) -> i64 {
            let y = parent[&x];
            if y == x {
                return x;
            }
            let r = find(parent, y);
            parent.insert(x, r);
            r
        }
        for l in lo..=hi {
            let m = p.apply(l);
            if (lo..=hi).contains(&m) {
                let (a, b) = (find(&mut parent, l), find(&mut parent, m));
                parent.insert(a, b);
            }
        }
        let mut size: HashMap<i64, u64> = HashMap::new();
        for l in lo..=hi {
            *size.entry(find(&mut parent, l)).or_default() += 1;
        }
        let mut infinite = BTreeSet::new();
        let mut finite = BTreeSet::new();
        for l in -100i64..=100 {
            let r = find(&mut parent, l);
            if size[&r] > 2 {
                infinite.insert(r);
            } else {
                finite.insert(size[&r]);
            }
        }
        let o = p.orbits();
        prop_assert_eq!(o.infinite, infinite.len() as u64);
        prop_assert_eq!(o.finite_lengths, finite.into_iter().collect::<Vec<_>>());
    }
}
