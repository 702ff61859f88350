use veechlab::veech_group::{
    coset_enumerate, express_up_to_sign, gamma_generators, rotation_representatives, schreier_generators, GroupWord,
    Mat2, Presentation,
};

fn table(n: usize) -> (Presentation, veechlab::veech_group::CosetTable, Vec<Mat2>) {
    let p = Presentation::for_base(n).unwrap();
    let gens = gamma_generators(n).unwrap();
    let sub: Vec<GroupWord> = gens.iter().map(|g| p.from_rt_word(&g.word).unwrap()).collect();
    let t = coset_enumerate(&p, &sub).unwrap();
    (p, t, gens.into_iter().map(|g| g.matrix).collect())
}

#[test]
fn schreier_generators_lie_in_the_generated_group() {
    for n in [5, 7] {
        let (p, t, gens) = table(n);
        let schreier = schreier_generators(&t);
        assert!(!schreier.is_empty());
        for w in schreier {
            assert_eq!(t.coset_of(&w), 0, "n={}: {} leaves the subgroup", n, p.render(&w));
            let m = p.eval(&w);
            assert!(
                express_up_to_sign(&m, &gens, 3).is_some(),
                "n={}: {} is not a short product of generators",
                n,
                p.render(&w)
            );
        }
    }
}

#[test]
fn rotations_are_a_transversal() {
    for n in [5, 7, 8, 10, 12] {
        let (p, t, _) = table(n);
        let reps = rotation_representatives(n);
        let mut cosets: Vec<usize> = reps
            .iter()
            .map(|&j| t.coset_of(&p.rotation_power(j).unwrap()))
            .collect();
        cosets.sort_unstable();
        cosets.dedup();
        assert_eq!(cosets.len(), t.index, "n={}", n);
    }
}

#[test]
fn generator_matrices_match_words() {
    for n in [5, 8, 9] {
        let p = Presentation::for_base(n).unwrap();
        for g in gamma_generators(n).unwrap() {
            let w = p.from_rt_word(&g.word).unwrap();
            assert_eq!(p.eval(&w), g.matrix, "n={}", n);
            assert_eq!(g.matrix.det().to_rational().map(|q| q.to_string()), Some("1".into()));
        }
    }
}
