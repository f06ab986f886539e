mod common;

use std::collections::BTreeSet;

use num_traits::Zero;
use polycomm::basis::{coxeter_group, enumerate_generators, generator_count, generator_words, per_length_counts};
use polycomm::{SimplicialComplex, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Components of the graph induced on `j`, by repeated flooding over the
/// raw face list.
fn components_brute_force(k: &SimplicialComplex, j: VertexSet) -> usize {
    let edges: Vec<VertexSet> = k.faces().iter().copied().filter(|f| f.len() == 2 && f.is_subset(j)).collect();
    let mut left = j & k.vertices();
    let mut count = 0;
    while let Some(start) = left.min() {
        let mut comp = VertexSet::singleton(start);
        loop {
            let grown = edges.iter().filter(|e| !(**e & comp).is_empty()).fold(comp, |acc, e| acc | *e);
            if grown == comp {
                break;
            }
            comp = grown;
        }
        left = left - comp;
        count += 1;
    }
    count
}

#[test]
fn generator_count_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in 2..=8 {
        for _ in 0..25 {
            let k = common::random_complex(&mut rng, m);
            let enumerated = enumerate_generators(&k).len();
            let from_components = generator_count(&k);
            let from_homology: usize = VertexSet::full(m)
                .subsets()
                .filter(|j| !j.is_empty())
                .map(|j| k.full_subcomplex(j).reduced_homology().betti(0))
                .sum();
            let brute: usize =
                VertexSet::full(m).subsets().filter(|j| !j.is_empty()).map(|j| components_brute_force(&k, j) - 1).sum();
            assert_eq!(enumerated, from_components);
            assert_eq!(enumerated, from_homology);
            assert_eq!(enumerated, brute);
            let per_length: usize = per_length_counts(&enumerate_generators(&k)).values().sum();
            assert_eq!(per_length, enumerated);
        }
    }
}

#[test]
fn discrete_complexes_follow_the_closed_form() {
    for m in 2..=8 {
        let k = SimplicialComplex::discrete(m).unwrap();
        let gens = enumerate_generators(&k);
        assert_eq!(gens.len(), (m - 2) * (1 << (m - 1)) + 1);
        assert_eq!(generator_count(&k), gens.len());
        for (l, count) in per_length_counts(&gens) {
            assert_eq!(count, (l - 1) * common::binomial(m, l), "m={m} l={l}");
        }
        assert_eq!(per_length_counts(&gens).len(), m - 1);
    }
}

#[test]
fn generators_match_the_path_plus_point_example() {
    let k = SimplicialComplex::from_maximal_faces(4, &[vec![1, 2], vec![2, 3], vec![4]]).unwrap();
    let got: BTreeSet<String> = enumerate_generators(&k).iter().map(|g| g.to_string()).collect();
    let want: BTreeSet<String> = [
        "(g3,g1)",
        "(g4,g1)",
        "(g4,g2)",
        "(g4,g3)",
        "(g2,(g4,g1))",
        "(g3,(g4,g1))",
        "(g1,(g4,g3))",
        "(g3,(g4,g2))",
        "(g2,(g3,(g4,g1)))",
    ]
    .into_iter()
    .map(String::from)
    .collect();
    assert_eq!(got, want);
}

#[test]
fn generator_words_lie_in_the_kernel_and_are_nontrivial() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..150 {
        let m = rng.gen_range(2..=6);
        let k = common::random_complex(&mut rng, m);
        let spec = coxeter_group(&k);
        for (w, g) in generator_words(&k).iter().zip(enumerate_generators(&k)) {
            assert!(spec.abelianization(w).unwrap().iter().all(Zero::is_zero), "{g}");
            assert!(!spec.is_identity(w).unwrap(), "{g}");
            assert!(!spec.geometric_representation(w).unwrap().is_identity(), "{g}");
            // the word is stored normalized
            assert_eq!(&spec.normal_form(w).unwrap(), w);
        }
    }
}

#[test]
fn generator_shape_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let m = rng.gen_range(2..=7);
        let k = common::random_complex(&mut rng, m);
        let gens = enumerate_generators(&k);
        let keys: Vec<_> = gens.iter().map(|g| (g.length(), g.support().mask(), g.i())).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        for g in &gens {
            let s = g.support();
            assert_eq!(Some(g.j()), s.max());
            assert!(g.i() < g.j());
            assert!(g.ks().windows(2).all(|w| w[0] < w[1]));
            assert!(!g.ks().contains(&g.i()));
            let comp = k.full_subcomplex(s).connected_components().into_iter().find(|c| c.contains(g.i())).unwrap();
            assert!(!comp.contains(g.j()));
            assert_eq!(comp.min(), Some(g.i()));
        }
    }
}
