use proptest::prelude::*;

use morsecraft::construct::{join, suspension};
use morsecraft::corpus;
use morsecraft::homology::betti_mod2;
use morsecraft::io::{format_facets, parse_facets};
use morsecraft::morse::{
    disjoint_union_gradient, dualize, function_to_gradient, gradient_to_function, morse_inequalities, morse_vector,
    verify_forman_function, verify_gradient, MorseVector,
};
use morsecraft::poset::OppositePoset;
use morsecraft::search::{optimal_morse_bruteforce, single_attempt, BruteForceConfig, Strategy as Pick};
use morsecraft::subdivision::barycentric_subdivide;
use morsecraft::{Simplex, SimplicialComplex};

/// Up to six facets on vertices `offset+1..=offset+7`.
fn complex(offset: i64) -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(1..=7i64, 1..=4), 1..=6).prop_map(move |facets| {
        SimplicialComplex::from_facets(
            facets.into_iter().map(|f| f.into_iter().map(|v| v + offset).collect::<Vec<_>>()),
        )
        .unwrap()
    })
}

fn closed_pseudomanifold() -> impl Strategy<Value = SimplicialComplex> {
    prop_oneof![
        (2..=5usize).prop_map(|n| corpus::load(&format!("boundary-simplex-{n}")).unwrap()),
        (3..=7usize).prop_map(|n| suspension(&corpus::load(&format!("cycle-{n}")).unwrap()).unwrap()),
        Just(corpus::load("rp2-6").unwrap()),
        (3..=5i64, 3..=5i64).prop_map(|(a, b)| {
            let c1 = SimplicialComplex::from_facets((1..=a).map(|i| vec![i, i % a + 1])).unwrap();
            let c2 = SimplicialComplex::from_facets((1..=b).map(|i| vec![10 + i, 10 + i % b + 1])).unwrap();
            join(&c1, &c2).unwrap()
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn heuristic_gradients_are_valid_and_replay(c in complex(0), seed in any::<u64>()) {
        let run = single_attempt(&c, Pick::Uniform, seed);
        prop_assert!(verify_gradient(&c, &run.gradient).unwrap().is_valid());
        prop_assert_eq!(morse_vector(&c, &run.gradient).unwrap(), run.vector.clone());
        prop_assert!(run.trace.replays_to(&c, &SimplicialComplex::empty()));
        prop_assert!(morse_inequalities(&c, &run.gradient).unwrap().holds());
        prop_assert_eq!(single_attempt(&c, Pick::Uniform, seed), run);
    }

    #[test]
    fn gradient_function_round_trip(c in complex(0), seed in any::<u64>()) {
        let v = single_attempt(&c, Pick::Uniform, seed).gradient;
        let f = gradient_to_function(&c, &v).unwrap();
        prop_assert!(verify_forman_function(&c, &f).unwrap().is_valid());
        prop_assert_eq!(function_to_gradient(&c, &f).unwrap(), v);
    }

    #[test]
    fn duals_reverse_vectors(c in closed_pseudomanifold(), seed in any::<u64>()) {
        let run = single_attempt(&c, Pick::Uniform, seed);
        let dual = dualize(&c, &run.gradient).unwrap();
        let opp = OppositePoset::new(&c);
        prop_assert!(verify_gradient(&opp, &dual).unwrap().is_valid());
        prop_assert_eq!(morse_vector(&opp, &dual).unwrap(), run.vector.reversed());
    }

    #[test]
    fn disjoint_unions_add_vectors(a in complex(0), b in complex(100), s in any::<u64>()) {
        let ra = single_attempt(&a, Pick::Uniform, s);
        let rb = single_attempt(&b, Pick::Uniform, s ^ 1);
        let (u, v) = disjoint_union_gradient(&a, &ra.gradient, &b, &rb.gradient).unwrap();
        prop_assert!(verify_gradient(&u, &v).unwrap().is_valid());
        let len = ra.vector.len().max(rb.vector.len());
        let sum = MorseVector((0..len).map(|i| ra.vector.get(i) + rb.vector.get(i)).collect());
        prop_assert_eq!(morse_vector(&u, &v).unwrap(), sum);
    }

    #[test]
    fn subdivision_keeps_euler_characteristic_and_homology(c in complex(0)) {
        let sd = barycentric_subdivide(&c).unwrap();
        prop_assert_eq!(sd.euler_characteristic(), c.euler_characteristic());
        prop_assert_eq!(betti_mod2(&sd), betti_mod2(&c));
    }

    #[test]
    fn link_of_a_link(c in complex(0), pick in any::<prop::sample::Index>(), split in 1u32..15) {
        let facet = c.facet_simplices()[pick.index(c.facets().len())].clone();
        let labels = facet.labels();
        prop_assume!(labels.len() >= 2);
        let (mut s, mut t) = (Vec::new(), Vec::new());
        for (i, l) in labels.iter().enumerate() {
            if i == 0 || (split >> (i - 1)) & 1 == 1 { s.push(l.clone()) } else { t.push(l.clone()) }
        }
        prop_assume!(!t.is_empty());
        let sigma = Simplex::new(s).unwrap();
        let tau = Simplex::new(t).unwrap();
        let inner = c.link(&sigma).unwrap().link(&tau).unwrap();
        prop_assert_eq!(inner, c.link(&sigma.union(&tau)).unwrap());
    }

    #[test]
    fn facet_text_round_trip(c in complex(0)) {
        prop_assert_eq!(parse_facets(&format_facets(&c)).unwrap(), c);
    }

    #[test]
    fn heuristic_never_beats_the_exhaustive_optimum(c in complex(0), seed in any::<u64>()) {
        prop_assume!(c.num_faces() <= 40);
        let opt = optimal_morse_bruteforce(&c, &BruteForceConfig::default()).unwrap();
        let run = single_attempt(&c, Pick::Uniform, seed);
        prop_assert!(opt.vector.cmp_quality(&run.vector).is_le());
        prop_assert!(verify_gradient(&c, &opt.gradient).unwrap().is_valid());
        let betti = betti_mod2(&c);
        prop_assert!((0..betti.len()).all(|i| opt.vector.get(i) >= betti[i]));
    }
}
