use proptest::prelude::*;

use setoperads::closure::{close_arity, dims, ClosureConfig};
use setoperads::koszul::dual;
use setoperads::linear::{graded_dims, relation_space, ungraded_dims};
use setoperads::presentations::{enumerate_all_equivariant, standard_catalog};
use setoperads::trees::{catalan, factorial, unrank_word, Permutation, Shape, TreeMonomial};

fn monomial() -> impl Strategy<Value = TreeMonomial> {
    (1usize..=6).prop_flat_map(|n| {
        (0..catalan(n - 1), 0..factorial(n)).prop_map(move |(s, w)| {
            TreeMonomial::from_parts(Shape::enumerate(n)[s], unrank_word(n, w)).unwrap()
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    (0..factorial(n)).prop_map(move |r| Permutation::from_images(unrank_word(n, r)).unwrap())
}

fn monomial_and_two_permutations() -> impl Strategy<Value = (TreeMonomial, Permutation, Permutation)>
{
    monomial().prop_flat_map(|m| {
        let n = m.arity();
        (Just(m), permutation(n), permutation(n))
    })
}

proptest! {
    #[test]
    fn action_is_a_left_action((m, s, t) in monomial_and_two_permutations()) {
        let twice = m.act(&t).unwrap().act(&s).unwrap();
        prop_assert_eq!(twice, m.act(&s.compose(&t)).unwrap());
        prop_assert_eq!(m.act(&Permutation::identity(m.arity())).unwrap(), m.clone());
    }

    #[test]
    fn mirror_is_an_involution_commuting_with_the_action((m, s, _t) in monomial_and_two_permutations()) {
        prop_assert_eq!(m.mirror().mirror(), m.clone());
        prop_assert_eq!(m.mirror().act(&s).unwrap(), m.act(&s).unwrap().mirror());
    }

    #[test]
    fn text_round_trips(m in monomial()) {
        let back: TreeMonomial = m.to_string().parse().unwrap();
        prop_assert_eq!(back, m);
    }
}

#[test]
fn catalog_congruences_are_equivariant_and_mirror_closed() {
    for e in standard_catalog() {
        let c = &e.congruence;
        assert!(c.is_equivariant(), "{}", e.name);
        assert_eq!(c.mirror().mirror(), *c, "{}", e.name);
        assert_eq!(
            dims(&c.mirror(), 5, false).unwrap().entries,
            dims(c, 5, false).unwrap().entries,
            "{}",
            e.name
        );
    }
    assert_eq!(enumerate_all_equivariant().len(), 54);
}

#[test]
fn orthogonal_complements_have_complementary_dimension() {
    for e in standard_catalog() {
        let r = relation_space(&e.congruence, false);
        let d = dual(&r).unwrap();
        assert_eq!(r.dim() + d.dim(), 12, "{}", e.name);
        assert_eq!(dual(&d).unwrap(), r, "{}", e.name);
    }
}

#[test]
fn class_sizes_partition_every_arity() {
    let config = ClosureConfig::default();
    for e in standard_catalog() {
        for n in 1..=5 {
            let a = close_arity(&e.congruence, n, false, &config).unwrap();
            let sizes = a.class_sizes();
            assert_eq!(sizes.len(), a.class_count());
            assert_eq!(
                sizes.iter().sum::<usize>(),
                catalan(n - 1) * factorial(n),
                "{}",
                e.name
            );
        }
    }
}

#[test]
fn linearization_has_the_closure_dimensions() {
    for e in standard_catalog() {
        let r = relation_space(&e.congruence, false);
        let linear = ungraded_dims(&r, 4).unwrap().entries;
        assert_eq!(
            linear,
            dims(&e.congruence, 4, false).unwrap().entries,
            "{}",
            e.name
        );
        if r.weight_homogeneous() {
            let g = graded_dims(&r, 4).unwrap();
            let sums: Vec<u64> = g.graded.unwrap().iter().map(|w| w.iter().sum()).collect();
            assert_eq!(sums, linear, "{}", e.name);
        }
    }
}
