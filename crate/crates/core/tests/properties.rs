mod common;

use common::{brute_hom_exists, brute_homs};
use pcsp_core::circle::{auto_circle_map, degree_vector};
use pcsp_core::combinat::central_binomial_b;
use pcsp_core::functor::{arc_digraph, sub, sym};
use pcsp_core::graph::{clique, cycle, disjoint_union, parse_text, to_text};
use pcsp_core::hom::{find_hom, is_hom, shortest_odd_closed_walk};
use pcsp_core::minion::{linear_minor, minor, random_polymorphisms};
use pcsp_core::{Digraph, Exec};
use proptest::prelude::*;

fn digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let arcs = (0..n * n).filter(|&i| bits[i]).map(|i| ((i / n) as u32, (i % n) as u32));
            Digraph::new(n, arcs).unwrap()
        })
    })
}

fn map_into(m: usize, n: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0..n, m)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn search_agrees_with_enumeration(h in digraph(4), g in digraph(3)) {
        let found = find_hom(&h, &g).unwrap();
        prop_assert_eq!(found.is_some(), brute_hom_exists(&h, &g));
        if let Some(f) = found {
            prop_assert!(is_hom(&h, &g, &f));
            prop_assert_eq!(Some(f), brute_homs(&h, &g).into_iter().next());
        }
    }

    #[test]
    fn text_format_round_trips(g in digraph(6)) {
        prop_assert_eq!(parse_text(&to_text(&g)).unwrap(), g);
    }

    #[test]
    fn union_sizes_add(a in digraph(4), b in digraph(4)) {
        let u = disjoint_union(&a, &b);
        prop_assert_eq!(u.vertex_count(), a.vertex_count() + b.vertex_count());
        prop_assert_eq!(u.arc_count(), a.arc_count() + b.arc_count());
    }

    #[test]
    fn sym_and_sub_bracket_the_input(g in digraph(5)) {
        let id: Vec<u32> = (0..g.vertex_count() as u32).collect();
        prop_assert!(sym(&g).is_undirected());
        prop_assert!(sub(&g).is_undirected());
        prop_assert!(is_hom(&g, &sym(&g), &id));
        prop_assert!(is_hom(&sub(&g), &g, &id));
        if g.is_undirected() {
            prop_assert_eq!(sym(&g), g.clone());
            prop_assert_eq!(sub(&g), g);
        }
    }

    #[test]
    fn arc_digraph_counts(g in digraph(5)) {
        let d = arc_digraph(&g).unwrap();
        prop_assert_eq!(d.vertex_count(), g.arc_count());
        let expected: usize = g.arcs().iter().map(|&(_, v)| g.out_neighbors(v).len()).sum();
        prop_assert_eq!(d.arc_count(), expected);
    }

    #[test]
    fn sequential_and_parallel_agree(n in 0usize..300, salt in any::<u64>()) {
        let f = |i: usize| (i as u64).wrapping_mul(salt).rotate_left(7);
        prop_assert_eq!(Exec::Sequential.map_range(n, f), Exec::Parallel.map_range(n, f));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn minors_compose(seed in any::<u64>(), pi in map_into(3, 3), sigma in map_into(3, 2)) {
        let c5 = cycle(5).unwrap();
        let k3 = clique(3).unwrap();
        let f = &random_polymorphisms(&c5, &k3, 3, 1, seed).unwrap()[0];
        let twice = minor(&minor(f, &pi, 3).unwrap(), &sigma, 2).unwrap();
        let composed: Vec<usize> = pi.iter().map(|&j| sigma[j]).collect();
        prop_assert!(twice.same_function(&minor(f, &composed, 2).unwrap()));
        let power = pcsp_core::graph::tensor_power(&c5, 2).unwrap();
        prop_assert!(is_hom(&power, &k3, twice.table().unwrap()));
    }

    #[test]
    fn degree_vectors_commute_with_minors(seed in any::<u64>(), pi in map_into(3, 2)) {
        let c5 = cycle(5).unwrap();
        let k3 = clique(3).unwrap();
        let s = auto_circle_map(&k3).unwrap();
        let r0 = shortest_odd_closed_walk(&c5).unwrap();
        let f = &random_polymorphisms(&c5, &k3, 3, 1, seed).unwrap()[0];
        let c = degree_vector(f, &r0, &s).unwrap();
        prop_assert_eq!(c.coefficient_sum().rem_euclid(2), 1);
        let lhs = degree_vector(&minor(f, &pi, 2).unwrap(), &r0, &s).unwrap();
        prop_assert_eq!(lhs, linear_minor(&c, &pi, 2).unwrap());
    }
}

#[test]
fn central_binomials_grow_and_double() {
    let b: Vec<_> = (0..40).map(|n| central_binomial_b(n).unwrap()).collect();
    assert!(b[1..].windows(2).all(|w| w[0] < w[1]));
    for k in 1..20 {
        assert_eq!(b[2 * k], &b[2 * k - 1] * 2u32);
    }
}
