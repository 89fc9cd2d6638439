use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wlp_core::complex::SimplicialComplex;
use wlp_core::graph::Graph;
use wlp_core::lefschetz::{
    criterion_degree1, criterion_top_degree, cross_validate, wlp_full_with, wlp_in_degree_by_rank, AlgebraModel,
    WlpOptions,
};
use wlp_core::linalg::rank;
use wlp_core::par::Exec;
use wlp_core::validate::{invariant_suite, random_graph, random_pseudomanifolds_with_boundary, validate_batch};

/// Bipartite components counted with a parity union-find.
fn bipartite_components(n: usize, edges: &[(usize, usize)]) -> usize {
    fn find(parent: &mut [usize], parity: &mut [u8], v: usize) -> (usize, u8) {
        if parent[v] == v {
            return (v, 0);
        }
        let (root, p) = find(parent, parity, parent[v]);
        parent[v] = root;
        parity[v] ^= p;
        (root, parity[v])
    }
    let mut parent: Vec<usize> = (0..n).collect();
    let mut parity = vec![0u8; n];
    let mut odd = vec![false; n];
    for &(a, b) in edges {
        let (ra, pa) = find(&mut parent, &mut parity, a);
        let (rb, pb) = find(&mut parent, &mut parity, b);
        if ra == rb {
            if pa == pb {
                odd[ra] = true;
            }
        } else {
            parent[rb] = ra;
            parity[rb] = pa ^ pb ^ 1;
            odd[ra] |= odd[rb];
        }
    }
    (0..n).filter(|&v| find(&mut parent, &mut parity, v).0 == v && !odd[v]).count()
}

fn complex() -> impl Strategy<Value = SimplicialComplex> {
    (1u32..8).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::btree_set(1..=n, 1..=(n as usize).min(4)), 1..8)
            .prop_map(move |fs| SimplicialComplex::from_facets(n, fs.into_iter().map(|f| f.into_iter().collect::<Vec<_>>())).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn invariants_hold(c in complex()) {
        for inv in invariant_suite(&c) {
            prop_assert!(inv.holds, "{}: {:?}", c, inv);
        }
    }

    #[test]
    fn routes_agree(c in complex()) {
        let cv = cross_validate(&c);
        prop_assert!(cv.is_consistent(), "{}: {:?}", c, cv.disagreements().collect::<Vec<_>>());
        let a = AlgebraModel::new(c.clone());
        prop_assert_eq!(criterion_degree1(&c).verdict, wlp_in_degree_by_rank(&a, 1).unwrap().verdict);
    }

    #[test]
    fn incidence_rank(seed in any::<u64>(), n in 1usize..13, p in 0.0f64..1.0) {
        let g = random_graph(n, p, &mut ChaCha8Rng::seed_from_u64(seed));
        let b = bipartite_components(n, g.edges());
        prop_assert_eq!(g.components().bipartite_count, b);
        prop_assert_eq!(rank(&g.incidence_matrix()).rank, n - b);
    }
}

#[test]
fn parity_oracle_sanity() {
    assert_eq!(bipartite_components(3, &[(0, 1), (1, 2), (0, 2)]), 0);
    assert_eq!(bipartite_components(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]), 1);
    assert_eq!(bipartite_components(5, &[(0, 1)]), 4);
    let g = Graph::new(2, [(0, 1)]).unwrap();
    assert_eq!(rank(&g.incidence_matrix()).rank, 1);
}

#[test]
fn seeded_batch_has_no_disagreements() {
    let summary = validate_batch(200, 9, 7, Exec::default());
    assert!(summary.is_clean(), "{:?}", summary.failures);
    assert_eq!(summary.count, 200);
    assert!(summary.propagation_cases > 0);
}

#[test]
fn punctured_surfaces_are_onto_in_top_degree() {
    for (name, c) in random_pseudomanifolds_with_boundary(50, 11) {
        let a = AlgebraModel::new(c.clone());
        let r = wlp_in_degree_by_rank(&a, 2).unwrap();
        assert!(r.verdict.is_surjective(), "{name}");
        assert!(criterion_top_degree(&c).unwrap().verdict.is_surjective());
    }
}

#[test]
fn sequential_and_parallel_reports_agree() {
    for seed in 0..10 {
        let s = wlp_core::validate::random_complex(seed, 9, 3).complex;
        let a = AlgebraModel::new(s);
        let x = wlp_full_with(&a, WlpOptions { propagate: false, exec: Exec::Sequential });
        let y = wlp_full_with(&a, WlpOptions { propagate: false, exec: Exec::Parallel });
        assert_eq!(x, y);
    }
}
