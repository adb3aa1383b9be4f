// SPDX-License-Identifier: Apache-2.0

use proptest::prelude::*;
use rand::seq::SliceRandom;
use schreier_core::generate::{generate, GraphKind, GraphSpec};
use schreier_core::local::{
    ball_code, involution_invariance_check, neighborhood_distribution, tv_distance, Marks,
};
use schreier_core::orientation::{eulerian_orientation, Orientation};
use schreier_core::rng::{self, WorkBudget};
use schreier_core::MultiGraph;

fn random_multigraph(n: usize, m: usize, seed: u64) -> MultiGraph {
    use rand::Rng;
    let mut rng = rng::seeded(seed);
    let edges: Vec<_> = (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    MultiGraph::build(n, &edges).unwrap()
}

/// Orientation transported along a vertex relabelling (edge ids are kept).
fn transport(g: &MultiGraph, h: &MultiGraph, o: &Orientation, perm: &[usize]) -> Orientation {
    let heads = (0..g.edge_count())
        .map(|e| {
            let head = perm[o.head(g, e)];
            let (_, v) = h.endpoints(e);
            if v == head {
                2 * e + 1
            } else {
                2 * e
            }
        })
        .collect();
    Orientation::from_heads(heads).unwrap()
}

#[test]
fn codes_survive_relabelling_on_a_thousand_triples() {
    for t in 0..1000u64 {
        let n = 4 + (t % 30) as usize;
        let g = random_multigraph(n, n + (t % 7) as usize * n / 4, t);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng::seeded(t + 9999));
        let h = g.relabel(&perm);
        let root = (t as usize * 7) % n;
        let r = 1 + (t % 3) as usize;
        let a = ball_code(&g, root, r, Marks::NONE, WorkBudget::DEFAULT).unwrap();
        let b = ball_code(&h, perm[root], r, Marks::NONE, WorkBudget::DEFAULT).unwrap();
        assert_eq!(a, b, "triple {t}");
        if g.odd_vertices().is_empty() {
            let o = eulerian_orientation(&g).unwrap();
            let o2 = transport(&g, &h, &o, &perm);
            let colors: Vec<Option<u32>> = (0..g.edge_count()).map(|e| Some(e as u32 % 3 + 1)).collect();
            let ma = Marks { orientation: Some(&o), colors: Some(&colors) };
            let mb = Marks { orientation: Some(&o2), colors: Some(&colors) };
            assert_eq!(
                ball_code(&g, root, r, ma, WorkBudget::DEFAULT).unwrap(),
                ball_code(&h, perm[root], r, mb, WorkBudget::DEFAULT).unwrap()
            );
        }
    }
}

#[test]
fn involution_check_vanishes_on_regular_graphs() {
    for seed in 0..15u64 {
        let degree = 2 + (seed % 3) as usize * 2;
        let g = generate(&GraphSpec::new(GraphKind::ConfigurationRegular { degree, n: 40 }, seed)).unwrap();
        let (tv, rep) = involution_invariance_check(&g, 2, None, WorkBudget::DEFAULT).unwrap();
        assert_eq!(tv, 0.0);
        assert_eq!(rep.pairs as usize, g.dart_count());
    }
}

#[test]
fn sampled_distributions_approach_the_exact_one() {
    let g = random_multigraph(60, 80, 5);
    let exact = neighborhood_distribution(&g, 1, Marks::NONE, None, WorkBudget::DEFAULT).unwrap();
    let mut last = f64::INFINITY;
    let mut values = Vec::new();
    for &n in &[100usize, 10_000, 200_000] {
        let s = neighborhood_distribution(&g, 1, Marks::NONE, Some((n, 3)), WorkBudget::DEFAULT).unwrap();
        let tv = tv_distance(&exact, &s).unwrap();
        values.push(tv);
        last = tv;
    }
    assert!(values[2] < values[0], "{values:?}");
    assert!(last < 0.02, "{values:?}");
}

#[test]
fn exact_masses_have_vertex_denominators() {
    let g = random_multigraph(37, 50, 8);
    let d = neighborhood_distribution(&g, 2, Marks::NONE, None, WorkBudget::DEFAULT).unwrap();
    assert_eq!(d.total, 37);
    let sum: f64 = d.counts.keys().map(|c| d.mass(c)).sum();
    assert!((sum - 1.0).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn tv_is_a_bounded_symmetric_distance(n in 2usize..30, m in 1usize..50, s1 in any::<u64>(), s2 in any::<u64>()) {
        let g = random_multigraph(n, m, s1);
        let h = random_multigraph(n, m, s2);
        let p = neighborhood_distribution(&g, 1, Marks::NONE, None, WorkBudget::DEFAULT).unwrap();
        let q = neighborhood_distribution(&h, 1, Marks::NONE, None, WorkBudget::DEFAULT).unwrap();
        let a = tv_distance(&p, &q).unwrap();
        prop_assert!((0.0..=1.0).contains(&a));
        prop_assert_eq!(a, tv_distance(&q, &p).unwrap());
        prop_assert_eq!(tv_distance(&p, &p).unwrap(), 0.0);
    }
}
