use hexdist_core::clique::{brute_force_clique, max_clique, Unbounded};
use hexdist_core::graph::{
    build_graph, candidate_vertices, prune_by_degree, verify_clique, CompatGraph, ANCHOR_A,
    ANCHOR_B,
};
use hexdist_core::hexagon::{hexagon_menu, hexagon_points, trim_to_m, HexagonSpec};
use hexdist_core::lattice::{
    canonicalize, delta_norm, distance_set, is_loeschian, loeschian_sequence, multiplicity_array,
    norm, LatticePoint, PointConfig, Symmetry,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn point() -> impl Strategy<Value = LatticePoint> {
    (-40i64..=40, -40i64..=40).prop_map(|(a, b)| LatticePoint::new(a, b))
}

fn config() -> impl Strategy<Value = PointConfig> {
    prop::collection::vec((-6i64..=6, -6i64..=6), 2..14)
        .prop_map(|v| PointConfig::new(v.into_iter().map(LatticePoint::from)))
        .prop_filter("two distinct points", |c| c.len() >= 2)
}

fn symmetry() -> impl Strategy<Value = Symmetry> {
    (0u8..6, any::<bool>()).prop_map(|(rotation, reflect)| Symmetry { rotation, reflect })
}

fn random_graph(n: usize, density: f64, seed: u64) -> CompatGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                edges.push((i, j));
            }
        }
    }
    CompatGraph::from_edges(n, edges)
}

fn brute_force_loeschian(n: u64) -> bool {
    let r = (n as f64).sqrt() as i64 + 2;
    (-2 * r..=2 * r).any(|a| (-2 * r..=2 * r).any(|b| norm(LatticePoint::new(a, b)).get() == n))
}

proptest! {
    #[test]
    fn norm_is_invariant_under_symmetries(p in point(), q in point(), g in symmetry(), t in point()) {
        prop_assert_eq!(norm(g.apply(p)), norm(p));
        prop_assert_eq!(delta_norm(g.apply(p) + t, g.apply(q) + t), delta_norm(p, q));
    }

    #[test]
    fn loeschian_sequence_prefixes(m in 1usize..60, extra in 0usize..40) {
        let short = loeschian_sequence(m).to_vec();
        let long = loeschian_sequence(m + extra).to_vec();
        prop_assert_eq!(&long[..m], &short[..]);
        prop_assert!(short.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(short.iter().all(|&d| is_loeschian(d)));
        // nothing skipped between consecutive terms
        for w in short.windows(2) {
            for n in w[0] + 1..w[1] {
                prop_assert!(!is_loeschian(n));
            }
        }
    }

    #[test]
    fn distance_set_survives_isometries(c in config(), g in symmetry(), t in point()) {
        let moved = c.transformed(g).translated(t);
        prop_assert_eq!(distance_set(&moved).unwrap(), distance_set(&c).unwrap());
        prop_assert_eq!(distance_set(&canonicalize(&c)).unwrap(), distance_set(&c).unwrap());
    }

    #[test]
    fn canonical_form_is_a_class_invariant(c in config(), g in symmetry(), t in point()) {
        let canon = canonicalize(&c);
        prop_assert_eq!(canonicalize(&c.transformed(g).translated(t)), canon.clone());
        prop_assert_eq!(canonicalize(&canon), canon.clone());
        prop_assert_eq!(canon.len(), c.len());
    }

    #[test]
    fn multiplicities_count_every_pair(c in config()) {
        let menu = distance_set(&c).unwrap();
        let counts = multiplicity_array(&c, &menu).unwrap();
        prop_assert_eq!(counts.total(), c.pair_count());
        prop_assert!(counts.counts.iter().all(|&k| k > 0));
    }

    #[test]
    fn clique_matches_oracle(n in 1usize..=25, density in 0.1f64..0.9, seed in any::<u64>()) {
        let g = random_graph(n, density, seed);
        let exact = brute_force_clique(&g).unwrap();
        let bb = max_clique(&g, 0, &Unbounded);
        prop_assert!(bb.optimal);
        prop_assert_eq!(bb.size, exact.size);
        prop_assert!(verify_clique(&g, &bb.clique).unwrap());
        // same input, same clique
        prop_assert_eq!(max_clique(&g, 0, &Unbounded).clique, bb.clique.clone());
        // any seed at or below the optimum, or above it, gives the same size
        for seed_size in [1, exact.size, exact.size + 2] {
            prop_assert_eq!(max_clique(&g, seed_size, &Unbounded).size, exact.size);
        }
        for t in 0..=exact.size {
            let pruned = prune_by_degree(&g, t);
            prop_assert_eq!(max_clique(&pruned, 0, &Unbounded).size, exact.size, "t={}", t);
        }
    }
}

#[test]
fn is_loeschian_agrees_with_enumeration() {
    for n in 0..1500 {
        assert_eq!(is_loeschian(n), brute_force_loeschian(n), "n={n}");
    }
}

#[test]
fn clique_plus_anchors_uses_only_menu_distances() {
    for m in 1..=14 {
        let menu = loeschian_sequence(m);
        let vertices = candidate_vertices(&menu).unwrap();
        for &v in &vertices {
            assert!(
                menu.contains(delta_norm(v, ANCHOR_A)) && menu.contains(delta_norm(v, ANCHOR_B))
            );
        }
        let g = build_graph(&vertices, &menu);
        let r = max_clique(&g, 0, &Unbounded);
        let set: PointConfig = r
            .clique
            .iter()
            .copied()
            .chain([ANCHOR_A, ANCHOR_B])
            .collect();
        assert_eq!(set.len(), r.size + 2);
        assert!(distance_set(&set).unwrap().is_subset_of(&menu), "m={m}");
    }
}

#[test]
fn hexagon_symmetry_and_trimming() {
    for spec in HexagonSpec::ladder().take(10) {
        let pts = hexagon_points(spec).unwrap();
        let menu = hexagon_menu(spec).unwrap();
        let counts = multiplicity_array(&pts, &menu).unwrap();
        assert!(counts.counts.iter().all(|c| c % 3 == 0), "{spec}");
        for m in [menu.len() - 1, menu.len() - 2] {
            let t = trim_to_m(&pts, m);
            assert!(t.distance_count <= m);
            assert!(t.config.points().iter().all(|&p| pts.contains(p)));
            assert_eq!(t.config.len() + t.removed.len(), pts.len());
        }
    }
}
