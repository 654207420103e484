use std::collections::BTreeMap;

use graphcore::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use NodeKind::{Eps, Internal, Mark, Omega};

fn graph(kinds: &[NodeKind], edges: &[[usize; 2]]) -> BlownUpGraph {
    with_default_word(kinds.to_vec(), edges.to_vec())
}

fn component(kinds: &[NodeKind], edges: &[[usize; 2]]) -> Component {
    let Canonical::Form { key, .. } = canonicalize(&graph(kinds, edges)).unwrap() else {
        panic!("component vanishes");
    };
    assert_eq!(key.0.len(), 1);
    Component::from_code(key.0[0].clone()).unwrap()
}

#[test]
fn tripod_of_omegas_survives() {
    let t = graph(&[Internal, Omega, Omega, Omega], &[[0, 1], [0, 2], [0, 3]]);
    assert!(matches!(canonicalize(&t).unwrap(), Canonical::Form { .. }));
}

#[test]
fn double_edge_vanishes() {
    let g = graph(
        &[Internal, Internal, Omega, Mark(0)],
        &[[0, 1], [0, 1], [0, 2], [1, 3]],
    );
    assert_eq!(canonicalize(&g).unwrap(), Canonical::Zero);
}

#[test]
fn vanishing_local_configurations() {
    // A loop joining two ω legs, two ε legs on one vertex, a self-loop.
    let ww = graph(&[Omega, Omega], &[[0, 1]]);
    assert_eq!(canonicalize(&ww).unwrap(), Canonical::Zero);
    let ee = graph(&[Internal, Eps, Eps, Mark(0)], &[[0, 1], [0, 2], [0, 3]]);
    assert_eq!(canonicalize(&ee).unwrap(), Canonical::Zero);
    let selfloop = graph(&[Internal, Omega], &[[0, 0], [0, 1]]);
    assert_eq!(canonicalize(&selfloop).unwrap(), Canonical::Zero);
    // Two identical components with an odd number of odd elements swap
    // with sign -1.
    let two = graph(&[Omega, Mark(0), Omega, Mark(0)], &[[0, 1], [2, 3]]);
    assert_eq!(canonicalize(&two).unwrap(), Canonical::Zero);
    // A loop of two ε legs has one odd edge; two ε legs on one vertex with
    // distinct ω legs on another vertex survive.
    let ee_loop = graph(&[Eps, Eps], &[[0, 1]]);
    assert!(canonicalize(&ee_loop).unwrap().sign() != 0);
}

#[test]
fn malformed_graphs_are_errors() {
    let leg_with_two = BlownUpGraph {
        kinds: vec![Internal, Omega],
        edges: vec![[0, 1], [0, 1]],
        word: vec![Odd::Omega(1), Odd::Edge(0), Odd::Edge(1)],
    };
    assert!(matches!(canonicalize(&leg_with_two), Err(GraphError::Malformed(_))));
    let missing_word = BlownUpGraph {
        kinds: vec![Omega, Mark(0)],
        edges: vec![[0, 1]],
        word: Vec::new(),
    };
    assert!(matches!(canonicalize(&missing_word), Err(GraphError::Malformed(_))));
}

#[test]
fn component_excess_examples() {
    let wj = component(&[Omega, Mark(0)], &[[0, 1]]);
    assert_eq!(excess_component(&wj).unwrap(), 0);
    let tripod = component(&[Internal, Omega, Omega, Omega], &[[0, 1], [0, 2], [0, 3]]);
    assert_eq!(excess_component(&tripod).unwrap(), 0);
    let we = component(&[Omega, Eps], &[[0, 1]]);
    assert_eq!(excess_component(&we).unwrap(), 1);
    // `ω—ω` is not a generator: its excess would be -1.
    let code = ComponentCode(vec![2, 1, 1, 0, 1, 1]);
    let ww = Component::from_code(code).unwrap();
    assert!(matches!(excess_component(&ww), Err(GraphError::NegativeExcess(_))));
}

#[test]
fn excess_budget_examples() {
    assert_eq!(excess_budget(Family::Wt15, 11, 0), 0);
    assert_eq!(excess_budget(Family::Wt15, 2, 15), 3);
    assert_eq!(excess_budget(Family::Wt13, 9, 0), 2);
    assert_eq!(excess_budget(Family::Wt13, 2, 10), 1);
    assert_eq!(generator_excess(11, 0, 15), 0);
}

fn degree(gen: &Generator) -> i64 {
    gen.edges as i64 - gen.omega as i64 + 30
}

#[test]
fn excess_zero_generators() {
    // Five ω tripods.
    let g = enumerate_x(11, &[], 15).unwrap();
    assert_eq!(g.len(), 1);
    assert_eq!(degree(&g[0]), 30);
    assert_eq!(g[0].key.to_text(), ["v,w,w,w:0-1,0-2,0-3"; 5].join("|"));
    // Fifteen `ω—j` edges.
    let g = enumerate_x(1, &[1; 15], 15).unwrap();
    assert_eq!(g.len(), 1);
    assert_eq!(degree(&g[0]), 15);
    assert!(enumerate_x(11, &[], 16).unwrap().is_empty());
}

#[test]
fn excess_one_generators_at_genus_two() {
    // One generator with an `ω—ε` edge and one per marking carrying a
    // trivalent vertex.
    for n in [14, 15] {
        let g = 2;
        if generator_excess(g, n, 15) != 1 {
            continue;
        }
        let gens = enumerate_x(g, &vec![1; n], 15).unwrap();
        assert_eq!(gens.len(), n + 1);
        let degrees: BTreeMap<i64, usize> = gens.iter().fold(BTreeMap::new(), |mut m, x| {
            *m.entry(degree(x)).or_default() += 1;
            m
        });
        assert_eq!(degrees, BTreeMap::from([(16, 1), (17, n)]));
    }
}

#[test]
fn excess_is_additive_with_matching_parity() {
    let cases: &[(usize, &[usize], i64)] = &[
        (2, &[1; 15], 3),
        (4, &[1; 12], 3),
        (8, &[1; 6], 5),
        (3, &[2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1], 3),
        (2, &[1, 1, 1], 9),
        (3, &[1, 1], 9),
        (4, &[], 9),
        (12, &[], 3),
    ];
    for &(g, colors, max_e) in cases {
        let n: usize = colors.iter().sum();
        for omega in 0..=(3 * g + 2 * n) / 2 {
            let e = generator_excess(g, n, omega);
            if !(0..=max_e).contains(&e) {
                continue;
            }
            for gen in enumerate_x(g, colors, omega).unwrap() {
                let sum: i64 = gen.component_excess.iter().sum();
                assert_eq!(sum, e, "{}", gen.key);
                assert_eq!(sum.rem_euclid(2), excess_budget(Family::Wt15, g, n).rem_euclid(2));
                assert!(gen.component_excess.iter().all(|&x| x >= 0));
                let graph = gen.key.to_graph();
                assert_eq!(graph.genus(), g, "{}", gen.key);
                assert!(graph.is_stable());
                assert_eq!(graph.omega_count(), omega);
                assert_eq!(graph.mark_count(), n);
            }
        }
    }
}

#[test]
fn oversized_enumeration_is_unsupported() {
    assert!(matches!(
        enumerate_x(4, &[1; 10], 0),
        Err(GraphError::Unsupported(_))
    ));
}

#[test]
fn gc0_small_loop_orders() {
    assert!(gc0_generators(2).unwrap().is_empty());
    let three = gc0_generators(3).unwrap();
    assert_eq!(three.len(), 1);
    assert_eq!(three[&6].len(), 1);
    assert!(matches!(gc0_generators(10), Err(GraphError::Unsupported(_))));
    // Loop order 3 multigraphs: the theta graph with a doubled edge, the
    // triple edge with a double edge, K4 and friends.
    let multi = gc0_multigraphs(3).unwrap();
    let count: usize = multi.iter().map(Vec::len).sum();
    assert!(count >= 4);
    assert_eq!(multi[4].len(), 2);
}

/// Random graph with legs, internal edges and bare pairs. Small color sets
/// make symmetries likely.
fn random_graph(rng: &mut ChaCha8Rng) -> BlownUpGraph {
    let mut kinds = Vec::new();
    let mut edges = Vec::new();
    let k = rng.gen_range(0..=3);
    kinds.extend(std::iter::repeat(Internal).take(k));
    if k >= 2 {
        for _ in 0..rng.gen_range(0..=4) {
            let a = rng.gen_range(0..k);
            let b = rng.gen_range(0..k);
            if a != b {
                edges.push([a, b]);
            }
        }
    }
    let leg = |rng: &mut ChaCha8Rng| match rng.gen_range(0..4) {
        0 => Omega,
        1 => Eps,
        _ => Mark(rng.gen_range(0..2)),
    };
    if k > 0 {
        for _ in 0..rng.gen_range(0..=5) {
            let v = rng.gen_range(0..k);
            kinds.push(leg(rng));
            edges.push([v, kinds.len() - 1]);
        }
    }
    for _ in 0..rng.gen_range(0..=2) {
        let a = leg(rng);
        let b = if a.is_mark() {
            [Omega, Eps][rng.gen_range(0..2)]
        } else {
            leg(rng)
        };
        kinds.extend([a, b]);
        edges.push([kinds.len() - 2, kinds.len() - 1]);
    }
    let mut g = with_default_word(kinds, edges);
    g.word.shuffle(rng);
    g
}

fn random_relabel(g: &BlownUpGraph, rng: &mut ChaCha8Rng) -> (BlownUpGraph, bool) {
    let mut perm: Vec<usize> = (0..g.kinds.len()).collect();
    perm.shuffle(rng);
    let mut edge_perm: Vec<usize> = (0..g.edges.len()).collect();
    edge_perm.shuffle(rng);
    let mut h = g.relabeled(&perm, &edge_perm);
    for e in &mut h.edges {
        if rng.gen_bool(0.5) {
            e.swap(0, 1);
        }
    }
    let mut order: Vec<usize> = (0..h.word.len()).collect();
    order.shuffle(rng);
    h.word = order.iter().map(|&i| h.word[i]).collect();
    (h, odd_permutation(&order))
}

fn odd_permutation(p: &[usize]) -> bool {
    let inv = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    inv % 2 == 1
}

/// Whether some automorphism acts by an odd permutation on the odd
/// elements, found by trying every kind-preserving node permutation.
fn brute_force_vanishes(g: &BlownUpGraph) -> bool {
    let mut seen = std::collections::BTreeSet::new();
    for &[a, b] in &g.edges {
        if a == b || !seen.insert((a.min(b), a.max(b))) {
            return true;
        }
    }
    let n = g.kinds.len();
    let edge_index: BTreeMap<(usize, usize), usize> = g
        .edges
        .iter()
        .enumerate()
        .map(|(e, &[a, b])| ((a.min(b), a.max(b)), e))
        .collect();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        g: &BlownUpGraph,
        edge_index: &BTreeMap<(usize, usize), usize>,
        v: usize,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = g.kinds.len();
        if v == n {
            let positions: BTreeMap<Odd, usize> =
                g.word.iter().enumerate().map(|(i, &o)| (o, i)).collect();
            let image: Vec<usize> = g
                .word
                .iter()
                .map(|&o| {
                    let mapped = match o {
                        Odd::Omega(x) => Odd::Omega(perm[x]),
                        Odd::Edge(e) => {
                            let [a, b] = g.edges[e];
                            let (x, y) = (perm[a], perm[b]);
                            Odd::Edge(edge_index[&(x.min(y), x.max(y))])
                        }
                    };
                    positions[&mapped]
                })
                .collect();
            return odd_permutation(&image);
        }
        for w in 0..n {
            if used[w] || g.kinds[w] != g.kinds[v] {
                continue;
            }
            perm[v] = w;
            let consistent = g.edges.iter().all(|&[a, b]| {
                if a > v || b > v {
                    return true;
                }
                let (x, y) = (perm[a], perm[b]);
                edge_index.contains_key(&(x.min(y), x.max(y)))
            });
            if consistent {
                used[w] = true;
                if rec(g, edge_index, v + 1, perm, used) {
                    return true;
                }
                used[w] = false;
            }
        }
        perm[v] = usize::MAX;
        false
    }
    rec(g, &edge_index, 0, &mut perm, &mut used)
}

/// Runs `f` on `count` random graphs drawn from consecutive seeds.
fn random_graphs(count: u64, mut f: impl FnMut(&BlownUpGraph, &mut ChaCha8Rng)) {
    for seed in 0..count {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng);
        if g.validate().is_err() {
            continue;
        }
        f(&g, &mut rng);
    }
}

#[test]
fn canonical_form_is_relabeling_invariant() {
    let mut checked = 0;
    random_graphs(10_000, |g, rng| {
        let base = canonicalize(g).unwrap();
        for _ in 0..3 {
            let (h, odd) = random_relabel(g, rng);
            let other = canonicalize(&h).unwrap();
            match (&base, &other) {
                (Canonical::Zero, Canonical::Zero) => {}
                (Canonical::Form { key: k1, sign: s1 }, Canonical::Form { key: k2, sign: s2 }) => {
                    assert_eq!(k1, k2);
                    assert_eq!(*s2, if odd { -s1 } else { *s1 }, "{g:?}");
                }
                _ => panic!("vanishing depends on labels: {g:?}"),
            }
        }
        checked += 1;
    });
    assert!(checked > 9_000);
}

#[test]
fn vanishing_matches_automorphism_search() {
    let mut zeros = 0;
    random_graphs(4_000, |g, _| {
        let expected = brute_force_vanishes(g);
        let got = canonicalize(g).unwrap() == Canonical::Zero;
        assert_eq!(got, expected, "{g:?}");
        zeros += got as usize;
    });
    assert!(zeros > 100);
}

#[test]
fn canonical_form_is_idempotent() {
    random_graphs(3_000, |g, _| {
        if let Canonical::Form { key, .. } = canonicalize(g).unwrap() {
            let again = canonicalize(&key.to_graph()).unwrap();
            assert_eq!(again, Canonical::Form { key: key.clone(), sign: 1 });
            assert_eq!(GraphKey::parse(&key.to_text()).unwrap(), key);
        }
    });
}

proptest! {
    #[test]
    fn text_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng);
        if let Ok(Canonical::Form { key, .. }) = canonicalize(&g) {
            prop_assert_eq!(GraphKey::parse(&key.to_text()).unwrap(), key);
        }
    }

    #[test]
    fn genus_is_additive_over_components(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng);
        prop_assume!(g.validate().is_ok() && g.is_stable());
        if let Ok(Canonical::Form { key, .. }) = canonicalize(&g) {
            let total: i64 = key.0.iter()
                .map(|c| Component::from_code(c.clone()).unwrap().genus_contribution())
                .sum();
            prop_assert_eq!(total, g.genus() as i64 - 1);
        }
    }
}

#[test]
fn catalog_components_have_nonnegative_excess() {
    for c in component_shapes(5).iter() {
        assert!((0..=5).contains(&c.excess()), "{:?}", c.code);
        let g = c.code.to_graph();
        assert!(g.is_stable());
        assert_eq!(g.components().len(), 1);
    }
}

#[test]
fn colorings_keep_shapes_that_vanish_when_uncolored() {
    // Two vertices, each with an ε leg and a marking: swapping them is odd
    // when the markings agree, and allowed when they differ.
    let shape = component(
        &[Internal, Internal, Eps, Mark(0), Eps, Mark(1)],
        &[[0, 1], [0, 2], [0, 3], [1, 4], [1, 5]],
    );
    assert!(colorings(&shape, &[2]).is_empty());
    assert_eq!(colorings(&shape, &[1, 1]).len(), 1);
    assert!(component_shapes(7).iter().any(|c| c.code == shape.code
        || colorings(c, &[1, 1]).iter().any(|d| d.code == shape.code)));
}

