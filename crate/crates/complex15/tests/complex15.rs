use std::collections::BTreeMap;

use complex15::*;
use euler15::chi_table;
use num_rational::BigRational;
use symkit::Partition;

/// Parses `"2,1^12"` into `(2,1,...,1)`.
fn part(s: &str) -> Partition {
    let mut parts = Vec::new();
    for item in s.split(',') {
        let (p, m) = match item.split_once('^') {
            Some((p, m)) => (p.parse::<usize>().unwrap(), m.parse::<usize>().unwrap()),
            None => (item.parse::<usize>().unwrap(), 1),
        };
        parts.extend(std::iter::repeat(p).take(m));
    }
    Partition::new(parts)
}

type Table = BTreeMap<i64, BTreeMap<Partition, usize>>;

fn table(rows: &[(i64, &[(&str, usize)])]) -> Table {
    rows.iter()
        .map(|&(k, ms)| (k, ms.iter().map(|&(p, m)| (part(p), m)).collect()))
        .collect()
}

/// Published low-excess cohomology of `B`, grouped by `3g + 2n - 33`.
/// The zero partition list stands for `n = 0`.
fn published() -> Vec<((usize, usize), Table)> {
    let empty = Partition::empty();
    let mut out = vec![
        // excess 0
        ((1, 15), table(&[(15, &[("1^15", 1)])])),
        ((3, 12), table(&[(18, &[("1^12", 1)])])),
        ((5, 9), table(&[(21, &[("1^9", 1)])])),
        ((7, 6), table(&[(24, &[("1^6", 1)])])),
        ((9, 3), table(&[(27, &[("1^3", 1)])])),
        ((11, 0), BTreeMap::from([(30, BTreeMap::from([(empty, 1)]))])),
        // excess 1
        ((2, 14), table(&[(17, &[("2,1^12", 1)])])),
        ((4, 11), table(&[(20, &[("2,1^9", 1)])])),
        ((6, 8), table(&[(23, &[("2,1^6", 1)])])),
        ((8, 5), table(&[(26, &[("2,1^3", 1)])])),
        ((10, 2), table(&[(29, &[("2", 1)])])),
        // excess 2
        ((1, 16), table(&[(16, &[("3,1^13", 1)])])),
        ((3, 13), table(&[(18, &[("1^13", 1)]), (19, &[("3,1^10", 2)])])),
        ((5, 10), table(&[(21, &[("1^10", 1)]), (22, &[("3,1^7", 2)])])),
        ((7, 7), table(&[(24, &[("1^7", 1)]), (25, &[("3,1^4", 2)])])),
        ((9, 4), table(&[(27, &[("1^4", 1)]), (28, &[("3,1", 2)])])),
        ((11, 1), table(&[(30, &[("1", 1)])])),
        // excess 3
        ((2, 15), table(&[(18, &[("4,1^11", 1), ("3,2,1^10", 1), ("3,1^12", 1)])])),
        (
            (4, 12),
            table(&[
                (20, &[("2,1^10", 1)]),
                (21, &[("4,1^8", 2), ("3,2,1^7", 1), ("3,1^9", 1)]),
            ]),
        ),
        (
            (6, 9),
            table(&[
                (23, &[("2,1^7", 1)]),
                (24, &[("4,1^5", 2), ("3,2,1^4", 1), ("3,1^6", 1)]),
            ]),
        ),
        (
            (8, 6),
            table(&[
                (26, &[("2,1^4", 1)]),
                (27, &[("4,1^2", 2), ("3,2,1", 1), ("3,1^3", 1)]),
            ]),
        ),
        ((10, 3), table(&[(29, &[("2,1", 1)])])),
        ((12, 0), BTreeMap::new()),
    ];
    out.sort_by_key(|&((g, n), _)| 3 * g + 2 * n);
    out
}

#[test]
fn published_tables_match() {
    let cases = published();
    assert_eq!(cases.len(), 23);
    for ((g, n), expected) in cases {
        let h = equivariant_cohomology(Family::B15, g, n, DEFAULT_TRUNCATION).unwrap();
        assert_eq!(h.degrees, expected, "B({g},{n})");
    }
}

#[test]
fn equivariant_dimensions_match_plain_cohomology() {
    for (g, n) in [(9, 4), (8, 5), (10, 3), (2, 14)] {
        let h = equivariant_cohomology(Family::B15, g, n, DEFAULT_TRUNCATION).unwrap();
        let plain = build_complex(Family::B15, g, n, DEFAULT_TRUNCATION)
            .unwrap()
            .cohomology()
            .unwrap();
        let from_reps: BTreeMap<i64, usize> = h
            .degrees
            .keys()
            .map(|&k| (k, h.dimension(k) as usize))
            .collect();
        assert_eq!(from_reps, plain, "B({g},{n})");
    }
}

#[test]
fn euler_characteristic_agrees_with_generating_function() {
    let chi = chi_table(12, 6).unwrap();
    let cases = [
        (7, 6),
        (8, 5),
        (8, 6),
        (9, 3),
        (9, 4),
        (10, 2),
        (10, 3),
        (11, 0),
        (11, 1),
        (12, 0),
    ];
    for (g, n) in cases {
        let h = equivariant_cohomology(Family::B15, g, n, DEFAULT_TRUNCATION).unwrap();
        let cell = chi.cell(g, n).unwrap();
        assert_eq!(&h.euler_characteristic(), cell, "({g},{n})");
    }
}

#[test]
fn euler_characteristic_vanishes_below_threshold() {
    let chi = chi_table(12, 6).unwrap();
    for g in 1..=12 {
        for n in 0..=6 {
            if 3 * g + 2 * n <= 32 {
                assert!(chi.cell(g, n).map_or(true, |c| c.is_zero()), "({g},{n})");
            }
        }
    }
}

#[test]
fn excess_one_differential_hits_each_marked_tripod() {
    // The generator with an `ω—ε` pair maps to each generator carrying a
    // trivalent vertex with legs `j, ω, ω` with coefficient ±1.
    for (g, n) in [(2, 14), (8, 5), (10, 2)] {
        let c = build_complex(Family::B15, g, n, DEFAULT_TRUNCATION).unwrap();
        let (&k0, b0) = c.bases.iter().next().unwrap();
        let col = b0
            .iter()
            .position(|key| key.to_text().starts_with("w,e:0-1|"))
            .unwrap();
        let targets: Vec<usize> = c.bases[&(k0 + 1)]
            .iter()
            .enumerate()
            .filter(|(_, key)| key.0.iter().any(|comp| {
                let t = graphcore::GraphKey(vec![comp.clone()]).to_text();
                t.starts_with("v,w,w,m") && t.ends_with(":0-1,0-2,0-3")
            }))
            .map(|(i, _)| i)
            .collect();
        assert_eq!(targets.len(), n, "({g},{n})");
        let d = &c.diffs[&k0];
        for r in targets {
            let x = d.get(r, col).expect("every marked tripod is hit");
            assert_eq!(num_traits::Signed::abs(x), BigRational::from_integer(1.into()), "({g},{n})");
        }
    }
}

#[test]
fn square_zero_on_built_complexes() {
    for (g, n) in [(2, 15), (4, 12), (8, 6), (3, 13), (11, 1)] {
        build_complex(Family::B15, g, n, DEFAULT_TRUNCATION)
            .unwrap()
            .check_square_zero()
            .unwrap();
    }
    for (g, n, r) in [(2, 3, 2), (3, 1, 2), (4, 0, 2), (2, 2, 1), (1, 4, 2)] {
        for family in [Family::B15, Family::C15, Family::X] {
            build_complex(family, g, n, r)
                .unwrap()
                .check_square_zero()
                .unwrap();
        }
    }
    for l in 2..=4 {
        build_gc0(l).unwrap().check_square_zero().unwrap();
    }
}

#[test]
fn b_and_c_have_isomorphic_cohomology() {
    for (g, n, r) in [
        (1, 2, 0),
        (2, 1, 0),
        (1, 3, 1),
        (2, 2, 1),
        (2, 3, 2),
        (3, 1, 2),
        (4, 0, 2),
        (1, 4, 3),
        (2, 3, 3),
        (3, 1, 3),
    ] {
        let hb = build_complex(Family::B15, g, n, r).unwrap().cohomology().unwrap();
        let hc = build_complex(Family::C15, g, n, r).unwrap().cohomology().unwrap();
        assert_eq!(hb, hc, "({g},{n}) r={r}");
    }
}

#[test]
fn auxiliary_complex_is_acyclic() {
    for (g, n) in [(1, 2), (1, 4), (2, 1), (2, 3), (3, 0), (3, 1), (4, 0)] {
        let c = build_complex(Family::X, g, n, 0).unwrap();
        assert!(c.total_dim() > 0, "({g},{n})");
        assert!(c.cohomology().unwrap().is_empty(), "({g},{n})");
    }
}

#[test]
fn truncation_splits_generators_by_omega_count() {
    let r = 2;
    for (g, n) in [(2, 2), (3, 1), (1, 4)] {
        let x = build_complex(Family::X, g, n, 0).unwrap().total_dim();
        let b = build_complex(Family::B15, g, n, r).unwrap().total_dim();
        let c = build_complex(Family::C15, g, n, r).unwrap().total_dim();
        assert_eq!(x, b + c, "({g},{n})");
    }
}

#[test]
fn vanishing_cases() {
    for (g, n) in [(10, 0), (1, 14), (8, 4), (5, 8), (2, 13)] {
        verify_vanishing(g, n).unwrap();
    }
    assert!(matches!(verify_vanishing(11, 0), Err(ComplexError::Unsupported(_))));
}

#[test]
fn out_of_scope_requests_are_rejected() {
    for (g, n) in [(13, 0), (2, 16), (1, 18), (12, 1)] {
        let r = build_complex(Family::B15, g, n, DEFAULT_TRUNCATION);
        assert!(matches!(r, Err(ComplexError::Unsupported(_))), "({g},{n})");
        let e = equivariant_cohomology(Family::B15, g, n, DEFAULT_TRUNCATION);
        assert!(matches!(e, Err(ComplexError::Unsupported(_))), "({g},{n})");
    }
    assert!(matches!(build_gc0(10), Err(ComplexError::Graph(_))));
    assert!(matches!(
        build_complex(Family::C15, 4, 3, DEFAULT_TRUNCATION),
        Err(ComplexError::Unsupported(_))
    ));
}

#[test]
fn chain_multiplicities_are_nonnegative_integers_summing_to_dimensions() {
    for (g, n) in [(9, 4), (2, 15)] {
        let m = chain_multiplicities(Family::B15, g, n, DEFAULT_TRUNCATION).unwrap();
        let dims = build_complex(Family::B15, g, n, DEFAULT_TRUNCATION).unwrap().dims();
        let mut totals: BTreeMap<i64, u128> = BTreeMap::new();
        for (lambda, row) in &m {
            for (&k, &c) in row {
                assert!(c >= 0);
                *totals.entry(k).or_default() += c as u128 * symkit::specht_dim(lambda);
            }
        }
        let dims: BTreeMap<i64, u128> = dims.into_iter().map(|(k, d)| (k, d as u128)).collect();
        assert_eq!(totals, dims, "({g},{n})");
    }
}

/// Brute-force GC0 in loop order 3: simple graphs on labeled vertices,
/// isomorphism and orientation checked by trying every vertex permutation.
fn brute_force_gc0_l3() -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for k in 2..=4usize {
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect();
        let mut classes: Vec<Vec<(usize, usize)>> = Vec::new();
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<(usize, usize)> =
                (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
            if edges.len() + 1 != k + 3 {
                continue;
            }
            let mut deg = vec![0; k];
            for &(a, b) in &edges {
                deg[a] += 1;
                deg[b] += 1;
            }
            if deg.iter().any(|&d| d < 3) {
                continue;
            }
            let perms = permutations(k);
            let image = |p: &[usize]| -> Vec<(usize, usize)> {
                let mut e: Vec<_> = edges
                    .iter()
                    .map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b])))
                    .collect();
                e.sort();
                e
            };
            if classes.iter().any(|c| perms.iter().any(|p| &image(p) == c)) {
                continue;
            }
            // Odd automorphisms (odd permutations of the edges) kill the class.
            let odd = perms.iter().any(|p| {
                let mapped: Vec<usize> = edges
                    .iter()
                    .map(|&(a, b)| {
                        let e = (p[a].min(p[b]), p[a].max(p[b]));
                        edges.iter().position(|&x| x == e).unwrap_or(usize::MAX)
                    })
                    .collect();
                !mapped.contains(&usize::MAX) && inversions(&mapped) % 2 == 1
            });
            classes.push(image(&(0..k).collect::<Vec<_>>()));
            if !odd {
                *out.entry(edges.len() as i64).or_default() += 1;
            }
        }
    }
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..k {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count()
}

#[test]
fn gc0_small_loop_orders() {
    let two = build_gc0(2).unwrap();
    assert_eq!(two.total_dim(), 0);
    assert!(two.cohomology().unwrap().is_empty());

    let three = build_gc0(3).unwrap();
    let oracle = brute_force_gc0_l3();
    assert_eq!(oracle, BTreeMap::from([(6, 1)]));
    assert_eq!(three.dims(), oracle);
    assert_eq!(three.cohomology().unwrap(), BTreeMap::from([(6, 1)]));
}

#[test]
fn gc0_loop_orders_four_and_five() {
    // The wheel classes: none in loop order 4, the five-spoke wheel with
    // 10 edges in loop order 5.
    let four = build_gc0(4).unwrap();
    assert!(four.cohomology().unwrap().is_empty());
    let five = build_gc0(5).unwrap();
    assert_eq!(five.cohomology().unwrap(), BTreeMap::from([(10, 1)]));
}

#[test]
fn gc0_loop_order_six_degree_fifteen() {
    let six = build_gc0(6).unwrap();
    six.check_square_zero().unwrap();
    let h = six.cohomology().unwrap();
    println!("loop order 6: {h:?}");
    assert!(h.get(&15).copied().unwrap_or(0) > 0, "{h:?}");
}
