use std::collections::BTreeMap;

use complex13::*;
use exactla::{rank_exact, ParamPoly, SparseMat};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use symkit::{enumerate_partitions, specht_dim, Partition};

fn part(text: &str) -> Partition {
    if text.is_empty() {
        return Partition::empty();
    }
    let mut parts = Vec::new();
    for piece in text.split(',') {
        match piece.split_once('^') {
            Some((p, e)) => {
                let p: usize = p.parse().unwrap();
                parts.extend(std::iter::repeat(p).take(e.parse().unwrap()));
            }
            None => parts.push(piece.parse().unwrap()),
        }
    }
    Partition::new(parts)
}

/// `(g, n, degree, [(λ, multiplicity)])` for `3g + 2n` equal to 26 or 27.
fn published() -> Vec<(usize, usize, i64, Vec<(Partition, usize)>)> {
    vec![
        (2, 10, 14, vec![(part("1^10"), 1)]),
        (4, 7, 17, vec![(part("1^7"), 1)]),
        (6, 4, 20, vec![(part("1^4"), 1)]),
        (8, 1, 23, vec![(part("1"), 1)]),
        (1, 12, 13, vec![(part("2,1^10"), 1)]),
        (3, 9, 16, vec![(part("1^9"), 1), (part("2,1^7"), 2)]),
        (5, 6, 19, vec![(part("1^6"), 1), (part("2,1^4"), 2)]),
        (7, 3, 22, vec![(part("1^3"), 1), (part("2,1"), 2)]),
        (9, 0, 24, vec![(Partition::empty(), 1)]),
    ]
}

fn cases() -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = published().iter().map(|c| (c.0, c.1)).collect();
    out.extend([(1, 11), (3, 8), (5, 5), (7, 2), (2, 9), (4, 6), (8, 0)]);
    out
}

fn family(name: &str) -> usize {
    family_index(name).unwrap()
}

#[test]
fn published_table_matches() {
    for (g, n, k, expected) in published() {
        let h = cohomology13(g, n).unwrap();
        let want: BTreeMap<i64, BTreeMap<Partition, usize>> =
            [(k, expected.into_iter().collect())].into_iter().collect();
        assert_eq!(h.degrees, want, "({g}, {n}):\n{}", h.describe());
    }
}

#[test]
fn cohomology_sits_in_the_expected_degree() {
    for (g, n, _, _) in published() {
        let h = cohomology13(g, n).unwrap();
        let degrees: Vec<i64> = h.degrees.keys().copied().collect();
        assert_eq!(degrees, vec![expected_degree(g, n)], "({g}, {n})");
    }
}

#[test]
fn small_excess_vanishes() {
    for (g, n) in [(1, 11), (3, 8), (5, 5), (7, 2), (2, 9), (8, 0), (4, 6), (1, 1)] {
        assert!(excess13(g, n) <= 0);
        assert!(cohomology13(g, n).unwrap().is_zero(), "({g}, {n})");
        assert_eq!(enumerate_wt13(g, n).unwrap().len(), 0);
    }
}

#[test]
fn larger_excess_is_rejected() {
    for (g, n) in [(10, 0), (1, 14), (3, 10), (9, 1), (2, 11)] {
        assert!(excess13(g, n) > 2);
        assert!(matches!(cohomology13(g, n), Err(Wt13Error::Unsupported(_))), "({g}, {n})");
        assert!(matches!(enumerate_wt13(g, n), Err(Wt13Error::Unsupported(_))));
    }
}

#[test]
fn generic_ranks_agree_over_independent_primes() {
    for (g, n, _, _) in published() {
        let a = cohomology13_with(g, n, 5, 1).unwrap();
        let b = cohomology13_with(g, n, 7, 0xdead_beef).unwrap();
        assert_eq!(a.degrees, b.degrees, "({g}, {n})");
        assert!(a.primes.len() >= 5 || a.primes.is_empty());
        assert!(a.primes.iter().all(|&p| p > 1 << 61));
    }
}

#[test]
fn excess_one_generators() {
    let b = enumerate_wt13(2, 10).unwrap();
    assert_eq!(b.len(), 1);
    assert_eq!(b[&14].len(), 1);
    assert_eq!(b[&14][0].family, family("irr"));

    let b = enumerate_wt13(4, 7).unwrap();
    let mut seen: Vec<(i64, &str)> = b
        .iter()
        .flat_map(|(&k, v)| v.iter().map(move |x| (k, FAMILIES[x.family].name)))
        .collect();
    seen.sort();
    assert_eq!(seen, vec![(16, "s"), (17, "irr"), (17, "δ")]);
}

#[test]
fn genus_nine_generators() {
    let b = enumerate_wt13(9, 0).unwrap();
    let names: Vec<&str> = b.values().flatten().map(|x| FAMILIES[x.family].name).collect();
    assert!(names.contains(&"ε,irr"));
    assert!(!names.contains(&"j,irr"));
    let dims: Vec<(i64, usize)> = b.iter().map(|(&k, v)| (k, v.len())).collect();
    assert_eq!(dims, vec![(23, 3), (24, 7), (25, 3)]);
}

#[test]
fn every_generator_has_eleven_omega_legs_and_the_right_genus() {
    for (g, n) in cases() {
        let b = enumerate_wt13(g, n).unwrap();
        for (&k, gens) in &b {
            for x in gens {
                let f = &FAMILIES[x.family];
                assert_eq!(i64::from(f.excess), excess13(g, n));
                let free = n - f.slots.count();
                assert_eq!(free + f.omega + 3 * x.tripods, 11, "{}", x.label());
                assert_eq!(1 + f.genus + 2 * x.tripods, g, "{}", x.label());
                assert_eq!(k, f.degree_offset - n as i64);
            }
        }
    }
}

#[test]
fn family_count() {
    let by_excess = |e: u32| FAMILIES.iter().filter(|f| f.excess == e).count();
    assert_eq!(by_excess(1), 3);
    assert_eq!(by_excess(2), 20);
    let in_degree = |off: i64| FAMILIES.iter().filter(|f| f.excess == 2 && f.degree_offset == off).count();
    assert_eq!((in_degree(25), in_degree(24), in_degree(23)), (8, 9, 3));
}

fn image(g: usize, n: usize, source: &str) -> BTreeMap<String, ParamPoly> {
    let table = DifferentialTable::new(g, n);
    let colors = vec![1; n];
    let gens = enumerate_colored(g, &colors).unwrap();
    let src = gens
        .values()
        .flatten()
        .find(|x| x.family == family(source))
        .unwrap();
    differential13(&table, g, &colors, src)
        .unwrap()
        .into_iter()
        .map(|(h, c)| (h.label(), c))
        .collect()
}

#[test]
fn stated_differentials() {
    let d = image(9, 0, "4irr");
    assert_eq!(d.len(), 1);
    assert_eq!(d["Γ_birr"], ParamPoly::int(3));

    let d = image(9, 0, "B̄");
    assert_eq!(d.len(), 1);
    assert_eq!(d["Γ_b̄b̄"], ParamPoly::int(2));

    let d = image(9, 0, "5̄");
    assert_eq!(d.len(), 3);
    assert_eq!(d["Γ_B̄'"], ParamPoly::int(6));
    assert!(d["Γ_4irr"].as_constant().is_none());
    assert!(d.contains_key("Γ_B̄"));

    let d = image(9, 0, "4b̄");
    assert_eq!(d["Γ_bb̄"], ParamPoly::int(3));
}

#[test]
fn sums_over_markings_alternate() {
    let d = image(3, 9, "ε,irr");
    assert_eq!(d.len(), 9);
    for j in 0..9 {
        let want = if j % 2 == 0 { 1 } else { -1 };
        assert_eq!(d[&format!("Γ_j,irr[{j}]")], ParamPoly::int(want));
    }
}

#[test]
fn square_zero_identically_on_every_coloring() {
    for (g, n) in cases() {
        let table = DifferentialTable::new(g, n);
        for mu in enumerate_partitions(n) {
            let c = build_wt13(&table, g, mu.parts()).unwrap();
            c.check_square_zero().unwrap();
        }
    }
}

#[test]
fn pair_family_appears_only_in_genus_one() {
    let b = enumerate_wt13(1, 12).unwrap();
    let all: Vec<&Wt13Generator> = b.values().flatten().collect();
    assert_eq!(all.len(), 66);
    assert!(all.iter().all(|x| x.family == family("ij")));
    let b = enumerate_wt13(3, 9).unwrap();
    assert!(b.values().flatten().all(|x| x.family != family("ij")));
}

fn eval_matrix(m: &SparseMat<ParamPoly>, values: &[BigRational]) -> SparseMat<BigRational> {
    let mut out = SparseMat::new(m.rows(), m.cols());
    for (r, c, v) in m.entries() {
        let x = v.eval(values);
        if x != BigRational::from_integer(0.into()) {
            out.add_entry(r, c, x).unwrap();
        }
    }
    out
}

fn hconcat(a: &SparseMat<BigRational>, b: Option<&SparseMat<BigRational>>) -> SparseMat<BigRational> {
    let extra = b.map_or(0, |b| b.cols());
    let mut m = SparseMat::new(a.rows(), a.cols() + extra);
    for (r, c, v) in a.entries() {
        m.add_entry(r, c, v.clone()).unwrap();
    }
    if let Some(b) = b {
        for (r, c, v) in b.entries() {
            m.add_entry(r, a.cols() + c, v.clone()).unwrap();
        }
    }
    m
}

/// Plain cohomology at a rational parameter point, by exact elimination.
fn exact_cohomology(g: usize, n: usize, values: &[BigRational]) -> BTreeMap<i64, usize> {
    let table = DifferentialTable::new(g, n);
    let c = build_wt13(&table, g, &vec![1; n]).unwrap();
    let rel: BTreeMap<i64, SparseMat<BigRational>> = c
        .relations
        .iter()
        .map(|(&k, r)| (k, eval_matrix(r, values)))
        .collect();
    let rel_rank = |k: i64| rel.get(&k).map_or(0, rank_exact);
    let d_rank = |k: i64| {
        c.diffs.get(&k).map_or(0, |d| {
            rank_exact(&hconcat(&eval_matrix(d, values), rel.get(&(k + 1)))) - rel_rank(k + 1)
        })
    };
    c.bases
        .iter()
        .map(|(&k, b)| (k, b.len() - rel_rank(k) - d_rank(k) - d_rank(k - 1)))
        .filter(|&(_, d)| d > 0)
        .collect()
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[test]
fn exact_elimination_agrees_with_generic_ranks() {
    for (g, n, k, expected) in published() {
        let values: Vec<BigRational> = [7, -3, 11, 2, -5].iter().map(|&v| q(v)).collect();
        let dim: u128 = expected.iter().map(|(l, m)| *m as u128 * specht_dim(l)).sum();
        let want: BTreeMap<i64, usize> = [(k, dim as usize)].into_iter().collect();
        assert_eq!(exact_cohomology(g, n, &values), want, "({g}, {n})");
        assert_eq!(plain_cohomology13(g, n).unwrap(), want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cohomology_does_not_depend_on_the_constants(
        case in 0usize..9,
        vals in proptest::collection::vec(-40i64..40, 5),
    ) {
        let (g, n, _, _) = published()[case].clone();
        let values: Vec<BigRational> = vals.into_iter().map(q).collect();
        prop_assert_eq!(exact_cohomology(g, n, &values), plain_cohomology13(g, n).unwrap());
    }

    #[test]
    fn multiplicities_are_integral_and_sum_to_dimensions(case in 0usize..9, seed in any::<u64>()) {
        let (g, n, _, _) = published()[case].clone();
        let h = cohomology13_with(g, n, 5, seed).unwrap();
        let plain = plain_cohomology13(g, n).unwrap();
        for (k, d) in plain {
            prop_assert_eq!(h.dimension(k), d as u128);
        }
    }
}
