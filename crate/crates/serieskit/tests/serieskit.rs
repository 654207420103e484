use exactla::{Field, FpA};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use serieskit::*;
use symkit::{Partition, SymFunc};

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn ctx(u_max: i64, w_max: usize, p_max: usize) -> SeriesContext {
    SeriesContext::new(SeriesCaps {
        u_max,
        w_max,
        p_max,
    })
}

fn part(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec())
}

/// Akiyama-Tanigawa algorithm; produces B_1 = +1/2.
fn bernoulli_oracle(n: usize) -> Q {
    let mut a: Vec<Q> = Vec::new();
    for m in 0..=n {
        a.push(q(1, m as i64 + 1));
        for j in (1..=m).rev() {
            a[j - 1] = (&a[j - 1] - &a[j]) * q(j as i64, 1);
        }
    }
    a[0].clone()
}

#[test]
fn bernoulli_examples() {
    assert_eq!(bernoulli(0), q(1, 1));
    assert_eq!(bernoulli(1), q(-1, 2));
    assert_eq!(bernoulli(2), q(1, 6));
    assert_eq!(bernoulli(3), q(0, 1));
    assert_eq!(bernoulli(12), q(-691, 2730));
    for r in 2..=30 {
        assert_eq!(bernoulli(r), bernoulli_oracle(r), "r = {r}");
    }
}

#[test]
fn bernoulli_recurrence() {
    let b = bernoulli_table(21);
    for m in 1..=20usize {
        let mut acc = q(0, 1);
        for (k, bk) in b.iter().enumerate().take(m + 1) {
            let c = num_integer::binomial(m as i64 + 1, k as i64);
            acc += bk * q(c, 1);
        }
        assert_eq!(acc, q(0, 1), "m = {m}");
    }
}

#[test]
fn moebius_examples_and_sum_identity() {
    assert_eq!(moebius(1), 1);
    assert_eq!(moebius(12), 0);
    assert_eq!(moebius(6), 1);
    assert_eq!(moebius(30), -1);
    assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    for n in 1..=300u64 {
        let s: i64 = divisors(n).into_iter().map(moebius).sum();
        assert_eq!(s, i64::from(n == 1), "n = {n}");
    }
}

#[test]
fn multiplication_examples() {
    let c = ctx(6, 14, 4);
    let u = TruncSeries::<Q>::u_power(&c, 1);
    assert_eq!(u.mul(&u).unwrap(), TruncSeries::u_power(&c, 2));
    let w7 = TruncSeries::<Q>::w_power(&c, 7);
    let w8 = TruncSeries::<Q>::w_power(&c, 8);
    assert!(w7.mul(&w8).unwrap().is_zero());
    let a = TruncSeries::<Q>::monomial(&c, -1, 0, &part(&[1]), q(1, 1));
    let b = TruncSeries::<Q>::monomial(&c, 2, 0, &part(&[2]), q(1, 1));
    let ab = a.mul(&b).unwrap();
    assert_eq!(ab, TruncSeries::monomial(&c, 1, 0, &part(&[2, 1]), q(1, 1)));
    assert_eq!(ab.dump(), "u^1 w^0 p_{2,1} : 1\n");
    let p3 = TruncSeries::<Q>::p(&c, 3);
    assert!(p3.mul(&TruncSeries::p(&c, 2)).unwrap().is_zero());
}

#[test]
fn cap_mismatch_is_an_error() {
    let a = TruncSeries::<Q>::one(&ctx(4, 14, 2));
    let b = TruncSeries::<Q>::one(&ctx(5, 14, 2));
    assert!(matches!(a.mul(&b), Err(SeriesError::CapMismatch { .. })));
}

#[test]
fn log_and_exp_examples() {
    let c = ctx(8, 14, 2);
    let one = TruncSeries::<Q>::one(&c);
    let u = TruncSeries::<Q>::u_power(&c, 1);
    let l = one.add(&u).unwrap().log().unwrap();
    for k in 1..=8 {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        assert_eq!(l.coeff(k, 0, &Partition::empty()), q(sign, k));
    }
    let f = one
        .add(&u)
        .unwrap()
        .add(&TruncSeries::u_power(&c, 2))
        .unwrap();
    assert_eq!(f.log().unwrap().exp().unwrap(), f);

    let w = TruncSeries::<Q>::w_power(&c, 1);
    let l = one.sub(&w).unwrap().log().unwrap();
    let mut expected = TruncSeries::zero(&c);
    for j in 1..=14 {
        let t = TruncSeries::monomial(&c, 0, j, &Partition::empty(), q(-1, j as i64));
        expected = expected.add(&t).unwrap();
    }
    assert_eq!(l, expected);

    assert!(matches!(
        u.log(),
        Err(SeriesError::NonUnit(_))
    ));
    assert!(matches!(one.exp(), Err(SeriesError::NotNilpotent)));
    let inv_u = TruncSeries::<Q>::u_power(&c, -1);
    assert!(matches!(
        one.add(&inv_u).unwrap().log(),
        Err(SeriesError::NegativeExponent)
    ));
}

#[test]
fn inverse_of_unit() {
    let c = ctx(10, 3, 3);
    let f = TruncSeries::<Q>::constant(&c, q(2, 1))
        .add(&TruncSeries::monomial(&c, 1, 1, &part(&[1]), q(-3, 1)))
        .unwrap()
        .add(&TruncSeries::u_power(&c, 2))
        .unwrap();
    let g = f.inverse().unwrap();
    assert_eq!(f.mul(&g).unwrap(), TruncSeries::one(&c));
}

#[test]
fn truncate_t_examples() {
    let c = ctx(4, 14, 2);
    let s = TruncSeries::<Q>::monomial(&c, 1, 3, &Partition::empty(), q(1, 1));
    assert_eq!(s.truncate_t(), TruncSeries::u_power(&c, 1));
    let s = TruncSeries::<Q>::one(&c)
        .add(&TruncSeries::w_power(&c, 1))
        .unwrap()
        .add(&TruncSeries::w_power(&c, 14))
        .unwrap();
    assert_eq!(s.truncate_t(), TruncSeries::constant(&c, q(3, 1)));
    let mut s = TruncSeries::<Q>::zero(&c);
    for j in 0..=14 {
        s = s
            .add(&TruncSeries::monomial(&c, 0, j, &part(&[1]), q(1, 1)))
            .unwrap();
    }
    assert_eq!(
        s.truncate_t(),
        TruncSeries::monomial(&c, 0, 0, &part(&[1]), q(15, 1))
    );
}

#[test]
fn shift_and_symfunc_round_trip() {
    let c = ctx(5, 2, 3);
    let f = SymFunc::p(1).mul(&SymFunc::p(2));
    let s = TruncSeries::<Q>::from_symfunc(&c, 2, 1, &f).unwrap();
    assert_eq!(s.symfunc_at(2, 1, Clone::clone), f);
    assert_eq!(s.shift_u(3).symfunc_at(5, 1, Clone::clone), f);
    assert!(s.shift_u(4).is_zero());
    assert_eq!(s.shift_u(-4).valuation(), Some(-2));
}

fn series_strategy(u_max: i64, w_max: usize, p_max: usize) -> impl Strategy<Value = Vec<(i64, usize, usize, i64)>> {
    let nb = PartitionBasis::new(p_max).len();
    prop::collection::vec((0..=u_max, 0..=w_max, 0..nb, -4i64..=4), 0..12)
}

fn build<C: Field>(c: &SeriesContext, terms: &[(i64, usize, usize, i64)]) -> TruncSeries<C> {
    let mut s = TruncSeries::zero(c);
    for &(u, w, i, v) in terms {
        let mu = c.basis().partition(i).clone();
        s = s.add(&TruncSeries::monomial(c, u, w, &mu, C::from_i64(v))).unwrap();
    }
    s
}

fn to_fp(s: &TruncSeries<Q>) -> TruncSeries<FpA> {
    s.map_field(|x| FpA::from_rational(x).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn mul_commutative_associative(
        a in series_strategy(4, 3, 3),
        b in series_strategy(4, 3, 3),
        c3 in series_strategy(4, 3, 3),
    ) {
        let c = ctx(5, 3, 3);
        let (a, b, c3) = (build::<Q>(&c, &a), build::<Q>(&c, &b), build::<Q>(&c, &c3));
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(
            a.mul(&b).unwrap().mul(&c3).unwrap(),
            a.mul(&b.mul(&c3).unwrap()).unwrap()
        );
    }

    #[test]
    fn exp_log_inverse_on_units(a in series_strategy(4, 3, 3)) {
        let c = ctx(4, 3, 3);
        let g = build::<Q>(&c, &a);
        let g = g.sub(&TruncSeries::constant(&c, g.coeff(0, 0, &Partition::empty()))).unwrap();
        let f = TruncSeries::one(&c).add(&g).unwrap();
        prop_assert_eq!(f.log().unwrap().exp().unwrap(), f.clone());
        prop_assert_eq!(g.exp().unwrap().log().unwrap(), g);
    }

    #[test]
    fn exp_and_log_match_naive_power_series(a in series_strategy(4, 3, 3)) {
        let c = ctx(4, 3, 3);
        let g = build::<Q>(&c, &a);
        let g = g.sub(&TruncSeries::constant(&c, g.coeff(0, 0, &Partition::empty()))).unwrap();
        let mut exp = TruncSeries::one(&c);
        let mut log = TruncSeries::zero(&c);
        let mut power = TruncSeries::one(&c);
        let mut fact = q(1, 1);
        for k in 1..=12i64 {
            power = power.mul(&g).unwrap();
            fact *= q(k, 1);
            exp = exp.add(&power.scale(&(q(1, 1) / &fact))).unwrap();
            let sign = if k % 2 == 1 { 1 } else { -1 };
            log = log.add(&power.scale(&q(sign, k))).unwrap();
        }
        prop_assert!(power.mul(&g).unwrap().is_zero());
        prop_assert_eq!(g.exp().unwrap(), exp);
        prop_assert_eq!(TruncSeries::one(&c).add(&g).unwrap().log().unwrap(), log);
    }

    #[test]
    fn early_truncation_matches_late(
        a in series_strategy(4, 6, 3),
        b in series_strategy(4, 6, 3),
    ) {
        // Products computed with a large w-cap and truncated afterwards agree
        // with products truncated at every step.
        let big = ctx(6, 12, 4);
        let small = ctx(6, 5, 4);
        let (ab, bb) = (build::<Q>(&big, &a), build::<Q>(&big, &b));
        let late = ab.mul(&bb).unwrap().mul(&ab).unwrap().restrict(&small).unwrap();
        let (as_, bs) = (ab.restrict(&small).unwrap(), bb.restrict(&small).unwrap());
        let early = as_.mul(&bs).unwrap().mul(&as_).unwrap();
        prop_assert_eq!(late.truncate_t(), early.truncate_t());
        prop_assert_eq!(late, early);
    }

    #[test]
    fn prime_field_reduction_is_a_homomorphism(
        a in series_strategy(4, 3, 3),
        b in series_strategy(4, 3, 3),
    ) {
        let c = ctx(5, 3, 3);
        let (a, b) = (build::<Q>(&c, &a), build::<Q>(&c, &b));
        prop_assert_eq!(to_fp(&a.mul(&b).unwrap()), to_fp(&a).mul(&to_fp(&b)).unwrap());
        let f = TruncSeries::one(&c).add(&b.shift_u(1)).unwrap();
        prop_assert_eq!(to_fp(&f.log().unwrap()), to_fp(&f).log().unwrap());
    }
}
