//! Bernoulli numbers and elementary arithmetic functions.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::Zero;

/// `B_0, ..., B_n` from `sum_{k=0}^{m} binom(m+1, k) B_k = 0`, so `B_1 = -1/2`.
pub fn bernoulli_table(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::from_integer(BigInt::from(1)));
    for m in 1..=n {
        let mut acc = BigRational::zero();
        for (k, bk) in b.iter().enumerate() {
            let c = binomial(BigInt::from(m + 1), BigInt::from(k));
            acc += bk * BigRational::from_integer(c);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// The `r`-th Bernoulli number.
pub fn bernoulli(r: usize) -> BigRational {
    if r >= 3 && r % 2 == 1 {
        return BigRational::zero();
    }
    bernoulli_table(r).pop().expect("table is nonempty")
}

/// The Moebius function by trial division.
pub fn moebius(n: u64) -> i64 {
    assert!(n >= 1, "moebius is defined for positive integers");
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}
