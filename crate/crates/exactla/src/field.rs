//! Coefficient fields: the rationals and prime fields of 62-bit characteristic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Word-sized primes just below `2^62`, in decreasing order.
pub const PRIMES_62: [u64; 8] = [
    4611686018427387847,
    4611686018427387817,
    4611686018427387787,
    4611686018427387761,
    4611686018427387751,
    4611686018427387737,
    4611686018427387733,
    4611686018427387709,
];

/// Minimal field interface shared by exact rationals and prime fields.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_i64(n: i64) -> Self;
    /// Image of a rational number; `None` if its denominator is not invertible.
    fn from_rational(q: &BigRational) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_rational(q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }
}

/// Multiplication modulo `p` for `p < 2^63`.
#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse modulo a prime `p`; `None` for zero.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    (a % p != 0).then(|| pow_mod(a, p - 2, p))
}

/// Residue of a signed integer.
pub fn reduce_i64(n: i64, p: u64) -> u64 {
    let r = (n as i128).rem_euclid(p as i128);
    r as u64
}

/// Residue of a big integer.
pub fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = n.mod_floor(&m);
    r.to_u64().expect("residue fits")
}

/// Residue of a rational; `None` when the denominator vanishes mod `p`.
pub fn reduce_rational(q: &BigRational, p: u64) -> Option<u64> {
    let num = reduce_bigint(q.numer(), p);
    let den = reduce_bigint(q.denom(), p);
    inv_mod(den, p).map(|d| mul_mod(num, d, p))
}

/// Symmetric lift of a residue to `(-p/2, p/2]`.
pub fn lift_symmetric(a: u64, p: u64) -> i128 {
    if a > p / 2 {
        a as i128 - p as i128
    } else {
        a as i128
    }
}

/// Element of the prime field `F_P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(pub u64);

impl<const P: u64> Fp<P> {
    pub const MODULUS: u64 = P;

    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// Symmetric integer lift.
    pub fn lift(self) -> i128 {
        lift_symmetric(self.0, P)
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.lift())
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.lift())
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        Fp(add_mod(self.0, other.0, P))
    }
    fn sub(&self, other: &Self) -> Self {
        Fp(sub_mod(self.0, other.0, P))
    }
    fn mul(&self, other: &Self) -> Self {
        Fp(mul_mod(self.0, other.0, P))
    }
    fn neg(&self) -> Self {
        Fp(sub_mod(0, self.0, P))
    }
    fn inv(&self) -> Option<Self> {
        inv_mod(self.0, P).map(Fp)
    }
    fn from_i64(n: i64) -> Self {
        Fp(reduce_i64(n, P))
    }
    fn from_rational(q: &BigRational) -> Option<Self> {
        reduce_rational(q, P).map(Fp)
    }
}

/// The prime field modulo the first 62-bit prime.
pub type FpA = Fp<4611686018427387847>;
/// The prime field modulo the second 62-bit prime.
pub type FpB = Fp<4611686018427387817>;
