//! Symmetric functions with rational coefficients in the power-sum basis, and
//! conversion to and from the Schur basis.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{character_value, enumerate_partitions, Partition, SymError};

/// A finite rational combination of power-sum monomials `p_mu`.
///
/// Terms of different degrees may coexist; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymFunc {
    terms: BTreeMap<Partition, BigRational>,
}

impl SymFunc {
    pub fn zero() -> Self {
        SymFunc::default()
    }

    pub fn one() -> Self {
        SymFunc::monomial(Partition::empty(), BigRational::one())
    }

    /// `c * p_mu`.
    pub fn monomial(mu: Partition, c: BigRational) -> Self {
        let mut f = SymFunc::zero();
        f.add_term(mu, c);
        f
    }

    /// The single power sum `p_d`.
    pub fn p(d: usize) -> Self {
        SymFunc::monomial(Partition::row(d), BigRational::one())
    }

    /// A rational constant.
    pub fn constant(c: BigRational) -> Self {
        SymFunc::monomial(Partition::empty(), c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c * p_mu` in place.
    pub fn add_term(&mut self, mu: Partition, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mu).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// Coefficient of `p_mu`.
    pub fn coeff(&self, mu: &Partition) -> BigRational {
        self.terms.get(mu).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigRational)> {
        self.terms.iter()
    }

    /// The common degree of all terms, or `None` for mixed degrees. The zero
    /// function reports `Some(0)`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(Partition::size);
        match degrees.next() {
            None => Some(0),
            Some(d) => degrees.all(|e| e == d).then_some(d),
        }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &BigRational) -> SymFunc {
        if c.is_zero() {
            return SymFunc::zero();
        }
        SymFunc {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Keeps only the terms of degree at most `max_degree`.
    pub fn truncate(&self, max_degree: usize) -> SymFunc {
        SymFunc {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.size() <= max_degree)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Product in the ring of symmetric functions: `p_mu * p_nu = p_{mu u nu}`.
    pub fn mul(&self, other: &SymFunc) -> SymFunc {
        let mut out = SymFunc::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.union(b), ca * cb);
            }
        }
        out
    }

    /// Schur expansion of a homogeneous function: the coefficient of `s_lambda`
    /// is `sum_mu c_mu chi^lambda(mu)`.
    pub fn to_schur(&self) -> Result<SchurExpansion, SymError> {
        let n = self.homogeneous_degree().ok_or(SymError::NotHomogeneous)?;
        let mut out = SchurExpansion::default();
        if self.is_zero() {
            return Ok(out);
        }
        for lambda in enumerate_partitions(n) {
            let mut c = BigRational::zero();
            for (mu, cmu) in &self.terms {
                let chi = character_value(&lambda, mu)?;
                c += cmu * BigRational::from_integer(BigInt::from(chi));
            }
            out.add_term(lambda, c);
        }
        Ok(out)
    }
}

/// Power-sum expansion of the Schur function `s_lambda`:
/// `s_lambda = sum_mu chi^lambda(mu) p_mu / z_mu`.
pub fn schur_to_powersum(lambda: &Partition) -> SymFunc {
    let mut f = SymFunc::zero();
    for mu in enumerate_partitions(lambda.size()) {
        let chi = character_value(lambda, &mu).expect("sizes agree");
        let z = BigInt::from(mu.z());
        f.add_term(mu, BigRational::new(BigInt::from(chi), z));
    }
    f
}

impl Add for &SymFunc {
    type Output = SymFunc;
    fn add(self, rhs: &SymFunc) -> SymFunc {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }
}

impl Sub for &SymFunc {
    type Output = SymFunc;
    fn sub(self, rhs: &SymFunc) -> SymFunc {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), -v.clone());
        }
        out
    }
}

impl Neg for &SymFunc {
    type Output = SymFunc;
    fn neg(self) -> SymFunc {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &SymFunc {
    type Output = SymFunc;
    fn mul(self, rhs: &SymFunc) -> SymFunc {
        SymFunc::mul(self, rhs)
    }
}

impl fmt::Display for SymFunc {
    /// Power-sum form such as `1/2 p_{2} - 1/2 p_{1,1}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, self.terms.iter().rev(), "p")
    }
}

/// A rational combination of Schur functions `s_lambda`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SchurExpansion {
    terms: BTreeMap<Partition, BigRational>,
}

impl SchurExpansion {
    pub fn zero() -> Self {
        SchurExpansion::default()
    }

    pub fn add_term(&mut self, lambda: Partition, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(lambda).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// Adds an integer multiple of `s_lambda`.
    pub fn add_int(&mut self, lambda: Partition, c: i64) {
        self.add_term(lambda, BigRational::from_integer(BigInt::from(c)));
    }

    pub fn coeff(&self, lambda: &Partition) -> BigRational {
        self.terms
            .get(lambda)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Integer coefficients, failing on any non-integral one.
    pub fn integer_terms(&self) -> Option<BTreeMap<Partition, i64>> {
        self.terms
            .iter()
            .map(|(k, v)| {
                if !v.is_integer() {
                    return None;
                }
                let n: i64 = v.to_integer().try_into().ok()?;
                Some((k.clone(), n))
            })
            .collect()
    }

    /// Inverse conversion to the power-sum basis.
    pub fn to_powersum(&self) -> SymFunc {
        let mut f = SymFunc::zero();
        for (lambda, c) in &self.terms {
            f = &f + &schur_to_powersum(lambda).scale(c);
        }
        f
    }

    /// Sum of `c_lambda * dim V_lambda`: the dimension of the virtual
    /// representation.
    pub fn dimension(&self) -> BigRational {
        self.terms
            .iter()
            .map(|(l, c)| c * BigRational::from_integer(BigInt::from(crate::specht_dim(l))))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// Parses the printed form, e.g. `-4s_{2,1} - 2s_{3}`, `s_{}` or `0`.
    pub fn parse(text: &str) -> Result<Self, SymError> {
        let err = || SymError::Parse(text.to_string());
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut out = SchurExpansion::default();
        if compact == "0" || compact.is_empty() {
            return Ok(out);
        }
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, after) = match rest.as_bytes()[0] {
                b'-' => (-1i64, &rest[1..]),
                b'+' => (1, &rest[1..]),
                _ => (1, rest),
            };
            let s_pos = after.find("s_{").ok_or_else(err)?;
            let coeff: BigRational = if s_pos == 0 {
                BigRational::one()
            } else {
                parse_rational(&after[..s_pos]).ok_or_else(err)?
            };
            let close = after[s_pos..].find('}').ok_or_else(err)? + s_pos;
            let lambda: Partition = after[s_pos + 3..close].parse()?;
            out.add_term(lambda, coeff * BigRational::from_integer(BigInt::from(sign)));
            rest = &after[close + 1..];
        }
        Ok(out)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((a, b)) => Some(BigRational::new(a.parse().ok()?, b.parse().ok()?)),
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl fmt::Display for SchurExpansion {
    /// Terms in lexicographically increasing order of partitions, e.g.
    /// `-4s_{2,1} - 2s_{3}`; zero prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, self.terms.iter(), "s")
    }
}

fn write_combination<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a Partition, &'a BigRational)>,
    symbol: &str,
) -> fmt::Result {
    let mut first = true;
    for (lambda, c) in terms {
        let negative = c.is_negative();
        let magnitude = c.abs();
        if first {
            if negative {
                write!(f, "-")?;
            }
        } else if negative {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        if !magnitude.is_one() {
            if magnitude.is_integer() {
                write!(f, "{}", magnitude.numer())?;
            } else {
                write!(f, "{}/{}", magnitude.numer(), magnitude.denom())?;
            }
        }
        write!(f, "{symbol}_{{{lambda}}}")?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}
