//! Multivariate polynomials over the rationals in named parameters, used for
//! matrix entries that are only known up to undetermined constants.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::{add_mod, mul_mod, pow_mod, reduce_rational};

/// A registry of parameters with a flag recording whether each one is known to
/// be nonzero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamSet {
    names: Vec<String>,
    nonzero: Vec<bool>,
}

impl ParamSet {
    pub fn new() -> Self {
        ParamSet::default()
    }

    /// Registers a parameter and returns its index.
    pub fn add(&mut self, name: impl Into<String>, nonzero: bool) -> usize {
        self.names.push(name.into());
        self.nonzero.push(nonzero);
        self.names.len() - 1
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn is_nonzero(&self, i: usize) -> bool {
        self.nonzero[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A monomial: sorted list of `(parameter index, exponent)` pairs.
pub type Monomial = Vec<(usize, u32)>;

/// A polynomial with rational coefficients in parameters from a [`ParamSet`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = ParamPoly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn int(n: i64) -> Self {
        ParamPoly::constant(BigRational::from_integer(BigInt::from(n)))
    }

    /// The polynomial consisting of the single parameter `i`.
    pub fn param(i: usize) -> Self {
        let mut p = ParamPoly::zero();
        p.add_term(vec![(i, 1)], BigRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// The constant value if the polynomial has no parameter dependence.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &ParamPoly) -> ParamPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(mul_monomials(ma, mb), ca * cb);
            }
        }
        out
    }

    /// Total degree (0 for constants and for zero).
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&(_, e)| e).sum())
            .max()
            .unwrap_or(0)
    }

    /// Exact value at the point `values` (indexed by parameter).
    pub fn eval(&self, values: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(i, e) in m {
                for _ in 0..e {
                    t *= &values[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Value modulo `p` at the point `values` (indexed by parameter); `None` if
    /// some coefficient denominator vanishes mod `p`.
    pub fn eval_mod(&self, values: &[u64], p: u64) -> Option<u64> {
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut t = reduce_rational(c, p)?;
            for &(i, e) in m {
                t = mul_mod(t, pow_mod(values[i], e as u64, p), p);
            }
            acc = add_mod(acc, t, p);
        }
        Some(acc)
    }

    /// Renders with parameter names from `params`.
    pub fn display<'a>(&'a self, params: &'a ParamSet) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, params }
    }
}

fn mul_monomials(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out: BTreeMap<usize, u32> = BTreeMap::new();
    for &(i, e) in a.iter().chain(b.iter()) {
        *out.entry(i).or_insert(0) += e;
    }
    out.into_iter().collect()
}

struct PolyDisplay<'a> {
    poly: &'a ParamPoly,
    params: &'a ParamSet,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k > 0 {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            let show_coeff = !a.is_one() || m.is_empty();
            if show_coeff {
                write!(f, "{a}")?;
            }
            for (j, &(i, e)) in m.iter().enumerate() {
                if show_coeff || j > 0 {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.params.name(i))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}
