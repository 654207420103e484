//! Integer partitions, their enumeration and the standard numerical invariants
//! (hook lengths, centralizer orders, conjugation).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::SymError;

/// A partition of a nonnegative integer, stored as a weakly decreasing list of
/// positive parts.
///
/// The derived ordering is lexicographic on the part lists, so `(1,1,1) <
/// (2,1) < (3)`. Enumeration order (see [`enumerate_partitions`]) is the
/// reverse of this.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Builds a partition from parts given in any order; zero parts are dropped.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// Builds a partition from parts that must already be weakly decreasing and
    /// positive.
    pub fn from_sorted(parts: Vec<usize>) -> Result<Self, SymError> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(SymError::InvalidPartition(format!("{parts:?}")));
        }
        Ok(Partition(parts))
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        Partition::new(vec![n])
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition(vec![1; n])
    }

    /// The hook `(a, 1^b)`.
    pub fn hook(a: usize, b: usize) -> Self {
        let mut parts = vec![a];
        parts.extend(std::iter::repeat(1).take(b));
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.0
    }

    /// Sum of the parts.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiplicity of the part `i`.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.0.iter().filter(|&&p| p == i).count()
    }

    /// Conjugate partition (transpose of the Young diagram).
    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|c| self.0.iter().filter(|&&p| p >= c).count())
            .collect();
        Partition(parts)
    }

    /// Concatenation of the parts of two partitions (the index of a product of
    /// power sums).
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        parts.extend_from_slice(&self.0);
        parts.extend_from_slice(&other.0);
        Partition::new(parts)
    }

    /// Hook lengths of all cells, row by row.
    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size());
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = conj.0[j] - i - 1;
                out.push(arm + leg + 1);
            }
        }
        out
    }

    /// Order of the centralizer of a permutation with this cycle type:
    /// `z_mu = prod_i i^{m_i} m_i!`.
    pub fn z(&self) -> BigUint {
        let mut z = BigUint::one();
        let mut i = 0;
        while i < self.0.len() {
            let part = self.0[i];
            let mut m = 0usize;
            while i < self.0.len() && self.0[i] == part {
                m += 1;
                i += 1;
                z *= BigUint::from(part) * BigUint::from(m);
            }
        }
        z
    }

    /// Number of permutations of `S_n` with this cycle type, `n!/z_mu`.
    pub fn class_size(&self) -> BigUint {
        factorial(self.size()) / self.z()
    }

    /// Whether `self` dominates `other` (both partitions of the same size).
    pub fn dominates(&self, other: &Partition) -> bool {
        let mut a = 0usize;
        let mut b = 0usize;
        for i in 0..self.len().max(other.len()) {
            a += self.0.get(i).copied().unwrap_or(0);
            b += other.0.get(i).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Compact exponent notation as used for Specht modules, e.g. `21^12` for
    /// `(2,1,...,1)` or `1^4`.
    pub fn exponent_notation(&self) -> String {
        if self.is_empty() {
            return "()".to_string();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < self.0.len() {
            let part = self.0[i];
            let mut m = 0;
            while i < self.0.len() && self.0[i] == part {
                m += 1;
                i += 1;
            }
            out.push_str(&part.to_string());
            if m > 1 {
                out.push('^');
                out.push_str(&m.to_string());
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    /// Comma-separated parts, e.g. `2,1,1,1`; the empty partition prints as
    /// the empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = SymError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| SymError::Parse(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::from_sorted(parts)
    }
}

/// All partitions of `n` in reverse lexicographic order, starting at `(n)` and
/// ending at `(1^n)`.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, &mut current, &mut out);
    out
}

fn fill(rest: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    for p in (1..=rest.min(max)).rev() {
        current.push(p);
        fill(rest - p, p, current, out);
        current.pop();
    }
}

/// Dimension of the Specht module `V_lambda` by the hook-length formula.
pub fn specht_dim(lambda: &Partition) -> u128 {
    let hooks: BigUint = lambda
        .hook_lengths()
        .into_iter()
        .map(BigUint::from)
        .product();
    (factorial(lambda.size()) / hooks)
        .to_u128()
        .expect("Specht dimension exceeds u128")
}

pub(crate) fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}
