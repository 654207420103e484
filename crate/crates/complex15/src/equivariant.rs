//! `S_n`-equivariant cohomology via Young-subgroup invariants.
//!
//! For a partition `mu` of `n`, coloring the markings by the blocks of `mu`
//! computes the coinvariants of the Young subgroup `S_mu`, whose dimension
//! is `sum_lambda K_{lambda mu} m_lambda`. Kostka matrices are unitriangular
//! in dominance order, so the multiplicities `m_lambda` follow by back
//! substitution. Chain-level multiplicities (from generator counts alone)
//! bound the support, and only partitions in that support need ranks.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use symkit::{enumerate_partitions, kostka, specht_dim, Partition, SchurExpansion};

use crate::complex::{build_colored, generator_bases, Family};
use crate::ComplexError;

/// Multiplicities of irreducible representations per degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EquivCohomology {
    pub n: usize,
    pub degrees: BTreeMap<i64, BTreeMap<Partition, usize>>,
}

impl EquivCohomology {
    /// `sum_lambda m_lambda dim V_lambda` in degree `k`.
    pub fn dimension(&self, k: i64) -> u128 {
        self.degrees.get(&k).map_or(0, |m| {
            m.iter()
                .map(|(l, &c)| c as u128 * specht_dim(l))
                .sum()
        })
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    /// `sum_k (-1)^k [H^k]` in the Schur basis.
    pub fn euler_characteristic(&self) -> SchurExpansion {
        let mut e = SchurExpansion::zero();
        for (&k, m) in &self.degrees {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            for (l, &c) in m {
                e.add_term(
                    l.clone(),
                    BigRational::from_integer(BigInt::from(sign * c as i64)),
                );
            }
        }
        e
    }

    /// Text like `17: V_{2,1^12}`, one degree per line.
    pub fn describe(&self) -> String {
        let mut out = String::new();
        for (k, m) in &self.degrees {
            let parts: Vec<String> = m
                .iter()
                .map(|(l, &c)| {
                    let name = format!("V_{{{}}}", l.exponent_notation());
                    if c == 1 {
                        name
                    } else {
                        format!("{c} {name}")
                    }
                })
                .collect();
            out.push_str(&format!("{k}: {}\n", parts.join(" + ")));
        }
        out
    }
}

/// Solves `d_mu = sum_{lambda >= mu} K_{lambda mu} m_lambda` for `m` on the
/// given set of partitions, processed in decreasing lexicographic order
/// (which refines dominance).
fn back_substitute(
    values: &BTreeMap<Partition, BTreeMap<i64, i64>>,
) -> Result<BTreeMap<Partition, BTreeMap<i64, i64>>, ComplexError> {
    let mut m: BTreeMap<Partition, BTreeMap<i64, i64>> = BTreeMap::new();
    for (mu, d) in values.iter().rev() {
        let mut row = d.clone();
        for (lambda, ml) in &m {
            if !lambda.dominates(mu) {
                continue;
            }
            let k = kostka(lambda, mu) as i64;
            for (&deg, &c) in ml {
                *row.entry(deg).or_default() -= k * c;
            }
        }
        row.retain(|_, c| *c != 0);
        m.insert(mu.clone(), row);
    }
    Ok(m)
}

fn colors_of(mu: &Partition) -> Vec<usize> {
    mu.parts().to_vec()
}

/// Chain-level multiplicities per degree, from generator counts only.
pub fn chain_multiplicities(
    family: Family,
    g: usize,
    n: usize,
    truncation: usize,
) -> Result<BTreeMap<Partition, BTreeMap<i64, i64>>, ComplexError> {
    let parts = enumerate_partitions(n);
    let counts: Vec<(Partition, BTreeMap<i64, i64>)> = parts
        .par_iter()
        .map(|mu| {
            let b = generator_bases(family, g, &colors_of(mu), truncation)?;
            Ok((
                mu.clone(),
                b.into_iter().map(|(k, v)| (k, v.len() as i64)).collect(),
            ))
        })
        .collect::<Result<_, ComplexError>>()?;
    let m = back_substitute(&counts.into_iter().collect())?;
    for (lambda, row) in &m {
        if row.values().any(|&c| c < 0) {
            return Err(ComplexError::Multiplicity(format!(
                "negative chain multiplicity for {lambda}"
            )));
        }
    }
    Ok(m.into_iter().filter(|(_, r)| !r.is_empty()).collect())
}

/// Equivariant cohomology of `family` at `(g, n)`. Also verifies that the
/// plain cohomology has dimension `sum m_lambda dim V_lambda` in every
/// degree.
pub fn equivariant_cohomology(
    family: Family,
    g: usize,
    n: usize,
    truncation: usize,
) -> Result<EquivCohomology, ComplexError> {
    let support: BTreeSet<Partition> = chain_multiplicities(family, g, n, truncation)?
        .into_keys()
        .collect();
    let mut wanted = support.clone();
    wanted.insert(Partition::new(vec![1; n]));
    let dims: Vec<(Partition, BTreeMap<i64, i64>)> = wanted
        .par_iter()
        .map(|mu| {
            let c = build_colored(family, g, &colors_of(mu), truncation)?;
            let h = c.cohomology()?;
            Ok((
                mu.clone(),
                h.into_iter().map(|(k, d)| (k, d as i64)).collect(),
            ))
        })
        .collect::<Result<_, ComplexError>>()?;
    let dims: BTreeMap<Partition, BTreeMap<i64, i64>> = dims.into_iter().collect();
    let restricted: BTreeMap<Partition, BTreeMap<i64, i64>> = dims
        .iter()
        .filter(|(mu, _)| support.contains(*mu))
        .map(|(mu, d)| (mu.clone(), d.clone()))
        .collect();
    let m = back_substitute(&restricted)?;
    let mut out = EquivCohomology {
        n,
        degrees: BTreeMap::new(),
    };
    for (lambda, row) in m {
        for (k, c) in row {
            if c < 0 {
                return Err(ComplexError::Multiplicity(format!(
                    "negative multiplicity of {lambda} in degree {k}"
                )));
            }
            out.degrees
                .entry(k)
                .or_default()
                .insert(lambda.clone(), c as usize);
        }
    }
    let plain = &dims[&Partition::new(vec![1; n])];
    let degrees: BTreeSet<i64> = plain.keys().chain(out.degrees.keys()).copied().collect();
    for k in degrees {
        let expected = plain.get(&k).copied().unwrap_or(0) as u128;
        if out.dimension(k) != expected {
            return Err(ComplexError::Multiplicity(format!(
                "degree {k}: isotypic dimensions sum to {}, plain cohomology has {expected}",
                out.dimension(k)
            )));
        }
    }
    Ok(out)
}
