//! The weight-13 quotient complex computing the type (12,1) part of the
//! weight-13 compactly supported cohomology of moduli of marked curves, at
//! excess `3g + 2n - 25` at most 2.
//!
//! Generators are organized into families (see [`family`]); coefficients
//! that are only known up to an unspecified constant are parameters, and
//! ranks are generic ranks over several random primes.

pub mod colored;
pub mod differential;
pub mod family;

use std::collections::{BTreeMap, BTreeSet};

use exactla::LinAlgError;
use rayon::prelude::*;
use symkit::{enumerate_partitions, kostka, specht_dim, Partition};
use thiserror::Error;

pub use colored::{
    build_wt13, differential13, enumerate_colored, enumerate_wt13, RankReport, Wt13Complex,
    Wt13Generator, MAX_EXCESS,
};
pub use differential::{DifferentialTable, FamilyTerm, TermKind};
pub use family::{excess13, expected_degree, family_index, tripod_count, FamilySpec, Slots, FAMILIES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Wt13Error {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("unsupported scope: {0}")]
    Unsupported(String),
    #[error("multiplicity check failed: {0}")]
    Multiplicity(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// Default number of random parameter evaluations per rank.
pub const DEFAULT_TRIALS: usize = 5;

/// Default seed for parameter evaluations.
pub const DEFAULT_SEED: u64 = 0x13_2026;

/// Equivariant cohomology of the weight-13 complex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Wt13Cohomology {
    pub g: usize,
    pub n: usize,
    pub degrees: BTreeMap<i64, BTreeMap<Partition, usize>>,
    /// Parameter names of the differential.
    pub parameters: Vec<String>,
    pub trials: usize,
    /// Primes used by the generic ranks.
    pub primes: Vec<u64>,
}

impl Wt13Cohomology {
    /// `sum_lambda m_lambda dim V_lambda` in degree `k`.
    pub fn dimension(&self, k: i64) -> u128 {
        self.degrees.get(&k).map_or(0, |m| {
            m.iter().map(|(l, &c)| c as u128 * specht_dim(l)).sum()
        })
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Text like `19: V_{1^6} + 2 V_{2,1^4}`, one degree per line.
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

/// Solves `d_mu = sum_{lambda} K_{lambda mu} m_lambda`, visiting partitions
/// in decreasing lexicographic order.
fn back_substitute(
    values: &BTreeMap<Partition, BTreeMap<i64, i64>>,
) -> BTreeMap<Partition, BTreeMap<i64, i64>> {
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
    m
}

/// Plain cohomology dimensions at `(g, n)`.
pub fn plain_cohomology13(g: usize, n: usize) -> Result<BTreeMap<i64, usize>, Wt13Error> {
    let table = DifferentialTable::new(g, n);
    let c = build_wt13(&table, g, &vec![1; n])?;
    Ok(c.cohomology(&table.params, DEFAULT_TRIALS, DEFAULT_SEED)?.0)
}

/// Equivariant cohomology at `(g, n)` with `trials` parameter evaluations.
///
/// Each partition `mu` of `n` colors the markings; the cohomology of the
/// colored complex has dimension `sum_lambda K_{lambda mu} m_lambda`. The
/// isotypic dimensions are checked against the plain cohomology.
pub fn cohomology13_with(
    g: usize,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<Wt13Cohomology, Wt13Error> {
    let table = DifferentialTable::new(g, n);
    enumerate_colored(g, &vec![1; n])?;
    let parts = enumerate_partitions(n);
    let computed: Vec<(Partition, BTreeMap<i64, i64>, Vec<u64>)> = parts
        .par_iter()
        .map(|mu| {
            let c = build_wt13(&table, g, mu.parts())?;
            let (h, report) = c.cohomology(&table.params, trials, seed)?;
            let primes = report
                .ranks
                .iter()
                .flat_map(|r| r.trials.iter().map(|&(p, _)| p))
                .collect();
            Ok((
                mu.clone(),
                h.into_iter().map(|(k, d)| (k, d as i64)).collect(),
                primes,
            ))
        })
        .collect::<Result<_, Wt13Error>>()?;
    let mut primes: BTreeSet<u64> = BTreeSet::new();
    let mut dims = BTreeMap::new();
    for (mu, d, p) in computed {
        primes.extend(p);
        dims.insert(mu, d);
    }
    let m = back_substitute(&dims);
    let mut out = Wt13Cohomology {
        g,
        n,
        degrees: BTreeMap::new(),
        parameters: (0..table.params.len())
            .map(|i| table.params.name(i).to_string())
            .collect(),
        trials,
        primes: primes.into_iter().collect(),
    };
    for (lambda, row) in m {
        for (k, c) in row {
            if c < 0 {
                return Err(Wt13Error::Multiplicity(format!(
                    "negative multiplicity of {lambda} in degree {k}"
                )));
            }
            out.degrees.entry(k).or_default().insert(lambda.clone(), c as usize);
        }
    }
    let plain = &dims[&Partition::new(vec![1; n])];
    let degrees: BTreeSet<i64> = plain.keys().chain(out.degrees.keys()).copied().collect();
    for k in degrees {
        let expected = plain.get(&k).copied().unwrap_or(0) as u128;
        if out.dimension(k) != expected {
            return Err(Wt13Error::Multiplicity(format!(
                "degree {k}: isotypic dimensions sum to {}, plain cohomology has {expected}",
                out.dimension(k)
            )));
        }
    }
    Ok(out)
}

/// Equivariant cohomology with the default trial count and seed.
pub fn cohomology13(g: usize, n: usize) -> Result<Wt13Cohomology, Wt13Error> {
    cohomology13_with(g, n, DEFAULT_TRIALS, DEFAULT_SEED)
}
