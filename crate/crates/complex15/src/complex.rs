//! Chain complexes with canonical graph bases.

use std::collections::{BTreeMap, HashMap};

use exactla::{cohomology_dims, CochainDims, SparseMat};
use graphcore::{
    canonicalize, enumerate_x, gc0_generators, generator_excess, Canonical, GraphKey,
    MAX_CATALOG_EXCESS,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::differential::{internal_splits, raw_differential};
use crate::ComplexError;

/// Which complex to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// The quotient `X / X^{<=r}`, shifted by `2r + 2`.
    B15,
    /// The subcomplex `X^{<=r}` of graphs with at most `r` marked
    /// half-edges, shifted by `2r + 1`.
    C15,
    /// The full auxiliary complex, graded by `#edges - #ω`.
    X,
    /// The commutative graph complex, graded by edge count.
    Gc0,
}

/// Default number of marked half-edges kept by the truncation.
pub const DEFAULT_TRUNCATION: usize = 14;

/// Largest excess `3g + 2n - 2r - 5` accepted for the quotient complex.
pub const MAX_B_EXCESS: i64 = 3;

/// Identification of a built complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexMeta {
    pub family: Family,
    pub g: usize,
    /// Marking color multiplicities; all ones for the plain complex.
    pub colors: Vec<usize>,
    pub truncation: usize,
    /// Loop order, for the commutative graph complex.
    pub loop_order: usize,
}

/// Bases per degree and differentials `d_k : C^k -> C^{k+1}`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub meta: ComplexMeta,
    pub bases: BTreeMap<i64, Vec<GraphKey>>,
    pub diffs: BTreeMap<i64, SparseMat<BigRational>>,
}

impl ChainComplex {
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.bases.iter().map(|(&k, b)| (k, b.len())).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.bases.values().map(Vec::len).sum()
    }

    pub fn cochains(&self) -> CochainDims<BigRational> {
        CochainDims {
            dims: self.dims(),
            diffs: self.diffs.clone(),
        }
    }

    /// Cohomology dimensions after checking `d^2 = 0`; degrees with zero
    /// cohomology are omitted.
    pub fn cohomology(&self) -> Result<BTreeMap<i64, usize>, ComplexError> {
        let dims = cohomology_dims(&self.cochains())?;
        Ok(dims.into_iter().filter(|&(_, d)| d > 0).collect())
    }

    /// Checks `d_{k+1} d_k = 0` for every degree.
    pub fn check_square_zero(&self) -> Result<(), ComplexError> {
        Ok(self.cochains().check_square_zero()?)
    }
}

/// `3g + 2n - 2r - 5`, the largest generator excess in the quotient.
pub fn quotient_excess(g: usize, n: usize, truncation: usize) -> i64 {
    generator_excess(g, n, truncation + 1)
}

fn degree_shift(family: Family, truncation: usize) -> i64 {
    match family {
        Family::B15 => 2 * truncation as i64 + 2,
        Family::C15 => 2 * truncation as i64 + 1,
        Family::X | Family::Gc0 => 0,
    }
}

/// Canonical generators per degree, without differentials.
pub fn generator_bases(
    family: Family,
    g: usize,
    colors: &[usize],
    truncation: usize,
) -> Result<BTreeMap<i64, Vec<GraphKey>>, ComplexError> {
    let n: usize = colors.iter().sum();
    let (lo, hi) = omega_range(family, g, n, truncation)?;
    let shift = degree_shift(family, truncation);
    let gens: Vec<Vec<graphcore::Generator>> = (lo..=hi)
        .into_par_iter()
        .map(|w| enumerate_x(g, colors, w))
        .collect::<Result<_, _>>()?;
    let mut bases: BTreeMap<i64, Vec<GraphKey>> = BTreeMap::new();
    for gen in gens.into_iter().flatten() {
        let k = gen.edges as i64 - gen.omega as i64 + shift;
        bases.entry(k).or_default().push(gen.key);
    }
    Ok(bases)
}

/// The complex of `family` at genus `g` with markings colored by `colors`
/// (`colors[c]` markings of color `c`), truncation `r`.
pub fn build_colored(
    family: Family,
    g: usize,
    colors: &[usize],
    truncation: usize,
) -> Result<ChainComplex, ComplexError> {
    let bases = generator_bases(family, g, colors, truncation)?;
    let meta = ComplexMeta {
        family,
        g,
        colors: colors.to_vec(),
        truncation,
        loop_order: 0,
    };
    let dropped = |key: &GraphKey| -> bool {
        family == Family::B15 && key_omega(key) <= truncation
    };
    assemble(meta, bases, &dropped, false)
}

fn omega_range(
    family: Family,
    g: usize,
    n: usize,
    truncation: usize,
) -> Result<(usize, usize), ComplexError> {
    let full = generator_excess(g, n, 0);
    let top = if full < 0 { 0 } else { (full / 2) as usize };
    match family {
        Family::B15 => {
            let e = quotient_excess(g, n, truncation);
            if e > MAX_B_EXCESS {
                return Err(ComplexError::Unsupported(format!(
                    "excess {e} of ({g}, {n}) exceeds the supported bound {MAX_B_EXCESS}"
                )));
            }
            Ok((truncation + 1, top.max(truncation)))
        }
        Family::C15 | Family::X => {
            if full > MAX_CATALOG_EXCESS as i64 {
                return Err(ComplexError::Unsupported(format!(
                    "generators of ({g}, {n}) with few marked half-edges have excess {full}, \
                     beyond the supported bound {MAX_CATALOG_EXCESS}"
                )));
            }
            let hi = if family == Family::C15 { top.min(truncation) } else { top };
            Ok((0, hi))
        }
        Family::Gc0 => unreachable!("handled separately"),
    }
}

fn key_omega(key: &GraphKey) -> usize {
    key.0
        .iter()
        .map(|c| c.kinds().filter(|&k| k == graphcore::NodeKind::Omega).count())
        .sum()
}

/// Builds differential matrices. Terms whose canonical form is not in the
/// basis are errors unless `dropped` says they lie in the truncated part.
fn assemble(
    meta: ComplexMeta,
    mut bases: BTreeMap<i64, Vec<GraphKey>>,
    dropped: &(dyn Fn(&GraphKey) -> bool + Sync),
    splits_only: bool,
) -> Result<ChainComplex, ComplexError> {
    for b in bases.values_mut() {
        b.sort();
    }
    let mut index: HashMap<&GraphKey, (i64, usize)> = HashMap::new();
    for (&k, b) in &bases {
        for (i, key) in b.iter().enumerate() {
            index.insert(key, (k, i));
        }
    }
    let mut diffs = BTreeMap::new();
    for (&k, basis) in &bases {
        let target_dim = bases.get(&(k + 1)).map_or(0, Vec::len);
        let columns: Vec<Vec<(usize, i64)>> = basis
            .par_iter()
            .map(|key| -> Result<Vec<(usize, i64)>, ComplexError> {
                let graph = key.to_graph();
                let terms = if splits_only {
                    internal_splits(&graph)
                } else {
                    raw_differential(&graph)
                };
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for (h, c) in terms {
                    let Canonical::Form { key: hk, sign } = canonicalize(&h)? else {
                        continue;
                    };
                    match index.get(&hk) {
                        Some(&(hk_deg, row)) if hk_deg == k + 1 => {
                            *acc.entry(row).or_default() += c * i64::from(sign);
                        }
                        Some(&(hk_deg, _)) => {
                            return Err(ComplexError::Internal(format!(
                                "term {hk} of {key} sits in degree {hk_deg}, expected {}",
                                k + 1
                            )))
                        }
                        None if dropped(&hk) => {}
                        None => {
                            return Err(ComplexError::Internal(format!(
                                "term {hk} of {key} is not a basis element"
                            )))
                        }
                    }
                }
                Ok(acc.into_iter().filter(|&(_, c)| c != 0).collect())
            })
            .collect::<Result<_, _>>()?;
        if target_dim == 0 {
            continue;
        }
        let mut m = SparseMat::new(target_dim, basis.len());
        for (col, entries) in columns.into_iter().enumerate() {
            for (row, c) in entries {
                m.add_entry(row, col, BigRational::from_integer(BigInt::from(c)))?;
            }
        }
        diffs.insert(k, m);
    }
    Ok(ChainComplex { meta, bases, diffs })
}

/// The plain complex (all markings distinct).
pub fn build_complex(
    family: Family,
    g: usize,
    n: usize,
    truncation: usize,
) -> Result<ChainComplex, ComplexError> {
    if family == Family::Gc0 {
        return build_gc0(g);
    }
    build_colored(family, g, &vec![1; n], truncation)
}

/// The commutative graph complex in the given loop order.
pub fn build_gc0(loop_order: usize) -> Result<ChainComplex, ComplexError> {
    let gens = gc0_generators(loop_order)?;
    let bases = gens
        .into_iter()
        .map(|(k, keys)| (k as i64, keys))
        .collect();
    let meta = ComplexMeta {
        family: Family::Gc0,
        g: loop_order,
        colors: Vec::new(),
        truncation: 0,
        loop_order,
    };
    assemble(meta, bases, &|_| false, true)
}
