//! Complexes with colored markings.
//!
//! Markings `0..n` are split into consecutive color blocks. The symmetric
//! group acts on a labeled generator by relabeling, times the sign of the
//! induced bijection between the free markings, each listed in increasing
//! order (every free marking carries one odd `ω` leg). The coinvariants of the
//! Young subgroup of a coloring therefore have one basis element per
//! family and choice of slot colors, provided no color is left on two free
//! markings; two free markings of equal color are swapped by an odd
//! symmetry. Since colors increase with labels, a labeled generator maps
//! to its colored class with sign `+1`.
//!
//! The pair family satisfies the relations of the standard representation
//! twisted by the sign: `Γ_ij` behaves like `(-1)^{i+j}(e_i - e_j)`. In genus
//! one these relations are imposed; from genus three on the pair family
//! lies in the span of the one-slot family `Γ_i` and is left out.

use std::collections::{BTreeMap, HashMap};

use exactla::{rank_generic, CochainDims, GenericRank, ParamPoly, ParamSet, SparseMat};

use crate::differential::{DifferentialTable, TermKind};
use crate::family::{excess13, tripod_count, Slots, FAMILIES};
use crate::Wt13Error;

/// Largest supported excess `3g + 2n - 25`.
pub const MAX_EXCESS: i64 = 2;

/// A colored generator: a family, the colors of its slot markings
/// (nondecreasing), and the number of tripods.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Wt13Generator {
    pub family: usize,
    pub slot_colors: Vec<usize>,
    pub tripods: usize,
}

impl Wt13Generator {
    /// `Γ_name` with slot colors, e.g. `Γ_jb̄[3]`.
    pub fn label(&self) -> String {
        let name = FAMILIES[self.family].name;
        if self.slot_colors.is_empty() {
            format!("Γ_{name}")
        } else {
            let s: Vec<String> = self.slot_colors.iter().map(|c| c.to_string()).collect();
            format!("Γ_{name}[{}]", s.join(","))
        }
    }
}

/// The weight-13 complex at genus `g` with marking colors of the given
/// multiplicities, plus relation vectors to quotient by.
#[derive(Clone, Debug)]
pub struct Wt13Complex {
    pub g: usize,
    pub colors: Vec<usize>,
    pub bases: BTreeMap<i64, Vec<Wt13Generator>>,
    /// `d_k : C^k -> C^{k+1}`.
    pub diffs: BTreeMap<i64, SparseMat<ParamPoly>>,
    /// Relation vectors in `C^k`, as columns.
    pub relations: BTreeMap<i64, SparseMat<ParamPoly>>,
}

fn color_of_label(colors: &[usize]) -> Vec<usize> {
    colors
        .iter()
        .enumerate()
        .flat_map(|(c, &m)| std::iter::repeat(c).take(m))
        .collect()
}

/// Colored class of a labeled generator, or `None` if it vanishes in the
/// coinvariants.
fn colored_class(
    family: usize,
    slot_labels: &[usize],
    label_color: &[usize],
    colors: &[usize],
    tripods: usize,
) -> Option<Wt13Generator> {
    let mut slot_colors: Vec<usize> = slot_labels.iter().map(|&l| label_color[l]).collect();
    slot_colors.sort_unstable();
    let mut free = colors.to_vec();
    for &c in &slot_colors {
        free[c] -= 1;
    }
    free.iter().all(|&m| m <= 1).then_some(Wt13Generator {
        family,
        slot_colors,
        tripods,
    })
}

/// Colored generators of one family.
fn family_generators(family: usize, colors: &[usize], tripods: usize) -> Vec<Wt13Generator> {
    let k = colors.len();
    let mut choices: Vec<Vec<usize>> = Vec::new();
    match FAMILIES[family].slots {
        Slots::None => choices.push(Vec::new()),
        Slots::One => choices.extend((0..k).map(|c| vec![c])),
        Slots::Pair => {
            for a in 0..k {
                for b in a..k {
                    choices.push(vec![a, b]);
                }
            }
        }
    }
    choices
        .into_iter()
        .filter_map(|slot_colors| {
            let mut free = colors.to_vec();
            for &c in &slot_colors {
                if free[c] == 0 {
                    return None;
                }
                free[c] -= 1;
            }
            free.iter().all(|&m| m <= 1).then_some(Wt13Generator {
                family,
                slot_colors,
                tripods,
            })
        })
        .collect()
}

/// Labels of a representative: each slot takes the first unused label of
/// its color block.
fn representative_labels(gen: &Wt13Generator, colors: &[usize]) -> Vec<usize> {
    let mut next: Vec<usize> = colors
        .iter()
        .scan(0, |acc, &m| {
            let start = *acc;
            *acc += m;
            Some(start)
        })
        .collect();
    gen.slot_colors
        .iter()
        .map(|&c| {
            let l = next[c];
            next[c] += 1;
            l
        })
        .collect()
}

fn sign(p: usize) -> i64 {
    if p % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Whether the family is part of the complex at genus `g`.
fn family_included(family: usize, g: usize) -> bool {
    FAMILIES[family].slots != Slots::Pair || g == 1
}

/// Generators per degree, with degree `offset - n`.
pub fn enumerate_colored(
    g: usize,
    colors: &[usize],
) -> Result<BTreeMap<i64, Vec<Wt13Generator>>, Wt13Error> {
    let n: usize = colors.iter().sum();
    let e = excess13(g, n);
    if e > MAX_EXCESS {
        return Err(Wt13Error::Unsupported(format!(
            "({g}, {n}) has excess {e}; only excess at most {MAX_EXCESS} is modeled"
        )));
    }
    let mut bases: BTreeMap<i64, Vec<Wt13Generator>> = BTreeMap::new();
    if g == 0 || e <= 0 {
        return Ok(bases);
    }
    for (i, f) in FAMILIES.iter().enumerate() {
        if i64::from(f.excess) != e || !family_included(i, g) {
            continue;
        }
        let Some(t) = tripod_count(f, g, n) else {
            continue;
        };
        let gens = family_generators(i, colors, t);
        if !gens.is_empty() {
            bases
                .entry(f.degree_offset - n as i64)
                .or_default()
                .extend(gens);
        }
    }
    for b in bases.values_mut() {
        b.sort();
    }
    Ok(bases)
}

/// Plain generators (all markings distinct).
pub fn enumerate_wt13(g: usize, n: usize) -> Result<BTreeMap<i64, Vec<Wt13Generator>>, Wt13Error> {
    enumerate_colored(g, &vec![1; n])
}

/// Image of a colored generator as colored generators with coefficients.
pub fn differential13(
    table: &DifferentialTable,
    g: usize,
    colors: &[usize],
    gen: &Wt13Generator,
) -> Result<Vec<(Wt13Generator, ParamPoly)>, Wt13Error> {
    let n: usize = colors.iter().sum();
    let label_color = color_of_label(colors);
    let labels = representative_labels(gen, colors);
    let mut acc: BTreeMap<Wt13Generator, ParamPoly> = BTreeMap::new();
    for term in &table.images[gen.family] {
        let target = &FAMILIES[term.target];
        // Families without generators at (g, n) drop out of the image.
        let Some(t) = tripod_count(target, g, n) else {
            continue;
        };
        let mut add = |slots: &[usize], c: ParamPoly| {
            if let Some(h) = colored_class(term.target, slots, &label_color, colors, t) {
                let e = acc.entry(h).or_insert_with(ParamPoly::zero);
                *e = e.add(&c);
            }
        };
        match term.kind {
            TermKind::Same => add(&labels, term.coeff.clone()),
            TermKind::SumOverMarkings => {
                for j in 0..n {
                    add(&[j], term.coeff.mul(&ParamPoly::int(sign(j))));
                }
            }
        }
    }
    Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

/// Relations `(-1)^{i+j} Γ_ij - (-1)^{i+k} Γ_ik + (-1)^{j+k} Γ_jk` for
/// `i < j < k`, reduced to colored classes.
fn pair_relations(
    family: usize,
    colors: &[usize],
    tripods: usize,
) -> Vec<BTreeMap<Wt13Generator, i64>> {
    let n: usize = colors.iter().sum();
    let label_color = color_of_label(colors);
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut v: BTreeMap<Wt13Generator, i64> = BTreeMap::new();
                for (a, b, s) in [(i, j, 1), (i, k, -1), (j, k, 1)] {
                    if let Some(h) = colored_class(family, &[a, b], &label_color, colors, tripods) {
                        *v.entry(h).or_default() += s * sign(a + b);
                    }
                }
                v.retain(|_, c| *c != 0);
                if !v.is_empty() {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Builds the colored complex with its differentials and relations.
pub fn build_wt13(
    table: &DifferentialTable,
    g: usize,
    colors: &[usize],
) -> Result<Wt13Complex, Wt13Error> {
    let bases = enumerate_colored(g, colors)?;
    let mut index: HashMap<&Wt13Generator, (i64, usize)> = HashMap::new();
    for (&k, b) in &bases {
        for (i, gen) in b.iter().enumerate() {
            index.insert(gen, (k, i));
        }
    }
    let mut diffs = BTreeMap::new();
    let mut relations = BTreeMap::new();
    for (&k, basis) in &bases {
        let target_dim = bases.get(&(k + 1)).map_or(0, Vec::len);
        let mut m = SparseMat::new(target_dim, basis.len());
        for (col, gen) in basis.iter().enumerate() {
            for (h, c) in differential13(table, g, colors, gen)? {
                match index.get(&h) {
                    Some(&(hk, row)) if hk == k + 1 => m.add_entry(row, col, c)?,
                    _ => {
                        return Err(Wt13Error::Internal(format!(
                            "term {} of {} is not a generator in degree {}",
                            h.label(),
                            gen.label(),
                            k + 1
                        )))
                    }
                }
            }
        }
        if target_dim > 0 {
            diffs.insert(k, m);
        }
        let mut rel_cols: Vec<BTreeMap<Wt13Generator, i64>> = Vec::new();
        let mut seen_pair = None;
        for gen in basis {
            if FAMILIES[gen.family].slots == Slots::Pair && seen_pair != Some(gen.family) {
                seen_pair = Some(gen.family);
                rel_cols.extend(pair_relations(gen.family, colors, gen.tripods));
            }
        }
        if !rel_cols.is_empty() {
            let mut r = SparseMat::new(basis.len(), rel_cols.len());
            for (col, v) in rel_cols.iter().enumerate() {
                for (h, &c) in v {
                    let (_, row) = index[h];
                    r.add_entry(row, col, ParamPoly::int(c))?;
                }
            }
            relations.insert(k, r);
        }
    }
    Ok(Wt13Complex {
        g,
        colors: colors.to_vec(),
        bases,
        diffs,
        relations,
    })
}

fn hconcat(a: &SparseMat<ParamPoly>, b: Option<&SparseMat<ParamPoly>>) -> Result<SparseMat<ParamPoly>, Wt13Error> {
    let extra = b.map_or(0, SparseMat::cols);
    let mut m = SparseMat::new(a.rows(), a.cols() + extra);
    for (r, c, v) in a.entries() {
        m.add_entry(r, c, v.clone())?;
    }
    if let Some(b) = b {
        for (r, c, v) in b.entries() {
            m.add_entry(r, a.cols() + c, v.clone())?;
        }
    }
    Ok(m)
}

/// Generic ranks that entered a cohomology computation.
#[derive(Clone, Debug, Default)]
pub struct RankReport {
    pub ranks: Vec<GenericRank>,
}

impl Wt13Complex {
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.bases.iter().map(|(&k, b)| (k, b.len())).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.bases.values().map(Vec::len).sum()
    }

    /// Checks `d² = 0` as a polynomial identity and that `d` kills the
    /// relations.
    pub fn check_square_zero(&self) -> Result<(), Wt13Error> {
        let cochains = CochainDims {
            dims: self.dims(),
            diffs: self.diffs.clone(),
        };
        cochains.check_square_zero()?;
        for (k, r) in &self.relations {
            if let Some(d) = self.diffs.get(k) {
                if !d.mul(r)?.is_zero() {
                    return Err(Wt13Error::Internal(format!(
                        "the differential does not preserve the relations in degree {k}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Cohomology of the quotient by the relations at a generic parameter
    /// point; zero degrees are omitted.
    pub fn cohomology(
        &self,
        params: &ParamSet,
        trials: usize,
        seed: u64,
    ) -> Result<(BTreeMap<i64, usize>, RankReport), Wt13Error> {
        self.check_square_zero()?;
        let mut report = RankReport::default();
        let mut rank = |m: &SparseMat<ParamPoly>, salt: u64| -> Result<usize, Wt13Error> {
            if m.nnz() == 0 {
                return Ok(0);
            }
            let r = rank_generic(m, params, trials, seed ^ salt)?;
            let out = r.rank;
            report.ranks.push(r);
            Ok(out)
        };
        let mut rel_rank = BTreeMap::new();
        for (&k, r) in &self.relations {
            rel_rank.insert(k, rank(r, 0x5eed ^ k as u64)?);
        }
        let mut d_rank = BTreeMap::new();
        for (&k, d) in &self.diffs {
            let m = hconcat(d, self.relations.get(&(k + 1)))?;
            let r = rank(&m, (k as u64).wrapping_mul(0x9e37_79b9))?;
            d_rank.insert(k, r - rel_rank.get(&(k + 1)).copied().unwrap_or(0));
        }
        let mut out = BTreeMap::new();
        for (&k, b) in &self.bases {
            let dim = b.len() as i64
                - rel_rank.get(&k).copied().unwrap_or(0) as i64
                - d_rank.get(&k).copied().unwrap_or(0) as i64
                - d_rank.get(&(k - 1)).copied().unwrap_or(0) as i64;
            if dim < 0 {
                return Err(Wt13Error::Internal(format!("negative cohomology in degree {k}")));
            }
            if dim > 0 {
                out.insert(k, dim as usize);
            }
        }
        Ok((out, report))
    }
}
