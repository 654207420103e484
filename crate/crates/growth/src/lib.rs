//! Dimension counts for graded symmetric powers of weight-zero cohomology,
//! the lower bound they give for the `S_16` part of the compactly supported
//! cohomology of `M_g`, and the set of degrees `2g + k` with exponential
//! growth.

use std::collections::{BTreeMap, BTreeSet};

/// Where a base dimension comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    /// Recomputed from the commutative graph complex.
    Computed,
    /// Taken as given; beyond what is recomputed here.
    Trusted,
}

/// Dimensions of `W_0 H_c^k(M_h)`, keyed by `(h, k)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedDims {
    entries: BTreeMap<(usize, usize), (u64, Provenance)>,
}

impl GradedDims {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets the dimension at `(h, k)`; zero removes the entry.
    pub fn set(&mut self, h: usize, k: usize, dim: u64, provenance: Provenance) {
        if dim == 0 {
            self.entries.remove(&(h, k));
        } else {
            self.entries.insert((h, k), (dim, provenance));
        }
    }

    pub fn get(&self, h: usize, k: usize) -> u64 {
        self.entries.get(&(h, k)).map_or(0, |e| e.0)
    }

    pub fn provenance(&self, h: usize, k: usize) -> Option<Provenance> {
        self.entries.get(&(h, k)).map(|e| e.1)
    }

    /// `(h, k, dim)` in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.entries.iter().map(|(&(h, k), &(d, _))| (h, k, d))
    }

    /// The weight-zero classes used for the growth statements: the
    /// one-dimensional groups at loop orders 3, 5 and 6 (recomputed) and
    /// `H^27` at loop order 10 (trusted).
    pub fn reference() -> Self {
        let mut b = GradedDims::new();
        b.set(3, 6, 1, Provenance::Computed);
        b.set(5, 10, 1, Provenance::Computed);
        b.set(6, 15, 1, Provenance::Computed);
        b.set(10, 27, 1, Provenance::Trusted);
        b
    }
}

/// Dimension of the genus-`g`, degree-`k` part of `Sym^r` of the base, with
/// Koszul signs: even-degree classes are polynomial, odd-degree classes
/// exterior.
pub fn sym_power_dim(base: &GradedDims, r: usize, g: usize, k: usize) -> u128 {
    // table[(s, h, d)] = dimension of Sym^s in genus h, degree d, for the
    // classes processed so far.
    let mut table: BTreeMap<(usize, usize, usize), u128> = BTreeMap::new();
    table.insert((0, 0, 0), 1);
    for (h0, k0, dim) in base.iter() {
        for _ in 0..dim {
            let odd = k0 % 2 == 1;
            let mut next = table.clone();
            for (&(s, h, d), &c) in &table {
                let max_copies = if odd { 1 } else { r };
                for m in 1..=max_copies {
                    let key = (s + m, h + m * h0, d + m * k0);
                    if key.0 > r || key.1 > g || key.2 > k {
                        break;
                    }
                    *next.entry(key).or_default() += c;
                }
            }
            table = next;
        }
    }
    table.get(&(r, g, k)).copied().unwrap_or(0)
}

/// A summand `Sym^p` shifted by degree `delta` and genus `delta_prime`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Summand {
    pub p: usize,
    pub delta: usize,
    pub delta_prime: usize,
}

/// The seven summands of the injection into the `S_16` part.
pub const SUMMANDS: [Summand; 7] = [
    Summand { p: 14, delta: 29, delta_prime: 1 },
    Summand { p: 14, delta: 30, delta_prime: 2 },
    Summand { p: 13, delta: 30, delta_prime: 3 },
    Summand { p: 10, delta: 30, delta_prime: 5 },
    Summand { p: 7, delta: 30, delta_prime: 7 },
    Summand { p: 4, delta: 30, delta_prime: 9 },
    Summand { p: 1, delta: 30, delta_prime: 11 },
];

/// Sum over the seven summands of `dim V^{p, k - delta}_{g - delta'}`.
pub fn lower_bound_u(g: usize, k: usize, base: &GradedDims) -> u128 {
    SUMMANDS
        .iter()
        .filter(|s| g >= s.delta_prime && k >= s.delta)
        .map(|s| sym_power_dim(base, s.p, g - s.delta_prime, k - s.delta))
        .sum()
}

/// Largest `k` in the growth statement.
pub const MAX_K: usize = 73;

/// Degrees `k` of `H^{2g+k}` already known to grow exponentially, from
/// weights 0, 2 and 11.
pub const KNOWN: &[usize] = &[
    0, 2, 3, 5, 6, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 21, 22, 23, 24, 25, 26, 27, 28,
    29, 30, 31, 32, 33, 34, 35, 36, 37, 38, 39, 40, 41, 42, 43, 44, 45, 46, 47, 48, 49, 50, 52,
    53,
];

/// Offsets `κ` with `dim H^{2h+κ}(GC_0)^{(h)}` growing exponentially in `h`
/// (0 and 3), and the offset of the single odd class at loop order 10.
pub const GROWING_OFFSETS: [usize; 2] = [0, 3];
pub const ODD_OFFSET: usize = 7;

/// Degrees `delta - 2 delta' + κ_1 + ... + κ_p` with every `κ_i` in
/// `{0, 3, 7}`, at least one in `{0, 3}` and at most one equal to 7. A
/// product of growing classes grows, and the odd class squares to zero.
pub fn summand_degrees(s: &Summand) -> BTreeSet<usize> {
    let base = s.delta - 2 * s.delta_prime;
    let mut out = BTreeSet::new();
    for sevens in 0..=1usize.min(s.p) {
        let growing = s.p - sevens;
        if growing == 0 {
            continue;
        }
        // `threes` of the growing factors have κ = 3, the rest κ = 0.
        for threes in 0..=growing {
            out.insert(base + GROWING_OFFSETS[1] * threes + ODD_OFFSET * sevens);
        }
    }
    out
}

/// Result of the degree-set computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthDegrees {
    /// Per summand, the degrees it covers.
    pub per_summand: Vec<(Summand, BTreeSet<usize>)>,
    /// Union over the summands, cut at `MAX_K`.
    pub from_u: BTreeSet<usize>,
    pub known: BTreeSet<usize>,
    /// `from_u` minus `known`.
    pub new: BTreeSet<usize>,
    /// `known` union `new`.
    pub full: BTreeSet<usize>,
}

pub fn exp_growth_degrees() -> GrowthDegrees {
    let per_summand: Vec<(Summand, BTreeSet<usize>)> =
        SUMMANDS.iter().map(|s| (*s, summand_degrees(s))).collect();
    let from_u: BTreeSet<usize> = per_summand
        .iter()
        .flat_map(|(_, d)| d.iter().copied())
        .filter(|&k| k <= MAX_K)
        .collect();
    let known: BTreeSet<usize> = KNOWN.iter().copied().collect();
    let new: BTreeSet<usize> = from_u.difference(&known).copied().collect();
    let full: BTreeSet<usize> = known.union(&new).copied().collect();
    GrowthDegrees {
        per_summand,
        from_u,
        known,
        new,
        full,
    }
}

/// Width of the chart: degrees `0..=80`.
pub const CHART_COLUMNS: usize = 81;

/// One row with `#` for known, `+` for new and `.` for open degrees, and
/// a ruler marking every tenth column.
pub fn ascii_chart() -> String {
    let d = exp_growth_degrees();
    let row: String = (0..CHART_COLUMNS)
        .map(|k| {
            if d.known.contains(&k) {
                '#'
            } else if d.new.contains(&k) {
                '+'
            } else {
                '.'
            }
        })
        .collect();
    let ticks: String = (0..CHART_COLUMNS)
        .map(|k| if k % 10 == 0 { '|' } else { ' ' })
        .collect();
    let mut labels = String::new();
    for k in (0..CHART_COLUMNS).step_by(10) {
        while labels.len() < k {
            labels.push(' ');
        }
        labels.push_str(&k.to_string());
    }
    format!("{row}\n{ticks}\n{labels}\n")
}
