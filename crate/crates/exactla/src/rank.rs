//! Ranks of sparse matrices: exact fraction-free elimination over the
//! integers, elimination over prime fields, multimodular agreement checks and
//! generic ranks of parametric matrices.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{inv_mod, mul_mod, reduce_rational, sub_mod, PRIMES_62};
use crate::poly::{ParamPoly, ParamSet};
use crate::sparse::SparseMat;
use crate::LinAlgError;

/// Matrices with at most this many nonzeros are ranked exactly over the
/// integers by [`rank_auto`]; larger ones go through [`rank_multimodular`].
pub const EXACT_NNZ_LIMIT: usize = 4000;

/// Pivot selection state shared by the elimination routines: a lazy min-heap
/// of rows keyed by their length and, per column, the rows that may touch it.
struct PivotQueue {
    heap: BinaryHeap<Reverse<(usize, usize)>>,
    col_rows: Vec<Vec<usize>>,
}

impl PivotQueue {
    fn new<T>(rows: &[Vec<(usize, T)>], ncols: usize) -> Self {
        let mut col_rows = vec![Vec::new(); ncols];
        let mut heap = BinaryHeap::new();
        for (i, r) in rows.iter().enumerate() {
            for (c, _) in r {
                col_rows[*c].push(i);
            }
            if !r.is_empty() {
                heap.push(Reverse((r.len(), i)));
            }
        }
        PivotQueue { heap, col_rows }
    }

    /// Next pivot row: the shortest live row.
    fn pop<T>(&mut self, rows: &[Vec<(usize, T)>], alive: &[bool]) -> Option<usize> {
        while let Some(Reverse((len, r))) = self.heap.pop() {
            if alive[r] && rows[r].len() == len && len > 0 {
                return Some(r);
            }
        }
        None
    }

    /// Markowitz-style column choice within the pivot row: the column touched
    /// by the fewest rows.
    fn pivot_col<T>(&self, row: &[(usize, T)]) -> usize {
        row.iter()
            .enumerate()
            .min_by_key(|(_, (c, _))| self.col_rows[*c].len())
            .map(|(k, _)| k)
            .expect("nonempty pivot row")
    }
}

/// Rank over `F_p` of a matrix given as sorted row lists of residues.
pub fn rank_mod_p_rows(mut rows: Vec<Vec<(usize, u64)>>, ncols: usize, p: u64) -> usize {
    for r in rows.iter_mut() {
        r.retain(|(_, v)| *v != 0);
    }
    let mut queue = PivotQueue::new(&rows, ncols);
    let mut alive = vec![true; rows.len()];
    let mut rank = 0;
    while let Some(r) = queue.pop(&rows, &alive) {
        alive[r] = false;
        rank += 1;
        let pivot_row = std::mem::take(&mut rows[r]);
        let k = queue.pivot_col(&pivot_row);
        let (c, pv) = pivot_row[k];
        let pinv = inv_mod(pv, p).expect("nonzero pivot");
        let touching = std::mem::take(&mut queue.col_rows[c]);
        for s in touching {
            if !alive[s] {
                continue;
            }
            let Ok(pos) = rows[s].binary_search_by_key(&c, |&(cc, _)| cc) else {
                continue;
            };
            let factor = mul_mod(rows[s][pos].1, pinv, p);
            let old = std::mem::take(&mut rows[s]);
            let mut merged = Vec::with_capacity(old.len() + pivot_row.len());
            let (mut i, mut j) = (0, 0);
            while i < old.len() || j < pivot_row.len() {
                let take_old = j >= pivot_row.len() || (i < old.len() && old[i].0 < pivot_row[j].0);
                let take_piv = i >= old.len() || (j < pivot_row.len() && pivot_row[j].0 < old[i].0);
                if take_old {
                    merged.push(old[i]);
                    i += 1;
                } else if take_piv {
                    let (cc, v) = pivot_row[j];
                    let nv = sub_mod(0, mul_mod(factor, v, p), p);
                    if nv != 0 {
                        merged.push((cc, nv));
                        queue.col_rows[cc].push(s);
                    }
                    j += 1;
                } else {
                    let (cc, a) = old[i];
                    let nv = sub_mod(a, mul_mod(factor, pivot_row[j].1, p), p);
                    if nv != 0 {
                        merged.push((cc, nv));
                    }
                    i += 1;
                    j += 1;
                }
            }
            if !merged.is_empty() {
                queue.heap.push(Reverse((merged.len(), s)));
            }
            rows[s] = merged;
        }
    }
    rank
}

/// Rank over `F_p` of a rational matrix.
pub fn rank_mod_p(m: &SparseMat<BigRational>, p: u64) -> Result<usize, LinAlgError> {
    let mut rows = Vec::with_capacity(m.rows());
    for row in m.row_lists() {
        let mut out = Vec::with_capacity(row.len());
        for (c, v) in row {
            let r = reduce_rational(&v, p).ok_or(LinAlgError::BadPrime(p))?;
            out.push((c, r));
        }
        rows.push(out);
    }
    Ok(rank_mod_p_rows(rows, m.cols(), p))
}

/// Exact rank over the rationals by fraction-free elimination: rows are
/// cleared of denominators, eliminated by integer cross-multiplication and kept
/// primitive by dividing out their content.
pub fn rank_exact(m: &SparseMat<BigRational>) -> usize {
    let mut rows: Vec<Vec<(usize, BigInt)>> = m
        .row_lists()
        .into_iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
            let ints: Vec<(usize, BigInt)> = row
                .into_iter()
                .map(|(c, v)| (c, (v * BigRational::from_integer(l.clone())).to_integer()))
                .collect();
            make_primitive(ints)
        })
        .collect();
    let mut queue = PivotQueue::new(&rows, m.cols());
    let mut alive = vec![true; rows.len()];
    let mut rank = 0;
    while let Some(r) = queue.pop(&rows, &alive) {
        alive[r] = false;
        rank += 1;
        let pivot_row = std::mem::take(&mut rows[r]);
        let k = queue.pivot_col(&pivot_row);
        let (c, pv) = pivot_row[k].clone();
        let touching = std::mem::take(&mut queue.col_rows[c]);
        for s in touching {
            if !alive[s] {
                continue;
            }
            let Ok(pos) = rows[s].binary_search_by_key(&c, |(cc, _)| *cc) else {
                continue;
            };
            let sv = rows[s][pos].1.clone();
            let g = sv.gcd(&pv);
            let a = &pv / &g;
            let b = &sv / &g;
            let old = std::mem::take(&mut rows[s]);
            let mut merged = Vec::with_capacity(old.len() + pivot_row.len());
            let (mut i, mut j) = (0, 0);
            while i < old.len() || j < pivot_row.len() {
                let take_old = j >= pivot_row.len() || (i < old.len() && old[i].0 < pivot_row[j].0);
                let take_piv = i >= old.len() || (j < pivot_row.len() && pivot_row[j].0 < old[i].0);
                if take_old {
                    merged.push((old[i].0, &a * &old[i].1));
                    i += 1;
                } else if take_piv {
                    let nv = -(&b * &pivot_row[j].1);
                    merged.push((pivot_row[j].0, nv));
                    queue.col_rows[pivot_row[j].0].push(s);
                    j += 1;
                } else {
                    let nv = &a * &old[i].1 - &b * &pivot_row[j].1;
                    if !nv.is_zero() {
                        merged.push((old[i].0, nv));
                    }
                    i += 1;
                    j += 1;
                }
            }
            let merged = make_primitive(merged);
            if !merged.is_empty() {
                queue.heap.push(Reverse((merged.len(), s)));
            }
            rows[s] = merged;
        }
    }
    rank
}

fn make_primitive(row: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if g.is_zero() || g.is_one() {
        return row;
    }
    row.into_iter().map(|(c, v)| (c, v / &g)).collect()
}

/// Ranks of one matrix modulo several primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultimodularRank {
    /// The accepted rank over the rationals.
    pub rank: usize,
    /// `(prime, rank mod prime)` for every prime tried.
    pub per_prime: Vec<(u64, usize)>,
    /// Whether an exact rational elimination was run to settle a disagreement.
    pub verified_exactly: bool,
}

/// Rank over the rationals via reductions modulo the given primes. A modular
/// rank never exceeds the rational one, so agreement of all primes is accepted
/// and any disagreement falls back to exact elimination.
pub fn rank_multimodular(
    m: &SparseMat<BigRational>,
    primes: &[u64],
) -> Result<MultimodularRank, LinAlgError> {
    let mut per_prime = Vec::with_capacity(primes.len());
    for &p in primes {
        match rank_mod_p(m, p) {
            Ok(r) => per_prime.push((p, r)),
            Err(LinAlgError::BadPrime(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    let agree = !per_prime.is_empty() && per_prime.iter().all(|&(_, r)| r == per_prime[0].1);
    if agree {
        Ok(MultimodularRank {
            rank: per_prime[0].1,
            per_prime,
            verified_exactly: false,
        })
    } else {
        Ok(MultimodularRank {
            rank: rank_exact(m),
            per_prime,
            verified_exactly: true,
        })
    }
}

/// Exact rank for small matrices, multimodular rank with exact fallback for
/// large ones.
pub fn rank_auto(m: &SparseMat<BigRational>) -> Result<usize, LinAlgError> {
    if m.nnz() <= EXACT_NNZ_LIMIT {
        Ok(rank_exact(m))
    } else {
        Ok(rank_multimodular(m, &PRIMES_62[..3])?.rank)
    }
}

/// Outcome of a generic-rank computation.
#[derive(Clone, Debug, PartialEq)]
pub struct GenericRank {
    pub rank: usize,
    /// `(prime, rank at the random point)` for every trial.
    pub trials: Vec<(u64, usize)>,
    /// Schwartz-Zippel bound on the probability that a single trial
    /// underestimates the generic rank.
    pub single_trial_error_bound: f64,
}

/// Rank of a parametric matrix at a generic parameter point.
///
/// Each trial evaluates every parameter at an independent uniform residue
/// modulo a distinct 62-bit prime (never zero for parameters flagged
/// nonzero) and computes the rank there. All trials must agree; otherwise the
/// observed ranks are reported as an instability.
pub fn rank_generic(
    m: &SparseMat<ParamPoly>,
    params: &ParamSet,
    trials: usize,
    seed: u64,
) -> Result<GenericRank, LinAlgError> {
    if trials == 0 || trials > PRIMES_62.len() {
        return Err(LinAlgError::TrialCount(trials));
    }
    let rows = m.row_lists();
    let mut results = Vec::with_capacity(trials);
    let mut max_degree = 0;
    for row in &rows {
        for (_, v) in row {
            max_degree = max_degree.max(v.degree());
        }
    }
    for (t, &p) in PRIMES_62.iter().take(trials).enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t as u64));
        let values: Vec<u64> = (0..params.len())
            .map(|i| {
                let lo = u64::from(params.is_nonzero(i));
                rng.gen_range(lo..p)
            })
            .collect();
        let mut eval_rows = Vec::with_capacity(rows.len());
        for row in &rows {
            let mut out = Vec::with_capacity(row.len());
            for (c, v) in row {
                let x = v.eval_mod(&values, p).ok_or(LinAlgError::BadPrime(p))?;
                out.push((*c, x));
            }
            eval_rows.push(out);
        }
        results.push((p, rank_mod_p_rows(eval_rows, m.cols(), p)));
    }
    let rank = results.iter().map(|&(_, r)| r).max().unwrap_or(0);
    if results.iter().any(|&(_, r)| r != rank) {
        return Err(LinAlgError::GenericRankUnstable(
            results.iter().map(|&(_, r)| r).collect(),
        ));
    }
    let bound = (rank as f64) * f64::from(max_degree.max(1)) / (PRIMES_62[trials - 1] as f64);
    Ok(GenericRank {
        rank,
        trials: results,
        single_trial_error_bound: if max_degree == 0 { 0.0 } else { bound },
    })
}

/// Integer matrix rank helper for tests and small dense inputs.
pub fn rank_of_dense(rows: &[Vec<i64>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m = SparseMat::new(rows.len(), ncols);
    for (r, row) in rows.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            m.add_entry(r, c, BigRational::from_integer(BigInt::from(v)))
                .expect("in range");
        }
    }
    rank_exact(&m)
}
