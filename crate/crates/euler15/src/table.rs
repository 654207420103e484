//! Assembly of the full generating function and the table of Schur expansions.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use exactla::{Field, FpA, FpB};
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serieskit::{SeriesCaps, SeriesContext, TruncSeries};
use symkit::{character_value, enumerate_partitions, Partition, SchurExpansion};

use crate::generating::log_ratio;
use crate::EulerError;

/// Knobs for [`chi_table_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChiOptions {
    /// Largest index `l` in the product. `None` means the sufficient bound
    /// `2 (g_max + n_max - 1)`; smaller values are rejected.
    pub ell_bound: Option<u64>,
    /// Truncation constant of `T_{<= k}`.
    pub truncation: usize,
    /// Evaluate over the rationals instead of two word-sized prime fields.
    pub exact: bool,
}

impl Default for ChiOptions {
    fn default() -> Self {
        ChiOptions {
            ell_bound: None,
            truncation: 14,
            exact: false,
        }
    }
}

/// Equivariant Euler characteristics indexed by `(g, n)`, each an integral
/// combination of Schur functions `s_lambda` with `|lambda| = n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiTable {
    pub g_max: usize,
    pub n_max: usize,
    pub cells: BTreeMap<(usize, usize), SchurExpansion>,
}

impl ChiTable {
    pub fn cell(&self, g: usize, n: usize) -> Option<&SchurExpansion> {
        self.cells.get(&(g, n))
    }

    /// The cell as text, `0` for absent or vanishing cells.
    pub fn cell_text(&self, g: usize, n: usize) -> String {
        self.cell(g, n)
            .map(|e| e.to_string())
            .unwrap_or_else(|| "0".to_string())
    }

    /// One LaTeX tabular row per genus in `g_lo..=g_max`, cells written
    /// as `$ -4s_{2,1} - 2s_{3} $`.
    pub fn latex_rows(&self, g_lo: usize) -> String {
        let mut out = String::new();
        for g in g_lo..=self.g_max {
            let _ = write!(out, " {g}");
            for n in 0..=self.n_max {
                let _ = write!(out, " & $ {} $", self.cell_text(g, n));
            }
            out.push_str(" \\\\  \n");
        }
        out
    }

    /// `g,n,expansion` lines with a header.
    pub fn csv(&self) -> String {
        let mut out = String::from("g,n,chi\n");
        for (&(g, n), e) in &self.cells {
            let _ = writeln!(out, "{g},{n},\"{e}\"");
        }
        out
    }
}

fn internal_caps(g_max: usize, n_max: usize, truncation: usize) -> SeriesCaps {
    SeriesCaps {
        u_max: (g_max + n_max) as i64 - 1,
        w_max: truncation,
        p_max: n_max,
    }
}

/// `T(prod_l U_l(num)/U_l(den) - 1)` under caps chosen so that every cell
/// `(g, n)` with `g <= g_max`, `n <= n_max` is determined. The table entry of
/// `(g, n)` is minus the coefficient of `u^{g+n-1}` in degree `n`.
pub fn chi_series<C: Field>(
    g_max: usize,
    n_max: usize,
    opts: &ChiOptions,
) -> Result<TruncSeries<C>, EulerError> {
    let caps = internal_caps(g_max, n_max, opts.truncation);
    let ctx = SeriesContext::new(caps);
    if caps.u_max < 0 {
        return Ok(TruncSeries::zero(&ctx));
    }
    // The log-ratio for index l has u-valuation at least l/2: its leading
    // part is (X_num - X_den) log(lambda_l E_l), and lambda_l E_l - 1 has
    // valuation l - d for the largest proper divisor d of l.
    let needed = 2 * caps.u_max as u64;
    let bound = opts.ell_bound.unwrap_or(needed);
    if bound < needed {
        return Err(EulerError::InsufficientEllBound { given: bound, needed });
    }
    let parts: Vec<TruncSeries<C>> = (1..=bound)
        .into_par_iter()
        .map(|ell| log_ratio::<C>(&ctx, ell))
        .collect::<Result<_, _>>()?;
    let mut sum = TruncSeries::zero(&ctx);
    for p in &parts {
        sum = sum.add(p)?;
    }
    let product = sum.exp()?;
    Ok(product.sub(&TruncSeries::one(&ctx))?.truncate_t())
}

/// Schur coefficients `sum_mu c_mu chi^lambda(mu)` of every cell, in `C`.
fn schur_cells<C: Field>(
    g_max: usize,
    n_max: usize,
    opts: &ChiOptions,
) -> Result<BTreeMap<(usize, usize), Vec<(Partition, C)>>, EulerError> {
    let series = chi_series::<C>(g_max, n_max, opts)?;
    let mut cells = BTreeMap::new();
    for n in 0..=n_max {
        let lambdas = enumerate_partitions(n);
        for g in 0..=g_max {
            if 2 * g + n < 3 {
                continue;
            }
            let m = (g + n) as i64 - 1;
            let mut coeffs: Vec<(Partition, C)> =
                lambdas.iter().map(|l| (l.clone(), C::zero())).collect();
            for mu in enumerate_partitions(n) {
                let c = series.coeff(m, 0, &mu).neg();
                if c.is_zero() {
                    continue;
                }
                for (lambda, acc) in coeffs.iter_mut() {
                    let chi = character_value(lambda, &mu)?;
                    *acc = acc.add(&c.mul(&C::from_i64(chi)));
                }
            }
            cells.insert((g, n), coeffs);
        }
    }
    Ok(cells)
}

fn assemble(
    cells: BTreeMap<(usize, usize), Vec<(Partition, i128)>>,
    g_max: usize,
    n_max: usize,
) -> ChiTable {
    let cells = cells
        .into_iter()
        .map(|(key, coeffs)| {
            let mut e = SchurExpansion::zero();
            for (lambda, c) in coeffs {
                e.add_term(lambda, BigRational::from_integer(BigInt::from(c)));
            }
            (key, e)
        })
        .collect();
    ChiTable {
        g_max,
        n_max,
        cells,
    }
}

/// The table for `g <= g_max`, `n <= n_max` with default options.
pub fn chi_table(g_max: usize, n_max: usize) -> Result<ChiTable, EulerError> {
    chi_table_with(g_max, n_max, &ChiOptions::default())
}

/// The table with explicit options. In modular mode the computation runs
/// modulo two 62-bit primes; symmetric lifts of every Schur coefficient must
/// agree, otherwise an error is returned.
pub fn chi_table_with(g_max: usize, n_max: usize, opts: &ChiOptions) -> Result<ChiTable, EulerError> {
    if opts.exact {
        let cells = schur_cells::<BigRational>(g_max, n_max, opts)?;
        let mut ints = BTreeMap::new();
        for (key, coeffs) in cells {
            let mut row = Vec::with_capacity(coeffs.len());
            for (lambda, c) in coeffs {
                if !c.is_integer() {
                    return Err(EulerError::NonIntegral { g: key.0, n: key.1 });
                }
                let v: i128 = c
                    .numer()
                    .try_into()
                    .map_err(|_| EulerError::Overflow { g: key.0, n: key.1 })?;
                row.push((lambda, v));
            }
            ints.insert(key, row);
        }
        return Ok(assemble(ints, g_max, n_max));
    }
    let (a, b) = rayon::join(
        || schur_cells::<FpA>(g_max, n_max, opts),
        || schur_cells::<FpB>(g_max, n_max, opts),
    );
    let (a, b) = (a?, b?);
    let mut ints = BTreeMap::new();
    for ((key, ca), (_, cb)) in a.into_iter().zip(b) {
        let mut row = Vec::with_capacity(ca.len());
        for ((lambda, x), (_, y)) in ca.into_iter().zip(cb) {
            if x.lift() != y.lift() {
                return Err(EulerError::ModularDisagreement { g: key.0, n: key.1 });
            }
            row.push((lambda, x.lift()));
        }
        ints.insert(key, row);
    }
    Ok(assemble(ints, g_max, n_max))
}
