//! Consistency checks run by `mgn check`. Each check compares a
//! computation against published values or against an independent
//! computation and reports one line.

use std::collections::{BTreeMap, BTreeSet};

use clap::ValueEnum;
use complex13::{cohomology13, excess13};
use complex15::{build_complex, build_gc0, equivariant_cohomology, Family, DEFAULT_TRUNCATION};
use euler15::{asymptotic_constants, chi_table};
use growth::{exp_growth_degrees, GradedDims, Provenance, MAX_K};
use serde::{Deserialize, Serialize};

use crate::reference::{self, CHI_ROWS_GENUS, CHI_ROWS_N_MAX};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Euler characteristic table against the published rows.
    Figure1,
    /// Weight-15 equivariant cohomology at excess at most 3.
    Wt15Lowexcess,
    /// Euler characteristics of the weight-15 cohomology against the
    /// generating function.
    EulerVsComplex,
    /// Weight-13 cohomology.
    Wt13,
    /// Degrees with exponential growth.
    Growth,
    /// Asymptotic constants.
    Asymptotics,
    /// Commutative graph complex in loop orders 2 to 5.
    Gc0,
    /// Commutative graph complex in loop order 6.
    Gc0Stretch,
    /// Out-of-range requests fail with unsupported-scope errors.
    Scope,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Figure1,
        Suite::Wt15Lowexcess,
        Suite::EulerVsComplex,
        Suite::Wt13,
        Suite::Growth,
        Suite::Asymptotics,
        Suite::Gc0,
        Suite::Gc0Stretch,
        Suite::Scope,
    ];

    pub fn name(self) -> String {
        self.to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub suite: String,
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckLine {
    pub fn render(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            format!("{status} {}: {}", self.suite, self.check)
        } else {
            format!("{status} {}: {} ({})", self.suite, self.check, self.detail)
        }
    }
}

struct Lines {
    suite: String,
    out: Vec<CheckLine>,
}

impl Lines {
    fn new(s: Suite) -> Self {
        Lines {
            suite: s.name(),
            out: Vec::new(),
        }
    }

    fn push(&mut self, check: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.out.push(CheckLine {
            suite: self.suite.clone(),
            check: check.into(),
            passed,
            detail: detail.into(),
        });
    }

    /// Records `Ok(detail)` as a pass and `Err(detail)` as a failure.
    fn record(&mut self, check: impl Into<String>, r: Result<String, String>) {
        match r {
            Ok(d) => self.push(check, true, d),
            Err(d) => self.push(check, false, d),
        }
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

pub fn run_suite(suite: Suite) -> Vec<CheckLine> {
    let mut l = Lines::new(suite);
    match suite {
        Suite::Figure1 => figure1(&mut l),
        Suite::Wt15Lowexcess => wt15(&mut l),
        Suite::EulerVsComplex => euler_vs_complex(&mut l),
        Suite::Wt13 => wt13(&mut l),
        Suite::Growth => growth_suite(&mut l),
        Suite::Asymptotics => asymptotics(&mut l),
        Suite::Gc0 => gc0(&mut l),
        Suite::Gc0Stretch => gc0_stretch(&mut l),
        Suite::Scope => scope(&mut l),
    }
    l.out
}

fn figure1(l: &mut Lines) {
    let (g_lo, g_hi) = CHI_ROWS_GENUS;
    let table = match chi_table(g_hi, CHI_ROWS_N_MAX) {
        Ok(t) => t,
        Err(e) => return l.push("chi_table(18, 6)", false, err(e)),
    };
    let cells = reference::chi_cells();
    let mismatched: Vec<String> = cells
        .iter()
        .filter(|&(&(g, n), want)| table.cell(g, n) != Some(want))
        .map(|(&(g, n), _)| format!("({g}, {n})"))
        .collect();
    l.record(
        format!("{} cells of genus {g_lo}..={g_hi}", cells.len()),
        if cells.len() == 84 && mismatched.is_empty() {
            Ok(String::new())
        } else {
            Err(format!("{} cells, mismatched: {}", cells.len(), mismatched.join(" ")))
        },
    );
    l.push(
        "LaTeX rows byte-identical",
        table.latex_rows(g_lo) == reference::CHI_ROWS,
        "",
    );
}

fn wt15(l: &mut Lines) {
    for ((g, n), want) in reference::wt15_tables() {
        let r = equivariant_cohomology(Family::B15, g, n, DEFAULT_TRUNCATION)
            .map_err(err)
            .and_then(|h| {
                if h.degrees == want {
                    Ok(h.describe().trim_end().replace('\n', "; "))
                } else {
                    Err(format!("got {}", h.describe().trim_end().replace('\n', "; ")))
                }
            });
        l.record(format!("B({g}, {n})"), r);
    }
}

fn euler_vs_complex(l: &mut Lines) {
    let chi = match chi_table(12, 6) {
        Ok(t) => t,
        Err(e) => return l.push("chi_table(12, 6)", false, err(e)),
    };
    for &(g, n) in reference::EULER_OVERLAP {
        let r = equivariant_cohomology(Family::B15, g, n, DEFAULT_TRUNCATION)
            .map_err(err)
            .and_then(|h| {
                let e = h.euler_characteristic();
                match chi.cell(g, n) {
                    Some(c) if *c == e => Ok(format!("chi = {e}")),
                    c => Err(format!(
                        "alternating sum {e}, generating function {}",
                        c.map_or("absent".to_string(), |c| c.to_string())
                    )),
                }
            });
        l.record(format!("({g}, {n})"), r);
    }
}

fn wt13(l: &mut Lines) {
    let mut primes: BTreeSet<u64> = BTreeSet::new();
    let mut min_trials = usize::MAX;
    for ((g, n), want) in reference::wt13_tables() {
        let r = cohomology13(g, n).map_err(err).and_then(|h| {
            primes.extend(&h.primes);
            min_trials = min_trials.min(h.trials);
            let text = h.describe().trim_end().to_string();
            if h.degrees == want {
                Ok(text)
            } else {
                Err(format!("got {text}"))
            }
        });
        let label = if (g, n) == (3, 9) {
            "Z(3, 9), tabulated value".to_string()
        } else {
            format!("Z({g}, {n})")
        };
        l.record(label, r);
    }
    let big = primes.iter().all(|&p| p > 1 << 61);
    l.push(
        "generic ranks over at least 5 distinct 62-bit primes",
        min_trials >= 5 && primes.len() >= 5 && big,
        format!("{} trials, {} primes", min_trials, primes.len()),
    );
    for &(g, n) in reference::WT13_VANISHING {
        let r = cohomology13(g, n).map_err(err).and_then(|h| {
            if h.is_zero() && excess13(g, n) <= 0 {
                Ok(String::new())
            } else {
                Err(h.describe())
            }
        });
        l.record(format!("({g}, {n}) vanishes"), r);
    }
}

fn growth_suite(l: &mut Lines) {
    let d = exp_growth_degrees();
    let printed = reference::growth_summand_sets();
    for ((s, got), want) in d.per_summand.iter().zip(&printed) {
        let got: Vec<usize> = got.iter().copied().collect();
        l.push(
            format!("Sym^{} shifted by ({}, {})", s.p, s.delta, s.delta_prime),
            &got == want,
            if &got == want { String::new() } else { format!("{got:?}") },
        );
    }
    let new: Vec<usize> = d.new.iter().copied().collect();
    l.push(
        "21 new degrees",
        new == reference::growth_new_values(),
        format!("{new:?}"),
    );
    let open: Vec<usize> = (0..=MAX_K).filter(|k| !d.full.contains(k)).collect();
    l.push(
        format!("open degrees up to {MAX_K}"),
        open == reference::GROWTH_EXCEPTIONS,
        format!("{open:?}"),
    );
}

fn asymptotics(l: &mut Lines) {
    let (ev, odd) = asymptotic_constants(1e-12);
    let (ev_want, ev_tol) = reference::ASYMPTOTIC_EVEN;
    let (odd_want, odd_tol) = reference::ASYMPTOTIC_ODD;
    l.push("D_ev", (ev - ev_want).abs() <= ev_tol, format!("{ev:.9}"));
    l.push("D_odd", (odd - odd_want).abs() <= odd_tol, format!("{odd:.9}"));
}

fn gc0_degrees(loop_order: usize) -> Result<BTreeMap<i64, usize>, String> {
    let c = build_gc0(loop_order).map_err(err)?;
    c.check_square_zero().map_err(err)?;
    c.cohomology().map_err(err)
}

fn gc0(l: &mut Lines) {
    l.record(
        "loop order 2 vanishes",
        gc0_degrees(2).and_then(|h| {
            if h.is_empty() {
                Ok(String::new())
            } else {
                Err(format!("{h:?}"))
            }
        }),
    );
    // Loop orders 3 and 5 carry the base classes used for growth; loop
    // order 4 has no cohomology.
    let base = GradedDims::reference();
    for h in 3..=5 {
        let expected: BTreeMap<i64, usize> = base
            .iter()
            .filter(|&(h0, _, _)| h0 == h)
            .map(|(_, k, d)| (k as i64, d as usize))
            .collect();
        let r = gc0_degrees(h).and_then(|dims| {
            if dims == expected {
                Ok(format!("{dims:?}"))
            } else {
                Err(format!("{dims:?}, expected {expected:?}"))
            }
        });
        l.record(format!("loop order {h}"), r);
    }
}

fn gc0_stretch(l: &mut Lines) {
    let base = GradedDims::reference();
    let r = gc0_degrees(6).and_then(|dims| {
        let got = dims.get(&15).copied().unwrap_or(0);
        if got as u64 == base.get(6, 15) && base.provenance(6, 15) == Some(Provenance::Computed) {
            Ok(format!("{dims:?}"))
        } else {
            Err(format!("{dims:?}"))
        }
    });
    l.record("H^15 at loop order 6 has dimension 1", r);
}

fn expect_unsupported<T: std::fmt::Debug>(r: Result<T, CliError>) -> Result<String, String> {
    match r {
        Err(e) if e.is_unsupported_scope() => Ok(e.to_string()),
        Err(e) => Err(format!("wrong error: {e}")),
        Ok(v) => Err(format!("returned {v:?}")),
    }
}

fn scope(l: &mut Lines) {
    l.record(
        "loop order 10",
        expect_unsupported(build_gc0(10).map(|c| c.dims()).map_err(CliError::from)),
    );
    for (g, n) in [(13, 0), (2, 16), (12, 1)] {
        l.record(
            format!("B({g}, {n}) beyond excess 3"),
            expect_unsupported(
                build_complex(Family::B15, g, n, DEFAULT_TRUNCATION)
                    .map(|c| c.dims())
                    .map_err(CliError::from),
            ),
        );
    }
    for (g, n) in [(10, 0), (2, 11), (1, 14)] {
        l.record(
            format!("weight 13 at 3g+2n = {}", 3 * g + 2 * n),
            expect_unsupported(cohomology13(g, n).map(|h| h.degrees).map_err(CliError::from)),
        );
    }
}
