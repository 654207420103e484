//! Report types shared by the JSON and text outputs, and the functions
//! computing them.
//!
//! Every report carries `schema_version` and a `kind` tag. Text, CSV and
//! LaTeX renderings are derived from the report, so a report loaded from
//! the cache renders to the same bytes as a fresh one.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::ValueEnum;
use complex13::{cohomology13_with, DEFAULT_SEED, DEFAULT_TRIALS};
use complex15::{build_complex, build_gc0, equivariant_cohomology, DEFAULT_TRUNCATION};
use euler15::{asymptotic_constants, asymptotic_main_term, chi_table, ChiTable};
use growth::{
    ascii_chart, exp_growth_degrees, lower_bound_u, GradedDims, Provenance, CHART_COLUMNS, MAX_K,
};
use serde::{Deserialize, Serialize};
use symkit::{Partition, SchurExpansion};

use crate::cache::ResultCache;
use crate::{CliError, EULER_SOFT_CAP, SCHEMA_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Csv,
    Json,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplexFamily {
    /// Weight-15 quotient complex.
    B15,
    /// Weight-15 subcomplex.
    C15,
    /// Commutative graph complex; the genus is the loop order.
    Gc0,
    /// Weight-13 complex with parametric differential.
    Wt13,
}

fn schema() -> u32 {
    SCHEMA_VERSION
}

fn pretty<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn format_error(command: &str, format: Format) -> CliError {
    CliError::Usage(format!("{command} does not support --format {format:?}"))
}

// ---------------------------------------------------------------- euler15

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerCell {
    pub g: usize,
    pub n: usize,
    /// Schur expansion such as `-s_{1,1,1}`; `0` for vanishing cells.
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerTableReport {
    #[serde(default = "schema")]
    pub schema_version: u32,
    pub kind: String,
    pub gmax: usize,
    pub nmax: usize,
    pub cells: Vec<EulerCell>,
}

impl EulerTableReport {
    pub fn from_table(t: &ChiTable) -> Self {
        EulerTableReport {
            schema_version: SCHEMA_VERSION,
            kind: "euler15-table".to_string(),
            gmax: t.g_max,
            nmax: t.n_max,
            cells: t
                .cells
                .iter()
                .map(|(&(g, n), e)| EulerCell {
                    g,
                    n,
                    value: e.to_string(),
                })
                .collect(),
        }
    }

    pub fn to_table(&self) -> Result<ChiTable, CliError> {
        let mut cells = BTreeMap::new();
        for c in &self.cells {
            let e = SchurExpansion::parse(&c.value)
                .map_err(|e| CliError::Usage(format!("cell ({}, {}): {e}", c.g, c.n)))?;
            cells.insert((c.g, c.n), e);
        }
        Ok(ChiTable {
            g_max: self.gmax,
            n_max: self.nmax,
            cells,
        })
    }

    pub fn cell(&self, g: usize, n: usize) -> String {
        self.cells
            .iter()
            .find(|c| c.g == g && c.n == n)
            .map_or_else(|| "0".to_string(), |c| c.value.clone())
    }

    /// Renders the table. LaTeX rows start at `gmin`, or by default at the
    /// first genus with a nonvanishing cell.
    pub fn render(&self, format: Format, gmin: Option<usize>) -> Result<String, CliError> {
        let table = self.to_table()?;
        Ok(match format {
            Format::Json => pretty(self)?,
            Format::Csv => table.csv(),
            Format::Latex => {
                let first = gmin.unwrap_or_else(|| {
                    (0..=self.gmax)
                        .find(|&g| (0..=self.nmax).any(|n| self.cell(g, n) != "0"))
                        .unwrap_or(self.gmax + 1)
                });
                table.latex_rows(first)
            }
            Format::Text => {
                let mut out = String::new();
                for c in &self.cells {
                    if c.g >= gmin.unwrap_or(0) {
                        let _ = writeln!(out, "({}, {})\t{}", c.g, c.n, c.value);
                    }
                }
                out
            }
        })
    }
}

/// Checks the soft size cap; `force` lifts it.
pub fn check_euler_cap(gmax: usize, nmax: usize, force: bool) -> Result<(), CliError> {
    let (gcap, ncap) = EULER_SOFT_CAP;
    if !force && (gmax > gcap || nmax > ncap) {
        return Err(CliError::Usage(format!(
            "table size gmax={gmax}, nmax={nmax} exceeds the soft cap gmax<={gcap}, nmax<={ncap}; pass --force to compute it anyway"
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct EulerArgs {
    gmax: usize,
    nmax: usize,
}

pub fn euler_table_report(
    gmax: usize,
    nmax: usize,
    force: bool,
    cache: &ResultCache,
) -> Result<EulerTableReport, CliError> {
    check_euler_cap(gmax, nmax, force)?;
    let key = ResultCache::key("euler15", "table", &EulerArgs { gmax, nmax });
    cache.get_or_compute(&key, || {
        Ok(EulerTableReport::from_table(&chi_table(gmax, nmax)?))
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MainTerm {
    pub genus: u32,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticsReport {
    #[serde(default = "schema")]
    pub schema_version: u32,
    pub kind: String,
    pub tolerance: f64,
    pub d_even: f64,
    pub d_odd: f64,
    pub main_terms: Vec<MainTerm>,
}

pub fn asymptotics_report(tolerance: f64, genera: &[u32]) -> Result<AsymptoticsReport, CliError> {
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(CliError::Usage("--tolerance must be positive".into()));
    }
    if let Some(g) = genera.iter().find(|&&g| g < 2) {
        return Err(CliError::Usage(format!("main term needs genus >= 2, got {g}")));
    }
    let (d_even, d_odd) = asymptotic_constants(tolerance);
    Ok(AsymptoticsReport {
        schema_version: SCHEMA_VERSION,
        kind: "euler15-asymptotics".to_string(),
        tolerance,
        d_even,
        d_odd,
        main_terms: genera
            .iter()
            .map(|&g| MainTerm {
                genus: g,
                value: asymptotic_main_term(g),
            })
            .collect(),
    })
}

impl AsymptoticsReport {
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => pretty(self),
            Format::Text => {
                let mut out = format!("D_ev  = {:.9}\nD_odd = {:.9}\n", self.d_even, self.d_odd);
                for t in &self.main_terms {
                    let _ = writeln!(out, "g = {}: {:e}", t.genus, t.value);
                }
                Ok(out)
            }
            f => Err(format_error("euler15 asymptotics", f)),
        }
    }
}

// ------------------------------------------------------------- cohomology

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyRequest {
    pub family: ComplexFamily,
    pub genus: usize,
    pub markings: usize,
    pub equivariant: bool,
    /// Marked half-edge truncation of the weight-15 complexes.
    pub truncation: Option<usize>,
    /// Random parameter evaluations per rank, weight 13 only.
    pub trials: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotypicEntry {
    pub partition: Vec<usize>,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeEntry {
    pub degree: i64,
    pub dimension: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isotypic: Option<Vec<IsotypicEntry>>,
}

/// How the ranks of a parametric differential were obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericRankInfo {
    pub parameters: Vec<String>,
    pub trials: usize,
    pub seed: u64,
    pub primes: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    #[serde(default = "schema")]
    pub schema_version: u32,
    pub kind: String,
    pub family: ComplexFamily,
    pub genus: usize,
    pub markings: usize,
    pub equivariant: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    /// Whether the differential has free parameters and the ranks are
    /// generic ranks.
    pub parametric: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generic_rank: Option<GenericRankInfo>,
    /// Nonzero degrees only.
    pub degrees: Vec<DegreeEntry>,
}

fn isotypic(m: &BTreeMap<Partition, usize>) -> Vec<IsotypicEntry> {
    m.iter()
        .map(|(l, &c)| IsotypicEntry {
            partition: l.parts().to_vec(),
            multiplicity: c,
        })
        .collect()
}

fn plain_degrees(h: &BTreeMap<i64, usize>) -> Vec<DegreeEntry> {
    h.iter()
        .filter(|&(_, &d)| d > 0)
        .map(|(&k, &d)| DegreeEntry {
            degree: k,
            dimension: d as u64,
            isotypic: None,
        })
        .collect()
}

fn compute_cohomology(req: &CohomologyRequest) -> Result<CohomologyReport, CliError> {
    let mut report = CohomologyReport {
        schema_version: SCHEMA_VERSION,
        kind: "cohomology".to_string(),
        family: req.family,
        genus: req.genus,
        markings: req.markings,
        equivariant: req.equivariant,
        truncation: None,
        parametric: false,
        generic_rank: None,
        degrees: Vec::new(),
    };
    match req.family {
        ComplexFamily::B15 | ComplexFamily::C15 => {
            let family = if req.family == ComplexFamily::B15 {
                complex15::Family::B15
            } else {
                complex15::Family::C15
            };
            let r = req.truncation.unwrap_or(DEFAULT_TRUNCATION);
            report.truncation = Some(r);
            report.degrees = if req.equivariant {
                let h = equivariant_cohomology(family, req.genus, req.markings, r)?;
                h.degrees
                    .iter()
                    .map(|(&k, m)| DegreeEntry {
                        degree: k,
                        dimension: h.dimension(k) as u64,
                        isotypic: Some(isotypic(m)),
                    })
                    .collect()
            } else {
                plain_degrees(&build_complex(family, req.genus, req.markings, r)?.cohomology()?)
            };
        }
        ComplexFamily::Gc0 => {
            if req.markings != 0 {
                return Err(CliError::Usage(
                    "the commutative graph complex has no markings".into(),
                ));
            }
            report.degrees = plain_degrees(&build_gc0(req.genus)?.cohomology()?);
            if req.equivariant {
                for d in &mut report.degrees {
                    d.isotypic = Some(vec![IsotypicEntry {
                        partition: Vec::new(),
                        multiplicity: d.dimension as usize,
                    }]);
                }
            }
        }
        ComplexFamily::Wt13 => {
            let trials = req.trials.unwrap_or(DEFAULT_TRIALS);
            let h = cohomology13_with(req.genus, req.markings, trials, DEFAULT_SEED)?;
            report.parametric = true;
            report.degrees = h
                .degrees
                .iter()
                .map(|(&k, m)| DegreeEntry {
                    degree: k,
                    dimension: h.dimension(k) as u64,
                    isotypic: req.equivariant.then(|| isotypic(m)),
                })
                .collect();
            report.generic_rank = Some(GenericRankInfo {
                parameters: h.parameters.clone(),
                trials: h.trials,
                seed: DEFAULT_SEED,
                primes: h.primes.clone(),
            });
        }
    }
    Ok(report)
}

pub fn cohomology_report(
    req: &CohomologyRequest,
    cache: &ResultCache,
) -> Result<CohomologyReport, CliError> {
    let mut req = req.clone();
    match req.family {
        ComplexFamily::B15 | ComplexFamily::C15 => {
            req.truncation = Some(req.truncation.unwrap_or(DEFAULT_TRUNCATION));
            req.trials = None;
        }
        ComplexFamily::Gc0 => {
            req.truncation = None;
            req.trials = None;
        }
        ComplexFamily::Wt13 => {
            req.truncation = None;
            req.trials = Some(req.trials.unwrap_or(DEFAULT_TRIALS));
        }
    }
    let key = ResultCache::key("cohomology", "compute", &req);
    cache.get_or_compute(&key, || compute_cohomology(&req))
}

fn exponent_text(parts: &[usize]) -> String {
    Partition::new(parts.to_vec()).exponent_notation()
}

impl CohomologyReport {
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => pretty(self),
            Format::Text => {
                let name = serde_json::to_value(self.family)?;
                let mut out = format!(
                    "{} g={} n={}",
                    name.as_str().unwrap_or_default(),
                    self.genus,
                    self.markings
                );
                if let Some(r) = self.truncation {
                    let _ = write!(out, " r={r}");
                }
                out.push('\n');
                if self.degrees.is_empty() {
                    out.push_str("cohomology vanishes\n");
                }
                for d in &self.degrees {
                    let _ = write!(out, "H^{}: dim {}", d.degree, d.dimension);
                    if let Some(iso) = &d.isotypic {
                        let terms: Vec<String> = iso
                            .iter()
                            .map(|e| {
                                let v = format!("V_{{{}}}", exponent_text(&e.partition));
                                if e.multiplicity == 1 {
                                    v
                                } else {
                                    format!("{} {v}", e.multiplicity)
                                }
                            })
                            .collect();
                        let _ = write!(out, " = {}", terms.join(" + "));
                    }
                    out.push('\n');
                }
                if let Some(info) = &self.generic_rank {
                    let _ = writeln!(
                        out,
                        "generic ranks: {} trials over {} primes, parameters {}",
                        info.trials,
                        info.primes.len(),
                        info.parameters.join(", ")
                    );
                }
                Ok(out)
            }
            f => Err(format_error("cohomology", f)),
        }
    }

    /// `degree -> (partition -> multiplicity)` for equivariant reports.
    pub fn isotypic_table(&self) -> BTreeMap<i64, BTreeMap<Partition, usize>> {
        self.degrees
            .iter()
            .filter_map(|d| {
                let m = d.isotypic.as_ref()?;
                let m = m
                    .iter()
                    .map(|e| (Partition::new(e.partition.clone()), e.multiplicity))
                    .collect();
                Some((d.degree, m))
            })
            .collect()
    }
}

// ----------------------------------------------------------------- growth

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandDegrees {
    pub p: usize,
    pub delta: usize,
    pub delta_prime: usize,
    pub degrees: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthDegreesReport {
    #[serde(default = "schema")]
    pub schema_version: u32,
    pub kind: String,
    pub max_k: usize,
    pub per_summand: Vec<SummandDegrees>,
    pub known: Vec<usize>,
    pub new: Vec<usize>,
    pub full: Vec<usize>,
    /// `k <= max_k` outside `full`.
    pub open: Vec<usize>,
}

pub fn growth_degrees_report() -> GrowthDegreesReport {
    let d = exp_growth_degrees();
    GrowthDegreesReport {
        schema_version: SCHEMA_VERSION,
        kind: "growth-degrees".to_string(),
        max_k: MAX_K,
        per_summand: d
            .per_summand
            .iter()
            .map(|(s, ks)| SummandDegrees {
                p: s.p,
                delta: s.delta,
                delta_prime: s.delta_prime,
                degrees: ks.iter().copied().collect(),
            })
            .collect(),
        known: d.known.iter().copied().collect(),
        new: d.new.iter().copied().collect(),
        full: d.full.iter().copied().collect(),
        open: (0..=MAX_K).filter(|k| !d.full.contains(k)).collect(),
    }
}

fn list(v: &[usize]) -> String {
    v.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(", ")
}

impl GrowthDegreesReport {
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => pretty(self),
            Format::Text => {
                let mut out = String::new();
                for s in &self.per_summand {
                    let _ = writeln!(
                        out,
                        "Sym^{} shifted by ({}, {}): {}",
                        s.p,
                        s.delta,
                        s.delta_prime,
                        list(&s.degrees)
                    );
                }
                let _ = writeln!(out, "known: {}", list(&self.known));
                let _ = writeln!(out, "new: {}", list(&self.new));
                let _ = writeln!(out, "open (k <= {}): {}", self.max_k, list(&self.open));
                Ok(out)
            }
            f => Err(format_error("growth degrees", f)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthChartReport {
    #[serde(default = "schema")]
    pub schema_version: u32,
    pub kind: String,
    /// One of `known`, `new`, `open` per degree `0..columns`.
    pub status: Vec<String>,
    pub chart: String,
}

pub fn growth_chart_report() -> GrowthChartReport {
    let chart = ascii_chart();
    let row = chart.lines().next().unwrap_or_default();
    GrowthChartReport {
        schema_version: SCHEMA_VERSION,
        kind: "growth-chart".to_string(),
        status: row
            .chars()
            .take(CHART_COLUMNS)
            .map(|c| match c {
                '#' => "known",
                '+' => "new",
                _ => "open",
            })
            .map(String::from)
            .collect(),
        chart,
    }
}

impl GrowthChartReport {
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => pretty(self),
            Format::Text => Ok(self.chart.clone()),
            f => Err(format_error("growth chart", f)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseEntry {
    pub loop_order: usize,
    pub degree: usize,
    pub dimension: u64,
    pub trusted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthBoundReport {
    #[serde(default = "schema")]
    pub schema_version: u32,
    pub kind: String,
    pub genus: usize,
    pub degree: usize,
    /// Lower bound for `dim H^{2g+k}(M_g)` from the summand injections.
    pub lower_bound: u128,
    pub base: Vec<BaseEntry>,
}

pub fn growth_bound_report(genus: usize, degree: usize) -> GrowthBoundReport {
    let base = GradedDims::reference();
    GrowthBoundReport {
        schema_version: SCHEMA_VERSION,
        kind: "growth-bound".to_string(),
        genus,
        degree,
        lower_bound: lower_bound_u(genus, degree, &base),
        base: base
            .iter()
            .map(|(h, k, d)| BaseEntry {
                loop_order: h,
                degree: k,
                dimension: d,
                trusted: base.provenance(h, k) == Some(Provenance::Trusted),
            })
            .collect(),
    }
}

impl GrowthBoundReport {
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => pretty(self),
            Format::Text => {
                let mut out = format!(
                    "dim H^(2g+k)(M_g) >= {} for g={}, k={}\n",
                    self.lower_bound, self.genus, self.degree
                );
                for b in &self.base {
                    let _ = writeln!(
                        out,
                        "base: H^{} at loop order {} of dimension {}{}",
                        b.degree,
                        b.loop_order,
                        b.dimension,
                        if b.trusted { " (taken as given)" } else { "" }
                    );
                }
                Ok(out)
            }
            f => Err(format_error("growth bound", f)),
        }
    }
}
