//! Sparse matrices in coordinate form.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::poly::ParamPoly;
use crate::LinAlgError;

/// Entry types that can live in a [`SparseMat`].
pub trait Entry: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn entry_is_zero(&self) -> bool;
    fn entry_add(&self, other: &Self) -> Self;
    fn entry_mul(&self, other: &Self) -> Self;
    fn render(&self) -> String;
}

impl Entry for BigRational {
    fn entry_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn entry_add(&self, other: &Self) -> Self {
        self + other
    }
    fn entry_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Entry for ParamPoly {
    fn entry_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn entry_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn entry_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn render(&self) -> String {
        format!("{self:?}")
    }
}

/// A sparse `rows x cols` matrix; zero entries are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMat<C> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), C>,
}

impl<C: Entry> SparseMat<C> {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMat {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Adds `c` to the entry at `(r, c)`.
    pub fn add_entry(&mut self, r: usize, col: usize, c: C) -> Result<(), LinAlgError> {
        if r >= self.rows || col >= self.cols {
            return Err(LinAlgError::IndexOutOfRange {
                row: r,
                col,
                rows: self.rows,
                cols: self.cols,
            });
        }
        if c.entry_is_zero() {
            return Ok(());
        }
        match self.entries.get_mut(&(r, col)) {
            Some(v) => {
                let s = v.entry_add(&c);
                if s.entry_is_zero() {
                    self.entries.remove(&(r, col));
                } else {
                    *v = s;
                }
            }
            None => {
                self.entries.insert((r, col), c);
            }
        }
        Ok(())
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&C> {
        self.entries.get(&(r, c))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &C)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn transpose(&self) -> SparseMat<C> {
        SparseMat {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), v)| ((c, r), v.clone()))
                .collect(),
        }
    }

    /// Row-wise lists of `(col, value)` sorted by column.
    pub fn row_lists(&self) -> Vec<Vec<(usize, C)>> {
        let mut out = vec![Vec::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            out[r].push((c, v.clone()));
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &SparseMat<C>) -> Result<SparseMat<C>, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let right_rows = other.row_lists();
        let mut out = SparseMat::new(self.rows, other.cols);
        for (&(r, k), a) in &self.entries {
            for (c, b) in &right_rows[k] {
                out.add_entry(r, *c, a.entry_mul(b))?;
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Coordinate dump: a header line `rows cols nnz` followed by one
    /// `row col value` line per stored entry.
    pub fn dump(&self) -> String {
        let mut out = format!("{} {} {}\n", self.rows, self.cols, self.entries.len());
        for (&(r, c), v) in &self.entries {
            out.push_str(&format!("{r} {c} {}\n", v.render()));
        }
        out
    }
}

impl SparseMat<BigRational> {
    /// Parses the coordinate dump produced by [`SparseMat::dump`].
    pub fn parse_dump(text: &str) -> Result<Self, LinAlgError> {
        let bad = |line: &str| LinAlgError::Parse(line.to_string());
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| bad("<empty>"))?;
        let h: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad(header)))
            .collect::<Result<_, _>>()?;
        if h.len() != 3 {
            return Err(bad(header));
        }
        let mut m = SparseMat::new(h[0], h[1]);
        for line in lines {
            let t: Vec<&str> = line.split_whitespace().collect();
            if t.len() != 3 {
                return Err(bad(line));
            }
            let r = t[0].parse().map_err(|_| bad(line))?;
            let c = t[1].parse().map_err(|_| bad(line))?;
            let v: BigRational = t[2].parse().map_err(|_| bad(line))?;
            m.add_entry(r, c, v)?;
        }
        if m.nnz() != h[2] {
            return Err(bad(header));
        }
        Ok(m)
    }
}
