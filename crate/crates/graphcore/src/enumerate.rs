//! Generators of the auxiliary complex `X_{g,n}` as multisets of components.

use crate::catalog::{colorings, component_shapes, Component};
use crate::graph::GraphKey;
use crate::GraphError;

/// Graph families with an excess budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Wt13,
    Wt15,
}

/// `3g + 2n - 25` for weight 13, `3g + 2n - 33` for weight 15.
pub fn excess_budget(family: Family, g: usize, n: usize) -> i64 {
    let base = 3 * g as i64 + 2 * n as i64;
    match family {
        Family::Wt13 => base - 25,
        Family::Wt15 => base - 33,
    }
}

/// Excess `3(g-1) + 2n - 2 #ω` of a generator of `X_{g,n}`.
pub fn generator_excess(g: usize, n: usize, omega: usize) -> i64 {
    3 * (g as i64 - 1) + 2 * n as i64 - 2 * omega as i64
}

/// A generator together with its counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub key: GraphKey,
    pub omega: usize,
    /// Number of edges of the stable graph.
    pub edges: usize,
    /// Component excesses, in key order.
    pub component_excess: Vec<i64>,
}

/// Colored component catalog fitting into the given color counts, split
/// into components without markings and, per color, components whose
/// smallest color is that color.
struct Catalog {
    markless: Vec<Component>,
    by_min_color: Vec<Vec<Component>>,
}

fn catalog(max_excess: usize, colors: &[usize]) -> Catalog {
    let shapes = component_shapes(max_excess);
    let mut markless = Vec::new();
    let mut by_min_color = vec![Vec::new(); colors.len()];
    for s in shapes.iter() {
        if s.marks == 0 {
            markless.push(s.clone());
            continue;
        }
        if s.marks > colors.iter().sum() {
            continue;
        }
        for c in colorings(s, colors) {
            let min = c.colors()[0] as usize;
            by_min_color[min].push(c);
        }
    }
    for list in &mut by_min_color {
        list.sort_by(|a, b| a.code.cmp(&b.code));
    }
    Catalog {
        markless,
        by_min_color,
    }
}

struct State<'a> {
    cat: &'a Catalog,
    chosen: Vec<&'a Component>,
    remaining_colors: Vec<usize>,
    genus_left: i64,
    omega_left: i64,
    excess_left: i64,
    out: Vec<Generator>,
}

impl<'a> State<'a> {
    fn fits(&self, c: &Component) -> bool {
        if c.genus_contribution() > self.genus_left
            || c.omega as i64 > self.omega_left
            || c.excess() > self.excess_left
        {
            return false;
        }
        let mut need = vec![0usize; self.remaining_colors.len()];
        for col in c.colors() {
            need[col as usize] += 1;
        }
        need.iter()
            .zip(&self.remaining_colors)
            .all(|(n, r)| n <= r)
    }

    fn take(&mut self, c: &'a Component, sign: i64) {
        self.genus_left -= sign * c.genus_contribution();
        self.omega_left -= sign * c.omega as i64;
        self.excess_left -= sign * c.excess();
        for col in c.colors() {
            let r = &mut self.remaining_colors[col as usize];
            *r = (*r as i64 - sign) as usize;
        }
        if sign > 0 {
            self.chosen.push(c);
        } else {
            self.chosen.pop();
        }
    }

    fn markless(&mut self, from: usize) {
        self.marked(usize::MAX, 0);
        for i in from..self.cat.markless.len() {
            let c = &self.cat.markless[i];
            if self.fits(c) {
                self.take(c, 1);
                self.markless(i);
                self.take(c, -1);
            }
        }
    }

    /// Covers the smallest remaining color; components covering the same
    /// smallest color are taken in nondecreasing catalog order.
    fn marked(&mut self, last_color: usize, from: usize) {
        let Some(color) = self.remaining_colors.iter().position(|&r| r > 0) else {
            if self.genus_left == 0 && self.omega_left == 0 {
                self.emit();
            }
            return;
        };
        let start = if color == last_color { from } else { 0 };
        let list = &self.cat.by_min_color[color];
        for i in start..list.len() {
            let c = &list[i];
            if self.fits(c) {
                self.take(c, 1);
                self.marked(color, i);
                self.take(c, -1);
            }
        }
    }

    fn emit(&mut self) {
        let mut comps: Vec<&Component> = self.chosen.clone();
        comps.sort_by(|a, b| a.code.cmp(&b.code));
        for pair in comps.windows(2) {
            if pair[0].code == pair[1].code && pair[0].odd % 2 == 1 {
                return;
            }
        }
        self.out.push(Generator {
            key: GraphKey(comps.iter().map(|c| c.code.clone()).collect()),
            omega: comps.iter().map(|c| c.omega).sum(),
            edges: comps.iter().map(|c| c.edges).sum(),
            component_excess: comps.iter().map(|c| c.excess()).collect(),
        });
    }
}

/// All nonvanishing generators of `X_{g,n}` with exactly `omega` marked
/// half-edges, where the markings carry colors with multiplicities
/// `colors[c]`. Sorted by key.
pub fn enumerate_x(g: usize, colors: &[usize], omega: usize) -> Result<Vec<Generator>, GraphError> {
    if g == 0 {
        return Ok(Vec::new());
    }
    let n: usize = colors.iter().sum();
    let excess = generator_excess(g, n, omega);
    if excess < 0 {
        return Ok(Vec::new());
    }
    if excess > MAX_CATALOG_EXCESS as i64 {
        return Err(GraphError::Unsupported(format!(
            "generator excess {excess} exceeds the catalog bound {MAX_CATALOG_EXCESS}"
        )));
    }
    let cat = catalog(excess as usize, colors);
    let mut state = State {
        cat: &cat,
        chosen: Vec::new(),
        remaining_colors: colors.to_vec(),
        genus_left: g as i64 - 1,
        omega_left: omega as i64,
        excess_left: excess,
        out: Vec::new(),
    };
    state.markless(0);
    let mut out = state.out;
    out.sort_by(|a, b| a.key.cmp(&b.key));
    out.dedup_by(|a, b| a.key == b.key);
    Ok(out)
}

/// Largest generator excess for which component catalogs are built.
pub const MAX_CATALOG_EXCESS: usize = 9;
