//! Canonical labeling of small node-labeled multigraphs by
//! individualization and refinement.
//!
//! Every leaf of the search tree is explored, except that degree-one nodes
//! with the same label hanging off the same node ("twin leaves") are never
//! branched on: all their orderings give the same code. The caller learns
//! every optimal leaf, so it can inspect the full automorphism coset, up to
//! twin-leaf permutations.

use std::collections::BTreeMap;

/// A node-labeled multigraph: `adj[v]` lists `(neighbor, multiplicity)`.
#[derive(Clone, Debug)]
pub struct LabeledGraph {
    pub labels: Vec<u32>,
    pub adj: Vec<Vec<(usize, u32)>>,
}

impl LabeledGraph {
    pub fn new(labels: Vec<u32>) -> Self {
        let n = labels.len();
        LabeledGraph {
            labels,
            adj: vec![Vec::new(); n],
        }
    }

    /// Adds one edge between distinct nodes, merging multiplicities.
    pub fn add_edge(&mut self, a: usize, b: usize) {
        debug_assert_ne!(a, b, "self-loops are not representable");
        for (x, y) in [(a, b), (b, a)] {
            match self.adj[x].iter_mut().find(|(z, _)| *z == y) {
                Some(entry) => entry.1 += 1,
                None => self.adj[x].push((y, 1)),
            }
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    fn degree(&self, v: usize) -> u32 {
        self.adj[v].iter().map(|&(_, m)| m).sum()
    }

    /// Code of the graph relabeled by `perm` (node -> canonical index).
    pub fn code_under(&self, perm: &[usize]) -> Vec<u32> {
        let n = self.len();
        let mut inv = vec![0; n];
        for (v, &p) in perm.iter().enumerate() {
            inv[p] = v;
        }
        let mut code = Vec::with_capacity(1 + n + 3 * n);
        code.push(n as u32);
        code.extend(inv.iter().map(|&v| self.labels[v]));
        let mut edges: Vec<(u32, u32, u32)> = Vec::new();
        for v in 0..n {
            for &(w, m) in &self.adj[v] {
                let (a, b) = (perm[v], perm[w]);
                if a < b {
                    edges.push((a as u32, b as u32, m));
                }
            }
        }
        edges.sort_unstable();
        for (a, b, m) in edges {
            code.extend([a, b, m]);
        }
        code
    }
}

/// Result of a canonical labeling: the minimal code and every leaf
/// permutation (node -> canonical index) attaining it.
#[derive(Clone, Debug)]
pub struct Canon {
    pub code: Vec<u32>,
    pub optimal: Vec<Vec<usize>>,
}

type Cells = Vec<Vec<usize>>;

fn refine(g: &LabeledGraph, mut cells: Cells) -> Cells {
    let n = g.len();
    let mut color = vec![0usize; n];
    loop {
        for (i, cell) in cells.iter().enumerate() {
            for &v in cell {
                color[v] = i;
            }
        }
        let mut next: Cells = Vec::with_capacity(cells.len());
        let mut changed = false;
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut groups: BTreeMap<Vec<(usize, u32)>, Vec<usize>> = BTreeMap::new();
            for &v in cell {
                let mut sig: Vec<(usize, u32)> =
                    g.adj[v].iter().map(|&(w, m)| (color[w], m)).collect();
                sig.sort_unstable();
                groups.entry(sig).or_default().push(v);
            }
            if groups.len() > 1 {
                changed = true;
            }
            next.extend(groups.into_values());
        }
        cells = next;
        if !changed {
            return cells;
        }
    }
}

/// Degree-one nodes of one cell that share their unique neighbor.
fn is_twin_cell(g: &LabeledGraph, cell: &[usize]) -> bool {
    let hub = |v: usize| {
        let a = &g.adj[v];
        (a.len() == 1 && a[0].1 == 1).then_some(a[0].0)
    };
    match hub(cell[0]) {
        Some(h) => cell.iter().all(|&v| hub(v) == Some(h)),
        None => false,
    }
}

struct Search<'a> {
    g: &'a LabeledGraph,
    best: Option<Vec<u32>>,
    optimal: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn run(&mut self, cells: Cells) {
        let cells = refine(self.g, cells);
        let Some(t) = cells.iter().position(|c| c.len() > 1) else {
            let mut perm = vec![0; self.g.len()];
            for (i, cell) in cells.iter().enumerate() {
                perm[cell[0]] = i;
            }
            let code = self.g.code_under(&perm);
            match &self.best {
                Some(b) if code > *b => {}
                Some(b) if code == *b => self.optimal.push(perm),
                _ => {
                    self.best = Some(code);
                    self.optimal = vec![perm];
                }
            }
            return;
        };
        let cell = &cells[t];
        let choices: Vec<usize> = if is_twin_cell(self.g, cell) {
            vec![cell[0]]
        } else {
            cell.clone()
        };
        for v in choices {
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..t]);
            next.push(vec![v]);
            next.push(cell.iter().copied().filter(|&w| w != v).collect());
            next.extend_from_slice(&cells[t + 1..]);
            self.run(next);
        }
    }
}

/// Canonical labeling. The initial partition orders nodes by label and then
/// by degree, so codes of isomorphic graphs coincide.
pub fn canonical_form(g: &LabeledGraph) -> Canon {
    if g.is_empty() {
        return Canon {
            code: vec![0],
            optimal: vec![Vec::new()],
        };
    }
    let mut groups: BTreeMap<(u32, u32), Vec<usize>> = BTreeMap::new();
    for v in 0..g.len() {
        groups.entry((g.labels[v], g.degree(v))).or_default().push(v);
    }
    let mut search = Search {
        g,
        best: None,
        optimal: Vec::new(),
    };
    search.run(groups.into_values().collect());
    Canon {
        code: search.best.expect("at least one leaf"),
        optimal: search.optimal,
    }
}

/// Parity of a permutation given as a sequence of distinct ranks.
pub fn permutation_parity(seq: &[usize]) -> bool {
    let mut seen = vec![false; seq.len()];
    let mut odd = false;
    for start in 0..seq.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = seq[i];
            len += 1;
        }
        if len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}
