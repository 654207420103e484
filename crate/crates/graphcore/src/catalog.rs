//! Catalogs of connected blown-up components with bounded excess.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::canon::{canonical_form, LabeledGraph};
use crate::graph::{canonicalize, BlownUpGraph, Canonical, ComponentCode, NodeKind, Odd};
use crate::GraphError;

/// Counts of a connected component.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Component {
    pub code: ComponentCode,
    pub omega: usize,
    pub eps: usize,
    pub marks: usize,
    /// First Betti number of the component with its legs left open.
    pub h1: usize,
    /// Number of odd elements (stable-graph edges plus `ω` legs).
    pub odd: usize,
    /// Number of stable-graph edges.
    pub edges: usize,
}

impl Component {
    pub fn from_code(code: ComponentCode) -> Result<Component, GraphError> {
        let g = code.to_graph();
        if g.components().len() != 1 {
            return Err(GraphError::Malformed("component is not connected".into()));
        }
        let internal = g.count(NodeKind::Internal);
        let inner_edges = g
            .edges
            .iter()
            .filter(|&&[a, b]| g.kinds[a] == NodeKind::Internal && g.kinds[b] == NodeKind::Internal)
            .count();
        let h1 = (inner_edges + 1).saturating_sub(internal.max(1));
        let edges = g.odd_edge_count();
        let omega = g.omega_count();
        Ok(Component {
            omega,
            eps: g.eps_count(),
            marks: g.mark_count(),
            h1,
            odd: edges + omega,
            edges,
            code,
        })
    }

    /// `3 h1 + 3 #ε + #ω + 2 n_C - 3`.
    pub fn excess(&self) -> i64 {
        3 * self.h1 as i64 + 3 * self.eps as i64 + self.omega as i64 + 2 * self.marks as i64 - 3
    }

    /// Contribution to `g - 1`: `h1 + #ε + #ω - 1`.
    pub fn genus_contribution(&self) -> i64 {
        self.h1 as i64 + self.eps as i64 + self.omega as i64 - 1
    }

    /// Multiset of marking colors, sorted.
    pub fn colors(&self) -> Vec<u16> {
        let mut c: Vec<u16> = self
            .code
            .kinds()
            .filter_map(|k| match k {
                NodeKind::Mark(c) => Some(c),
                _ => None,
            })
            .collect();
        c.sort_unstable();
        c
    }
}

/// Excess of a connected component. Negative excess only occurs for the
/// vanishing `ω—ω` loop and is reported as an error.
pub fn excess_component(c: &Component) -> Result<usize, GraphError> {
    usize::try_from(c.excess())
        .map_err(|_| GraphError::NegativeExcess(c.code.clone()))
}

/// Connected simple graphs on `k` vertices with first Betti number `h`, up
/// to isomorphism, as edge lists.
fn skeletons(k: usize, h: usize) -> Vec<Vec<[usize; 2]>> {
    // Trees by leaf growth, then extra edges one at a time.
    let mut level: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut reps: Vec<Vec<[usize; 2]>> = vec![Vec::new()];
    for size in 2..=k {
        let mut next = Vec::new();
        level.clear();
        for t in &reps {
            for v in 0..size - 1 {
                let mut e = t.clone();
                e.push([v, size - 1]);
                if level.insert(skeleton_code(size, &e)) {
                    next.push(e);
                }
            }
        }
        reps = next;
    }
    for _ in 0..h {
        let mut next = Vec::new();
        level.clear();
        for t in &reps {
            for a in 0..k {
                for b in a + 1..k {
                    if t.iter().any(|&[x, y]| (x, y) == (a, b) || (x, y) == (b, a)) {
                        continue;
                    }
                    let mut e = t.clone();
                    e.push([a, b]);
                    if level.insert(skeleton_code(k, &e)) {
                        next.push(e);
                    }
                }
            }
        }
        reps = next;
    }
    reps
}

fn skeleton_code(k: usize, edges: &[[usize; 2]]) -> Vec<u32> {
    let mut g = LabeledGraph::new(vec![0; k]);
    for &[a, b] in edges {
        g.add_edge(a, b);
    }
    canonical_form(&g).code
}

/// Builds the component with the given skeleton and per-vertex leg counts
/// `(eps, omega, marks)`; markings get pairwise distinct colors.
fn attach_legs(k: usize, skeleton: &[[usize; 2]], legs: &[(usize, usize, usize)]) -> BlownUpGraph {
    let mut kinds = vec![NodeKind::Internal; k];
    let mut edges = skeleton.to_vec();
    let mut color = 0u16;
    for (v, &(e, w, m)) in legs.iter().enumerate() {
        for _ in 0..e {
            kinds.push(NodeKind::Eps);
            edges.push([v, kinds.len() - 1]);
        }
        for _ in 0..w {
            kinds.push(NodeKind::Omega);
            edges.push([v, kinds.len() - 1]);
        }
        for _ in 0..m {
            kinds.push(NodeKind::Mark(color));
            color += 1;
            edges.push([v, kinds.len() - 1]);
        }
    }
    with_default_word(kinds, edges)
}

/// Isomorphism class of `g` with marking colors forgotten, ignoring
/// orientations.
fn shape_code(g: &BlownUpGraph) -> Vec<u32> {
    let labels = g
        .kinds
        .iter()
        .map(|k| if k.is_mark() { NodeKind::Mark(0) } else { *k }.code())
        .collect();
    let mut lg = LabeledGraph::new(labels);
    for &[a, b] in &g.edges {
        lg.add_edge(a, b);
    }
    canonical_form(&lg).code
}

/// A graph with the word "`ω` nodes, then odd edges" in index order.
pub fn with_default_word(kinds: Vec<NodeKind>, edges: Vec<[usize; 2]>) -> BlownUpGraph {
    let mut g = BlownUpGraph {
        kinds,
        edges,
        word: Vec::new(),
    };
    let mut word: Vec<Odd> = (0..g.kinds.len())
        .filter(|&v| g.kinds[v] == NodeKind::Omega)
        .map(Odd::Omega)
        .collect();
    word.extend((0..g.edges.len()).filter(|&e| g.is_odd_edge(e)).map(Odd::Edge));
    g.word = word;
    g
}

fn distribute(
    degrees: &[usize],
    totals: (usize, usize, usize),
    v: usize,
    current: &mut Vec<(usize, usize, usize)>,
    out: &mut Vec<Vec<(usize, usize, usize)>>,
) {
    if v == degrees.len() {
        if totals == (0, 0, 0) {
            out.push(current.clone());
        }
        return;
    }
    let (te, tw, tm) = totals;
    for e in 0..=te.min(1) {
        for w in 0..=tw {
            for m in 0..=tm {
                if degrees[v] + e + w + m < 3 {
                    continue;
                }
                current.push((e, w, m));
                distribute(degrees, (te - e, tw - w, tm - m), v + 1, current, out);
                current.pop();
            }
        }
    }
}

fn push_if_nonzero(g: &BlownUpGraph, seen: &mut BTreeSet<ComponentCode>) {
    if let Ok(Canonical::Form { key, .. }) = canonicalize(g) {
        if key.0.len() == 1 {
            seen.insert(key.0.into_iter().next().expect("one component"));
        }
    }
}

/// Keeps one representative per uncolored shape among the graphs that do
/// not vanish with pairwise distinct marking colors. A coloring that merges
/// colors only adds automorphisms, so these are all the shapes that can
/// carry a nonvanishing coloring.
fn push_shape(g: &BlownUpGraph, seen: &mut BTreeMap<Vec<u32>, ComponentCode>) {
    let code = shape_code(g);
    if seen.contains_key(&code) {
        return;
    }
    if let Ok(Canonical::Form { key, .. }) = canonicalize(g) {
        if key.0.len() == 1 {
            seen.insert(code, key.0.into_iter().next().expect("one component"));
        }
    }
}

/// All connected component shapes with excess at most `max_excess` that
/// are nonzero for some coloring of the markings. Each shape is represented
/// with pairwise distinct marking colors `0, 1, ...`; use [`colorings`] to
/// recolor. Sorted by code.
pub fn component_shapes(max_excess: usize) -> Arc<Vec<Component>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Component>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().expect("catalog cache").get(&max_excess) {
        return c.clone();
    }
    let shapes = Arc::new(build_shapes(max_excess));
    cache
        .lock()
        .expect("catalog cache")
        .insert(max_excess, shapes.clone());
    shapes
}

fn build_shapes(max_excess: usize) -> Vec<Component> {
    let budget = max_excess + 3;
    let mut seen: BTreeMap<Vec<u32>, ComponentCode> = BTreeMap::new();
    // Bare components: a leg at the special vertex or a loop there.
    use NodeKind::*;
    for pair in [[Omega, Mark(0)], [Eps, Mark(0)], [Omega, Eps], [Eps, Eps], [Omega, Omega]] {
        push_shape(&with_default_word(pair.to_vec(), vec![[0, 1]]), &mut seen);
    }
    for h in 0..=budget / 3 {
        for ne in 0..=(budget - 3 * h) / 3 {
            for nw in 0..=budget - 3 * h - 3 * ne {
                for nm in 0..=(budget - 3 * h - 3 * ne - nw) / 2 {
                    if ne + nw == 0 {
                        continue;
                    }
                    let legs = ne + nw + nm;
                    let kmax = (legs + 2 * h).saturating_sub(2);
                    for k in 1..=kmax {
                        for sk in skeletons(k, h) {
                            let mut degrees = vec![0; k];
                            for &[a, b] in &sk {
                                degrees[a] += 1;
                                degrees[b] += 1;
                            }
                            let mut dists = Vec::new();
                            distribute(&degrees, (ne, nw, nm), 0, &mut Vec::new(), &mut dists);
                            for d in dists {
                                push_shape(&attach_legs(k, &sk, &d), &mut seen);
                            }
                        }
                    }
                }
            }
        }
    }
    let mut out: Vec<Component> = seen
        .into_values()
        .map(|c| Component::from_code(c).expect("catalog component"))
        .filter(|c| c.excess() <= max_excess as i64)
        .collect();
    out.sort_by(|a, b| a.code.cmp(&b.code));
    out
}

/// Recolors the markings of `shape` in every way compatible with the
/// available color counts; returns the distinct nonvanishing results.
pub fn colorings(shape: &Component, available: &[usize]) -> Vec<Component> {
    let g = shape.code.to_graph();
    let marks: Vec<usize> = (0..g.kinds.len()).filter(|&v| g.kinds[v].is_mark()).collect();
    let mut out: BTreeSet<ComponentCode> = BTreeSet::new();
    let mut counts = vec![0usize; available.len()];
    fn rec(
        g: &BlownUpGraph,
        marks: &[usize],
        i: usize,
        available: &[usize],
        counts: &mut Vec<usize>,
        current: &mut BlownUpGraph,
        out: &mut BTreeSet<ComponentCode>,
    ) {
        if i == marks.len() {
            push_if_nonzero(current, out);
            return;
        }
        for c in 0..available.len() {
            if counts[c] < available[c] {
                counts[c] += 1;
                current.kinds[marks[i]] = NodeKind::Mark(c as u16);
                rec(g, marks, i + 1, available, counts, current, out);
                counts[c] -= 1;
            }
        }
    }
    let mut current = g.clone();
    rec(&g, &marks, 0, available, &mut counts, &mut current, &mut out);
    out.into_iter()
        .map(|c| Component::from_code(c).expect("colored component"))
        .collect()
}
