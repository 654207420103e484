//! Generators of the commutative graph complex: connected graphs without
//! self-loops, all valences at least three, edges odd.
//!
//! Generation: every loopless multigraph arises by vertex splitting from
//! one whose edges all have multiplicity at least two (contracting a simple
//! edge never creates a self-loop), so the closure of those seeds under
//! splitting contains every graph. Graphs with parallel edges vanish.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::canon::{canonical_form, LabeledGraph};
use crate::catalog::with_default_word;
use crate::graph::{canonicalize, Canonical, GraphKey, NodeKind};
use crate::GraphError;

/// Largest loop order for which generation is attempted.
pub const GC0_MAX_LOOP_ORDER: usize = 6;

/// A multigraph as `(a, b) -> multiplicity` with `a < b`.
pub type Multi = BTreeMap<(usize, usize), u32>;

fn to_labeled(k: usize, g: &Multi) -> LabeledGraph {
    let mut lg = LabeledGraph::new(vec![0; k]);
    for (&(a, b), &m) in g {
        for _ in 0..m {
            lg.add_edge(a, b);
        }
    }
    lg
}

fn canonical_multi(k: usize, g: &Multi) -> (Vec<u32>, Multi) {
    let lg = to_labeled(k, g);
    let c = canonical_form(&lg);
    let perm = &c.optimal[0];
    let mut out = Multi::new();
    for (&(a, b), &m) in g {
        let (x, y) = (perm[a], perm[b]);
        out.insert((x.min(y), x.max(y)), m);
    }
    (c.code, out)
}

/// Connected simple graphs on `k` vertices with `e` edges, as edge lists
/// (brute force over edge subsets; only used for tiny seeds).
fn connected_simple(k: usize, e: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(
        pairs: &[(usize, usize)],
        i: usize,
        left: usize,
        k: usize,
        chosen: &mut Vec<(usize, usize)>,
        seen: &mut BTreeSet<Vec<u32>>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if left == 0 {
            let g: Multi = chosen.iter().map(|&p| (p, 1)).collect();
            if is_connected(k, &g) && seen.insert(canonical_multi(k, &g).0) {
                out.push(chosen.clone());
            }
            return;
        }
        if pairs.len() - i < left {
            return;
        }
        chosen.push(pairs[i]);
        rec(pairs, i + 1, left - 1, k, chosen, seen, out);
        chosen.pop();
        rec(pairs, i + 1, left, k, chosen, seen, out);
    }
    rec(&pairs, 0, e, k, &mut chosen, &mut seen, &mut out);
    out
}

fn is_connected(k: usize, g: &Multi) -> bool {
    let mut seen = vec![false; k];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in g.keys() {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn degrees(k: usize, g: &Multi) -> Vec<u32> {
    let mut d = vec![0; k];
    for (&(a, b), &m) in g {
        d[a] += m;
        d[b] += m;
    }
    d
}

fn seeds(loop_order: usize) -> Vec<(usize, Multi)> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for k in 2..=loop_order + 1 {
        let total = k + loop_order - 1;
        for e in k - 1..=total / 2 {
            for edges in connected_simple(k, e) {
                let extra = total - 2 * e;
                let mut mult = vec![2u32; e];
                distribute_extra(&mut mult, 0, extra as u32, &mut |m| {
                    let g: Multi = edges.iter().copied().zip(m.iter().copied()).collect();
                    if degrees(k, &g).iter().all(|&d| d >= 3) {
                        let (code, canon) = canonical_multi(k, &g);
                        if seen.insert((k, code)) {
                            out.push((k, canon));
                        }
                    }
                });
            }
        }
    }
    out
}

fn distribute_extra(mult: &mut Vec<u32>, i: usize, left: u32, f: &mut impl FnMut(&[u32])) {
    if i + 1 == mult.len() {
        mult[i] += left;
        f(mult);
        mult[i] -= left;
        return;
    }
    for x in 0..=left {
        mult[i] += x;
        distribute_extra(mult, i + 1, left - x, f);
        mult[i] -= x;
    }
}

/// All splittings of vertex `v`: its half-edges are divided between `v`
/// and a new vertex `k`, each side keeping at least two, joined by a new
/// edge.
fn splits(k: usize, g: &Multi, v: usize) -> Vec<Multi> {
    let incident: Vec<((usize, usize), usize, u32)> = g
        .iter()
        .filter_map(|(&(a, b), &m)| {
            if a == v {
                Some(((a, b), b, m))
            } else if b == v {
                Some(((a, b), a, m))
            } else {
                None
            }
        })
        .collect();
    let deg: u32 = incident.iter().map(|x| x.2).sum();
    let mut out = Vec::new();
    let mut moved = vec![0u32; incident.len()];
    loop {
        let t: u32 = moved.iter().sum();
        if t >= 2 && deg - t >= 2 {
            let mut h = g.clone();
            for (i, &(key, other, _)) in incident.iter().enumerate() {
                if moved[i] == 0 {
                    continue;
                }
                let e = h.get_mut(&key).expect("edge");
                *e -= moved[i];
                if *e == 0 {
                    h.remove(&key);
                }
                *h.entry((other.min(k), other.max(k))).or_default() += moved[i];
            }
            *h.entry((v, k)).or_default() += 1;
            out.push(h);
        }
        let mut i = 0;
        loop {
            if i == incident.len() {
                return out;
            }
            if moved[i] < incident[i].2 {
                moved[i] += 1;
                break;
            }
            moved[i] = 0;
            i += 1;
        }
    }
}

/// Every loopless connected multigraph of the given loop order with all
/// valences at least three, grouped by vertex count (canonical forms).
pub fn gc0_multigraphs(loop_order: usize) -> Result<Vec<Vec<Multi>>, GraphError> {
    if loop_order > GC0_MAX_LOOP_ORDER {
        return Err(GraphError::Unsupported(format!(
            "loop order {loop_order} exceeds the supported bound {GC0_MAX_LOOP_ORDER}"
        )));
    }
    if loop_order < 2 {
        return Ok(Vec::new());
    }
    let max_vertices = 2 * loop_order - 2;
    let mut by_k: Vec<BTreeMap<Vec<u32>, Multi>> = vec![BTreeMap::new(); max_vertices + 1];
    for (k, g) in seeds(loop_order).into_iter().filter(|s| s.0 <= max_vertices) {
        let code = canonical_multi(k, &g).0;
        by_k[k].insert(code, g);
    }
    for k in 2..max_vertices {
        let current: Vec<Multi> = by_k[k].values().cloned().collect();
        let found: Vec<(Vec<u32>, Multi)> = current
            .par_iter()
            .flat_map_iter(|g| {
                (0..k)
                    .flat_map(|v| splits(k, g, v))
                    .map(|h| canonical_multi(k + 1, &h))
                    .collect::<Vec<_>>()
            })
            .collect();
        for (code, h) in found {
            by_k[k + 1].entry(code).or_insert(h);
        }
    }
    Ok(by_k
        .into_iter()
        .map(|m| m.into_values().collect())
        .collect())
}

/// Nonvanishing generators (simple graphs) of the given loop order, as
/// keys, grouped by edge count (the cohomological degree).
pub fn gc0_generators(loop_order: usize) -> Result<BTreeMap<usize, Vec<GraphKey>>, GraphError> {
    let mut out: BTreeMap<usize, Vec<GraphKey>> = BTreeMap::new();
    for (k, graphs) in gc0_multigraphs(loop_order)?.into_iter().enumerate() {
        for g in graphs {
            if g.values().any(|&m| m > 1) {
                continue;
            }
            let edges: Vec<[usize; 2]> = g.keys().map(|&(a, b)| [a, b]).collect();
            let bg = with_default_word(vec![NodeKind::Internal; k], edges);
            if let Canonical::Form { key, .. } = canonicalize(&bg)? {
                out.entry(bg.edges.len()).or_default().push(key);
            }
        }
    }
    for keys in out.values_mut() {
        keys.sort();
    }
    Ok(out)
}
