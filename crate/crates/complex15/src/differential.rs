//! The differential on blown-up graphs: splitting internal vertices,
//! splitting the special vertex, and turning an `ω` leg into an `ε` leg.
//!
//! Conventions: a split puts the new edge at the front of the word. A split
//! of the special vertex moves a set of its half-edges (legs) to a new
//! genus-0 vertex; if exactly one moved leg is `ω`, the mark passes to the
//! new edge's half-edge at the special vertex and keeps its word position,
//! and moving two or more `ω` legs gives zero. Turning the `ω` at word
//! position `p` into `ε` carries the sign `(-1)^p`.

use graphcore::{BlownUpGraph, NodeKind, Odd};

/// Terms of the differential of `g`, before canonicalization. Each term is
/// a graph with an orientation word and a sign.
pub fn raw_differential(g: &BlownUpGraph) -> Vec<(BlownUpGraph, i64)> {
    let mut out = omega_terms(g);
    out.extend(internal_splits(g));
    out.extend(special_splits(g));
    out
}

/// The `ω -> ε` terms.
pub fn omega_terms(g: &BlownUpGraph) -> Vec<(BlownUpGraph, i64)> {
    let mut out = Vec::new();
    for (p, &o) in g.word.iter().enumerate() {
        if let Odd::Omega(v) = o {
            let mut h = g.clone();
            h.kinds[v] = NodeKind::Eps;
            h.word.remove(p);
            out.push((h, if p % 2 == 0 { 1 } else { -1 }));
        }
    }
    out
}

fn push_front_edge(h: &mut BlownUpGraph, a: usize, b: usize) {
    h.edges.push([a, b]);
    h.word.insert(0, Odd::Edge(h.edges.len() - 1));
}

/// Splits of internal vertices into two vertices of valence at least three.
pub fn internal_splits(g: &BlownUpGraph) -> Vec<(BlownUpGraph, i64)> {
    let mut out = Vec::new();
    for x in 0..g.kinds.len() {
        if g.kinds[x] != NodeKind::Internal {
            continue;
        }
        let inc: Vec<usize> = (0..g.edges.len())
            .filter(|&e| g.edges[e].contains(&x))
            .collect();
        let d = inc.len();
        if d < 4 {
            continue;
        }
        // The first incident edge stays at x, so each unordered split
        // appears once.
        for mask in 0u64..(1 << (d - 1)) {
            let moved = mask.count_ones() as usize;
            if moved < 2 || d - moved < 2 {
                continue;
            }
            let mut h = g.clone();
            let y = h.kinds.len();
            h.kinds.push(NodeKind::Internal);
            for (i, &e) in inc[1..].iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for end in h.edges[e].iter_mut() {
                        if *end == x {
                            *end = y;
                        }
                    }
                }
            }
            push_front_edge(&mut h, x, y);
            out.push((h, 1));
        }
    }
    out
}

/// Drops the nodes flagged in `dead`, renumbering the rest.
fn compact(g: &BlownUpGraph, dead: &[bool]) -> BlownUpGraph {
    let mut map = vec![usize::MAX; g.kinds.len()];
    let mut kinds = Vec::new();
    for (v, &k) in g.kinds.iter().enumerate() {
        if !dead[v] {
            map[v] = kinds.len();
            kinds.push(k);
        }
    }
    let edges = g.edges.iter().map(|&[a, b]| [map[a], map[b]]).collect();
    let word = g
        .word
        .iter()
        .map(|&o| match o {
            Odd::Omega(v) => Odd::Omega(map[v]),
            e => e,
        })
        .collect();
    BlownUpGraph { kinds, edges, word }
}

/// Splits of the special vertex: a set `S` of at least two legs moves to a
/// new genus-0 vertex joined to the special vertex by a new edge.
pub fn special_splits(g: &BlownUpGraph) -> Vec<(BlownUpGraph, i64)> {
    let eps: Vec<usize> = (0..g.kinds.len()).filter(|&v| g.kinds[v] == NodeKind::Eps).collect();
    let omegas: Vec<usize> = (0..g.kinds.len()).filter(|&v| g.kinds[v] == NodeKind::Omega).collect();
    let edge_of = |v: usize| {
        (0..g.edges.len())
            .find(|&e| g.edges[e].contains(&v))
            .expect("legs have one edge")
    };
    let mut out = Vec::new();
    let choices = std::iter::once(None).chain(omegas.iter().copied().map(Some));
    for omega in choices {
        for mask in 0u64..(1 << eps.len()) {
            let mut set: Vec<usize> = (0..eps.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| eps[i])
                .collect();
            set.extend(omega);
            if set.len() < 2 {
                continue;
            }
            // Both ends of a loop at the special vertex would give a
            // self-loop at the new vertex.
            let self_loop = set.iter().any(|&l| {
                let [a, b] = g.edges[edge_of(l)];
                let other = if a == l { b } else { a };
                set.contains(&other)
            });
            if self_loop {
                continue;
            }
            let mut h = g.clone();
            let y = h.kinds.len();
            h.kinds.push(NodeKind::Internal);
            let leg = h.kinds.len();
            h.kinds.push(if omega.is_some() { NodeKind::Omega } else { NodeKind::Eps });
            let mut dead = vec![false; h.kinds.len()];
            for &l in &set {
                let e = edge_of(l);
                for end in h.edges[e].iter_mut() {
                    if *end == l {
                        *end = y;
                    }
                }
                dead[l] = true;
            }
            if let Some(w) = omega {
                for o in h.word.iter_mut() {
                    if *o == Odd::Omega(w) {
                        *o = Odd::Omega(leg);
                    }
                }
            }
            push_front_edge(&mut h, y, leg);
            out.push((compact(&h, &dead), 1));
        }
    }
    out
}
