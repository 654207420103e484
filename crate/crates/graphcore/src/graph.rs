//! Blown-up graphs: the special vertex is deleted and its half-edges become
//! `ω` (marked) or `ε` (unmarked) legs.
//!
//! A graph is stored as a simple "node graph". Internal vertices, `ω`/`ε`
//! legs and marking legs are all nodes; leg nodes have exactly one neighbor.
//! A marking attached to the special vertex is a leg node joined to a
//! marking node, and a loop at the special vertex is two leg nodes joined
//! to each other.
//!
//! Odd elements are the edges of the underlying stable graph (every node
//! graph edge not touching a marking) and the `ω` legs. The orientation is
//! an ordering of the odd elements, the word.

use std::collections::BTreeMap;
use std::fmt;

use crate::canon::{canonical_form, permutation_parity, LabeledGraph};
use crate::GraphError;

/// Node kinds; markings carry a color so that several markings may be
/// interchangeable (coinvariants of a Young subgroup).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Internal,
    Omega,
    Eps,
    Mark(u16),
}

impl NodeKind {
    pub fn code(self) -> u32 {
        match self {
            NodeKind::Internal => 0,
            NodeKind::Omega => 1,
            NodeKind::Eps => 2,
            NodeKind::Mark(c) => 3 + c as u32,
        }
    }

    pub fn from_code(c: u32) -> NodeKind {
        match c {
            0 => NodeKind::Internal,
            1 => NodeKind::Omega,
            2 => NodeKind::Eps,
            c => NodeKind::Mark((c - 3) as u16),
        }
    }

    pub fn is_leg(self) -> bool {
        matches!(self, NodeKind::Omega | NodeKind::Eps)
    }

    pub fn is_mark(self) -> bool {
        matches!(self, NodeKind::Mark(_))
    }
}

/// An odd element of the orientation word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Odd {
    /// Index into the edge list.
    Edge(usize),
    /// Index of an `ω` node.
    Omega(usize),
}

/// A blown-up graph with an orientation word. Self-loops at internal
/// vertices and parallel edges may be represented; both make the
/// generator vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlownUpGraph {
    pub kinds: Vec<NodeKind>,
    pub edges: Vec<[usize; 2]>,
    pub word: Vec<Odd>,
}

impl BlownUpGraph {
    /// Whether edge `e` is odd, i.e. does not end at a marking node.
    pub fn is_odd_edge(&self, e: usize) -> bool {
        let [a, b] = self.edges[e];
        !self.kinds[a].is_mark() && !self.kinds[b].is_mark()
    }

    pub fn degree_of(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&[a, b]| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    pub fn count(&self, kind: NodeKind) -> usize {
        self.kinds.iter().filter(|&&k| k == kind).count()
    }

    pub fn omega_count(&self) -> usize {
        self.count(NodeKind::Omega)
    }

    pub fn eps_count(&self) -> usize {
        self.count(NodeKind::Eps)
    }

    pub fn mark_count(&self) -> usize {
        self.kinds.iter().filter(|k| k.is_mark()).count()
    }

    /// Number of edges of the underlying stable graph.
    pub fn odd_edge_count(&self) -> usize {
        (0..self.edges.len()).filter(|&e| self.is_odd_edge(e)).count()
    }

    /// Genus of the stable graph: one for the special vertex plus its first
    /// Betti number once all legs are glued back to the special vertex.
    pub fn genus(&self) -> usize {
        // b1 = E - V + 1 with V = internal vertices plus the special one.
        1 + self.odd_edge_count() - self.count(NodeKind::Internal)
    }

    /// Checks the structural invariants: leg and marking nodes have exactly
    /// one neighbor, markings are not joined to each other, edges are in
    /// range, the word lists every odd element exactly once.
    pub fn validate(&self) -> Result<(), GraphError> {
        let n = self.kinds.len();
        for &[a, b] in &self.edges {
            if a >= n || b >= n {
                return Err(GraphError::Malformed("edge endpoint out of range".into()));
            }
            if self.kinds[a].is_mark() && self.kinds[b].is_mark() {
                return Err(GraphError::Malformed("two markings joined".into()));
            }
            if a == b && !matches!(self.kinds[a], NodeKind::Internal) {
                return Err(GraphError::Malformed("loop at a leg node".into()));
            }
        }
        for v in 0..n {
            let d = self.degree_of(v);
            if self.kinds[v] != NodeKind::Internal && d != 1 {
                return Err(GraphError::Malformed(format!(
                    "leg node {v} has {d} neighbors"
                )));
            }
        }
        let mut seen_e = vec![false; self.edges.len()];
        let mut seen_o = vec![false; n];
        for &o in &self.word {
            match o {
                Odd::Edge(e) => {
                    if e >= self.edges.len() || !self.is_odd_edge(e) || seen_e[e] {
                        return Err(GraphError::Malformed("bad edge in word".into()));
                    }
                    seen_e[e] = true;
                }
                Odd::Omega(v) => {
                    if v >= n || self.kinds[v] != NodeKind::Omega || seen_o[v] {
                        return Err(GraphError::Malformed("bad omega in word".into()));
                    }
                    seen_o[v] = true;
                }
            }
        }
        let odd = self.odd_edge_count() + self.omega_count();
        if self.word.len() != odd {
            return Err(GraphError::Malformed("word misses odd elements".into()));
        }
        Ok(())
    }

    /// Whether every internal vertex has valence at least three.
    pub fn is_stable(&self) -> bool {
        (0..self.kinds.len())
            .all(|v| self.kinds[v] != NodeKind::Internal || self.degree_of(v) >= 3)
    }

    /// Connected components of the node graph, as sorted node lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.kinds.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for &[a, b] in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }

    /// Relabels nodes by `perm` (old -> new) and edges by `edge_perm`
    /// (old -> new), keeping the same orientation word.
    pub fn relabeled(&self, perm: &[usize], edge_perm: &[usize]) -> BlownUpGraph {
        let mut kinds = vec![NodeKind::Internal; self.kinds.len()];
        for (v, &k) in self.kinds.iter().enumerate() {
            kinds[perm[v]] = k;
        }
        let mut edges = vec![[0, 0]; self.edges.len()];
        for (e, &[a, b]) in self.edges.iter().enumerate() {
            edges[edge_perm[e]] = [perm[a], perm[b]];
        }
        let word = self
            .word
            .iter()
            .map(|&o| match o {
                Odd::Edge(e) => Odd::Edge(edge_perm[e]),
                Odd::Omega(v) => Odd::Omega(perm[v]),
            })
            .collect();
        BlownUpGraph { kinds, edges, word }
    }
}

/// Canonical code of one connected component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentCode(pub Vec<u32>);

impl ComponentCode {
    pub fn node_count(&self) -> usize {
        self.0[0] as usize
    }

    pub fn kinds(&self) -> impl Iterator<Item = NodeKind> + '_ {
        let n = self.node_count();
        self.0[1..1 + n].iter().map(|&c| NodeKind::from_code(c))
    }

    pub fn edges(&self) -> impl Iterator<Item = [usize; 2]> + '_ {
        let n = self.node_count();
        self.0[1 + n..]
            .chunks(3)
            .map(|c| [c[0] as usize, c[1] as usize])
    }

    /// Decodes into a graph whose word is the canonical word.
    pub fn to_graph(&self) -> BlownUpGraph {
        let kinds: Vec<NodeKind> = self.kinds().collect();
        let edges: Vec<[usize; 2]> = self.edges().collect();
        let mut g = BlownUpGraph {
            kinds,
            edges,
            word: Vec::new(),
        };
        g.word = canonical_word(&g);
        g
    }

    /// Number of odd elements.
    pub fn odd_count(&self) -> usize {
        let kinds: Vec<NodeKind> = self.kinds().collect();
        let omegas = kinds.iter().filter(|&&k| k == NodeKind::Omega).count();
        let odd_edges = self
            .edges()
            .filter(|&[a, b]| !kinds[a].is_mark() && !kinds[b].is_mark())
            .count();
        omegas + odd_edges
    }
}

/// The word of a graph given in canonical labels: `ω` nodes by index, then
/// odd edges in the (sorted) edge order.
fn canonical_word(g: &BlownUpGraph) -> Vec<Odd> {
    let mut word: Vec<Odd> = (0..g.kinds.len())
        .filter(|&v| g.kinds[v] == NodeKind::Omega)
        .map(Odd::Omega)
        .collect();
    word.extend((0..g.edges.len()).filter(|&e| g.is_odd_edge(e)).map(Odd::Edge));
    word
}

/// Canonical key of a whole graph: the sorted component codes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphKey(pub Vec<ComponentCode>);

impl GraphKey {
    /// The graph with canonical word: components concatenated in key order.
    pub fn to_graph(&self) -> BlownUpGraph {
        let mut out = BlownUpGraph {
            kinds: Vec::new(),
            edges: Vec::new(),
            word: Vec::new(),
        };
        for c in &self.0 {
            let g = c.to_graph();
            let (nv, ne) = (out.kinds.len(), out.edges.len());
            out.kinds.extend(g.kinds);
            out.edges
                .extend(g.edges.iter().map(|&[a, b]| [a + nv, b + nv]));
            out.word.extend(g.word.iter().map(|&o| match o {
                Odd::Edge(e) => Odd::Edge(e + ne),
                Odd::Omega(v) => Odd::Omega(v + nv),
            }));
        }
        out
    }

    /// One-line text encoding: components separated by `|`; each lists its
    /// node kinds (`v` internal, `w` omega, `e` eps, `m<c>` marking of color
    /// c) and its edges `a-b`. The canonical word is implied by the encoding.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(s: &str) -> Result<GraphKey, GraphError> {
        let bad = || GraphError::Malformed(format!("cannot parse graph key {s:?}"));
        if s.is_empty() {
            return Ok(GraphKey(Vec::new()));
        }
        let mut comps = Vec::new();
        for part in s.split('|') {
            let (nodes, edges) = part.split_once(':').ok_or_else(bad)?;
            let mut code = Vec::new();
            let kinds: Vec<u32> = nodes
                .split(',')
                .filter(|t| !t.is_empty())
                .map(|t| match t {
                    "v" => Ok(0),
                    "w" => Ok(1),
                    "e" => Ok(2),
                    t => t
                        .strip_prefix('m')
                        .and_then(|c| c.parse::<u32>().ok())
                        .map(|c| c + 3)
                        .ok_or_else(bad),
                })
                .collect::<Result<_, _>>()?;
            code.push(kinds.len() as u32);
            code.extend(kinds);
            for t in edges.split(',').filter(|t| !t.is_empty()) {
                let (a, b) = t.split_once('-').ok_or_else(bad)?;
                code.push(a.parse().map_err(|_| bad())?);
                code.push(b.parse().map_err(|_| bad())?);
                code.push(1);
            }
            comps.push(ComponentCode(code));
        }
        Ok(GraphKey(comps))
    }
}

impl fmt::Display for GraphKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            let kinds: Vec<String> = c
                .kinds()
                .map(|k| match k {
                    NodeKind::Internal => "v".to_string(),
                    NodeKind::Omega => "w".to_string(),
                    NodeKind::Eps => "e".to_string(),
                    NodeKind::Mark(c) => format!("m{c}"),
                })
                .collect();
            let edges: Vec<String> = c.edges().map(|[a, b]| format!("{a}-{b}")).collect();
            write!(f, "{}:{}", kinds.join(","), edges.join(","))?;
        }
        Ok(())
    }
}

/// Outcome of canonicalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Canonical {
    /// The generator vanishes: an automorphism reverses the orientation,
    /// or the graph has a self-loop or parallel edges.
    Zero,
    /// The canonical key and the sign relating the input word to the
    /// canonical word.
    Form { key: GraphKey, sign: i8 },
}

impl Canonical {
    pub fn sign(&self) -> i8 {
        match self {
            Canonical::Zero => 0,
            Canonical::Form { sign, .. } => *sign,
        }
    }
}

struct CanonComponent {
    code: ComponentCode,
    /// Canonical position (within the component) of each local odd element,
    /// keyed by its global identity.
    positions: Vec<(Odd, usize)>,
    odd_count: usize,
}

fn canonical_component(g: &BlownUpGraph, nodes: &[usize]) -> Option<CanonComponent> {
    let mut local = vec![usize::MAX; g.kinds.len()];
    for (i, &v) in nodes.iter().enumerate() {
        local[v] = i;
    }
    let mut lg = LabeledGraph::new(nodes.iter().map(|&v| g.kinds[v].code()).collect());
    let mut comp_edges = Vec::new();
    for (e, &[a, b]) in g.edges.iter().enumerate() {
        if local[a] == usize::MAX {
            continue;
        }
        if a == b {
            return None;
        }
        comp_edges.push(e);
        lg.add_edge(local[a], local[b]);
    }
    if lg.adj.iter().any(|row| row.iter().any(|&(_, m)| m > 1)) {
        return None;
    }
    let canon = canonical_form(&lg);
    // Odd elements of this component in word order.
    let odd: Vec<Odd> = g
        .word
        .iter()
        .copied()
        .filter(|&o| match o {
            Odd::Edge(e) => local[g.edges[e][0]] != usize::MAX,
            Odd::Omega(v) => local[v] != usize::MAX,
        })
        .collect();
    let key_of = |perm: &[usize], o: Odd| -> (u8, usize, usize) {
        match o {
            Odd::Omega(v) => (0, perm[local[v]], 0),
            Odd::Edge(e) => {
                let [a, b] = g.edges[e];
                let (x, y) = (perm[local[a]], perm[local[b]]);
                (1, x.min(y), x.max(y))
            }
        }
    };
    let ranks_under = |perm: &[usize]| -> Vec<usize> {
        let keys: Vec<_> = odd.iter().map(|&o| key_of(perm, o)).collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        keys.iter()
            .map(|k| sorted.binary_search(k).expect("key present"))
            .collect()
    };
    let first = ranks_under(&canon.optimal[0]);
    let parity = permutation_parity(&first);
    for perm in &canon.optimal[1..] {
        if permutation_parity(&ranks_under(perm)) != parity {
            return None;
        }
    }
    // Twin leaves are never branched on, so their swaps are checked
    // directly. Swapping two degree-one nodes of the same kind on one
    // neighbor transposes their edges (odd unless they end at markings) and,
    // for `ω` legs, the two `ω` nodes.
    let mut twins: BTreeMap<(usize, NodeKind), usize> = BTreeMap::new();
    for &v in nodes {
        let inc: Vec<usize> = comp_edges
            .iter()
            .copied()
            .filter(|&e| g.edges[e].contains(&v))
            .collect();
        if let [e] = inc[..] {
            let [a, b] = g.edges[e];
            let hub = if a == v { b } else { a };
            if g.degree_of(hub) > 1 {
                *twins.entry((hub, g.kinds[v])).or_default() += 1;
            }
        }
    }
    for (&(_, kind), &count) in &twins {
        let odd_swap = !kind.is_mark() != (kind == NodeKind::Omega);
        if count >= 2 && odd_swap {
            return None;
        }
    }
    Some(CanonComponent {
        code: ComponentCode(canon.code),
        odd_count: odd.len(),
        positions: odd.into_iter().zip(first).collect(),
    })
}

/// Canonical form and sign of a blown-up graph. Only structural problems
/// are errors; vanishing generators return [`Canonical::Zero`].
pub fn canonicalize(g: &BlownUpGraph) -> Result<Canonical, GraphError> {
    g.validate()?;
    let mut comps = Vec::new();
    for nodes in g.components() {
        match canonical_component(g, &nodes) {
            Some(c) => comps.push(c),
            None => return Ok(Canonical::Zero),
        }
    }
    comps.sort_by(|a, b| a.code.cmp(&b.code));
    for pair in comps.windows(2) {
        if pair[0].code == pair[1].code && pair[0].odd_count % 2 == 1 {
            return Ok(Canonical::Zero);
        }
    }
    let mut global: BTreeMap<Odd, usize> = BTreeMap::new();
    let mut offset = 0;
    for c in &comps {
        for &(o, p) in &c.positions {
            global.insert(o, offset + p);
        }
        offset += c.odd_count;
    }
    let seq: Vec<usize> = g.word.iter().map(|o| global[o]).collect();
    let sign = if permutation_parity(&seq) { -1 } else { 1 };
    Ok(Canonical::Form {
        key: GraphKey(comps.into_iter().map(|c| c.code).collect()),
        sign,
    })
}
