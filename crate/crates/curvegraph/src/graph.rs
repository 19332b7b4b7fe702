//! Finite simplicial graphs: the catalog graphs, predicates, and the
//! induced-subgraph search.
//!
//! A [`Graph`] is immutable after construction. Vertices keep their declared
//! order, which all searches iterate in, so every operation in this module is
//! deterministic.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("loop edge at `{0}`")]
    LoopEdge(String),
    #[error("edge endpoint `{0}` is not a declared vertex")]
    UndeclaredEndpoint(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("lambda(n) requires n >= 4, got {0}")]
    LambdaTooSmall(usize),
    #[error("unknown catalog graph `{0}`")]
    UnknownCatalog(String),
    #[error("eta fact {bound} for `{graph}` is below its clique number {clique}")]
    EtaFactBelowClique {
        graph: String,
        bound: u64,
        clique: u64,
    },
}

/// Finite simplicial graph: labeled vertices, symmetric irreflexive adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, u32>,
    adj: Vec<BTreeSet<u32>>,
}

impl Graph {
    /// Builds a graph from declared vertices and unordered label pairs.
    /// Rejects duplicate labels, loops, and undeclared endpoints.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Graph, GraphError> {
        let mut labels = Vec::with_capacity(vertices.len());
        let mut index = HashMap::new();
        for v in vertices {
            let v = v.as_ref().to_owned();
            if index.contains_key(&v) {
                return Err(GraphError::DuplicateLabel(v));
            }
            index.insert(v.clone(), labels.len() as u32);
            labels.push(v);
        }
        let mut adj = vec![BTreeSet::new(); labels.len()];
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let ia = *index
                .get(a)
                .ok_or_else(|| GraphError::UndeclaredEndpoint(a.to_owned()))?;
            let ib = *index
                .get(b)
                .ok_or_else(|| GraphError::UndeclaredEndpoint(b.to_owned()))?;
            if ia == ib {
                return Err(GraphError::LoopEdge(a.to_owned()));
            }
            adj[ia as usize].insert(ib);
            adj[ib as usize].insert(ia);
        }
        Ok(Graph { labels, index, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: u32) -> &str {
        &self.labels[v as usize]
    }

    pub fn vertex(&self, label: &str) -> Result<u32, GraphError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(label.to_owned()))
    }

    pub fn adjacent(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].contains(&v)
    }

    pub fn neighbors(&self, v: u32) -> &BTreeSet<u32> {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    /// Edges as index pairs (u < v), sorted.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.vertex_count() as u32 {
            for &v in &self.adj[u as usize] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Same vertices, complemented adjacency. An involution.
    pub fn complement(&self) -> Graph {
        let n = self.vertex_count() as u32;
        let mut adj = vec![BTreeSet::new(); n as usize];
        for u in 0..n {
            for v in 0..n {
                if u != v && !self.adjacent(u, v) {
                    adj[u as usize].insert(v);
                }
            }
        }
        Graph {
            labels: self.labels.clone(),
            index: self.index.clone(),
            adj,
        }
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n <= 1 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u as usize] {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == n
    }

    /// True iff the complement is connected (single vertex counts connected).
    pub fn is_anti_connected(&self) -> bool {
        self.complement().is_connected()
    }

    /// Induced subgraph on the given vertices, keeping their relative order.
    pub fn induced(&self, verts: &[u32]) -> Graph {
        let labels: Vec<String> = verts.iter().map(|&v| self.labels[v as usize].clone()).collect();
        let mut edges = Vec::new();
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate() {
                if i < j && self.adjacent(u, v) {
                    edges.push((labels[i].clone(), labels[j].clone()));
                }
            }
        }
        let edge_refs: Vec<(String, String)> = edges;
        Graph::new(&labels, &edge_refs).expect("induced subgraph of a valid graph is valid")
    }

    /// Join of two graphs: disjoint union plus all cross edges. Colliding
    /// labels on the right side are deterministically suffixed with `#1`,
    /// `#2`, ... until unique.
    pub fn join(&self, other: &Graph) -> Graph {
        let mut labels = self.labels.clone();
        let mut taken: BTreeSet<String> = labels.iter().cloned().collect();
        let mut right_labels = Vec::with_capacity(other.vertex_count());
        for l in &other.labels {
            let mut candidate = l.clone();
            let mut k = 0;
            while taken.contains(&candidate) {
                k += 1;
                candidate = format!("{l}#{k}");
            }
            taken.insert(candidate.clone());
            right_labels.push(candidate);
        }
        labels.extend(right_labels.iter().cloned());

        let mut edges: Vec<(String, String)> = Vec::new();
        for (u, v) in self.edges() {
            edges.push((self.labels[u as usize].clone(), self.labels[v as usize].clone()));
        }
        for (u, v) in other.edges() {
            edges.push((right_labels[u as usize].clone(), right_labels[v as usize].clone()));
        }
        for l in &self.labels {
            for r in &right_labels {
                edges.push((l.clone(), r.clone()));
            }
        }
        Graph::new(&labels, &edges).expect("join of valid graphs is valid")
    }

    /// Exact maximum clique size by branch and bound.
    pub fn clique_number(&self) -> usize {
        let n = self.vertex_count();
        if n == 0 {
            return 0;
        }
        let mut best = 0;
        let mut current = Vec::new();
        let all: Vec<u32> = (0..n as u32).collect();
        self.clique_search(&all, &mut current, &mut best);
        best
    }

    fn clique_search(&self, candidates: &[u32], current: &mut Vec<u32>, best: &mut usize) {
        if current.len() > *best {
            *best = current.len();
        }
        if current.len() + candidates.len() <= *best {
            return;
        }
        for (i, &v) in candidates.iter().enumerate() {
            if current.len() + (candidates.len() - i) <= *best {
                break;
            }
            let next: Vec<u32> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&u| self.adjacent(u, v))
                .collect();
            current.push(v);
            self.clique_search(&next, current, best);
            current.pop();
        }
    }

    /// All maximal cliques (Bron–Kerbosch), each sorted, list sorted.
    pub fn clique_list(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let p: BTreeSet<u32> = (0..self.vertex_count() as u32).collect();
        self.bron_kerbosch(BTreeSet::new(), p, BTreeSet::new(), &mut out);
        out.sort();
        out
    }

    fn bron_kerbosch(
        &self,
        r: BTreeSet<u32>,
        mut p: BTreeSet<u32>,
        mut x: BTreeSet<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if p.is_empty() && x.is_empty() {
            out.push(r.iter().copied().collect());
            return;
        }
        while let Some(&v) = p.iter().next() {
            let nv = &self.adj[v as usize];
            let mut r2 = r.clone();
            r2.insert(v);
            let p2: BTreeSet<u32> = p.intersection(nv).copied().collect();
            let x2: BTreeSet<u32> = x.intersection(nv).copied().collect();
            self.bron_kerbosch(r2, p2, x2, out);
            p.remove(&v);
            x.insert(v);
        }
    }

    /// True iff every vertex link contains two vertex-disjoint cliques of
    /// size `n - 1`, i.e. the vertex lies in two size-`n` cliques meeting
    /// exactly at it.
    pub fn has_thick_stars(&self, n: usize) -> bool {
        assert!(n >= 1, "thick-star parameter must be at least 1");
        if n == 1 {
            return true;
        }
        let want = n - 1;
        (0..self.vertex_count() as u32).all(|v| {
            let link: Vec<u32> = self.adj[v as usize].iter().copied().collect();
            if link.len() < 2 * want {
                return false;
            }
            let cliques = self.cliques_of_size(&link, want);
            cliques.iter().enumerate().any(|(i, a)| {
                cliques[i + 1..]
                    .iter()
                    .any(|b| a.iter().all(|x| !b.contains(x)))
            })
        })
    }

    /// All cliques of exactly `size` within the given vertex set.
    fn cliques_of_size(&self, within: &[u32], size: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.size_clique_search(within, 0, size, &mut current, &mut out);
        out
    }

    fn size_clique_search(
        &self,
        within: &[u32],
        from: usize,
        size: usize,
        current: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in from..within.len() {
            let v = within[i];
            if within.len() - i < size - current.len() {
                break;
            }
            if current.iter().all(|&u| self.adjacent(u, v)) {
                current.push(v);
                self.size_clique_search(within, i + 1, size, current, out);
                current.pop();
            }
        }
    }

    /// JSON form per the module interface: vertices in declared order, edges
    /// endpoint-sorted and list-sorted by label.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&GraphFile::from(self)).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Graph, GraphError> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| GraphError::UnknownCatalog(e.to_string()))?;
        file.try_into()
    }

    /// DOT export for visualization.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph {name} {{");
        for l in &self.labels {
            let _ = writeln!(s, "  \"{l}\";");
        }
        for (u, v) in self.edges() {
            let mut a = self.labels[u as usize].as_str();
            let mut b = self.labels[v as usize].as_str();
            if a > b {
                std::mem::swap(&mut a, &mut b);
            }
            let _ = writeln!(s, "  \"{a}\" -- \"{b}\";");
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

impl From<&Graph> for GraphFile {
    fn from(g: &Graph) -> Self {
        let mut edges: Vec<(String, String)> = g
            .edges()
            .into_iter()
            .map(|(u, v)| {
                let a = g.labels[u as usize].clone();
                let b = g.labels[v as usize].clone();
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        edges.sort();
        GraphFile {
            vertices: g.labels.clone(),
            edges,
        }
    }
}

impl TryFrom<GraphFile> for Graph {
    type Error = GraphError;
    fn try_from(f: GraphFile) -> Result<Graph, GraphError> {
        let edges: Vec<(&str, &str)> = f
            .edges
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        let verts: Vec<&str> = f.vertices.iter().map(|s| s.as_str()).collect();
        Graph::new(&verts, &edges)
    }
}

/// The named graphs used throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Catalog {
    C4,
    K(usize),
    P(usize),
    Gamma0,
    Gamma1 { ef: bool },
    Lambda(usize),
}

impl Catalog {
    /// Parses `c4`, `k5`, `p3`, `gamma0`, `gamma1`, `lambda6`. `gamma1`
    /// defaults to the variant without the e–f edge; callers with an
    /// `--ef` switch override it.
    pub fn parse(name: &str) -> Result<Catalog, GraphError> {
        let n = name.to_ascii_lowercase();
        if n == "c4" {
            return Ok(Catalog::C4);
        }
        if n == "gamma0" {
            return Ok(Catalog::Gamma0);
        }
        if n == "gamma1" {
            return Ok(Catalog::Gamma1 { ef: false });
        }
        if let Some(rest) = n.strip_prefix('k') {
            if let Ok(k) = rest.parse::<usize>() {
                return Ok(Catalog::K(k));
            }
        }
        if let Some(rest) = n.strip_prefix('p') {
            if let Ok(k) = rest.parse::<usize>() {
                return Ok(Catalog::P(k));
            }
        }
        if let Some(rest) = n.strip_prefix("lambda") {
            if let Ok(k) = rest.parse::<usize>() {
                return Ok(Catalog::Lambda(k));
            }
        }
        Err(GraphError::UnknownCatalog(name.to_owned()))
    }

    pub fn build(self) -> Result<Graph, GraphError> {
        match self {
            Catalog::C4 => Graph::new(
                &["a", "b", "c", "d"],
                &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
            ),
            Catalog::K(n) => {
                let labels: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
                let mut edges = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        edges.push((labels[i].clone(), labels[j].clone()));
                    }
                }
                Graph::new(&labels, &edges)
            }
            Catalog::P(n) => {
                let labels: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
                let edges: Vec<(String, String)> = (0..n.saturating_sub(1))
                    .map(|i| (labels[i].clone(), labels[i + 1].clone()))
                    .collect();
                Graph::new(&labels, &edges)
            }
            Catalog::Gamma0 => Graph::new(
                &["a", "b", "c", "d", "g", "h", "q"],
                &[
                    ("a", "b"),
                    ("b", "c"),
                    ("c", "d"),
                    ("d", "a"),
                    ("q", "a"),
                    ("q", "b"),
                    ("q", "c"),
                    ("q", "d"),
                    ("g", "a"),
                    ("g", "b"),
                    ("g", "c"),
                    ("h", "a"),
                    ("h", "b"),
                    ("h", "d"),
                ],
            ),
            Catalog::Gamma1 { ef } => {
                let mut edges = vec![
                    ("a", "b"),
                    ("b", "c"),
                    ("c", "d"),
                    ("d", "a"),
                    ("e", "a"),
                    ("e", "b"),
                    ("e", "c"),
                    ("e", "d"),
                    ("e", "g"),
                    ("f", "a"),
                    ("f", "b"),
                    ("f", "c"),
                    ("f", "d"),
                    ("f", "h"),
                    ("g", "a"),
                    ("g", "b"),
                    ("g", "c"),
                    ("h", "a"),
                    ("h", "b"),
                    ("h", "d"),
                ];
                if ef {
                    edges.push(("e", "f"));
                }
                Graph::new(&["a", "b", "c", "d", "e", "f", "g", "h"], &edges)
            }
            Catalog::Lambda(n) => {
                if n < 4 {
                    return Err(GraphError::LambdaTooSmall(n));
                }
                let g0 = Catalog::Gamma0.build()?;
                let k = Catalog::K(n - 4).build()?;
                Ok(g0.join(&k))
            }
        }
    }
}

/// An induced embedding of a pattern graph into a host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    /// `map[p]` is the host vertex assigned to pattern vertex `p`.
    pub map: Vec<u32>,
}

impl Embedding {
    /// Re-verifies injectivity and the induced condition, independently of
    /// the search that produced the embedding.
    pub fn verify(&self, pattern: &Graph, host: &Graph) -> bool {
        let n = pattern.vertex_count();
        if self.map.len() != n {
            return false;
        }
        let distinct: BTreeSet<u32> = self.map.iter().copied().collect();
        if distinct.len() != n {
            return false;
        }
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                let pat = pattern.adjacent(u, v);
                let host_adj = host.adjacent(self.map[u as usize], self.map[v as usize]);
                if pat != host_adj {
                    return false;
                }
            }
        }
        true
    }
}

/// Backtracking induced-subgraph search. Returns up to `limit` embeddings
/// (`limit == 0` means all), in deterministic order given the input vertex
/// orders. An empty result means no induced copy exists in this host.
pub fn induced_embeddings(pattern: &Graph, host: &Graph, limit: usize) -> Vec<Embedding> {
    induced_embeddings_seeded(pattern, host, limit, None)
}

/// Variant with an optional shuffle of the root candidate order. Off by
/// default; the search stays exhaustive, only exploration order changes,
/// and the full (`limit == 0`) result set is sorted either way.
pub fn induced_embeddings_seeded(
    pattern: &Graph,
    host: &Graph,
    limit: usize,
    shuffle_seed: Option<u64>,
) -> Vec<Embedding> {
    let np = pattern.vertex_count();
    if np == 0 || np > host.vertex_count() {
        return Vec::new();
    }
    let order = pattern_order(pattern);
    let mut roots: Vec<u32> = (0..host.vertex_count() as u32)
        .filter(|&h| host.degree(h) >= pattern.degree(order[0]))
        .collect();
    if let Some(seed) = shuffle_seed {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        roots.shuffle(&mut rng);
    }

    let bits = HostBits::build(host);
    let run_root = |root: u32| -> Vec<Embedding> {
        let mut found = Vec::new();
        let mut assigned: Vec<Option<u32>> = vec![None; np];
        assigned[order[0] as usize] = Some(root);
        extend(
            pattern, host, &bits, &order, 1, &mut assigned, limit, &mut found,
        );
        found
    };

    let mut out: Vec<Embedding> = if limit == 0 {
        use rayon::prelude::*;
        roots.par_iter().map(|&r| run_root(r)).collect::<Vec<_>>().concat()
    } else {
        let mut acc = Vec::new();
        for &r in &roots {
            let mut found = run_root(r);
            let take = limit - acc.len();
            found.truncate(take);
            acc.extend(found);
            if acc.len() >= limit {
                break;
            }
        }
        acc
    };
    if limit == 0 {
        out.sort_by(|a, b| a.map.cmp(&b.map));
    }
    out
}

/// Most-constrained-first ordering: start at the maximum-degree pattern
/// vertex, then repeatedly take the vertex with the most already-placed
/// neighbors (ties by degree, then index).
fn pattern_order(pattern: &Graph) -> Vec<u32> {
    let n = pattern.vertex_count();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let first = (0..n as u32)
        .max_by_key(|&v| (pattern.degree(v), std::cmp::Reverse(v)))
        .unwrap();
    order.push(first);
    placed[first as usize] = true;
    while order.len() < n {
        let next = (0..n as u32)
            .filter(|&v| !placed[v as usize])
            .max_by_key(|&v| {
                let back = pattern
                    .neighbors(v)
                    .iter()
                    .filter(|&&u| placed[u as usize])
                    .count();
                (back, pattern.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        order.push(next);
        placed[next as usize] = true;
    }
    order
}

/// Bitset adjacency rows for fast induced-candidate propagation.
struct HostBits {
    words: usize,
    rows: Vec<u64>,
}

impl HostBits {
    fn build(host: &Graph) -> HostBits {
        let n = host.vertex_count();
        let words = n.div_ceil(64);
        let mut rows = vec![0u64; n * words];
        for v in 0..n as u32 {
            for &u in host.neighbors(v) {
                rows[v as usize * words + (u as usize) / 64] |= 1 << (u % 64);
            }
        }
        HostBits { words, rows }
    }

    fn row(&self, v: u32) -> &[u64] {
        &self.rows[v as usize * self.words..(v as usize + 1) * self.words]
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    pattern: &Graph,
    host: &Graph,
    bits: &HostBits,
    order: &[u32],
    depth: usize,
    assigned: &mut Vec<Option<u32>>,
    limit: usize,
    found: &mut Vec<Embedding>,
) -> bool {
    if depth == order.len() {
        let map: Vec<u32> = assigned.iter().map(|a| a.unwrap()).collect();
        found.push(Embedding { map });
        return limit != 0 && found.len() >= limit;
    }
    let u = order[depth];
    // The full induced constraint as one mask: adjacent to the images of
    // assigned pattern neighbors, non-adjacent to (and distinct from) the
    // images of assigned pattern non-neighbors.
    let n = host.vertex_count();
    let mut mask = vec![u64::MAX; bits.words];
    if n % 64 != 0 {
        mask[bits.words - 1] = (1u64 << (n % 64)) - 1;
    }
    for p in 0..pattern.vertex_count() as u32 {
        if p == u {
            continue;
        }
        let Some(img) = assigned[p as usize] else {
            continue;
        };
        let row = bits.row(img);
        if pattern.adjacent(u, p) {
            for (m, r) in mask.iter_mut().zip(row) {
                *m &= r;
            }
        } else {
            for (m, r) in mask.iter_mut().zip(row) {
                *m &= !r;
            }
            mask[img as usize / 64] &= !(1 << (img % 64));
        }
    }
    let deg_u = pattern.degree(u);
    for (w, &bitsword) in mask.iter().enumerate() {
        let mut word = bitsword;
        while word != 0 {
            let b = word.trailing_zeros();
            word &= word - 1;
            let cand = (w * 64) as u32 + b;
            if host.degree(cand) < deg_u {
                continue;
            }
            assigned[u as usize] = Some(cand);
            let stop = extend(pattern, host, bits, order, depth + 1, assigned, limit, found);
            assigned[u as usize] = None;
            if stop {
                return true;
            }
        }
    }
    false
}

/// Certified lower bounds for eta, keyed by graph identity (labels + edges).
/// Registration rejects bounds below the clique number.
#[derive(Debug, Default, Clone)]
pub struct EtaFacts {
    entries: Vec<(Graph, u64)>,
}

impl EtaFacts {
    pub fn new() -> EtaFacts {
        EtaFacts::default()
    }

    pub fn register(&mut self, g: Graph, bound: u64) -> Result<(), GraphError> {
        let clique = g.clique_number() as u64;
        if bound < clique {
            return Err(GraphError::EtaFactBelowClique {
                graph: format!("{:?}", g.labels()),
                bound,
                clique,
            });
        }
        self.entries.push((g, bound));
        Ok(())
    }

    pub fn lookup(&self, g: &Graph) -> Option<u64> {
        self.entries.iter().find(|(k, _)| k == g).map(|(_, b)| *b)
    }
}

/// Lower bound for eta: peel the complete factor spanned by universal
/// vertices, then bound the remaining core by its clique number or a
/// registered fact. Facts only apply to anti-connected cores, which is the
/// hypothesis they are certified under.
pub fn eta_lower_bound(g: &Graph, facts: &EtaFacts) -> u64 {
    let n = g.vertex_count() as u32;
    let universal: Vec<u32> = (0..n)
        .filter(|&v| g.degree(v) == (n as usize).saturating_sub(1))
        .collect();
    let m = universal.len() as u64;
    let keep: Vec<u32> = (0..n).filter(|v| !universal.contains(v)).collect();
    let core = g.induced(&keep);
    let mut bound = core.clique_number() as u64;
    if core.is_anti_connected() {
        if let Some(fact) = facts.lookup(&core) {
            bound = bound.max(fact);
        }
    }
    bound + m
}

/// One item of the reconstruction consistency report.
#[derive(Debug, Clone)]
pub struct CheckItem {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct ConsistencyReport {
    pub items: Vec<CheckItem>,
}

impl ConsistencyReport {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }
}

/// Cross-checks the reconstructed catalog graphs against each other:
/// collapsing e and f of `g1` onto q must give `g0`, the mirror involution
/// must be an automorphism of `g1`, and the documented subgraph shapes must
/// be present. Failures are report entries, not errors.
pub fn consistency_suite(g0: &Graph, g1: &Graph) -> ConsistencyReport {
    let mut items = Vec::new();

    items.push(check_collapse(g0, g1));
    items.push(check_involution(g1));
    items.push(check_q_to_e(g0, g1));
    items.push(check_abce_shape(g1));
    items.push(check_link_of_g(g1));

    ConsistencyReport { items }
}

fn fail(name: &'static str, detail: String) -> CheckItem {
    CheckItem {
        name,
        pass: false,
        detail,
    }
}

fn pass(name: &'static str) -> CheckItem {
    CheckItem {
        name,
        pass: true,
        detail: String::new(),
    }
}

fn check_collapse(g0: &Graph, g1: &Graph) -> CheckItem {
    const NAME: &str = "collapse e,f -> q yields g0";
    let (e, f) = match (g1.vertex("e"), g1.vertex("f")) {
        (Ok(e), Ok(f)) => (e, f),
        _ => return fail(NAME, "g1 lacks vertices e, f".into()),
    };
    let common: BTreeSet<u32> = g1
        .neighbors(e)
        .intersection(g1.neighbors(f))
        .copied()
        .collect();
    // Rebuild on g0's vertex order so equality is literal.
    let mut verts: Vec<String> = Vec::new();
    for l in g0.labels() {
        verts.push(l.clone());
    }
    let mut edges: Vec<(String, String)> = Vec::new();
    for (u, v) in g1.edges() {
        let (lu, lv) = (g1.label(u), g1.label(v));
        if lu == "e" || lu == "f" || lv == "e" || lv == "f" {
            continue;
        }
        edges.push((lu.to_owned(), lv.to_owned()));
    }
    for &c in &common {
        let lc = g1.label(c);
        if lc == "e" || lc == "f" {
            continue;
        }
        edges.push(("q".to_owned(), lc.to_owned()));
    }
    let collapsed = match Graph::new(&verts, &edges) {
        Ok(c) => c,
        Err(e) => return fail(NAME, format!("collapse failed to build: {e}")),
    };
    if &collapsed == g0 {
        pass(NAME)
    } else {
        fail(
            NAME,
            format!(
                "collapsed graph has {} edges, g0 has {}",
                collapsed.edge_count(),
                g0.edge_count()
            ),
        )
    }
}

fn check_involution(g1: &Graph) -> CheckItem {
    const NAME: &str = "a<->b, c<->d, e<->f, g<->h is an automorphism of g1";
    let pairs = [("a", "b"), ("c", "d"), ("e", "f"), ("g", "h")];
    let mut map: BTreeMap<&str, &str> = BTreeMap::new();
    for (x, y) in pairs {
        map.insert(x, y);
        map.insert(y, x);
    }
    let mut perm = Vec::with_capacity(g1.vertex_count());
    for v in 0..g1.vertex_count() as u32 {
        let l = g1.label(v);
        let target = match map.get(l) {
            Some(t) => *t,
            None => return fail(NAME, format!("unexpected vertex `{l}`")),
        };
        match g1.vertex(target) {
            Ok(t) => perm.push(t),
            Err(_) => return fail(NAME, format!("missing vertex `{target}`")),
        }
    }
    for u in 0..g1.vertex_count() as u32 {
        for v in u + 1..g1.vertex_count() as u32 {
            if g1.adjacent(u, v) != g1.adjacent(perm[u as usize], perm[v as usize]) {
                return fail(
                    NAME,
                    format!("edge {}-{} not preserved", g1.label(u), g1.label(v)),
                );
            }
        }
    }
    pass(NAME)
}

fn check_q_to_e(g0: &Graph, g1: &Graph) -> CheckItem {
    const NAME: &str = "g0 on {a,b,c,d,q,h} matches g1 on {a,b,c,d,e,h} via q -> e";
    let left = ["a", "b", "c", "d", "q", "h"];
    let right = ["a", "b", "c", "d", "e", "h"];
    for i in 0..left.len() {
        for j in i + 1..left.len() {
            let l = match (g0.vertex(left[i]), g0.vertex(left[j])) {
                (Ok(u), Ok(v)) => g0.adjacent(u, v),
                _ => return fail(NAME, format!("g0 lacks {} or {}", left[i], left[j])),
            };
            let r = match (g1.vertex(right[i]), g1.vertex(right[j])) {
                (Ok(u), Ok(v)) => g1.adjacent(u, v),
                _ => return fail(NAME, format!("g1 lacks {} or {}", right[i], right[j])),
            };
            if l != r {
                return fail(
                    NAME,
                    format!("pair ({}, {}) disagrees with ({}, {})", left[i], left[j], right[i], right[j]),
                );
            }
        }
    }
    pass(NAME)
}

fn check_abce_shape(g1: &Graph) -> CheckItem {
    const NAME: &str = "within {a,b,c,e}: e and b join the rest, a-c missing";
    let need = [("e", "a"), ("e", "b"), ("e", "c"), ("b", "a"), ("b", "c")];
    for (x, y) in need {
        match (g1.vertex(x), g1.vertex(y)) {
            (Ok(u), Ok(v)) if g1.adjacent(u, v) => {}
            (Ok(_), Ok(_)) => return fail(NAME, format!("edge {x}-{y} missing")),
            _ => return fail(NAME, format!("vertex {x} or {y} missing")),
        }
    }
    match (g1.vertex("a"), g1.vertex("c")) {
        (Ok(a), Ok(c)) if !g1.adjacent(a, c) => pass(NAME),
        (Ok(_), Ok(_)) => fail(NAME, "a-c unexpectedly adjacent".into()),
        _ => fail(NAME, "vertex a or c missing".into()),
    }
}

fn check_link_of_g(g1: &Graph) -> CheckItem {
    const NAME: &str = "link of g meets {a..h} exactly in {a,b,c,e}";
    let g = match g1.vertex("g") {
        Ok(g) => g,
        Err(_) => return fail(NAME, "vertex g missing".into()),
    };
    let link: BTreeSet<String> = g1
        .neighbors(g)
        .iter()
        .map(|&v| g1.label(v).to_owned())
        .collect();
    let expect: BTreeSet<String> = ["a", "b", "c", "e"].iter().map(|s| s.to_string()).collect();
    if link == expect {
        pass(NAME)
    } else {
        fail(NAME, format!("link of g is {link:?}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g0() -> Graph {
        Catalog::Gamma0.build().unwrap()
    }

    fn g1(ef: bool) -> Graph {
        Catalog::Gamma1 { ef }.build().unwrap()
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(
            Graph::new(&["a", "a"], &[]),
            Err(GraphError::DuplicateLabel("a".into()))
        );
        assert_eq!(
            Graph::new(&["a"], &[("a", "a")]),
            Err(GraphError::LoopEdge("a".into()))
        );
        assert_eq!(
            Graph::new(&["a"], &[("a", "b")]),
            Err(GraphError::UndeclaredEndpoint("b".into()))
        );
        let one = Graph::new(&["a"], &[]).unwrap();
        assert_eq!(one.vertex_count(), 1);
        assert_eq!(one.edge_count(), 0);
    }

    #[test]
    fn catalog_counts() {
        assert_eq!(g0().vertex_count(), 7);
        assert_eq!(g0().edge_count(), 14);
        assert_eq!(g1(false).vertex_count(), 8);
        assert_eq!(g1(false).edge_count(), 20);
        assert_eq!(g1(true).edge_count(), 21);
        let l4 = Catalog::Lambda(4).build().unwrap();
        assert_eq!(l4, g0());
        let l6 = Catalog::Lambda(6).build().unwrap();
        assert_eq!(l6.vertex_count(), 9);
        // |E(X * K_n)| = |E(X)| + n |V(X)| + n(n-1)/2
        assert_eq!(l6.edge_count(), 14 + 2 * 7 + 1);
        assert!(matches!(
            Catalog::Lambda(3).build(),
            Err(GraphError::LambdaTooSmall(3))
        ));
    }

    #[test]
    fn complement_cases() {
        let k3 = Catalog::K(3).build().unwrap();
        assert_eq!(k3.complement().edge_count(), 0);
        let c4 = Catalog::C4.build().unwrap();
        let comp = c4.complement();
        assert_eq!(comp.edge_count(), 2);
        let a = comp.vertex("a").unwrap();
        let c = comp.vertex("c").unwrap();
        let b = comp.vertex("b").unwrap();
        let d = comp.vertex("d").unwrap();
        assert!(comp.adjacent(a, c) && comp.adjacent(b, d));
        assert_eq!(g0().complement().complement(), g0());
    }

    #[test]
    fn join_k1_k1_is_k2() {
        let k1 = Catalog::K(1).build().unwrap();
        let j = k1.join(&k1);
        assert_eq!(j.vertex_count(), 2);
        assert_eq!(j.edge_count(), 1);
        // collision suffixing
        assert_eq!(j.labels()[1], "v1#1");
    }

    #[test]
    fn join_gamma0_k2_is_lambda6() {
        let j = g0().join(&Catalog::K(2).build().unwrap());
        let l6 = Catalog::Lambda(6).build().unwrap();
        assert_eq!(j, l6);
    }

    #[test]
    fn anti_connectedness() {
        assert!(!Catalog::C4.build().unwrap().is_anti_connected());
        assert!(g0().is_anti_connected());
        assert!(g1(false).is_anti_connected());
        assert!(g1(true).is_anti_connected());
        assert!(Graph::new::<&str>(&["a"], &[]).unwrap().is_anti_connected());
    }

    #[test]
    fn clique_numbers() {
        assert_eq!(Catalog::K(5).build().unwrap().clique_number(), 5);
        assert_eq!(g0().clique_number(), 3);
        for n in 4..=8 {
            assert_eq!(
                Catalog::Lambda(n).build().unwrap().clique_number(),
                3 + (n - 4)
            );
        }
        // clique number is additive under join
        let c4 = Catalog::C4.build().unwrap();
        let k3 = Catalog::K(3).build().unwrap();
        assert_eq!(c4.join(&k3).clique_number(), 2 + 3);
    }

    #[test]
    fn clique_list_gamma0_contains_abq() {
        let g = g0();
        let cliques = g.clique_list();
        let abq: Vec<u32> = ["a", "b", "q"]
            .iter()
            .map(|l| g.vertex(l).unwrap())
            .collect();
        let mut abq_sorted = abq.clone();
        abq_sorted.sort();
        assert!(cliques.contains(&abq_sorted));
        assert!(cliques.iter().all(|c| c.len() <= 3));
    }

    fn octahedron_skeleton() -> Graph {
        // K(2,2,2): three antipodal pairs.
        let verts = ["u1", "u2", "v1", "v2", "w1", "w2"];
        let mut edges = Vec::new();
        for i in 0..6 {
            for j in i + 1..6 {
                if verts[i][..1] != verts[j][..1] {
                    edges.push((verts[i], verts[j]));
                }
            }
        }
        Graph::new(&verts, &edges).unwrap()
    }

    #[test]
    fn thick_stars() {
        assert!(Catalog::K(3).build().unwrap().has_thick_stars(2));
        assert!(octahedron_skeleton().has_thick_stars(3));
        assert!(!Catalog::K(4).build().unwrap().has_thick_stars(3));
        // monotone in N, and always true at N = 1
        for n in 1..=3 {
            assert!(octahedron_skeleton().has_thick_stars(n));
        }
        assert!(g0().has_thick_stars(1));
    }

    #[test]
    fn induced_search_c4_in_gamma0() {
        let c4 = Catalog::C4.build().unwrap();
        let host = g0();
        let all = induced_embeddings(&c4, &host, 0);
        assert!(!all.is_empty());
        for e in &all {
            assert!(e.verify(&c4, &host));
        }
        // the identity placement a->a, b->b, c->c, d->d is among them
        let ident: Vec<u32> = ["a", "b", "c", "d"]
            .iter()
            .map(|l| host.vertex(l).unwrap())
            .collect();
        assert!(all.iter().any(|e| e.map == ident));
    }

    #[test]
    fn induced_search_negative_cases() {
        let host = g0();
        let k4 = Catalog::K(4).build().unwrap();
        assert!(induced_embeddings(&k4, &host, 0).is_empty());
        // gamma0 does not sit inside gamma1 as an induced subgraph
        assert!(induced_embeddings(&g0(), &g1(false), 0).is_empty());
        assert!(induced_embeddings(&g0(), &g1(true), 0).is_empty());
    }

    #[test]
    fn induced_search_limit_and_seed() {
        let c4 = Catalog::C4.build().unwrap();
        let host = g0();
        let one = induced_embeddings(&c4, &host, 1);
        assert_eq!(one.len(), 1);
        let all = induced_embeddings(&c4, &host, 0);
        let seeded = induced_embeddings_seeded(&c4, &host, 0, Some(7));
        assert_eq!(all, seeded);
    }

    #[test]
    fn eta_bounds() {
        let facts = EtaFacts::new();
        for n in 1..=6 {
            assert_eq!(
                eta_lower_bound(&Catalog::K(n).build().unwrap(), &facts),
                n as u64
            );
        }
        assert_eq!(eta_lower_bound(&g0(), &facts), 3);
        let mut facts = EtaFacts::new();
        facts.register(g0(), 5).unwrap();
        assert_eq!(eta_lower_bound(&g0(), &facts), 5);
        for n in 4..=8 {
            let lam = Catalog::Lambda(n).build().unwrap();
            assert_eq!(eta_lower_bound(&lam, &facts), n as u64 + 1);
        }
        assert!(matches!(
            EtaFacts::new().register(g0(), 2),
            Err(GraphError::EtaFactBelowClique { .. })
        ));
    }

    #[test]
    fn consistency_suite_passes_for_both_variants() {
        for ef in [false, true] {
            let report = consistency_suite(&g0(), &g1(ef));
            assert!(
                report.all_pass(),
                "failed items: {:?}",
                report
                    .items
                    .iter()
                    .filter(|i| !i.pass)
                    .collect::<Vec<_>>()
            );
            assert_eq!(report.items.len(), 5);
        }
    }

    #[test]
    fn consistency_suite_catches_wrong_input() {
        let c4 = Catalog::C4.build().unwrap();
        let report = consistency_suite(&c4, &g1(false));
        assert!(!report.all_pass());
    }

    #[test]
    fn json_round_trip_and_dot() {
        let g = g0();
        let j = g.to_json();
        let back = Graph::from_json(&j).unwrap();
        assert_eq!(g, back);
        let dot = g.to_dot("gamma0");
        assert!(dot.contains("\"a\" -- \"b\";"));
    }
}
