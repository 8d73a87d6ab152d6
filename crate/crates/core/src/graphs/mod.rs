//! Finite graphs, pointed reflexive graphs, and the complement-plus-base
//! reduction that turns injective homomorphisms into epimorphisms.

mod format;
mod search;

pub use format::{GraphDocument, GraphJson};
pub use search::{
    are_isomorphic, find_epimorphism, find_injective_hom, find_pointed_epimorphism, for_each_epimorphism,
    is_homomorphism, is_surjective, pointed_epimorphisms, EpiMode,
};

use crate::error::{Error, Result};

/// A finite simple graph stored as a dense symmetric adjacency matrix.
///
/// A graph is either reflexive (every vertex carries a loop) or irreflexive
/// (no vertex does); mixed diagonals are rejected.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGraph {
    n: usize,
    adj: Vec<bool>,
    reflexive: bool,
}

impl FiniteGraph {
    pub fn new(n: usize, adj: Vec<bool>, reflexive: bool) -> Result<Self> {
        if adj.len() != n * n {
            return Err(Error::SizeMismatch { expected: n * n, found: adj.len() });
        }
        for u in 0..n {
            if adj[u * n + u] != reflexive {
                return Err(Error::InvalidGraph(format!(
                    "vertex {u} {} a loop in a{} graph",
                    if reflexive { "lacks" } else { "has" },
                    if reflexive { " reflexive" } else { "n irreflexive" },
                )));
            }
            for v in (u + 1)..n {
                if adj[u * n + v] != adj[v * n + u] {
                    return Err(Error::InvalidGraph(format!("adjacency not symmetric at ({u}, {v})")));
                }
            }
        }
        Ok(Self { n, adj, reflexive })
    }

    /// Builds a graph from an undirected edge list. Loops are accepted only
    /// for reflexive graphs, where they are implied anyway.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], reflexive: bool) -> Result<Self> {
        let mut graph = Self::empty(n, reflexive);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u}, {v}) out of range for {n} vertices")));
            }
            if u == v && !reflexive {
                return Err(Error::InvalidGraph(format!("loop at {u} in an irreflexive graph")));
            }
            graph.set_edge(u, v);
        }
        Ok(graph)
    }

    /// The graph on `n` vertices with no edges other than the loops a
    /// reflexive graph requires.
    pub fn empty(n: usize, reflexive: bool) -> Self {
        let mut adj = vec![false; n * n];
        if reflexive {
            for v in 0..n {
                adj[v * n + v] = true;
            }
        }
        Self { n, adj, reflexive }
    }

    /// Irreflexive complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let mut graph = Self::empty(n, false);
        for u in 0..n {
            for v in (u + 1)..n {
                graph.set_edge(u, v);
            }
        }
        graph
    }

    /// Irreflexive path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let mut graph = Self::empty(n, false);
        for v in 1..n {
            graph.set_edge(v - 1, v);
        }
        graph
    }

    /// Irreflexive cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        let mut graph = Self::path(n);
        if n >= 3 {
            graph.set_edge(n - 1, 0);
        }
        graph
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        self.adj[u * self.n + v] = true;
        self.adj[v * self.n + u] = true;
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn is_reflexive(&self) -> bool {
        self.reflexive
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    /// Neighbours of `v` other than `v` itself.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| u != v && self.adjacent(u, v))
    }

    /// Undirected edges `(u, v)` with `u < v`; loops are not listed.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.adjacent(u, v) {
                    edges.push((u, v));
                }
            }
        }
        edges
    }

    pub fn has_isolated_vertex(&self) -> bool {
        (0..self.n).any(|v| self.neighbors(v).next().is_none())
    }

    /// Vertices adjacent to every vertex, themselves included.
    pub fn dominating_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| (0..self.n).all(|u| self.adjacent(u, v))).collect()
    }

    /// Same edges between distinct vertices, loops added.
    pub fn to_reflexive(&self) -> Self {
        let mut graph = self.clone();
        graph.reflexive = true;
        for v in 0..self.n {
            graph.adj[v * self.n + v] = true;
        }
        graph
    }

    /// Same edges between distinct vertices, loops removed.
    pub fn to_irreflexive(&self) -> Self {
        let mut graph = self.clone();
        graph.reflexive = false;
        for v in 0..self.n {
            graph.adj[v * self.n + v] = false;
        }
        graph
    }

    /// Induced subgraph on all vertices except `removed`, keeping order.
    pub fn without_vertex(&self, removed: usize) -> Self {
        let keep: Vec<usize> = (0..self.n).filter(|&v| v != removed).collect();
        let m = keep.len();
        let mut adj = vec![false; m * m];
        for (a, &u) in keep.iter().enumerate() {
            for (b, &v) in keep.iter().enumerate() {
                adj[a * m + b] = self.adjacent(u, v);
            }
        }
        Self { n: m, adj, reflexive: self.reflexive }
    }

    /// Every labelled graph on `n` vertices, ordered by the bitmask of the
    /// edge set over pairs `(u, v)`, `u < v`, in lexicographic order.
    pub fn all_labelled(n: usize, reflexive: bool) -> Vec<Self> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
        (0u64..(1u64 << pairs.len()))
            .map(|mask| {
                let mut graph = Self::empty(n, reflexive);
                for (bit, &(u, v)) in pairs.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        graph.set_edge(u, v);
                    }
                }
                graph
            })
            .collect()
    }
}

/// A reflexive graph with a distinguished base vertex adjacent to all
/// vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointedReflexiveGraph {
    graph: FiniteGraph,
    base: usize,
}

impl PointedReflexiveGraph {
    pub fn new(graph: FiniteGraph, base: usize) -> Result<Self> {
        if !graph.is_reflexive() {
            return Err(Error::InvalidGraph("pointed graphs must be reflexive".into()));
        }
        if base >= graph.len() {
            return Err(Error::InvalidGraph(format!("base {base} out of range")));
        }
        if let Some(v) = (0..graph.len()).find(|&v| !graph.adjacent(base, v)) {
            return Err(Error::InvalidGraph(format!("base {base} is not adjacent to vertex {v}")));
        }
        Ok(Self { graph, base })
    }

    pub fn graph(&self) -> &FiniteGraph {
        &self.graph
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    /// The reflexive graph obtained by deleting the base. Vertex `k` of the
    /// result is the `k`-th non-base vertex in index order.
    pub fn underlying(&self) -> FiniteGraph {
        self.graph.without_vertex(self.base)
    }

    /// Position of `v` among the non-base vertices, or `None` for the base.
    pub fn underlying_index(&self, v: usize) -> Option<usize> {
        match v.cmp(&self.base) {
            std::cmp::Ordering::Less => Some(v),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(v - 1),
        }
    }

    /// Inverse of [`Self::underlying_index`].
    pub fn vertex_of_underlying(&self, k: usize) -> usize {
        if k < self.base {
            k
        } else {
            k + 1
        }
    }
}

/// A total map between the vertex sets of two graphs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexMap {
    target_len: usize,
    image: Vec<usize>,
}

impl VertexMap {
    pub fn new(image: Vec<usize>, target_len: usize) -> Result<Self> {
        if let Some(&bad) = image.iter().find(|&&t| t >= target_len) {
            return Err(Error::InvalidGraph(format!("image vertex {bad} out of range {target_len}")));
        }
        Ok(Self { target_len, image })
    }

    pub fn identity(n: usize) -> Self {
        Self { target_len: n, image: (0..n).collect() }
    }

    pub fn source_len(&self) -> usize {
        self.image.len()
    }

    pub fn target_len(&self) -> usize {
        self.target_len
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, v: usize) -> usize {
        self.image[v]
    }
}

/// Adds a fresh base vertex, placed last, adjacent to every vertex.
pub fn make_pointed(graph: &FiniteGraph) -> Result<PointedReflexiveGraph> {
    if !graph.is_reflexive() {
        return Err(Error::Precondition("make_pointed expects a reflexive graph".into()));
    }
    let n = graph.len();
    let m = n + 1;
    let mut adj = vec![false; m * m];
    for u in 0..n {
        for v in 0..n {
            adj[u * m + v] = graph.adjacent(u, v);
        }
    }
    for v in 0..m {
        adj[n * m + v] = true;
        adj[v * m + n] = true;
    }
    let pointed = FiniteGraph { n: m, adj, reflexive: true };
    Ok(PointedReflexiveGraph { graph: pointed, base: n })
}

/// The reduction `F`: complement every pair (so all loops appear), then add
/// a dominating base vertex. Inputs with isolated vertices are rejected
/// because the base would no longer be the unique dominating vertex.
pub fn f_reduce(graph: &FiniteGraph) -> Result<PointedReflexiveGraph> {
    if graph.is_reflexive() {
        return Err(Error::Precondition("f_reduce expects an irreflexive graph".into()));
    }
    if let Some(v) = (0..graph.len()).find(|&v| graph.neighbors(v).next().is_none()) {
        return Err(Error::Precondition(format!("vertex {v} is isolated")));
    }
    let n = graph.len();
    let mut adj = vec![false; n * n];
    for u in 0..n {
        for v in 0..n {
            adj[u * n + v] = !graph.adjacent(u, v);
        }
    }
    make_pointed(&FiniteGraph { n, adj, reflexive: true })
}
