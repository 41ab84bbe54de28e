//! Finite hypergraphs and the Cayley hypergraph `Cay(G, Σ)`.
//!
//! `G` acts on `Cay(G, Σ)` by left multiplication, simply transitively on
//! the vertices. So a nontrivial subgroup never fixes a vertex, and its
//! fixed set is a set of edges: `T` fixes the edge `gS` iff `T ⊆ gSg⁻¹`.
//! Removing a fixed set therefore deletes edges and keeps every vertex.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::{Elem, FiniteGroup, Subgroup, IDENTITY};

pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("edge {0} is empty")]
    EmptyEdge(EdgeId),
    #[error("edge {edge} mentions vertex {vertex}, but there are only {count} vertices")]
    VertexOutOfRange { edge: EdgeId, vertex: usize, count: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SystemError {
    #[error("sigma member {0} is the trivial subgroup")]
    TrivialSubgroup(usize),
    #[error("sigma members {0} and {1} are the same subgroup")]
    DuplicateSubgroup(usize, usize),
    #[error("sigma member {0} contains an element outside the group")]
    ForeignSubgroup(usize),
    #[error("the union of sigma generates a subgroup of order {generated}, not the whole group of order {order}")]
    NotGenerating { generated: usize, order: usize },
    #[error("the subset of sigma is empty")]
    EmptySubset,
    #[error("sigma index {0} is out of range")]
    SigmaIndex(usize),
}

/// A hypergraph on vertices `0..vertex_count`. Edge ids are list indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    vertex_count: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Each edge is sorted and deduplicated; edges must be nonempty.
    pub fn new(vertex_count: usize, edges: Vec<Vec<usize>>) -> Result<Self, HypergraphError> {
        let mut edges = edges;
        for (id, edge) in edges.iter_mut().enumerate() {
            if edge.is_empty() {
                return Err(HypergraphError::EmptyEdge(id));
            }
            if let Some(&vertex) = edge.iter().find(|&&v| v >= vertex_count) {
                return Err(HypergraphError::VertexOutOfRange { edge: id, vertex, count: vertex_count });
            }
            edge.sort_unstable();
            edge.dedup();
        }
        Ok(Self { vertex_count, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &[usize] {
        &self.edges[id]
    }

    pub fn components(&self) -> Partition {
        self.components_without(&[])
    }

    /// Components after deleting the given edges (all vertices stay).
    pub fn components_without(&self, removed: &[EdgeId]) -> Partition {
        let mut skip = vec![false; self.edges.len()];
        for &e in removed {
            skip[e] = true;
        }
        let mut sets = DisjointSet::new(self.vertex_count);
        for (id, edge) in self.edges.iter().enumerate() {
            if !skip[id] {
                for w in edge.windows(2) {
                    sets.union(w[0], w[1]);
                }
            }
        }
        Partition::from_labels((0..self.vertex_count).map(|v| sets.find(v)).collect())
    }

    /// Graphviz rendering. Two-vertex edges become graph edges; every
    /// other edge becomes a star around a square node `e<k>`.
    pub fn to_dot(&self, names: &[String]) -> String {
        let mut out = String::from("graph cayley {\n");
        for v in 0..self.vertex_count {
            let label = names.get(v).map(String::as_str).unwrap_or("?");
            let _ = writeln!(out, "  v{v} [label=\"{}\"];", label.replace('"', "\\\""));
        }
        for (k, edge) in self.edges.iter().enumerate() {
            if let [a, b] = edge[..] {
                let _ = writeln!(out, "  v{a} -- v{b};");
            } else {
                let _ = writeln!(out, "  e{k} [shape=square, label=\"\", width=0.15];");
                for v in edge {
                    let _ = writeln!(out, "  e{k} -- v{v};");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// JSON form of a hypergraph with named vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<Vec<usize>>,
}

impl HypergraphDocument {
    pub fn new(graph: &Hypergraph, names: &[String]) -> Self {
        Self { vertices: names.to_vec(), edges: graph.edges.clone() }
    }

    pub fn to_hypergraph(&self) -> Result<Hypergraph, HypergraphError> {
        Hypergraph::new(self.vertices.len(), self.edges.clone())
    }
}

/// A partition of `0..n` into blocks. Blocks are sorted internally and
/// ordered by their minimum vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    #[serde(skip)]
    block_of: Vec<usize>,
}

impl Partition {
    /// Builds a partition from an arbitrary labelling: `u` and `v` share a
    /// block iff `labels[u] == labels[v]`.
    pub fn from_labels(labels: Vec<usize>) -> Self {
        let mut remap: HashMap<usize, usize> = HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = vec![0; labels.len()];
        // Scanning vertices in order numbers blocks by minimum vertex.
        for (v, label) in labels.into_iter().enumerate() {
            let b = *remap.entry(label).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(v);
            block_of[v] = b;
        }
        Self { blocks, block_of }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    pub fn same_block(&self, u: usize, v: usize) -> bool {
        self.block_of[u] == self.block_of[v]
    }
}

struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), rank: vec![0; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.rank[a] < self.rank[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        if self.rank[a] == self.rank[b] {
            self.rank[a] += 1;
        }
    }
}

/// Where an edge of `Cay(G, Σ)` comes from: the coset `rep · Σ[sigma]`,
/// with `rep` the least element of the coset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeOrigin {
    pub sigma: usize,
    pub rep: Elem,
}

/// A group, a list Σ of nontrivial subgroups whose union generates it, and
/// the Cayley hypergraph `Cay(G, Σ)` with lookup tables built once at
/// construction: edge ids per coset, word lengths, and the conjugates
/// `gSg⁻¹` of every member.
#[derive(Clone, Debug)]
pub struct CayleySystem {
    group: FiniteGroup,
    sigma: Vec<Subgroup>,
    hypergraph: Hypergraph,
    origins: Vec<EdgeOrigin>,
    /// `edge_of[i][g]` is the edge `gΣ[i]`.
    edge_of: Vec<Vec<EdgeId>>,
    /// `lengths[g]` is the word length of `g` over `⋃Σ`.
    lengths: Vec<usize>,
    conjugates: Vec<Subgroup>,
    /// `conjugate_of[i][g]` indexes `gΣ[i]g⁻¹` in `conjugates`.
    conjugate_of: Vec<Vec<usize>>,
}

impl CayleySystem {
    pub fn new(group: FiniteGroup, sigma: Vec<Subgroup>) -> Result<Self, SystemError> {
        for (i, s) in sigma.iter().enumerate() {
            if s.elements().iter().any(|&g| g >= group.order()) {
                return Err(SystemError::ForeignSubgroup(i));
            }
            if !s.is_nontrivial() {
                return Err(SystemError::TrivialSubgroup(i));
            }
            if let Some(j) = sigma[..i].iter().position(|t| t == s) {
                return Err(SystemError::DuplicateSubgroup(j, i));
            }
        }
        let gens: Vec<Elem> = sigma.iter().flat_map(|s| s.nonidentity()).collect();
        let generated = group.subgroup_generated(&gens).len();
        if generated != group.order() {
            return Err(SystemError::NotGenerating { generated, order: group.order() });
        }

        let n = group.order();
        let mut edges = Vec::new();
        let mut origins = Vec::new();
        let mut edge_of = vec![vec![usize::MAX; n]; sigma.len()];
        for (i, s) in sigma.iter().enumerate() {
            for g in group.elements() {
                if edge_of[i][g] != usize::MAX {
                    continue;
                }
                let mut coset: Vec<Elem> = s.elements().iter().map(|&x| group.mul(g, x)).collect();
                coset.sort_unstable();
                let id = edges.len();
                for &h in &coset {
                    edge_of[i][h] = id;
                }
                origins.push(EdgeOrigin { sigma: i, rep: coset[0] });
                edges.push(coset);
            }
        }
        let hypergraph = Hypergraph { vertex_count: n, edges };

        let lengths = bfs_lengths(&group, &sigma);

        let mut conjugates: Vec<Subgroup> = Vec::new();
        let mut conj_index: HashMap<Subgroup, usize> = HashMap::new();
        let mut conjugate_of = vec![vec![0; n]; sigma.len()];
        for (i, s) in sigma.iter().enumerate() {
            for g in group.elements() {
                let c = group.conjugate_subgroup(s, g);
                let id = *conj_index.entry(c.clone()).or_insert_with(|| {
                    conjugates.push(c);
                    conjugates.len() - 1
                });
                conjugate_of[i][g] = id;
            }
        }

        Ok(Self { group, sigma, hypergraph, origins, edge_of, lengths, conjugates, conjugate_of })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn sigma(&self) -> &[Subgroup] {
        &self.sigma
    }

    pub fn sigma_member(&self, index: usize) -> Result<&Subgroup, SystemError> {
        self.sigma.get(index).ok_or(SystemError::SigmaIndex(index))
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.hypergraph
    }

    pub fn edge_origin(&self, e: EdgeId) -> EdgeOrigin {
        self.origins[e]
    }

    /// The edge `gΣ[sigma]`.
    pub fn edge_of(&self, sigma: usize, g: Elem) -> EdgeId {
        self.edge_of[sigma][g]
    }

    /// Word length of `g` over the nonidentity elements of `⋃Σ`.
    pub fn length(&self, g: Elem) -> usize {
        self.lengths[g]
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    /// Indices of the Σ members containing `g`.
    pub fn sigma_containing(&self, g: Elem) -> Vec<usize> {
        (0..self.sigma.len()).filter(|&i| self.sigma[i].contains(g)).collect()
    }

    /// Distinct subgroups `gSg⁻¹`, `S ∈ Σ`, in order of first appearance.
    pub fn conjugates(&self) -> &[Subgroup] {
        &self.conjugates
    }

    /// Index into [`CayleySystem::conjugates`] of `gΣ[sigma]g⁻¹`.
    pub fn conjugate_id(&self, sigma: usize, g: Elem) -> usize {
        self.conjugate_of[sigma][g]
    }

    /// If `t` is one of the conjugates, its index.
    pub fn find_conjugate(&self, t: &Subgroup) -> Option<usize> {
        self.conjugates.iter().position(|c| c == t)
    }

    /// Edges `gS` with `T ⊆ gSg⁻¹`, ascending.
    pub fn fixed_edge_set(&self, t: &Subgroup) -> Vec<EdgeId> {
        (0..self.origins.len())
            .filter(|&e| {
                let EdgeOrigin { sigma, rep } = self.origins[e];
                let s = &self.sigma[sigma];
                // t fixes rep·S iff rep⁻¹ t rep ∈ S.
                t.elements().iter().all(|&x| s.contains(self.group.conj(self.group.inv(rep), x)))
            })
            .collect()
    }

    /// Edges `e` with `r·e = e`.
    pub fn fixed_edges_of_element(&self, r: Elem) -> Vec<EdgeId> {
        (0..self.origins.len())
            .filter(|&e| {
                let EdgeOrigin { sigma, rep } = self.origins[e];
                self.edge_of[sigma][self.group.mul(r, rep)] == e
            })
            .collect()
    }

    /// Components of the hypergraph with `Fix(T)` deleted.
    pub fn wall_complement_components(&self, t: &Subgroup) -> Partition {
        self.hypergraph.components_without(&self.fixed_edge_set(t))
    }

    /// Image of edge `e` under left multiplication by `g`.
    pub fn translate_edge(&self, g: Elem, e: EdgeId) -> EdgeId {
        let EdgeOrigin { sigma, rep } = self.origins[e];
        self.edge_of[sigma][self.group.mul(g, rep)]
    }

    pub fn names(&self) -> &[String] {
        self.group.names()
    }
}

fn bfs_lengths(group: &FiniteGroup, sigma: &[Subgroup]) -> Vec<usize> {
    let letters: Vec<Elem> = sigma.iter().flat_map(|s| s.nonidentity()).collect();
    let mut dist = vec![usize::MAX; group.order()];
    dist[IDENTITY] = 0;
    let mut queue = VecDeque::from([IDENTITY]);
    while let Some(h) = queue.pop_front() {
        for &s in &letters {
            let k = group.mul(h, s);
            if dist[k] == usize::MAX {
                dist[k] = dist[h] + 1;
                queue.push_back(k);
            }
        }
    }
    dist
}
