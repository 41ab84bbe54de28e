//! Graph products of groups, realized by words of syllables modulo the
//! elementary moves
//!
//! * R1: delete an adjacent pair `(g, g⁻¹)` from one vertex group,
//! * R2: merge adjacent `(g, h)` from one vertex group into `(gh)`, `gh ≠ 1`,
//! * R3: swap adjacent syllables from adjacent vertex groups,
//!
//! and their inverses. The normal form of an element is its
//! lexicographically least reduced word for a fixed vertex order. It has no
//! repeated consecutive vertex and its consecutive adjacent vertices
//! ascend; on graphs whose components are complete those two conditions
//! characterize it, but an induced path `u - v - w` already admits words
//! like `(v:x, w:c, u:a, v:x)` that meet both and are not reduced.
//! [`mu_prepend`] is the left action of each vertex group on normal forms,
//! and [`normalize`] folds it over a word.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::{Elem, FiniteGroup, GroupError, GroupSpec, Subgroup, DEFAULT_MAX_ORDER, IDENTITY};
use crate::hypergraph::{CayleySystem, SystemError};
use crate::words::{coset_min, Side, WordError};

pub type VertexId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphProductError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("edge {0:?} is a loop")]
    SelfLoop(String),
    #[error("vertex `{0}` has a trivial group")]
    TrivialVertexGroup(String),
    #[error("syllable {position} is the identity")]
    IdentitySyllable { position: usize },
    #[error("syllable {position} is not a valid element of its vertex group")]
    InvalidSyllable { position: usize },
    #[error("malformed syllable `{0}`; expected `vertex:element`")]
    MalformedSyllable(String),
    #[error("unknown element `{element}` in the group at vertex `{vertex}`")]
    UnknownElement { vertex: String, element: String },
    #[error("the word is not normal")]
    NotNormal,
    #[error("cap exceeded at {cap} elements: the graph product is infinite or larger than the cap")]
    InfiniteOrCapExceeded { cap: usize },
    #[error("vertex system for `{vertex}`: {reason}")]
    VertexSystem { vertex: String, reason: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A simple graph with a nontrivial finite group at every vertex. The
/// vertex list order is the default linear order used for normal forms.
#[derive(Clone, Debug)]
pub struct GraphOfGroups {
    names: Vec<String>,
    groups: Vec<FiniteGroup>,
    adjacency: Vec<Vec<bool>>,
}

impl GraphOfGroups {
    pub fn new(
        vertices: Vec<(String, FiniteGroup)>,
        edges: &[(VertexId, VertexId)],
    ) -> Result<Self, GraphProductError> {
        let n = vertices.len();
        let mut names = Vec::with_capacity(n);
        let mut groups = Vec::with_capacity(n);
        for (name, group) in vertices {
            if names.contains(&name) {
                return Err(GraphProductError::DuplicateVertex(name));
            }
            if group.order() < 2 {
                return Err(GraphProductError::TrivialVertexGroup(name));
            }
            names.push(name);
            groups.push(group);
        }
        let mut adjacency = vec![vec![false; n]; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphProductError::UnknownVertex(format!("#{}", u.max(v))));
            }
            if u == v {
                return Err(GraphProductError::SelfLoop(names[u].clone()));
            }
            adjacency[u][v] = true;
            adjacency[v][u] = true;
        }
        Ok(Self { names, groups, adjacency })
    }

    pub fn from_spec(spec: &GraphProductSpec) -> Result<Self, GraphProductError> {
        Self::from_spec_with_cap(spec, DEFAULT_MAX_ORDER)
    }

    pub fn from_spec_with_cap(spec: &GraphProductSpec, cap: usize) -> Result<Self, GraphProductError> {
        let vertices = spec
            .vertices
            .iter()
            .map(|v| Ok((v.id.clone(), v.group.build_with_cap(cap)?)))
            .collect::<Result<Vec<_>, GraphProductError>>()?;
        let index = |name: &str| {
            spec.vertices
                .iter()
                .position(|v| v.id == name)
                .ok_or_else(|| GraphProductError::UnknownVertex(name.to_string()))
        };
        let edges = spec
            .edges
            .iter()
            .map(|[u, v]| Ok((index(u)?, index(v)?)))
            .collect::<Result<Vec<_>, GraphProductError>>()?;
        Self::new(vertices, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn group(&self, v: VertexId) -> &FiniteGroup {
        &self.groups[v]
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.adjacency[u][v]
    }

    pub fn default_order(&self) -> VertexOrder {
        VertexOrder::identity(self.vertex_count())
    }

    /// `u:a` style name of a syllable.
    pub fn syllable_name(&self, s: Syllable) -> String {
        format!("{}:{}", self.names[s.vertex], self.groups[s.vertex].name(s.element))
    }
}

/// A linear order on the vertices, stored as ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrder {
    rank: Vec<usize>,
}

impl VertexOrder {
    pub fn identity(n: usize) -> Self {
        Self { rank: (0..n).collect() }
    }

    /// The cyclic rotation of the vertex list that starts at `first`.
    pub fn rotated(n: usize, first: VertexId) -> Self {
        Self { rank: (0..n).map(|v| (v + n - first) % n).collect() }
    }

    /// `a ≺ b`.
    pub fn precedes(&self, a: VertexId, b: VertexId) -> bool {
        self.rank[a] < self.rank[b]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Syllable {
    pub vertex: VertexId,
    pub element: Elem,
}

impl Syllable {
    pub fn new(vertex: VertexId, element: Elem) -> Self {
        Self { vertex, element }
    }
}

/// A word of nonidentity syllables; the empty word is λ.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct GPWord {
    syllables: Vec<Syllable>,
}

impl GPWord {
    pub fn new(gp: &GraphOfGroups, syllables: Vec<Syllable>) -> Result<Self, GraphProductError> {
        for (position, s) in syllables.iter().enumerate() {
            if s.vertex >= gp.vertex_count() || s.element >= gp.group(s.vertex).order() {
                return Err(GraphProductError::InvalidSyllable { position });
            }
            if s.element == IDENTITY {
                return Err(GraphProductError::IdentitySyllable { position });
            }
        }
        Ok(Self { syllables })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Parses `u:a, v:x2`; the empty or all-blank literal is λ.
    pub fn parse(gp: &GraphOfGroups, literal: &str) -> Result<Self, GraphProductError> {
        let mut syllables = Vec::new();
        for part in literal.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (vertex, element) =
                part.split_once(':').ok_or_else(|| GraphProductError::MalformedSyllable(part.to_string()))?;
            let (vertex, element) = (vertex.trim(), element.trim());
            let v = gp.vertex_by_name(vertex).ok_or_else(|| GraphProductError::UnknownVertex(vertex.to_string()))?;
            let g = gp.group(v).element_by_name(element).ok_or_else(|| GraphProductError::UnknownElement {
                vertex: vertex.to_string(),
                element: element.to_string(),
            })?;
            syllables.push(Syllable::new(v, g));
        }
        Self::new(gp, syllables)
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn names(&self, gp: &GraphOfGroups) -> Vec<String> {
        self.syllables.iter().map(|&s| gp.syllable_name(s)).collect()
    }

    pub fn concat(&self, other: &GPWord) -> GPWord {
        let mut syllables = self.syllables.clone();
        syllables.extend_from_slice(&other.syllables);
        GPWord { syllables }
    }

    /// `(g_n⁻¹, …, g_1⁻¹)`, not yet normalized.
    pub fn formal_inverse(&self, gp: &GraphOfGroups) -> GPWord {
        GPWord {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable::new(s.vertex, gp.group(s.vertex).inv(s.element)))
                .collect(),
        }
    }
}

/// A word known to be normal for some vertex order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct NormalWord(GPWord);

impl NormalWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn check(gp: &GraphOfGroups, order: &VertexOrder, w: GPWord) -> Result<Self, GraphProductError> {
        if is_normal(gp, order, &w) {
            Ok(Self(w))
        } else {
            Err(GraphProductError::NotNormal)
        }
    }

    pub fn word(&self) -> &GPWord {
        &self.0
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0.syllables
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn head(&self) -> Option<Syllable> {
        self.0.syllables.first().copied()
    }

    pub fn into_word(self) -> GPWord {
        self.0
    }
}

/// The two local conditions: no repeated consecutive vertex, and
/// consecutive adjacent vertices ascend. Necessary for normality, and
/// sufficient when every component of the graph is complete.
pub fn is_locally_normal(gp: &GraphOfGroups, order: &VertexOrder, w: &GPWord) -> bool {
    w.syllables.windows(2).all(|p| {
        let (a, b) = (p[0].vertex, p[1].vertex);
        a != b && (!gp.adjacent(a, b) || order.precedes(a, b))
    })
}

/// Whether `w` is the normal form of its element: it is reduced, and no
/// syllable could be swapped leftwards past a block of commuting
/// syllables onto a position held by a later vertex.
pub fn is_normal(gp: &GraphOfGroups, order: &VertexOrder, w: &GPWord) -> bool {
    (0..w.len()).all(|j| blocks_ok(gp, order, &w.syllables[..j], w.syllables[j].vertex))
}

/// Whether a syllable at `v` may follow the normal word `prefix`.
fn blocks_ok(gp: &GraphOfGroups, order: &VertexOrder, prefix: &[Syllable], v: VertexId) -> bool {
    for s in prefix.iter().rev() {
        if s.vertex == v {
            return false;
        }
        if !gp.adjacent(s.vertex, v) {
            return true;
        }
        if order.precedes(v, s.vertex) {
            return false;
        }
    }
    true
}

/// Rearranges a reduced word into the lexicographically least word
/// reachable by swaps, recording each swap position when `swaps` is given.
fn sort_reduced(
    gp: &GraphOfGroups,
    order: &VertexOrder,
    syllables: &mut [Syllable],
    mut swaps: Option<&mut Vec<usize>>,
) {
    for p in 0..syllables.len() {
        let mut best = p;
        for q in p + 1..syllables.len() {
            let v = syllables[q].vertex;
            if !syllables[p..q].iter().all(|s| gp.adjacent(s.vertex, v)) {
                continue;
            }
            if order.precedes(v, syllables[best].vertex) {
                best = q;
            }
        }
        for k in (p..best).rev() {
            syllables.swap(k, k + 1);
            if let Some(log) = swaps.as_deref_mut() {
                log.push(k);
            }
        }
    }
}

/// The normal form of `g · x` for `g ∈ G_v`, under `order`.
///
/// If a syllable at `v` can be brought to the front of `x` by swaps, `g`
/// is merged into it, dropping it when the product is trivial; otherwise
/// `(g)` is prepended. The result is then sorted by swaps.
pub fn mu_prepend_with_order(
    gp: &GraphOfGroups,
    order: &VertexOrder,
    v: VertexId,
    g: Elem,
    x: &NormalWord,
) -> NormalWord {
    if g == IDENTITY {
        return x.clone();
    }
    let mut syllables = x.0.syllables.clone();
    let reachable =
        syllables.iter().position(|s| s.vertex == v || !gp.adjacent(v, s.vertex)).filter(|&k| syllables[k].vertex == v);
    match reachable {
        Some(k) => {
            let merged = gp.group(v).mul(g, syllables[k].element);
            if merged == IDENTITY {
                syllables.remove(k);
            } else {
                syllables[k].element = merged;
            }
        }
        None => syllables.insert(0, Syllable::new(v, g)),
    }
    sort_reduced(gp, order, &mut syllables, None);
    NormalWord(GPWord { syllables })
}

pub fn mu_prepend(gp: &GraphOfGroups, v: VertexId, g: Elem, x: &NormalWord) -> NormalWord {
    mu_prepend_with_order(gp, &gp.default_order(), v, g, x)
}

/// Folds the action right to left onto `base`.
fn act(gp: &GraphOfGroups, order: &VertexOrder, w: &GPWord, base: NormalWord) -> NormalWord {
    w.syllables.iter().rev().fold(base, |acc, s| mu_prepend_with_order(gp, order, s.vertex, s.element, &acc))
}

pub fn normalize_with_order(gp: &GraphOfGroups, order: &VertexOrder, w: &GPWord) -> NormalWord {
    act(gp, order, w, NormalWord::identity())
}

pub fn normalize(gp: &GraphOfGroups, w: &GPWord) -> NormalWord {
    normalize_with_order(gp, &gp.default_order(), w)
}

/// Normal form of the concatenation.
pub fn gp_multiply(gp: &GraphOfGroups, x: &NormalWord, y: &NormalWord) -> NormalWord {
    act(gp, &gp.default_order(), x.word(), y.clone())
}

pub fn gp_inverse(gp: &GraphOfGroups, x: &NormalWord) -> NormalWord {
    normalize(gp, &x.word().formal_inverse(gp))
}

/// All words one elementary move away from `w`. Insertions (R1⁻¹, R2⁻¹)
/// are only generated while the result has at most `max_len` syllables.
pub fn elementary_neighbors(gp: &GraphOfGroups, w: &GPWord, max_len: usize) -> BTreeSet<GPWord> {
    let syl = &w.syllables;
    let n = syl.len();
    let mut out = BTreeSet::new();
    let with = |prefix_end: usize, middle: &[Syllable], suffix_start: usize| {
        let mut s = syl[..prefix_end].to_vec();
        s.extend_from_slice(middle);
        s.extend_from_slice(&syl[suffix_start..]);
        GPWord { syllables: s }
    };
    for i in 0..n.saturating_sub(1) {
        let (a, b) = (syl[i], syl[i + 1]);
        if a.vertex == b.vertex {
            let p = gp.group(a.vertex).mul(a.element, b.element);
            if p == IDENTITY {
                out.insert(with(i, &[], i + 2));
            } else {
                out.insert(with(i, &[Syllable::new(a.vertex, p)], i + 2));
            }
        } else if gp.adjacent(a.vertex, b.vertex) {
            out.insert(with(i, &[b, a], i + 2));
        }
    }
    if n + 2 <= max_len {
        for pos in 0..=n {
            for v in 0..gp.vertex_count() {
                let grp = gp.group(v);
                for g in grp.elements().skip(1) {
                    out.insert(with(pos, &[Syllable::new(v, g), Syllable::new(v, grp.inv(g))], pos));
                }
            }
        }
    }
    if n < max_len {
        for (i, s) in syl.iter().enumerate() {
            let grp = gp.group(s.vertex);
            for g in grp.elements().skip(1).filter(|&g| g != s.element) {
                let h = grp.mul(grp.inv(g), s.element);
                out.insert(with(i, &[Syllable::new(s.vertex, g), Syllable::new(s.vertex, h)], i + 1));
            }
        }
    }
    out
}

/// A chain of words from `w` to its normal form in which consecutive
/// words differ by one R1, R2 or R3 move. No move lengthens the word, and
/// once the word is reduced only swaps are used.
pub fn move_chain_to_normal(gp: &GraphOfGroups, order: &VertexOrder, w: &GPWord) -> Vec<GPWord> {
    let mut chain = vec![w.clone()];
    let mut cur = w.syllables.clone();
    // Bring together same-vertex syllables separated only by commuting ones.
    'outer: loop {
        for i in 0..cur.len() {
            let v = cur[i].vertex;
            for j in i + 1..cur.len() {
                if cur[j].vertex == v {
                    for k in (i + 1..j).rev() {
                        cur.swap(k, k + 1);
                        chain.push(GPWord { syllables: cur.clone() });
                    }
                    let p = gp.group(v).mul(cur[i].element, cur[i + 1].element);
                    if p == IDENTITY {
                        cur.drain(i..i + 2);
                    } else {
                        cur[i].element = p;
                        cur.remove(i + 1);
                    }
                    chain.push(GPWord { syllables: cur.clone() });
                    continue 'outer;
                }
                if !gp.adjacent(v, cur[j].vertex) {
                    break;
                }
            }
        }
        break;
    }
    let mut swaps = Vec::new();
    sort_reduced(gp, order, &mut cur.clone(), Some(&mut swaps));
    for k in swaps {
        cur.swap(k, k + 1);
        chain.push(GPWord { syllables: cur.clone() });
    }
    chain
}

/// Every normal word with at most `max_len` syllables, by length and then
/// lexicographically.
pub fn normal_words(gp: &GraphOfGroups, order: &VertexOrder, max_len: usize) -> Vec<NormalWord> {
    let mut layer = vec![NormalWord::identity()];
    let mut out = layer.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for x in &layer {
            for v in 0..gp.vertex_count() {
                if !blocks_ok(gp, order, x.syllables(), v) {
                    continue;
                }
                for g in gp.group(v).elements().skip(1) {
                    let mut s = x.syllables().to_vec();
                    s.push(Syllable::new(v, g));
                    next.push(NormalWord(GPWord { syllables: s }));
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Per-vertex systems `(G_v, Σ_v)`; each defaults to the trivial `{G_v}`.
#[derive(Clone, Debug)]
pub struct VertexSystems {
    systems: Vec<CayleySystem>,
}

impl VertexSystems {
    pub fn trivial(gp: &GraphOfGroups) -> Self {
        let systems = (0..gp.vertex_count())
            .map(|v| {
                let g = gp.group(v).clone();
                let whole = g.subgroup_generated(&g.elements().collect::<Vec<_>>());
                CayleySystem::new(g, vec![whole]).expect("a nontrivial group generates itself")
            })
            .collect();
        Self { systems }
    }

    /// `overrides` maps a vertex to its Σ_v; other vertices stay trivial.
    pub fn new(gp: &GraphOfGroups, overrides: Vec<(VertexId, Vec<Subgroup>)>) -> Result<Self, GraphProductError> {
        let mut out = Self::trivial(gp);
        for (v, sigma) in overrides {
            let system = CayleySystem::new(gp.group(v).clone(), sigma).map_err(|e| {
                GraphProductError::VertexSystem { vertex: gp.vertex_name(v).to_string(), reason: e.to_string() }
            })?;
            out.systems[v] = system;
        }
        Ok(out)
    }

    /// Σ_v given by generator names, as in the JSON input.
    pub fn from_names(
        gp: &GraphOfGroups,
        spec: &BTreeMap<String, Vec<Vec<String>>>,
    ) -> Result<Self, GraphProductError> {
        let mut overrides = Vec::new();
        for (vertex, members) in spec {
            let v = gp.vertex_by_name(vertex).ok_or_else(|| GraphProductError::UnknownVertex(vertex.clone()))?;
            let grp = gp.group(v);
            let sigma = members
                .iter()
                .map(|gens| {
                    let els = gens
                        .iter()
                        .map(|n| {
                            grp.element_by_name(n).ok_or_else(|| GraphProductError::UnknownElement {
                                vertex: vertex.clone(),
                                element: n.clone(),
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(grp.subgroup_generated(&els))
                })
                .collect::<Result<Vec<_>, GraphProductError>>()?;
            overrides.push((v, sigma));
        }
        Self::new(gp, overrides)
    }

    pub fn system(&self, v: VertexId) -> &CayleySystem {
        &self.systems[v]
    }

    pub fn length(&self, v: VertexId, g: Elem) -> usize {
        self.systems[v].length(g)
    }
}

/// Sum of the vertex-system lengths of the syllables.
pub fn weight(x: &NormalWord, lengths: &VertexSystems) -> usize {
    x.syllables().iter().map(|s| lengths.length(s.vertex, s.element)).sum()
}

/// Label of the chamber of `g` for the wall of `S = Σ_v[sigma]`: the
/// unique `s ∈ S` with `s⁻¹g` of minimum weight in `Sg`.
///
/// `g` is renormalized with `v` first in the order. If its first syllable
/// lies outside `G_v` the answer is the identity; otherwise it is
/// `g_1·m⁻¹`, where `m` is the shortest element of `S g_1` in `G_v`.
/// Works for infinite graph products.
pub fn chamber_of(
    gp: &GraphOfGroups,
    systems: &VertexSystems,
    v: VertexId,
    sigma: usize,
    g: &NormalWord,
) -> Result<Elem, GraphProductError> {
    let order = VertexOrder::rotated(gp.vertex_count(), v);
    let rotated = normalize_with_order(gp, &order, g.word());
    match rotated.head() {
        Some(head) if head.vertex == v => {
            let local = systems.system(v);
            let min = coset_min(local, sigma, head.element, Side::Right)?;
            let grp = gp.group(v);
            Ok(grp.mul(head.element, grp.inv(min)))
        }
        _ => Ok(IDENTITY),
    }
}

/// A finite graph product as a Cayley table, with the vertex groups
/// embedded.
#[derive(Clone, Debug)]
pub struct EnumeratedProduct {
    pub group: FiniteGroup,
    /// Normal form of each element id.
    pub normal_forms: Vec<NormalWord>,
    /// `embeddings[v][g]`: id of the one-syllable word `(g)` at vertex `v`.
    pub embeddings: Vec<Vec<Elem>>,
    /// Images of the vertex groups.
    pub vertex_subgroups: Vec<Subgroup>,
    index: HashMap<NormalWord, Elem>,
}

impl EnumeratedProduct {
    pub fn element_of(&self, x: &NormalWord) -> Option<Elem> {
        self.index.get(x).copied()
    }
}

/// Breadth-first enumeration of normal forms by syllable count, each layer
/// in lexicographic order. Fails once more than `cap` elements are found.
pub fn enumerate_group(gp: &GraphOfGroups, cap: usize) -> Result<EnumeratedProduct, GraphProductError> {
    let order = gp.default_order();
    let mut normal_forms = vec![NormalWord::identity()];
    let mut layer = normal_forms.clone();
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for x in &layer {
            for v in 0..gp.vertex_count() {
                for g in gp.group(v).elements().skip(1) {
                    next.extend(append_syllable(gp, &order, x, v, g));
                }
            }
            if normal_forms.len() + next.len() > cap {
                return Err(GraphProductError::InfiniteOrCapExceeded { cap });
            }
        }
        layer = next.into_iter().collect();
        normal_forms.extend(layer.iter().cloned());
    }

    let index: HashMap<NormalWord, Elem> = normal_forms.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect();
    let rows =
        normal_forms.iter().map(|x| normal_forms.iter().map(|y| index[&gp_multiply(gp, x, y)]).collect()).collect();
    let names = normal_forms
        .iter()
        .map(|x| if x.is_empty() { "1".to_string() } else { x.word().names(gp).join("*") })
        .collect();
    let group = FiniteGroup::from_table(rows, Some(names), cap)?;

    let embeddings: Vec<Vec<Elem>> = (0..gp.vertex_count())
        .map(|v| {
            gp.group(v)
                .elements()
                .map(|g| {
                    if g == IDENTITY {
                        IDENTITY
                    } else {
                        index[&NormalWord(GPWord { syllables: vec![Syllable::new(v, g)] })]
                    }
                })
                .collect()
        })
        .collect();
    let vertex_subgroups =
        embeddings.iter().map(|e| Subgroup::from_elements(&group, e)).collect::<Result<Vec<_>, _>>()?;
    Ok(EnumeratedProduct { group, normal_forms, embeddings, vertex_subgroups, index })
}

/// `x · (g)` for `g ∈ G_v ∖ {1}` when the product has one more syllable
/// than `x`, otherwise `None`.
///
/// The new syllable must follow the last syllable it cannot commute past.
/// After that point `x` is the greedy least linear arrangement of its
/// syllables, so the least arrangement with the new one inserted puts it
/// before the first later syllable whose vertex it precedes.
fn append_syllable(
    gp: &GraphOfGroups,
    order: &VertexOrder,
    x: &NormalWord,
    v: VertexId,
    g: Elem,
) -> Option<NormalWord> {
    let syllables = x.syllables();
    let mut floor = 0;
    for (j, s) in syllables.iter().enumerate().rev() {
        if s.vertex == v {
            return None;
        }
        if !gp.adjacent(s.vertex, v) {
            floor = j + 1;
            break;
        }
    }
    let at = (floor..syllables.len()).find(|&i| order.precedes(v, syllables[i].vertex)).unwrap_or(syllables.len());
    let mut out = syllables.to_vec();
    out.insert(at, Syllable::new(v, g));
    Some(NormalWord(GPWord { syllables: out }))
}

/// The system `(G, ⋃Σ_v)` on a finite graph product.
#[derive(Clone, Debug)]
pub struct CompositeSystem {
    pub product: EnumeratedProduct,
    pub system: CayleySystem,
    /// `(v, i)` for each member of the composite Σ: it is `Σ_v[i]`.
    pub origins: Vec<(VertexId, usize)>,
}

pub fn composite_system(
    gp: &GraphOfGroups,
    systems: &VertexSystems,
    cap: usize,
) -> Result<CompositeSystem, GraphProductError> {
    let product = enumerate_group(gp, cap)?;
    let mut sigma = Vec::new();
    let mut origins = Vec::new();
    for v in 0..gp.vertex_count() {
        for (i, s) in systems.system(v).sigma().iter().enumerate() {
            let image: Vec<Elem> = s.elements().iter().map(|&g| product.embeddings[v][g]).collect();
            sigma.push(Subgroup::from_elements(&product.group, &image)?);
            origins.push((v, i));
        }
    }
    let system = CayleySystem::new(product.group.clone(), sigma)?;
    Ok(CompositeSystem { product, system, origins })
}

/// JSON form: `{"vertices":[{"id":"u","group":{…}}],"edges":[["u","v"]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphProductSpec {
    pub vertices: Vec<VertexSpec>,
    #[serde(default)]
    pub edges: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexSpec {
    pub id: String,
    pub group: GroupSpec,
}
