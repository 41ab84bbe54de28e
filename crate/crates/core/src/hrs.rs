//! Hyperreflection checks on `Cay(G, Σ)` and the structure theory built on
//! them: walls, special subgroups `G_A`, supports, sectors and subsystems.
//!
//! A subgroup `S` is a hyperreflection when it acts simply transitively on
//! the components of the hypergraph with `Fix(S)` removed. `S` always
//! permutes those components (it preserves its own fixed set), so it is
//! enough to look at where each `s ∈ S` sends the identity component.

use serde::Serialize;

use crate::groups::{Elem, FiniteGroup, Subgroup, IDENTITY};
use crate::hypergraph::{CayleySystem, EdgeId, Partition, SystemError};
use crate::words::{dual_word, length_and_reduced, unique_min, Word, WordError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum FailureReason {
    /// The complement has the wrong number of components.
    WrongComponentCount { expected: usize, found: usize },
    /// Some component is not the image of the identity component.
    NotTransitive { component: usize },
    /// Several elements map the identity component to the same component.
    NotFree { component: usize, elements: Vec<Elem> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail(FailureReason),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HyperreflectionReport {
    pub sigma_index: usize,
    pub fixed_edges: Vec<EdgeId>,
    pub components: Partition,
    /// `(s, k)`: `s` maps the identity component onto component `k`.
    pub action_map: Vec<(Elem, usize)>,
    pub verdict: Verdict,
}

impl HyperreflectionReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SystemReport {
    pub pass: bool,
    pub members: Vec<HyperreflectionReport>,
}

/// Checks that `Σ[index]` acts as a hyperreflection on `Cay(G, Σ)`.
pub fn is_hyperreflection(sys: &CayleySystem, index: usize) -> Result<HyperreflectionReport, SystemError> {
    let s = sys.sigma_member(index)?;
    let grp = sys.group();
    let fixed_edges = sys.fixed_edge_set(s);
    let components = sys.hypergraph().components_without(&fixed_edges);
    let home = components.block_of(IDENTITY);

    let action_map: Vec<(Elem, usize)> = s
        .elements()
        .iter()
        .map(|&x| {
            let k = components.block_of(x);
            debug_assert!(components.blocks()[home].iter().all(|&v| components.block_of(grp.mul(x, v)) == k));
            (x, k)
        })
        .collect();

    let verdict = if components.len() != s.len() {
        Verdict::Fail(FailureReason::WrongComponentCount { expected: s.len(), found: components.len() })
    } else {
        let mut preimages: Vec<Vec<Elem>> = vec![Vec::new(); components.len()];
        for &(x, k) in &action_map {
            preimages[k].push(x);
        }
        if let Some(k) = preimages.iter().position(|p| p.len() >= 2) {
            Verdict::Fail(FailureReason::NotFree { component: k, elements: preimages[k].clone() })
        } else if let Some(k) = preimages.iter().position(Vec::is_empty) {
            Verdict::Fail(FailureReason::NotTransitive { component: k })
        } else {
            Verdict::Pass
        }
    };

    Ok(HyperreflectionReport { sigma_index: index, fixed_edges, components, action_map, verdict })
}

pub fn verify_system(sys: &CayleySystem) -> SystemReport {
    let members: Vec<HyperreflectionReport> =
        (0..sys.sigma().len()).map(|i| is_hyperreflection(sys, i).expect("index in range")).collect();
    SystemReport { pass: members.iter().all(HyperreflectionReport::passed), members }
}

/// `G_A`, the subgroup generated by `⋃A`; `G_∅ = {1}`.
pub fn special_subgroup(sys: &CayleySystem, subset: &[usize]) -> Result<Subgroup, SystemError> {
    let mut gens = Vec::new();
    for &i in subset {
        gens.extend(sys.sigma_member(i)?.nonidentity());
    }
    Ok(sys.group().subgroup_generated(&gens))
}

/// Σ indices appearing in a reduced word for `g`.
pub fn support(sys: &CayleySystem, g: Elem) -> Vec<usize> {
    length_and_reduced(sys, g).1.sigma_set()
}

/// `g = h·k` with `h` the minimum of `gG_A` and `k ∈ G_A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SectorDecomposition {
    pub h: Elem,
    pub k: Elem,
}

pub fn sector_decompose(sys: &CayleySystem, subset: &[usize], g: Elem) -> Result<SectorDecomposition, WordError> {
    let grp = sys.group();
    let ga = special_subgroup(sys, subset).map_err(|e| WordError::Inconsistent(e.to_string()))?;
    let h = unique_min(sys, ga.elements().iter().map(|&k| grp.mul(g, k)))?;
    let k = grp.mul(grp.inv(h), g);
    if !ga.contains(k) || sys.length(g) != sys.length(h) + sys.length(k) {
        return Err(WordError::Inconsistent(format!("sector decomposition of {} is not length-additive", grp.name(g))));
    }
    Ok(SectorDecomposition { h, k })
}

/// Membership in the fundamental `A`-sector.
pub fn in_fundamental_sector(sys: &CayleySystem, subset: &[usize], g: Elem) -> Result<bool, WordError> {
    Ok(sector_decompose(sys, subset, g)?.h == g)
}

/// `(G_A, A)` with elements renumbered; `id_map[new] = old`.
#[derive(Clone, Debug)]
pub struct Subsystem {
    pub system: CayleySystem,
    pub id_map: Vec<Elem>,
}

impl Subsystem {
    /// New id of an element of `G_A`.
    pub fn local_id(&self, original: Elem) -> Option<Elem> {
        self.id_map.binary_search(&original).ok()
    }
}

pub fn subsystem(sys: &CayleySystem, subset: &[usize]) -> Result<Subsystem, SystemError> {
    if subset.is_empty() {
        return Err(SystemError::EmptySubset);
    }
    let grp = sys.group();
    let ga = special_subgroup(sys, subset)?;
    let id_map = ga.elements().to_vec();
    let local = |g: Elem| id_map.binary_search(&g).expect("closed under multiplication");
    let rows: Vec<Vec<Elem>> = id_map.iter().map(|&a| id_map.iter().map(|&b| local(grp.mul(a, b))).collect()).collect();
    let names = id_map.iter().map(|&g| grp.name(g).to_string()).collect();
    let group =
        FiniteGroup::from_table(rows, Some(names), usize::MAX).map_err(|_| SystemError::ForeignSubgroup(subset[0]))?;
    let mut sigma = Vec::with_capacity(subset.len());
    for &i in subset {
        let elems: Vec<Elem> = sys.sigma()[i].elements().iter().map(|&g| local(g)).collect();
        sigma.push(Subgroup::from_elements(&group, &elems).map_err(|_| SystemError::ForeignSubgroup(i))?);
    }
    Ok(Subsystem { system: CayleySystem::new(group, sigma)?, id_map })
}

/// A conjugate `gSg⁻¹` of a Σ member together with its fixed edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Wall {
    pub subgroup: Subgroup,
    pub fixed_edges: Vec<EdgeId>,
}

/// All distinct conjugates of Σ members, in order of first appearance
/// (Σ index, then conjugating element).
pub fn walls(sys: &CayleySystem) -> Vec<Wall> {
    sys.conjugates().iter().map(|t| Wall { subgroup: t.clone(), fixed_edges: sys.fixed_edge_set(t) }).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Crossing {
    /// Zero-based letter position.
    pub step: usize,
    /// Index into [`walls`] (equivalently [`CayleySystem::conjugates`]).
    pub wall: usize,
}

/// Walls with the components of their complements precomputed.
#[derive(Clone, Debug)]
pub struct WallArrangement {
    walls: Vec<Wall>,
    complements: Vec<Partition>,
}

impl WallArrangement {
    pub fn new(sys: &CayleySystem) -> Self {
        let walls = walls(sys);
        let complements = walls.iter().map(|w| sys.hypergraph().components_without(&w.fixed_edges)).collect();
        Self { walls, complements }
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    pub fn complement(&self, wall: usize) -> &Partition {
        &self.complements[wall]
    }

    pub fn separates(&self, wall: usize, a: Elem, b: Elem) -> bool {
        !self.complements[wall].same_block(a, b)
    }

    /// Walls with `1` and `g` in different components of the complement.
    pub fn separating_walls(&self, g: Elem) -> Vec<usize> {
        (0..self.walls.len()).filter(|&w| self.separates(w, IDENTITY, g)).collect()
    }

    /// The wall `Fix(T_i)` crossed at each step of the word's walk.
    pub fn crossings(&self, sys: &CayleySystem, w: &Word) -> Result<Vec<Crossing>, WordError> {
        let dual = dual_word(sys, w);
        dual.duals
            .iter()
            .enumerate()
            .map(|(step, d)| {
                if self.separates(d.conjugate, dual.partials[step], dual.partials[step + 1]) {
                    Ok(Crossing { step, wall: d.conjugate })
                } else {
                    Err(WordError::Inconsistent(format!("step {step} stays inside one chamber")))
                }
            })
            .collect()
    }
}

pub fn wall_crossings(sys: &CayleySystem, w: &Word) -> Result<Vec<Crossing>, WordError> {
    WallArrangement::new(sys).crossings(sys, w)
}
