#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use hrg::graphprod::{
    chamber_of, elementary_neighbors, gp_inverse, gp_multiply, weight, CompositeSystem, GPWord, GraphOfGroups,
    NormalWord, Syllable, VertexSystems,
};
use hrg::groups::{Elem, FiniteGroup, Subgroup, IDENTITY};
use hrg::hypergraph::CayleySystem;
use hrg::words::{Letter, Word};
use hrg::{coxeter_system, CoxeterFamily};

pub fn system(group: FiniteGroup, gens: &[&[&str]]) -> CayleySystem {
    let sigma = gens
        .iter()
        .map(|names| {
            let els: Vec<Elem> = names.iter().map(|n| group.element_by_name(n).unwrap()).collect();
            group.subgroup_generated(&els)
        })
        .collect();
    CayleySystem::new(group, sigma).unwrap()
}

pub fn el(sys: &CayleySystem, name: &str) -> Elem {
    sys.group().element_by_name(name).unwrap_or_else(|| panic!("no element {name}"))
}

pub fn s3() -> CayleySystem {
    system(FiniteGroup::dihedral(3, ["s", "t"], 100).unwrap(), &[&["s"], &["t"]])
}

pub fn z2xz2() -> CayleySystem {
    let g = FiniteGroup::direct_product(
        &[FiniteGroup::cyclic(2, "a", 10).unwrap(), FiniteGroup::cyclic(2, "b", 10).unwrap()],
        10,
    )
    .unwrap();
    system(g, &[&["a"], &["b"]])
}

/// `Z3 × Z3` with its two factors: a hyperreflection system whose members
/// have order 3.
pub fn z3xz3() -> CayleySystem {
    let g = FiniteGroup::direct_product(
        &[FiniteGroup::cyclic(3, "x", 10).unwrap(), FiniteGroup::cyclic(3, "y", 10).unwrap()],
        10,
    )
    .unwrap();
    system(g, &[&["x"], &["y"]])
}

pub fn cox(f: CoxeterFamily) -> CayleySystem {
    coxeter_system(f).unwrap()
}

/// Small hyperreflection systems used across the property tests.
pub fn fleet() -> Vec<(String, CayleySystem)> {
    let mut out = vec![("S3".to_string(), s3()), ("Z2xZ2".to_string(), z2xz2()), ("Z3xZ3".to_string(), z3xz3())];
    for f in [
        CoxeterFamily::A(1),
        CoxeterFamily::A(2),
        CoxeterFamily::A(3),
        CoxeterFamily::I2(4),
        CoxeterFamily::I2(5),
        CoxeterFamily::I2(6),
        CoxeterFamily::B(2),
        CoxeterFamily::B(3),
    ] {
        out.push((f.label(), cox(f)));
    }
    out
}

/// Distance from the identity in the Cayley graph on `⋃Σ`, by an
/// independent breadth-first search over right multiplication.
pub fn bfs_lengths(sys: &CayleySystem) -> Vec<usize> {
    let g = sys.group();
    let gens: HashSet<Elem> = sys.sigma().iter().flat_map(|s| s.nonidentity()).collect();
    let mut dist = vec![usize::MAX; g.order()];
    dist[IDENTITY] = 0;
    let mut queue = VecDeque::from([IDENTITY]);
    while let Some(x) = queue.pop_front() {
        for &s in &gens {
            let y = g.mul(x, s);
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

/// A word from raw picks `(sigma, k)`: letter `k mod (|S| - 1)` among the
/// nonidentity elements of `Σ[sigma mod |Σ|]`.
pub fn word_from_picks(sys: &CayleySystem, picks: &[(usize, usize)]) -> Word {
    let letters = picks
        .iter()
        .map(|&(i, k)| {
            let i = i % sys.sigma().len();
            let s: Vec<Elem> = sys.sigma()[i].nonidentity().collect();
            Letter::new(s[k % s.len()], i)
        })
        .collect();
    Word::new(sys, letters).unwrap()
}

/// All subsets of `0..n` as sorted index lists, the empty set included.
pub fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0..1usize << n).map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect()).collect()
}

/// Subgroup of `G` generated by named elements.
pub fn generated(g: &FiniteGroup, names: &[&str]) -> Subgroup {
    let els: Vec<Elem> = names.iter().map(|n| g.element_by_name(n).unwrap()).collect();
    g.subgroup_generated(&els)
}

pub fn z(n: usize, gen: &str) -> FiniteGroup {
    FiniteGroup::cyclic(n, gen, 100).unwrap()
}

pub fn graph(groups: Vec<(&str, FiniteGroup)>, edges: &[(usize, usize)]) -> GraphOfGroups {
    GraphOfGroups::new(groups.into_iter().map(|(n, g)| (n.to_string(), g)).collect(), edges).unwrap()
}

pub fn k2_z2_z3() -> GraphOfGroups {
    graph(vec![("u", z(2, "a")), ("v", z(3, "x"))], &[(0, 1)])
}

pub fn k3_z2() -> GraphOfGroups {
    graph(vec![("u", z(2, "a")), ("v", z(2, "b")), ("w", z(2, "c"))], &[(0, 1), (0, 2), (1, 2)])
}

pub fn p3_z2_z3_z2() -> GraphOfGroups {
    graph(vec![("u", z(2, "a")), ("v", z(3, "x")), ("w", z(2, "c"))], &[(0, 1), (1, 2)])
}

pub fn free_z2_z3() -> GraphOfGroups {
    graph(vec![("u", z(2, "a")), ("v", z(3, "x"))], &[])
}

/// `K2(S3, Z2)` with the Coxeter system `{⟨s⟩, ⟨t⟩}` on the `S3` vertex.
pub fn k2_s3_z2() -> (GraphOfGroups, VertexSystems) {
    let s3 = FiniteGroup::dihedral(3, ["s", "t"], 100).unwrap();
    let sigma = vec![generated(&s3, &["s"]), generated(&s3, &["t"])];
    let gp = graph(vec![("u", s3), ("v", z(2, "a"))], &[(0, 1)]);
    let systems = VertexSystems::new(&gp, vec![(0, sigma)]).unwrap();
    (gp, systems)
}

/// Two-vertex graph products with vertex groups of order at most 3, with
/// and without the edge.
pub fn two_vertex_products() -> Vec<(String, GraphOfGroups)> {
    let mut out = Vec::new();
    for (n, m) in [(2, 2), (2, 3), (3, 3)] {
        for edge in [false, true] {
            let edges: &[(usize, usize)] = if edge { &[(0, 1)] } else { &[] };
            let name = format!("Z{n}{}Z{m}", if edge { "x" } else { "*" });
            out.push((name, graph(vec![("u", z(n, "a")), ("v", z(m, "b"))], edges)));
        }
    }
    out
}

/// Every word with at most `max_len` syllables.
pub fn all_words(gp: &GraphOfGroups, max_len: usize) -> Vec<GPWord> {
    let syllables: Vec<Syllable> =
        (0..gp.vertex_count()).flat_map(|v| gp.group(v).elements().skip(1).map(move |g| Syllable::new(v, g))).collect();
    let mut layer = vec![GPWord::empty()];
    let mut out = layer.clone();
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                syllables.iter().map(move |&s| {
                    let mut v = w.syllables().to_vec();
                    v.push(s);
                    GPWord::new(gp, v).unwrap()
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Classes of words of length ≤ `max_len` under elementary moves that
/// stay within that length.
pub fn move_classes(gp: &GraphOfGroups, max_len: usize) -> Vec<Vec<GPWord>> {
    let words = all_words(gp, max_len);
    let index: HashMap<GPWord, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let mut class = vec![usize::MAX; words.len()];
    let mut out = Vec::new();
    for start in 0..words.len() {
        if class[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![];
        let mut stack = vec![start];
        class[start] = id;
        while let Some(i) = stack.pop() {
            members.push(words[i].clone());
            for n in elementary_neighbors(gp, &words[i], max_len) {
                let j = index[&n];
                if class[j] == usize::MAX {
                    class[j] = id;
                    stack.push(j);
                }
            }
        }
        out.push(members);
    }
    out
}

/// For every `S ∈ Σ_v` and `g`, the coset `Sg` in the enumerated group has
/// a unique minimum-weight element `m`, and `chamber_of(g) = g m⁻¹`.
pub fn check_min_weight_chambers(
    gp: &GraphOfGroups,
    systems: &VertexSystems,
    composite: &CompositeSystem,
) -> Result<usize, String> {
    let product = &composite.product;
    let grp = &product.group;
    let weights: Vec<usize> = product.normal_forms.iter().map(|x| weight(x, systems)).collect();
    let mut checked = 0;
    for (k, &(v, i)) in composite.origins.iter().enumerate() {
        let s = &composite.system.sigma()[k];
        for g in grp.elements() {
            let coset: Vec<Elem> = s.elements().iter().map(|&x| grp.mul(x, g)).collect();
            let best = coset.iter().map(|&x| weights[x]).min().unwrap();
            let minima: Vec<Elem> = coset.iter().copied().filter(|&x| weights[x] == best).collect();
            if minima.len() != 1 {
                return Err(format!("coset of {} under member {k} has minima {minima:?}", grp.name(g)));
            }
            let m = minima[0];
            let label = chamber_of(gp, systems, v, i, &product.normal_forms[g]).map_err(|e| e.to_string())?;
            let expected = grp.mul(g, grp.inv(m));
            if product.embeddings[v][label] != expected {
                return Err(format!(
                    "chamber_of({}) for member {k} is {} but the minimum gives {}",
                    grp.name(g),
                    gp.group(v).name(label),
                    grp.name(expected)
                ));
            }
            if (label == IDENTITY) != (g == m) {
                return Err(format!("{} is the coset minimum iff chamber_of is the identity fails", grp.name(g)));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// `chamber_of(g) = s` iff `chamber_of(s⁻¹g) = 1`, for every `s` in every
/// vertex-system member and every listed `g`.
pub fn check_chamber_predicate(
    gp: &GraphOfGroups,
    systems: &VertexSystems,
    elements: &[NormalWord],
) -> Result<usize, String> {
    let mut checked = 0;
    for v in 0..gp.vertex_count() {
        let local = systems.system(v);
        for (i, s) in local.sigma().iter().enumerate() {
            for g in elements {
                let label = chamber_of(gp, systems, v, i, g).map_err(|e| e.to_string())?;
                for &x in s.elements() {
                    let sx = NormalWord::check(
                        gp,
                        &gp.default_order(),
                        if x == IDENTITY {
                            GPWord::empty()
                        } else {
                            GPWord::new(gp, vec![Syllable::new(v, x)]).unwrap()
                        },
                    )
                    .unwrap();
                    let moved = gp_multiply(gp, &gp_inverse(gp, &sx), g);
                    let back = chamber_of(gp, systems, v, i, &moved).map_err(|e| e.to_string())?;
                    if (label == x) != (back == IDENTITY) {
                        return Err(format!(
                            "vertex {} member {i}: chamber_of({:?}) = {} but chamber_of(s⁻¹g) = {} for s = {}",
                            gp.vertex_name(v),
                            g.word().names(gp),
                            gp.group(v).name(label),
                            gp.group(v).name(back),
                            gp.group(v).name(x)
                        ));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}
