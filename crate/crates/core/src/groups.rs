//! Finite groups stored as Cayley tables, plus subgroup closure and
//! conjugation.
//!
//! Elements are dense ids `0..order` and the identity is always id `0`.
//! Every other module in the crate works on these ids.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A group element, as an index into the multiplication table.
pub type Elem = usize;

/// The identity element of every [`FiniteGroup`].
pub const IDENTITY: Elem = 0;

/// Default upper bound on group orders accepted by the builders.
pub const DEFAULT_MAX_ORDER: usize = 20_000;

/// Tables up to this order get an exhaustive associativity check.
const FULL_ASSOCIATIVITY_LIMIT: usize = 256;
const ASSOCIATIVITY_SAMPLES: usize = 200_000;
const MAX_SYMMETRIC_DEGREE: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid multiplication table: {0}")]
    TableInvalid(String),
    #[error("group order {order} exceeds the configured cap of {cap}")]
    SizeExceeded { order: usize, cap: usize },
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("elements {0:?} do not form a subgroup")]
    NotASubgroup(Vec<Elem>),
}

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    names: Vec<String>,
    by_name: HashMap<String, Elem>,
}

impl FiniteGroup {
    /// Validates an explicit table. Row `a`, column `b` holds `a * b`.
    ///
    /// If the identity of the table is not element 0 the table is relabelled
    /// by swapping the identity with element 0 (names move with it).
    pub fn from_table(rows: Vec<Vec<Elem>>, names: Option<Vec<String>>, cap: usize) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::TableInvalid("empty table".into()));
        }
        if n > cap {
            return Err(GroupError::SizeExceeded { order: n, cap });
        }
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::TableInvalid(format!("row {a} has {} entries, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(GroupError::TableInvalid(format!("row {a} contains out-of-range element {bad}")));
            }
        }
        if let Some(names) = &names {
            if names.len() != n {
                return Err(GroupError::TableInvalid(format!("{} names given for {n} elements", names.len())));
            }
        }

        let identity = (0..n)
            .find(|&e| (0..n).all(|g| rows[e][g] == g && rows[g][e] == g))
            .ok_or_else(|| GroupError::TableInvalid("no identity element".into()))?;

        // Relabel so the identity is element 0.
        let relabel = |x: Elem| {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[relabel(a) * n + relabel(b)] = relabel(rows[a][b]) as u32;
            }
        }
        let mut names = match names {
            Some(names) => names,
            None => (0..n).map(|g| if g == identity { "1".to_string() } else { format!("g{g}") }).collect(),
        };
        names.swap(0, identity);

        Self::from_raw(n, mul, names)
    }

    /// Builds the group generated by `gens` under an associative operation
    /// on some concrete representation `T`.
    ///
    /// Element ids follow breadth-first discovery from the identity, right
    /// multiplying by the generators in order, so each element is named by
    /// its shortlex-least word in the generator names.
    pub fn from_generators<T, F>(identity: T, gens: &[(String, T)], op: F, cap: usize) -> Result<Self, GroupError>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut index: HashMap<T, Elem> = HashMap::new();
        let mut elems = vec![identity.clone()];
        let mut names = vec![String::new()];
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (name, gen) in gens {
                let y = op(&elems[x], gen);
                if !index.contains_key(&y) {
                    if elems.len() >= cap {
                        return Err(GroupError::SizeExceeded { order: elems.len() + 1, cap });
                    }
                    let id = elems.len();
                    index.insert(y.clone(), id);
                    names.push(format!("{}{}", names[x], name));
                    elems.push(y);
                    queue.push_back(id);
                }
            }
        }
        names[0] = "1".to_string();

        let n = elems.len();
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let c = op(&elems[a], &elems[b]);
                let id =
                    *index.get(&c).ok_or_else(|| GroupError::TableInvalid("generated set is not closed".into()))?;
                mul[a * n + b] = id as u32;
            }
        }
        Self::from_raw(n, mul, names)
    }

    fn from_raw(n: usize, mul: Vec<u32>, names: Vec<String>) -> Result<Self, GroupError> {
        let at = |a: usize, b: usize| mul[a * n + b] as usize;
        for g in 0..n {
            if at(0, g) != g || at(g, 0) != g {
                return Err(GroupError::TableInvalid("element 0 is not the identity".into()));
            }
        }
        let mut inv = vec![0u32; n];
        for g in 0..n {
            let h = (0..n)
                .find(|&h| at(g, h) == 0)
                .ok_or_else(|| GroupError::TableInvalid(format!("element {g} has no inverse")))?;
            if at(h, g) != 0 {
                return Err(GroupError::TableInvalid(format!(
                    "element {g} has a right inverse that is not a left inverse"
                )));
            }
            inv[g] = h as u32;
        }
        for a in 0..n {
            let mut seen = vec![false; n];
            for b in 0..n {
                let c = at(a, b);
                if seen[c] {
                    return Err(GroupError::TableInvalid(format!("row {a} repeats element {c}")));
                }
                seen[c] = true;
            }
        }
        let assoc_fail = |a: usize, b: usize, c: usize| at(at(a, b), c) != at(a, at(b, c));
        if n <= FULL_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if assoc_fail(a, b, c) {
                            return Err(GroupError::TableInvalid(format!("not associative at ({a}, {b}, {c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(0x5eed_0f9a);
            for _ in 0..ASSOCIATIVITY_SAMPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if assoc_fail(a, b, c) {
                    return Err(GroupError::TableInvalid(format!("not associative at ({a}, {b}, {c})")));
                }
            }
        }

        let mut by_name = HashMap::with_capacity(n);
        for (g, name) in names.iter().enumerate() {
            if by_name.insert(name.clone(), g).is_some() {
                return Err(GroupError::TableInvalid(format!("duplicate element name `{name}`")));
            }
        }
        Ok(Self { order: n, mul, inv, names, by_name })
    }

    /// Cyclic group of order `n` with generator named `gen`; `gen^k` is
    /// named `gen` followed by `k` for `k >= 2`.
    pub fn cyclic(n: usize, gen: &str, cap: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidSpec("cyclic order must be positive".into()));
        }
        if n > cap {
            return Err(GroupError::SizeExceeded { order: n, cap });
        }
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = ((a + b) % n) as u32;
            }
        }
        let names = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => gen.to_string(),
                _ => format!("{gen}{k}"),
            })
            .collect();
        Self::from_raw(n, mul, names)
    }

    /// Dihedral group of order `2m` generated by two reflections whose
    /// product has order `m`.
    pub fn dihedral(m: usize, gens: [&str; 2], cap: usize) -> Result<Self, GroupError> {
        if m < 2 {
            return Err(GroupError::InvalidSpec("dihedral parameter m must be at least 2".into()));
        }
        if 2 * m > cap {
            return Err(GroupError::SizeExceeded { order: 2 * m, cap });
        }
        // (k, f) is the rotation by k followed by f reflections.
        let op = move |x: &(usize, bool), y: &(usize, bool)| {
            let k = if x.1 { (x.0 + m - y.0) % m } else { (x.0 + y.0) % m };
            (k, x.1 ^ y.1)
        };
        let s = (0, true);
        let t = (1, true);
        Self::from_generators((0, false), &[(gens[0].to_string(), s), (gens[1].to_string(), t)], op, cap)
    }

    /// Symmetric group on `k <= 5` points, generated by the adjacent
    /// transpositions `(i, i+1)`.
    pub fn symmetric(k: usize, gens: Option<&[String]>, cap: usize) -> Result<Self, GroupError> {
        if k == 0 || k > MAX_SYMMETRIC_DEGREE {
            return Err(GroupError::InvalidSpec(format!(
                "symmetric degree must be between 1 and {MAX_SYMMETRIC_DEGREE}, got {k}"
            )));
        }
        let names: Vec<String> = match gens {
            Some(g) if g.len() == k - 1 => g.to_vec(),
            Some(g) => {
                return Err(GroupError::InvalidSpec(format!(
                    "symmetric({k}) needs {} generator names, got {}",
                    k - 1,
                    g.len()
                )))
            }
            None => (1..k).map(|i| format!("s{i}")).collect(),
        };
        let generators: Vec<(String, Vec<u8>)> = names
            .into_iter()
            .enumerate()
            .map(|(i, name)| {
                let mut p: Vec<u8> = (0..k as u8).collect();
                p.swap(i, i + 1);
                (name, p)
            })
            .collect();
        Self::from_generators((0..k as u8).collect(), &generators, compose_perms, cap)
    }

    /// Direct product; the first factor is the most significant digit of
    /// the element id.
    pub fn direct_product(factors: &[FiniteGroup], cap: usize) -> Result<Self, GroupError> {
        if factors.is_empty() {
            return Err(GroupError::InvalidSpec("direct product needs at least one factor".into()));
        }
        let n = factors.iter().try_fold(1usize, |acc, f| acc.checked_mul(f.order()).filter(|&o| o <= cap)).ok_or(
            GroupError::SizeExceeded {
                order: factors.iter().map(FiniteGroup::order).fold(1usize, usize::saturating_mul),
                cap,
            },
        )?;
        let digits = |mut x: usize| {
            let mut d = vec![0; factors.len()];
            for (i, f) in factors.iter().enumerate().rev() {
                d[i] = x % f.order();
                x /= f.order();
            }
            d
        };
        let undigits = |d: &[usize]| d.iter().zip(factors).fold(0, |acc, (&x, f)| acc * f.order() + x);
        let all_digits: Vec<Vec<usize>> = (0..n).map(digits).collect();
        let mut mul = vec![0u32; n * n];
        let mut buf = vec![0; factors.len()];
        for a in 0..n {
            for b in 0..n {
                for (i, f) in factors.iter().enumerate() {
                    buf[i] = f.mul(all_digits[a][i], all_digits[b][i]);
                }
                mul[a * n + b] = undigits(&buf) as u32;
            }
        }

        let concat: Vec<String> = all_digits
            .iter()
            .map(|d| {
                let s: String = d
                    .iter()
                    .zip(factors)
                    .filter(|(&x, _)| x != IDENTITY)
                    .map(|(&x, f)| f.name(x).to_string())
                    .collect();
                if s.is_empty() {
                    "1".to_string()
                } else {
                    s
                }
            })
            .collect();
        let mut unique = concat.clone();
        unique.sort();
        unique.dedup();
        let names = if unique.len() == n {
            concat
        } else {
            all_digits
                .iter()
                .enumerate()
                .map(|(g, d)| {
                    if g == 0 {
                        return "1".to_string();
                    }
                    let parts: Vec<&str> = d.iter().zip(factors).map(|(&x, f)| f.name(x)).collect();
                    format!("({})", parts.join(","))
                })
                .collect()
        };
        Self::from_raw(n, mul, names)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, g: Elem) -> Elem {
        self.inv[g] as usize
    }

    /// `g * x * g^-1`.
    #[inline]
    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// Product of a sequence, left to right.
    pub fn product<I: IntoIterator<Item = Elem>>(&self, elems: I) -> Elem {
        elems.into_iter().fold(IDENTITY, |acc, g| self.mul(acc, g))
    }

    pub fn element_order(&self, g: Elem) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != IDENTITY {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn name(&self, g: Elem) -> &str {
        &self.names[g]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_by_name(&self, name: &str) -> Option<Elem> {
        self.by_name.get(name).copied()
    }

    /// The table as nested rows, in the format accepted by
    /// [`FiniteGroup::from_table`].
    pub fn table_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    /// Smallest subgroup containing `gens`.
    pub fn subgroup_generated(&self, gens: &[Elem]) -> Subgroup {
        let mut seen = vec![false; self.order];
        seen[IDENTITY] = true;
        let mut elements = vec![IDENTITY];
        let mut i = 0;
        while i < elements.len() {
            let x = elements[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    elements.push(y);
                }
            }
            i += 1;
        }
        elements.sort_unstable();
        Subgroup { elements }
    }

    /// `g S g^-1`.
    pub fn conjugate_subgroup(&self, subgroup: &Subgroup, g: Elem) -> Subgroup {
        let mut elements: Vec<Elem> = subgroup.elements.iter().map(|&x| self.conj(g, x)).collect();
        elements.sort_unstable();
        Subgroup { elements }
    }
}

#[allow(clippy::ptr_arg)] // matches the `from_generators` operation signature
fn compose_perms(p: &Vec<u8>, q: &Vec<u8>) -> Vec<u8> {
    // Apply q first, then p: (pq)(i) = p(q(i)).
    q.iter().map(|&i| p[i as usize]).collect()
}

/// A subgroup of some [`FiniteGroup`], as a sorted list of element ids.
///
/// Equality is element-set equality. The parent group is not stored; a
/// subgroup is only meaningful next to the group it was built from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subgroup {
    elements: Vec<Elem>,
}

impl Subgroup {
    pub fn trivial() -> Self {
        Self { elements: vec![IDENTITY] }
    }

    /// Checks closure of an explicit element list.
    pub fn from_elements(group: &FiniteGroup, elems: &[Elem]) -> Result<Self, GroupError> {
        let mut elements = elems.to_vec();
        elements.sort_unstable();
        elements.dedup();
        let s = Self { elements };
        let closed = s.elements.iter().all(|&x| x < group.order())
            && s.contains(IDENTITY)
            && s.elements.iter().all(|&a| s.elements.iter().all(|&b| s.contains(group.mul(a, group.inv(b)))));
        if closed {
            Ok(s)
        } else {
            Err(GroupError::NotASubgroup(s.elements))
        }
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Never true: every subgroup contains the identity.
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_nontrivial(&self) -> bool {
        self.elements.len() >= 2
    }

    pub fn contains(&self, g: Elem) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup { elements: self.elements.iter().copied().filter(|&g| other.contains(g)).collect() }
    }

    /// Nonidentity elements, ascending.
    pub fn nonidentity(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elements.iter().copied().filter(|&g| g != IDENTITY)
    }
}

/// JSON description of a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GroupSpec {
    Cyclic {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        gen: Option<String>,
    },
    Dihedral {
        m: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        gens: Option<[String; 2]>,
    },
    Symmetric {
        k: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        gens: Option<Vec<String>>,
    },
    #[serde(alias = "direct_product", alias = "direct-product")]
    Product { factors: Vec<GroupSpec> },
    Table {
        mul: Vec<Vec<Elem>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
    },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        self.build_with_cap(DEFAULT_MAX_ORDER)
    }

    pub fn build_with_cap(&self, cap: usize) -> Result<FiniteGroup, GroupError> {
        match self {
            GroupSpec::Cyclic { n, gen } => FiniteGroup::cyclic(*n, gen.as_deref().unwrap_or("x"), cap),
            GroupSpec::Dihedral { m, gens } => {
                let [s, t] = gens.clone().unwrap_or_else(|| ["s".into(), "t".into()]);
                FiniteGroup::dihedral(*m, [&s, &t], cap)
            }
            GroupSpec::Symmetric { k, gens } => FiniteGroup::symmetric(*k, gens.as_deref(), cap),
            GroupSpec::Product { factors } => {
                let built = factors.iter().map(|f| f.build_with_cap(cap)).collect::<Result<Vec<_>, _>>()?;
                FiniteGroup::direct_product(&built, cap)
            }
            GroupSpec::Table { mul, names } => FiniteGroup::from_table(mul.clone(), names.clone(), cap),
        }
    }
}
