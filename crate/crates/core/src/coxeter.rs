//! Finite Coxeter systems as concrete groups.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::{FiniteGroup, GroupError, DEFAULT_MAX_ORDER};
use crate::hypergraph::{CayleySystem, SystemError};

pub const MAX_A_RANK: usize = 4;
pub const MAX_DIHEDRAL_M: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("unsupported Coxeter family: {0}")]
    UnsupportedFamily(String),
    #[error("generators {i} and {j}: order of the product is {found}, expected {expected}")]
    OrderMismatch { i: usize, j: usize, expected: usize, found: usize },
    #[error("edge {0} does not have exactly two vertices")]
    NotAGraph(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    System(#[from] SystemError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoxeterFamily {
    /// `A_n`: the symmetric group on `n + 1` points.
    A(usize),
    /// `I2(m)`: the dihedral group of order `2m`.
    I2(usize),
    /// `B_n`: signed permutations of `n` points.
    B(usize),
}

impl CoxeterFamily {
    pub fn validate(self) -> Result<Self, CoxeterError> {
        let ok = match self {
            CoxeterFamily::A(n) => (1..=MAX_A_RANK).contains(&n),
            CoxeterFamily::I2(m) => (2..=MAX_DIHEDRAL_M).contains(&m),
            CoxeterFamily::B(n) => (2..=3).contains(&n),
        };
        if ok {
            Ok(self)
        } else {
            Err(CoxeterError::UnsupportedFamily(self.label()))
        }
    }

    pub fn rank(self) -> usize {
        match self {
            CoxeterFamily::A(n) | CoxeterFamily::B(n) => n,
            CoxeterFamily::I2(_) => 2,
        }
    }

    pub fn label(self) -> String {
        match self {
            CoxeterFamily::A(n) => format!("A{n}"),
            CoxeterFamily::I2(m) => format!("I2({m})"),
            CoxeterFamily::B(n) => format!("B{n}"),
        }
    }

    pub fn generator_names(self) -> Vec<String> {
        match self {
            CoxeterFamily::I2(_) => vec!["s".into(), "t".into()],
            _ => (1..=self.rank()).map(|i| format!("s{i}")).collect(),
        }
    }

    /// The Coxeter matrix in generator order.
    pub fn matrix(self) -> Vec<Vec<usize>> {
        let r = self.rank();
        let mut m = vec![vec![2; r]; r];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        match self {
            CoxeterFamily::I2(k) => {
                m[0][1] = k;
                m[1][0] = k;
            }
            CoxeterFamily::A(_) | CoxeterFamily::B(_) => {
                for i in 0..r.saturating_sub(1) {
                    m[i][i + 1] = 3;
                    m[i + 1][i] = 3;
                }
                if let CoxeterFamily::B(_) = self {
                    m[0][1] = 4;
                    m[1][0] = 4;
                }
            }
        }
        m
    }

    pub fn group(self) -> Result<FiniteGroup, CoxeterError> {
        let family = self.validate()?;
        let names = family.generator_names();
        let group = match family {
            CoxeterFamily::A(n) => FiniteGroup::symmetric(n + 1, Some(&names), DEFAULT_MAX_ORDER)?,
            CoxeterFamily::I2(m) => FiniteGroup::dihedral(m, ["s", "t"], DEFAULT_MAX_ORDER)?,
            CoxeterFamily::B(n) => signed_permutations(n, &names)?,
        };
        Ok(group)
    }
}

/// `s1` negates the first point, `s{i+1}` swaps points `i` and `i + 1`.
fn signed_permutations(n: usize, names: &[String]) -> Result<FiniteGroup, GroupError> {
    let identity: Vec<i8> = (1..=n as i8).collect();
    let gens: Vec<(String, Vec<i8>)> = names
        .iter()
        .enumerate()
        .map(|(k, name)| {
            let mut p = identity.clone();
            if k == 0 {
                p[0] = -1;
            } else {
                p.swap(k - 1, k);
            }
            (name.clone(), p)
        })
        .collect();
    let op = |a: &Vec<i8>, b: &Vec<i8>| -> Vec<i8> {
        b.iter().map(|&x| x.signum() * a[(x.unsigned_abs() - 1) as usize]).collect()
    };
    FiniteGroup::from_generators(identity, &gens, op, DEFAULT_MAX_ORDER)
}

/// `(W, {⟨s⟩ : s ∈ S})`, with the Coxeter matrix checked against the
/// realized group.
pub fn coxeter_system(family: CoxeterFamily) -> Result<CayleySystem, CoxeterError> {
    let group = family.group()?;
    let gens: Vec<_> =
        family.generator_names().iter().map(|n| group.element_by_name(n).expect("generators are named")).collect();
    let matrix = family.matrix();
    for (i, &a) in gens.iter().enumerate() {
        for (j, &b) in gens.iter().enumerate() {
            let found = group.element_order(group.mul(a, b));
            if found != matrix[i][j] {
                return Err(CoxeterError::OrderMismatch { i, j, expected: matrix[i][j], found });
            }
        }
    }
    let sigma = gens.iter().map(|&s| group.subgroup_generated(&[s])).collect();
    let sys = CayleySystem::new(group, sigma)?;
    if let Some(e) = sys.hypergraph().edges().iter().position(|e| e.len() != 2) {
        return Err(CoxeterError::NotAGraph(e));
    }
    Ok(sys)
}

/// JSON form: `{"type":"coxeter","family":"I2","m":5}` or
/// `{"family":"A","n":3}`. `"family":"A3"` is also accepted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterSpec {
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
}

impl CoxeterSpec {
    pub fn family(&self) -> Result<CoxeterFamily, CoxeterError> {
        let unsupported = || CoxeterError::UnsupportedFamily(self.family.clone());
        if let Some(kind) = &self.kind {
            if kind != "coxeter" {
                return Err(CoxeterError::UnsupportedFamily(format!("type `{kind}`")));
            }
        }
        let name = self.family.trim();
        let (tag, suffix) = if let Some(rest) = name.strip_prefix("I2") {
            ("I2", rest)
        } else if name.is_empty() {
            return Err(unsupported());
        } else {
            name.split_at(1)
        };
        let inline = if suffix.is_empty() { None } else { Some(suffix.parse::<usize>().map_err(|_| unsupported())?) };
        let family = match tag {
            "A" => CoxeterFamily::A(inline.or(self.n).ok_or_else(unsupported)?),
            "B" => CoxeterFamily::B(inline.or(self.n).ok_or_else(unsupported)?),
            "I2" => CoxeterFamily::I2(inline.or(self.m).ok_or_else(unsupported)?),
            _ => return Err(unsupported()),
        };
        family.validate()
    }

    pub fn build(&self) -> Result<CayleySystem, CoxeterError> {
        coxeter_system(self.family()?)
    }
}
