use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::Deserialize;

use hrg::coxeter::CoxeterSpec;
use hrg::graphprod::{composite_system, GraphOfGroups, GraphProductError, GraphProductSpec, VertexSystems};
use hrg::groups::{GroupSpec, DEFAULT_MAX_ORDER};
use hrg::hypergraph::CayleySystem;

pub const CAP_ENV: &str = "HRG_MAX_GROUP_ORDER";

/// Exit code and message of a failed command.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    pub fn cap(cap: usize) -> Self {
        Self {
            code: 3,
            message: format!("cap exceeded at {cap} elements: the group is infinite or larger than the cap"),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub fn gp_failure(field: &str, e: GraphProductError) -> Failure {
    match e {
        GraphProductError::InfiniteOrCapExceeded { cap } => Failure::cap(cap),
        e => Failure::input(format!("{field}: {e}")),
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemFile {
    system: Option<PlainSystem>,
    coxeter: Option<CoxeterSpec>,
    graph_product: Option<GraphProductSpec>,
    #[serde(default)]
    vertex_systems: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlainSystem {
    group: GroupSpec,
    sigma: Vec<Vec<String>>,
}

pub enum Loaded {
    System(CayleySystem),
    GraphProduct { gp: GraphOfGroups, systems: VertexSystems },
}

pub struct Input {
    pub loaded: Loaded,
    pub cap: usize,
}

/// Group-order cap from the environment.
pub fn env_cap() -> Result<usize, Failure> {
    match std::env::var(CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Failure::input(format!("{CAP_ENV}: `{v}` is not a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_MAX_ORDER),
    }
}

pub fn load(path: &Path) -> Result<Input, Failure> {
    let cap = env_cap()?;
    let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let file: SystemFile =
        serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let loaded = match (file.system, file.coxeter, file.graph_product) {
        (Some(s), None, None) => {
            if !file.vertex_systems.is_empty() {
                return Err(Failure::input("vertex_systems: only allowed with graph_product"));
            }
            Loaded::System(plain_system(s, cap)?)
        }
        (None, Some(c), None) => Loaded::System(c.build().map_err(|e| Failure::input(format!("coxeter: {e}")))?),
        (None, None, Some(g)) => {
            let gp = GraphOfGroups::from_spec_with_cap(&g, cap).map_err(|e| gp_failure("graph_product", e))?;
            let systems =
                VertexSystems::from_names(&gp, &file.vertex_systems).map_err(|e| gp_failure("vertex_systems", e))?;
            Loaded::GraphProduct { gp, systems }
        }
        _ => return Err(Failure::input("input must have exactly one of `system`, `coxeter`, `graph_product`")),
    };
    Ok(Input { loaded, cap })
}

fn plain_system(spec: PlainSystem, cap: usize) -> Result<CayleySystem, Failure> {
    let group = spec.group.build_with_cap(cap).map_err(|e| match e {
        hrg::groups::GroupError::SizeExceeded { cap, .. } => Failure::cap(cap),
        e => Failure::input(format!("system.group: {e}")),
    })?;
    let mut sigma = Vec::with_capacity(spec.sigma.len());
    for (i, names) in spec.sigma.iter().enumerate() {
        let mut gens = Vec::with_capacity(names.len());
        for (j, n) in names.iter().enumerate() {
            let g = group
                .element_by_name(n)
                .ok_or_else(|| Failure::input(format!("system.sigma[{i}][{j}]: unknown element `{n}`")))?;
            if g == hrg::IDENTITY {
                return Err(Failure::input(format!("system.sigma[{i}][{j}]: generator is the identity")));
            }
            gens.push(g);
        }
        sigma.push(group.subgroup_generated(&gens));
    }
    CayleySystem::new(group, sigma).map_err(|e| Failure::input(format!("system.sigma: {e}")))
}

impl Input {
    /// The system itself, or the composite system of a finite graph product.
    pub fn system(&self) -> Result<CayleySystem, Failure> {
        match &self.loaded {
            Loaded::System(s) => Ok(s.clone()),
            Loaded::GraphProduct { gp, systems } => {
                let c = composite_system(gp, systems, self.cap).map_err(|e| gp_failure("graph_product", e))?;
                Ok(c.system)
            }
        }
    }

    pub fn graph_product(&self, command: &str) -> Result<(&GraphOfGroups, &VertexSystems), Failure> {
        match &self.loaded {
            Loaded::GraphProduct { gp, systems } => Ok((gp, systems)),
            Loaded::System(_) => Err(Failure::input(format!("graph_product: `{command}` needs a graph product input"))),
        }
    }
}
