//! Hyperreflection systems on Cayley hypergraphs of finite groups, and
//! graph products of groups.
//!
//! A system `(G, Σ)` is a finite group with a family of nontrivial
//! subgroups; its Cayley hypergraph has the elements of `G` as vertices and
//! the cosets `gS` as edges. [`hrs::verify_system`] checks that every member
//! of `Σ` acts simply transitively on the components of the complement of
//! its fixed edges. [`words`] provides reduction, lengths and exchange for
//! words over `Σ`, and [`graphprod`] normal forms for graph products.

pub mod coxeter;
pub mod graphprod;
pub mod groups;
pub mod hrs;
pub mod hypergraph;
pub mod words;

pub use coxeter::{coxeter_system, CoxeterFamily};
pub use groups::{Elem, FiniteGroup, GroupSpec, Subgroup, IDENTITY};
pub use hypergraph::CayleySystem;
