//! Simplicial graphs, words over their vertices, canonical normal forms and
//! normal-form multiplication in graph products of finite groups.

mod graph;
mod group;
mod word;

pub use graph::{GraphSpec, SimplicialGraph, Vertex};
pub use group::{gp_multiply, FiniteGroup, GroupElement, GroupSpec};
pub use word::{MinimalWord, WordPermutation};
