//! Graph products of finite-dimensional operator algebras on an explicitly
//! truncated Fock space.
//!
//! The crate is organised bottom up:
//!
//! * [`graph_words`]: words over a simplicial graph, normal forms, group normal forms.
//! * [`vertex_algebra`]: a matrix block or finite group algebra with a faithful state.
//! * [`fock_space`]: the truncated graph product Hilbert space with left and right actions.
//! * [`expectations_modular`]: conditional expectations, freeness, modular data, ucp maps.
//! * [`fusion_qg`]: irreducible words, fusion and central length functions.
//! * [`rd_lab`]: convolution operators on Cayley balls and polynomial norm bounds.
//!
//! Truncated operators carry a *reach*; anything evaluated outside the zone
//! where truncation is exact is refused with [`Error::Budget`].

pub mod error;
pub mod exec;
pub mod expectations_modular;
pub mod fock_space;
pub mod fusion_qg;
pub mod graph_words;
pub mod linalg;
pub mod rd_lab;
pub mod vertex_algebra;

pub use error::{Error, ErrorKind, Result};
pub use exec::Execution;
