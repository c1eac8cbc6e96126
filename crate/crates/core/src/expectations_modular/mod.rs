//! Structure of the vacuum state: conditional expectations onto subgraph
//! algebras, intersection and amalgamated freeness checks, modular theory,
//! the commutant generators, and graph products of ucp maps.

mod expectation;
mod modular;
mod suites;
mod ucp;

pub use expectation::{
    compressed_residual, cond_expectation, freeness_check, freeness_residual, intersection_check,
    operator_from_vector, random_span_element, word_within, words_over, FreeSide, FreenessFactor,
    FreenessReport, InstanceRow, IntersectionReport, SubgraphProjection, FREENESS_TOL,
    SURVIVOR_TOL,
};
pub use modular::{
    modular_conjugation_flow, modular_data, reversal, right_generator, sigma_t, ModularData,
    MAX_FLOW_TIME,
};
pub use suites::{commutation_suite, moment_suite, CommutationReport};
pub use ucp::{ucp_graph_product, UcpMap, UcpProduct, CHOI_TOL, UCP_TOL};
