//! Irreducible representations of graph products of compact quantum groups
//! given by per-vertex fusion tables.

mod data;
mod irr;
mod length;

pub use data::{FusionData, FusionRule, VertexFusion, VertexFusionSpec};
pub use irr::{dual, fuse, irr_enumerate, multiplier_product, FusionMultiset, IrrWord};
pub use length::{
    block_length, bump_length, check_subadditive, graph_length, CentralLength, SubadditivityReport,
};
