//! Rapid-decay experiments for graph products of finite groups.
//!
//! Everything lives on a [`CayleyBall`]: left convolution by a finitely
//! supported `a` is compressed to `ℓ²(ball)` and cut into shell blocks
//! `q_m F(a) q_l`, whose norms are estimated by power iteration.

mod ball;
mod convolution;
mod norm;
mod preset;

pub use ball::{build_ball, build_ball_with_cap, CayleyBall, DEFAULT_BALL_CAP};
pub use convolution::{convolution, qk_compress, shell_indicator, zone_norm, ConvolutionOperator};
pub use norm::{
    growth_series, rd_fit, rd_norm, rd_norm_with, rd_table, sup_over_blocks, BlockProducts,
    GrowthModel, GrowthReport, LogFit, RdFit, RdRow, DEFAULT_TRIALS, MAX_FIT_DEGREE,
};
pub use preset::{full_norm, run_preset, FullNorm, Preset, RdReport, RdRun};

#[cfg(test)]
mod tests;
