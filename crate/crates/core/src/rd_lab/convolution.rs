use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{
    gaussian, power_norm, NormEstimate, SparseMatrix, C64, POWER_MAX_ITER, POWER_TOL,
};

use super::ball::CayleyBall;

/// Left convolution `F(a) = Σ_g a(g) λ_g` compressed to `ℓ²(ball)`.
#[derive(Debug, Clone)]
pub struct ConvolutionOperator {
    pub matrix: SparseMatrix,
    /// Largest length in the support of `a`.
    pub support_length: usize,
    pub coeff_norm: f64,
    zone: usize,
}

impl ConvolutionOperator {
    /// Columns `δ_h` with `|h| ≤ R - k`, where the compression is the full
    /// column of `F(a)`.
    pub fn zone_mask(&self) -> Vec<bool> {
        (0..self.matrix.ncols()).map(|i| i < self.zone).collect()
    }

    pub fn zone_len(&self) -> usize {
        self.zone
    }
}

/// `a` is given as `(ball index, coefficient)` pairs.
pub fn convolution(ball: &CayleyBall, a: &[(usize, C64)]) -> Result<ConvolutionOperator> {
    let n = ball.len();
    let mut k = 0;
    for &(g, _) in a {
        if g >= n {
            return Err(Error::Window(format!(
                "coefficient index {g} outside a ball of {n} elements"
            )));
        }
        k = k.max(ball.length(g));
    }
    let mut trip = Vec::with_capacity(a.len() * n);
    for &(g, z) in a {
        for h in 0..n {
            if let Some(gh) = ball.product(g, h) {
                trip.push((gh, h, z));
            }
        }
    }
    let zone = if k <= ball.radius() {
        ball.up_to(ball.radius() - k).end
    } else {
        0
    };
    Ok(ConvolutionOperator {
        matrix: SparseMatrix::from_triplets(n, n, trip),
        support_length: k,
        coeff_norm: a.iter().map(|(_, z)| z.norm_sqr()).sum::<f64>().sqrt(),
        zone,
    })
}

/// `q_m F(a) q_l`: rows in shell `m`, columns in shell `l`. Every entry is
/// exact once both shells lie in the ball.
pub fn qk_compress(
    ball: &CayleyBall,
    op: &ConvolutionOperator,
    m: usize,
    l: usize,
) -> Result<SparseMatrix> {
    check_window(ball, m, l)?;
    let rows: Vec<usize> = ball.shell(m).collect();
    let cols: Vec<usize> = ball.shell(l).collect();
    Ok(op.matrix.submatrix(&rows, &cols))
}

pub(crate) fn check_window(ball: &CayleyBall, m: usize, l: usize) -> Result<()> {
    if m > ball.radius() || l > ball.radius() {
        return Err(Error::Window(format!(
            "shells m={m}, l={l} do not fit in a ball of radius {}",
            ball.radius()
        )));
    }
    Ok(())
}

/// Norm of `F(a)` on its exact columns, a lower bound for `‖F(a)‖` that is
/// nondecreasing in the radius.
pub fn zone_norm(op: &ConvolutionOperator, seed: u64) -> Result<NormEstimate> {
    if op.zone == 0 {
        return Err(Error::Window(
            "support is longer than the ball radius".into(),
        ));
    }
    let restricted = op.matrix.restrict_columns(&op.zone_mask());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start: Vec<C64> = (0..restricted.ncols())
        .map(|i| {
            if i < op.zone {
                gaussian(&mut rng)
            } else {
                C64::default()
            }
        })
        .collect();
    Ok(power_norm(&restricted, &start, POWER_TOL, POWER_MAX_ITER))
}

/// Coefficient vector that is 1 on every element of shell `k`.
pub fn shell_indicator(ball: &CayleyBall, k: usize) -> Vec<(usize, C64)> {
    ball.shell(k).map(|i| (i, C64::new(1.0, 0.0))).collect()
}
