use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{gaussian, power_norm, SparseMatrix, C64, POWER_MAX_ITER, POWER_TOL};

use super::ball::CayleyBall;
use super::convolution::check_window;

pub const DEFAULT_TRIALS: usize = 64;

pub(crate) fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Products `g h` for `g` in shells `0..=kmax` and `h` in shell `l`, kept
/// with the shell of the product.
#[derive(Debug, Clone)]
pub struct BlockProducts {
    kmax: usize,
    l: usize,
    /// `(g, column within shell l, product index, product length)`
    entries: Vec<(usize, usize, usize, usize)>,
}

impl BlockProducts {
    pub fn new(ball: &CayleyBall, kmax: usize, l: usize) -> Result<Self> {
        check_window(ball, kmax, l)?;
        let cols = ball.shell(l);
        let mut entries = Vec::new();
        for g in ball.up_to(kmax) {
            for (j, h) in cols.clone().enumerate() {
                if let Some(p) = ball.product(g, h) {
                    entries.push((g, j, p, ball.length(p)));
                }
            }
        }
        Ok(BlockProducts { kmax, l, entries })
    }

    /// `q_m F(a) q_l` for coefficients indexed by ball position.
    pub fn block(&self, ball: &CayleyBall, a: &[C64], m: usize) -> SparseMatrix {
        let rows = ball.shell(m);
        let trip = self
            .entries
            .iter()
            .filter(|&&(g, _, _, len)| len == m && g < a.len())
            .map(|&(g, j, p, _)| (p - rows.start, j, a[g]))
            .collect();
        SparseMatrix::from_triplets(rows.len(), ball.shell(self.l).len(), trip)
    }

    /// Whether some `g` of length exactly `j` sends shell `l` into shell `m`.
    fn reaches(&self, ball: &CayleyBall, j: usize, m: usize) -> bool {
        self.entries
            .iter()
            .any(|&(g, _, _, len)| len == m && ball.length(g) == j)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RdRow {
    pub k: usize,
    pub l: usize,
    pub m: usize,
    pub trials: usize,
    pub seed: u64,
    /// Largest sampled `‖q_m F(a) q_l‖` over unit `a` supported on shells `0..=k`.
    pub estimate: f64,
    /// `sqrt(Σ_j C_j²)` with `C_j` an a-priori bound on `‖q_m F(a_(j)) q_l‖`
    /// for unit `a_(j)` on shell `j`; bounds the supremum from above.
    pub bound_chain: f64,
    /// Shell parts `j` with a nonzero block outside `|j-l| ≤ m ≤ j+l`.
    pub window_violations: usize,
    pub converged: bool,
}

/// Sampled supremum of `‖q_m F(a) q_l‖` over unit vectors `a` supported on
/// shells `0..=k`, with complex Gaussian draws and power iteration.
pub fn rd_norm(
    ball: &CayleyBall,
    k: usize,
    l: usize,
    m: usize,
    trials: usize,
    seed: u64,
    exec: Execution,
) -> Result<RdRow> {
    let products = BlockProducts::new(ball, k, l)?;
    rd_norm_with(ball, &products, k, m, trials, seed, exec)
}

pub fn rd_norm_with(
    ball: &CayleyBall,
    products: &BlockProducts,
    k: usize,
    m: usize,
    trials: usize,
    seed: u64,
    exec: Execution,
) -> Result<RdRow> {
    let l = products.l;
    check_window(ball, m, l)?;
    if k > products.kmax {
        return Err(Error::Window(format!(
            "support length {k} exceeds precomputed {}",
            products.kmax
        )));
    }
    if trials == 0 {
        return Err(Error::Precondition("at least one trial is required".into()));
    }
    let sizes = ball.shell_sizes();
    let mut chain = 0.0;
    let mut window_violations = 0;
    for j in 0..=k {
        if products.reaches(ball, j, m) {
            chain += sizes[j].min(sizes[l]).min(sizes[m]) as f64;
            if !(j.abs_diff(l) <= m && m <= j + l) {
                window_violations += 1;
            }
        }
    }
    let support = ball.up_to(k).end;
    let cols = sizes[l];
    let runs = exec.map_range(trials, |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, t));
        let mut a: Vec<C64> = (0..support).map(|_| gaussian(&mut rng)).collect();
        let n = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        a.iter_mut().for_each(|z| *z /= n);
        let start: Vec<C64> = (0..cols).map(|_| gaussian(&mut rng)).collect();
        power_norm(
            &products.block(ball, &a, m),
            &start,
            POWER_TOL,
            POWER_MAX_ITER,
        )
    });
    Ok(RdRow {
        k,
        l,
        m,
        trials,
        seed,
        estimate: runs.iter().map(|r| r.norm).fold(0.0, f64::max),
        bound_chain: chain.sqrt(),
        window_violations,
        converged: runs.iter().all(|r| r.converged),
    })
}

/// Rows for every `k ≤ kmax`, `l ≤ lmax`, `m ≤ mmax`, sharing the product
/// tables across `k` and `m`.
pub fn rd_table(
    ball: &CayleyBall,
    kmax: usize,
    lmax: usize,
    mmax: usize,
    trials: usize,
    seed: u64,
    exec: Execution,
) -> Result<Vec<RdRow>> {
    check_window(ball, mmax, lmax)?;
    check_window(ball, kmax, 0)?;
    let mut rows = Vec::new();
    for l in 0..=lmax {
        let products = BlockProducts::new(ball, kmax, l)?;
        for k in 0..=kmax {
            for m in 0..=mmax {
                rows.push(rd_norm_with(ball, &products, k, m, trials, seed, exec)?);
            }
        }
    }
    rows.sort_by_key(|r| (r.k, r.l, r.m));
    Ok(rows)
}

/// Largest estimate per support length `k`: the sampled
/// constant `sup_{l,m} ‖q_m F(a) q_l‖`.
pub fn sup_over_blocks(rows: &[RdRow]) -> Vec<(usize, f64)> {
    let mut out: Vec<(usize, f64)> = Vec::new();
    for r in rows {
        match out.iter_mut().find(|(k, _)| *k == r.k) {
            Some(e) => e.1 = e.1.max(r.estimate),
            None => out.push((r.k, r.estimate)),
        }
    }
    out.sort_by_key(|e| e.0);
    out
}

pub const MAX_FIT_DEGREE: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct RdFit {
    /// Smallest degree whose calibrated bound dominates the table.
    pub degree: Option<usize>,
    pub constant: f64,
    /// `c (k+1)^d - estimate` per row; nonnegative when the fit dominates.
    pub residuals: Vec<f64>,
}

/// For `d = 0, 1, ...` calibrate `c = max est_k / (k+1)^d` on the lower half
/// of the table (`k ≤ ⌈kmax/2⌉`) and accept the first `d` whose bound
/// `c (k+1)^d` dominates every row.
pub fn rd_fit(table: &[(usize, f64)]) -> RdFit {
    let kmax = table.iter().map(|e| e.0).max().unwrap_or(0);
    let cut = kmax.div_ceil(2);
    let bound = |d: usize| {
        let c = table
            .iter()
            .filter(|e| e.0 <= cut)
            .map(|&(k, v)| v / ((k + 1) as f64).powi(d as i32))
            .fold(0.0, f64::max);
        let res: Vec<f64> = table
            .iter()
            .map(|&(k, v)| c * ((k + 1) as f64).powi(d as i32) - v)
            .collect();
        (c, res)
    };
    for d in 0..=MAX_FIT_DEGREE {
        let (c, residuals) = bound(d);
        if residuals
            .iter()
            .zip(table)
            .all(|(r, e)| *r >= -1e-12 * e.1.abs())
        {
            return RdFit {
                degree: Some(d),
                constant: c,
                residuals,
            };
        }
    }
    let (constant, residuals) = bound(MAX_FIT_DEGREE);
    RdFit {
        degree: None,
        constant,
        residuals,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthModel {
    Finite,
    Polynomial,
    Exponential,
}

/// Least-squares line `log |S_n| ≈ intercept + slope · x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogFit {
    pub slope: f64,
    pub intercept: f64,
    pub rms: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthReport {
    pub sizes: Vec<usize>,
    /// Against `x = log n`; the slope is the growth degree.
    pub polynomial: Option<LogFit>,
    /// Against `x = n`; `exp(slope)` is the growth rate.
    pub exponential: Option<LogFit>,
    pub model: GrowthModel,
}

fn least_squares(points: &[(f64, f64)]) -> Option<LogFit> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let rms = (points
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    Some(LogFit {
        slope,
        intercept,
        rms,
    })
}

pub fn growth_series(ball: &CayleyBall) -> GrowthReport {
    let sizes = ball.shell_sizes();
    let nonzero: Vec<(usize, usize)> = sizes
        .iter()
        .copied()
        .enumerate()
        .skip(1)
        .filter(|e| e.1 > 0)
        .collect();
    let polynomial = least_squares(
        &nonzero
            .iter()
            .map(|&(n, s)| ((n as f64).ln(), (s as f64).ln()))
            .collect::<Vec<_>>(),
    );
    let exponential = least_squares(
        &nonzero
            .iter()
            .map(|&(n, s)| (n as f64, (s as f64).ln()))
            .collect::<Vec<_>>(),
    );
    let model = if sizes.last().is_some_and(|&s| s == 0) || sizes.len() == 1 {
        GrowthModel::Finite
    } else {
        match (polynomial, exponential) {
            (Some(p), Some(e)) if e.rms + 1e-9 < p.rms => GrowthModel::Exponential,
            _ => GrowthModel::Polynomial,
        }
    };
    GrowthReport {
        sizes,
        polynomial,
        exponential,
        model,
    }
}
