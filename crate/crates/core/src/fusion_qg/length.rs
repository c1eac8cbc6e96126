use crate::error::{Error, Result};
use crate::graph_words::SimplicialGraph;

use super::data::FusionData;
use super::irr::{dual, fuse, IrrWord};

/// Length on irreducibles of a graph product built from per-vertex lengths:
/// `ℓ(α) = Σ f_{v_i}(α_i) + bump·[α ≠ 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralLength {
    values: Vec<Vec<f64>>,
    bump: f64,
}

impl CentralLength {
    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn bump(&self) -> f64 {
        self.bump
    }

    pub fn eval(&self, alpha: &IrrWord) -> f64 {
        let s: f64 = alpha
            .letters()
            .iter()
            .map(|&(v, a)| self.values[v][a])
            .sum();
        if alpha.is_trivial() {
            s
        } else {
            s + self.bump
        }
    }

    /// Index `n` of the shell `n ≤ ℓ(α) < n + 1`.
    pub fn shell(&self, alpha: &IrrWord) -> usize {
        self.eval(alpha).floor() as usize
    }
}

/// Validate per-vertex lengths: finite, nonnegative, zero on the trivial
/// label and invariant under the contragredient.
pub fn graph_length(data: &FusionData, values: Vec<Vec<f64>>) -> Result<CentralLength> {
    if values.len() != data.len() {
        return Err(Error::DimensionMismatch {
            expected: data.len(),
            got: values.len(),
        });
    }
    for (v, f) in values.iter().enumerate() {
        let vf = data.vertex(v);
        if f.len() != vf.len() {
            return Err(Error::DimensionMismatch {
                expected: vf.len(),
                got: f.len(),
            });
        }
        for (a, &x) in f.iter().enumerate() {
            if !x.is_finite() || x < 0.0 {
                return Err(Error::Precondition(format!(
                    "length {x} at vertex #{v} is negative or not finite"
                )));
            }
            if (x - f[vf.dual(a)]).abs() > 1e-12 {
                return Err(Error::Precondition(format!(
                    "length at vertex #{v} is not invariant under duals"
                )));
            }
        }
        if f[vf.trivial()] != 0.0 {
            return Err(Error::Precondition(format!(
                "length of the trivial label at vertex #{v} is not zero"
            )));
        }
    }
    Ok(CentralLength { values, bump: 0.0 })
}

/// Same length plus one on every nontrivial irreducible.
pub fn bump_length(f: &CentralLength) -> CentralLength {
    CentralLength {
        values: f.values.clone(),
        bump: f.bump + 1.0,
    }
}

/// Word length: one per letter.
pub fn block_length(data: &FusionData) -> CentralLength {
    let values = (0..data.len())
        .map(|v| {
            let vf = data.vertex(v);
            (0..vf.len())
                .map(|a| if a == vf.trivial() { 0.0 } else { 1.0 })
                .collect()
        })
        .collect();
    CentralLength { values, bump: 0.0 }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubadditivityReport {
    pub pairs: usize,
    /// Smallest `ℓ(α) + ℓ(β) - ℓ(γ)` over summands `γ ⊂ α ⊗ β`.
    pub worst_slack: f64,
    /// Largest `|ℓ(ᾱ) - ℓ(α)|`.
    pub dual_defect: f64,
}

/// Check `ℓ(γ) ≤ ℓ(α) + ℓ(β)` for every summand and `ℓ(ᾱ) = ℓ(α)` over all
/// pairs drawn from `words`.
pub fn check_subadditive(
    g: &SimplicialGraph,
    data: &FusionData,
    f: &CentralLength,
    words: &[IrrWord],
) -> Result<SubadditivityReport> {
    let mut report = SubadditivityReport {
        pairs: 0,
        worst_slack: f64::INFINITY,
        dual_defect: 0.0,
    };
    for a in words {
        report.dual_defect = report
            .dual_defect
            .max((f.eval(&dual(g, data, a)) - f.eval(a)).abs());
        for b in words {
            report.pairs += 1;
            let base = f.eval(a) + f.eval(b);
            for gamma in fuse(g, data, a, b)?.keys() {
                report.worst_slack = report.worst_slack.min(base - f.eval(gamma));
            }
        }
    }
    Ok(report)
}
