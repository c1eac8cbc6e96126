use crate::error::{Error, Result};
use crate::graph_words::Vertex;
use crate::linalg::{Mat, SparseMatrix, C64, ONE};

use super::space::{FockSpace, Meet};

/// A truncated operator together with its reach: the largest increase of
/// word length its exact action can cause. It agrees with the untruncated
/// operator on every summand of length at most `cutoff - reach`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    pub matrix: SparseMatrix,
    pub reach: usize,
}

impl FockOperator {
    pub fn identity(space: &FockSpace) -> Self {
        FockOperator {
            matrix: SparseMatrix::identity(space.dim()),
            reach: 0,
        }
    }

    pub fn zero(space: &FockSpace) -> Self {
        FockOperator {
            matrix: SparseMatrix::zeros(space.dim(), space.dim()),
            reach: 0,
        }
    }

    pub fn mul(&self, other: &FockOperator) -> FockOperator {
        FockOperator {
            matrix: self.matrix.matmul(&other.matrix),
            reach: self.reach + other.reach,
        }
    }

    pub fn add(&self, other: &FockOperator) -> FockOperator {
        FockOperator {
            matrix: self.matrix.add(&other.matrix),
            reach: self.reach.max(other.reach),
        }
    }

    pub fn sub(&self, other: &FockOperator) -> FockOperator {
        FockOperator {
            matrix: self.matrix.sub(&other.matrix),
            reach: self.reach.max(other.reach),
        }
    }

    pub fn scale(&self, s: C64) -> FockOperator {
        FockOperator {
            matrix: self.matrix.scale(s),
            reach: self.reach,
        }
    }

    pub fn adjoint(&self) -> FockOperator {
        FockOperator {
            matrix: self.matrix.adjoint(),
            reach: self.reach,
        }
    }

    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        self.matrix.matvec(x)
    }

    /// Product of a nonempty sequence, left to right.
    pub fn product<'a>(ops: impl IntoIterator<Item = &'a FockOperator>) -> Option<FockOperator> {
        let mut it = ops.into_iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, op| acc.mul(op)))
    }
}

/// Frobenius norm of `a - b` over the columns where both are exact. This
/// bounds the operator norm of the difference restricted to those columns.
pub fn safe_residual(space: &FockSpace, a: &FockOperator, b: &FockOperator) -> f64 {
    let mask = space.safe_mask(a.reach.max(b.reach));
    a.matrix.sub(&b.matrix).masked_frobenius(&mask)
}

/// Frobenius norm of an operator over its exact columns.
pub fn safe_norm(space: &FockSpace, a: &FockOperator) -> f64 {
    a.matrix.masked_frobenius(&space.safe_mask(a.reach))
}

fn check_element(space: &FockSpace, v: Vertex, x: &Mat) -> Result<()> {
    space.graph().check_vertex(v)?;
    let d = space.algebra(v).dim();
    if x.nrows() != d || x.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: x.nrows(),
        });
    }
    Ok(())
}

fn vertex_action(space: &FockSpace, v: Vertex, x: &Mat, left: bool) -> Result<FockOperator> {
    check_element(space, v, x)?;
    let d = space.algebra(v).dim();
    let n = space.dim();
    let mut trip: Vec<(usize, usize, C64)> = Vec::with_capacity(n * d);
    let mut scratch: Vec<usize> = Vec::new();
    for (b, meet) in space.meet(v, left).iter().enumerate() {
        let dims = space.block_dims(b);
        let mut idx = vec![0usize; dims.len()];
        for col in space.block_range(b) {
            match meet {
                Meet::Free { up } => {
                    // x acts on ξ in the new tensor slot
                    trip.push((col, col, x[(0, 0)]));
                    if let Some(t) = up {
                        for i in 1..d {
                            with_inserted(&mut scratch, &idx, None, i - 1, left);
                            trip.push((space.place(t, &scratch), col, x[(i, 0)]));
                        }
                    }
                }
                Meet::Absorb { pos, down, same } => {
                    let k = idx[*pos] + 1;
                    with_inserted(&mut scratch, &idx, Some(*pos), usize::MAX, left);
                    trip.push((space.place(down, &scratch), col, x[(0, k)]));
                    for i in 1..d {
                        with_inserted(&mut scratch, &idx, Some(*pos), i - 1, left);
                        trip.push((space.place(same, &scratch), col, x[(i, k)]));
                    }
                }
            }
            advance(&mut idx, &dims);
        }
    }
    Ok(FockOperator {
        matrix: SparseMatrix::from_triplets(n, n, trip),
        reach: 1,
    })
}

/// Row-major increment of a multi-index.
pub(crate) fn advance(idx: &mut [usize], dims: &[usize]) {
    for p in (0..idx.len()).rev() {
        idx[p] += 1;
        if idx[p] < dims[p] {
            return;
        }
        idx[p] = 0;
    }
}

/// Write into `out` the multi-index `idx` with position `remove` dropped and
/// `new` inserted at the front (left) or back (right); `new == usize::MAX`
/// inserts nothing.
fn with_inserted(
    out: &mut Vec<usize>,
    idx: &[usize],
    remove: Option<usize>,
    new: usize,
    left: bool,
) {
    out.clear();
    if left && new != usize::MAX {
        out.push(new);
    }
    out.extend(
        idx.iter()
            .enumerate()
            .filter(|&(p, _)| Some(p) != remove)
            .map(|(_, &i)| i),
    );
    if !left && new != usize::MAX {
        out.push(new);
    }
}

/// Left action `λ_v(x)`.
pub fn lambda(space: &FockSpace, v: Vertex, x: &Mat) -> Result<FockOperator> {
    vertex_action(space, v, x, true)
}

/// Right action `ρ_v(x)`, acting on the last tensor factor.
pub fn rho(space: &FockSpace, v: Vertex, x: &Mat) -> Result<FockOperator> {
    vertex_action(space, v, x, false)
}

pub const CENTER_TOL: f64 = 1e-12;

/// `λ_{v_1}(a_1) ... λ_{v_n}(a_n)` for centered letters along a reduced word.
pub fn reduced_operator(space: &FockSpace, letters: &[(Vertex, Mat)]) -> Result<FockOperator> {
    let word: Vec<Vertex> = letters.iter().map(|(v, _)| *v).collect();
    for &v in &word {
        space.graph().check_vertex(v)?;
    }
    if !space.graph().is_reduced(&word) {
        return Err(Error::NotReduced(space.graph().format_word(&word)));
    }
    for (position, (v, a)) in letters.iter().enumerate() {
        let value = space.algebra(*v).state(a).norm();
        if value > CENTER_TOL {
            return Err(Error::NotCentered { position, value });
        }
    }
    let mut acc = FockOperator::identity(space);
    for (v, a) in letters {
        acc = acc.mul(&lambda(space, *v, a)?);
    }
    Ok(acc)
}

/// `⟨T Ω, Ω⟩`, refused when the truncation could have corrupted it.
pub fn vacuum_state(space: &FockSpace, t: &FockOperator) -> Result<C64> {
    space.check_budget(t.reach)?;
    Ok(t.matrix.get(0, 0))
}

/// `T Ω`, refused when the truncation could have corrupted it.
pub fn apply_to_vacuum(space: &FockSpace, t: &FockOperator) -> Result<Vec<C64>> {
    space.check_budget(t.reach)?;
    Ok(t.matrix.column(0))
}

/// Elementary tensor `η_1 ⊗ ... ⊗ η_n` of centered vectors along a reduced
/// word, placed in its minimal block.
pub fn tensor_vector(space: &FockSpace, word: &[Vertex], factors: &[Vec<C64>]) -> Option<Vec<C64>> {
    let mut out = space.vacuum();
    out[0] = crate::linalg::ZERO;
    if word.is_empty() {
        out[0] = ONE;
        return Some(out);
    }
    let dims: Vec<usize> = word
        .iter()
        .map(|&v| space.algebra(v).centered_dim())
        .collect();
    let total: usize = dims.iter().product();
    let mut idx = vec![0usize; word.len()];
    for _ in 0..total {
        let amp: C64 = idx.iter().zip(factors).map(|(&i, f)| f[i]).product();
        let coord = space.coord_of(word, &idx)?;
        out[coord] += amp;
        advance(&mut idx, &dims);
    }
    Some(out)
}
