use crate::error::{Error, Result};
use crate::fock_space::{advance, reduced_operator, rho, FockOperator, FockSpace};
use crate::graph_words::Vertex;
use crate::linalg::{c, hermitian_fn, Mat, SparseMatrix, C64, ONE};

pub const MAX_FLOW_TIME: f64 = 10.0;

/// Modular data of the vacuum state on the truncated space. `J = U K` with
/// `K` coordinatewise conjugation; `∇` is block diagonal.
#[derive(Debug, Clone)]
pub struct ModularData {
    /// Reversal permutation `H_w → H_{w̄}`.
    pub reversal: SparseMatrix,
    /// Unitary part of `J`.
    pub j_unitary: SparseMatrix,
    pub nabla: SparseMatrix,
}

fn centered_part(m: &Mat) -> Mat {
    let d = m.nrows();
    m.view((1, 1), (d - 1, d - 1)).into_owned()
}

/// Permutation sending `ξ_1 ⊗ ... ⊗ ξ_n ∈ H_w` to `ξ_n ⊗ ... ⊗ ξ_1`,
/// transported to the minimal block of the reversed word.
pub fn reversal(space: &FockSpace) -> SparseMatrix {
    let mut trip = vec![(0, 0, ONE)];
    for b in 1..space.block_count() {
        let word = space.block_word(b).letters();
        let rev: Vec<Vertex> = word.iter().rev().copied().collect();
        let dims = space.block_dims(b);
        let mut idx = vec![0usize; dims.len()];
        for col in space.block_range(b) {
            let ridx: Vec<usize> = idx.iter().rev().copied().collect();
            let row = space
                .coord_of(&rev, &ridx)
                .expect("reversed word has the same length");
            trip.push((row, col, ONE));
            advance(&mut idx, &dims);
        }
    }
    SparseMatrix::from_triplets(space.dim(), space.dim(), trip)
}

pub fn modular_data(space: &FockSpace) -> ModularData {
    let rev = reversal(space);
    let us: Vec<Mat> = space
        .algebras()
        .iter()
        .map(|a| centered_part(a.modular_conjugation()))
        .collect();
    let ns: Vec<Mat> = space
        .algebras()
        .iter()
        .map(|a| centered_part(a.modular_operator()))
        .collect();
    let j_unitary = rev.matmul(&space.block_tensor(ONE, &us));
    let nabla = space.block_tensor(ONE, &ns);
    ModularData {
        reversal: rev,
        j_unitary,
        nabla,
    }
}

impl ModularData {
    /// `∇^{s}` for real `s`, block by block.
    pub fn nabla_power(space: &FockSpace, s: f64) -> SparseMatrix {
        let ns: Vec<Mat> = space
            .algebras()
            .iter()
            .map(|a| centered_part(&hermitian_fn(a.modular_operator(), |x| c(x.powf(s), 0.0))))
            .collect();
        space.block_tensor(ONE, &ns)
    }

    /// `∇^{it}`.
    pub fn nabla_it(space: &FockSpace, t: f64) -> SparseMatrix {
        let ns: Vec<Mat> = space
            .algebras()
            .iter()
            .map(|a| centered_part(&a.modular_power(t)))
            .collect();
        space.block_tensor(ONE, &ns)
    }

    pub fn apply_j(&self, eta: &[C64]) -> Vec<C64> {
        let conj: Vec<C64> = eta.iter().map(|z| z.conj()).collect();
        self.j_unitary.matvec(&conj)
    }

    /// `S = J ∇^{1/2}`.
    pub fn apply_s(&self, space: &FockSpace, eta: &[C64]) -> Vec<C64> {
        let half = Self::nabla_power(space, 0.5);
        self.apply_j(&half.matvec(eta))
    }

    /// `J T J`, a linear operator.
    pub fn conjugate(&self, t: &FockOperator) -> FockOperator {
        FockOperator {
            matrix: self
                .j_unitary
                .matmul(&t.matrix.conj())
                .matmul(&self.j_unitary.adjoint()),
            reach: t.reach,
        }
    }

    /// Sorted spectrum of `∇`.
    pub fn spectrum(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = Vec::with_capacity(self.nabla.nrows());
        // ∇ is block diagonal with small blocks; diagonalize per connected block.
        let n = self.nabla.nrows();
        let mut seen = vec![false; n];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, j, _) in self.nabla.triplets() {
            adj[i].push(j);
            adj[j].push(i);
        }
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < comp.len() {
                for &t in &adj[comp[k]] {
                    if !seen[t] {
                        seen[t] = true;
                        comp.push(t);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            let block = self.nabla.submatrix(&comp, &comp).to_dense();
            ev.extend(crate::linalg::hermitian_eigenvalues(&block));
        }
        ev.sort_by(|a, b| a.total_cmp(b));
        ev
    }
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t.abs() <= MAX_FLOW_TIME {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "flow time {t} outside [-{MAX_FLOW_TIME}, {MAX_FLOW_TIME}]"
        )))
    }
}

/// Reduced operator with every letter moved by its vertex modular flow.
pub fn sigma_t(space: &FockSpace, t: f64, letters: &[(Vertex, Mat)]) -> Result<FockOperator> {
    check_time(t)?;
    let moved: Vec<(Vertex, Mat)> = letters
        .iter()
        .map(|(v, a)| (*v, space.algebra(*v).sigma_t(t, a)))
        .collect();
    let op = reduced_operator(space, &moved)?;
    space.check_budget(op.reach)?;
    Ok(op)
}

/// `∇^{it} T ∇^{-it}`.
pub fn modular_conjugation_flow(
    space: &FockSpace,
    t: f64,
    op: &FockOperator,
) -> Result<FockOperator> {
    check_time(t)?;
    let u = ModularData::nabla_it(space, t);
    Ok(FockOperator {
        matrix: u.matmul(&op.matrix).matmul(&u.adjoint()),
        reach: op.reach,
    })
}

/// Right generator `ρ_v(J_v a^* J_v)`.
pub fn right_generator(space: &FockSpace, v: Vertex, a: &Mat) -> Result<FockOperator> {
    space.graph().check_vertex(v)?;
    rho(space, v, &space.algebra(v).right_action(a))
}
