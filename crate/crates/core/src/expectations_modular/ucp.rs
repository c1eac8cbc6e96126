use crate::error::{Error, Result};
use crate::fock_space::{reduced_operator, FockOperator, FockSpace};
use crate::graph_words::Vertex;
use crate::linalg::{c, hermitian_eigenvalues, operator_norm, Mat, SparseMatrix, C64, ONE, ZERO};
use crate::vertex_algebra::{VertexAlgebra, VertexKind};

pub const UCP_TOL: f64 = 1e-10;
pub const CHOI_TOL: f64 = 1e-9;

/// Unital, state-preserving, completely positive map on a vertex algebra,
/// stored through its GNS extension `T(xξ) = φ(x)ξ`.
#[derive(Debug, Clone)]
pub struct UcpMap {
    t: Mat,
}

impl UcpMap {
    /// Validate a GNS-level matrix as the extension of a ucp, state
    /// preserving map.
    pub fn from_gns_matrix(alg: &VertexAlgebra, t: Mat) -> Result<Self> {
        let d = alg.dim();
        if t.nrows() != d || t.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: t.nrows(),
            });
        }
        for i in 0..d {
            let want = if i == 0 { ONE } else { ZERO };
            if (t[(i, 0)] - want).norm() > UCP_TOL {
                return Err(Error::InvalidUcp("map is not unital".into()));
            }
            if (t[(0, i)] - want).norm() > UCP_TOL {
                return Err(Error::InvalidUcp("map does not preserve the state".into()));
            }
        }
        let map = UcpMap { t };
        match alg.kind() {
            VertexKind::Matrix { .. } => {
                let min = hermitian_eigenvalues(&map.choi(alg)?)[0];
                if min < -CHOI_TOL {
                    return Err(Error::InvalidUcp(format!(
                        "Choi matrix has eigenvalue {min:e}"
                    )));
                }
            }
            VertexKind::Group(g) => {
                // Only Fourier multipliers are certified: T must be diagonal
                // in the group basis with a positive definite symbol.
                let off: f64 = (0..d)
                    .flat_map(|i| (0..d).filter(move |&j| j != i).map(move |j| (i, j)))
                    .map(|(i, j)| map.t[(i, j)].norm())
                    .fold(0.0, f64::max);
                if off > UCP_TOL {
                    return Err(Error::InvalidUcp(
                        "group vertex maps must be Fourier multipliers".into(),
                    ));
                }
                let symbol = map.symbol(alg);
                let n = g.order();
                let gram = Mat::from_fn(n, n, |a, b| symbol[g.mul(g.inv(a), b)]);
                if (&gram - gram.adjoint()).camax() > UCP_TOL {
                    return Err(Error::InvalidUcp(
                        "multiplier symbol is not positive definite".into(),
                    ));
                }
                let min = hermitian_eigenvalues(&gram)[0];
                if min < -CHOI_TOL {
                    return Err(Error::InvalidUcp(format!(
                        "multiplier symbol has eigenvalue {min:e}"
                    )));
                }
            }
        }
        Ok(map)
    }

    pub fn identity(alg: &VertexAlgebra) -> Self {
        UcpMap { t: alg.unit() }
    }

    /// `x ↦ ω(x) 1`.
    pub fn state_map(alg: &VertexAlgebra) -> Self {
        let mut t = Mat::zeros(alg.dim(), alg.dim());
        t[(0, 0)] = ONE;
        UcpMap { t }
    }

    /// `x ↦ Σ K x K^*` on a matrix vertex.
    pub fn from_kraus(alg: &VertexAlgebra, kraus: &[Mat]) -> Result<Self> {
        let d = alg.dim();
        let mut t = Mat::zeros(d, d);
        for (k, ck) in alg.centered_basis_with_unit().iter().enumerate() {
            let x = alg.to_matrix(ck)?;
            let mut y = Mat::zeros(x.nrows(), x.ncols());
            for kr in kraus {
                y += kr * &x * kr.adjoint();
            }
            t.set_column(k, &alg.from_matrix(&y)?.column(0));
        }
        Self::from_gns_matrix(alg, t)
    }

    /// Fourier multiplier `λ_g ↦ m(g) λ_g` on a group vertex.
    pub fn multiplier(alg: &VertexAlgebra, symbol: &[C64]) -> Result<Self> {
        let g = match alg.kind() {
            VertexKind::Group(g) => g,
            VertexKind::Matrix { .. } => {
                return Err(Error::InvalidUcp("multipliers need a group vertex".into()))
            }
        };
        if symbol.len() != g.order() {
            return Err(Error::DimensionMismatch {
                expected: g.order(),
                got: symbol.len(),
            });
        }
        let d = alg.dim();
        let mut t = Mat::zeros(d, d);
        for (h, &m) in symbol.iter().enumerate() {
            // λ_h ξ is a basis vector of the GNS space
            let col = alg.group_element(h)?.column(0).into_owned();
            let pos = col
                .iter()
                .position(|z| *z == ONE)
                .expect("permutation column");
            t[(pos, pos)] = m;
        }
        Self::from_gns_matrix(alg, t)
    }

    /// `(φ + ε ω(·)1) / (1 + ε)`.
    pub fn perturb(&self, alg: &VertexAlgebra, eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::Precondition(format!(
                "perturbation parameter must be positive, got {eps}"
            )));
        }
        let mut t = &self.t + Self::state_map(alg).t * c(eps, 0.0);
        t /= c(1.0 + eps, 0.0);
        Self::from_gns_matrix(alg, t)
    }

    pub fn gns_matrix(&self) -> &Mat {
        &self.t
    }

    /// Restriction of `T` to the centered subspace.
    pub fn centered(&self) -> Mat {
        let d = self.t.nrows();
        self.t.view((1, 1), (d - 1, d - 1)).into_owned()
    }

    pub fn centered_norm(&self) -> f64 {
        operator_norm(&self.centered())
    }

    pub fn apply(&self, alg: &VertexAlgebra, x: &Mat) -> Mat {
        alg.element_from_vector(&(&self.t * x.column(0)))
    }

    fn symbol(&self, alg: &VertexAlgebra) -> Vec<C64> {
        let n = alg.dim();
        (0..n)
            .map(|h| {
                let col = alg
                    .group_element(h)
                    .expect("group vertex")
                    .column(0)
                    .into_owned();
                let pos = col
                    .iter()
                    .position(|z| *z == ONE)
                    .expect("permutation column");
                self.t[(pos, pos)]
            })
            .collect()
    }

    /// `Σ E_rs ⊗ φ(E_rs)` for a matrix vertex.
    pub fn choi(&self, alg: &VertexAlgebra) -> Result<Mat> {
        let n = match alg.kind() {
            VertexKind::Matrix { n, .. } => *n,
            VertexKind::Group(_) => {
                return Err(Error::Precondition(
                    "Choi matrix needs a matrix vertex".into(),
                ))
            }
        };
        let mut out = Mat::zeros(n * n, n * n);
        for r in 0..n {
            for s in 0..n {
                let mut e = Mat::zeros(n, n);
                e[(r, s)] = ONE;
                let img = alg.to_matrix(&self.apply(alg, &alg.from_matrix(&e)?))?;
                out += e.kronecker(&img);
            }
        }
        Ok(out)
    }
}

impl VertexAlgebra {
    /// `1, c_1, ..., c_{d-1}` with `c_j ξ = e_j`.
    pub fn centered_basis_with_unit(&self) -> Vec<Mat> {
        std::iter::once(self.unit())
            .chain(self.centered_basis())
            .collect()
    }
}

/// Graph product of per-vertex ucp maps: acts letterwise on reduced
/// operators and as `T_φ = id ⊕ ⊕ T°_{w_1} ⊗ ... ⊗ T°_{w_n}` on the space.
#[derive(Debug, Clone)]
pub struct UcpProduct {
    maps: Vec<UcpMap>,
    t_phi: SparseMatrix,
}

pub fn ucp_graph_product(space: &FockSpace, maps: &[UcpMap]) -> Result<UcpProduct> {
    if maps.len() != space.graph().len() {
        return Err(Error::DimensionMismatch {
            expected: space.graph().len(),
            got: maps.len(),
        });
    }
    for (v, m) in maps.iter().enumerate() {
        UcpMap::from_gns_matrix(space.algebra(v), m.t.clone())?;
    }
    let blocks: Vec<Mat> = maps.iter().map(UcpMap::centered).collect();
    Ok(UcpProduct {
        maps: maps.to_vec(),
        t_phi: space.block_tensor(ONE, &blocks),
    })
}

impl UcpProduct {
    pub fn t_phi(&self) -> &SparseMatrix {
        &self.t_phi
    }

    /// `φ(a_1 ... a_n) = φ_{v_1}(a_1) ... φ_{v_n}(a_n)`.
    pub fn apply_reduced(
        &self,
        space: &FockSpace,
        letters: &[(Vertex, Mat)],
    ) -> Result<FockOperator> {
        let mapped: Vec<(Vertex, Mat)> = letters
            .iter()
            .map(|(v, a)| (*v, self.maps[*v].apply(space.algebra(*v), a)))
            .collect();
        reduced_operator(space, &mapped)
    }

    /// Largest norm of `T_φ` on a word block of each length `0..=cutoff`.
    pub fn block_norms(&self, space: &FockSpace) -> Vec<f64> {
        let mut out = vec![0.0f64; space.cutoff() + 1];
        for b in 0..space.block_count() {
            let r: Vec<usize> = space.block_range(b).collect();
            if r.is_empty() {
                continue;
            }
            let block = self.t_phi.submatrix(&r, &r).to_dense();
            let k = space.block_word(b).len();
            out[k] = out[k].max(operator_norm(&block));
        }
        out
    }
}
