//! Finite-dimensional vertex algebras with a faithful state, realised on
//! their GNS space.
//!
//! Every algebra element is stored as its left multiplication operator in
//! the orthonormal GNS basis `e_0 = ξ, e_1, ..., e_{d-1}`, so the state is
//! the `(0, 0)` entry and the centered part is `x - ω(x) 1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph_words::FiniteGroup;
use crate::linalg::{
    c, gaussian, hermitian_eigenvalues, hermitian_fn, Mat, Vector, C64, ONE, ZERO,
};

pub const FAITHFUL_TOL: f64 = 1e-10;
const STATE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum VertexKind {
    /// Full matrix algebra `M_n` with a density matrix state.
    Matrix { n: usize, density: Mat },
    /// Group algebra of a finite group with its Haar trace.
    Group(FiniteGroup),
}

#[derive(Debug, Clone)]
pub struct VertexAlgebra {
    kind: VertexKind,
    dim: usize,
    /// Left multiplication operators of the canonical algebra basis
    /// (matrix units row-major, or group elements in table order).
    basis: Vec<Mat>,
    /// Inverse of the matrix with columns `Λ_m ξ`, which is invertible
    /// because the state is faithful.
    cyclic_inv: Mat,
    /// `S = A K` with `K` coordinatewise conjugation.
    s_linear: Mat,
    /// `J = U K`.
    j_unitary: Mat,
    nabla: Mat,
    /// Matrix kind only: orthonormal GNS basis inside `vec(M_n)`.
    ambient: Option<Mat>,
}

/// JSON entry: a real number or a `[re, im]` pair.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Real(f64),
    Complex([f64; 2]),
}

impl Scalar {
    pub fn value(self) -> C64 {
        match self {
            Scalar::Real(x) => c(x, 0.0),
            Scalar::Complex([re, im]) => c(re, im),
        }
    }
}

/// Vertex description as read from configuration files.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum VertexSpec {
    Matrix {
        n: usize,
        #[serde(default)]
        density: Option<Vec<Vec<Scalar>>>,
    },
    Group {
        table: Vec<Vec<usize>>,
    },
}

impl VertexSpec {
    pub fn build(&self) -> Result<VertexAlgebra> {
        match self {
            VertexSpec::Matrix { n, density } => {
                let rho = match density {
                    None => tracial_density(*n),
                    Some(rows) => {
                        if rows.len() != *n || rows.iter().any(|r| r.len() != *n) {
                            return Err(Error::InvalidState(format!("density must be {n}x{n}")));
                        }
                        Mat::from_fn(*n, *n, |i, j| rows[i][j].value())
                    }
                };
                VertexAlgebra::matrix(rho)
            }
            VertexSpec::Group { table } => {
                VertexAlgebra::group(FiniteGroup::from_table(table.clone())?)
            }
        }
    }
}

pub fn tracial_density(n: usize) -> Mat {
    Mat::identity(n, n) * c(1.0 / n as f64, 0.0)
}

pub fn diagonal_density(weights: &[f64]) -> Mat {
    let n = weights.len();
    Mat::from_fn(n, n, |i, j| if i == j { c(weights[i], 0.0) } else { ZERO })
}

fn check_density(rho: &Mat) -> Result<()> {
    let n = rho.nrows();
    if n == 0 || rho.ncols() != n {
        return Err(Error::InvalidState(
            "density must be a nonempty square matrix".into(),
        ));
    }
    if (rho - rho.adjoint()).camax() > STATE_TOL {
        return Err(Error::InvalidState("density is not self-adjoint".into()));
    }
    let tr: C64 = rho.trace();
    if (tr - ONE).norm() > STATE_TOL {
        return Err(Error::InvalidState(format!("density has trace {tr}")));
    }
    let min = hermitian_eigenvalues(rho)[0];
    if min <= FAITHFUL_TOL {
        return Err(Error::NonFaithful(min));
    }
    Ok(())
}

fn gram_schmidt(vectors: impl IntoIterator<Item = Vector>, dim: usize) -> Mat {
    let mut basis: Vec<Vector> = Vec::new();
    for mut v in vectors {
        for b in &basis {
            let p = b.dotc(&v);
            v -= b * p;
        }
        // second pass for numerical orthogonality
        for b in &basis {
            let p = b.dotc(&v);
            v -= b * p;
        }
        let nv = v.norm();
        if nv > 1e-10 {
            basis.push(v / c(nv, 0.0));
        }
        if basis.len() == dim {
            break;
        }
    }
    Mat::from_columns(&basis)
}

impl VertexAlgebra {
    /// GNS data of `M_n` with state `x ↦ tr(ρ x)`.
    pub fn matrix(density: Mat) -> Result<Self> {
        check_density(&density)?;
        let n = density.nrows();
        let root = hermitian_fn(&density, |x| c(x.max(0.0).sqrt(), 0.0));
        // vec(a ρ^{1/2}) in row-major order; inner product tr(b* a ρ).
        let vec_rm = |m: &Mat| Vector::from_fn(n * n, |k, _| m[(k / n, k % n)]);
        let units: Vec<Mat> = (0..n * n)
            .map(|k| {
                let mut e = Mat::zeros(n, n);
                e[(k / n, k % n)] = ONE;
                e
            })
            .collect();
        let mut candidates = vec![vec_rm(&root)];
        candidates.extend(units.iter().map(|e| vec_rm(&(e * &root))));
        let ambient = gram_schmidt(candidates, n * n);
        let eye = Mat::identity(n, n);
        let basis = units
            .iter()
            .map(|e| ambient.adjoint() * e.kronecker(&eye) * &ambient)
            .collect();
        Self::finish(VertexKind::Matrix { n, density }, basis, Some(ambient))
    }

    pub fn tracial_matrix(n: usize) -> Self {
        Self::matrix(tracial_density(n)).expect("tracial state is faithful")
    }

    /// Group algebra with the Haar trace; `δ_e` is the cyclic vector.
    pub fn group(group: FiniteGroup) -> Result<Self> {
        let n = group.order();
        let e = group.identity();
        // GNS basis: δ_e first, then the others in table order.
        let order: Vec<usize> = std::iter::once(e)
            .chain((0..n).filter(|&g| g != e))
            .collect();
        let mut pos = vec![0; n];
        for (i, &g) in order.iter().enumerate() {
            pos[g] = i;
        }
        let basis = (0..n)
            .map(|g| {
                let mut m = Mat::zeros(n, n);
                for h in 0..n {
                    m[(pos[group.mul(g, h)], pos[h])] = ONE;
                }
                m
            })
            .collect();
        Self::finish(VertexKind::Group(group), basis, None)
    }

    pub fn cyclic_group(n: usize) -> Self {
        Self::group(FiniteGroup::cyclic(n)).expect("cyclic group")
    }

    fn finish(kind: VertexKind, basis: Vec<Mat>, ambient: Option<Mat>) -> Result<Self> {
        let dim = basis[0].nrows();
        let cyclic = Mat::from_columns(
            &basis
                .iter()
                .map(|b| b.column(0).into_owned())
                .collect::<Vec<_>>(),
        );
        let cyclic_inv = cyclic.try_inverse().ok_or(Error::NonFaithful(0.0))?;
        let mut alg = VertexAlgebra {
            kind,
            dim,
            basis,
            cyclic_inv,
            s_linear: Mat::zeros(0, 0),
            j_unitary: Mat::zeros(0, 0),
            nabla: Mat::zeros(0, 0),
            ambient,
        };
        // S e_k = C_k^* ξ where C_k ξ = e_k.
        let cols: Vec<Vector> = (0..dim)
            .map(|k| {
                let ck =
                    alg.element_from_vector(&Vector::from_fn(
                        dim,
                        |i, _| if i == k { ONE } else { ZERO },
                    ));
                ck.adjoint().column(0).into_owned()
            })
            .collect();
        let a = Mat::from_columns(&cols);
        let gram = a.adjoint() * &a;
        let inv_root = hermitian_fn(&gram, |x| c(1.0 / x.sqrt(), 0.0));
        alg.j_unitary = &a * inv_root;
        alg.nabla = gram.map(|z| z.conj());
        alg.s_linear = a;
        Ok(alg)
    }

    pub fn kind(&self) -> &VertexKind {
        &self.kind
    }

    /// Dimension of the GNS space.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the centered subspace.
    pub fn centered_dim(&self) -> usize {
        self.dim - 1
    }

    pub fn is_group(&self) -> bool {
        matches!(self.kind, VertexKind::Group(_))
    }

    pub fn is_tracial(&self) -> bool {
        (&self.nabla - Mat::identity(self.dim, self.dim)).camax() < 1e-10
    }

    pub fn unit(&self) -> Mat {
        Mat::identity(self.dim, self.dim)
    }

    pub fn basis_ops(&self) -> &[Mat] {
        &self.basis
    }

    /// Left multiplication by a matrix `x ∈ M_n` (matrix kind only).
    pub fn from_matrix(&self, x: &Mat) -> Result<Mat> {
        match &self.kind {
            VertexKind::Matrix { n, .. } => {
                if x.nrows() != *n || x.ncols() != *n {
                    return Err(Error::DimensionMismatch {
                        expected: *n,
                        got: x.nrows(),
                    });
                }
                let amb = self
                    .ambient
                    .as_ref()
                    .expect("matrix kind has ambient basis");
                Ok(amb.adjoint() * x.kronecker(&Mat::identity(*n, *n)) * amb)
            }
            VertexKind::Group(_) => Err(Error::Precondition("not a matrix algebra".into())),
        }
    }

    /// The `n×n` matrix of an element (matrix kind only).
    pub fn to_matrix(&self, x: &Mat) -> Result<Mat> {
        match &self.kind {
            VertexKind::Matrix { n, .. } => {
                let coef = self.coefficients(x);
                Ok(Mat::from_fn(*n, *n, |i, j| coef[i * n + j]))
            }
            VertexKind::Group(_) => Err(Error::Precondition("not a matrix algebra".into())),
        }
    }

    /// `λ_g` (group kind only).
    pub fn group_element(&self, g: usize) -> Result<Mat> {
        match &self.kind {
            VertexKind::Group(gr) if g < gr.order() => Ok(self.basis[g].clone()),
            VertexKind::Group(gr) => Err(Error::DimensionMismatch {
                expected: gr.order(),
                got: g,
            }),
            VertexKind::Matrix { .. } => Err(Error::Precondition("not a group algebra".into())),
        }
    }

    pub fn state(&self, x: &Mat) -> C64 {
        x[(0, 0)]
    }

    pub fn center(&self, x: &Mat) -> Mat {
        x - self.unit() * self.state(x)
    }

    /// Expansion coefficients of `x` in the canonical algebra basis.
    pub fn coefficients(&self, x: &Mat) -> Vector {
        &self.cyclic_inv * x.column(0)
    }

    /// The unique element `x` with `x ξ = η`.
    pub fn element_from_vector(&self, eta: &Vector) -> Mat {
        let coef = &self.cyclic_inv * eta;
        let mut x = Mat::zeros(self.dim, self.dim);
        for (m, b) in self.basis.iter().enumerate() {
            if coef[m] != ZERO {
                x += b * coef[m];
            }
        }
        x
    }

    /// Elements `c_j` with `c_j ξ = e_j` for `j ≥ 1`; they span the centered
    /// part of the algebra.
    pub fn centered_basis(&self) -> Vec<Mat> {
        (1..self.dim)
            .map(|j| {
                self.element_from_vector(&Vector::from_fn(self.dim, |i, _| {
                    if i == j {
                        ONE
                    } else {
                        ZERO
                    }
                }))
            })
            .collect()
    }

    pub fn random_element<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Mat {
        let mut x = Mat::zeros(self.dim, self.dim);
        for b in &self.basis {
            x += b * gaussian(rng);
        }
        x
    }

    pub fn random_centered<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Mat {
        let x = self.random_element(rng);
        self.center(&x)
    }

    /// Modular operator `∇`.
    pub fn modular_operator(&self) -> &Mat {
        &self.nabla
    }

    /// Unitary part `U` of the modular conjugation `J = U K`.
    pub fn modular_conjugation(&self) -> &Mat {
        &self.j_unitary
    }

    /// Apply `J` to a vector.
    pub fn apply_j(&self, eta: &Vector) -> Vector {
        &self.j_unitary * eta.map(|z| z.conj())
    }

    /// Apply the Tomita map `S` to a vector.
    pub fn apply_s(&self, eta: &Vector) -> Vector {
        &self.s_linear * eta.map(|z| z.conj())
    }

    pub fn modular_spectrum(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.nabla)
    }

    /// `∇^{it}`.
    pub fn modular_power(&self, t: f64) -> Mat {
        hermitian_fn(&self.nabla, |x| C64::from_polar(1.0, t * x.ln()))
    }

    /// Modular flow `σ_t(x) = ∇^{it} x ∇^{-it}`.
    pub fn sigma_t(&self, t: f64, x: &Mat) -> Mat {
        let u = self.modular_power(t);
        &u * x * u.adjoint()
    }

    /// `r(a) = J a^* J`, an element of the commutant.
    pub fn right_action(&self, a: &Mat) -> Mat {
        &self.j_unitary * a.transpose() * self.j_unitary.adjoint()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn e(n: usize, i: usize, j: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        m[(i, j)] = ONE;
        m
    }

    fn skewed() -> VertexAlgebra {
        VertexAlgebra::matrix(diagonal_density(&[2.0 / 3.0, 1.0 / 3.0])).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(VertexAlgebra::tracial_matrix(2).dim(), 4);
        assert_eq!(VertexAlgebra::cyclic_group(2).dim(), 2);
        assert_eq!(skewed().dim(), 4);
    }

    #[test]
    fn rejects_bad_states() {
        assert!(matches!(
            VertexAlgebra::matrix(diagonal_density(&[1.0, 0.0])),
            Err(Error::NonFaithful(_))
        ));
        assert!(VertexAlgebra::matrix(diagonal_density(&[0.5, 0.6])).is_err());
        let mut h = diagonal_density(&[0.5, 0.5]);
        h[(0, 1)] = c(0.1, 0.0);
        assert!(VertexAlgebra::matrix(h).is_err());
    }

    #[test]
    fn left_multiplication_is_a_star_homomorphism() {
        let alg = skewed();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let x = crate::linalg::gaussian_matrix(&mut rng, 2, 2);
            let y = crate::linalg::gaussian_matrix(&mut rng, 2, 2);
            let (lx, ly) = (alg.from_matrix(&x).unwrap(), alg.from_matrix(&y).unwrap());
            assert!((alg.from_matrix(&(&x * &y)).unwrap() - &lx * &ly).camax() < 1e-10);
            assert!((alg.from_matrix(&x.adjoint()).unwrap() - lx.adjoint()).camax() < 1e-10);
            assert!((alg.to_matrix(&lx).unwrap() - &x).camax() < 1e-10);
        }
    }

    #[test]
    fn state_is_the_vacuum_entry() {
        let alg = skewed();
        let rho = diagonal_density(&[2.0 / 3.0, 1.0 / 3.0]);
        for i in 0..2 {
            for j in 0..2 {
                let x = e(2, i, j);
                let expected = (&rho * &x).trace();
                assert!((alg.state(&alg.from_matrix(&x).unwrap()) - expected).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn centering() {
        let alg = VertexAlgebra::tracial_matrix(2);
        assert!(alg.center(&alg.unit()).camax() < 1e-15);
        let x = alg.from_matrix(&e(2, 0, 0)).unwrap();
        let expected = alg
            .from_matrix(&(e(2, 0, 0) - Mat::identity(2, 2) * c(0.5, 0.0)))
            .unwrap();
        assert!((alg.center(&x) - expected).camax() < 1e-12);
        let z2 = VertexAlgebra::cyclic_group(2);
        let s = z2.group_element(1).unwrap();
        assert!((z2.center(&s) - &s).camax() < 1e-15);
    }

    #[test]
    fn modular_spectrum_of_skewed_state() {
        let spec = skewed().modular_spectrum();
        let expected = [0.5, 1.0, 1.0, 2.0];
        for (a, b) in spec.iter().zip(expected) {
            assert!((a - b).abs() < 1e-10, "{spec:?}");
        }
        assert!(VertexAlgebra::tracial_matrix(3).is_tracial());
        assert!(VertexAlgebra::group(FiniteGroup::symmetric3())
            .unwrap()
            .is_tracial());
    }

    #[test]
    fn tomita_map_and_conjugation() {
        let alg = skewed();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let j2 = alg.modular_conjugation() * alg.modular_conjugation().map(|z| z.conj());
        assert!((j2 - alg.unit()).camax() < 1e-10);
        for _ in 0..5 {
            let a = alg.random_element(&mut rng);
            let lhs = alg.apply_s(&a.column(0).into_owned());
            assert!((lhs - a.adjoint().column(0)).camax() < 1e-8);
            // J ∇^{1/2} equals S
            let half = hermitian_fn(alg.modular_operator(), |x| c(x.sqrt(), 0.0));
            let via_polar = alg.apply_j(&(half * a.column(0)));
            assert!((via_polar - a.adjoint().column(0)).camax() < 1e-8);
        }
    }

    #[test]
    fn kms_boundary_condition() {
        let alg = skewed();
        let nabla = alg.modular_operator();
        let inv = nabla.clone().try_inverse().unwrap();
        for a in alg.basis_ops() {
            for b in alg.basis_ops() {
                let lhs = alg.state(&(a * b));
                let rhs = alg.state(&(b * (nabla * a * &inv)));
                assert!((lhs - rhs).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn modular_flow_scales_off_diagonal_unit() {
        let alg = skewed();
        let x = alg.from_matrix(&e(2, 0, 1)).unwrap();
        for t in [0.3, 1.0, -2.0] {
            let expected = &x * C64::from_polar(1.0, t * 2f64.ln());
            assert!((alg.sigma_t(t, &x) - expected).camax() < 1e-10);
        }
    }

    #[test]
    fn right_action_commutes_with_left() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for alg in [
            skewed(),
            VertexAlgebra::group(FiniteGroup::symmetric3()).unwrap(),
        ] {
            let a = alg.random_element(&mut rng);
            let b = alg.random_element(&mut rng);
            let r = alg.right_action(&b);
            assert!((&a * &r - &r * &a).camax() < 1e-10);
            // r is anti-multiplicative
            let lhs = alg.right_action(&(&a * &b));
            let rhs = alg.right_action(&b) * alg.right_action(&a);
            assert!((lhs - rhs).camax() < 1e-9);
        }
    }

    #[test]
    fn spec_round_trip() {
        let spec: VertexSpec =
            serde_json::from_str(r#"{"kind":"matrix","n":2,"density":[[[0.6,0],0],[0,0.4]]}"#)
                .unwrap();
        assert_eq!(spec.build().unwrap().dim(), 4);
        let spec: VertexSpec =
            serde_json::from_str(r#"{"kind":"group","table":[[0,1],[1,0]]}"#).unwrap();
        assert!(spec.build().unwrap().is_group());
        assert!(serde_json::from_str::<VertexSpec>(r#"{"kind":"ring"}"#).is_err());
    }
}
