//! Numerical plumbing: complex scalars, a compressed-row sparse matrix, Hermitian
//! functional calculus and a power-iteration norm estimator.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type C64 = Complex64;
pub type Mat = DMatrix<C64>;
pub type Vector = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Complex standard Gaussian (real and imaginary parts i.i.d. N(0, 1/2)).
pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vector {
    Vector::from_fn(n, |_, _| gaussian(rng))
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Mat {
    let mut m = Mat::zeros(rows, cols);
    for j in 0..cols {
        for i in 0..rows {
            m[(i, j)] = gaussian(rng);
        }
    }
    m
}

/// Apply a real function to the spectrum of a Hermitian matrix.
pub fn hermitian_fn(h: &Mat, f: impl Fn(f64) -> C64) -> Mat {
    let sym = (h + h.adjoint()) * c(0.5, 0.0);
    let eig = sym.symmetric_eigen();
    let n = h.nrows();
    let mut d = Mat::zeros(n, n);
    for i in 0..n {
        d[(i, i)] = f(eig.eigenvalues[i]);
    }
    &eig.eigenvectors * d * eig.eigenvectors.adjoint()
}

pub fn hermitian_eigenvalues(h: &Mat) -> Vec<f64> {
    let sym = (h + h.adjoint()) * c(0.5, 0.0);
    let mut ev: Vec<f64> = sym.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

pub fn operator_norm(m: &Mat) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    m.clone()
        .singular_values()
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    a.kronecker(b)
}

/// Compressed sparse row matrix over `C64`.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<C64>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            indptr: vec![0; rows + 1],
            indices: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![ONE; n])
    }

    pub fn diagonal(d: &[C64]) -> Self {
        let n = d.len();
        SparseMatrix {
            rows: n,
            cols: n,
            indptr: (0..=n).collect(),
            indices: (0..n).collect(),
            values: d.to_vec(),
        }
    }

    /// Build from (row, col, value) triplets; duplicates are summed and exact
    /// zeros dropped.
    pub fn from_triplets(rows: usize, cols: usize, mut trip: Vec<(usize, usize, C64)>) -> Self {
        trip.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut indptr = vec![0usize; rows + 1];
        let mut indices = Vec::with_capacity(trip.len());
        let mut values: Vec<C64> = Vec::with_capacity(trip.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, cidx, v) in trip {
            debug_assert!(r < rows && cidx < cols);
            if last == Some((r, cidx)) {
                *values.last_mut().unwrap() += v;
            } else {
                indptr[r + 1] += 1;
                indices.push(cidx);
                values.push(v);
                last = Some((r, cidx));
            }
        }
        for i in 0..rows {
            indptr[i + 1] += indptr[i];
        }
        SparseMatrix {
            rows,
            cols,
            indptr,
            indices,
            values,
        }
        .pruned()
    }

    pub fn from_dense(m: &Mat) -> Self {
        let mut trip = Vec::new();
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                if m[(i, j)] != ZERO {
                    trip.push((i, j, m[(i, j)]));
                }
            }
        }
        Self::from_triplets(m.nrows(), m.ncols(), trip)
    }

    fn pruned(self) -> Self {
        if self.values.iter().all(|v| *v != ZERO) {
            return self;
        }
        let mut indptr = vec![0usize; self.rows + 1];
        let mut indices = Vec::new();
        let mut values = Vec::new();
        for r in 0..self.rows {
            for k in self.indptr[r]..self.indptr[r + 1] {
                if self.values[k] != ZERO {
                    indices.push(self.indices[k]);
                    values.push(self.values[k]);
                }
            }
            indptr[r + 1] = indices.len();
        }
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            indptr,
            indices,
            values,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, r: usize, col: usize) -> C64 {
        let span = self.indptr[r]..self.indptr[r + 1];
        match self.indices[span.clone()].binary_search(&col) {
            Ok(k) => self.values[span.start + k],
            Err(_) => ZERO,
        }
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        (0..self.rows).flat_map(move |r| {
            (self.indptr[r]..self.indptr[r + 1]).map(move |k| (r, self.indices[k], self.values[k]))
        })
    }

    pub fn to_dense(&self) -> Mat {
        let mut m = Mat::zeros(self.rows, self.cols);
        for (r, col, v) in self.triplets() {
            m[(r, col)] = v;
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let trip = self
            .triplets()
            .map(|(r, col, v)| (col, r, v.conj()))
            .collect();
        Self::from_triplets(self.cols, self.rows, trip)
    }

    pub fn conj(&self) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v = v.conj());
        out
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v *= s);
        out.pruned()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(ONE, other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(-ONE, other)
    }

    /// `self + s * other`
    pub fn axpy(&self, s: C64, other: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in sparse add"
        );
        let mut trip: Vec<_> = self.triplets().collect();
        trip.extend(other.triplets().map(|(r, col, v)| (r, col, s * v)));
        Self::from_triplets(self.rows, self.cols, trip)
    }

    /// Sparse product by Gustavson's row-accumulation.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in sparse product");
        let mut acc = vec![ZERO; other.cols];
        let mut mark = vec![usize::MAX; other.cols];
        let mut touched: Vec<usize> = Vec::new();
        let mut indptr = vec![0usize; self.rows + 1];
        let mut indices = Vec::new();
        let mut values = Vec::new();
        for r in 0..self.rows {
            touched.clear();
            for k in self.indptr[r]..self.indptr[r + 1] {
                let a = self.values[k];
                let mid = self.indices[k];
                for kk in other.indptr[mid]..other.indptr[mid + 1] {
                    let col = other.indices[kk];
                    if mark[col] != r {
                        mark[col] = r;
                        acc[col] = ZERO;
                        touched.push(col);
                    }
                    acc[col] += a * other.values[kk];
                }
            }
            touched.sort_unstable();
            for &col in &touched {
                if acc[col] != ZERO {
                    indices.push(col);
                    values.push(acc[col]);
                }
            }
            indptr[r + 1] = indices.len();
        }
        SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            indptr,
            indices,
            values,
        }
    }

    pub fn matvec(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                (self.indptr[r]..self.indptr[r + 1])
                    .map(|k| self.values[k] * x[self.indices[k]])
                    .sum()
            })
            .collect()
    }

    /// `self^* x`
    pub fn adjoint_matvec(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(x.len(), self.rows);
        let mut out = vec![ZERO; self.cols];
        for r in 0..self.rows {
            for k in self.indptr[r]..self.indptr[r + 1] {
                out[self.indices[k]] += self.values[k].conj() * x[r];
            }
        }
        out
    }

    pub fn column(&self, col: usize) -> Vec<C64> {
        let mut e = vec![ZERO; self.cols];
        e[col] = ONE;
        self.matvec(&e)
    }

    /// Frobenius norm over the columns selected by `mask`.
    pub fn masked_frobenius(&self, mask: &[bool]) -> f64 {
        self.triplets()
            .filter(|&(_, col, _)| mask[col])
            .map(|(_, _, v)| v.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn frobenius(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Keep only the listed rows and columns (in the listed order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut col_pos = vec![usize::MAX; self.cols];
        for (j, &col) in cols.iter().enumerate() {
            col_pos[col] = j;
        }
        let mut trip = Vec::new();
        for (i, &r) in rows.iter().enumerate() {
            for k in self.indptr[r]..self.indptr[r + 1] {
                let j = col_pos[self.indices[k]];
                if j != usize::MAX {
                    trip.push((i, j, self.values[k]));
                }
            }
        }
        Self::from_triplets(rows.len(), cols.len(), trip)
    }

    /// Zero every column not selected by `mask`.
    pub fn restrict_columns(&self, mask: &[bool]) -> Self {
        let trip = self.triplets().filter(|&(_, col, _)| mask[col]).collect();
        Self::from_triplets(self.rows, self.cols, trip)
    }
}

/// Outcome of a power iteration on `B^* B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormEstimate {
    pub norm: f64,
    pub iterations: usize,
    pub converged: bool,
}

pub const POWER_TOL: f64 = 1e-8;
pub const POWER_MAX_ITER: usize = 10_000;

/// Largest singular value of `b` by power iteration on `b^* b`, started from
/// `start` (which must be nonzero). Stops when the relative change of the
/// Rayleigh quotient drops below `tol`.
pub fn power_norm(b: &SparseMatrix, start: &[C64], tol: f64, max_iter: usize) -> NormEstimate {
    if b.nnz() == 0 {
        return NormEstimate {
            norm: 0.0,
            iterations: 0,
            converged: true,
        };
    }
    let mut x: Vec<C64> = start.to_vec();
    normalize(&mut x);
    let mut prev = 0.0f64;
    for it in 1..=max_iter {
        let y = b.matvec(&x);
        let mut z = b.adjoint_matvec(&y);
        // Rayleigh quotient of b^*b at unit x equals |bx|^2.
        let rq: f64 = y.iter().map(|v| v.norm_sqr()).sum();
        let nz = normalize(&mut z);
        if nz == 0.0 {
            return NormEstimate {
                norm: rq.sqrt(),
                iterations: it,
                converged: true,
            };
        }
        if (rq - prev).abs() <= tol * rq.max(f64::MIN_POSITIVE) {
            return NormEstimate {
                norm: rq.sqrt(),
                iterations: it,
                converged: true,
            };
        }
        prev = rq;
        x = z;
    }
    NormEstimate {
        norm: prev.sqrt(),
        iterations: max_iter,
        converged: false,
    }
}

fn normalize(x: &mut [C64]) -> f64 {
    let n = x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    if n > 0.0 {
        x.iter_mut().for_each(|v| *v /= n);
    }
    n
}

pub fn vec_norm(x: &[C64]) -> f64 {
    x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

pub fn vec_dist(x: &[C64], y: &[C64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt()
}
