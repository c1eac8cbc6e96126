//! Brute-force reference computations shared by the integration tests.
//! Nothing here calls into the crate's algorithms.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type Cm = DMatrix<Complex64>;

/// Adjacency of the labelled graph on `n` vertices encoded by `mask`, one bit
/// per pair `(i, j)` with `i < j` in lexicographic order.
pub fn adjacency_from_mask(n: usize, mask: u32) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; n]; n];
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                adj[i][j] = true;
                adj[j][i] = true;
            }
            bit += 1;
        }
    }
    adj
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Every word reachable from `w` by swapping neighbouring letters joined by
/// an edge or merging two equal neighbouring letters into one.
pub fn rewrite_closure(adj: &[Vec<bool>], w: &[usize]) -> HashSet<Vec<usize>> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.to_vec());
    queue.push_back(w.to_vec());
    while let Some(x) = queue.pop_front() {
        for i in 0..x.len().saturating_sub(1) {
            let (a, b) = (x[i], x[i + 1]);
            let next = if a == b {
                let mut y = x.clone();
                y.remove(i);
                y
            } else if adj[a][b] {
                let mut y = x.clone();
                y.swap(i, i + 1);
                y
            } else {
                continue;
            };
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// Swap-only closure: the shuffle class of `w`.
pub fn swap_class(adj: &[Vec<bool>], w: &[usize]) -> HashSet<Vec<usize>> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.to_vec());
    queue.push_back(w.to_vec());
    while let Some(x) = queue.pop_front() {
        for i in 0..x.len().saturating_sub(1) {
            if x[i] != x[i + 1] && adj[x[i]][x[i + 1]] {
                let mut y = x.clone();
                y.swap(i, i + 1);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    seen
}

/// A word is reduced when nothing in its shuffle class has two equal
/// neighbours.
pub fn oracle_reduced(adj: &[Vec<bool>], w: &[usize]) -> bool {
    swap_class(adj, w)
        .iter()
        .all(|x| x.windows(2).all(|p| p[0] != p[1]))
}

pub fn len_lex_min(words: &HashSet<Vec<usize>>) -> Vec<usize> {
    words
        .iter()
        .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
        .cloned()
        .expect("nonempty closure")
}

pub fn all_words(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for v in 0..n {
                let mut x: Vec<usize> = w.clone();
                x.push(v);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn kron(a: &Cm, b: &Cm) -> Cm {
    let (p, q) = (b.nrows(), b.ncols());
    Cm::from_fn(a.nrows() * p, a.ncols() * q, |i, j| {
        a[(i / p, j / q)] * b[(i % p, j % q)]
    })
}

pub fn normalized_trace(m: &Cm) -> Complex64 {
    m.trace() / m.nrows() as f64
}

/// Words of the free product of `n` copies of `Z/2` (no two equal
/// neighbours) up to length `r`, grouped by length.
pub fn free_z2_words(n: usize, r: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..r {
        let mut next = Vec::new();
        for w in &layer {
            for s in 0..n as u8 {
                if w.first() != Some(&s) {
                    let mut x = vec![s];
                    x.extend_from_slice(w);
                    next.push(x);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Norm of `Σ_s λ_s` on the columns `δ_h` with `|h| ≤ r - 1` of the ball of
/// radius `r` in the free product of `n` copies of `Z/2`, by plain power
/// iteration on `A*A` run until the Rayleigh quotient stalls.
pub fn free_z2_generator_norm(n: usize, r: usize) -> f64 {
    let words = free_z2_words(n, r);
    let index: HashMap<&[u8], usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_slice(), i))
        .collect();
    // columns of A restricted to short h
    let cols: Vec<Vec<usize>> = words
        .iter()
        .filter(|h| h.len() < r)
        .map(|h| {
            (0..n as u8)
                .map(|s| {
                    let gh: Vec<u8> = if h.first() == Some(&s) {
                        h[1..].to_vec()
                    } else {
                        std::iter::once(s).chain(h.iter().copied()).collect()
                    };
                    index[gh.as_slice()]
                })
                .collect()
        })
        .collect();
    let m = cols.len();
    let mut x: Vec<f64> = (0..m).map(|i| 1.0 + (i % 7) as f64 * 0.01).collect();
    let mut last = 0.0;
    for _ in 0..200_000 {
        let mut y = vec![0.0; words.len()];
        for (j, c) in cols.iter().enumerate() {
            for &i in c {
                y[i] += x[j];
            }
        }
        let mut z: Vec<f64> = cols.iter().map(|c| c.iter().map(|&i| y[i]).sum()).collect();
        let nx: f64 = x.iter().map(|t| t * t).sum::<f64>().sqrt();
        let nz: f64 = z.iter().map(|t| t * t).sum::<f64>().sqrt();
        let est = (nz / nx).sqrt();
        z.iter_mut().for_each(|t| *t /= nz);
        x = z;
        if (est - last).abs() < 1e-14 * est {
            return est;
        }
        last = est;
    }
    last
}
