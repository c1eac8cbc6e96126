use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph_words::{MinimalWord, SimplicialGraph, Vertex};
use crate::linalg::{SparseMatrix, C64, ONE};
use crate::vertex_algebra::VertexAlgebra;

pub const DEFAULT_DIM_CAP: usize = 2_000_000;

/// Where a letter-level move sends a block: the target block and, for each
/// position of the word as constructed, the stride of that factor in the
/// target block's row-major layout.
#[derive(Debug, Clone)]
pub(crate) struct Transition {
    pub block: usize,
    pub strides: Vec<usize>,
}

/// How `v` meets the word of a block from one side.
#[derive(Debug, Clone)]
pub(crate) enum Meet {
    /// `v` is compatible: acting can only add a letter (`up`, absent when
    /// the result would exceed the cutoff).
    Free { up: Option<Transition> },
    /// The word absorbs `v` at position `pos`: the result is either the
    /// word with that letter removed (`down`) or the same block (`same`).
    Absorb {
        pos: usize,
        down: Transition,
        same: Transition,
    },
}

/// Truncated graph product Hilbert space: `CΩ ⊕ ⊕ H_w` over minimal words
/// `w` of length at most the cutoff, each `H_w` the tensor product of the
/// centered vertex spaces along `w` in row-major order.
#[derive(Debug, Clone)]
pub struct FockSpace {
    graph: SimplicialGraph,
    algebras: Vec<VertexAlgebra>,
    cutoff: usize,
    words: Vec<MinimalWord>,
    offsets: Vec<usize>,
    index: HashMap<MinimalWord, usize>,
    complete: bool,
    left: Vec<Vec<Meet>>,
    right: Vec<Vec<Meet>>,
}

impl FockSpace {
    pub fn build(
        graph: &SimplicialGraph,
        algebras: &[VertexAlgebra],
        cutoff: usize,
    ) -> Result<Self> {
        Self::build_with_cap(graph, algebras, cutoff, DEFAULT_DIM_CAP)
    }

    pub fn build_with_cap(
        graph: &SimplicialGraph,
        algebras: &[VertexAlgebra],
        cutoff: usize,
        cap: usize,
    ) -> Result<Self> {
        if algebras.len() != graph.len() {
            return Err(Error::DimensionMismatch {
                expected: graph.len(),
                got: algebras.len(),
            });
        }
        let all = graph.enumerate_minimal(cutoff + 1);
        let complete = all.last().is_none_or(|w| w.len() <= cutoff);
        let words: Vec<MinimalWord> = all.into_iter().filter(|w| w.len() <= cutoff).collect();
        let mut offsets = Vec::with_capacity(words.len() + 1);
        let mut total = 0usize;
        for w in &words {
            offsets.push(total);
            let d: usize = w
                .letters()
                .iter()
                .map(|&v| algebras[v].centered_dim())
                .product();
            total = total.checked_add(d).ok_or(Error::SizeCap {
                size: usize::MAX,
                cap,
            })?;
            if total > cap {
                return Err(Error::SizeCap { size: total, cap });
            }
        }
        offsets.push(total);
        let index = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let mut space = FockSpace {
            graph: graph.clone(),
            algebras: algebras.to_vec(),
            cutoff,
            words,
            offsets,
            index,
            complete,
            left: Vec::new(),
            right: Vec::new(),
        };
        space.left = graph.vertices().map(|v| space.meets(v, true)).collect();
        space.right = graph.vertices().map(|v| space.meets(v, false)).collect();
        Ok(space)
    }

    fn transition(&self, word: &[Vertex]) -> Option<Transition> {
        if word.len() > self.cutoff {
            return None;
        }
        let (canon, sigma) = self.graph.canonical_form(word);
        let block = *self.index.get(&MinimalWord::from_canonical(canon))?;
        let target = self.block_strides(block);
        Some(Transition {
            block,
            strides: sigma.iter().map(|&j| target[j]).collect(),
        })
    }

    fn meets(&self, v: Vertex, left: bool) -> Vec<Meet> {
        self.words
            .iter()
            .map(|w| {
                let w = w.letters();
                let absorber = if left {
                    self.graph.left_absorber(v, w)
                } else {
                    self.graph.right_absorber(w, v)
                };
                match absorber {
                    None => {
                        let grown: Vec<Vertex> = if left {
                            std::iter::once(v).chain(w.iter().copied()).collect()
                        } else {
                            w.iter().copied().chain(std::iter::once(v)).collect()
                        };
                        Meet::Free {
                            up: self.transition(&grown),
                        }
                    }
                    Some(pos) => {
                        let mut rest = w.to_vec();
                        rest.remove(pos);
                        let down = self.transition(&rest).expect("shorter word is in range");
                        let same_word: Vec<Vertex> = if left {
                            std::iter::once(v).chain(rest.iter().copied()).collect()
                        } else {
                            rest.iter().copied().chain(std::iter::once(v)).collect()
                        };
                        let same = self
                            .transition(&same_word)
                            .expect("equivalent word is in range");
                        Meet::Absorb { pos, down, same }
                    }
                }
            })
            .collect()
    }

    pub fn graph(&self) -> &SimplicialGraph {
        &self.graph
    }

    pub fn algebras(&self) -> &[VertexAlgebra] {
        &self.algebras
    }

    pub fn algebra(&self, v: Vertex) -> &VertexAlgebra {
        &self.algebras[v]
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// True when no minimal word is longer than the cutoff, so the space is
    /// the whole graph product space and every operator is exact.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn words(&self) -> &[MinimalWord] {
        &self.words
    }

    pub fn block_count(&self) -> usize {
        self.words.len()
    }

    pub fn block_word(&self, b: usize) -> &MinimalWord {
        &self.words[b]
    }

    pub fn block_range(&self, b: usize) -> std::ops::Range<usize> {
        self.offsets[b]..self.offsets[b + 1]
    }

    pub fn block_of(&self, w: &MinimalWord) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Block containing a coordinate.
    pub fn block_at(&self, coord: usize) -> usize {
        self.offsets.partition_point(|&o| o <= coord) - 1
    }

    pub fn block_dims(&self, b: usize) -> Vec<usize> {
        self.words[b]
            .letters()
            .iter()
            .map(|&v| self.algebras[v].centered_dim())
            .collect()
    }

    pub(crate) fn block_strides(&self, b: usize) -> Vec<usize> {
        let dims = self.block_dims(b);
        let mut strides = vec![1; dims.len()];
        for i in (0..dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * dims[i + 1];
        }
        strides
    }

    /// Multi-index (row-major, 0-based within each centered space) of a
    /// coordinate in its block.
    pub fn multi_index(&self, coord: usize) -> (usize, Vec<usize>) {
        let b = self.block_at(coord);
        let mut rem = coord - self.offsets[b];
        let dims = self.block_dims(b);
        let mut idx = vec![0; dims.len()];
        for i in (0..dims.len()).rev() {
            idx[i] = rem % dims[i];
            rem /= dims[i];
        }
        (b, idx)
    }

    /// Coordinate of the elementary tensor `e_{idx_1+1} ⊗ ... ⊗ e_{idx_n+1}`
    /// of `H_{w_1}° ⊗ ... ⊗ H_{w_n}°` for any reduced word `w`, transported to
    /// its minimal representative; `None` beyond the cutoff.
    pub fn coord_of(&self, word: &[Vertex], idx: &[usize]) -> Option<usize> {
        debug_assert_eq!(word.len(), idx.len());
        let t = self.transition(word)?;
        Some(self.place(&t, idx))
    }

    #[inline]
    pub(crate) fn place(&self, t: &Transition, idx: &[usize]) -> usize {
        self.offsets[t.block]
            + idx
                .iter()
                .zip(&t.strides)
                .map(|(i, s)| i * s)
                .sum::<usize>()
    }

    /// Block length of every coordinate.
    pub fn coord_lengths(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dim());
        for (b, w) in self.words.iter().enumerate() {
            out.extend(std::iter::repeat_n(w.len(), self.block_range(b).len()));
        }
        out
    }

    /// Columns on which an operator of the given reach acts exactly.
    pub fn safe_mask(&self, reach: usize) -> Vec<bool> {
        if self.complete {
            return vec![true; self.dim()];
        }
        let budget = self.cutoff.checked_sub(reach);
        self.coord_lengths()
            .into_iter()
            .map(|l| budget.is_some_and(|b| l <= b))
            .collect()
    }

    pub fn check_budget(&self, reach: usize) -> Result<()> {
        if self.complete || reach <= self.cutoff {
            Ok(())
        } else {
            Err(Error::Budget {
                reach,
                budget: self.cutoff,
            })
        }
    }

    pub fn vacuum(&self) -> Vec<C64> {
        let mut v = vec![crate::linalg::ZERO; self.dim()];
        v[0] = ONE;
        v
    }

    pub(crate) fn meet(&self, v: Vertex, left: bool) -> &[Meet] {
        if left {
            &self.left[v]
        } else {
            &self.right[v]
        }
    }

    /// Unitary `H_v → H_w` between the unreordered tensor products of two
    /// equivalent reduced words, permuting tensor factors.
    pub fn q_unitary(&self, v: &[Vertex], w: &[Vertex]) -> Result<SparseMatrix> {
        let perm = self.graph.sigma(v, w)?;
        let dims: Vec<usize> = v.iter().map(|&u| self.algebras[u].centered_dim()).collect();
        let target_dims: Vec<usize> = w.iter().map(|&u| self.algebras[u].centered_dim()).collect();
        let total: usize = dims.iter().product();
        let strides = |d: &[usize]| {
            let mut s = vec![1; d.len()];
            for i in (0..d.len().saturating_sub(1)).rev() {
                s[i] = s[i + 1] * d[i + 1];
            }
            s
        };
        let (src, dst) = (strides(&dims), strides(&target_dims));
        let mut trip = Vec::with_capacity(total);
        for col in 0..total {
            let mut row = 0;
            for i in 0..dims.len() {
                row += ((col / src[i]) % dims[i]) * dst[perm.mapping[i]];
            }
            trip.push((row, col, ONE));
        }
        Ok(SparseMatrix::from_triplets(total, total, trip))
    }

    /// Block-diagonal operator acting on `H_w` as `M_{w_1} ⊗ ... ⊗ M_{w_n}`
    /// for per-vertex matrices on the centered spaces, and as `omega` on `Ω`.
    pub fn block_tensor(&self, omega: C64, per_vertex: &[crate::linalg::Mat]) -> SparseMatrix {
        let mut trip = vec![(0, 0, omega)];
        for b in 1..self.words.len() {
            let word = self.words[b].letters();
            let mut block = per_vertex[word[0]].clone();
            for &u in &word[1..] {
                block = block.kronecker(&per_vertex[u]);
            }
            let off = self.offsets[b];
            for j in 0..block.ncols() {
                for i in 0..block.nrows() {
                    let z = block[(i, j)];
                    if z != crate::linalg::ZERO {
                        trip.push((off + i, off + j, z));
                    }
                }
            }
        }
        SparseMatrix::from_triplets(self.dim(), self.dim(), trip)
    }
}
