use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::fock_space::{reduced_operator, safe_norm, FockOperator, FockSpace};
use crate::graph_words::{MinimalWord, Vertex};
use crate::linalg::{gaussian, vec_norm, SparseMatrix, C64, ONE, ZERO};

/// Orthogonal projection onto `Ω` and the summands whose words only use
/// vertices of a subgraph.
#[derive(Debug, Clone)]
pub struct SubgraphProjection {
    vertices: Vec<Vertex>,
    selected: Vec<bool>,
    matrix: SparseMatrix,
}

impl SubgraphProjection {
    pub fn new(space: &FockSpace, vertices: &[Vertex]) -> Result<Self> {
        for &v in vertices {
            space.graph().check_vertex(v)?;
        }
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let mut selected = vec![false; space.dim()];
        for (b, w) in space.words().iter().enumerate() {
            if word_within(w, &vs) {
                for c in space.block_range(b) {
                    selected[c] = true;
                }
            }
        }
        let diag: Vec<C64> = selected
            .iter()
            .map(|&s| if s { ONE } else { ZERO })
            .collect();
        Ok(SubgraphProjection {
            vertices: vs,
            selected,
            matrix: SparseMatrix::diagonal(&diag),
        })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn selected(&self) -> &[bool] {
        &self.selected
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }
}

pub fn word_within(w: &MinimalWord, vertices: &[Vertex]) -> bool {
    w.letters()
        .iter()
        .all(|v| vertices.binary_search(v).is_ok())
}

/// `E(T) = P T P` for the projection onto the subgraph's summands.
pub fn cond_expectation(
    space: &FockSpace,
    sub: &SubgraphProjection,
    t: &FockOperator,
) -> Result<FockOperator> {
    space.check_budget(t.reach)?;
    let p = sub.matrix();
    Ok(FockOperator {
        matrix: p.matmul(&t.matrix).matmul(p),
        reach: t.reach,
    })
}

/// Safe-zone residual of `a - b` on the columns of the subgraph's summands,
/// which is where `E(x)` and the element it represents act alike.
pub fn compressed_residual(
    space: &FockSpace,
    sub: &SubgraphProjection,
    a: &FockOperator,
    b: &FockOperator,
) -> f64 {
    let mask: Vec<bool> = space
        .safe_mask(a.reach.max(b.reach))
        .iter()
        .zip(sub.selected())
        .map(|(&s, &p)| s && p)
        .collect();
    a.matrix.sub(&b.matrix).masked_frobenius(&mask)
}

/// Random element of the span of reduced operators over the given words,
/// plus a random scalar multiple of the identity.
pub fn random_span_element<R: Rng + ?Sized>(
    space: &FockSpace,
    words: &[MinimalWord],
    rng: &mut R,
) -> Result<FockOperator> {
    let mut acc = FockOperator::identity(space).scale(gaussian(rng));
    for w in words {
        if w.is_identity() {
            continue;
        }
        let letters: Vec<_> = w
            .letters()
            .iter()
            .map(|&v| (v, space.algebra(v).random_centered(rng)))
            .collect();
        acc = acc.add(&reduced_operator(space, &letters)?);
    }
    Ok(acc)
}

/// Minimal words over a vertex subset, of length between 1 and `max_len`.
pub fn words_over(space: &FockSpace, vertices: &[Vertex], max_len: usize) -> Vec<MinimalWord> {
    let mut vs = vertices.to_vec();
    vs.sort_unstable();
    space
        .words()
        .iter()
        .filter(|w| !w.is_identity() && w.len() <= max_len && word_within(w, &vs))
        .cloned()
        .collect()
}

/// Rebuild the operator `y` with `yΩ = η` as a combination of reduced
/// operators `λ(c_{i_1}) ... λ(c_{i_n})` where `c_j ξ = e_j`.
pub fn operator_from_vector(space: &FockSpace, eta: &[C64], tol: f64) -> Result<FockOperator> {
    let mut acc = FockOperator::identity(space).scale(eta[0]);
    let bases: Vec<Vec<crate::linalg::Mat>> = space
        .algebras()
        .iter()
        .map(|a| a.centered_basis())
        .collect();
    for b in 1..space.block_count() {
        let range = space.block_range(b);
        if vec_norm(&eta[range.clone()]) <= tol {
            continue;
        }
        let word = space.block_word(b).letters().to_vec();
        for coord in range {
            let z = eta[coord];
            if z.norm() <= tol {
                continue;
            }
            let (_, idx) = space.multi_index(coord);
            let letters: Vec<_> = word
                .iter()
                .zip(&idx)
                .map(|(&v, &i)| (v, bases[v][i].clone()))
                .collect();
            acc = acc.add(&reduced_operator(space, &letters)?.scale(z));
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionReport {
    pub samples: usize,
    /// Word blocks carrying a component outside the intersection.
    pub survivors: usize,
    /// Largest norm of such a component.
    pub max_outside: f64,
    /// Largest safe-zone distance between `E(x)` and its rebuilt form.
    pub max_rebuild_residual: f64,
    pub budget_used: usize,
}

pub const SURVIVOR_TOL: f64 = 1e-10;

/// Sample `x` in the span of reduced operators over `g0`, apply `E_{g1}`,
/// decompose the result over word blocks and rebuild it from reduced
/// operators. Every surviving block must be a word over `g0 ∩ g1`.
pub fn intersection_check(
    space: &FockSpace,
    g0: &[Vertex],
    g1: &[Vertex],
    max_len: usize,
    samples: usize,
    seed: u64,
) -> Result<IntersectionReport> {
    space.check_budget(max_len)?;
    let e1 = SubgraphProjection::new(space, g1)?;
    let p0 = SubgraphProjection::new(space, g0)?;
    let common: Vec<Vertex> = p0
        .vertices()
        .iter()
        .copied()
        .filter(|v| e1.vertices().contains(v))
        .collect();
    let words = words_over(space, p0.vertices(), max_len);
    let mut report = IntersectionReport {
        samples,
        survivors: 0,
        max_outside: 0.0,
        max_rebuild_residual: 0.0,
        budget_used: max_len,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let x = random_span_element(space, &words, &mut rng)?;
        let ex = cond_expectation(space, &e1, &x)?;
        let eta = ex.matrix.column(0);
        for b in 1..space.block_count() {
            let part = vec_norm(&eta[space.block_range(b)]);
            if !word_within(space.block_word(b), &common) && part > SURVIVOR_TOL {
                report.survivors += 1;
            }
            if !word_within(space.block_word(b), &common) {
                report.max_outside = report.max_outside.max(part);
            }
        }
        let rebuilt = operator_from_vector(space, &eta, 0.0)?;
        report.max_rebuild_residual = report
            .max_rebuild_residual
            .max(compressed_residual(space, &e1, &ex, &rebuilt));
    }
    Ok(report)
}

/// Which half of the amalgamated decomposition a factor belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreeSide {
    /// Generated by the star of the vertex.
    Star,
    /// Generated by every vertex but the vertex itself.
    Rest,
}

#[derive(Debug, Clone)]
pub struct FreenessFactor {
    pub side: FreeSide,
    pub op: FockOperator,
}

pub const FREENESS_TOL: f64 = 1e-9;

/// Safe-zone norm of `E_{Link(v)}(a_1 ... a_n)` for an alternating sequence
/// of factors that each lie in the kernel of `E_{Link(v)}`.
pub fn freeness_residual(space: &FockSpace, v: Vertex, factors: &[FreenessFactor]) -> Result<f64> {
    if factors.is_empty() {
        return Err(Error::Precondition("empty freeness instance".into()));
    }
    if factors.windows(2).any(|p| p[0].side == p[1].side) {
        return Err(Error::Precondition(
            "freeness instance is not alternating".into(),
        ));
    }
    let link = SubgraphProjection::new(space, &space.graph().link(v)?)?;
    for (position, f) in factors.iter().enumerate() {
        let e = cond_expectation(space, &link, &f.op)?;
        let value = safe_norm(space, &e);
        if value > FREENESS_TOL {
            return Err(Error::NotCentered { position, value });
        }
    }
    let prod = FockOperator::product(factors.iter().map(|f| &f.op)).expect("nonempty");
    Ok(safe_norm(space, &cond_expectation(space, &link, &prod)?))
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstanceRow {
    pub instance: usize,
    pub residual: f64,
    pub budget_used: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FreenessReport {
    pub rows: Vec<InstanceRow>,
    pub max_residual: f64,
}

/// Seeded alternating instances around vertex `v`. Star factors are random
/// combinations of reduced operators over `Star(v)` whose words contain `v`;
/// rest factors use words over `Γ \ {v}` leaving `Link(v)`. Each instance
/// has total reach at most `max_reach`.
pub fn freeness_check(
    space: &FockSpace,
    v: Vertex,
    instances: usize,
    max_reach: usize,
    seed: u64,
    exec: Execution,
) -> Result<FreenessReport> {
    space.check_budget(max_reach)?;
    if max_reach == 0 {
        return Err(Error::Precondition(
            "freeness instances need positive reach".into(),
        ));
    }
    let g = space.graph();
    let star = g.star(v)?;
    let link = g.link(v)?;
    let rest: Vec<Vertex> = g.vertices().filter(|&u| u != v).collect();
    let star_pool: Vec<MinimalWord> = words_over(space, &star, max_reach)
        .into_iter()
        .filter(|w| w.letters().contains(&v))
        .collect();
    let rest_pool: Vec<MinimalWord> = words_over(space, &rest, max_reach)
        .into_iter()
        .filter(|w| w.letters().iter().any(|u| !link.contains(u)))
        .collect();
    if rest_pool.is_empty() {
        return Err(Error::Precondition(
            "vertex is adjacent to every other vertex".into(),
        ));
    }
    let rows: Vec<Result<InstanceRow>> = exec.map_range(instances, |i| {
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let n = rng.random_range(1..=max_reach);
        let mut lens = vec![1usize; n];
        for _ in n..max_reach {
            if rng.random_bool(0.5) {
                let k = rng.random_range(0..n);
                lens[k] += 1;
            }
        }
        let mut side = if rng.random_bool(0.5) {
            FreeSide::Star
        } else {
            FreeSide::Rest
        };
        let mut factors = Vec::with_capacity(n);
        for &len in &lens {
            let pool = if side == FreeSide::Star {
                &star_pool
            } else {
                &rest_pool
            };
            let fitting: Vec<&MinimalWord> = pool.iter().filter(|w| w.len() <= len).collect();
            let mut op = FockOperator::zero(space);
            let terms = rng.random_range(1..=2usize);
            for _ in 0..terms {
                let w = fitting[rng.random_range(0..fitting.len())];
                let letters: Vec<_> = w
                    .letters()
                    .iter()
                    .map(|&u| (u, space.algebra(u).random_centered(&mut rng)))
                    .collect();
                op = op.add(&reduced_operator(space, &letters)?);
            }
            factors.push(FreenessFactor { side, op });
            side = if side == FreeSide::Star {
                FreeSide::Rest
            } else {
                FreeSide::Star
            };
        }
        let budget_used = factors.iter().map(|f| f.op.reach).sum();
        Ok(InstanceRow {
            instance: i,
            residual: freeness_residual(space, v, &factors)?,
            budget_used,
        })
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let max_residual = rows.iter().map(|r| r.residual).fold(0.0, f64::max);
    Ok(FreenessReport { rows, max_residual })
}
