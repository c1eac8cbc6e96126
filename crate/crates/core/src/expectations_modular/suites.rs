use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::fock_space::{
    lambda, reduced_operator, rho, safe_residual, vacuum_state, FockOperator, FockSpace,
};
use crate::graph_words::{MinimalWord, Vertex};
use crate::linalg::Mat;

use super::modular::{modular_data, right_generator};

fn instance_rng(seed: u64, i: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn random_word<R: Rng + ?Sized>(
    space: &FockSpace,
    max_len: usize,
    rng: &mut R,
) -> Option<MinimalWord> {
    let pool: Vec<&MinimalWord> = space
        .words()
        .iter()
        .filter(|w| !w.is_empty() && w.len() <= max_len)
        .collect();
    if pool.is_empty() {
        return None;
    }
    Some(pool[rng.random_range(0..pool.len())].clone())
}

fn random_reduced<R: Rng + ?Sized>(
    space: &FockSpace,
    w: &MinimalWord,
    rng: &mut R,
) -> Vec<(Vertex, Mat)> {
    w.letters()
        .iter()
        .map(|&v| (v, space.algebra(v).random_centered(rng)))
        .collect()
}

/// `|ω(a)|` for seeded random reduced operators of length at most `max_len`.
pub fn moment_suite(
    space: &FockSpace,
    instances: usize,
    max_len: usize,
    seed: u64,
    exec: Execution,
) -> Result<Vec<f64>> {
    space.check_budget(max_len)?;
    let out = exec.map_range(instances, |i| {
        let mut rng = instance_rng(seed, i);
        let w = random_word(space, max_len, &mut rng)
            .ok_or_else(|| Error::Precondition("no nonempty words".into()))?;
        let a = reduced_operator(space, &random_reduced(space, &w, &mut rng))?;
        Ok(vacuum_state(space, &a)?.norm())
    });
    out.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CommutationReport {
    /// `‖[λ_u(x), λ_v(y)]‖` over random edges `u ~ v`; empty without edges.
    pub edge: Vec<f64>,
    /// `‖[λ_v(x), ρ_w(y)]‖` over random `v ≠ w`.
    pub left_right: Vec<f64>,
    /// Distance between `J a J` and `ρ(r(a_1^*)) ... ρ(r(a_n^*))` for random
    /// reduced `a` of length at most `max_len`.
    pub jaj: Vec<f64>,
}

impl CommutationReport {
    pub fn max(&self) -> f64 {
        self.edge
            .iter()
            .chain(&self.left_right)
            .chain(&self.jaj)
            .copied()
            .fold(0.0, f64::max)
    }
}

/// Seeded instances of the three commutation identities, measured by the
/// safe-zone residual.
pub fn commutation_suite(
    space: &FockSpace,
    instances: usize,
    max_len: usize,
    seed: u64,
    exec: Execution,
) -> Result<CommutationReport> {
    space.check_budget(max_len.max(1))?;
    let g = space.graph();
    if g.len() < 2 {
        return Err(Error::Precondition(
            "commutation suites need two vertices".into(),
        ));
    }
    let edges: Vec<(Vertex, Vertex)> = g
        .vertices()
        .flat_map(|u| g.vertices().filter(move |&v| u < v).map(move |v| (u, v)))
        .filter(|&(u, v)| g.adjacent(u, v))
        .collect();
    let md = modular_data(space);
    let rows = exec.map_range(instances, |i| -> Result<(Option<f64>, f64, f64)> {
        let mut rng = instance_rng(seed, i);
        let edge = if edges.is_empty() {
            None
        } else {
            let (u, v) = edges[rng.random_range(0..edges.len())];
            let x = lambda(space, u, &space.algebra(u).random_element(&mut rng))?;
            let y = lambda(space, v, &space.algebra(v).random_element(&mut rng))?;
            Some(safe_residual(space, &x.mul(&y), &y.mul(&x)))
        };
        let v = rng.random_range(0..g.len());
        let w = (v + rng.random_range(1..g.len())) % g.len();
        let x = lambda(space, v, &space.algebra(v).random_element(&mut rng))?;
        let y = rho(space, w, &space.algebra(w).random_element(&mut rng))?;
        let left_right = safe_residual(space, &x.mul(&y), &y.mul(&x));
        let word = random_word(space, max_len, &mut rng).expect("space has words of length one");
        let letters = random_reduced(space, &word, &mut rng);
        let a = reduced_operator(space, &letters)?;
        let mut right = FockOperator::identity(space);
        for (u, z) in &letters {
            right = right.mul(&right_generator(space, *u, &z.adjoint())?);
        }
        Ok((
            edge,
            left_right,
            safe_residual(space, &md.conjugate(&a), &right),
        ))
    });
    let mut report = CommutationReport::default();
    for r in rows {
        let (e, lr, j) = r?;
        report.edge.extend(e);
        report.left_right.push(lr);
        report.jaj.push(j);
    }
    Ok(report)
}
