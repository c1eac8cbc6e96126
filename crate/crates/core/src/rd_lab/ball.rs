use std::collections::HashMap;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::graph_words::{gp_multiply, FiniteGroup, GroupElement, SimplicialGraph};

pub const DEFAULT_BALL_CAP: usize = 1_000_000;

/// Elements of block length at most `radius` in a graph product of finite
/// groups, sorted by (length, lexicographic).
#[derive(Debug, Clone)]
pub struct CayleyBall {
    graph: SimplicialGraph,
    groups: Vec<FiniteGroup>,
    radius: usize,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    shells: Vec<usize>,
}

pub fn build_ball(
    g: &SimplicialGraph,
    groups: &[FiniteGroup],
    radius: usize,
) -> Result<CayleyBall> {
    build_ball_with_cap(g, groups, radius, DEFAULT_BALL_CAP)
}

pub fn build_ball_with_cap(
    g: &SimplicialGraph,
    groups: &[FiniteGroup],
    radius: usize,
    cap: usize,
) -> Result<CayleyBall> {
    if groups.len() != g.len() {
        return Err(Error::DimensionMismatch {
            expected: g.len(),
            got: groups.len(),
        });
    }
    let letters: Vec<GroupElement> = g
        .vertices()
        .flat_map(|v| groups[v].non_identity().map(move |x| (v, x)))
        .map(|(v, x)| GroupElement::generator(groups, v, x))
        .collect::<Result<_>>()?;
    let mut elements = vec![GroupElement::identity()];
    let mut index = HashMap::from([(GroupElement::identity(), 0)]);
    let mut shells = vec![0, 1];
    for k in 0..radius {
        let mut next = Vec::new();
        for i in shells[k]..shells[k + 1] {
            for s in &letters {
                let y = gp_multiply(g, groups, &elements[i], s)?;
                if y.len() == k + 1 && !index.contains_key(&y) {
                    index.insert(y.clone(), usize::MAX);
                    next.push(y);
                }
            }
        }
        if elements.len() + next.len() > cap {
            return Err(Error::SizeCap {
                size: elements.len() + next.len(),
                cap,
            });
        }
        next.sort();
        for y in next {
            index.insert(y.clone(), elements.len());
            elements.push(y);
        }
        shells.push(elements.len());
    }
    Ok(CayleyBall {
        graph: g.clone(),
        groups: groups.to_vec(),
        radius,
        elements,
        index,
        shells,
    })
}

impl CayleyBall {
    pub fn graph(&self) -> &SimplicialGraph {
        &self.graph
    }

    pub fn groups(&self) -> &[FiniteGroup] {
        &self.groups
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn index_of(&self, x: &GroupElement) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Indices of the elements of length exactly `k` (empty beyond the radius).
    pub fn shell(&self, k: usize) -> Range<usize> {
        if k > self.radius {
            let n = self.len();
            return n..n;
        }
        self.shells[k]..self.shells[k + 1]
    }

    /// Indices of the elements of length at most `k`.
    pub fn up_to(&self, k: usize) -> Range<usize> {
        0..self.shells[k.min(self.radius) + 1]
    }

    pub fn shell_sizes(&self) -> Vec<usize> {
        self.shells.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn length(&self, i: usize) -> usize {
        self.elements[i].len()
    }

    /// Index of `x_i x_j`, or `None` when the product leaves the ball.
    pub fn product(&self, i: usize, j: usize) -> Option<usize> {
        let y = gp_multiply(
            &self.graph,
            &self.groups,
            &self.elements[i],
            &self.elements[j],
        )
        .expect("ball elements are valid");
        self.index_of(&y)
    }
}
