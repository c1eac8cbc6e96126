use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::graph::{SimplicialGraph, Vertex};

/// Finite group given by its multiplication table; elements are `0..order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupSpec {
    pub table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for row in &table {
            if row.len() != n {
                return Err(Error::InvalidGroup("table is not square".into()));
            }
            if row.iter().any(|&x| x >= n) {
                return Err(Error::InvalidGroup("entry out of range".into()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverse = vec![usize::MAX; n];
        for x in 0..n {
            let y = (0..n)
                .find(|&y| table[x][y] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {x} has no inverse")))?;
            if table[y][x] != identity {
                return Err(Error::InvalidGroup(format!(
                    "element {x} has no two-sided inverse"
                )));
            }
            inverse[x] = y;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            table,
            identity,
            inverse,
        })
    }

    pub fn cyclic(n: usize) -> Self {
        Self::from_table(
            (0..n)
                .map(|a| (0..n).map(|b| (a + b) % n).collect())
                .collect(),
        )
        .expect("cyclic group")
    }

    /// Symmetric group on three letters; element 0 is the identity.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| idx([a[b[0]], a[b[1]], a[b[2]]]))
                    .collect()
            })
            .collect();
        Self::from_table(table).expect("symmetric group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn non_identity(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order()).filter(move |&x| x != self.identity)
    }
}

/// Element of a graph product of finite groups in normal form: the vertex
/// sequence is a minimal word and every label is a nonidentity element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupElement {
    letters: Vec<(Vertex, usize)>,
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement {
            letters: Vec::new(),
        }
    }

    pub fn generator(groups: &[FiniteGroup], v: Vertex, label: usize) -> Result<Self> {
        check_label(groups, v, label)?;
        if label == groups[v].identity() {
            return Ok(Self::identity());
        }
        Ok(GroupElement {
            letters: vec![(v, label)],
        })
    }

    /// Normal form of an arbitrary product of vertex letters.
    pub fn from_letters(
        g: &SimplicialGraph,
        groups: &[FiniteGroup],
        letters: &[(Vertex, usize)],
    ) -> Result<Self> {
        let mut acc = Vec::new();
        for &(v, label) in letters {
            g.check_vertex(v)?;
            check_label(groups, v, label)?;
            push_letter(g, groups, &mut acc, v, label);
        }
        Ok(Self::canonical(g, acc))
    }

    fn canonical(g: &SimplicialGraph, acc: Vec<(Vertex, usize)>) -> Self {
        let word: Vec<Vertex> = acc.iter().map(|&(v, _)| v).collect();
        let (_, sigma) = g.canonical_form(&word);
        let mut letters = acc.clone();
        for (i, &j) in sigma.iter().enumerate() {
            letters[j] = acc[i];
        }
        GroupElement { letters }
    }

    pub fn letters(&self) -> &[(Vertex, usize)] {
        &self.letters
    }

    pub fn word(&self) -> Vec<Vertex> {
        self.letters.iter().map(|&(v, _)| v).collect()
    }

    /// Block length: the number of letters of the normal form.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self, g: &SimplicialGraph, groups: &[FiniteGroup]) -> Self {
        let rev: Vec<(Vertex, usize)> = self
            .letters
            .iter()
            .rev()
            .map(|&(v, x)| (v, groups[v].inv(x)))
            .collect();
        Self::canonical(g, rev)
    }

    pub fn format(&self, g: &SimplicialGraph) -> String {
        if self.letters.is_empty() {
            return "e".into();
        }
        self.letters
            .iter()
            .map(|&(v, x)| format!("({},{x})", g.name(v)))
            .collect()
    }
}

fn check_label(groups: &[FiniteGroup], v: Vertex, label: usize) -> Result<()> {
    let group = groups
        .get(v)
        .ok_or_else(|| Error::UnknownVertex(format!("#{v}")))?;
    if label >= group.order() {
        return Err(Error::Precondition(format!(
            "label {label} is not in the group of vertex #{v}"
        )));
    }
    Ok(())
}

/// Right-multiply a reduced letter sequence by one letter. The letter merges
/// with the last equal-vertex letter it commutes back to; an identity result
/// is deleted, which keeps the sequence reduced because the deleted letter
/// commuted with everything after it.
fn push_letter(
    g: &SimplicialGraph,
    groups: &[FiniteGroup],
    acc: &mut Vec<(Vertex, usize)>,
    v: Vertex,
    label: usize,
) {
    if label == groups[v].identity() {
        return;
    }
    for p in (0..acc.len()).rev() {
        let (u, x) = acc[p];
        if u == v {
            let y = groups[v].mul(x, label);
            if y == groups[v].identity() {
                acc.remove(p);
            } else {
                acc[p].1 = y;
            }
            return;
        }
        if !g.adjacent(u, v) {
            break;
        }
    }
    acc.push((v, label));
}

/// Normal form of `x y`.
pub fn gp_multiply(
    g: &SimplicialGraph,
    groups: &[FiniteGroup],
    x: &GroupElement,
    y: &GroupElement,
) -> Result<GroupElement> {
    if groups.len() != g.len() {
        return Err(Error::DimensionMismatch {
            expected: g.len(),
            got: groups.len(),
        });
    }
    for &(v, label) in x.letters.iter().chain(&y.letters) {
        g.check_vertex(v)?;
        check_label(groups, v, label)?;
        if label == groups[v].identity() {
            return Err(Error::Precondition(
                "identity label inside a normal form".into(),
            ));
        }
    }
    let mut acc = x.letters.clone();
    for &(v, label) in &y.letters {
        push_letter(g, groups, &mut acc, v, label);
    }
    Ok(GroupElement::canonical(g, acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2s(n: usize) -> Vec<FiniteGroup> {
        vec![FiniteGroup::cyclic(2); n]
    }

    #[test]
    fn table_validation() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1]]).is_err());
        assert!(FiniteGroup::from_table(vec![]).is_err());
        let s3 = FiniteGroup::symmetric3();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert!(FiniteGroup::cyclic(4).is_abelian());
    }

    #[test]
    fn free_cancellation() {
        let g = SimplicialGraph::new::<&str>(&["a", "b"], &[]).unwrap();
        let gr = z2s(2);
        let x = GroupElement::from_letters(&g, &gr, &[(0, 1), (1, 1)]).unwrap();
        let y = GroupElement::generator(&gr, 1, 1).unwrap();
        assert_eq!(gp_multiply(&g, &gr, &x, &y).unwrap().letters(), &[(0, 1)]);
    }

    #[test]
    fn commuting_normal_form() {
        let g = SimplicialGraph::new(&["a", "b"], &[("a", "b")]).unwrap();
        let gr = z2s(2);
        let x = GroupElement::generator(&gr, 1, 1).unwrap();
        let y = GroupElement::generator(&gr, 0, 1).unwrap();
        assert_eq!(
            gp_multiply(&g, &gr, &x, &y).unwrap().letters(),
            &[(0, 1), (1, 1)]
        );
    }

    #[test]
    fn pentagon_ball_of_radius_two() {
        let g = SimplicialGraph::pentagon();
        let gr = z2s(5);
        let gens: Vec<GroupElement> = (0..5)
            .map(|v| GroupElement::generator(&gr, v, 1).unwrap())
            .collect();
        let mut ball = std::collections::BTreeSet::from([GroupElement::identity()]);
        for _ in 0..2 {
            let cur: Vec<_> = ball.iter().cloned().collect();
            for x in cur {
                for s in &gens {
                    ball.insert(gp_multiply(&g, &gr, &x, s).unwrap());
                }
            }
        }
        let mut shells = [0usize; 3];
        for x in &ball {
            shells[x.len()] += 1;
        }
        assert_eq!(shells, [1, 5, 15]);
    }

    #[test]
    fn bad_labels_are_rejected() {
        let g = SimplicialGraph::edgeless(2);
        let gr = z2s(2);
        assert!(GroupElement::generator(&gr, 0, 2).is_err());
        assert!(GroupElement::from_letters(&g, &gr, &[(3, 1)]).is_err());
    }

    #[test]
    fn inverse_cancels() {
        let g = SimplicialGraph::pentagon();
        let gr = vec![FiniteGroup::cyclic(3); 5];
        let x = GroupElement::from_letters(&g, &gr, &[(0, 1), (2, 2), (1, 1), (0, 2)]).unwrap();
        let xi = x.inverse(&g, &gr);
        assert!(gp_multiply(&g, &gr, &x, &xi).unwrap().is_identity());
        assert!(gp_multiply(&g, &gr, &xi, &x).unwrap().is_identity());
    }
}
