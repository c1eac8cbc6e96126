use std::cmp::Ordering;

use crate::error::{Error, Result};

use super::graph::{SimplicialGraph, Vertex};

/// Canonical representative of a reduced word class: the lexicographically
/// least word among all reorderings by commuting adjacent letters.
///
/// The empty word stands for the identity / vacuum. Ordering is by length
/// first, then lexicographic, which is the layout order of Fock summands.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MinimalWord(Vec<Vertex>);

impl MinimalWord {
    pub fn identity() -> Self {
        MinimalWord(Vec::new())
    }

    pub fn letters(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_letters(self) -> Vec<Vertex> {
        self.0
    }

    /// Only for words already known to be canonical.
    pub(crate) fn from_canonical(letters: Vec<Vertex>) -> Self {
        MinimalWord(letters)
    }
}

impl Ord for MinimalWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MinimalWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Bijection between positions of two equivalent reduced words, with
/// `target[mapping[i]] == source[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordPermutation {
    pub source: Vec<Vertex>,
    pub target: Vec<Vertex>,
    pub mapping: Vec<usize>,
}

impl WordPermutation {
    pub fn inverse(&self) -> WordPermutation {
        let mut inv = vec![0; self.mapping.len()];
        for (i, &j) in self.mapping.iter().enumerate() {
            inv[j] = i;
        }
        WordPermutation {
            source: self.target.clone(),
            target: self.source.clone(),
            mapping: inv,
        }
    }

    /// `other ∘ self`, requires `self.target == other.source`.
    pub fn then(&self, other: &WordPermutation) -> WordPermutation {
        assert_eq!(self.target, other.source);
        WordPermutation {
            source: self.source.clone(),
            target: other.target.clone(),
            mapping: self.mapping.iter().map(|&j| other.mapping[j]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &j)| i == j)
    }
}

impl SimplicialGraph {
    /// No two equal letters are separated only by letters of their star.
    pub fn is_reduced(&self, w: &[Vertex]) -> bool {
        for k in 0..w.len() {
            for l in k + 1..w.len() {
                if !self.in_star(w[k], w[l]) {
                    break;
                }
                if w[l] == w[k] {
                    return false;
                }
            }
        }
        true
    }

    /// A reduced word equivalent to `w`, obtained by appending letters one at
    /// a time and absorbing each into an equal letter it can commute back to.
    pub fn reduce(&self, w: &[Vertex]) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = Vec::with_capacity(w.len());
        'letters: for &v in w {
            for &u in out.iter().rev() {
                if u == v {
                    continue 'letters;
                }
                if !self.adjacent(u, v) {
                    break;
                }
            }
            out.push(v);
        }
        out
    }

    /// Greedy lexicographic normal form of a word under commutation moves,
    /// together with the position map `sigma` (`normal[sigma[i]] == w[i]`).
    /// Does not delete letters; pass a reduced word to get the minimal word.
    pub fn canonical_form(&self, w: &[Vertex]) -> (Vec<Vertex>, Vec<usize>) {
        let n = w.len();
        let mut used = vec![false; n];
        let mut out = Vec::with_capacity(n);
        let mut sigma = vec![0; n];
        for slot in 0..n {
            let mut best: Option<usize> = None;
            // A letter can move to the front iff every unused letter before it
            // is adjacent to it.
            for p in 0..n {
                if used[p] {
                    continue;
                }
                let movable = (0..p).all(|q| used[q] || self.adjacent(w[q], w[p]));
                if movable && best.is_none_or(|b| w[p] < w[b]) {
                    best = Some(p);
                }
            }
            let b = best.expect("some letter is always movable");
            used[b] = true;
            sigma[b] = slot;
            out.push(w[b]);
        }
        (out, sigma)
    }

    pub fn normalize(&self, w: &[Vertex]) -> MinimalWord {
        let r = self.reduce(w);
        MinimalWord(self.canonical_form(&r).0)
    }

    /// Whether `w` is already the canonical representative of its class.
    pub fn is_minimal(&self, w: &[Vertex]) -> bool {
        self.is_reduced(w) && self.canonical_form(w).0 == w
    }

    /// The unique position map between equivalent reduced words that keeps
    /// equal letters in order.
    pub fn sigma(&self, w: &[Vertex], w2: &[Vertex]) -> Result<WordPermutation> {
        if !self.is_reduced(w) {
            return Err(Error::NotReduced(self.format_word(w)));
        }
        if !self.is_reduced(w2) {
            return Err(Error::NotReduced(self.format_word(w2)));
        }
        if w.len() != w2.len() || self.canonical_form(w).0 != self.canonical_form(w2).0 {
            return Err(Error::NotEquivalent(format!(
                "{} vs {}",
                self.format_word(w),
                self.format_word(w2)
            )));
        }
        let mut seen = vec![0usize; self.len()];
        let mapping = w
            .iter()
            .map(|&v| {
                let k = seen[v];
                seen[v] += 1;
                w2.iter()
                    .enumerate()
                    .filter(|&(_, &u)| u == v)
                    .nth(k)
                    .map(|(j, _)| j)
                    .expect("equal letter counts")
            })
            .collect();
        Ok(WordPermutation {
            source: w.to_vec(),
            target: w2.to_vec(),
            mapping,
        })
    }

    /// Every minimal word of length at most `max_len`, identity first, sorted
    /// by (length, lexicographic).
    pub fn enumerate_minimal(&self, max_len: usize) -> Vec<MinimalWord> {
        let mut all = vec![MinimalWord::identity()];
        let mut layer = vec![Vec::<Vertex>::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for v in self.vertices() {
                    let mut c = w.clone();
                    c.push(v);
                    // Lexicographic normal forms are prefix closed.
                    if self.is_minimal(&c) {
                        next.push(c);
                    }
                }
            }
            next.sort();
            all.extend(next.iter().cloned().map(MinimalWord));
            layer = next;
            if layer.is_empty() {
                break;
            }
        }
        all
    }

    /// Whether `v w` is reduced.
    pub fn left_compatible(&self, v: Vertex, w: &[Vertex]) -> bool {
        self.left_absorber(v, w).is_none()
    }

    /// Whether `w v` is reduced.
    pub fn right_compatible(&self, w: &[Vertex], v: Vertex) -> bool {
        self.right_absorber(w, v).is_none()
    }

    /// Position of the first `v` in the reduced word `w` that can be commuted
    /// to the front, if any.
    pub fn left_absorber(&self, v: Vertex, w: &[Vertex]) -> Option<usize> {
        for (j, &u) in w.iter().enumerate() {
            if u == v {
                return Some(j);
            }
            if !self.adjacent(u, v) {
                return None;
            }
        }
        None
    }

    /// Position of the last `v` in the reduced word `w` that can be commuted
    /// to the end, if any.
    pub fn right_absorber(&self, w: &[Vertex], v: Vertex) -> Option<usize> {
        for (j, &u) in w.iter().enumerate().rev() {
            if u == v {
                return Some(j);
            }
            if !self.adjacent(u, v) {
                return None;
            }
        }
        None
    }

    /// For `w` with `v w` not reduced, the minimal word `w_v` with `w ≃ v w_v`.
    pub fn split_left(&self, v: Vertex, w: &[Vertex]) -> Result<MinimalWord> {
        let j = self.left_absorber(v, w).ok_or_else(|| {
            Error::Precondition(format!(
                "{} followed by {} is reduced",
                self.name(v),
                self.format_word(w)
            ))
        })?;
        let mut rest = w.to_vec();
        rest.remove(j);
        Ok(MinimalWord(self.canonical_form(&rest).0))
    }

    /// For `w` with `w v` not reduced, the minimal word `w'` with `w ≃ w' v`.
    pub fn split_right(&self, w: &[Vertex], v: Vertex) -> Result<MinimalWord> {
        let j = self.right_absorber(w, v).ok_or_else(|| {
            Error::Precondition(format!(
                "{} followed by {} is reduced",
                self.format_word(w),
                self.name(v)
            ))
        })?;
        let mut rest = w.to_vec();
        rest.remove(j);
        Ok(MinimalWord(self.canonical_form(&rest).0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab_edge() -> SimplicialGraph {
        SimplicialGraph::new(&["a", "b"], &[("a", "b")]).unwrap()
    }

    fn ab_free() -> SimplicialGraph {
        SimplicialGraph::new::<&str>(&["a", "b"], &[]).unwrap()
    }

    #[test]
    fn reducedness() {
        assert!(ab_free().is_reduced(&[0, 1, 0]));
        assert!(!ab_edge().is_reduced(&[0, 1, 0]));
        assert!(!ab_free().is_reduced(&[0, 0]));
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(ab_edge().reduce(&[0, 1, 0]), vec![0, 1]);
        assert_eq!(ab_free().reduce(&[0, 1, 0]), vec![0, 1, 0]);
        assert_eq!(ab_free().reduce(&[0, 0, 1]), vec![0, 1]);
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(ab_edge().normalize(&[1, 0]).letters(), &[0, 1]);
        assert_eq!(ab_free().normalize(&[1, 0]).letters(), &[1, 0]);
        let c5 = SimplicialGraph::pentagon();
        assert_eq!(c5.normalize(&[2, 0]).letters(), &[2, 0]);
    }

    #[test]
    fn sigma_examples() {
        let g = ab_edge();
        assert_eq!(g.sigma(&[0, 1], &[1, 0]).unwrap().mapping, vec![1, 0]);
        assert!(g.sigma(&[0, 1], &[0, 1]).unwrap().is_identity());
        let path = SimplicialGraph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert!(matches!(
            path.sigma(&[0, 2, 1], &[2, 0, 1]),
            Err(Error::NotEquivalent(_))
        ));
    }

    #[test]
    fn enumeration_examples() {
        let e = ab_edge().enumerate_minimal(2);
        let lists: Vec<&[Vertex]> = e.iter().map(|w| w.letters()).collect();
        assert_eq!(lists, vec![&[][..], &[0], &[1], &[0, 1]]);
        assert_eq!(ab_free().enumerate_minimal(2).len(), 5);
        assert_eq!(SimplicialGraph::pentagon().enumerate_minimal(2).len(), 21);
    }

    #[test]
    fn compatibility_and_split() {
        let free = ab_free();
        assert!(free.left_compatible(0, &[]));
        assert!(!free.left_compatible(0, &[0]));
        assert!(!ab_edge().left_compatible(0, &[0, 1]));
        assert_eq!(free.split_left(0, &[0, 1]).unwrap().letters(), &[1]);
        assert!(free.split_left(0, &[0]).unwrap().is_identity());
        assert!(free.split_left(0, &[1]).is_err());
        let g = SimplicialGraph::new(&["a", "b", "c"], &[("a", "c")]).unwrap();
        assert_eq!(g.split_left(2, &[0, 2]).unwrap().letters(), &[0]);
        assert_eq!(g.split_right(&[2, 0], 2).unwrap().letters(), &[0]);
    }

    #[test]
    fn minimal_word_order_is_length_first() {
        let a = MinimalWord(vec![3]);
        let b = MinimalWord(vec![0, 1]);
        assert!(a < b);
        assert!(MinimalWord::identity() < a);
    }
}
