use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph_words::{GroupElement, SimplicialGraph, Vertex};
use crate::linalg::{Mat, ONE};

use super::data::FusionData;

/// Irreducible representation of a graph product: a reduced word of
/// nontrivial vertex labels in canonical order. Empty is the trivial one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IrrWord {
    letters: Vec<(Vertex, usize)>,
}

impl Ord for IrrWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for IrrWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl IrrWord {
    pub fn trivial() -> Self {
        IrrWord {
            letters: Vec::new(),
        }
    }

    /// Canonical form of a labelled reduced word.
    pub fn new(
        g: &SimplicialGraph,
        data: &FusionData,
        letters: &[(Vertex, usize)],
    ) -> Result<Self> {
        for &(v, a) in letters {
            g.check_vertex(v)?;
            if v >= data.len() || a >= data.vertex(v).len() {
                return Err(Error::InvalidFusion(format!(
                    "label {a} is not defined at vertex #{v}"
                )));
            }
            if a == data.vertex(v).trivial() {
                return Err(Error::InvalidFusion(
                    "trivial label inside an irreducible word".into(),
                ));
            }
        }
        let word: Vec<Vertex> = letters.iter().map(|&(v, _)| v).collect();
        if !g.is_reduced(&word) {
            return Err(Error::NotReduced(g.format_word(&word)));
        }
        Ok(Self::canonical(g, letters))
    }

    fn canonical(g: &SimplicialGraph, letters: &[(Vertex, usize)]) -> Self {
        let word: Vec<Vertex> = letters.iter().map(|&(v, _)| v).collect();
        let (_, sigma) = g.canonical_form(&word);
        let mut out = letters.to_vec();
        for (i, &j) in sigma.iter().enumerate() {
            out[j] = letters[i];
        }
        IrrWord { letters: out }
    }

    pub fn letters(&self) -> &[(Vertex, usize)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn dim(&self, data: &FusionData) -> usize {
        self.letters
            .iter()
            .map(|&(v, a)| data.vertex(v).dim(a))
            .product()
    }

    pub fn format(&self, g: &SimplicialGraph, data: &FusionData) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(v, a)| format!("{}:{}", g.name(v), data.vertex(v).labels()[a]))
            .collect();
        parts.join(",")
    }

    /// Irreducible of a group-dual product labelled by a group element.
    pub fn from_group_element(x: &GroupElement) -> Self {
        IrrWord {
            letters: x.letters().to_vec(),
        }
    }
}

/// Every irreducible word of length at most `max_len`, trivial first.
pub fn irr_enumerate(g: &SimplicialGraph, data: &FusionData, max_len: usize) -> Vec<IrrWord> {
    let mut out = Vec::new();
    for w in g.enumerate_minimal(max_len) {
        let choices: Vec<Vec<usize>> = w
            .letters()
            .iter()
            .map(|&v| data.vertex(v).nontrivial().collect())
            .collect();
        if choices.iter().any(|c| c.is_empty()) {
            continue;
        }
        let mut idx = vec![0usize; choices.len()];
        'odometer: loop {
            out.push(IrrWord {
                letters: w
                    .letters()
                    .iter()
                    .zip(&idx)
                    .enumerate()
                    .map(|(p, (&v, &i))| (v, choices[p][i]))
                    .collect(),
            });
            for p in (0..idx.len()).rev() {
                idx[p] += 1;
                if idx[p] < choices[p].len() {
                    continue 'odometer;
                }
                idx[p] = 0;
            }
            break;
        }
    }
    out.sort();
    out
}

pub type FusionMultiset = BTreeMap<IrrWord, usize>;

/// Decomposition of `α ⊗ β` into irreducible words with multiplicities.
///
/// A letter of `α` that commutes to the end meets a letter of `β` on the same
/// vertex that commutes to the front; the pair is fused at that vertex and
/// the remainder is fused recursively. A trivial summand makes the outer
/// letters adjacent, and they may fuse again.
pub fn fuse(
    g: &SimplicialGraph,
    data: &FusionData,
    alpha: &IrrWord,
    beta: &IrrWord,
) -> Result<FusionMultiset> {
    let mut out = FusionMultiset::new();
    fuse_into(g, data, alpha.letters(), beta.letters(), 1, &mut out)?;
    Ok(out)
}

fn fuse_into(
    g: &SimplicialGraph,
    data: &FusionData,
    alpha: &[(Vertex, usize)],
    beta: &[(Vertex, usize)],
    mult: usize,
    out: &mut FusionMultiset,
) -> Result<()> {
    let av: Vec<Vertex> = alpha.iter().map(|&(v, _)| v).collect();
    let bv: Vec<Vertex> = beta.iter().map(|&(v, _)| v).collect();
    let mut pair: Option<(Vertex, usize, usize)> = None;
    for &(v, _) in alpha {
        if pair.is_some_and(|(u, _, _)| u <= v) {
            continue;
        }
        if let (Some(i), Some(j)) = (g.right_absorber(&av, v), g.left_absorber(v, &bv)) {
            pair = Some((v, i, j));
        }
    }
    let Some((v, i, j)) = pair else {
        let joined: Vec<(Vertex, usize)> = alpha.iter().chain(beta).copied().collect();
        *out.entry(IrrWord::canonical(g, &joined)).or_insert(0) += mult;
        return Ok(());
    };
    let vf = data.vertex(v);
    let (a, b) = (alpha[i].1, beta[j].1);
    let mut rest_a = alpha.to_vec();
    rest_a.remove(i);
    let mut rest_b = beta.to_vec();
    rest_b.remove(j);
    for (c, m) in vf.fuse(a, b)? {
        if c == vf.trivial() {
            fuse_into(g, data, &rest_a, &rest_b, mult * m, out)?;
        } else {
            let mut left = rest_a.clone();
            left.push((v, c));
            fuse_into(g, data, &left, &rest_b, mult * m, out)?;
        }
    }
    Ok(())
}

/// Contragredient: reverse the word and dualize each label.
pub fn dual(g: &SimplicialGraph, data: &FusionData, alpha: &IrrWord) -> IrrWord {
    let rev: Vec<(Vertex, usize)> = alpha
        .letters
        .iter()
        .rev()
        .map(|&(v, a)| (v, data.vertex(v).dual(a)))
        .collect();
    IrrWord::canonical(g, &rev)
}

/// Tensor product of per-letter matrices along an irreducible word;
/// `families[v][a]` is the matrix at label `a` of vertex `v`.
pub fn multiplier_product(families: &[Vec<Option<Mat>>], alpha: &IrrWord) -> Result<Mat> {
    let mut acc = Mat::from_element(1, 1, ONE);
    for &(v, a) in alpha.letters() {
        let m = families
            .get(v)
            .and_then(|f| f.get(a))
            .and_then(|m| m.as_ref())
            .ok_or_else(|| {
                Error::Precondition(format!("no matrix for label {a} at vertex #{v}"))
            })?;
        acc = acc.kronecker(m);
    }
    Ok(acc)
}
