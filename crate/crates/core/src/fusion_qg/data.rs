use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph_words::FiniteGroup;

/// Irreducible labels of one vertex with dimensions, contragredient map and
/// a (possibly partial) table of fusion multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexFusion {
    labels: Vec<String>,
    dims: Vec<usize>,
    trivial: usize,
    dual: Vec<usize>,
    rules: HashMap<(usize, usize), Vec<(usize, usize)>>,
    complete: BTreeSet<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FusionRule {
    pub a: String,
    pub b: String,
    pub c: String,
    #[serde(default = "one")]
    pub n: usize,
}

fn one() -> usize {
    1
}

/// On-disk form of a vertex fusion table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexFusionSpec {
    pub labels: Vec<String>,
    pub dims: Vec<usize>,
    pub trivial: String,
    /// Contragredient of each label; omitted labels are self-dual.
    #[serde(default)]
    pub dual: BTreeMap<String, String>,
    pub fusion: Vec<FusionRule>,
    /// Pairs whose decomposition is fully listed; `null` means all pairs.
    #[serde(default)]
    pub complete: Option<Vec<[String; 2]>>,
}

impl VertexFusion {
    pub fn from_spec(spec: &VertexFusionSpec) -> Result<Self> {
        let n = spec.labels.len();
        if spec.dims.len() != n {
            return Err(Error::InvalidFusion(
                "one dimension per label is required".into(),
            ));
        }
        let index: HashMap<&str, usize> = spec
            .labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        if index.len() != n {
            return Err(Error::InvalidFusion("duplicate labels".into()));
        }
        let look = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| Error::InvalidFusion(format!("unknown label `{l}`")))
        };
        let trivial = look(&spec.trivial)?;
        let mut dual: Vec<usize> = (0..n).collect();
        for (a, b) in &spec.dual {
            dual[look(a)?] = look(b)?;
        }
        let mut rules: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
        for r in &spec.fusion {
            if r.n > 0 {
                rules
                    .entry((look(&r.a)?, look(&r.b)?))
                    .or_default()
                    .push((look(&r.c)?, r.n));
            }
        }
        let complete = match &spec.complete {
            None => (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect(),
            Some(pairs) => pairs
                .iter()
                .map(|[a, b]| Ok((look(a)?, look(b)?)))
                .collect::<Result<_>>()?,
        };
        Self::new(
            spec.labels.clone(),
            spec.dims.clone(),
            trivial,
            dual,
            rules,
            complete,
        )
    }

    pub fn new(
        labels: Vec<String>,
        dims: Vec<usize>,
        trivial: usize,
        dual: Vec<usize>,
        mut rules: HashMap<(usize, usize), Vec<(usize, usize)>>,
        complete: BTreeSet<(usize, usize)>,
    ) -> Result<Self> {
        let n = labels.len();
        if dims.len() != n || dual.len() != n || trivial >= n {
            return Err(Error::InvalidFusion("inconsistent table sizes".into()));
        }
        if dims[trivial] != 1 {
            return Err(Error::InvalidFusion(
                "trivial label must have dimension 1".into(),
            ));
        }
        if dual[trivial] != trivial {
            return Err(Error::InvalidFusion(
                "trivial label must be self-dual".into(),
            ));
        }
        for a in 0..n {
            if dual[dual[a]] != a {
                return Err(Error::InvalidFusion(format!(
                    "contragredient is not an involution at `{}`",
                    labels[a]
                )));
            }
            if dims[dual[a]] != dims[a] {
                return Err(Error::InvalidFusion(format!(
                    "contragredient changes dimension at `{}`",
                    labels[a]
                )));
            }
        }
        for list in rules.values_mut() {
            list.sort_unstable();
        }
        for &(a, b) in &complete {
            let lhs: usize = rules
                .get(&(a, b))
                .map_or(0, |l| l.iter().map(|&(c, m)| m * dims[c]).sum());
            let trivially_given = a == trivial || b == trivial;
            if !trivially_given && lhs != dims[a] * dims[b] {
                return Err(Error::InvalidFusion(format!(
                    "dimensions do not add up for `{}` x `{}`",
                    labels[a], labels[b]
                )));
            }
        }
        Ok(VertexFusion {
            labels,
            dims,
            trivial,
            dual,
            rules,
            complete,
        })
    }

    /// Dual of a finite group: irreducibles are group elements, fusion is
    /// the group law.
    pub fn group_dual(group: &FiniteGroup) -> Self {
        let n = group.order();
        let labels = (0..n).map(|g| g.to_string()).collect();
        let dual = (0..n).map(|g| group.inv(g)).collect();
        let mut rules = HashMap::new();
        let mut complete = BTreeSet::new();
        for a in 0..n {
            for b in 0..n {
                rules.insert((a, b), vec![(group.mul(a, b), 1)]);
                complete.insert((a, b));
            }
        }
        Self::new(labels, vec![1; n], group.identity(), dual, rules, complete)
            .expect("group dual is consistent")
    }

    /// Irreducible representations of the symmetric group on three letters:
    /// trivial, sign and the two-dimensional standard representation.
    pub fn s3_representations() -> Self {
        let (t, s, v) = (0, 1, 2);
        let mut rules = HashMap::new();
        rules.insert((s, s), vec![(t, 1)]);
        rules.insert((s, v), vec![(v, 1)]);
        rules.insert((v, s), vec![(v, 1)]);
        rules.insert((v, v), vec![(t, 1), (s, 1), (v, 1)]);
        let complete = (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).collect();
        Self::new(
            vec!["1".into(), "sgn".into(), "std".into()],
            vec![1, 1, 2],
            t,
            vec![0, 1, 2],
            rules,
            complete,
        )
        .expect("S3 table is consistent")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, name: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| Error::InvalidFusion(format!("unknown label `{name}`")))
    }

    pub fn dim(&self, a: usize) -> usize {
        self.dims[a]
    }

    pub fn trivial(&self) -> usize {
        self.trivial
    }

    pub fn dual(&self, a: usize) -> usize {
        self.dual[a]
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&a| a != self.trivial)
    }

    pub fn is_complete(&self, a: usize, b: usize) -> bool {
        a == self.trivial || b == self.trivial || self.complete.contains(&(a, b))
    }

    /// Decomposition of `a ⊗ b` as `(label, multiplicity)` pairs.
    pub fn fuse(&self, a: usize, b: usize) -> Result<Vec<(usize, usize)>> {
        if a == self.trivial {
            return Ok(vec![(b, 1)]);
        }
        if b == self.trivial {
            return Ok(vec![(a, 1)]);
        }
        if !self.complete.contains(&(a, b)) {
            return Err(Error::IncompleteFusion(
                self.labels[a].clone(),
                self.labels[b].clone(),
            ));
        }
        Ok(self.rules.get(&(a, b)).cloned().unwrap_or_default())
    }
}

/// Fusion tables for every vertex of a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct FusionData {
    vertices: Vec<VertexFusion>,
}

impl FusionData {
    pub fn new(vertices: Vec<VertexFusion>) -> Self {
        FusionData { vertices }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let specs: Vec<VertexFusionSpec> = serde_json::from_str(text)?;
        Ok(FusionData {
            vertices: specs
                .iter()
                .map(VertexFusion::from_spec)
                .collect::<Result<_>>()?,
        })
    }

    pub fn uniform(vertex: VertexFusion, n: usize) -> Self {
        FusionData {
            vertices: vec![vertex; n],
        }
    }

    pub fn vertex(&self, v: usize) -> &VertexFusion {
        &self.vertices[v]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_consistent() {
        let s3 = VertexFusion::s3_representations();
        assert_eq!(s3.fuse(2, 2).unwrap(), vec![(0, 1), (1, 1), (2, 1)]);
        let z3 = VertexFusion::group_dual(&FiniteGroup::cyclic(3));
        assert_eq!(z3.dual(1), 2);
        assert_eq!(z3.fuse(1, 2).unwrap(), vec![(0, 1)]);
    }

    #[test]
    fn spec_validation() {
        let good = r#"[{"labels":["1","s"],"dims":[1,1],"trivial":"1","fusion":[{"a":"s","b":"s","c":"1"}]}]"#;
        assert_eq!(FusionData::from_json(good).unwrap().len(), 1);
        let bad_dims = r#"[{"labels":["1","s"],"dims":[1,2],"trivial":"1","fusion":[{"a":"s","b":"s","c":"1"}]}]"#;
        assert!(FusionData::from_json(bad_dims).is_err());
        let bad_dual = r#"[{"labels":["1","s","t"],"dims":[1,1,1],"trivial":"1","dual":{"s":"t"},"fusion":[],"complete":[]}]"#;
        assert!(FusionData::from_json(bad_dual).is_err());
        let partial =
            r#"[{"labels":["1","s"],"dims":[1,1],"trivial":"1","fusion":[],"complete":[]}]"#;
        let d = FusionData::from_json(partial).unwrap();
        assert!(matches!(
            d.vertex(0).fuse(1, 1),
            Err(Error::IncompleteFusion(_, _))
        ));
        assert_eq!(d.vertex(0).fuse(0, 1).unwrap(), vec![(1, 1)]);
    }
}
