use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph_words::{FiniteGroup, SimplicialGraph};

use super::ball::{build_ball, CayleyBall};
use super::convolution::{convolution, shell_indicator, zone_norm};
use super::norm::{rd_fit, rd_table, sup_over_blocks, RdFit, RdRow};

/// Named graph product of finite groups with default experiment ranges.
#[derive(Debug, Clone)]
pub struct Preset {
    pub name: String,
    pub graph: SimplicialGraph,
    pub groups: Vec<FiniteGroup>,
    pub radius: usize,
    pub kmax: usize,
    pub lmax: usize,
    pub mmax: usize,
}

fn cyclic_orders(text: &str) -> Result<Vec<FiniteGroup>> {
    let orders: Vec<usize> = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad group order `{s}`")))
        })
        .collect::<Result<_>>()?;
    if orders.is_empty() || orders.iter().any(|&n| n < 2) {
        return Err(Error::Parse("group orders must be at least 2".into()));
    }
    Ok(orders.into_iter().map(FiniteGroup::cyclic).collect())
}

impl Preset {
    pub const NAMES: [&'static str; 5] = ["dinfty", "z2free3", "pentagon", "clique", "free"];

    /// `dinfty`, `z2free3`, `pentagon`, `clique[:n1,n2,..]` (product of
    /// cyclic groups) or `free[:n1,n2,..]` (free product of cyclic groups).
    pub fn parse(text: &str) -> Result<Self> {
        let (head, tail) = match text.split_once(':') {
            Some((h, t)) => (h, Some(t)),
            None => (text, None),
        };
        let z2 = || FiniteGroup::cyclic(2);
        let p = |name: &str, graph, groups, radius, kmax, lm| Preset {
            name: name.to_string(),
            graph,
            groups,
            radius,
            kmax,
            lmax: lm,
            mmax: lm,
        };
        match (head, tail) {
            ("dinfty", None) => Ok(p(
                "dinfty",
                SimplicialGraph::edgeless(2),
                vec![z2(); 2],
                16,
                6,
                6,
            )),
            ("z2free3", None) => Ok(p(
                "z2free3",
                SimplicialGraph::edgeless(3),
                vec![z2(); 3],
                12,
                3,
                4,
            )),
            ("pentagon", None) => Ok(p(
                "pentagon",
                SimplicialGraph::pentagon(),
                vec![z2(); 5],
                10,
                4,
                6,
            )),
            ("clique", t) => {
                let groups = cyclic_orders(t.unwrap_or("2,2,2"))?;
                let n = groups.len();
                Ok(p(text, SimplicialGraph::complete(n), groups, n + 1, n, n))
            }
            ("free", t) => {
                let groups = cyclic_orders(t.unwrap_or("2,3"))?;
                let n = groups.len();
                Ok(p(text, SimplicialGraph::edgeless(n), groups, 10, 4, 4))
            }
            _ => Err(Error::Parse(format!(
                "unknown preset `{text}`; expected one of {}",
                Self::NAMES.join(", ")
            ))),
        }
    }

    /// Every clique generates a finite group here, so the clique hypothesis
    /// of the product bound holds automatically.
    pub fn clique_note(&self) -> &'static str {
        "finite vertex groups: every clique subgroup is finite"
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FullNorm {
    /// Exact-column norm of `F(1_{S_1})`.
    pub estimate: f64,
    /// `‖a‖₁`, the trivial upper bound.
    pub bound: f64,
}

#[derive(Debug, Clone)]
pub struct RdReport {
    pub preset: String,
    pub radius: usize,
    pub trials: usize,
    pub seed: u64,
    pub rows: Vec<RdRow>,
    pub fit: RdFit,
    pub full_norm: FullNorm,
    pub shell_sizes: Vec<usize>,
}

#[derive(Debug, Clone, Copy)]
pub struct RdRun {
    pub radius: Option<usize>,
    pub kmax: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    pub exec: Execution,
}

pub fn run_preset(preset: &Preset, run: RdRun) -> Result<RdReport> {
    let radius = run.radius.unwrap_or(preset.radius);
    let kmax = run.kmax.unwrap_or(preset.kmax);
    let (lmax, mmax) = (preset.lmax.min(radius), preset.mmax.min(radius));
    if kmax > radius {
        return Err(Error::Window(format!(
            "support length {kmax} exceeds radius {radius}"
        )));
    }
    if radius < 2 {
        return Err(Error::Window(format!(
            "radius {radius} leaves no exact column for the full norm"
        )));
    }
    let ball = build_ball(&preset.graph, &preset.groups, radius)?;
    let rows = rd_table(&ball, kmax, lmax, mmax, run.trials, run.seed, run.exec)?;
    let fit = rd_fit(&sup_over_blocks(&rows));
    let full_norm = full_norm(&ball, run.seed)?;
    Ok(RdReport {
        preset: preset.name.clone(),
        radius,
        trials: run.trials,
        seed: run.seed,
        rows,
        fit,
        full_norm,
        shell_sizes: ball.shell_sizes(),
    })
}

/// Norm of the sum of all length-one elements on the exact columns.
pub fn full_norm(ball: &CayleyBall, seed: u64) -> Result<FullNorm> {
    let a = shell_indicator(ball, 1);
    let op = convolution(ball, &a)?;
    Ok(FullNorm {
        estimate: zone_norm(&op, seed)?.norm,
        bound: a.len() as f64,
    })
}

fn num(x: f64) -> String {
    format!("{x:.10}")
}

impl RdReport {
    pub const HEADER: [&'static str; 11] = [
        "preset",
        "R",
        "k",
        "l",
        "m",
        "trials",
        "seed",
        "estimate",
        "bound_chain",
        "fit_degree",
        "fit_constant",
    ];

    /// One row per `(k, l, m)` block and a final `l = m = all` row for the
    /// full norm of the length-one indicator. LF line endings.
    pub fn to_csv(&self) -> String {
        let degree = self
            .fit
            .degree
            .map_or_else(|| "none".to_string(), |d| d.to_string());
        let constant = num(self.fit.constant);
        let (preset, radius, seed) = (
            self.preset.as_str(),
            self.radius.to_string(),
            self.seed.to_string(),
        );
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(Self::HEADER).expect("in-memory write");
        for r in &self.rows {
            w.write_record([
                preset,
                &radius,
                &r.k.to_string(),
                &r.l.to_string(),
                &r.m.to_string(),
                &r.trials.to_string(),
                &r.seed.to_string(),
                &num(r.estimate),
                &num(r.bound_chain),
                &degree,
                &constant,
            ])
            .expect("in-memory write");
        }
        w.write_record([
            preset,
            &radius,
            "1",
            "all",
            "all",
            "1",
            &seed,
            &num(self.full_norm.estimate),
            &num(self.full_norm.bound),
            &degree,
            &constant,
        ])
        .expect("in-memory write");
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }
}
