use std::collections::BTreeSet;

use super::*;
use crate::graph_words::{FiniteGroup, GroupElement, SimplicialGraph};
use crate::linalg::{c, operator_norm, C64};
use crate::Execution;

fn z2s(n: usize) -> Vec<FiniteGroup> {
    vec![FiniteGroup::cyclic(2); n]
}

/// Normal forms of every letter sequence of length at most `r`, grouped by
/// block length.
fn brute_shells(g: &SimplicialGraph, groups: &[FiniteGroup], r: usize) -> Vec<usize> {
    let letters: Vec<(usize, usize)> = g
        .vertices()
        .flat_map(|v| groups[v].non_identity().map(move |x| (v, x)))
        .collect();
    let mut seen = BTreeSet::new();
    let mut frontier = vec![Vec::new()];
    for _ in 0..=r {
        let mut next = Vec::new();
        for w in &frontier {
            seen.insert(GroupElement::from_letters(g, groups, w).unwrap());
            for &l in &letters {
                let mut x = w.clone();
                x.push(l);
                next.push(x);
            }
        }
        frontier = next;
    }
    let mut out = vec![0; r + 1];
    for x in seen {
        if x.len() <= r {
            out[x.len()] += 1;
        }
    }
    out
}

#[test]
fn balls_match_brute_force() {
    let cases = [
        (SimplicialGraph::edgeless(2), z2s(2), 5),
        (SimplicialGraph::complete(2), z2s(2), 3),
        (SimplicialGraph::pentagon(), z2s(5), 4),
        (
            SimplicialGraph::edgeless(2),
            vec![FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)],
            5,
        ),
    ];
    for (g, groups, r) in cases {
        let ball = build_ball(&g, &groups, r).unwrap();
        assert_eq!(ball.shell_sizes(), brute_shells(&g, &groups, r));
        for (i, x) in ball.elements().iter().enumerate() {
            assert_eq!(ball.index_of(x), Some(i));
        }
        assert!(ball.elements().windows(2).all(|w| w[0] < w[1]));
    }
    assert_eq!(
        build_ball(&SimplicialGraph::edgeless(2), &z2s(2), 5)
            .unwrap()
            .shell_sizes(),
        vec![1, 2, 2, 2, 2, 2]
    );
    assert_eq!(
        build_ball(&SimplicialGraph::pentagon(), &z2s(5), 2)
            .unwrap()
            .len(),
        21
    );
    assert_eq!(
        build_ball(&SimplicialGraph::complete(2), &z2s(2), 4)
            .unwrap()
            .len(),
        4
    );
    assert!(build_ball_with_cap(&SimplicialGraph::edgeless(3), &z2s(3), 10, 100).is_err());
}

#[test]
fn convolution_is_exact_on_its_zone() {
    let g = SimplicialGraph::pentagon();
    let groups = z2s(5);
    let ball = build_ball(&g, &groups, 4).unwrap();
    let a: Vec<(usize, C64)> = ball
        .up_to(2)
        .map(|i| (i, c(1.0 + i as f64, 0.5 * i as f64)))
        .collect();
    let op = convolution(&ball, &a).unwrap();
    assert_eq!(op.support_length, 2);
    let mask = op.zone_mask();
    for h in 0..ball.len() {
        if !mask[h] {
            continue;
        }
        let col = op.matrix.column(h);
        let mut want = vec![C64::default(); ball.len()];
        for &(gi, z) in &a {
            let prod = GroupElement::from_letters(
                &g,
                &groups,
                &[ball.element(gi).letters(), ball.element(h).letters()].concat(),
            )
            .unwrap();
            want[ball.index_of(&prod).expect("zone column stays inside")] += z;
        }
        assert_eq!(col, want);
    }
}

#[test]
fn identity_and_swap() {
    let ball = build_ball(&SimplicialGraph::edgeless(1), &z2s(1), 1).unwrap();
    let id = convolution(&ball, &[(0, c(1.0, 0.0))]).unwrap();
    assert_eq!(id.matrix.to_dense(), crate::linalg::Mat::identity(2, 2));
    let swap = convolution(&ball, &[(1, c(1.0, 0.0))]).unwrap();
    let d = swap.matrix.to_dense();
    assert_eq!(d[(0, 1)], c(1.0, 0.0));
    assert_eq!(d[(1, 0)], c(1.0, 0.0));
    assert!((operator_norm(&d) - 1.0).abs() < 1e-12);
}

#[test]
fn blocks_respect_the_window() {
    let g = SimplicialGraph::pentagon();
    let ball = build_ball(&g, &z2s(5), 5).unwrap();
    let a: Vec<(usize, C64)> = ball.up_to(2).map(|i| (i, c(1.0, -(i as f64)))).collect();
    let op = convolution(&ball, &a).unwrap();
    let dense: Vec<C64> = (0..ball.up_to(2).end).map(|i| a[i].1).collect();
    for l in 0..=3 {
        let products = BlockProducts::new(&ball, 2, l).unwrap();
        for m in 0..=5 {
            let block = qk_compress(&ball, &op, m, l).unwrap();
            if m > 2 + l || m + 2 < l {
                assert_eq!(block.nnz(), 0);
            }
            assert_eq!(
                block.to_dense(),
                products.block(&ball, &dense, m).to_dense()
            );
        }
    }
    assert!(qk_compress(&ball, &op, 6, 0).is_err());
    // k = l = m = 1 on the pentagon: entry (x, h) is a(x h⁻¹), and x h⁻¹ has
    // length 0 or 2, so only a(e) survives
    let one = convolution(
        &ball,
        &ball
            .up_to(1)
            .map(|i| (i, c(7.0 + i as f64, 0.0)))
            .collect::<Vec<_>>(),
    )
    .unwrap();
    let b = qk_compress(&ball, &one, 1, 1).unwrap();
    assert_eq!(
        b.to_dense(),
        crate::linalg::Mat::identity(5, 5) * c(7.0, 0.0)
    );
    // s_i s_j with i ≠ j always has length two
    let b = qk_compress(&ball, &one, 2, 1).unwrap();
    assert_eq!(b.nnz(), 20);
}

#[test]
fn support_length_zero_is_exact() {
    let ball = build_ball(&SimplicialGraph::pentagon(), &z2s(5), 3).unwrap();
    for (l, m) in [(0, 0), (2, 2), (3, 3), (1, 2)] {
        let r = rd_norm(&ball, 0, l, m, 4, 1, Execution::Sequential).unwrap();
        let want = if l == m { 1.0 } else { 0.0 };
        assert!((r.estimate - want).abs() < 1e-12, "{l} {m} {}", r.estimate);
    }
}

#[test]
fn estimates_stay_below_the_chain() {
    let ball = build_ball(&SimplicialGraph::pentagon(), &z2s(5), 5).unwrap();
    let rows = rd_table(&ball, 2, 3, 4, 8, 9, Execution::Parallel).unwrap();
    assert_eq!(rows.len(), 3 * 4 * 5);
    for r in &rows {
        assert!(r.estimate <= r.bound_chain + 1e-9, "{r:?}");
        assert_eq!(r.window_violations, 0);
    }
    let seq = rd_table(&ball, 2, 3, 4, 8, 9, Execution::Sequential).unwrap();
    assert_eq!(rows, seq);
}

#[test]
fn amenable_and_free_full_norms() {
    let dinf = build_ball(&SimplicialGraph::edgeless(2), &z2s(2), 16).unwrap();
    let f = full_norm(&dinf, 3).unwrap();
    assert!(
        f.estimate >= 1.98 && f.estimate <= 2.0 + 1e-9,
        "{}",
        f.estimate
    );
    let small = full_norm(
        &build_ball(&SimplicialGraph::edgeless(2), &z2s(2), 8).unwrap(),
        3,
    )
    .unwrap();
    assert!(small.estimate <= f.estimate + 1e-9);
    let free3 = build_ball(&SimplicialGraph::edgeless(3), &z2s(3), 12).unwrap();
    let f = full_norm(&free3, 3).unwrap();
    let target = 2.0 * 2f64.sqrt();
    assert!(
        f.estimate <= target + 1e-9 && f.estimate >= 0.98 * target,
        "{}",
        f.estimate
    );
}

#[test]
fn fit_degrees() {
    assert_eq!(
        rd_fit(&[(0, 1.0), (1, 1.5), (2, 1.6), (3, 1.6), (4, 1.6)]).degree,
        Some(0)
    );
    assert_eq!(
        rd_fit(&[(0, 1.0), (1, 2.0), (2, 3.0), (3, 4.0), (4, 5.0)]).degree,
        Some(1)
    );
    assert_eq!(
        rd_fit(&[(0, 1.0), (1, 1.0), (2, 1.0), (3, 1e6)]).degree,
        None
    );
    let clique = Preset::parse("clique").unwrap();
    let report = run_preset(
        &clique,
        RdRun {
            radius: None,
            kmax: None,
            trials: 8,
            seed: 2,
            exec: Execution::Parallel,
        },
    )
    .unwrap();
    assert_eq!(report.fit.degree, Some(0));
}

#[test]
fn growth_models() {
    let d = growth_series(&build_ball(&SimplicialGraph::edgeless(2), &z2s(2), 8).unwrap());
    assert_eq!(d.model, GrowthModel::Polynomial);
    let f = growth_series(&build_ball(&SimplicialGraph::edgeless(3), &z2s(3), 7).unwrap());
    assert_eq!(f.sizes, vec![1, 3, 6, 12, 24, 48, 96, 192]);
    assert_eq!(f.model, GrowthModel::Exponential);
    assert!((f.exponential.unwrap().slope - 2f64.ln()).abs() < 1e-12);
    let k = growth_series(&build_ball(&SimplicialGraph::complete(2), &z2s(2), 3).unwrap());
    assert_eq!(k.sizes, vec![1, 2, 1, 0]);
    assert_eq!(k.model, GrowthModel::Finite);
}

#[test]
fn presets_parse_and_refuse_bad_windows() {
    for name in Preset::NAMES {
        assert!(Preset::parse(name).is_ok());
    }
    assert_eq!(Preset::parse("free:2,2,2").unwrap().graph.len(), 3);
    assert!(Preset::parse("free:1").is_err());
    assert!(Preset::parse("torus").is_err());
    let p = Preset::parse("dinfty").unwrap();
    let err = run_preset(
        &p,
        RdRun {
            radius: Some(3),
            kmax: Some(5),
            trials: 1,
            seed: 0,
            exec: Execution::Sequential,
        },
    );
    assert_eq!(err.unwrap_err().kind(), crate::ErrorKind::Budget);
}
