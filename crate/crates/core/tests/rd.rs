mod common;

use graph_product::graph_words::{FiniteGroup, SimplicialGraph};
use graph_product::rd_lab::{build_ball, full_norm, growth_series, rd_norm, GrowthModel};
use graph_product::Execution;
use proptest::prelude::*;

fn free_z2(n: usize, r: usize) -> f64 {
    let ball = build_ball(
        &SimplicialGraph::edgeless(n),
        &vec![FiniteGroup::cyclic(2); n],
        r,
    )
    .unwrap();
    full_norm(&ball, 0).unwrap().estimate
}

#[test]
fn full_norms_match_the_word_list_oracle() {
    for (n, r) in [(2, 6), (2, 16), (3, 4), (3, 8), (4, 5)] {
        let ours = free_z2(n, r);
        let oracle = common::free_z2_generator_norm(n, r);
        assert!(
            (ours - oracle).abs() < 1e-5 * oracle,
            "n={n} R={r}: {ours} vs {oracle}"
        );
    }
}

#[test]
fn full_norms_grow_with_the_radius() {
    let mut last = 0.0;
    for r in 2..=10 {
        let x = free_z2(3, r);
        assert!(x >= last - 1e-7, "R={r}: {x} < {last}");
        assert!(x <= 2.0 * 2f64.sqrt() + 1e-9);
        last = x;
    }
}

#[test]
fn growth_of_free_products() {
    let ball = build_ball(
        &SimplicialGraph::edgeless(3),
        &vec![FiniteGroup::cyclic(2); 3],
        8,
    )
    .unwrap();
    let expected: Vec<usize> = (0..=8)
        .map(|k| if k == 0 { 1 } else { 3 << (k - 1) })
        .collect();
    assert_eq!(ball.shell_sizes(), expected);
    assert_eq!(growth_series(&ball).model, GrowthModel::Exponential);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn block_estimates_respect_their_bounds(
        k in 0usize..=3,
        l in 0usize..=4,
        m in 0usize..=4,
        seed in any::<u64>(),
    ) {
        let g = SimplicialGraph::pentagon();
        let ball = build_ball(&g, &vec![FiniteGroup::cyclic(2); 5], 5).unwrap();
        let row = rd_norm(&ball, k, l, m, 4, seed, Execution::Sequential).unwrap();
        prop_assert!(row.estimate <= row.bound_chain + 1e-9);
        prop_assert!(row.estimate >= 0.0);
        if !(k + l >= m && m + k >= l) {
            prop_assert_eq!(row.estimate, 0.0);
        }
        let par = rd_norm(&ball, k, l, m, 4, seed, Execution::Parallel).unwrap();
        prop_assert_eq!(row, par);
    }
}
