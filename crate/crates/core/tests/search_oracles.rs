mod common;

use num_rational::Rational64;
use proptest::prelude::*;
use snakes_core::search::{
    alphabeta, astar_path, evaluate, minimax_report, voronoi_ownership, DistanceField, EvalWeights,
    SearchBudget,
};
use snakes_core::{Cell, Direction, GameState, Side, Weights};

use common::*;

fn int_weights() -> EvalWeights<i64> {
    EvalWeights::new(10, 1, 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn minimax_matches_the_brute_force_oracle(seed in any::<u64>(), steps in 0usize..30, depth in 1u32..3) {
        let s = random_state(&logical(5, 5, 2), seed, steps);
        prop_assume!(s.is_running());
        for me in Side::BOTH {
            let report = minimax_report(&s, depth, me, &int_weights());
            prop_assert_eq!(report.value, oracle_minimax(&s, depth, me, &int_weights()));
        }
    }

    #[test]
    fn alphabeta_agrees_with_minimax(seed in any::<u64>(), steps in 0usize..30, depth in 1u32..4) {
        let s = random_state(&logical(5, 5, 2), seed, steps);
        prop_assume!(s.is_running());
        let w = Weights::default();
        let mm = minimax_report(&s, depth, Side::White, &w);
        let ab = alphabeta(&s, depth, Side::White, SearchBudget::Nodes(u64::MAX), &w).unwrap();
        prop_assert_eq!(ab.value, mm.value);
        prop_assert!(ab.nodes <= mm.nodes);
        // the chosen move achieves the value
        prop_assert_eq!(mm.move_values[ab.best.index()], mm.value);
    }

    #[test]
    fn evaluation_is_antisymmetric(seed in any::<u64>(), steps in 0usize..80) {
        let s = random_state(&logical(8, 8, 3), seed, steps);
        let w = Weights::default();
        prop_assert_eq!(evaluate(&s, Side::White, &w), -evaluate(&s, Side::Blue, &w));
        prop_assert_eq!(evaluate(&s, Side::White, &w), evaluate(&s.swap_sides(), Side::Blue, &w));
    }

    #[test]
    fn best_move_ignores_positive_weight_scaling(seed in any::<u64>(), steps in 0usize..30, k in 1i64..50, d in 1i64..7) {
        let s = random_state(&logical(5, 5, 2), seed, steps);
        prop_assume!(s.is_running());
        let w = Weights::default();
        let scaled = w.scaled(Rational64::new(k, d));
        let a = alphabeta(&s, 2, Side::White, SearchBudget::Nodes(u64::MAX), &w).unwrap();
        let b = alphabeta(&s, 2, Side::White, SearchBudget::Nodes(u64::MAX), &scaled).unwrap();
        prop_assert_eq!(a.best, b.best);
    }

    #[test]
    fn scalar_types_agree_on_integer_weights(seed in any::<u64>(), steps in 0usize..30) {
        let s = random_state(&logical(5, 5, 2), seed, steps);
        prop_assume!(s.is_running());
        let r = alphabeta(&s, 2, Side::White, SearchBudget::Nodes(u64::MAX), &Weights::default()).unwrap();
        let f = alphabeta(&s, 2, Side::White, SearchBudget::Nodes(u64::MAX), &EvalWeights::<f64>::default()).unwrap();
        let i = alphabeta(&s, 2, Side::White, SearchBudget::Nodes(u64::MAX), &int_weights()).unwrap();
        prop_assert_eq!(r.best, f.best);
        prop_assert_eq!(r.best, i.best);
    }

    #[test]
    fn voronoi_matches_per_cell_search(seed in any::<u64>(), steps in 0usize..80) {
        let s = random_state(&logical(8, 8, 3), seed, steps);
        let o = voronoi_ownership(&s, Side::White);
        prop_assert_eq!((o.owned_self, o.owned_opponent, o.contested), brute_ownership(&s, Side::White));
    }

    #[test]
    fn astar_length_is_bfs_distance(seed in any::<u64>(), steps in 0usize..80, tx in 0i32..8, ty in 0i32..8) {
        let s = random_state(&logical(8, 8, 3), seed, steps);
        let from = s.snake(Side::White).head();
        let to = Cell::new(tx, ty);
        let field = DistanceField::compute(8, 8, &[from], |c| occupied_now(&s, c));
        let expected = if occupied_now(&s, to) && to != from { None } else { field.get(to) };
        let path = astar_path(&s, from, to);
        prop_assert_eq!(path.as_ref().map(|p| p.len() as u32 - 1), expected);
        if let Some(p) = path {
            for pair in p.windows(2) {
                prop_assert_eq!(pair[0].manhattan(pair[1]), 1);
                prop_assert!(!occupied_now(&s, pair[1]));
            }
        }
    }
}

#[test]
fn symmetric_three_by_three_ownership() {
    // heads in opposite corners of an otherwise empty 3x3 board
    let s = GameState::from_parts(
        logical(3, 3, 1),
        (vec![Cell::new(0, 0)], Direction::East),
        (vec![Cell::new(2, 2)], Direction::West),
        None,
        1,
    )
    .unwrap();
    let o = voronoi_ownership(&s, Side::White);
    assert_eq!((o.owned_self, o.owned_opponent, o.contested), (2, 2, 3));
    assert_eq!(brute_ownership(&s, Side::White), (2, 2, 3));
}
