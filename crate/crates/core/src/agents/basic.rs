use crate::engine::{DirSet, Direction, GameState, Side};
use crate::rng::Rng;
use crate::search::{astar_path, flood_count};

use super::{random_safe_decide, Bot, BotView};

/// Weak baseline: any move that does not die immediately.
pub struct RandomSafe {
    name: String,
    rng: Rng,
}

impl RandomSafe {
    pub fn new(name: impl Into<String>, seed: u64) -> Self {
        Self {
            name: name.into(),
            rng: Rng::new(seed),
        }
    }
}

impl Bot for RandomSafe {
    fn name(&self) -> &str {
        &self.name
    }

    fn decide(&mut self, view: &BotView) -> Direction {
        random_safe_decide(view, &mut self.rng)
    }
}

/// Survival move leading to the largest reachable area; ties go to the
/// earliest direction in canonical order.
pub fn max_area_move(state: &GameState, me: Side, moves: DirSet) -> Option<Direction> {
    let mut best: Option<(usize, Direction)> = None;
    for d in moves.iter() {
        let Some(next) = state.solo_step(me, d) else {
            continue;
        };
        let area = flood_count(&next, next.snake(me).head());
        if best.is_none_or(|(a, _)| area > a) {
            best = Some((area, d));
        }
    }
    best.map(|(_, d)| d)
}

/// Chases the apple along a shortest path when the first step leaves the
/// snake with somewhere to go next; otherwise maximizes reachable area.
pub fn greedy_bfs_decide(view: &BotView) -> Direction {
    let state = &view.state;
    let me = view.me;
    let snake = state.snake(me);
    let safe = state.legal_survival_moves(me);
    if safe.is_empty() {
        return snake.heading();
    }
    if let Some(apple) = state.apple().position {
        if let Some(path) = astar_path(state, snake.head(), apple) {
            if let Some(d) = path.get(1).and_then(|&c| snake.head().direction_to(c)) {
                let keeps_options = state
                    .solo_step(me, d)
                    .is_some_and(|next| !next.legal_survival_moves(me).is_empty());
                if keeps_options {
                    return d;
                }
            }
        }
    }
    max_area_move(state, me, safe).unwrap_or(snake.heading())
}

pub struct GreedyBfs {
    name: String,
}

impl GreedyBfs {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into() }
    }
}

impl Bot for GreedyBfs {
    fn name(&self) -> &str {
        &self.name
    }

    fn decide(&mut self, view: &BotView) -> Direction {
        greedy_bfs_decide(view)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{Cell, MatchConfig};
    use crate::search::SearchBudget;

    fn c(x: i32, y: i32) -> Cell {
        Cell::new(x, y)
    }

    fn view(state: GameState) -> BotView {
        BotView::new(state, Side::White, SearchBudget::Nodes(1000))
    }

    fn cfg(w: i32, h: i32) -> MatchConfig {
        MatchConfig::logical().with_board(w, h).with_length(1)
    }

    #[test]
    fn chases_apple_in_the_open() {
        let s = GameState::from_parts(
            cfg(9, 9),
            (vec![c(2, 4), c(1, 4), c(0, 4)], Direction::East),
            (vec![c(8, 8)], Direction::West),
            Some(c(5, 4)),
            1,
        )
        .unwrap();
        assert_eq!(greedy_bfs_decide(&view(s)), Direction::East);
    }

    #[test]
    fn declines_dead_end_apple() {
        // Apple in the corner (0,0); blue's head fills its other neighbour,
        // so after eating the only exit would be the own neck.
        let s = GameState::from_parts(
            cfg(7, 7),
            (vec![c(0, 1), c(0, 2), c(0, 3)], Direction::North),
            (vec![c(1, 0), c(2, 0), c(3, 0)], Direction::West),
            Some(c(0, 0)),
            1,
        )
        .unwrap();
        assert!(astar_path(&s, c(0, 1), c(0, 0)).is_some());
        let eaten = s.solo_step(Side::White, Direction::North).unwrap();
        assert!(eaten.legal_survival_moves(Side::White).is_empty());
        assert_eq!(greedy_bfs_decide(&view(s)), Direction::East);
    }

    #[test]
    fn absent_apple_takes_largest_area() {
        // the snake's head is at (1,0); going West enters the 1-cell corner
        let s = GameState::from_parts(
            cfg(6, 6),
            (vec![c(1, 0), c(2, 0), c(3, 0)], Direction::West),
            (vec![c(0, 1), c(0, 2), c(0, 3)], Direction::North),
            None,
            1,
        )
        .unwrap();
        assert_eq!(greedy_bfs_decide(&view(s)), Direction::South);
    }

    #[test]
    fn random_safe_is_reproducible() {
        let s = GameState::new_match(&MatchConfig::logical(), 2).unwrap();
        let mut a = RandomSafe::new("a", 9);
        let mut b = RandomSafe::new("b", 9);
        for _ in 0..20 {
            assert_eq!(a.decide(&view(s.clone())), b.decide(&view(s.clone())));
        }
    }
}
