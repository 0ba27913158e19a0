//! Fixture generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::VecDeque;

use snakes_core::rng::Rng;
use snakes_core::scalar::{loss_at, win_at};
use snakes_core::search::{evaluate, EvalWeights};
use snakes_core::{Cell, Direction, GameState, MatchConfig, Side};

pub fn logical(w: i32, h: i32, len: usize) -> MatchConfig {
    MatchConfig::logical().with_board(w, h).with_length(len)
}

/// Move chooser for fuzzing: mostly survival moves, sometimes anything.
pub fn fuzz_move(state: &GameState, side: Side, rng: &mut Rng) -> Direction {
    let safe = state.legal_survival_moves(side);
    if !safe.is_empty() && rng.below(10) != 0 {
        safe.nth(rng.below(safe.len())).unwrap()
    } else {
        Direction::ALL[rng.below(4)]
    }
}

/// A running position reached by up to `steps` fuzzed steps from the start.
pub fn random_state(config: &MatchConfig, seed: u64, steps: usize) -> GameState {
    let mut rng = Rng::new(seed ^ 0x5eed);
    let mut s = GameState::new_match(config, seed).unwrap();
    for _ in 0..steps {
        let moves = [fuzz_move(&s, Side::White, &mut rng), fuzz_move(&s, Side::Blue, &mut rng)];
        let o = s.step(moves[0], moves[1]).unwrap();
        if o.terminal.is_some() {
            break;
        }
        s = o.next;
    }
    s
}

/// Distances by repeated relaxation until nothing changes.
pub fn bellman_distances(w: i32, h: i32, source: Cell, blocked: &dyn Fn(Cell) -> bool) -> Vec<Option<u32>> {
    let mut d: Vec<Option<u32>> = vec![None; (w * h) as usize];
    d[(source.y * w + source.x) as usize] = Some(0);
    loop {
        let mut changed = false;
        for y in 0..h {
            for x in 0..w {
                let c = Cell::new(x, y);
                if c == source || blocked(c) {
                    continue;
                }
                let best = Direction::ALL
                    .iter()
                    .map(|&dir| c.step(dir))
                    .filter(|n| n.on_board(w, h))
                    .filter_map(|n| d[(n.y * w + n.x) as usize])
                    .min()
                    .map(|v| v + 1);
                let slot = &mut d[(y * w + x) as usize];
                if best.is_some() && (slot.is_none() || best < *slot) {
                    *slot = best;
                    changed = true;
                }
            }
        }
        if !changed {
            return d;
        }
    }
}

pub fn occupied_now(state: &GameState, c: Cell) -> bool {
    state.snakes().iter().any(|s| s.is_alive() && s.contains(c))
}

/// Plain BFS distance from `from` to `to` through free cells (`to` may be a head).
pub fn bfs_to(state: &GameState, from: Cell, to: Cell) -> Option<u32> {
    let (w, h) = (state.width(), state.height());
    let mut seen = vec![false; (w * h) as usize];
    let mut q = VecDeque::from([(from, 0u32)]);
    seen[(from.y * w + from.x) as usize] = true;
    while let Some((c, d)) = q.pop_front() {
        if c == to {
            return Some(d);
        }
        for dir in Direction::ALL {
            let n = c.step(dir);
            if !n.on_board(w, h) || seen[(n.y * w + n.x) as usize] {
                continue;
            }
            if n != to && occupied_now(state, n) {
                continue;
            }
            seen[(n.y * w + n.x) as usize] = true;
            q.push_back((n, d + 1));
        }
    }
    None
}

/// Per-cell territory by two independent searches per empty cell.
pub fn brute_ownership(state: &GameState, me: Side) -> (usize, usize, usize) {
    let (mut mine, mut theirs, mut tied) = (0, 0, 0);
    for y in 0..state.height() {
        for x in 0..state.width() {
            let c = Cell::new(x, y);
            if occupied_now(state, c) {
                continue;
            }
            let a = bfs_to(state, c, state.snake(me).head());
            let b = bfs_to(state, c, state.snake(me.other()).head());
            match (a, b) {
                (Some(a), Some(b)) if a < b => mine += 1,
                (Some(a), Some(b)) if a > b => theirs += 1,
                (Some(_), None) => mine += 1,
                (None, Some(_)) => theirs += 1,
                _ => tied += 1,
            }
        }
    }
    (mine, theirs, tied)
}

/// Paranoid minimax written directly against the public engine API:
/// max over my moves of min over the reply, `depth` full steps.
pub fn oracle_minimax(state: &GameState, depth: u32, me: Side, w: &EvalWeights<i64>) -> i64 {
    fn go(s: &GameState, depth: u32, ply: u32, me: Side, w: &EvalWeights<i64>) -> i64 {
        if let Some(o) = s.outcome() {
            return match o.result.winner() {
                Some(x) if x == me => win_at(ply),
                Some(_) => loss_at(ply),
                None => 0,
            };
        }
        if depth == 0 {
            return evaluate(s, me, w);
        }
        Direction::ALL
            .iter()
            .map(|&m| {
                Direction::ALL
                    .iter()
                    .map(|&r| {
                        let (wm, bm) = if me == Side::White { (m, r) } else { (r, m) };
                        let next = s.step(wm, bm).unwrap().next;
                        go(&next, depth - 1, ply + 1, me, w)
                    })
                    .min()
                    .unwrap()
            })
            .max()
            .unwrap()
    }
    go(state, depth, 0, me, w)
}
