//! Game-tree search over the sequentialized game.
//!
//! The simultaneous step is split into two plies: the searching side commits
//! to a move, then the opponent replies knowing it (the paranoid reading).
//! `depth` counts full steps. Decided positions score `win_at(ply)` /
//! `loss_at(ply)` where `ply` is the number of steps below the root.

use crate::engine::{DirSet, Direction, GameState, Side};
use crate::scalar::{infinity, is_loss, is_win, Scalar};

use super::budget::{BudgetExhausted, Meter, SearchBudget};
use super::eval::{evaluate, terminal_value, EvalWeights};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchResult<S> {
    pub best: Direction,
    pub value: S,
    /// Nodes visited, root included.
    pub nodes: u64,
}

/// Exhaustive minimax report: root value, node count, and each root move's value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MinimaxReport<S> {
    pub value: S,
    pub nodes: u64,
    pub move_values: [S; 4],
}

fn joint(perspective: Side, mine: Direction, theirs: Direction) -> [Direction; 2] {
    match perspective {
        Side::White => [mine, theirs],
        Side::Blue => [theirs, mine],
    }
}

fn child(state: &GameState, moves: [Direction; 2]) -> GameState {
    let mut next = state.clone();
    next.advance(moves, state.config().nominal_step())
        .expect("search only expands running states");
    next
}

// ---------------------------------------------------------------------------
// Reference minimax (no pruning)
// ---------------------------------------------------------------------------

/// Exhaustive sequentialized minimax value at `depth` full steps.
pub fn minimax_value<S: Scalar>(
    state: &GameState,
    depth: u32,
    perspective: Side,
    weights: &EvalWeights<S>,
) -> S {
    minimax_report(state, depth, perspective, weights).value
}

pub fn minimax_report<S: Scalar>(
    state: &GameState,
    depth: u32,
    perspective: Side,
    weights: &EvalWeights<S>,
) -> MinimaxReport<S> {
    let mut nodes = 1;
    if let Some(v) = terminal_value(state, perspective, 0) {
        return MinimaxReport { value: v, nodes, move_values: [v; 4] };
    }
    if depth == 0 {
        let v = evaluate(state, perspective, weights);
        return MinimaxReport { value: v, nodes, move_values: [v; 4] };
    }
    let mut move_values = [S::zero(); 4];
    for m in Direction::ALL {
        move_values[m.index()] = mm_min(state, m, depth, 0, perspective, weights, &mut nodes);
    }
    let value = move_values
        .iter()
        .copied()
        .fold(-infinity::<S>(), |a, b| if b > a { b } else { a });
    MinimaxReport { value, nodes, move_values }
}

fn mm_max<S: Scalar>(
    state: &GameState,
    depth: u32,
    ply: u32,
    perspective: Side,
    weights: &EvalWeights<S>,
    nodes: &mut u64,
) -> S {
    *nodes += 1;
    if let Some(v) = terminal_value(state, perspective, ply) {
        return v;
    }
    if depth == 0 {
        return evaluate(state, perspective, weights);
    }
    let mut best = -infinity::<S>();
    for m in Direction::ALL {
        let v = mm_min(state, m, depth, ply, perspective, weights, nodes);
        if v > best {
            best = v;
        }
    }
    best
}

fn mm_min<S: Scalar>(
    state: &GameState,
    mine: Direction,
    depth: u32,
    ply: u32,
    perspective: Side,
    weights: &EvalWeights<S>,
    nodes: &mut u64,
) -> S {
    *nodes += 1;
    let mut worst = infinity::<S>();
    for r in Direction::ALL {
        let next = child(state, joint(perspective, mine, r));
        let v = mm_max(&next, depth - 1, ply + 1, perspective, weights, nodes);
        if v < worst {
            worst = v;
        }
    }
    worst
}

// ---------------------------------------------------------------------------
// Alpha-beta
// ---------------------------------------------------------------------------

struct AlphaBeta<'a, S> {
    perspective: Side,
    weights: &'a EvalWeights<S>,
    meter: &'a mut Meter,
}

impl<S: Scalar> AlphaBeta<'_, S> {
    fn max_node(&mut self, state: &GameState, depth: u32, ply: u32, mut alpha: S, beta: S) -> Result<S, BudgetExhausted> {
        self.meter.spend()?;
        if let Some(v) = terminal_value(state, self.perspective, ply) {
            return Ok(v);
        }
        if depth == 0 {
            return Ok(evaluate(state, self.perspective, self.weights));
        }
        let mut best = -infinity::<S>();
        for m in Direction::ALL {
            let v = self.min_node(state, m, depth, ply, alpha, beta)?;
            if v > best {
                best = v;
            }
            if best > alpha {
                alpha = best;
            }
            if alpha >= beta {
                break;
            }
        }
        Ok(best)
    }

    fn min_node(
        &mut self,
        state: &GameState,
        mine: Direction,
        depth: u32,
        ply: u32,
        alpha: S,
        mut beta: S,
    ) -> Result<S, BudgetExhausted> {
        self.meter.spend()?;
        let mut worst = infinity::<S>();
        for r in Direction::ALL {
            let next = child(state, joint(self.perspective, mine, r));
            let v = self.max_node(&next, depth - 1, ply + 1, alpha, beta)?;
            if v < worst {
                worst = v;
            }
            if worst < beta {
                beta = worst;
            }
            if alpha >= beta {
                break;
            }
        }
        Ok(worst)
    }
}

/// Alpha-beta over the given root moves; ties resolve to the earliest move
/// in canonical order.
pub(crate) fn alphabeta_root<S: Scalar>(
    state: &GameState,
    depth: u32,
    perspective: Side,
    moves: DirSet,
    meter: &mut Meter,
    weights: &EvalWeights<S>,
) -> Result<(Direction, S), BudgetExhausted> {
    assert!(depth >= 1, "alpha-beta needs depth >= 1");
    meter.spend()?;
    let heading = state.snake(perspective).heading();
    if let Some(v) = terminal_value(state, perspective, 0) {
        return Ok((heading, v));
    }
    let mut search = AlphaBeta { perspective, weights, meter };
    let mut alpha = -infinity::<S>();
    let mut best: Option<(Direction, S)> = None;
    for m in moves.iter() {
        let v = search.min_node(state, m, depth, 0, alpha, infinity())?;
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((m, v));
        }
        if v > alpha {
            alpha = v;
        }
    }
    Ok(best.unwrap_or((heading, alpha)))
}

/// Fixed-depth alpha-beta over all four root moves.
pub fn alphabeta<S: Scalar>(
    state: &GameState,
    depth: u32,
    perspective: Side,
    budget: SearchBudget,
    weights: &EvalWeights<S>,
) -> Result<SearchResult<S>, BudgetExhausted> {
    let mut meter = Meter::new(budget);
    let all: DirSet = Direction::ALL.into_iter().collect();
    let (best, value) = alphabeta_root(state, depth, perspective, all, &mut meter, weights)?;
    Ok(SearchResult {
        best,
        value,
        nodes: meter.used(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Deepening<S> {
    pub best: Direction,
    /// Value at `depth`, absent when no iteration completed.
    pub value: Option<S>,
    /// Deepest fully completed depth (0 if none).
    pub depth: u32,
    pub nodes: u64,
}

/// Alpha-beta at depths 1, 2, ... up to `max_depth` until the budget runs
/// out, returning the deepest completed result.
///
/// The root is restricted to survival moves when any exist, so the answer is
/// always one of them. A single survival move is returned without searching.
pub fn iterative_deepening<S: Scalar>(
    state: &GameState,
    perspective: Side,
    budget: SearchBudget,
    weights: &EvalWeights<S>,
    max_depth: u32,
) -> Deepening<S> {
    let mut meter = Meter::new(budget);
    let survival = state.legal_survival_moves(perspective);
    let mut result = Deepening {
        best: survival
            .first()
            .unwrap_or_else(|| state.snake(perspective).heading()),
        value: None,
        depth: 0,
        nodes: 0,
    };
    if survival.len() == 1 || !state.is_running() {
        return result;
    }
    let moves = if survival.is_empty() {
        Direction::ALL.into_iter().collect()
    } else {
        survival
    };
    for depth in 1..=max_depth {
        match alphabeta_root(state, depth, perspective, moves, &mut meter, weights) {
            Ok((best, value)) => {
                result.best = best;
                result.value = Some(value);
                result.depth = depth;
                if is_win(value) || is_loss(value) {
                    break;
                }
            }
            Err(BudgetExhausted) => break,
        }
    }
    result.nodes = meter.used();
    result
}
