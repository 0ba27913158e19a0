//! UCT search over the sequentialized game with random rollouts.
//!
//! Tree levels alternate: at a "self" node the searching side picks a move,
//! at the following "reply" node the opponent answers and the step is
//! applied. Rewards are from the searching side's point of view: win 1,
//! draw 0.5, loss 0. Rollouts stop after a fixed horizon and are scored by
//! the sign of the evaluation.

use crate::engine::{DirSet, Direction, GameState, Side};
use crate::rng::Rng;
use crate::scalar::Scalar;

use super::budget::{Meter, SearchBudget};
use super::eval::{evaluate, EvalWeights};

/// Steps simulated per rollout before falling back to the evaluation.
pub const ROLLOUT_HORIZON: u32 = 50;

const EXPLORATION: f64 = std::f64::consts::SQRT_2;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MctsResult {
    pub best: Direction,
    pub iterations: u64,
    /// Visit counts of the root moves, indexed by [`Direction::index`].
    pub visits: [u32; 4],
}

struct Node {
    state: GameState,
    /// Set on reply nodes: the searching side's committed move.
    committed: Option<Direction>,
    actions: DirSet,
    children: Vec<(Direction, usize)>,
    visits: u32,
    reward: f64,
    terminal: Option<f64>,
}

fn moves_or_all(set: DirSet) -> DirSet {
    if set.is_empty() {
        Direction::ALL.into_iter().collect()
    } else {
        set
    }
}

fn outcome_reward(state: &GameState, me: Side) -> Option<f64> {
    let o = state.outcome()?;
    Some(match o.result.winner() {
        Some(w) if w == me => 1.0,
        Some(_) => 0.0,
        None => 0.5,
    })
}

struct Tree<'a, S> {
    me: Side,
    weights: &'a EvalWeights<S>,
    nodes: Vec<Node>,
}

impl<S: Scalar> Tree<'_, S> {
    fn self_node(&mut self, state: GameState) -> usize {
        let terminal = outcome_reward(&state, self.me);
        let actions = if terminal.is_some() {
            DirSet::EMPTY
        } else {
            moves_or_all(state.legal_survival_moves(self.me))
        };
        self.push(Node {
            state,
            committed: None,
            actions,
            children: Vec::new(),
            visits: 0,
            reward: 0.0,
            terminal,
        })
    }

    fn reply_node(&mut self, state: GameState, committed: Direction) -> usize {
        let actions = moves_or_all(state.legal_survival_moves(self.me.other()));
        self.push(Node {
            state,
            committed: Some(committed),
            actions,
            children: Vec::new(),
            visits: 0,
            reward: 0.0,
            terminal: None,
        })
    }

    fn push(&mut self, n: Node) -> usize {
        self.nodes.push(n);
        self.nodes.len() - 1
    }

    fn untried(&self, id: usize) -> Option<Direction> {
        let n = &self.nodes[id];
        n.actions
            .iter()
            .find(|d| !n.children.iter().any(|(c, _)| c == d))
    }

    fn expand(&mut self, id: usize, action: Direction) -> usize {
        let child = match self.nodes[id].committed {
            None => {
                let state = self.nodes[id].state.clone();
                self.reply_node(state, action)
            }
            Some(mine) => {
                let mut state = self.nodes[id].state.clone();
                let moves = match self.me {
                    Side::White => [mine, action],
                    Side::Blue => [action, mine],
                };
                let step = state.config().nominal_step();
                state.advance(moves, step).expect("reply nodes hold running states");
                self.self_node(state)
            }
        };
        self.nodes[id].children.push((action, child));
        child
    }

    fn select_child(&self, id: usize) -> usize {
        let n = &self.nodes[id];
        let ln_n = f64::from(n.visits.max(1)).ln();
        let reply = n.committed.is_some();
        let mut best = (f64::NEG_INFINITY, n.children[0].1);
        for &(_, c) in &n.children {
            let child = &self.nodes[c];
            let mean = child.reward / f64::from(child.visits);
            let q = if reply { 1.0 - mean } else { mean };
            let score = q + EXPLORATION * (ln_n / f64::from(child.visits)).sqrt();
            if score > best.0 {
                best = (score, c);
            }
        }
        best.1
    }

    fn rollout(&self, mut state: GameState, rng: &mut Rng) -> f64 {
        for _ in 0..ROLLOUT_HORIZON {
            if !state.is_running() {
                break;
            }
            let moves = [Side::White, Side::Blue].map(|side| {
                let safe = state.legal_survival_moves(side);
                if safe.is_empty() {
                    state.snake(side).heading()
                } else {
                    safe.nth(rng.below(safe.len())).expect("index within set")
                }
            });
            let step = state.config().nominal_step();
            state.advance(moves, step).expect("running state");
        }
        if let Some(r) = outcome_reward(&state, self.me) {
            return r;
        }
        let v = evaluate(&state, self.me, self.weights);
        if v > S::zero() {
            1.0
        } else if v < S::zero() {
            0.0
        } else {
            0.5
        }
    }
}

/// Picks the root move with the most visits after UCT search within `budget`
/// (iterations in [`SearchBudget::Nodes`]).
pub fn mcts_decide<S: Scalar>(
    state: &GameState,
    perspective: Side,
    budget: SearchBudget,
    rng: &mut Rng,
    weights: &EvalWeights<S>,
) -> MctsResult {
    let heading = state.snake(perspective).heading();
    let survival = state.legal_survival_moves(perspective);
    let mut result = MctsResult {
        best: survival.first().unwrap_or(heading),
        iterations: 0,
        visits: [0; 4],
    };
    if survival.len() <= 1 || !state.is_running() {
        return result;
    }

    let mut tree = Tree {
        me: perspective,
        weights,
        nodes: Vec::new(),
    };
    let root = tree.self_node(state.clone());
    let mut meter = Meter::new(budget);
    let mut path = Vec::new();

    while meter.spend().is_ok() {
        path.clear();
        let mut id = root;
        path.push(id);
        let reward = loop {
            if let Some(r) = tree.nodes[id].terminal {
                break r;
            }
            if let Some(action) = tree.untried(id) {
                id = tree.expand(id, action);
                path.push(id);
                if tree.nodes[id].committed.is_some() {
                    // a reply node carries no position of its own yet
                    let reply = tree.untried(id).expect("fresh reply node has actions");
                    id = tree.expand(id, reply);
                    path.push(id);
                }
                break match tree.nodes[id].terminal {
                    Some(r) => r,
                    None => tree.rollout(tree.nodes[id].state.clone(), rng),
                };
            }
            id = tree.select_child(id);
            path.push(id);
        };
        for &n in &path {
            tree.nodes[n].visits += 1;
            tree.nodes[n].reward += reward;
        }
    }

    result.iterations = meter.used();
    let mut best: Option<(u32, Direction)> = None;
    for &(d, c) in &tree.nodes[root].children {
        let v = tree.nodes[c].visits;
        result.visits[d.index()] = v;
        if best.is_none_or(|(bv, bd)| v > bv || (v == bv && d < bd)) {
            best = Some((v, d));
        }
    }
    if let Some((_, d)) = best {
        result.best = d;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{Cell, MatchConfig};

    #[test]
    fn single_survival_move_is_forced() {
        let s = GameState::from_parts(
            MatchConfig::logical().with_board(9, 9).with_length(1),
            (vec![Cell::new(0, 0), Cell::new(1, 0), Cell::new(2, 0)], Direction::West),
            (vec![Cell::new(8, 8)], Direction::West),
            Some(Cell::new(5, 5)),
            1,
        )
        .unwrap();
        let w = EvalWeights::<f64>::default();
        let r = mcts_decide(&s, Side::White, SearchBudget::Nodes(0), &mut Rng::new(1), &w);
        assert_eq!(r.best, Direction::South);
        assert_eq!(r.iterations, 0);
    }

    #[test]
    fn same_seed_same_move() {
        let s = GameState::new_match(&MatchConfig::logical().with_board(9, 9), 3).unwrap();
        let w = EvalWeights::<f64>::default();
        let a = mcts_decide(&s, Side::Blue, SearchBudget::Nodes(300), &mut Rng::new(5), &w);
        let b = mcts_decide(&s, Side::Blue, SearchBudget::Nodes(300), &mut Rng::new(5), &w);
        assert_eq!(a, b);
        assert_eq!(a.iterations, 300);
        assert_eq!(a.visits.iter().sum::<u32>(), 300);
    }
}
