//! The bot interface and the built-in agents.

mod basic;
mod registry;
mod searchers;
mod stall;

use std::time::Duration;

use crate::engine::{Direction, GameState, Side};
use crate::search::SearchBudget;

pub use basic::{GreedyBfs, RandomSafe};
pub use registry::{make_agent, AgentError, AgentKind, AgentSpec, REGISTRY};
pub use searchers::{MctsBot, SearchBot};
pub use stall::{find_orbit, Orbit, StallGuard};

/// What a bot sees when asked for a move: a private copy of the position,
/// which snake it controls, and its decision budget.
#[derive(Clone, Debug)]
pub struct BotView {
    pub state: GameState,
    pub me: Side,
    pub budget: SearchBudget,
}

impl BotView {
    pub fn new(state: GameState, me: Side, budget: SearchBudget) -> Self {
        Self { state, me, budget }
    }

    /// Budget an agent should plan with: time budgets keep a margin for
    /// scheduling and message passing.
    pub fn planning_budget(&self) -> SearchBudget {
        match self.budget {
            SearchBudget::Nodes(n) => SearchBudget::Nodes(n),
            SearchBudget::Time(d) => SearchBudget::Time(d.mul_f64(0.7).max(Duration::from_millis(1))),
        }
    }
}

pub trait Bot: Send {
    fn name(&self) -> &str;

    /// Chooses a direction. Must return for every position.
    fn decide(&mut self, view: &BotView) -> Direction;

    /// Work units (search nodes or MCTS iterations) spent by the last `decide`.
    fn last_work(&self) -> u64 {
        0
    }
}

impl Bot for Box<dyn Bot> {
    fn name(&self) -> &str {
        (**self).name()
    }

    fn decide(&mut self, view: &BotView) -> Direction {
        (**self).decide(view)
    }

    fn last_work(&self) -> u64 {
        (**self).last_work()
    }
}

/// Uniform choice among survival moves, falling back to the heading.
pub fn random_safe_decide(view: &BotView, rng: &mut crate::rng::Rng) -> Direction {
    let safe = view.state.legal_survival_moves(view.me);
    if safe.is_empty() {
        return view.state.snake(view.me).heading();
    }
    safe.nth(rng.below(safe.len())).expect("index within set")
}
