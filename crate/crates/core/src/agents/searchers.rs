use crate::engine::Direction;
use crate::rng::Rng;
use crate::scalar::Scalar;
use crate::search::{iterative_deepening, mcts_decide, EvalWeights, SearchBudget};

use super::{Bot, BotView};

fn capped(view: &BotView, nodes: Option<u64>) -> SearchBudget {
    match (view.planning_budget(), nodes) {
        (SearchBudget::Nodes(n), Some(cap)) => SearchBudget::Nodes(n.min(cap)),
        (b, _) => b,
    }
}

/// Iterative-deepening alpha-beta up to `max_depth`.
pub struct SearchBot<S> {
    name: String,
    max_depth: u32,
    node_cap: Option<u64>,
    weights: EvalWeights<S>,
    last_nodes: u64,
    last_depth: u32,
}

impl<S: Scalar> SearchBot<S> {
    pub fn new(name: impl Into<String>, max_depth: u32, weights: EvalWeights<S>) -> Self {
        Self {
            name: name.into(),
            max_depth,
            node_cap: None,
            weights,
            last_nodes: 0,
            last_depth: 0,
        }
    }

    /// Caps the logical node budget below the one offered by the match.
    pub fn with_node_cap(mut self, cap: u64) -> Self {
        self.node_cap = Some(cap);
        self
    }

    /// Depth completed by the last decision.
    pub fn last_depth(&self) -> u32 {
        self.last_depth
    }
}

impl<S: Scalar> Bot for SearchBot<S> {
    fn name(&self) -> &str {
        &self.name
    }

    fn decide(&mut self, view: &BotView) -> Direction {
        let budget = capped(view, self.node_cap);
        let r = iterative_deepening(&view.state, view.me, budget, &self.weights, self.max_depth);
        self.last_nodes = r.nodes;
        self.last_depth = r.depth;
        r.best
    }

    fn last_work(&self) -> u64 {
        self.last_nodes
    }
}

pub struct MctsBot<S> {
    name: String,
    iterations: Option<u64>,
    weights: EvalWeights<S>,
    rng: Rng,
    last_iterations: u64,
}

impl<S: Scalar> MctsBot<S> {
    pub fn new(name: impl Into<String>, seed: u64, weights: EvalWeights<S>) -> Self {
        Self {
            name: name.into(),
            iterations: None,
            weights,
            rng: Rng::new(seed),
            last_iterations: 0,
        }
    }

    pub fn with_iterations(mut self, iterations: u64) -> Self {
        self.iterations = Some(iterations);
        self
    }
}

impl<S: Scalar> Bot for MctsBot<S> {
    fn name(&self) -> &str {
        &self.name
    }

    fn decide(&mut self, view: &BotView) -> Direction {
        let budget = capped(view, self.iterations);
        let r = mcts_decide(&view.state, view.me, budget, &mut self.rng, &self.weights);
        self.last_iterations = r.iterations;
        r.best
    }

    fn last_work(&self) -> u64 {
        self.last_iterations
    }
}
