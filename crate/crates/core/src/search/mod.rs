//! Search and pathfinding: BFS distance fields, territory, the evaluation
//! function, minimax / alpha-beta / iterative deepening, A* and MCTS.

mod astar;
mod bfs;
mod budget;
mod eval;
mod mcts;
mod tree;

pub use astar::{astar_on_grid, astar_path};
pub use bfs::{bfs_distances, body_grid, flood_count, DistanceField};
pub use budget::{BudgetExhausted, Meter, SearchBudget};
pub use eval::{evaluate, terminal_value, voronoi_ownership, EvalWeights, Ownership};
pub use mcts::{mcts_decide, MctsResult, ROLLOUT_HORIZON};
pub use tree::{
    alphabeta, iterative_deepening, minimax_report, minimax_value, Deepening, MinimaxReport,
    SearchResult,
};
