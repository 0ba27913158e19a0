//! Territory and the positional evaluation.
//!
//! The score combines three antisymmetric terms: length difference, apple
//! distance difference, and the difference in empty cells each head reaches
//! strictly first.

use crate::engine::{Cell, GameState, Side};
use crate::scalar::{clamp_heuristic, loss_at, win_at, Scalar};

use super::bfs::{body_grid, DistanceField};

/// Partition of the empty cells by which head reaches them first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Ownership {
    pub owned_self: usize,
    pub owned_opponent: usize,
    /// Equidistant or unreachable by both.
    pub contested: usize,
}

impl Ownership {
    pub fn total(&self) -> usize {
        self.owned_self + self.owned_opponent + self.contested
    }
}

/// Distance fields from both heads over cells free of either body.
pub(crate) struct Fields {
    pub grid: Vec<bool>,
    pub white: DistanceField,
    pub blue: DistanceField,
}

impl Fields {
    pub fn new(state: &GameState) -> Self {
        let grid = body_grid(state);
        let w = state.width();
        let blocked = |c: Cell| grid[(c.y * w + c.x) as usize];
        let white = DistanceField::compute(
            w,
            state.height(),
            &[state.snake(Side::White).head()],
            blocked,
        );
        let blue = DistanceField::compute(
            w,
            state.height(),
            &[state.snake(Side::Blue).head()],
            blocked,
        );
        Self { grid, white, blue }
    }

    pub fn of(&self, side: Side) -> &DistanceField {
        match side {
            Side::White => &self.white,
            Side::Blue => &self.blue,
        }
    }

    pub fn ownership(&self, perspective: Side) -> Ownership {
        let mine = self.of(perspective).raw();
        let theirs = self.of(perspective.other()).raw();
        let mut o = Ownership::default();
        for (i, &blocked) in self.grid.iter().enumerate() {
            if blocked {
                continue;
            }
            // unreachable is u32::MAX, so plain comparison does the right thing
            match mine[i].cmp(&theirs[i]) {
                std::cmp::Ordering::Less => o.owned_self += 1,
                std::cmp::Ordering::Greater => o.owned_opponent += 1,
                std::cmp::Ordering::Equal => o.contested += 1,
            }
        }
        o
    }
}

/// Empty cells closer to `perspective`'s head than to the opponent's.
pub fn voronoi_ownership(state: &GameState, perspective: Side) -> Ownership {
    Fields::new(state).ownership(perspective)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalWeights<S> {
    pub length: S,
    pub apple_distance: S,
    pub territory: S,
}

impl<S: Scalar> EvalWeights<S> {
    pub fn new(length: S, apple_distance: S, territory: S) -> Self {
        Self {
            length,
            apple_distance,
            territory,
        }
    }

    pub fn scaled(self, k: S) -> Self {
        Self::new(self.length * k, self.apple_distance * k, self.territory * k)
    }
}

impl<S: Scalar> Default for EvalWeights<S> {
    fn default() -> Self {
        Self::new(S::from_count(10), S::from_count(1), S::from_count(1))
    }
}

/// Score of a finished position `ply` steps below the search root.
pub fn terminal_value<S: Scalar>(state: &GameState, perspective: Side, ply: u32) -> Option<S> {
    let outcome = state.outcome()?;
    Some(match outcome.result.winner() {
        Some(w) if w == perspective => win_at(ply),
        Some(_) => loss_at(ply),
        None => S::zero(),
    })
}

/// Heuristic value of `state` for `perspective`; decided positions map to
/// the win/loss sentinels and draws to zero.
pub fn evaluate<S: Scalar>(state: &GameState, perspective: Side, weights: &EvalWeights<S>) -> S {
    if let Some(v) = terminal_value(state, perspective, 0) {
        return v;
    }
    let fields = Fields::new(state);
    evaluate_with(state, perspective, weights, &fields)
}

pub(crate) fn evaluate_with<S: Scalar>(
    state: &GameState,
    perspective: Side,
    weights: &EvalWeights<S>,
    fields: &Fields,
) -> S {
    let me = perspective;
    let them = perspective.other();
    let len_diff = state.snake(me).len() as i64 - state.snake(them).len() as i64;

    let apple_diff = match state.apple().position {
        Some(apple) => {
            let far = state.config().cell_count() as i64;
            let d = |side| fields.of(side).get(apple).map_or(far, i64::from);
            d(them) - d(me)
        }
        None => 0,
    };

    let own = fields.ownership(me);
    let territory_diff = own.owned_self as i64 - own.owned_opponent as i64;

    let v = weights.length * S::from_count(len_diff)
        + weights.apple_distance * S::from_count(apple_diff)
        + weights.territory * S::from_count(territory_diff);
    clamp_heuristic(v)
}
