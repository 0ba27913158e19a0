//! Apple encirclement: when ahead on apples, circle next to (or around) the
//! apple instead of eating it, so the lead holds until the time limit.

use std::collections::VecDeque;

use crate::engine::{Cell, Direction, GameState, Side};

use super::{Bot, BotView};

/// A closed cycle the snake can follow forever, and the next step along it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub cells: Vec<Cell>,
    pub next: Direction,
}

/// Perimeter of the `w`x`h` rectangle at `(x0, y0)`, clockwise.
fn ring(x0: i32, y0: i32, w: i32, h: i32) -> Vec<Cell> {
    let mut cells = Vec::new();
    for x in x0..x0 + w {
        cells.push(Cell::new(x, y0));
    }
    for y in y0 + 1..y0 + h {
        cells.push(Cell::new(x0 + w - 1, y));
    }
    for x in (x0..x0 + w - 1).rev() {
        cells.push(Cell::new(x, y0 + h - 1));
    }
    for y in (y0 + 1..y0 + h - 1).rev() {
        cells.push(Cell::new(x0, y));
    }
    cells
}

/// Follows `cycle` for one full lap from the head, opponent frozen.
fn lap_survives(state: &GameState, me: Side, cycle: &[Cell], start: usize, forward: bool) -> bool {
    let opponent = state.snake(me.other());
    let mut body: VecDeque<Cell> = state.snake(me).body().clone();
    let k = cycle.len();
    let mut at = start;
    for _ in 0..k {
        at = if forward { (at + 1) % k } else { (at + k - 1) % k };
        let next = cycle[at];
        let hits_self = body.iter().take(body.len() - 1).any(|&c| c == next);
        if hits_self || (opponent.is_alive() && opponent.contains(next)) {
            return false;
        }
        body.push_front(next);
        body.pop_back();
    }
    true
}

/// Smallest survivable cycle through the head that touches or encloses the
/// apple without containing it.
pub fn find_orbit(state: &GameState, me: Side) -> Option<Orbit> {
    let apple = state.apple().position?;
    let snake = state.snake(me);
    let head = snake.head();
    let neck = snake.body().get(1).copied();

    let mut candidates: Vec<(usize, i32, i32, Vec<Cell>)> = Vec::new();
    for (w, h) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        for y0 in head.y - h + 1..=head.y {
            for x0 in head.x - w + 1..=head.x {
                let cells = ring(x0, y0, w, h);
                if cells.len() < 4 || cells.len() < snake.len() {
                    continue;
                }
                if !cells.iter().all(|&c| state.on_board(c)) || cells.contains(&apple) {
                    continue;
                }
                if !cells.contains(&head) {
                    continue;
                }
                let touches = cells.iter().any(|c| c.manhattan(apple) == 1);
                let encloses = w == 3 && h == 3 && apple == Cell::new(x0 + 1, y0 + 1);
                if touches || encloses {
                    candidates.push((cells.len(), y0, x0, cells));
                }
            }
        }
    }
    candidates.sort_by_key(|a| (a.0, a.1, a.2));

    for (_, _, _, cells) in candidates {
        let k = cells.len();
        let i = cells.iter().position(|&c| c == head).expect("head on cycle");
        // continue in the direction the body already runs, if it lies on the cycle
        let forward_first = neck != Some(cells[(i + 1) % k]);
        for forward in [forward_first, !forward_first] {
            if lap_survives(state, me, &cells, i, forward) {
                let next_cell = if forward { cells[(i + 1) % k] } else { cells[(i + k - 1) % k] };
                let next = head.direction_to(next_cell).expect("cycle cells are adjacent");
                return Some(Orbit { cells, next });
            }
        }
    }
    None
}

/// Wraps another bot; orbits the apple while strictly ahead on score.
pub struct StallGuard<B> {
    name: String,
    inner: B,
    orbiting: bool,
}

impl<B: Bot> StallGuard<B> {
    pub fn new(name: impl Into<String>, inner: B) -> Self {
        Self {
            name: name.into(),
            inner,
            orbiting: false,
        }
    }

    /// Whether the last decision came from the orbit rather than the wrapped bot.
    pub fn is_orbiting(&self) -> bool {
        self.orbiting
    }
}

pub fn stall_guard_decide(view: &BotView) -> Option<Direction> {
    let s = &view.state;
    if s.score(view.me) <= s.score(view.me.other()) {
        return None;
    }
    find_orbit(s, view.me).map(|o| o.next)
}

impl<B: Bot> Bot for StallGuard<B> {
    fn name(&self) -> &str {
        &self.name
    }

    fn decide(&mut self, view: &BotView) -> Direction {
        match stall_guard_decide(view) {
            Some(d) => {
                self.orbiting = true;
                d
            }
            None => {
                self.orbiting = false;
                self.inner.decide(view)
            }
        }
    }

    fn last_work(&self) -> u64 {
        if self.orbiting {
            0
        } else {
            self.inner.last_work()
        }
    }
}
