//! Game rules: state, simultaneous transition, terminal detection and the
//! apple lifecycle. Everything here is a pure function of its inputs.

mod config;
mod geom;
mod rules;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rng::Rng;

pub use config::{ClockMode, MatchConfig, DEFAULT_LOGICAL_NODES, TICK_MS};
pub use geom::{Cell, DirSet, Direction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("no unoccupied cell for the apple")]
    BoardFull,
    #[error("match is already finished")]
    NotRunning,
}

/// Which snake. White is index 0, blue index 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    White,
    Blue,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::White, Side::Blue];

    pub const fn index(self) -> usize {
        self as usize
    }

    pub const fn other(self) -> Side {
        match self {
            Side::White => Side::Blue,
            Side::Blue => Side::White,
        }
    }

    pub fn from_index(i: usize) -> Side {
        match i {
            0 => Side::White,
            1 => Side::Blue,
            _ => panic!("side index {i} out of range"),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::White => "white",
            Side::Blue => "blue",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Snake {
    body: VecDeque<Cell>,
    heading: Direction,
    alive: bool,
}

impl Snake {
    pub fn head(&self) -> Cell {
        self.body[0]
    }

    pub fn tail(&self) -> Cell {
        *self.body.back().expect("snake body is never empty")
    }

    pub fn body(&self) -> &VecDeque<Cell> {
        &self.body
    }

    pub fn len(&self) -> usize {
        self.body.len()
    }

    pub fn is_empty(&self) -> bool {
        self.body.is_empty()
    }

    pub fn heading(&self) -> Direction {
        self.heading
    }

    pub fn is_alive(&self) -> bool {
        self.alive
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.body.contains(&cell)
    }

    /// Whether `cell` is occupied after this snake moves, given whether it grows.
    pub(crate) fn occupies_after_move(&self, cell: Cell, grows: bool) -> bool {
        let keep = if grows { self.body.len() } else { self.body.len() - 1 };
        self.body.iter().take(keep).any(|&c| c == cell)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AppleState {
    pub position: Option<Cell>,
    /// Clock units since the apple spawned.
    pub age: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchResult {
    White,
    Blue,
    Draw,
}

impl MatchResult {
    pub fn winner(self) -> Option<Side> {
        match self {
            MatchResult::White => Some(Side::White),
            MatchResult::Blue => Some(Side::Blue),
            MatchResult::Draw => None,
        }
    }

    pub fn won_by(side: Side) -> Self {
        match side {
            Side::White => MatchResult::White,
            Side::Blue => MatchResult::Blue,
        }
    }

    /// Same result with the two sides exchanged.
    pub fn swapped(self) -> Self {
        match self {
            MatchResult::White => MatchResult::Blue,
            MatchResult::Blue => MatchResult::White,
            MatchResult::Draw => MatchResult::Draw,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cause {
    OffBoard,
    SelfCollision,
    OpponentCollision,
    HeadToHead,
    /// A bot exceeded its decision budget.
    Timeout,
    TimeLimit,
    SimultaneousLoss,
    /// A bot crashed while deciding.
    Crash,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatchOutcome {
    pub result: MatchResult,
    pub cause: Cause,
    pub final_scores: [u32; 2],
}

impl fmt::Display for MatchOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let res = match self.result {
            MatchResult::White => "white wins",
            MatchResult::Blue => "blue wins",
            MatchResult::Draw => "draw",
        };
        let cause = serde_json::to_value(self.cause)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default();
        write!(
            f,
            "{res} ({cause}) score {}-{}",
            self.final_scores[0], self.final_scores[1]
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    Running,
    Finished(MatchOutcome),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GameState {
    config: MatchConfig,
    snakes: [Snake; 2],
    apple: AppleState,
    scores: [u32; 2],
    clock: u64,
    rng: Rng,
    phase: Phase,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepOutcome {
    pub next: GameState,
    pub terminal: Option<MatchOutcome>,
}

impl GameState {
    pub fn config(&self) -> &MatchConfig {
        &self.config
    }

    pub fn width(&self) -> i32 {
        self.config.width
    }

    pub fn height(&self) -> i32 {
        self.config.height
    }

    pub fn snake(&self, side: Side) -> &Snake {
        &self.snakes[side.index()]
    }

    pub fn snakes(&self) -> &[Snake; 2] {
        &self.snakes
    }

    pub fn apple(&self) -> AppleState {
        self.apple
    }

    pub fn scores(&self) -> [u32; 2] {
        self.scores
    }

    pub fn score(&self, side: Side) -> u32 {
        self.scores[side.index()]
    }

    pub fn clock(&self) -> u64 {
        self.clock
    }

    pub fn rng(&self) -> Rng {
        self.rng
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn is_running(&self) -> bool {
        self.phase == Phase::Running
    }

    pub fn outcome(&self) -> Option<MatchOutcome> {
        match self.phase {
            Phase::Running => None,
            Phase::Finished(o) => Some(o),
        }
    }

    pub fn on_board(&self, cell: Cell) -> bool {
        cell.on_board(self.config.width, self.config.height)
    }

    /// Whether any snake body (alive or not) covers `cell`.
    pub fn occupied(&self, cell: Cell) -> bool {
        self.snakes.iter().any(|s| s.contains(cell))
    }

    /// Row-major cell index, for on-board cells.
    #[inline]
    pub fn index_of(&self, cell: Cell) -> usize {
        (cell.y * self.config.width + cell.x) as usize
    }

    pub fn cell_at(&self, index: usize) -> Cell {
        let w = self.config.width as usize;
        Cell::new((index % w) as i32, (index / w) as i32)
    }

    /// Builds an arbitrary running position, mainly for fixtures and analysis.
    ///
    /// Bodies are head first. Scores are derived from lengths, so each body
    /// must be at least `config.initial_length` long. The board may be smaller
    /// than [`GameState::new_match`] accepts.
    pub fn from_parts(
        config: MatchConfig,
        white: (Vec<Cell>, Direction),
        blue: (Vec<Cell>, Direction),
        apple: Option<Cell>,
        seed: u64,
    ) -> Result<Self, EngineError> {
        config.validate_limits()?;
        let snakes = [white, blue].map(|(body, heading)| Snake {
            body: body.into_iter().collect(),
            heading,
            alive: true,
        });
        let mut scores = [0u32; 2];
        for side in Side::BOTH {
            let len = snakes[side.index()].len();
            if len < config.initial_length {
                return Err(EngineError::InvalidState(format!(
                    "{side} snake length {len} is below the initial length {}",
                    config.initial_length
                )));
            }
            scores[side.index()] = (len - config.initial_length) as u32;
        }
        let state = GameState {
            config,
            snakes,
            apple: AppleState { position: apple, age: 0 },
            scores,
            clock: 0,
            rng: Rng::new(seed),
            phase: Phase::Running,
        };
        state.check_invariants().map_err(EngineError::InvalidState)?;
        Ok(state)
    }

    pub fn with_apple_age(mut self, age: u64) -> Self {
        self.apple.age = age;
        self
    }

    pub fn with_clock(mut self, clock: u64) -> Self {
        self.clock = clock;
        self
    }

    /// The same position with white and blue exchanged.
    pub fn swap_sides(&self) -> Self {
        let mut s = self.clone();
        s.snakes.swap(0, 1);
        s.scores.swap(0, 1);
        if let Phase::Finished(mut o) = s.phase {
            o.result = o.result.swapped();
            o.final_scores.swap(0, 1);
            s.phase = Phase::Finished(o);
        }
        s
    }

    /// The position rotated 180 degrees about the board center, sides exchanged.
    pub fn rotate_half_turn(&self) -> Self {
        let (w, h) = (self.config.width, self.config.height);
        let rot = |c: Cell| Cell::new(w - 1 - c.x, h - 1 - c.y);
        let mut s = self.swap_sides();
        for snake in &mut s.snakes {
            for c in snake.body.iter_mut() {
                *c = rot(*c);
            }
            snake.heading = snake.heading.opposite();
        }
        s.apple.position = s.apple.position.map(rot);
        s
    }

    /// Validates the structural invariants of a running position.
    pub fn check_invariants(&self) -> Result<(), String> {
        let (w, h) = (self.config.width, self.config.height);
        let mut seen = std::collections::HashSet::new();
        for side in Side::BOTH {
            let snake = self.snake(side);
            if !snake.alive {
                continue;
            }
            if snake.body.is_empty() {
                return Err(format!("{side} snake is alive with an empty body"));
            }
            for (i, &c) in snake.body.iter().enumerate() {
                if !c.on_board(w, h) {
                    return Err(format!("{side} body cell {c} is off the board"));
                }
                if !seen.insert(c) {
                    return Err(format!("cell {c} is occupied twice"));
                }
                if i > 0 && snake.body[i - 1].manhattan(c) != 1 {
                    return Err(format!("{side} body is not contiguous at {c}"));
                }
            }
            let expected = snake.len() as i64 - self.config.initial_length as i64;
            if expected != self.scores[side.index()] as i64 {
                return Err(format!(
                    "{side} score {} does not match length {}",
                    self.scores[side.index()],
                    snake.len()
                ));
            }
        }
        if let Some(a) = self.apple.position {
            if !a.on_board(w, h) {
                return Err(format!("apple {a} is off the board"));
            }
            if seen.contains(&a) {
                return Err(format!("apple {a} lies inside a snake"));
            }
            if let Some(ttl) = self.config.apple_ttl {
                if self.apple.age >= ttl {
                    return Err(format!("apple age {} reached TTL {ttl}", self.apple.age));
                }
            }
        }
        if self.clock > self.config.match_limit {
            return Err(format!("clock {} beyond limit", self.clock));
        }
        Ok(())
    }

    /// ASCII picture of the board: `W`/`B` heads, `w`/`b` bodies, `@` apple.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for y in 0..self.config.height {
            for x in 0..self.config.width {
                let c = Cell::new(x, y);
                let ch = if self.snakes[0].body.front() == Some(&c) {
                    'W'
                } else if self.snakes[1].body.front() == Some(&c) {
                    'B'
                } else if self.snakes[0].contains(c) {
                    'w'
                } else if self.snakes[1].contains(c) {
                    'b'
                } else if self.apple.position == Some(c) {
                    '@'
                } else {
                    '.'
                };
                out.push(ch);
            }
            out.push('\n');
        }
        out
    }
}
