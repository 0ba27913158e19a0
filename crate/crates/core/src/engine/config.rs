use serde::{Deserialize, Serialize};

use super::EngineError;

/// Milliseconds represented by one logical tick.
pub const TICK_MS: u64 = 100;

/// Default logical decision budget, in search nodes per move.
pub const DEFAULT_LOGICAL_NODES: u64 = 60_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClockMode {
    /// Clock, limits and TTL in real milliseconds.
    Wall,
    /// Clock, limits and TTL in ticks of [`TICK_MS`]; decision budget in search nodes.
    Logical,
}

impl std::str::FromStr for ClockMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "wall" => Ok(ClockMode::Wall),
            "logical" => Ok(ClockMode::Logical),
            other => Err(format!("unknown clock mode `{other}` (expected wall|logical)")),
        }
    }
}

/// Match parameters. All durations are in clock units of `clock`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatchConfig {
    pub width: i32,
    pub height: i32,
    pub initial_length: usize,
    pub clock: ClockMode,
    /// Match duration limit.
    pub match_limit: u64,
    /// Per-move decision budget: milliseconds (wall) or search nodes (logical).
    pub decision_budget: u64,
    /// Uneaten apple lifetime. `None` disables relocation (2020 rules).
    pub apple_ttl: Option<u64>,
    pub base_seed: u64,
}

impl MatchConfig {
    /// Real-time parameters: 3 minute match, 1 s decisions, 10 s apple lifetime.
    pub fn wall() -> Self {
        Self {
            width: 15,
            height: 15,
            initial_length: 3,
            clock: ClockMode::Wall,
            match_limit: 180_000,
            decision_budget: 1_000,
            apple_ttl: Some(10_000),
            base_seed: 0,
        }
    }

    /// Deterministic parameters with the same durations expressed in ticks.
    pub fn logical() -> Self {
        Self {
            clock: ClockMode::Logical,
            match_limit: 180_000 / TICK_MS,
            decision_budget: DEFAULT_LOGICAL_NODES,
            apple_ttl: Some(10_000 / TICK_MS),
            ..Self::wall()
        }
    }

    pub fn with_board(mut self, width: i32, height: i32) -> Self {
        self.width = width;
        self.height = height;
        self
    }

    pub fn with_length(mut self, initial_length: usize) -> Self {
        self.initial_length = initial_length;
        self
    }

    /// Clock units one step advances by when no elapsed time is supplied.
    pub fn nominal_step(&self) -> u64 {
        match self.clock {
            ClockMode::Wall => TICK_MS,
            ClockMode::Logical => 1,
        }
    }

    pub fn cell_count(&self) -> usize {
        (self.width.max(0) as usize) * (self.height.max(0) as usize)
    }

    /// Checks the limits without regard to starting placement.
    pub(crate) fn validate_limits(&self) -> Result<(), EngineError> {
        let bad = |msg: String| Err(EngineError::InvalidConfig(msg));
        if self.width < 1 || self.height < 1 {
            return bad(format!("board {}x{} is empty", self.width, self.height));
        }
        if self.initial_length == 0 {
            return bad("initial length must be at least 1".into());
        }
        if self.match_limit == 0 {
            return bad("match limit must be positive".into());
        }
        if self.decision_budget == 0 {
            return bad("decision budget must be positive".into());
        }
        if self.apple_ttl == Some(0) {
            return bad("apple TTL must be positive".into());
        }
        Ok(())
    }
}

impl Default for MatchConfig {
    fn default() -> Self {
        Self::wall()
    }
}
