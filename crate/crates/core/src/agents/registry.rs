//! Agent specs of the form `name[:key=value,...]`, e.g. `alphabeta:depth=6`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::Score;
use crate::search::EvalWeights;

use super::{Bot, GreedyBfs, MctsBot, RandomSafe, SearchBot, StallGuard};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AgentKind {
    RandomSafe,
    GreedyBfs,
    Ids,
    AlphaBeta,
    Mcts,
}

/// `(name, aliases, kind, accepted options)`.
pub const REGISTRY: &[(&str, &[&str], AgentKind, &str)] = &[
    ("randomsafe", &["random"], AgentKind::RandomSafe, "stall"),
    ("greedy", &["greedybfs"], AgentKind::GreedyBfs, "stall"),
    ("ids", &[], AgentKind::Ids, "depth, nodes, stall, wl, wa, wt"),
    ("alphabeta", &["ab"], AgentKind::AlphaBeta, "depth, nodes, stall, wl, wa, wt"),
    ("mcts", &[], AgentKind::Mcts, "iters, stall, wl, wa, wt"),
];

fn registry_listing() -> String {
    REGISTRY
        .iter()
        .map(|(name, _, _, opts)| format!("  {name} [{opts}]"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AgentError {
    #[error("unknown agent '{0}'; available agents:\n{listing}", listing = registry_listing())]
    UnknownKind(String),
    #[error("bad option '{option}' for agent '{agent}': {reason}")]
    BadOption {
        agent: String,
        option: String,
        reason: String,
    },
}

impl AgentKind {
    pub fn name(self) -> &'static str {
        REGISTRY
            .iter()
            .find(|r| r.2 == self)
            .map(|r| r.0)
            .expect("every kind is registered")
    }

    fn accepts(self, key: &str) -> bool {
        let opts = REGISTRY.iter().find(|r| r.2 == self).map_or("", |r| r.3);
        opts.split(", ").any(|o| o == key)
    }
}

impl FromStr for AgentKind {
    type Err = AgentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        REGISTRY
            .iter()
            .find(|(name, aliases, _, _)| *name == lower || aliases.contains(&lower.as_str()))
            .map(|r| r.2)
            .ok_or_else(|| AgentError::UnknownKind(s.to_string()))
    }
}

/// A parsed agent spec. `Display` gives back the canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgentSpec {
    pub kind: AgentKind,
    pub options: Vec<(String, String)>,
}

impl AgentSpec {
    fn get(&self, key: &str) -> Option<&str> {
        self.options.iter().rev().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    fn bad(&self, option: &str, reason: impl Into<String>) -> AgentError {
        AgentError::BadOption {
            agent: self.kind.name().to_string(),
            option: option.to_string(),
            reason: reason.into(),
        }
    }

    fn parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>, AgentError> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| self.bad(key, format!("cannot parse '{v}'"))),
        }
    }

    fn positive(&self, key: &str) -> Result<Option<u64>, AgentError> {
        match self.parsed::<u64>(key)? {
            Some(0) => Err(self.bad(key, "must be positive")),
            v => Ok(v),
        }
    }

    fn weights(&self) -> Result<EvalWeights<Score>, AgentError> {
        let d = EvalWeights::<Score>::default();
        Ok(EvalWeights::new(
            self.parsed("wl")?.unwrap_or(d.length),
            self.parsed("wa")?.unwrap_or(d.apple_distance),
            self.parsed("wt")?.unwrap_or(d.territory),
        ))
    }

    /// Stalling defaults on for the iterative-deepening agent only.
    fn stall(&self) -> Result<bool, AgentError> {
        Ok(self.parsed("stall")?.unwrap_or(self.kind == AgentKind::Ids))
    }
}

impl FromStr for AgentSpec {
    type Err = AgentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let kind: AgentKind = name.trim().parse()?;
        let mut spec = AgentSpec {
            kind,
            options: Vec::new(),
        };
        for item in rest.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            let Some((k, v)) = item.split_once('=') else {
                return Err(spec.bad(item, "expected key=value"));
            };
            let k = k.trim().to_ascii_lowercase();
            if !kind.accepts(&k) {
                return Err(spec.bad(&k, "not accepted by this agent"));
            }
            spec.options.push((k, v.trim().to_string()));
        }
        // validate eagerly so a bad spec fails at parse time
        spec.weights()?;
        spec.stall()?;
        spec.positive("depth")?;
        spec.positive("nodes")?;
        spec.positive("iters")?;
        Ok(spec)
    }
}

impl fmt::Display for AgentSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.name())?;
        for (i, (k, v)) in self.options.iter().enumerate() {
            write!(f, "{}{k}={v}", if i == 0 { ':' } else { ',' })?;
        }
        Ok(())
    }
}

/// Builds a fresh bot for `spec`. `seed` feeds the randomized agents.
pub fn make_agent(spec: &AgentSpec, name: &str, seed: u64) -> Result<Box<dyn Bot>, AgentError> {
    let weights = spec.weights()?;
    let bot: Box<dyn Bot> = match spec.kind {
        AgentKind::RandomSafe => Box::new(RandomSafe::new(name, seed)),
        AgentKind::GreedyBfs => Box::new(GreedyBfs::new(name)),
        AgentKind::Ids | AgentKind::AlphaBeta => {
            let default_depth = if spec.kind == AgentKind::Ids { 64 } else { 4 };
            let depth = spec.positive("depth")?.unwrap_or(default_depth);
            let mut bot = SearchBot::new(name, depth.min(u32::MAX as u64) as u32, weights);
            if let Some(n) = spec.positive("nodes")? {
                bot = bot.with_node_cap(n);
            }
            Box::new(bot)
        }
        AgentKind::Mcts => {
            let mut bot = MctsBot::new(name, seed, weights);
            if let Some(n) = spec.positive("iters")? {
                bot = bot.with_iterations(n);
            }
            Box::new(bot)
        }
    };
    Ok(if spec.stall()? {
        Box::new(StallGuard::new(name, bot))
    } else {
        bot
    })
}
