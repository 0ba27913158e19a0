//! Round-robin tournaments: scheduling, match execution and standings.

mod runner;
mod standings;

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::agents::{make_agent, AgentSpec, Bot};
use crate::engine::{EngineError, GameState, MatchConfig, MatchOutcome};
use crate::replay::{write_replay, ReplayError};
use crate::rng::splitmix64;

pub use runner::{run_match, run_match_traced, MatchReport};
pub use standings::{rank, write_standings_csv, Record, Standings};

#[derive(Debug, Error)]
pub enum TournamentError {
    #[error("a tournament needs at least two participants, got {0}")]
    TooFewParticipants(usize),
    #[error("participant `{0}` appears more than once")]
    DuplicateParticipant(String),
    #[error("repeats must be at least 1")]
    ZeroRepeats,
    #[error("parallelism must be at least 1")]
    ZeroParallel,
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Replay(#[from] ReplayError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// One scheduled game between `a` and `b`. `a` plays white on even repeats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    pub a: String,
    pub b: String,
    pub repeat: u32,
    pub seed: u64,
}

impl Pairing {
    pub fn white(&self) -> &str {
        if self.repeat.is_multiple_of(2) {
            &self.a
        } else {
            &self.b
        }
    }

    pub fn blue(&self) -> &str {
        if self.repeat.is_multiple_of(2) {
            &self.b
        } else {
            &self.a
        }
    }

    /// `<white>_vs_<blue>_r<k>.jsonl`, names reduced to filename-safe characters.
    pub fn replay_file_name(&self) -> String {
        format!(
            "{}_vs_{}_r{}.jsonl",
            sanitize(self.white()),
            sanitize(self.blue()),
            self.repeat
        )
    }
}

fn sanitize(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '.' { c } else { '-' })
        .collect()
}

fn fnv1a(bytes: &[u8], mut h: u64) -> u64 {
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Seed for one game; depends only on the base seed, the unordered pair and
/// the repeat, so adding participants leaves other games untouched.
pub fn pairing_seed(base_seed: u64, a: &str, b: &str, repeat: u32) -> u64 {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let mut h = fnv1a(&base_seed.to_le_bytes(), 0xcbf2_9ce4_8422_2325);
    h = fnv1a(lo.as_bytes(), h);
    h = fnv1a(&[0xff], h);
    h = fnv1a(hi.as_bytes(), h);
    h = fnv1a(&[0xff], h);
    h = fnv1a(&repeat.to_le_bytes(), h);
    splitmix64(h)
}

/// Every unordered pair `repeats` times, grouped by repeat.
pub fn schedule_round_robin<S: AsRef<str>>(
    participants: &[S],
    repeats: u32,
    base_seed: u64,
) -> Result<Vec<Pairing>, TournamentError> {
    let names: Vec<&str> = participants.iter().map(|p| p.as_ref()).collect();
    if names.len() < 2 {
        return Err(TournamentError::TooFewParticipants(names.len()));
    }
    if repeats == 0 {
        return Err(TournamentError::ZeroRepeats);
    }
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(TournamentError::DuplicateParticipant(n.to_string()));
        }
    }
    let mut out = Vec::with_capacity(names.len() * (names.len() - 1) / 2 * repeats as usize);
    for repeat in 0..repeats {
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                out.push(Pairing {
                    a: names[i].to_string(),
                    b: names[j].to_string(),
                    repeat,
                    seed: pairing_seed(base_seed, names[i], names[j], repeat),
                });
            }
        }
    }
    Ok(out)
}

/// Builds a fresh bot for a game, given the name it plays under and a seed.
pub type BotFactory = Arc<dyn Fn(&str, u64) -> Box<dyn Bot> + Send + Sync>;

#[derive(Clone)]
pub struct Entrant {
    pub name: String,
    pub factory: BotFactory,
}

impl Entrant {
    pub fn new(name: impl Into<String>, factory: impl Fn(&str, u64) -> Box<dyn Bot> + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            factory: Arc::new(factory),
        }
    }

    /// An entrant built from a registry spec.
    pub fn from_spec(name: impl Into<String>, spec: AgentSpec) -> Self {
        Self::new(name, move |n, seed| make_agent(&spec, n, seed).expect("spec validated at parse time"))
    }
}

impl std::fmt::Debug for Entrant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Entrant").field("name", &self.name).finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TournamentOptions {
    pub repeats: u32,
    /// Concurrent matches.
    pub parallel: usize,
    /// Directory for `standings.csv` and the replay files.
    pub out_dir: Option<PathBuf>,
}

impl Default for TournamentOptions {
    fn default() -> Self {
        Self {
            repeats: 3,
            parallel: 1,
            out_dir: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PlayedMatch {
    pub pairing: Pairing,
    pub outcome: MatchOutcome,
    pub replay_path: Option<PathBuf>,
}

#[derive(Clone, Debug)]
pub struct TournamentReport {
    pub standings: Standings,
    pub matches: Vec<PlayedMatch>,
}

pub const STANDINGS_FILE: &str = "standings.csv";

fn bot_seed(game_seed: u64, side: u64) -> u64 {
    splitmix64(game_seed ^ (0x9e37_79b9_7f4a_7c15u64.wrapping_mul(side + 1)))
}

fn play(
    pairing: &Pairing,
    entrants: &[Entrant],
    config: &MatchConfig,
    out_dir: Option<&Path>,
) -> Result<PlayedMatch, TournamentError> {
    let find = |n: &str| entrants.iter().find(|e| e.name == n).expect("scheduled from entrants");
    let (w, b) = (find(pairing.white()), find(pairing.blue()));
    let white = (w.factory)(&w.name, bot_seed(pairing.seed, 0));
    let blue = (b.factory)(&b.name, bot_seed(pairing.seed, 1));
    let report = run_match(white, blue, config, pairing.seed)?;
    let replay_path = match out_dir {
        Some(dir) => {
            let path = dir.join(pairing.replay_file_name());
            let file = fs::File::create(&path)?;
            write_replay(&report.replay, std::io::BufWriter::new(file))?;
            Some(path)
        }
        None => None,
    };
    Ok(PlayedMatch {
        pairing: pairing.clone(),
        outcome: report.outcome,
        replay_path,
    })
}

/// Plays the whole schedule, up to `parallel` matches at once. Results are
/// collected in schedule order, so output does not depend on parallelism.
pub fn run_tournament(
    entrants: &[Entrant],
    config: &MatchConfig,
    options: &TournamentOptions,
) -> Result<TournamentReport, TournamentError> {
    if options.parallel == 0 {
        return Err(TournamentError::ZeroParallel);
    }
    let names: Vec<&str> = entrants.iter().map(|e| e.name.as_str()).collect();
    let schedule = schedule_round_robin(&names, options.repeats, config.base_seed)?;
    GameState::new_match(config, 0)?;
    let out_dir = options.out_dir.as_deref();
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir)?;
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.parallel)
        .build()
        .map_err(std::io::Error::other)?;
    let matches: Vec<PlayedMatch> = pool.install(|| {
        schedule
            .par_iter()
            .map(|p| play(p, entrants, config, out_dir))
            .collect::<Result<_, _>>()
    })?;

    let mut standings = Standings::new(&names);
    for m in &matches {
        standings.record(m.pairing.white(), m.pairing.blue(), &m.outcome);
    }
    if let Some(dir) = out_dir {
        let file = fs::File::create(dir.join(STANDINGS_FILE))?;
        write_standings_csv(&standings, file)?;
    }
    Ok(TournamentReport { standings, matches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashMap, HashSet};

    #[test]
    fn schedule_sizes_and_seeds() {
        let names: Vec<String> = (0..12).map(|i| format!("p{i}")).collect();
        let s = schedule_round_robin(&names, 30, 9).unwrap();
        assert_eq!(s.len(), 1980);
        let seeds: HashSet<u64> = s.iter().map(|p| p.seed).collect();
        assert_eq!(seeds.len(), s.len());
        let mut counts: HashMap<(String, String), u32> = HashMap::new();
        for p in &s {
            *counts.entry((p.a.clone(), p.b.clone())).or_default() += 1;
        }
        assert!(counts.values().all(|&c| c == 30));
        assert_eq!(schedule_round_robin(&["x", "y"], 1, 0).unwrap().len(), 1);
        assert_eq!(schedule_round_robin(&names[..7], 3, 0).unwrap().len(), 63);
    }

    #[test]
    fn schedule_rejections() {
        assert!(matches!(schedule_round_robin(&["a", "b", "a"], 1, 0), Err(TournamentError::DuplicateParticipant(n)) if n == "a"));
        assert!(matches!(schedule_round_robin(&["a", "b"], 0, 0), Err(TournamentError::ZeroRepeats)));
        assert!(matches!(schedule_round_robin(&["a"], 1, 0), Err(TournamentError::TooFewParticipants(1))));
    }

    #[test]
    fn seeds_ignore_other_participants() {
        let small = schedule_round_robin(&["a", "b"], 2, 5).unwrap();
        let big = schedule_round_robin(&["c", "b", "a"], 2, 5).unwrap();
        for p in &small {
            assert!(big.iter().any(|q| q.seed == p.seed && q.repeat == p.repeat));
        }
        assert_eq!(pairing_seed(5, "a", "b", 1), pairing_seed(5, "b", "a", 1));
    }

    #[test]
    fn colours_alternate_and_names_are_safe() {
        let s = schedule_round_robin(&["alphabeta:depth=6", "greedy"], 2, 0).unwrap();
        assert_eq!(s[0].white(), "alphabeta:depth=6");
        assert_eq!(s[1].white(), "greedy");
        assert_eq!(s[0].replay_file_name(), "alphabeta-depth-6_vs_greedy_r0.jsonl");
    }
}
