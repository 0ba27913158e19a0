//! Line-delimited JSON match logs: one header, one tick per step, one
//! terminal record. Keys are written in declaration order and there are no
//! floating-point fields, so equal matches give equal bytes.
//!
//! Each tick stores, besides the two moves, the heads the moves aim at and
//! the clock after the step. The heads make every move edit detectable even
//! when the edited move loses the same way; the clock lets wall-clock matches
//! be re-simulated with their measured step durations.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{Cause, Cell, ClockMode, Direction, GameState, MatchConfig, MatchOutcome, MatchResult, Side};
use crate::rng::RNG_ALGORITHM;

pub const REPLAY_VERSION: &str = "snakes-replay/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ReplayRecord {
    Header {
        version: String,
        rng: String,
        seed: u64,
        white: String,
        blue: String,
        config: MatchConfig,
    },
    Tick {
        tick: u64,
        white: Direction,
        blue: Direction,
        heads: [Cell; 2],
        apple: Option<Cell>,
        scores: [u32; 2],
        clock: u64,
    },
    Terminal {
        ticks: u64,
        result: MatchResult,
        cause: Cause,
        scores: [u32; 2],
    },
}

impl ReplayRecord {
    pub fn header(config: &MatchConfig, seed: u64, white: &str, blue: &str) -> Self {
        ReplayRecord::Header {
            version: REPLAY_VERSION.to_string(),
            rng: RNG_ALGORITHM.to_string(),
            seed,
            white: white.to_string(),
            blue: blue.to_string(),
            config: *config,
        }
    }

    /// Tick record for the step from `before` to `after`.
    pub fn tick(index: u64, before: &GameState, moves: [Direction; 2], after: &GameState) -> Self {
        let heads = Side::BOTH.map(|s| before.snake(s).head().step(moves[s.index()]));
        ReplayRecord::Tick {
            tick: index,
            white: moves[0],
            blue: moves[1],
            heads,
            apple: after.apple().position,
            scores: after.scores(),
            clock: after.clock(),
        }
    }

    pub fn terminal(ticks: u64, outcome: &MatchOutcome) -> Self {
        ReplayRecord::Terminal {
            ticks,
            result: outcome.result,
            cause: outcome.cause,
            scores: outcome.final_scores,
        }
    }
}

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error("replay invariant violated: {0}")]
    InvariantViolation(String),
    #[error("parse error at line {line}: {message}")]
    ParseError { line: usize, message: String },
    #[error("unsupported replay version `{0}` (expected {REPLAY_VERSION})")]
    VersionMismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// Index of the first tick whose logged data disagrees with re-simulation.
    Diverges(u64),
}

/// Structural problems as `(record index, message)`.
fn structure(records: &[ReplayRecord]) -> Result<(), (usize, String)> {
    match records.first() {
        Some(ReplayRecord::Header { .. }) => {}
        _ => return Err((0, "first record must be a header".into())),
    }
    let mut expected = 0u64;
    for (i, r) in records.iter().enumerate().skip(1) {
        match r {
            ReplayRecord::Header { .. } => return Err((i, "duplicate header".into())),
            ReplayRecord::Tick { tick, .. } => {
                if *tick != expected {
                    return Err((i, format!("tick {tick} out of order, expected {expected}")));
                }
                expected += 1;
            }
            ReplayRecord::Terminal { ticks, .. } => {
                if i + 1 != records.len() {
                    return Err((i, "terminal record before end of log".into()));
                }
                if *ticks != expected {
                    return Err((i, format!("terminal counts {ticks} ticks, log has {expected}")));
                }
                return Ok(());
            }
        }
    }
    Err((records.len(), "missing terminal record".into()))
}

/// Writes one JSON object per line.
pub fn write_replay<W: Write>(records: &[ReplayRecord], mut out: W) -> Result<(), ReplayError> {
    structure(records).map_err(|(i, m)| ReplayError::InvariantViolation(format!("record {i}: {m}")))?;
    for r in records {
        serde_json::to_writer(&mut out, r).map_err(|e| ReplayError::InvariantViolation(e.to_string()))?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

pub fn replay_bytes(records: &[ReplayRecord]) -> Result<Vec<u8>, ReplayError> {
    let mut buf = Vec::new();
    write_replay(records, &mut buf)?;
    Ok(buf)
}

/// Parses and structurally checks a log. Line numbers are 1-based; a log
/// that ends early reports the line after its last.
pub fn read_replay<R: BufRead>(input: R) -> Result<Vec<ReplayRecord>, ReplayError> {
    let mut records = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        if records.is_empty() {
            // check the version before the rest of the header, which may
            // legitimately differ between versions
            let v: serde_json::Value = serde_json::from_str(&line).map_err(|e| ReplayError::ParseError {
                line: i + 1,
                message: e.to_string(),
            })?;
            if let Some(version) = v.get("version").and_then(|v| v.as_str()) {
                if version != REPLAY_VERSION {
                    return Err(ReplayError::VersionMismatch(version.to_string()));
                }
            }
        }
        let rec: ReplayRecord = serde_json::from_str(&line).map_err(|e| ReplayError::ParseError {
            line: i + 1,
            message: e.to_string(),
        })?;
        records.push(rec);
    }
    structure(&records).map_err(|(i, message)| ReplayError::ParseError { line: i + 1, message })?;
    Ok(records)
}

/// Re-simulates the log through the engine and compares every logged field.
///
/// A terminal with cause `timeout` or `crash` is not produced by the engine;
/// it is accepted when it follows the last tick of a still-running match and
/// the scores agree.
pub fn verify_replay(records: &[ReplayRecord]) -> Verdict {
    if structure(records).is_err() {
        return Verdict::Diverges(0);
    }
    let ReplayRecord::Header { seed, config, .. } = &records[0] else {
        unreachable!("checked by structure")
    };
    let Ok(mut state) = GameState::new_match(config, *seed) else {
        return Verdict::Diverges(0);
    };
    let mut last = 0u64;
    for r in &records[1..] {
        match *r {
            ReplayRecord::Tick {
                tick,
                white,
                blue,
                heads,
                apple,
                scores,
                clock,
            } => {
                last = tick;
                if !state.is_running() || clock <= state.clock() {
                    return Verdict::Diverges(tick);
                }
                let expected_heads = [state.snake(Side::White).head().step(white), state.snake(Side::Blue).head().step(blue)];
                if expected_heads != heads {
                    return Verdict::Diverges(tick);
                }
                let elapsed = clock - state.clock();
                // logical clocks advance one tick per step; wall steps take
                // whatever the decisions took
                if config.clock == ClockMode::Logical && elapsed != config.nominal_step() {
                    return Verdict::Diverges(tick);
                }
                match state.step_elapsed(white, blue, elapsed) {
                    Ok(o) => state = o.next,
                    Err(_) => return Verdict::Diverges(tick),
                }
                if state.apple().position != apple || state.scores() != scores || state.clock() != clock {
                    return Verdict::Diverges(tick);
                }
            }
            ReplayRecord::Terminal {
                result, cause, scores, ..
            } => {
                let ok = match state.outcome() {
                    Some(o) => o.result == result && o.cause == cause && o.final_scores == scores,
                    None => matches!(cause, Cause::Timeout | Cause::Crash) && state.scores() == scores,
                };
                return if ok { Verdict::Valid } else { Verdict::Diverges(last) };
            }
            ReplayRecord::Header { .. } => return Verdict::Diverges(last),
        }
    }
    Verdict::Diverges(last)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_log() -> (Vec<ReplayRecord>, GameState) {
        let cfg = MatchConfig::logical().with_board(7, 7);
        let s0 = GameState::new_match(&cfg, 5).unwrap();
        // both snakes run straight into the walls
        let mut recs = vec![ReplayRecord::header(&cfg, 5, "a", "b")];
        let mut s = s0.clone();
        let mut i = 0;
        loop {
            let moves = [Direction::North, Direction::South];
            let o = s.step(moves[0], moves[1]).unwrap();
            recs.push(ReplayRecord::tick(i, &s, moves, &o.next));
            i += 1;
            s = o.next;
            if let Some(t) = o.terminal {
                recs.push(ReplayRecord::terminal(i, &t));
                break;
            }
        }
        (recs, s)
    }

    #[test]
    fn round_trip_and_verify() {
        let (recs, end) = tiny_log();
        assert!(end.outcome().is_some());
        let bytes = replay_bytes(&recs).unwrap();
        let back = read_replay(&bytes[..]).unwrap();
        assert_eq!(back, recs);
        assert_eq!(replay_bytes(&back).unwrap(), bytes);
        assert_eq!(verify_replay(&recs), Verdict::Valid);
        let first = String::from_utf8(bytes).unwrap();
        assert!(first.starts_with(r#"{"type":"header","version":"snakes-replay/1","rng":"#));
    }

    #[test]
    fn one_tick_match_is_three_lines() {
        let mut cfg = MatchConfig::logical().with_board(7, 7);
        cfg.match_limit = 1;
        let s = GameState::new_match(&cfg, 1).unwrap();
        let moves = [Direction::East, Direction::West];
        let o = s.step(moves[0], moves[1]).unwrap();
        let recs = vec![
            ReplayRecord::header(&cfg, 1, "a", "b"),
            ReplayRecord::tick(0, &s, moves, &o.next),
            ReplayRecord::terminal(1, &o.terminal.unwrap()),
        ];
        let text = String::from_utf8(replay_bytes(&recs).unwrap()).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert_eq!(verify_replay(&recs), Verdict::Valid);
    }

    #[test]
    fn detects_tampering_and_truncation() {
        let (recs, _) = tiny_log();
        let mut bad = recs.clone();
        if let ReplayRecord::Tick { apple, .. } = &mut bad[1] {
            *apple = Some(Cell::new(6, 6)).filter(|c| Some(*c) != *apple).or(Some(Cell::new(0, 6)));
        }
        assert_eq!(verify_replay(&bad), Verdict::Diverges(0));

        let mut flipped = recs.clone();
        let n = flipped.len();
        let last_tick = n as u64 - 3;
        if let ReplayRecord::Terminal { result, .. } = &mut flipped[n - 1] {
            *result = if *result == MatchResult::Draw { MatchResult::White } else { MatchResult::Draw };
        }
        assert_eq!(verify_replay(&flipped), Verdict::Diverges(last_tick));

        let bytes = replay_bytes(&recs).unwrap();
        let text = String::from_utf8(bytes).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        let truncated = lines[..lines.len() - 1].join("\n");
        match read_replay(truncated.as_bytes()) {
            Err(ReplayError::ParseError { line, .. }) => assert_eq!(line, lines.len()),
            other => panic!("expected parse error, got {other:?}"),
        }
        let other = text.replacen("snakes-replay/1", "snakes-replay/9", 1);
        assert!(matches!(read_replay(other.as_bytes()), Err(ReplayError::VersionMismatch(v)) if v == "snakes-replay/9"));
        assert!(matches!(write_replay(&recs[..2], Vec::new()), Err(ReplayError::InvariantViolation(_))));
    }
}
