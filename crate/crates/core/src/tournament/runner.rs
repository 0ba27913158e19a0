//! Drives one match: asks both bots for a move every tick, enforces the
//! decision budget and records the replay.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use crate::agents::{Bot, BotView};
use crate::engine::{Cause, ClockMode, Direction, EngineError, GameState, MatchConfig, MatchOutcome, MatchResult, Side};
use crate::replay::ReplayRecord;
use crate::search::SearchBudget;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Failure {
    Timeout,
    Crash,
}

type Decision = Result<Direction, Failure>;

/// One bot behind a request/response channel pair, so a late decision can
/// be abandoned: the runner stops waiting and the thread exits on its own.
struct Worker {
    requests: mpsc::Sender<BotView>,
    responses: mpsc::Receiver<Direction>,
}

impl Worker {
    fn spawn(mut bot: Box<dyn Bot>) -> Worker {
        let (req_tx, req_rx) = mpsc::channel::<BotView>();
        let (resp_tx, resp_rx) = mpsc::channel();
        thread::spawn(move || {
            for view in req_rx {
                // a panic drops `resp_tx`, which the runner sees as a crash
                let d = bot.decide(&view);
                if resp_tx.send(d).is_err() {
                    break;
                }
            }
        });
        Worker {
            requests: req_tx,
            responses: resp_rx,
        }
    }
}

enum Seats {
    Direct([Box<dyn Bot>; 2]),
    Threads([Worker; 2]),
}

impl Seats {
    /// Both decisions plus the elapsed clock units for this tick.
    fn decide(&mut self, state: &GameState) -> ([Decision; 2], u64) {
        let config = state.config();
        match self {
            Seats::Direct(bots) => {
                let budget = config.decision_budget;
                let decisions = Side::BOTH.map(|side| {
                    let bot = &mut bots[side.index()];
                    let view = BotView::new(state.clone(), side, SearchBudget::Nodes(budget));
                    match catch_unwind(AssertUnwindSafe(|| bot.decide(&view))) {
                        Err(_) => Err(Failure::Crash),
                        Ok(_) if bot.last_work() > budget => Err(Failure::Timeout),
                        Ok(d) => Ok(d),
                    }
                });
                (decisions, config.nominal_step())
            }
            Seats::Threads(workers) => {
                let budget = Duration::from_millis(config.decision_budget);
                let start = Instant::now();
                let mut sent = [true; 2];
                for side in Side::BOTH {
                    let view = BotView::new(state.clone(), side, SearchBudget::Time(budget));
                    sent[side.index()] = workers[side.index()].requests.send(view).is_ok();
                }
                let deadline = start + budget;
                let mut decisions = [Err(Failure::Crash); 2];
                for side in Side::BOTH {
                    let i = side.index();
                    if !sent[i] {
                        continue;
                    }
                    let wait = deadline.saturating_duration_since(Instant::now());
                    decisions[i] = match workers[i].responses.recv_timeout(wait) {
                        Ok(d) => Ok(d),
                        Err(mpsc::RecvTimeoutError::Timeout) => Err(Failure::Timeout),
                        Err(mpsc::RecvTimeoutError::Disconnected) => Err(Failure::Crash),
                    };
                }
                let took = start.elapsed().as_millis() as u64;
                (decisions, took.max(config.nominal_step()))
            }
        }
    }
}

/// Result of a forfeit by one or both sides.
fn forfeit(state: &GameState, failures: [Option<Failure>; 2]) -> MatchOutcome {
    let cause_of = |f: Failure| match f {
        Failure::Timeout => Cause::Timeout,
        Failure::Crash => Cause::Crash,
    };
    let (result, cause) = match failures {
        [Some(w), None] => (MatchResult::Blue, cause_of(w)),
        [None, Some(b)] => (MatchResult::White, cause_of(b)),
        [Some(w), Some(b)] => {
            let cause = if w == Failure::Crash || b == Failure::Crash {
                Cause::Crash
            } else {
                Cause::Timeout
            };
            (MatchResult::Draw, cause)
        }
        [None, None] => unreachable!("forfeit without a failure"),
    };
    MatchOutcome {
        result,
        cause,
        final_scores: state.scores(),
    }
}

#[derive(Clone, Debug)]
pub struct MatchReport {
    pub outcome: MatchOutcome,
    pub replay: Vec<ReplayRecord>,
}

/// Plays a full match. Logical clocks call the bots directly and check the
/// work each reports against the node budget; wall clocks run each bot on
/// its own thread with a millisecond deadline.
pub fn run_match(
    white: Box<dyn Bot>,
    blue: Box<dyn Bot>,
    config: &MatchConfig,
    seed: u64,
) -> Result<MatchReport, EngineError> {
    run_match_traced(white, blue, config, seed, |_| {})
}

/// [`run_match`] with a callback invoked on every position, including the
/// initial and final ones.
pub fn run_match_traced(
    white: Box<dyn Bot>,
    blue: Box<dyn Bot>,
    config: &MatchConfig,
    seed: u64,
    mut trace: impl FnMut(&GameState),
) -> Result<MatchReport, EngineError> {
    let mut state = GameState::new_match(config, seed)?;
    let mut replay = vec![ReplayRecord::header(config, seed, white.name(), blue.name())];
    let mut seats = match config.clock {
        ClockMode::Logical => Seats::Direct([white, blue]),
        ClockMode::Wall => Seats::Threads([Worker::spawn(white), Worker::spawn(blue)]),
    };
    trace(&state);
    let mut tick = 0u64;
    let outcome = loop {
        let ([w, b], elapsed) = seats.decide(&state);
        let (w, b) = match (w, b) {
            (Ok(w), Ok(b)) => (w, b),
            (w, b) => break forfeit(&state, [w.err(), b.err()]),
        };
        let step = state.step_elapsed(w, b, elapsed)?;
        replay.push(ReplayRecord::tick(tick, &state, [w, b], &step.next));
        tick += 1;
        state = step.next;
        trace(&state);
        if let Some(o) = step.terminal {
            break o;
        }
    };
    replay.push(ReplayRecord::terminal(tick, &outcome));
    Ok(MatchReport { outcome, replay })
}
