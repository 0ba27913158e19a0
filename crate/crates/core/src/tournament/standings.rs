use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use crate::engine::{MatchOutcome, MatchResult};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Record {
    pub wins: u32,
    pub draws: u32,
    pub losses: u32,
    pub games: u32,
}

/// Win/draw/loss tallies keyed by participant.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Standings {
    records: BTreeMap<String, Record>,
}

impl Standings {
    /// Standings listing every participant, including those yet to play.
    pub fn new<S: AsRef<str>>(participants: &[S]) -> Self {
        Self {
            records: participants
                .iter()
                .map(|p| (p.as_ref().to_string(), Record::default()))
                .collect(),
        }
    }

    pub fn from_records(records: impl IntoIterator<Item = (String, Record)>) -> Self {
        Self {
            records: records.into_iter().collect(),
        }
    }

    pub fn record(&mut self, white: &str, blue: &str, outcome: &MatchOutcome) {
        let (w, b) = match outcome.result {
            MatchResult::White => ((1, 0, 0), (0, 0, 1)),
            MatchResult::Blue => ((0, 0, 1), (1, 0, 0)),
            MatchResult::Draw => ((0, 1, 0), (0, 1, 0)),
        };
        for (name, (win, draw, loss)) in [(white, w), (blue, b)] {
            let r = self.records.entry(name.to_string()).or_default();
            r.wins += win;
            r.draws += draw;
            r.losses += loss;
            r.games += 1;
        }
    }

    /// Adds another tally into this one.
    pub fn merge(&mut self, other: &Standings) {
        for (name, o) in &other.records {
            let r = self.records.entry(name.clone()).or_default();
            r.wins += o.wins;
            r.draws += o.draws;
            r.losses += o.losses;
            r.games += o.games;
        }
    }

    pub fn get(&self, name: &str) -> Option<&Record> {
        self.records.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Record)> {
        self.records.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// Most wins first, then most draws, then name. Participants without games
/// go last.
pub fn rank(standings: &Standings) -> Vec<String> {
    let mut rows: Vec<(&str, &Record)> = standings.iter().collect();
    rows.sort_by(|(na, a), (nb, b)| {
        (a.games == 0)
            .cmp(&(b.games == 0))
            .then(b.wins.cmp(&a.wins))
            .then(b.draws.cmp(&a.draws))
            .then(na.cmp(nb))
    });
    rows.into_iter().map(|(n, _)| n.to_string()).collect()
}

#[derive(Serialize)]
struct Row<'a> {
    rank: usize,
    participant: &'a str,
    wins: u32,
    draws: u32,
    losses: u32,
    games: u32,
}

/// `rank,participant,wins,draws,losses,games`, one row per participant in rank order.
pub fn write_standings_csv<W: Write>(standings: &Standings, out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for (i, name) in rank(standings).iter().enumerate() {
        let r = standings.get(name).expect("ranked from these standings");
        w.serialize(Row {
            rank: i + 1,
            participant: name,
            wins: r.wins,
            draws: r.draws,
            losses: r.losses,
            games: r.games,
        })?;
    }
    w.flush()?;
    Ok(())
}
