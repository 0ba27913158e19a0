//! `snakes` — run matches and tournaments, verify replay logs.

use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use snakes_core::agents::{make_agent, AgentSpec};
use snakes_core::replay::{read_replay, verify_replay, write_replay, Verdict};
use snakes_core::tournament::{rank, run_match_traced, run_tournament, Entrant, Pairing, TournamentOptions, STANDINGS_FILE};
use snakes_core::{ClockMode, MatchConfig};

const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "snakes", version, about = "Two-player Snake: matches, tournaments and replay verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Play one match and write its replay log.
    Match(MatchArgs),
    /// Round-robin tournament between several agents.
    Tournament(TournamentArgs),
    /// Re-simulate replay logs (files or directories) and check them.
    Verify(VerifyArgs),
}

#[derive(Args, Clone)]
struct GameArgs {
    /// Board size as WxH.
    #[arg(long, default_value = "15x15", value_parser = parse_board)]
    board: (i32, i32),
    /// Initial snake length.
    #[arg(long, default_value_t = 3)]
    length: usize,
    #[arg(long, env = "SNAKES_SEED", default_value_t = 0)]
    seed: u64,
    /// wall (milliseconds) or logical (ticks, node budgets).
    #[arg(long, default_value = "wall")]
    clock: ClockMode,
    /// Per-move budget: milliseconds (wall) or search nodes (logical).
    #[arg(long)]
    budget: Option<u64>,
    /// Output directory for logs.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

impl GameArgs {
    fn config(&self) -> MatchConfig {
        let base = match self.clock {
            ClockMode::Wall => MatchConfig::wall(),
            ClockMode::Logical => MatchConfig::logical(),
        };
        let mut c = base.with_board(self.board.0, self.board.1).with_length(self.length);
        c.base_seed = self.seed;
        if let Some(b) = self.budget {
            c.decision_budget = b;
        }
        c
    }
}

#[derive(Args)]
struct MatchArgs {
    #[arg(long, value_parser = parse_spec)]
    white: AgentSpec,
    #[arg(long, value_parser = parse_spec)]
    blue: AgentSpec,
    #[command(flatten)]
    game: GameArgs,
    /// Print the board after every tick.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct TournamentArgs {
    /// Comma-separated agent specs, e.g. `greedy,alphabeta:depth=4,nodes=20000,mcts`.
    #[arg(long, required = true)]
    agents: String,
    #[arg(long, default_value_t = 3)]
    repeats: u32,
    /// Matches run concurrently.
    #[arg(long, default_value_t = 1)]
    parallel: usize,
    #[command(flatten)]
    game: GameArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(required = true)]
    paths: Vec<PathBuf>,
}

fn parse_board(s: &str) -> Result<(i32, i32), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WxH, got `{s}`"))?;
    let dim = |v: &str| v.trim().parse::<i32>().map_err(|e| format!("bad board dimension `{v}`: {e}"));
    Ok((dim(w)?, dim(h)?))
}

fn parse_spec(s: &str) -> Result<AgentSpec, String> {
    s.parse().map_err(|e: snakes_core::agents::AgentError| e.to_string())
}

/// Splits `a:k=v,k2=v2,b` into specs: a token with `=` but no `:` continues
/// the previous spec's options.
fn split_agents(list: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for tok in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match out.last_mut() {
            Some(prev) if tok.contains('=') && !tok.contains(':') => {
                prev.push(if prev.contains(':') { ',' } else { ':' });
                prev.push_str(tok);
            }
            _ => out.push(tok.to_string()),
        }
    }
    out
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn cmd_match(args: MatchArgs) -> ExitCode {
    let config = args.game.config();
    let (wn, bn) = (args.white.to_string(), args.blue.to_string());
    let pairing = Pairing {
        a: wn.clone(),
        b: bn.clone(),
        repeat: 0,
        seed: config.base_seed,
    };
    let build = |spec: &AgentSpec, name: &str, salt: u64| make_agent(spec, name, config.base_seed ^ salt);
    let (white, blue) = match (build(&args.white, &wn, 0x5748), build(&args.blue, &bn, 0x424c)) {
        (Ok(w), Ok(b)) => (w, b),
        (Err(e), _) | (_, Err(e)) => return usage(e),
    };
    let trace = args.trace;
    let report = match run_match_traced(white, blue, &config, config.base_seed, |s| {
        if trace {
            println!("clock {} score {}-{}\n{}", s.clock(), s.score(snakes_core::Side::White), s.score(snakes_core::Side::Blue), s.render());
        }
    }) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    if let Err(e) = fs::create_dir_all(&args.game.out) {
        eprintln!("error: cannot create {}: {e}", args.game.out.display());
        return ExitCode::FAILURE;
    }
    let path = args.game.out.join(pairing.replay_file_name());
    let written = fs::File::create(&path)
        .map_err(snakes_core::replay::ReplayError::from)
        .and_then(|f| write_replay(&report.replay, std::io::BufWriter::new(f)));
    if let Err(e) = written {
        eprintln!("error: cannot write {}: {e}", path.display());
        return ExitCode::FAILURE;
    }
    println!("{wn} vs {bn}: {}", report.outcome);
    println!("replay: {}", path.display());
    ExitCode::SUCCESS
}

fn cmd_tournament(args: TournamentArgs) -> ExitCode {
    let specs = split_agents(&args.agents);
    let mut entrants = Vec::new();
    for s in &specs {
        let spec = match parse_spec(s) {
            Ok(spec) => spec,
            Err(e) => return usage(e),
        };
        let mut name = spec.to_string();
        // the same spec entered twice plays under distinct names
        let mut k = 2;
        while entrants.iter().any(|e: &Entrant| e.name == name) {
            name = format!("{spec}#{k}");
            k += 1;
        }
        entrants.push(Entrant::from_spec(name, spec));
    }
    let options = TournamentOptions {
        repeats: args.repeats,
        parallel: args.parallel,
        out_dir: Some(args.game.out.clone()),
    };
    let report = match run_tournament(&entrants, &args.game.config(), &options) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    println!("{} matches", report.matches.len());
    println!("{:>4}  {:<28} {:>5} {:>5} {:>6} {:>5}", "rank", "participant", "wins", "draws", "losses", "games");
    for (i, name) in rank(&report.standings).iter().enumerate() {
        let r = report.standings.get(name).expect("ranked participant");
        println!("{:>4}  {:<28} {:>5} {:>5} {:>6} {:>5}", i + 1, name, r.wins, r.draws, r.losses, r.games);
    }
    println!("standings: {}", args.game.out.join(STANDINGS_FILE).display());
    ExitCode::SUCCESS
}

fn collect_logs(path: &Path, out: &mut Vec<PathBuf>) -> std::io::Result<()> {
    if path.is_dir() {
        let mut entries: Vec<PathBuf> = fs::read_dir(path)?.map(|e| e.map(|e| e.path())).collect::<Result<_, _>>()?;
        entries.sort();
        out.extend(entries.into_iter().filter(|p| p.extension().is_some_and(|e| e == "jsonl")));
    } else {
        fs::metadata(path)?;
        out.push(path.to_path_buf());
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> ExitCode {
    let mut files = Vec::new();
    for p in &args.paths {
        if let Err(e) = collect_logs(p, &mut files) {
            return usage(format!("{}: {e}", p.display()));
        }
    }
    let mut bad = 0;
    for f in &files {
        let records = fs::File::open(f)
            .map_err(snakes_core::replay::ReplayError::from)
            .and_then(|file| read_replay(BufReader::new(file)));
        match records.map(|r| verify_replay(&r)) {
            Ok(Verdict::Valid) => println!("{}: valid", f.display()),
            Ok(Verdict::Diverges(t)) => {
                bad += 1;
                println!("{}: Diverges at tick {t}", f.display());
            }
            Err(e) => {
                bad += 1;
                println!("{}: {e}", f.display());
            }
        }
    }
    println!("verified {} logs: {} valid, {} invalid", files.len(), files.len() - bad, bad);
    if bad == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::Match(a) => cmd_match(a),
        Command::Tournament(a) => cmd_tournament(a),
        Command::Verify(a) => cmd_verify(a),
    }
}
