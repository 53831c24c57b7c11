use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use topogame::constructions::{
    alster_diagonal_selection, catalog_model, extract_alster_subcover_from_menger,
    extract_gdelta_subcover_from_pointopen, CATALOG,
};
use topogame::covers::{class_names, classify, classify_gdelta, AnyCover, CoverFile, GdeltaCover};
use topogame::duality::{
    dual_spec, translate_easy, translate_hard, DualityPair, MengerBridge, MengerDirection,
};
use topogame::engine::{
    certify_with_budget, judge, play, tabulate, Certificate, GameFile, GameKind, GameSpec, Side,
    Strategy,
};
use topogame::par::ExecMode;
use topogame::solver::{solve_with, SolveOptions};
use topogame::space::{load_model, SpaceModel};
use topogame::strategies::{self, RULE_NAMES};
use topogame::suite::{run_all, SuiteConfig};
use topogame::Error;

#[derive(Parser)]
#[command(name = "topogame", version, about = "Finite selection games: solve, certify, dualize, extract")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Backward induction; writes the winner, a strategy table and stats.
    Solve {
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks a strategy against every line of the opponent.
    Certify {
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        strategy: PathBuf,
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Plays One's strategy against Two's and prints the transcript.
    Play {
        #[arg(long)]
        game: PathBuf,
        /// Two files, one per side, in any order.
        #[arg(long, num_args = 2, required = true)]
        strategy: Vec<PathBuf>,
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Prints the classes a cover belongs to.
    Classify {
        #[arg(long)]
        space: String,
        #[arg(long)]
        cover: PathBuf,
    },
    /// Writes the partner game and, given a strategy, its translation.
    Dualize {
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        pair: Option<String>,
        #[arg(long)]
        side: Option<String>,
        #[arg(long)]
        strategy: Option<PathBuf>,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Subcover extraction from a Menger or point-open strategy, or the
    /// diagonal selection from a list of Alster covers.
    Extract {
        #[arg(long)]
        game: Option<PathBuf>,
        #[arg(long)]
        strategy: Option<PathBuf>,
        #[arg(long)]
        space: Option<String>,
        #[arg(long, required = true)]
        cover: Vec<PathBuf>,
        /// Rounds of the diagonal selection.
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lists built-in spaces and strategies, or prints one space.
    Catalog {
        #[arg(long)]
        space: Option<String>,
    },
    /// Runs the acceptance batteries.
    Suite {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        instances: usize,
        #[arg(long)]
        sequential: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Exit statuses.
const CHECK_FAILED: u8 = 1;
const USAGE: u8 = 2;
const BUDGET: u8 = 3;

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded(_) => BUDGET,
            Error::Json(_) | Error::Io(_) | Error::Range { .. } | Error::Invariant(_) => USAGE,
            Error::IllegalTranscript(_) | Error::Unsupported(_) | Error::EmptyCover => USAGE,
            _ => CHECK_FAILED,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: USAGE,
        msg: msg.into(),
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_game(path: &Path, horizon: Option<usize>) -> Result<GameSpec, Failure> {
    let file: GameFile = serde_json::from_str(&read(path)?).map_err(Error::from)?;
    let spec = file.into_spec(path.parent())?;
    Ok(match horizon {
        Some(h) => spec.with_horizon(h)?,
        None => spec,
    })
}

fn load_strategy(path: &Path) -> Result<Arc<dyn Strategy>, Failure> {
    Ok(strategies::load(&read(path)?)?)
}

/// A space file, or a catalog name such as `chain(3)`.
fn load_space(arg: &str) -> Result<SpaceModel, Failure> {
    let p = Path::new(arg);
    if p.exists() {
        return Ok(load_model(&read(p)?)?);
    }
    match catalog_model(arg) {
        Ok(m) => Ok((*m).clone()),
        Err(_) => Err(usage(format!("{arg}: no such file or catalog space"))),
    }
}

fn load_cover(path: &Path) -> Result<AnyCover, Failure> {
    let file: CoverFile = serde_json::from_str(&read(path)?).map_err(Error::from)?;
    Ok(file.into_cover()?)
}

/// Writes to stdout; a reader that hangs up early is not an error.
fn say(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn emit(value: &Value, out: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(Error::from)?;
    match out {
        Some(p) => std::fs::write(p, text + "\n").map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            say(&text);
            Ok(())
        }
    }
}

fn strategy_json(s: &dyn Strategy, spec: &GameSpec, budget: u64) -> Result<Value, Failure> {
    let file = match s.to_file() {
        Some(f) => f,
        None => tabulate(spec, s, budget)?
            .to_file()
            .expect("tables serialize"),
    };
    Ok(serde_json::to_value(file).map_err(Error::from)?)
}

fn parse_side(s: &str) -> Result<Side, Failure> {
    match s.to_ascii_lowercase().as_str() {
        "one" => Ok(Side::One),
        "two" => Ok(Side::Two),
        _ => Err(usage(format!("unknown side {s:?}; expected one or two"))),
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Solve {
            game,
            horizon,
            budget,
            out,
        } => {
            let spec = load_game(&game, horizon)?;
            let r = solve_with(&spec, SolveOptions { budget, memo: true })?;
            let v = json!({
                "winner": r.winner,
                "strategy": strategy_json(&r.strategy, &spec, budget)?,
                "stats": r.stats,
            });
            emit(&v, out.as_deref())?;
            Ok(0)
        }
        Command::Certify {
            game,
            strategy,
            horizon,
            budget,
            out,
        } => {
            let spec = load_game(&game, horizon)?;
            let s = load_strategy(&strategy)?;
            let cert = certify_with_budget(&spec, s.as_ref(), budget, ExecMode::Parallel)?;
            match &cert {
                Certificate::Certified if out.is_none() => say("Certified"),
                _ => emit(&serde_json::to_value(&cert).map_err(Error::from)?, out.as_deref())?,
            }
            Ok(if cert.is_certified() { 0 } else { CHECK_FAILED })
        }
        Command::Play {
            game,
            strategy,
            horizon,
            out,
        } => {
            let spec = load_game(&game, horizon)?;
            let a = load_strategy(&strategy[0])?;
            let b = load_strategy(&strategy[1])?;
            let (one, two) = match (a.side(), b.side()) {
                (Side::One, Side::Two) => (a, b),
                (Side::Two, Side::One) => (b, a),
                _ => return Err(usage("need one strategy for each side")),
            };
            let t = play(&spec, one.as_ref(), two.as_ref())?;
            let winner = judge(&spec, &t)?;
            emit(&json!({ "winner": winner, "transcript": t }), out.as_deref())?;
            Ok(0)
        }
        Command::Classify { space, cover } => {
            let model = load_space(&space)?;
            let classes = match load_cover(&cover)? {
                AnyCover::Open(c) => classify(&model, &c),
                AnyCover::Gdelta(g) => classify_gdelta(&model, &g),
            };
            say(&serde_json::to_string(&class_names(&classes)).map_err(Error::from)?);
            Ok(0)
        }
        Command::Dualize {
            game,
            pair,
            side,
            strategy,
            budget,
            out,
        } => {
            let spec = load_game(&game, None)?;
            let pair = match pair {
                Some(p) => p.parse::<DualityPair>()?,
                None => DualityPair::of_kind(spec.kind)
                    .ok_or_else(|| usage(format!("{} has no dual", spec.kind)))?,
            };
            let dual = dual_spec(&spec, pair)?;
            let mut v = json!({ "pair": pair.name(), "dual_game": GameFile::from_spec(&dual) });
            if let Some(path) = strategy {
                let s = load_strategy(&path)?;
                if let Some(side) = side {
                    if parse_side(&side)? != s.side() {
                        return Err(usage(format!("--side {side} but the strategy is for {}", s.side())));
                    }
                }
                let translated = if pair == DualityPair::MengerOstar {
                    let (bridge, direction) = if spec.kind == GameKind::Menger {
                        (MengerBridge::new(&spec)?, MengerDirection::MengerToOstar)
                    } else {
                        (MengerBridge::new(&dual)?, MengerDirection::OstarToMenger)
                    };
                    let t = bridge.translate(s, direction)?;
                    strategy_json(t.as_ref(), &dual, budget)?
                } else {
                    match s.side() {
                        Side::One => strategy_json(&translate_easy(&spec, s)?, &dual, budget)?,
                        Side::Two => serde_json::to_value(
                            translate_hard(&spec, s)?.to_file_with_witnesses(&dual, budget)?,
                        )
                        .map_err(Error::from)?,
                    }
                };
                v["strategy"] = translated;
            } else if side.is_some() {
                return Err(usage("--side needs --strategy"));
            }
            emit(&v, out.as_deref())?;
            Ok(0)
        }
        Command::Extract {
            game,
            strategy,
            space,
            cover,
            horizon,
            out,
        } => {
            let v = match (game, space) {
                (Some(game), None) => {
                    let spec = load_game(&game, horizon)?;
                    let sigma = load_strategy(
                        strategy.as_deref().ok_or_else(|| usage("--game needs --strategy"))?,
                    )?;
                    let [path] = cover.as_slice() else {
                        return Err(usage("extraction takes exactly one --cover"));
                    };
                    let w = match load_cover(path)? {
                        AnyCover::Gdelta(g) => g,
                        AnyCover::Open(c) => GdeltaCover::from_opens(c.elements())?,
                    };
                    let ext = match spec.kind {
                        GameKind::Menger => extract_alster_subcover_from_menger(&spec, sigma, &w)?,
                        GameKind::PointOpen => extract_gdelta_subcover_from_pointopen(&spec, sigma, &w)?,
                        k => return Err(usage(format!("no extraction for {k}"))),
                    };
                    let covers = ext.union() == spec.full();
                    let v = json!({
                        "subcover": ext.subcover,
                        "provenance": ext.provenance,
                        "covers": covers,
                    });
                    emit(&v, out.as_deref())?;
                    return Ok(if covers { 0 } else { CHECK_FAILED });
                }
                (None, Some(space)) => {
                    let model = load_space(&space)?;
                    let covers = cover
                        .iter()
                        .map(|p| match load_cover(p)? {
                            AnyCover::Gdelta(g) => Ok(g),
                            AnyCover::Open(c) => Ok(GdeltaCover::from_opens(c.elements())?),
                        })
                        .collect::<Result<Vec<_>, Failure>>()?;
                    let rounds = horizon.unwrap_or(model.point_count());
                    serde_json::to_value(alster_diagonal_selection(&model, &covers, rounds)?)
                        .map_err(Error::from)?
                }
                _ => return Err(usage("extract needs either --game or --space")),
            };
            emit(&v, out.as_deref())?;
            Ok(0)
        }
        Command::Catalog { space } => {
            match space {
                Some(name) => {
                    let m = catalog_model(&name)?;
                    emit(&serde_json::to_value(m.to_file()).map_err(Error::from)?, None)?;
                }
                None => {
                    let mut text = String::from("spaces:\n");
                    for s in CATALOG {
                        text += &format!("  {s}\n");
                    }
                    text += "strategies:\n";
                    for s in RULE_NAMES {
                        text += &format!("  {s}\n");
                    }
                    text += "pairs:";
                    for p in DualityPair::ALL {
                        text += &format!("\n  {p}");
                    }
                    say(&text);
                }
            }
            Ok(0)
        }
        Command::Suite {
            seed,
            instances,
            sequential,
            out,
        } => {
            let cfg = SuiteConfig {
                mode: if sequential {
                    ExecMode::Sequential
                } else {
                    ExecMode::Parallel
                },
                seed,
                instances,
            };
            let report = run_all(cfg);
            for c in &report.checks {
                eprintln!("{}", c.line());
            }
            emit(&serde_json::to_value(&report).map_err(Error::from)?, out.as_deref())?;
            Ok(if report.pass { 0 } else { CHECK_FAILED })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
