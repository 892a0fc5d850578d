//! The `ordchomp` command line.

use std::ffi::OsString;
use std::fs;
use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::chomp::{
    default_move_bound, scan_first_moves, semigroup_poset, to_dot, FinitePoset, Label, Player,
    Position, ScanConfig, Solver,
};
use crate::error::{Error, Result};
use crate::monoid::{EnumLimits, GeneratorSet, MonoidView, Oracle, DEFAULT_MAX_ELEMENTS};
use crate::ordinal::{parse_with_depth, Ordinal, DEFAULT_MAX_DEPTH};
use crate::selftest::{self, SelftestConfig};
use crate::wpog::{self, WpogConfig};

/// Exit code for domain errors.
pub const EXIT_FAILURE: i32 = 1;
/// Exit code for usage errors.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ordchomp",
    version,
    about = "Ordinal arithmetic, ordinal monoids and Chomp on their posets"
)]
struct Cli {
    /// Deepest exponent nesting accepted in ordinal input
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DEPTH)]
    max_depth: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct MonoidArgs {
    /// Comma-separated generators, e.g. "3,5" or "2,3,w^2+w+1"
    #[arg(long)]
    gens: String,
    /// Level of the monoid
    #[arg(long, default_value = "1")]
    sigma: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate `A OP B`, `A lexp`, `A wpow`, or print `A` in normal form
    Calc {
        lhs: String,
        op: Option<CalcOp>,
        rhs: Option<String>,
    },
    /// List the elements of a monoid whose multipliers have bounded coefficients
    Enum {
        #[command(flatten)]
        monoid: MonoidArgs,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
        coeff_bound: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_ELEMENTS)]
        max_elements: usize,
        /// Write the listing here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide `A <= B` in the monoid order
    Order {
        #[command(flatten)]
        monoid: MonoidArgs,
        a: String,
        b: String,
    },
    /// Decide whether the generators give well partial orders
    Wpog {
        #[arg(long)]
        gens: String,
        #[arg(long, default_value_t = wpog::DEFAULT_COEFF_BOUND, value_parser = clap::value_parser!(u64).range(1..))]
        coeff_bound: u64,
        /// Antichain length taken as evidence
        #[arg(long, default_value_t = wpog::DEFAULT_SIZE, value_parser = parse_size)]
        size: usize,
        #[arg(long, default_value_t = wpog::DEFAULT_NODE_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
        node_budget: u64,
    },
    /// Decide who wins Chomp on the monoid
    Solve {
        #[command(flatten)]
        monoid: MonoidArgs,
        #[command(flatten)]
        game: GameArgs,
    },
    /// Play Chomp against the engine, one move per input line
    Play {
        #[command(flatten)]
        monoid: MonoidArgs,
        #[command(flatten)]
        game: GameArgs,
        /// Let the engine move first
        #[arg(long)]
        second: bool,
    },
    /// Write the Hasse diagram of a truncated monoid as a DOT digraph
    Hasse {
        #[command(flatten)]
        monoid: MonoidArgs,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        coeff_bound: u64,
        #[arg(long, default_value_t = 512)]
        max_elements: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance checks
    Selftest {
        /// Smaller case counts and truncations
        #[arg(long)]
        quick: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
struct GameArgs {
    /// Largest first move tried at level one
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    move_bound: Option<u64>,
    /// Truncation above level one
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    coeff_bound: u64,
    #[arg(long, default_value_t = 2_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    node_budget: u64,
    #[arg(long, default_value_t = 4096)]
    max_elements: usize,
}

impl GameArgs {
    fn scan_config(&self) -> ScanConfig {
        ScanConfig {
            move_bound: self.move_bound,
            coeff_bound: self.coeff_bound,
            node_budget: self.node_budget,
            max_elements: self.max_elements,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CalcOp {
    Add,
    Nsum,
    Nprod,
    Sub,
    Cmp,
    Lexp,
    Wpow,
}

fn parse_size(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 2 => Ok(n),
        Ok(_) => Err("must be at least 2".into()),
        Err(e) => Err(e.to_string()),
    }
}

/// Outcome of a failed command.
enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn context(what: &str) -> impl Fn(Error) -> Failure + '_ {
    move |e| Failure::Domain(format!("{what}: {e}"))
}

/// Runs the command line `args` (program name first) and returns the exit
/// code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(cli, input, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILURE
        }
    }
}

fn io(e: std::io::Error) -> Failure {
    Failure::Domain(e.to_string())
}

fn dispatch(cli: Cli, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<i32, Failure> {
    let depth = cli.max_depth;
    match cli.command {
        Command::Calc { lhs, op, rhs } => calc(&lhs, op, rhs.as_deref(), depth, out),
        Command::Enum {
            monoid,
            coeff_bound,
            max_elements,
            out: path,
        } => {
            let (g, sigma) = monoid.parse(depth)?;
            let view = MonoidView::enumerate_with(&g, &sigma, coeff_bound, EnumLimits { max_elements })?;
            let text = view.to_text();
            match path {
                Some(path) => {
                    fs::write(&path, text).map_err(io)?;
                    writeln!(out, "wrote {} elements to {}", view.len(), path.display()).map_err(io)?;
                }
                None => write!(out, "{text}").map_err(io)?,
            }
            Ok(0)
        }
        Command::Order { monoid, a, b } => {
            let (g, sigma) = monoid.parse(depth)?;
            let a = parse_with_depth(&a, depth).map_err(context("first element"))?;
            let b = parse_with_depth(&b, depth).map_err(context("second element"))?;
            let oracle = Oracle::new(&g, &sigma)?;
            for x in [&a, &b] {
                if oracle.contains(x).is_no() {
                    return Err(Error::NotDecomposable(x.to_string()).into());
                }
            }
            writeln!(out, "{a} <= {b} : {}", oracle.leq(&a, &b).as_str()).map_err(io)?;
            Ok(0)
        }
        Command::Wpog {
            gens,
            coeff_bound,
            size,
            node_budget,
        } => {
            let g = parse_gens(&gens, depth)?;
            let cfg = WpogConfig {
                coeff_bound,
                size,
                node_budget,
            };
            let verdict = wpog::wpog_verdict(&g, &cfg)?;
            write!(out, "{verdict}").map_err(io)?;
            Ok(0)
        }
        Command::Solve { monoid, game } => {
            let (g, sigma) = monoid.parse(depth)?;
            let v = scan_first_moves(&g, &sigma, &game.scan_config())?;
            writeln!(out, "winner: {}", v.winner).map_err(io)?;
            writeln!(out, "quality: {}", v.quality).map_err(io)?;
            if let Some(m) = &v.winning_move {
                writeln!(out, "winning-move: {m}").map_err(io)?;
            }
            Ok(0)
        }
        Command::Play {
            monoid,
            game,
            second,
        } => {
            let (g, sigma) = monoid.parse(depth)?;
            play(&g, &sigma, &game, second, depth, input, out)
        }
        Command::Hasse {
            monoid,
            coeff_bound,
            max_elements,
            out: path,
        } => {
            let (g, sigma) = monoid.parse(depth)?;
            let view = MonoidView::enumerate(&g, &sigma, coeff_bound)?;
            let poset = FinitePoset::from_view(&view, max_elements)?;
            let dot = to_dot(&poset);
            match path {
                Some(path) => {
                    fs::write(&path, dot).map_err(io)?;
                    writeln!(out, "wrote {} nodes to {}", poset.len(), path.display()).map_err(io)?;
                }
                None => write!(out, "{dot}").map_err(io)?,
            }
            Ok(0)
        }
        Command::Selftest { quick, seed } => {
            let cfg = if quick {
                SelftestConfig::quick(seed)
            } else {
                SelftestConfig::full(seed)
            };
            let mut passed = 0;
            let mut total = 0;
            for id in selftest::CRITERIA {
                let report = selftest::run_criterion(id, &cfg);
                writeln!(out, "{report}").map_err(io)?;
                out.flush().map_err(io)?;
                total += 1;
                passed += usize::from(report.passed);
            }
            writeln!(out, "{passed}/{total} criteria passed").map_err(io)?;
            Ok(if passed == total { 0 } else { EXIT_FAILURE })
        }
    }
}

impl MonoidArgs {
    fn parse(&self, depth: usize) -> Result<(GeneratorSet, Ordinal), Failure> {
        let g = parse_gens(&self.gens, depth)?;
        let sigma = parse_with_depth(&self.sigma, depth).map_err(context("--sigma"))?;
        Ok((g, sigma))
    }
}

fn parse_gens(text: &str, depth: usize) -> Result<GeneratorSet, Failure> {
    let gens = text
        .split(',')
        .map(|part| parse_with_depth(part, depth))
        .collect::<Result<Vec<_>>>()
        .map_err(context("--gens"))?;
    GeneratorSet::new(gens).map_err(context("--gens"))
}

fn calc(
    lhs: &str,
    op: Option<CalcOp>,
    rhs: Option<&str>,
    depth: usize,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let a = parse_with_depth(lhs, depth).map_err(context("left operand"))?;
    let unary = matches!(op, None | Some(CalcOp::Lexp) | Some(CalcOp::Wpow));
    let b = match (unary, rhs) {
        (true, None) => None,
        (true, Some(extra)) => return Err(Failure::Usage(format!("calc: unexpected operand '{extra}'"))),
        (false, None) => return Err(Failure::Usage("calc: missing right operand".into())),
        (false, Some(r)) => Some(parse_with_depth(r, depth).map_err(context("right operand"))?),
    };
    let result = match (op, b) {
        (None, _) => a.to_string(),
        (Some(CalcOp::Lexp), _) => a.leading_exp().to_string(),
        (Some(CalcOp::Wpow), _) => Ordinal::omega_power(a).to_string(),
        (Some(CalcOp::Add), Some(b)) => a.ordinary_add(&b).to_string(),
        (Some(CalcOp::Nsum), Some(b)) => a.natural_sum(&b).to_string(),
        (Some(CalcOp::Nprod), Some(b)) => a.natural_product(&b).to_string(),
        (Some(CalcOp::Sub), Some(b)) => a.subtract(&b)?.to_string(),
        (Some(CalcOp::Cmp), Some(b)) => match a.cmp(&b) {
            std::cmp::Ordering::Less => "LT",
            std::cmp::Ordering::Equal => "EQ",
            std::cmp::Ordering::Greater => "GT",
        }
        .to_string(),
        (Some(_), None) => unreachable!("binary operators have a right operand"),
    };
    writeln!(out, "{result}").map_err(io)?;
    Ok(0)
}

fn play(
    g: &GeneratorSet,
    sigma: &Ordinal,
    game: &GameArgs,
    second: bool,
    depth: usize,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let level_one = *sigma == Ordinal::one() && g.is_numeric();
    let (poset, first_limit) = if level_one {
        let num = g.numeric_monoid()?;
        if num.gcd() != 1 {
            return Err(Error::InfiniteGaps(num.gcd()).into());
        }
        let bound = match game.move_bound {
            Some(b) => b,
            None => default_move_bound(&num)?,
        };
        let f = num.frobenius()?.max(0) as u64;
        (semigroup_poset(&num, bound + f), Some(bound))
    } else {
        let view = MonoidView::enumerate(g, sigma, game.coeff_bound)?;
        (FinitePoset::from_view(&view, game.max_elements)?, None)
    };
    let poset = Arc::new(poset);
    let min = poset.min_index();
    let mut pos = Position::new(Arc::clone(&poset));
    let mut solver = Solver::new().with_node_limit(game.node_budget);
    let mut first = true;
    let mut human_turn = !second;
    writeln!(
        out,
        "{} elements; {} first; whoever takes 0 loses",
        poset.len(),
        if second { "engine moves" } else { "you move" }
    )
    .map_err(io)?;
    if let Some(bound) = first_limit {
        writeln!(out, "first moves up to {bound}").map_err(io)?;
    }
    loop {
        if human_turn {
            let mut line = String::new();
            if input.read_line(&mut line).map_err(io)? == 0 || line.trim() == "quit" {
                writeln!(out, "game abandoned").map_err(io)?;
                return Ok(0);
            }
            let x = match parse_with_depth(line.trim(), depth) {
                Ok(x) => x,
                Err(e) => {
                    writeln!(out, "cannot read move: {e}").map_err(io)?;
                    continue;
                }
            };
            let index = poset
                .index_of(&Label::Ord(x.clone()))
                .filter(|&i| pos.is_alive(i));
            let Some(index) = index else {
                writeln!(out, "not available: {x}").map_err(io)?;
                continue;
            };
            if let (true, Some(bound)) = (first, first_limit) {
                if x.to_u64().is_none_or(|v| v > bound) {
                    writeln!(out, "not available: {x} (first move above {bound})").map_err(io)?;
                    continue;
                }
            }
            if index == min {
                writeln!(out, "you took 0; engine wins").map_err(io)?;
                return Ok(0);
            }
            pos = pos.play(index)?;
        } else {
            let choice = if first && level_one {
                let v = scan_first_moves(g, sigma, &game.scan_config())?;
                v.winning_index
                    .filter(|_| v.winner == Player::A)
                    .or_else(|| pos.alive().iter().find(|&i| i != min))
            } else {
                solver.best_move(&pos).ok().flatten()
            };
            let y = choice
                .or_else(|| pos.alive().iter().find(|&i| i != min))
                .unwrap_or(min);
            writeln!(out, "engine: {}", poset.label(y)).map_err(io)?;
            if y == min {
                writeln!(out, "engine took 0; you win").map_err(io)?;
                return Ok(0);
            }
            pos = pos.play(y)?;
        }
        first = false;
        human_turn = !human_turn;
    }
}
