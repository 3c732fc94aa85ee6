//! `george`: statistics, factorizations, search and sweeps on George groups.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use george_core::conjectures::{self, ConjectureId};
use george_core::factorization::{factor_unbranched, verify_witness};
use george_core::groups::{enumerate_elements, parse_window, WordBall};
use george_core::oracle::{self, SearchOptions, Weight};
use george_core::statistics::{self, length};
use george_core::{Cost, Element, Error, Family, GroupDescriptor};

use crate::output::{Format, Sink};

const USAGE: u8 = 1;
const COUNTEREXAMPLE: u8 = 2;
const INCONCLUSIVE: u8 = 3;
const INVALID_ELEMENT: u8 = 4;

/// Affine sweeps are infinite; this is the default ball radius.
const AFFINE_MAX_LENGTH: usize = 6;

#[derive(Parser, Debug)]
#[command(
    name = "george",
    version,
    about = "Minimum-cost transposition factorizations in classical Weyl groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Args, Debug, Clone)]
struct GroupArgs {
    /// Family: A, B, D, ~A, ~B, ~C or ~D.
    #[arg(long = "type", value_name = "FAMILY")]
    family: Family,

    /// Window size; inferred from the window when omitted.
    #[arg(short = 'n')]
    n: Option<usize>,
}

#[derive(Args, Debug, Clone)]
struct ElementArgs {
    #[command(flatten)]
    group: GroupArgs,

    /// Window such as "[3,1,2]".
    window: String,
}

#[derive(Args, Debug, Clone)]
struct BudgetArgs {
    /// Largest factorization weight the search may explore, `k` or `k/2`.
    #[arg(long, env = "GEORGE_COST_BUDGET")]
    budget: Option<Cost>,

    /// Node expansions before the search gives up.
    #[arg(long, default_value_t = SearchOptions::default().max_expansions)]
    max_expansions: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum WeightArg {
    Cost,
    Depth,
    Unit,
}

impl From<WeightArg> for Weight {
    fn from(w: WeightArg) -> Weight {
        match w {
            WeightArg::Cost => Weight::Cost,
            WeightArg::Depth => Weight::Depth,
            WeightArg::Unit => Weight::Unit,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Every statistic of one element.
    ///
    /// CSV columns: window,tvd,length,neg,bl_A,bl_B,bl_D,bl_C_aff,bl_B_aff,cost_formula,conjectured
    Stats(ElementArgs),

    /// A minimum-cost factorization: greedy where a formula is proved, searched otherwise.
    ///
    /// CSV columns: index,i,j,cost
    Factor {
        #[command(flatten)]
        element: ElementArgs,
        #[command(flatten)]
        budget: BudgetArgs,
    },

    /// Exact search for the minimum total weight.
    ///
    /// CSV columns: index,i,j,weight
    Oracle {
        #[command(flatten)]
        element: ElementArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, value_enum, default_value_t = WeightArg::Cost)]
        weight: WeightArg,
        /// Guide the search by the displacement lower bound.
        #[arg(long)]
        astar: bool,
    },

    /// Compare searched costs with the proved formula on a whole sweep.
    ///
    /// CSV columns: window,tvd,formula,oracle,agree,expanded
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        /// Word-length bound (affine default 6, finite default unbounded).
        #[arg(long)]
        max_length: Option<usize>,
    },

    /// Run an exploratory sweep for an open statement.
    ///
    /// CSV columns: window,expected,observed,note
    Conjecture {
        /// AffB_formula, AffD_bounds, AffD_equality_class or Bounded_gap.
        id: ConjectureId,
        #[arg(short = 'n')]
        n: usize,
        /// Group for Bounded_gap (default ~B).
        #[arg(long = "type", value_name = "FAMILY")]
        family: Option<Family>,
        #[arg(long, default_value_t = AFFINE_MAX_LENGTH)]
        max_length: usize,
    },

    /// List elements in order of word length.
    ///
    /// CSV columns: window,length
    Enumerate {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        max_length: Option<usize>,
    },
}

impl GroupArgs {
    fn descriptor(&self, window: Option<&[i64]>) -> anyhow::Result<GroupDescriptor> {
        let n = match (self.n, window) {
            (Some(n), Some(w)) if n != w.len() => {
                bail!(Usage(format!(
                    "-n {n} does not match a window of length {}",
                    w.len()
                )))
            }
            (Some(n), _) => n,
            (None, Some(w)) => w.len(),
            (None, None) => bail!(Usage("-n is required".into())),
        };
        Ok(GroupDescriptor::new(self.family, n)?)
    }

    fn max_length(&self, given: Option<usize>) -> Option<usize> {
        given.or(self.family.is_affine().then_some(AFFINE_MAX_LENGTH))
    }
}

impl ElementArgs {
    fn element(&self) -> anyhow::Result<Element> {
        let window = parse_window(&self.window).map_err(|e| Usage(e.to_string()))?;
        let descriptor = self.group.descriptor(Some(&window))?;
        Ok(Element::new(descriptor, window)?)
    }
}

impl BudgetArgs {
    fn options(&self, heuristic: bool) -> SearchOptions {
        SearchOptions {
            budget: self.budget,
            max_expansions: self.max_expansions,
            heuristic,
        }
    }
}

#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &anyhow::Error) -> u8 {
    if e.is::<Usage>() {
        return USAGE;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::InvalidElement { .. }) => INVALID_ELEMENT,
        Some(
            Error::BudgetExhausted { .. }
            | Error::ExpansionCap { .. }
            | Error::WordLengthExceeded { .. },
        ) => INCONCLUSIVE,
        Some(Error::LowerBoundViolated { .. } | Error::GapBoundViolated { .. }) => COUNTEREXAMPLE,
        _ => USAGE,
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    if let Some(jobs) = cli.output.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("configuring worker threads")?;
    }
    let mut sink = Sink::open(cli.output.format, cli.output.out.as_deref())?;
    let code = match &cli.command {
        Command::Stats(args) => {
            let w = args.element()?;
            sink.stats(&w, &statistics::report(&w))?;
            0
        }
        Command::Factor { element, budget } => {
            let w = element.element()?;
            let (f, method) = if w.family().is_unbranched() {
                (factor_unbranched(&w)?, "greedy")
            } else {
                (
                    oracle::min_cost_with(&w, Weight::Cost, &budget.options(true))?.witness,
                    "search",
                )
            };
            let check = verify_witness(&w, &f);
            debug_assert!(check.valid, "{:?}", check.reasons);
            sink.factorization(&w, &f, method, check.formula)?;
            0
        }
        Command::Oracle {
            element,
            budget,
            weight,
            astar,
        } => {
            let w = element.element()?;
            let r = oracle::min_cost_with(&w, (*weight).into(), &budget.options(*astar))?;
            sink.search(&r)?;
            0
        }
        Command::Verify { group, max_length } => {
            let d = group.descriptor(None)?;
            let report = oracle::verify_theorem(d, group.max_length(*max_length))?;
            sink.sweep(&report)?;
            if report.all_agree() {
                0
            } else {
                COUNTEREXAMPLE
            }
        }
        Command::Conjecture {
            id,
            n,
            family,
            max_length,
        } => {
            let report = conjectures::run(*id, *family, *n, *max_length)?;
            sink.conjecture(&report)?;
            report.exit_code() as u8
        }
        Command::Enumerate { group, max_length } => {
            let d = group.descriptor(None)?;
            let bound = group.max_length(*max_length);
            // Word lengths come from the ball itself; the plain iterator is for finite groups.
            if d.family().is_affine() || bound.is_some() {
                for (w, l) in WordBall::new(d, bound)? {
                    sink.enumerated(&w, l)?;
                }
            } else {
                for w in enumerate_elements(d, None)? {
                    let l = length(&w);
                    sink.enumerated(&w, l)?;
                }
            }
            0
        }
    };
    sink.finish()?;
    Ok(code)
}
