//! `dn`: distinguishing numbers for the catalog of bipartite automorphism groups.

mod emit;

use std::ops::RangeInclusive;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dn_core::bi_group::transitivity_report;
use dn_core::coloring::is_distinguishing;
use dn_core::constructions::{claimed_dn, construct_classes};
use dn_core::solver::{distinguishing_number, exists_distinguishing, SolveOptions};
use dn_core::verifier::{self, Mode, Report};
use dn_core::{Budget, CaseId, DnError, GroupCase, Partition};

use emit::{Emitter, Format};

#[derive(Parser, Debug)]
#[command(
    name = "dn",
    version,
    about = "Distinguishing numbers of large automorphism groups of K_{n,n} and crown graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact distinguishing number by exhaustive search, or a single `--k` query.
    Exact {
        #[command(flatten)]
        target: Target,
        /// Only ask whether some partition into at most K classes distinguishes.
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Explicit distinguishing partition, checked by witness search.
    Construct {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Reproduce the table of values and the supporting lemmas over a range of n.
    Verify {
        /// Table rows (default when no other check is selected).
        #[arg(long)]
        table1: bool,
        /// Block partitions, diagonal conjugacy, second-line conjugation, forward classification.
        #[arg(long)]
        lemmas: bool,
        /// Exhaustive subgroup probe for n = 2, 3.
        #[arg(long)]
        classify: bool,
        #[arg(long, value_parser = parse_case)]
        case: Option<CaseId>,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        line: Option<u8>,
        /// N or A..B inclusive.
        #[arg(long, value_parser = parse_range, default_value = "3..6")]
        n: RangeInclusive<usize>,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Group order, transitivity and generators.
    GroupInfo {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args, Debug)]
struct Target {
    #[arg(long, value_parser = parse_case)]
    case: CaseId,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    line: u8,
    #[arg(long)]
    n: usize,
}

impl Target {
    fn group_case(&self) -> Result<GroupCase, DnError> {
        GroupCase::new(self.case, self.line, self.n)
    }
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// Start the search at the closed-form value.
    #[arg(long)]
    use_theory: bool,
    #[arg(long)]
    budget_nodes: Option<u64>,
    #[arg(long, env = "DN_BUDGET_MS")]
    budget_ms: Option<u64>,
}

impl SearchArgs {
    fn options(&self) -> SolveOptions {
        let mut budget = Budget::default();
        if let Some(n) = self.budget_nodes {
            budget.max_nodes = n;
        }
        if let Some(ms) = self.budget_ms {
            budget.max_time = Duration::from_millis(ms);
        }
        SolveOptions {
            budget,
            use_theory: self.use_theory,
        }
    }
}

#[derive(Args, Debug)]
struct OutArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Construction,
}

fn parse_case(s: &str) -> Result<CaseId, String> {
    s.parse().map_err(|e: DnError| e.to_string())
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("invalid n {t:?}; expected N or A..B"))
    };
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(format!("empty range {a}..{b}"));
            }
            Ok(a..=b)
        }
        None => num(s).map(|n| n..=n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, DnError> {
    let stdout = std::io::stdout();
    match cli.command {
        Command::Exact {
            target,
            k,
            search,
            out,
        } => {
            let c = target.group_case()?;
            let opts = search.options();
            let mut em = Emitter::new(stdout.lock(), out.format);
            if let Some(k) = k {
                if k == 0 {
                    return Err(DnError::Parse("--k must be at least 1".into()));
                }
                let outcome = exists_distinguishing(&c, k, &opts.budget);
                em.exists(&c, k, &outcome)
            } else {
                let r = distinguishing_number(&c, &opts);
                em.dn_result(&r)?;
                Ok(r.value().is_some())
            }
        }
        Command::Construct { target, out } => {
            let c = target.group_case()?;
            let classes = construct_classes(&c);
            let p = Partition::from_classes(c.n(), &classes)?;
            let ok = p.num_colors() == claimed_dn(&c) && is_distinguishing(&c, &p);
            Emitter::new(stdout.lock(), out.format).construction(&c, &classes, &p, ok)?;
            Ok(ok)
        }
        Command::GroupInfo { target, out } => {
            let c = target.group_case()?;
            let g = c.build();
            let report = transitivity_report(&g.graph, &g.generators());
            Emitter::new(stdout.lock(), out.format).group_info(&c, &g, &report)?;
            Ok(true)
        }
        Command::Verify {
            table1,
            lemmas,
            classify,
            case,
            line,
            n,
            mode,
            search,
            format,
        } => {
            let reports = verify(table1, lemmas, classify, case, line, n, mode, &search)?;
            let mut em = Emitter::new(stdout.lock(), format);
            em.reports(&reports)?;
            Ok(reports.iter().all(|r| r.pass))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn verify(
    table1: bool,
    lemmas: bool,
    classify: bool,
    case: Option<CaseId>,
    line: Option<u8>,
    ns: RangeInclusive<usize>,
    mode: ModeArg,
    search: &SearchArgs,
) -> Result<Vec<Report>, DnError> {
    let mut reports = Vec::new();
    if table1 || !(lemmas || classify) {
        let mut cases: Vec<GroupCase> = ns
            .clone()
            .flat_map(GroupCase::all_at)
            .filter(|c| case.is_none_or(|x| c.case() == x))
            .filter(|c| line.is_none_or(|l| c.line() == l))
            .collect();
        if cases.is_empty() {
            if let Some(x) = case {
                // Surface the constraint that rules the request out.
                GroupCase::new(x, line.unwrap_or(1), *ns.start())?;
            }
            return Err(DnError::InvalidCase(format!(
                "no valid case in n = {}..{}",
                ns.start(),
                ns.end()
            )));
        }
        cases.sort();
        let mode = match mode {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Construction => Mode::ConstructionOnly,
        };
        let opts = search.options();
        reports.extend(
            cases
                .iter()
                .map(|c| verifier::verify_table_row(c, mode, &opts)),
        );
    }
    if lemmas {
        reports.extend(verifier::lemma_sweep());
    }
    if classify {
        reports.extend(
            ns.filter(|n| (2..=3).contains(n))
                .map(verifier::probe_report),
        );
    }
    Ok(reports)
}
