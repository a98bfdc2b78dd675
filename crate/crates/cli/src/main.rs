//! `sqlab`: analyze texts, run lemma sweeps and bound experiments.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 property violation,
//! 3 budget exceeded.

mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sqlab_core::analysis::analyze;
use sqlab_core::bounds::{check_s_bound, fib_psq_series, fibonacci_word, psq_max_search, s_table};
use sqlab_core::lemmas::{exhaustive_verify, LemmaId, SweepConfig};
use sqlab_core::lyndon::lyndon_tree;
use sqlab_core::{Budget, Error, LexOrder, Partial, Text};

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_VIOLATION: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "sqlab",
    version,
    about = "Lyndon words, runs and primitively rooted squares"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Runs, L-roots, square occurrences and square prefixes of a text.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Exhaustively check one lemma over all strings up to a length.
    Verify {
        /// lemma1, lemma2, lemma3, lemma4, lemma6, cor1 or cor2
        lemma: LemmaArg,
        #[arg(long, default_value_t = 2)]
        sigma: usize,
        #[arg(long = "maxlen", default_value_t = 10)]
        max_len: usize,
        /// Longest w for the lemma 2 sweep (defaults to --maxlen).
        #[arg(long = "wmax")]
        w_max: Option<usize>,
        #[arg(long, value_enum, default_value_t = OrderArg::Both)]
        order: OrderArg,
        #[arg(long, env = "SQLAB_JOBS", default_value_t = 1)]
        jobs: usize,
        /// Enumerate every string instead of fixing the first symbol.
        #[arg(long)]
        no_canonical: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Lyndon tree of a text, as JSON or Graphviz DOT.
    Tree {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = OrderArg::Zero)]
        order: OrderArg,
        /// Same as --format dot.
        #[arg(long)]
        dot: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Bound experiments.
    Bounds {
        #[command(subcommand)]
        which: BoundsCommand,
    },
    /// Print the k-th Fibonacci word.
    Fibword {
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand, Debug)]
enum BoundsCommand {
    /// The S(n) recurrence against (n/2) log2 n.
    Sn {
        #[arg(long = "nmax", default_value_t = 1024)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Exhaustive psq maxima against n log2 n and n log_phi n.
    Psqmax {
        #[arg(long)]
        n: usize,
        /// Also search every length from --nmin up to --n.
        #[arg(long = "nmin")]
        n_min: Option<usize>,
        #[arg(long, default_value_t = 2)]
        sigma: usize,
        #[arg(long, env = "SQLAB_JOBS", default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// psq counts of Fibonacci words against the leading term.
    Fib {
        #[arg(long = "kmax", default_value_t = 20)]
        k_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Literal text, or a path with --file.
    input: String,
    /// Read the text from the file named by INPUT.
    #[arg(long)]
    file: bool,
    /// Map '0'/'1' to codes 0/1 instead of byte values.
    #[arg(long)]
    binary01: bool,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// Maximum number of input strings examined.
    #[arg(long = "budget-instances", value_parser = clap::value_parser!(u64).range(1..))]
    instances: Option<u64>,
    #[arg(long = "budget-seconds")]
    seconds: Option<f64>,
}

impl BudgetArgs {
    fn budget(&self) -> Result<Budget, String> {
        if self.seconds.is_some_and(|s| s.is_nan() || s <= 0.0) {
            return Err("--budget-seconds must be positive".into());
        }
        Ok(Budget {
            max_strings: self.instances,
            max_seconds: self.seconds,
        })
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LemmaArg {
    Lemma1,
    Lemma2,
    Lemma3,
    Lemma4,
    Lemma6,
    Cor1,
    Cor2,
}

impl From<LemmaArg> for LemmaId {
    fn from(arg: LemmaArg) -> Self {
        match arg {
            LemmaArg::Lemma1 => LemmaId::Lemma1,
            LemmaArg::Lemma2 => LemmaId::Lemma2,
            LemmaArg::Lemma3 => LemmaId::Lemma3,
            LemmaArg::Lemma4 => LemmaId::Lemma4,
            LemmaArg::Lemma6 => LemmaId::Lemma6,
            LemmaArg::Cor1 => LemmaId::Cor1,
            LemmaArg::Cor2 => LemmaId::Cor2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    #[value(name = "0")]
    Zero,
    #[value(name = "1")]
    One,
    Both,
}

impl OrderArg {
    fn orders(self) -> Vec<LexOrder> {
        match self {
            OrderArg::Zero => vec![LexOrder::Order0],
            OrderArg::One => vec![LexOrder::Order1],
            OrderArg::Both => LexOrder::BOTH.to_vec(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Dot,
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("sqlab: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn read_input(args: &InputArgs) -> Result<Text, String> {
    let raw = if args.file {
        let path = PathBuf::from(&args.input);
        let s = fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        s.trim_end_matches(['\n', '\r']).to_string()
    } else {
        args.input.clone()
    };
    let text = if args.binary01 {
        Text::from_binary01(&raw).map_err(|e| e.to_string())?
    } else {
        Text::from_ascii(&raw)
    };
    if text.is_empty() {
        return Err("empty input text".into());
    }
    Ok(text)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Analyze { input } => {
            let text = match read_input(&input) {
                Ok(t) => t,
                Err(e) => return fail(e),
            };
            let report = analyze(&text);
            output::print_json(&report);
            if report.psq_counts_agree() {
                ExitCode::from(EXIT_OK)
            } else {
                eprintln!("sqlab: psq counts disagree");
                ExitCode::from(EXIT_VIOLATION)
            }
        }
        Command::Verify {
            lemma,
            sigma,
            max_len,
            w_max,
            order,
            jobs,
            no_canonical,
            budget,
        } => {
            let budget = match budget.budget() {
                Ok(b) => b,
                Err(e) => return fail(e),
            };
            let cfg = SweepConfig {
                lemma: lemma.into(),
                sigma,
                max_len,
                w_max,
                orders: order.orders(),
                jobs,
                canonical: !no_canonical,
                budget,
            };
            match exhaustive_verify(&cfg) {
                Ok(report) => {
                    output::print_json(&report);
                    ExitCode::from(if report.holds() {
                        EXIT_OK
                    } else {
                        EXIT_VIOLATION
                    })
                }
                Err(Error::BudgetExceeded { reason, partial }) => {
                    if let Partial::Lemma(report) = partial {
                        output::print_json(&report);
                    }
                    eprintln!("sqlab: {reason}");
                    ExitCode::from(EXIT_BUDGET)
                }
                Err(e) => fail(e),
            }
        }
        Command::Tree {
            input,
            order,
            dot,
            format,
        } => {
            let text = match read_input(&input) {
                Ok(t) => t,
                Err(e) => return fail(e),
            };
            let trees: Vec<_> = order
                .orders()
                .into_iter()
                .map(|o| lyndon_tree(&text, o).expect("nonempty text"))
                .collect();
            match (dot, format) {
                (true, _) | (false, Format::Dot) => {
                    for tree in &trees {
                        output::emit(&tree.to_dot());
                    }
                }
                (false, Format::Json) => output::print_json(&output::tree_listing(&trees)),
                (false, Format::Tsv) => output::emit(&output::tree_tsv(&trees)),
            }
            ExitCode::from(EXIT_OK)
        }
        Command::Bounds { which } => bounds(which),
        Command::Fibword { k } => match fibonacci_word(k) {
            Ok(word) => {
                output::emit(&format!("{word}\n"));
                ExitCode::from(EXIT_OK)
            }
            Err(e @ Error::BudgetExceeded { .. }) => {
                eprintln!("sqlab: {e}");
                ExitCode::from(EXIT_BUDGET)
            }
            Err(e) => fail(e),
        },
    }
}

fn bounds(which: BoundsCommand) -> ExitCode {
    match which {
        BoundsCommand::Sn { n_max, format } => {
            let report = match s_table(n_max) {
                Ok(table) => check_s_bound(&table),
                Err(e) => return fail(e),
            };
            match format {
                Format::Tsv => output::emit(&output::sn_tsv(&report)),
                _ => output::print_json(&report),
            }
            ExitCode::from(if report.all_pass {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            })
        }
        BoundsCommand::Psqmax {
            n,
            n_min,
            sigma,
            jobs,
            budget,
            format,
        } => {
            let budget = match budget.budget() {
                Ok(b) => b,
                Err(e) => return fail(e),
            };
            let n_min = n_min.unwrap_or(n);
            if n_min == 0 || n_min > n {
                return fail("--nmin must be in 1..=n");
            }
            let mut reports = Vec::new();
            let mut code = EXIT_OK;
            for m in n_min..=n {
                match psq_max_search(m, sigma, jobs, &budget) {
                    Ok(r) => reports.push(r),
                    Err(Error::BudgetExceeded { reason, partial }) => {
                        if let Partial::Bound(r) = partial {
                            reports.push(*r);
                        }
                        eprintln!("sqlab: {reason}");
                        code = EXIT_BUDGET;
                        break;
                    }
                    Err(e) => return fail(e),
                }
            }
            match format {
                Format::Tsv => output::emit(&output::psq_tsv(&reports)),
                _ => output::print_json(&reports),
            }
            if reports.iter().any(|r| !r.bounds_hold()) {
                code = EXIT_VIOLATION;
            }
            ExitCode::from(code)
        }
        BoundsCommand::Fib { k_max, format } => {
            let series = match fib_psq_series(k_max) {
                Ok(s) => s,
                Err(e @ Error::BudgetExceeded { .. }) => {
                    eprintln!("sqlab: {e}");
                    return ExitCode::from(EXIT_BUDGET);
                }
                Err(e) => return fail(e),
            };
            match format {
                Format::Tsv => output::emit(&output::fib_tsv(&series)),
                _ => output::print_json(&output::fib_json(&series)),
            }
            let agree = series.iter().all(|r| r.counts_agree());
            ExitCode::from(if agree { EXIT_OK } else { EXIT_VIOLATION })
        }
    }
}
