//! `ica`: reports on cellular automata over finite groups.

mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ica_core::context::GroupData;
use ica_core::grammar::parse_group_with;
use ica_core::verify::Suite;
use ica_core::{Error, Limits};

use report::{Format, Report};

const EXIT_MISMATCH: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

fn defaults() -> Limits {
    Limits::default()
}

#[derive(Parser)]
#[command(name = "ica", version, about = "Structure, orders and rank bounds for invertible cellular automata over finite groups")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    /// Compute the report twice and fail with exit code 4 unless both renderings are byte-identical.
    #[arg(long, global = true)]
    assert_deterministic: bool,

    #[command(flatten)]
    caps: Caps,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Caps {
    /// Largest group order built from a spec.
    #[arg(long, global = true, default_value_t = defaults().max_group_order)]
    max_group_order: usize,
    /// Largest group whose subgroup lattice is enumerated.
    #[arg(long, global = true, default_value_t = defaults().max_lattice_order)]
    max_lattice_order: usize,
    /// Largest wreath product order accepted.
    #[arg(long, global = true, default_value_t = defaults().max_wreath_order)]
    max_wreath_order: usize,
    /// Largest configuration space q^|G| scanned by orbit enumeration.
    #[arg(long, global = true, default_value_t = defaults().max_states)]
    max_states: u64,
    /// Largest group handed to the exact rank search.
    #[arg(long, global = true, default_value_t = defaults().max_oracle_order)]
    max_oracle_order: usize,
    /// Time budget in seconds for one rank search.
    #[arg(long, global = true, default_value_t = defaults().rank_timeout.as_secs())]
    rank_timeout: u64,
    /// Largest q^|G| for brute-force enumeration of invertible automata.
    #[arg(long, global = true, default_value_t = defaults().max_ica_points)]
    max_ica_points: u64,
    /// Largest q^|G| for brute-force enumeration of all automata.
    #[arg(long, global = true, default_value_t = defaults().max_ca_points)]
    max_ca_points: u64,
    /// Largest number of local rules enumerated one by one.
    #[arg(long, global = true, default_value_t = defaults().max_ca_rules)]
    max_ca_rules: u64,
    /// Largest number of invertible automata listed explicitly.
    #[arg(long, global = true, default_value_t = defaults().max_listed_maps)]
    max_listed_maps: u64,
    /// Exact orders are printed up to this many decimal digits.
    #[arg(long, global = true, default_value_t = defaults().max_exact_digits)]
    max_exact_digits: u64,
}

impl Caps {
    fn limits(&self) -> Limits {
        Limits {
            max_group_order: self.max_group_order,
            max_lattice_order: self.max_lattice_order,
            max_wreath_order: self.max_wreath_order,
            max_states: self.max_states,
            max_oracle_order: self.max_oracle_order,
            rank_timeout: Duration::from_secs(self.rank_timeout),
            max_ica_points: self.max_ica_points,
            max_ca_points: self.max_ca_points,
            max_ca_rules: self.max_ca_rules,
            max_listed_maps: self.max_listed_maps,
            max_exact_digits: self.max_exact_digits,
        }
    }
}

#[derive(Args)]
struct GroupQ {
    /// Group spec, e.g. `C4`, `D6`, `S4`, `Q8`, `C2xC4`, `W(C2,3)`.
    group: String,
    /// Alphabet size.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..))]
    q: u32,
}

#[derive(Subcommand)]
enum Command {
    /// List every subgroup.
    Subgroups { group: String },
    /// Conjugacy classes of subgroups with normalizers and class counts.
    Classes { group: String },
    /// Orbit counts per subgroup class.
    Alpha {
        #[command(flatten)]
        args: GroupQ,
        /// Print one JSON object per orbit instead of the summary.
        #[arg(long)]
        dump_orbits: bool,
    },
    /// Wreath-product decomposition of the unit group.
    Structure {
        #[command(flatten)]
        args: GroupQ,
    },
    /// Orders of the unit group and of the full automaton monoid.
    Order {
        #[command(flatten)]
        args: GroupQ,
    },
    /// Lower and upper bounds on the rank of the unit group.
    Bounds {
        #[command(flatten)]
        args: GroupQ,
        /// Also compute the exact rank when the unit group is small enough.
        #[arg(long)]
        oracle: bool,
    },
    /// Exact rank of the group, or of its unit group when `--q` is given.
    Rank {
        group: String,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        q: Option<u32>,
    },
    /// Lower-bound sequence for an infinite group from its finite quotients.
    Diverge {
        /// `Z`, `Z^s`, `Z^2xC4xC9`, `Dinf` or `F<rank>`.
        family: String,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..))]
        q: u32,
        /// Number of stages.
        #[arg(long, default_value_t = 6)]
        k: usize,
    },
    /// Run the oracle-equivalence checks.
    Verify {
        #[arg(value_enum, default_value_t = SuiteArg::Fast)]
        suite: SuiteArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Fast,
    Heavy,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::InvalidArgument(_) => EXIT_PARSE,
        Error::CapExceeded { .. } | Error::Timeout => EXIT_CAP,
        _ => EXIT_INTERNAL,
    }
}

enum Output {
    Text(String),
    Verify(String, bool),
}

fn group_data(spec: &str, limits: &Limits) -> ica_core::Result<GroupData> {
    GroupData::new(parse_group_with(spec, limits)?, limits)
}

fn execute(cli: &Cli, limits: &Limits) -> ica_core::Result<Output> {
    let text = |r: Report| Output::Text(r.render(cli.format));
    Ok(match &cli.command {
        Command::Subgroups { group } => text(commands::subgroups(&group_data(group, limits)?)?),
        Command::Classes { group } => text(commands::classes(&group_data(group, limits)?)?),
        Command::Alpha { args, dump_orbits } => {
            let data = group_data(&args.group, limits)?;
            if *dump_orbits {
                Output::Text(commands::dump_orbits(&data, args.q)?)
            } else {
                text(commands::alpha(&data, args.q)?)
            }
        }
        Command::Structure { args } => text(commands::structure(&group_data(&args.group, limits)?, args.q)?),
        Command::Order { args } => text(commands::order(&group_data(&args.group, limits)?, args.q)?),
        Command::Bounds { args, oracle } => {
            text(commands::bounds(&group_data(&args.group, limits)?, args.q, *oracle)?)
        }
        Command::Rank { group, q } => text(commands::rank(&group_data(group, limits)?, *q, limits)?),
        Command::Diverge { family, q, k } => text(commands::diverge(family, *q, *k, limits)?),
        Command::Verify { suite } => {
            let suite = match suite {
                SuiteArg::Fast => Suite::Fast,
                SuiteArg::Heavy => Suite::Heavy,
            };
            let (report, outcomes) = commands::verify(suite, limits);
            for o in &outcomes {
                eprintln!("criterion {}: {:.2} s", o.id, o.elapsed.as_secs_f64());
                for f in &o.failures {
                    eprintln!("criterion {} counterexample: {f}", o.id);
                }
            }
            Output::Verify(report.render(cli.format), outcomes.iter().all(|o| o.passed))
        }
    })
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("ICA_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().map_err(|_| format!("ICA_THREADS must be a positive integer, got `{raw}`"))?;
    if n == 0 {
        return Err("ICA_THREADS must be a positive integer".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_PARSE);
    }
    let limits = cli.caps.limits();
    let first = match execute(&cli, &limits) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let (text, ok) = match first {
        Output::Text(t) => (t, true),
        Output::Verify(t, ok) => (t, ok),
    };
    if cli.assert_deterministic {
        let again = match execute(&cli, &limits) {
            Ok(Output::Text(t)) | Ok(Output::Verify(t, _)) => t,
            Err(e) => {
                eprintln!("error: second run failed: {e}");
                return ExitCode::from(EXIT_INTERNAL);
            }
        };
        if again != text {
            eprintln!("error: two runs produced different output");
            return ExitCode::from(EXIT_INTERNAL);
        }
    }
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
        return ExitCode::from(EXIT_INTERNAL);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_MISMATCH)
    }
}
