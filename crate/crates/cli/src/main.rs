use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rankweight::document::{AnyCode, CodeDocument, Coefficient, TowerDoc};
use rankweight::report::{self, Format};
use rankweight::verify::{self, CodeSource, Theorem, VerifyPlan};
use rankweight::weights::ReportOptions;
use rankweight::witness::{Strategy, DEFAULT_HEIGHT};
use rankweight::{parse_code_file, support, with_code, Error};

const EXIT_INPUT: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_INAPPLICABLE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "rankweight",
    version,
    about = "Rank supports and generalized rank weights of linear codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Auto,
    Constructive,
    Exhaustive,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremArg {
    Basics,
    Equivdef,
    Witness,
    Delsarte,
    Closure,
    Trace,
    All,
}

impl From<TheoremArg> for Theorem {
    fn from(t: TheoremArg) -> Self {
        match t {
            TheoremArg::Basics => Theorem::Basics,
            TheoremArg::Equivdef => Theorem::Equivdef,
            TheoremArg::Witness => Theorem::Witness,
            TheoremArg::Delsarte => Theorem::Delsarte,
            TheoremArg::Closure => Theorem::Closure,
            TheoremArg::Trace => Theorem::Trace,
            TheoremArg::All => Theorem::All,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Rank support, restriction, dual, closure and degeneracy of a code.
    Analyze {
        /// Code document (`-` for stdin).
        file: String,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Rank distance and the generalized rank weight hierarchy.
    Weights {
        file: String,
        /// Report only this row of the hierarchy.
        #[arg(long)]
        r: Option<usize>,
        /// Include the first minimizer of each definition.
        #[arg(long)]
        verbose: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Search for a codeword whose rank support is that of the whole code.
    Witness {
        file: String,
        #[arg(long, value_enum, default_value = "auto")]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_HEIGHT)]
        height: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Emit the dual code as a code document.
    Dual { file: String },
    /// Emit the closure as a code document.
    Closure { file: String },
    /// Check the property suites over a population of codes.
    Verify {
        /// Characteristic of the base field (0 for the rationals).
        #[arg(long = "char", requires = "ext_modulus")]
        characteristic: Option<u64>,
        #[arg(long, default_value_t = 1)]
        base_degree: u32,
        /// Base-field modulus, low-to-high, comma separated.
        #[arg(long, value_delimiter = ',')]
        base_modulus: Option<Vec<u64>>,
        /// Extension modulus, low-to-high, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        ext_modulus: Option<Vec<String>>,
        #[arg(long, default_value = "w")]
        generator_name: String,
        #[arg(long, default_value_t = 2)]
        max_n: usize,
        #[arg(long, value_enum, default_value = "all")]
        theorem: Vec<TheoremArg>,
        /// Check COUNT seeded random codes instead of every code.
        #[arg(long, value_name = "COUNT")]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads (defaults to RANKWEIGHT_WORKERS, then all cores).
        #[arg(long)]
        workers: Option<usize>,
        /// Lift the size guards on exhaustive runs.
        #[arg(long)]
        force: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
}

fn default_towers() -> Vec<TowerDoc> {
    [
        (2, vec![1, 1, 1]),
        (2, vec![1, 1, 0, 1]),
        (3, vec![1, 0, 1]),
    ]
    .into_iter()
    .map(|(p, f)| TowerDoc {
        characteristic: p,
        base_degree: 1,
        base_modulus: None,
        extension_modulus: f.into_iter().map(Coefficient::Int).collect(),
        generator_name: "w".into(),
    })
    .collect()
}

fn read_input(path: &str) -> Result<String, Error> {
    let mut text = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Error::Parse {
        location: path.to_string(),
        message: e.to_string(),
    })?;
    Ok(text)
}

fn load(path: &str) -> Result<AnyCode, Error> {
    parse_code_file(&read_input(path)?)
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::Inapplicable(_)
        | Error::InfiniteField
        | Error::InseparableTower
        | Error::StrategyInapplicable(_)
        | Error::SearchExhausted => EXIT_INAPPLICABLE,
        Error::EquivalenceViolation { .. } => EXIT_VERIFY,
        _ => EXIT_INPUT,
    }
}

fn run(cli: Cli) -> Result<(String, u8), Error> {
    match cli.command {
        Command::Analyze { file, format } => {
            let code = load(&file)?;
            let rep = with_code!(&code, c => report::analyze(c))?;
            Ok((rep.render(format.into()), 0))
        }
        Command::Weights {
            file,
            r,
            verbose,
            format,
        } => {
            let code = load(&file)?;
            let opts = ReportOptions {
                r,
                verbose,
                strategy: Strategy::Auto,
            };
            let rep = with_code!(&code, c => report::weights(c, opts))?;
            Ok((rep.render(format.into()), 0))
        }
        Command::Witness {
            file,
            strategy,
            seed,
            height,
            format,
        } => {
            let code = load(&file)?;
            let strategy = match strategy {
                StrategyArg::Auto => Strategy::Auto,
                StrategyArg::Constructive => Strategy::Constructive,
                StrategyArg::Exhaustive => Strategy::Exhaustive,
                StrategyArg::Random => Strategy::Random { seed, height },
            };
            let rep = with_code!(&code, c => report::witness(c, strategy))?;
            Ok((rep.render(format.into()), 0))
        }
        Command::Dual { file } => {
            let code = load(&file)?;
            let doc = with_code!(&code, c => CodeDocument::from_code(&support::dual(c)));
            Ok((doc.to_json(), 0))
        }
        Command::Closure { file } => {
            let code = load(&file)?;
            let doc = with_code!(&code, c => CodeDocument::from_code(&support::closure(c)));
            Ok((doc.to_json(), 0))
        }
        Command::Verify {
            characteristic,
            base_degree,
            base_modulus,
            ext_modulus,
            generator_name,
            max_n,
            theorem,
            random,
            seed,
            workers,
            force,
            format,
        } => {
            let towers = match characteristic {
                Some(p) => vec![TowerDoc {
                    characteristic: p,
                    base_degree,
                    base_modulus,
                    extension_modulus: ext_modulus
                        .unwrap_or_default()
                        .into_iter()
                        .map(|s| Coefficient::canonical(s.trim().to_string()))
                        .collect(),
                    generator_name,
                }],
                None => default_towers(),
            };
            let plan = VerifyPlan {
                towers,
                max_n,
                theorems: theorem.into_iter().map(Theorem::from).collect(),
                source: match random {
                    Some(count) => CodeSource::Random { count, seed },
                    None => CodeSource::Exhaustive,
                },
                force,
                workers,
            };
            let summary = verify::run_verify(&plan)?;
            let code = if summary.passed { 0 } else { EXIT_VERIFY };
            Ok((summary.render(format.into()), code))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
