use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use crisscross::harness::analysis;
use crisscross::harness::count::{self, CountMode};
use crisscross::harness::format::ArrayFile;
use crisscross::harness::selftest::{self, SelftestConfig};
use crisscross::{fixtures, CodeParams, Error, MessageLengths};

const EXIT_VALIDATION: u8 = 2;
const EXIT_DECODE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "crisscross",
    version,
    about = "q-ary criss-cross deletion correcting array codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Alphabet size (a comma-separated list for `analyze`).
    #[arg(long, global = true, value_delimiter = ',')]
    q: Vec<u32>,

    /// Array dimension.
    #[arg(long, global = true)]
    n: Option<usize>,

    /// Allow encoding and recovery below the proven parameter range.
    #[arg(long, global = true)]
    allow_unproven_parameters: bool,

    /// Output format for `analyze`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Output file (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Base seed for `selftest`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Formula,
    Bruteforce,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a data file into an n×n codeword.
    Encode {
        #[arg(long)]
        data: PathBuf,
    },
    /// Delete one row and one column of an array.
    Corrupt {
        input: PathBuf,
        #[arg(long)]
        row: usize,
        #[arg(long)]
        col: usize,
    },
    /// Recover the codeword from a received array.
    Decode { input: PathBuf },
    /// Extract the data from a codeword.
    Recover { input: PathBuf },
    /// Tabulate message length and redundancy against the bounds.
    Analyze {
        #[arg(long)]
        n_min: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Exact code size.
    Count {
        #[arg(long, value_enum, default_value_t = ModeArg::Formula)]
        mode: ModeArg,
    },
    /// Check the embedded collision fixtures.
    VerifyFixtures,
    /// Run the randomised and exhaustive self-checks.
    Selftest {
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long)]
        exhaustive_small: bool,
    },
}

enum Failure {
    Validation(String),
    Decode(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_decode_failure() {
            Failure::Decode(e.to_string())
        } else {
            Failure::Validation(e.to_string())
        }
    }
}

type CliResult = Result<(), Failure>;

fn read_file(path: &Path) -> Result<ArrayFile, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Validation(format!("cannot read {}: {e}", path.display())))?;
    Ok(ArrayFile::parse(&text)?)
}

fn emit(out: &Option<PathBuf>, text: &str) -> CliResult {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Validation(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

impl Cli {
    fn single_q(&self) -> Result<Option<u32>, Failure> {
        match self.q.as_slice() {
            [] => Ok(None),
            [q] => Ok(Some(*q)),
            _ => Err(Failure::Validation("expected a single --q".into())),
        }
    }

    fn required_params(&self) -> Result<CodeParams, Failure> {
        let n = self
            .n
            .ok_or_else(|| Failure::Validation("--n is required".into()))?;
        let q = self
            .single_q()?
            .ok_or_else(|| Failure::Validation("--q is required".into()))?;
        Ok(CodeParams::new(n, q)?.allow_unproven_parameters(self.allow_unproven_parameters))
    }

    /// Parameters taken from a file, checked against any `--n`/`--q` given.
    fn file_params(&self, n: usize, q: u32) -> Result<CodeParams, Failure> {
        if let Some(expected) = self.n.filter(|&m| m != n) {
            return Err(Error::LengthMismatch {
                expected,
                actual: n,
            }
            .into());
        }
        if let Some(expected) = self.single_q()?.filter(|&r| r != q) {
            return Err(Error::AlphabetMismatch {
                expected,
                actual: q,
            }
            .into());
        }
        Ok(CodeParams::new(n, q)?.allow_unproven_parameters(self.allow_unproven_parameters))
    }

    fn run(&self) -> CliResult {
        match &self.command {
            Command::Encode { data } => self.encode(data),
            Command::Corrupt { input, row, col } => {
                let x = read_file(input)?.into_array()?;
                let y = crisscross::corrupt(&x, *row, *col)?;
                emit(&self.out, &ArrayFile::Received(y).to_json())
            }
            Command::Decode { input } => {
                let y = read_file(input)?.into_received()?;
                let p = self.file_params(y.n(), y.q())?;
                let x = crisscross::decode(&y, &p)?;
                emit(&self.out, &ArrayFile::Array(x).to_json())
            }
            Command::Recover { input } => {
                let x = read_file(input)?.into_array()?;
                let p = self.file_params(x.n(), x.q())?;
                let symbols = crisscross::recover_data(&x, &p)?;
                let file = ArrayFile::Data {
                    q: p.q(),
                    n: Some(p.n()),
                    symbols,
                };
                emit(&self.out, &file.to_json())
            }
            Command::Analyze { n_min, n_max } => self.analyze(*n_min, *n_max),
            Command::Count { mode } => self.count(*mode),
            Command::VerifyFixtures => self.verify_fixtures(),
            Command::Selftest {
                trials,
                exhaustive_small,
            } => self.selftest(*trials, *exhaustive_small),
        }
    }

    fn encode(&self, data: &Path) -> CliResult {
        let p = self.required_params()?;
        p.check_encodable()?;
        let (q, symbols) = read_file(data)?.into_data()?;
        if q != p.q() {
            return Err(Error::AlphabetMismatch {
                expected: p.q(),
                actual: q,
            }
            .into());
        }
        let expected = MessageLengths::new(&p)?.total;
        if symbols.len() != expected {
            return Err(Failure::Validation(format!(
                "data file holds {} symbols, the message length at n={} q={} is {expected}",
                symbols.len(),
                p.n(),
                p.q()
            )));
        }
        let x = crisscross::encode(&symbols, &p)?;
        emit(&self.out, &ArrayFile::Array(x).to_json())
    }

    fn analyze(&self, n_min: Option<usize>, n_max: Option<usize>) -> CliResult {
        let (lo, hi) = match (n_min, n_max, self.n) {
            (Some(lo), Some(hi), _) => (lo, hi),
            (Some(lo), None, _) => (lo, lo),
            (None, Some(hi), _) => (hi, hi),
            (None, None, Some(n)) => (n, n),
            (None, None, None) => {
                return Err(Failure::Validation("give --n or --n-min/--n-max".into()))
            }
        };
        if self.q.is_empty() {
            return Err(Failure::Validation("--q is required".into()));
        }
        let rows = analysis::sweep(lo, hi, &self.q, self.allow_unproven_parameters)?;
        let text = match self.format {
            Format::Table => analysis::to_table(&rows),
            Format::Csv => analysis::to_csv(&rows),
        };
        emit(&self.out, &text)?;
        match rows.iter().find(|r| !r.satisfies_bounds()) {
            Some(r) => Err(Failure::Decode(format!(
                "bounds violated at n={} q={}",
                r.n, r.q
            ))),
            None => Ok(()),
        }
    }

    fn count(&self, mode: ModeArg) -> CliResult {
        let p = self.required_params()?;
        let sizes = match mode {
            ModeArg::Formula => vec![count::count(&p, CountMode::Formula)?],
            ModeArg::Bruteforce => vec![count::count(&p, CountMode::BruteForce)?],
            ModeArg::Both => vec![
                count::count(&p, CountMode::Formula)?,
                count::count(&p, CountMode::BruteForce)?,
            ],
        };
        let text: String = sizes.iter().map(|s| format!("{s}\n")).collect();
        emit(&self.out, &text)?;
        if sizes.windows(2).any(|w| w[0].size != w[1].size) {
            return Err(Failure::Decode(
                "formula and brute-force counts disagree".into(),
            ));
        }
        Ok(())
    }

    fn verify_fixtures(&self) -> CliResult {
        let report = fixtures::verify_collision_fixtures()
            .map_err(|e| Failure::Decode(format!("fixture check failed: {e}")))?;
        let text = format!(
            "sum collision: pass, shared deletion result {:?}\nrow collision: pass, identical {}x{} deletion results\n",
            report.sum_collision.rows(),
            report.row_collision.size(),
            report.row_collision.size()
        );
        emit(&self.out, &text)
    }

    fn selftest(&self, trials: usize, exhaustive_small: bool) -> CliResult {
        let defaults = SelftestConfig::default();
        let cfg = SelftestConfig {
            n: self.n.unwrap_or(defaults.n),
            q: self.single_q()?.unwrap_or(defaults.q),
            trials,
            exhaustive_small,
            seed: self.seed,
            allow_unproven: self.allow_unproven_parameters,
            ..defaults
        };
        let report = selftest::run(&cfg)?;
        emit(&self.out, &format!("{report}\n"))?;
        if report.passed() {
            Ok(())
        } else {
            Err(Failure::Decode("selftest failed".into()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_VALIDATION)
        }
        Err(Failure::Decode(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DECODE)
        }
    }
}
