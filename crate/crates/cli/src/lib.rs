//! Command-line front end for `qmop-core`.
//!
//! [`run`] parses an argument list, performs the command and returns the
//! JSON it produced together with a [`Status`]. All JSON is canonical:
//! object keys sorted, no insignificant whitespace, rationals as `"p/q"`.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use qmop_core::exact::{format_ratio, Scalar};
use qmop_core::measurement::{
    decide_cmop, find_empty_ports, find_unobservable_mps, occurs_ever, sequence_probability,
};
use qmop_core::mortality::{bounded_mortality_search, decide_nonneg_mortality, DEFAULT_MAX_ELEMENTS};
use qmop_core::pcp::{check_encoding_correspondence, encode_pcp, solve_pcp_bounded};
use qmop_core::reduction::{build_kraus_from_mmp, compute_probability_gap};
use qmop_core::{
    ClassicalDevice, MmpInstance, MpsFamily, PcpInstance, QuantumDevice, RatMatrix, SearchLimits, State, Word,
};

pub mod schema;

/// Outcome class of a command, mapped onto the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// The question was answered, or the requested artifact was produced.
    Decided,
    /// A bounded search ran to its limit without settling anything.
    Inconclusive,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Decided => 0,
            Status::Inconclusive => 2,
            Status::Error => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommandResult {
    pub status: Status,
    /// The verdict or report. For errors this is
    /// `{"error": {"code": ..., "message": ...}}`; for `--help` it is the
    /// help text as a JSON string.
    pub payload: Value,
}

impl CommandResult {
    fn ok(payload: Value) -> Self {
        CommandResult { status: Status::Decided, payload }
    }

    fn inconclusive(payload: Value) -> Self {
        CommandResult { status: Status::Inconclusive, payload }
    }

    fn error(e: &CliError) -> Self {
        CommandResult {
            status: Status::Error,
            payload: json!({ "error": { "code": e.code, "message": e.message } }),
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    /// Text to print: canonical JSON, or the raw text for help output.
    pub fn render(&self) -> String {
        match &self.payload {
            Value::String(s) => s.clone(),
            v => v.to_string(),
        }
    }
}

/// Error with a stable machine-readable code.
#[derive(Debug, Clone)]
struct CliError {
    code: &'static str,
    message: String,
}

impl CliError {
    fn new(code: &'static str, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }
}

impl From<qmop_core::Error> for CliError {
    fn from(e: qmop_core::Error) -> Self {
        CliError::new(e.code(), e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "qmop", about = "Exact matrix mortality, measurement occurrence and PCP encoding tools")]
#[command(disable_version_flag = true)]
struct Cli {
    /// Print the version as JSON.
    #[arg(long)]
    version: bool,
    /// Print the JSON schema of a document kind
    /// (matrix, mmp, device, certificate, cdev, mps, pcp).
    #[arg(long, value_name = "KIND")]
    schema: Option<String>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide or search for a zero product of a matrix set.
    Mortal(MortalArgs),
    /// Build the 9-outcome, 15-dimensional device from 8 integer 3x3 matrices.
    Reduce(ReduceArgs),
    /// Outcome-sequence probabilities and empty ports of a quantum device.
    #[command(subcommand)]
    Simulate(SimulateCommand),
    /// Classical column-stochastic devices.
    #[command(subcommand)]
    Cmop(CmopCommand),
    /// Matrix-product families with boundaries e_1.
    #[command(subcommand)]
    Mps(MpsCommand),
    /// Post correspondence instances and their matrix encoding.
    #[command(subcommand)]
    Pcp(PcpCommand),
}

#[derive(Args, Debug)]
struct Limits {
    /// Cap on distinct elements or stored words a search may hold.
    #[arg(long, default_value_t = DEFAULT_MAX_ELEMENTS)]
    max_elements: usize,
}

impl Limits {
    fn get(&self) -> SearchLimits {
        SearchLimits { max_elements: self.max_elements }
    }
}

#[derive(Args, Debug)]
struct MortalArgs {
    #[arg(long)]
    input: PathBuf,
    /// Use the complete decider for entrywise non-negative matrices.
    #[arg(long)]
    nonneg: bool,
    /// Longest word the bounded search tries (ignored with --nonneg).
    #[arg(long, default_value_t = 8)]
    max_depth: usize,
    #[command(flatten)]
    limits: Limits,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    #[arg(long)]
    input: PathBuf,
    /// Where to write the device; printed to stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write the full construction certificate here.
    #[arg(long)]
    certificate: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum SimulateCommand {
    /// Exact probability of an outcome sequence.
    Prob {
        #[arg(long)]
        device: PathBuf,
        /// Comma-separated outcomes in time order, e.g. 1,9,2.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// `mixed` or `factor:G.json` for the state G†G / tr(G†G).
        #[arg(long, default_value = "mixed")]
        state: String,
    },
    /// Minimal never-observed outcome sequences up to a depth.
    EmptyPorts {
        #[arg(long)]
        device: PathBuf,
        #[arg(long)]
        max_depth: usize,
        #[command(flatten)]
        limits: Limits,
    },
}

#[derive(Subcommand, Debug)]
enum CmopCommand {
    /// Decide whether a classical device has an empty port.
    Decide {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        limits: Limits,
    },
}

#[derive(Subcommand, Debug)]
enum MpsCommand {
    /// Outcome words with zero amplitude up to a depth.
    Search {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        max_depth: usize,
        #[command(flatten)]
        limits: Limits,
    },
}

#[derive(Subcommand, Debug)]
enum PcpCommand {
    /// Write the 3x3 matrix instance encoding a PCP instance.
    Encode {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compare solutions with zero corners of the encoded products.
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        max_len: usize,
    },
    /// Search for a solution of bounded length.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        max_len: usize,
    },
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp => {
                    CommandResult::ok(Value::String(e.render().to_string()))
                }
                _ => CommandResult::error(&CliError::new("usage", e.render().to_string().trim_end())),
            };
        }
    };
    dispatch(cli).unwrap_or_else(|e| CommandResult::error(&e))
}

fn dispatch(cli: Cli) -> CliResult<CommandResult> {
    if cli.version {
        return Ok(CommandResult::ok(json!({ "name": "qmop", "version": env!("CARGO_PKG_VERSION") })));
    }
    if let Some(kind) = &cli.schema {
        let s = schema::schema(kind)
            .ok_or_else(|| CliError::new("usage", format!("unknown schema kind {kind:?}; expected one of {}", schema::KINDS.join(", "))))?;
        return Ok(CommandResult::ok(s));
    }
    let Some(command) = cli.command else {
        return Err(CliError::new("usage", "no subcommand given; try --help"));
    };
    match command {
        Command::Mortal(a) => mortal(a),
        Command::Reduce(a) => reduce(a),
        Command::Simulate(SimulateCommand::Prob { device, word, state }) => simulate_prob(&device, &word, &state),
        Command::Simulate(SimulateCommand::EmptyPorts { device, max_depth, limits }) => {
            let device: QuantumDevice = read_json(&device)?;
            // The report lists every empty port up to max_depth, so it is a
            // complete answer to the bounded question even when empty.
            let report = find_empty_ports(&device, max_depth, limits.get())?;
            Ok(CommandResult::ok(to_value(&report)?))
        }
        Command::Cmop(CmopCommand::Decide { input, limits }) => {
            let cdev: ClassicalDevice = read_json(&input)?;
            Ok(CommandResult::ok(to_value(&decide_cmop(&cdev, limits.get())?)?))
        }
        Command::Mps(MpsCommand::Search { input, max_depth, limits }) => {
            let fam: MpsFamily = read_json(&input)?;
            let report = find_unobservable_mps(&fam, max_depth, limits.get())?;
            Ok(CommandResult::ok(to_value(&report)?))
        }
        Command::Pcp(cmd) => pcp(cmd),
    }
}

fn with_status(decided: bool, payload: Value) -> CommandResult {
    if decided {
        CommandResult::ok(payload)
    } else {
        CommandResult::inconclusive(payload)
    }
}

fn mortal(a: MortalArgs) -> CliResult<CommandResult> {
    let inst: MmpInstance = read_json(&a.input)?;
    let verdict = if a.nonneg {
        decide_nonneg_mortality(&inst, a.limits.get())?
    } else {
        bounded_mortality_search(&inst, a.max_depth, a.limits.get())?
    };
    Ok(with_status(verdict.is_decided(), to_value(&verdict)?))
}

fn reduce(a: ReduceArgs) -> CliResult<CommandResult> {
    let inst: MmpInstance = read_json(&a.input)?;
    let cert = build_kraus_from_mmp(&inst)?;
    if let Some(path) = &a.certificate {
        write_json(path, &cert)?;
    }
    let Some(out) = &a.output else {
        return Ok(CommandResult::ok(to_value(&cert.device)?));
    };
    write_json(out, &cert.device)?;
    let gap = compute_probability_gap(&cert.device);
    Ok(CommandResult::ok(json!({
        "c": cert.c.to_json(),
        "delta": format_ratio(&gap.delta),
        "dim": cert.device.dim(),
        "outcomes": cert.device.outcomes(),
    })))
}

fn simulate_prob(device: &Path, word: &str, state: &str) -> CliResult<CommandResult> {
    let device: QuantumDevice = read_json(device)?;
    let word: Word = word.parse()?;
    let state = if state == "mixed" {
        State::maximally_mixed(device.dim())?
    } else if let Some(path) = state.strip_prefix("factor:") {
        let g: RatMatrix = read_json(Path::new(path))?;
        State::from_factor(&g)?
    } else {
        return Err(CliError::new("usage", format!("--state must be `mixed` or `factor:FILE`, got {state:?}")));
    };
    let p = sequence_probability(&device, &word, &state)?;
    Ok(CommandResult::ok(json!({
        "occurs_ever": occurs_ever(&device, &word)?,
        "probability": format_ratio(&p),
        "word": to_value(&word)?,
    })))
}

fn pcp(cmd: PcpCommand) -> CliResult<CommandResult> {
    match cmd {
        PcpCommand::Encode { input, output } => {
            let p: PcpInstance = read_json(&input)?;
            let inst = encode_pcp(&p)?;
            let Some(out) = output else {
                return Ok(CommandResult::ok(to_value(&inst)?));
            };
            write_json(&out, &inst)?;
            let mut labels: Vec<String> = p.alphabet().iter().map(|a| format!("X_{a}")).collect();
            labels.extend(p.alphabet().iter().map(|a| format!("Y_{a}")));
            labels.push("B".into());
            Ok(CommandResult::ok(json!({ "dim": inst.dim(), "generators": labels })))
        }
        PcpCommand::Check { input, max_len } => {
            let p: PcpInstance = read_json(&input)?;
            Ok(CommandResult::ok(to_value(&check_encoding_correspondence(&p, max_len)?)?))
        }
        PcpCommand::Solve { input, max_len } => {
            let p: PcpInstance = read_json(&input)?;
            Ok(match solve_pcp_bounded(&p, max_len) {
                Some(w) => CommandResult::ok(json!({
                    "image": p.apply_h(&w),
                    "max_len": max_len,
                    "mortality_word": to_value(&p.mortality_word(&w))?,
                    "solution": p.spell(&w),
                })),
                None => CommandResult::inconclusive(json!({ "max_len": max_len, "solution": null })),
            })
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> CliResult<Value> {
    serde_json::to_value(v).map_err(|e| CliError::new("internal", e.to_string()))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::new("io", format!("cannot read {}: {e}", path.display())))?;
    parse_json(&text).map_err(|e| CliError::new(e.code, format!("{}: {}", path.display(), e.message)))
}

/// Parses a document, telling malformed JSON apart from well-formed JSON
/// that does not fit the expected shape.
fn parse_json<T: DeserializeOwned>(text: &str) -> CliResult<T> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::new("malformed-json", e.to_string()))?;
    serde_json::from_value(value).map_err(|e| CliError::new("schema-violation", e.to_string()))
}

fn write_json<T: Serialize>(path: &Path, v: &T) -> CliResult<()> {
    let mut text = to_value(v)?.to_string();
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::new("io", format!("cannot write {}: {e}", path.display())))
}
