use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use af_explain::asp::Task;
use af_explain::cli::{run, Command, ExitCodeSemantics, MeasureSpec, Problem, QueryRequest};
use af_explain::explain::GoalCriterion;
use af_explain::formats::InputFormat;
use af_explain::semantics::Semantics;

#[derive(Parser)]
#[command(name = "af-explain", version, about = "Counterfactual and semifactual explanations for argumentation frameworks")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate the σ-labellings of a framework.
    Labellings {
        #[command(flatten)]
        common: Common,
    },
    /// Compute counterfactual or semifactual explanations.
    Explain {
        #[arg(long, value_enum)]
        task: TaskArg,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        goal: GoalArgs,
    },
    /// Answer one of the CF/SF decision problems.
    Decide {
        #[arg(long, value_enum)]
        problem: ProblemArg,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        goal: GoalArgs,
    },
    /// Print the asprin program for an explanation task (stable semantics).
    EmitAsp {
        #[arg(long, value_enum)]
        task: TaskArg,
        /// Write the program here instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        goal: GoalArgs,
    },
    /// Maximum-cardinality labellings of a weak-constrained framework.
    Waf {
        /// Constraint file with [strong] and [weak] sections.
        #[arg(long, conflicts_with = "task", required_unless_present = "task")]
        constraints: Option<PathBuf>,
        /// Use the WAF encoding of an explanation task instead of a file.
        #[arg(long, value_enum)]
        task: Option<TaskArg>,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        goal: GoalArgs,
    },
}

#[derive(Args)]
struct Common {
    /// Framework file (TGF or APX).
    framework: PathBuf,
    /// Input format; guessed from the extension when omitted.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long, short, default_value = "co")]
    semantics: String,
    /// Emit structured JSON output.
    #[arg(long)]
    json: bool,
    #[arg(long, value_enum, default_value = "answer")]
    exit_code_semantics: ExitArg,
}

#[derive(Args)]
struct GoalArgs {
    /// Goal argument; repeat for several goals.
    #[arg(long = "goal")]
    goals: Vec<String>,
    #[arg(long, default_value = "flip")]
    criterion: String,
    /// Reference labelling: a file, or inline JSON / `in(a) out(b)` tokens.
    #[arg(long)]
    labelling: Option<String>,
    /// Candidate labelling for cf-ve / sf-ve, same syntax as --labelling.
    #[arg(long)]
    candidate: Option<String>,
    /// `hamming`, `double-und` or `weighted=<file>`.
    #[arg(long, default_value = "hamming")]
    distance: String,
    #[arg(short)]
    k: Option<u64>,
    /// Second argument for the acceptance problems.
    #[arg(long)]
    accept: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TaskArg {
    Cf,
    Sf,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Tgf,
    Apx,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExitArg {
    Answer,
    Status,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    CfEx,
    CfVe,
    CfCa,
    CfSa,
    SfEx,
    SfVe,
    SfCa,
    SfSa,
}

impl From<TaskArg> for Task {
    fn from(t: TaskArg) -> Self {
        match t {
            TaskArg::Cf => Task::Counterfactual,
            TaskArg::Sf => Task::Semifactual,
        }
    }
}

impl From<ProblemArg> for Problem {
    fn from(p: ProblemArg) -> Self {
        match p {
            ProblemArg::CfEx => Problem::CfEx,
            ProblemArg::CfVe => Problem::CfVe,
            ProblemArg::CfCa => Problem::CfCa,
            ProblemArg::CfSa => Problem::CfSa,
            ProblemArg::SfEx => Problem::SfEx,
            ProblemArg::SfVe => Problem::SfVe,
            ProblemArg::SfCa => Problem::SfCa,
            ProblemArg::SfSa => Problem::SfSa,
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

/// A labelling argument is a file name when such a file exists, inline text
/// otherwise.
fn file_or_inline(value: &str) -> Result<String, String> {
    let path = Path::new(value);
    if path.is_file() {
        read(path)
    } else {
        Ok(value.to_string())
    }
}

fn measure(spec: &str) -> Result<MeasureSpec, String> {
    match spec {
        "hamming" => Ok(MeasureSpec::Hamming),
        "double-und" => Ok(MeasureSpec::DoubleUnd),
        other => match other.strip_prefix("weighted=") {
            Some(file) => Ok(MeasureSpec::Weighted(read(Path::new(file))?)),
            None => Err(format!("unknown distance `{other}`")),
        },
    }
}

struct Prepared {
    request: QueryRequest,
    json: bool,
    exit: ExitCodeSemantics,
    output: Option<PathBuf>,
}

fn prepare(cli: Cli) -> Result<Prepared, String> {
    let (command, common, goal, output) = match cli.command {
        Cmd::Labellings { common } => (Command::Labellings, common, None, None),
        Cmd::Explain { task, common, goal } => (Command::Explain(task.into()), common, Some(goal), None),
        Cmd::Decide { problem, common, goal } => (Command::Decide(problem.into()), common, Some(goal), None),
        Cmd::EmitAsp { task, output, common, goal } => (Command::EmitAsp(task.into()), common, Some(goal), output),
        Cmd::Waf { constraints, task, common, goal } => {
            let command = match (constraints, task) {
                (Some(path), _) => Command::Waf { constraints: read(&path)? },
                (None, Some(task)) => Command::WafEncoding(task.into()),
                (None, None) => return Err("waf needs --constraints or --task".into()),
            };
            (command, common, Some(goal), None)
        }
    };
    let format = match common.format {
        Some(FormatArg::Tgf) => InputFormat::Tgf,
        Some(FormatArg::Apx) => InputFormat::Apx,
        None => InputFormat::from_path(&common.framework.to_string_lossy()),
    };
    let semantics: Semantics = common.semantics.parse().map_err(|e: af_explain::Error| e.to_string())?;
    let mut request = QueryRequest::new(command, read(&common.framework)?, format, semantics);
    if let Some(goal) = goal {
        request.goals = goal.goals;
        request.criterion = goal
            .criterion
            .parse::<GoalCriterion>()
            .map_err(|e| e.to_string())?;
        request.labelling = goal.labelling.as_deref().map(file_or_inline).transpose()?;
        request.candidate = goal.candidate.as_deref().map(file_or_inline).transpose()?;
        request.measure = measure(&goal.distance)?;
        request.k = goal.k;
        request.accept = goal.accept;
    }
    Ok(Prepared {
        request,
        json: common.json,
        exit: match common.exit_code_semantics {
            ExitArg::Answer => ExitCodeSemantics::Answer,
            ExitArg::Status => ExitCodeSemantics::Status,
        },
        output,
    })
}

fn configure_threads() {
    if let Some(n) = std::env::var("AF_EXPLAIN_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            log::warn!("could not cap worker threads: {e}");
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    configure_threads();
    let cli = Cli::parse();
    let prepared = match prepare(cli) {
        Ok(p) => p,
        Err(message) => {
            eprintln!("error (parse): {message}");
            return ExitCode::from(2);
        }
    };
    let out = run(&prepared.request);
    let text = if prepared.json { out.to_json() + "\n" } else { out.human().to_string() };
    match (&prepared.output, out.error.is_none()) {
        (Some(path), true) if !prepared.json => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        (_, true) => print!("{text}"),
        (_, false) => {
            if prepared.json {
                print!("{text}");
            } else {
                eprint!("{text}");
            }
        }
    }
    ExitCode::from(out.exit_code(prepared.exit) as u8)
}
