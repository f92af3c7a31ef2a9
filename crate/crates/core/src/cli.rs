//! Query dispatch behind the `af-explain` binary.
//!
//! [`run`] takes fully-read inputs (file contents, not paths) so that every
//! failure, including malformed input, comes back as a categorized error
//! inside a [`StructuredOutput`].

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::af::{ArgumentationFramework, Label, Labelling};
use crate::asp::{emit_program, Task};
use crate::constraints::{cf_as_waf, mc_labellings, sf_as_waf, WeakConstrainedAF};
use crate::distance::{double_weight_measure, DistanceMeasure};
use crate::error::{Error, Result};
use crate::explain::{ExplanationQuery, GoalCriterion, GoalSpec};
use crate::formats::{parse_framework, parse_labelling, parse_weight_table, InputFormat};
use crate::semantics::{enumerate_labellings, LabellingSet, Semantics};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem {
    CfEx,
    CfVe,
    CfCa,
    CfSa,
    SfEx,
    SfVe,
    SfCa,
    SfSa,
}

impl Problem {
    pub fn name(self) -> &'static str {
        match self {
            Problem::CfEx => "cf-ex",
            Problem::CfVe => "cf-ve",
            Problem::CfCa => "cf-ca",
            Problem::CfSa => "cf-sa",
            Problem::SfEx => "sf-ex",
            Problem::SfVe => "sf-ve",
            Problem::SfCa => "sf-ca",
            Problem::SfSa => "sf-sa",
        }
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "cf-ex" => Problem::CfEx,
            "cf-ve" => Problem::CfVe,
            "cf-ca" => Problem::CfCa,
            "cf-sa" => Problem::CfSa,
            "sf-ex" => Problem::SfEx,
            "sf-ve" => Problem::SfVe,
            "sf-ca" => Problem::SfCa,
            "sf-sa" => Problem::SfSa,
            other => return Err(Error::InvalidArgument(format!("unknown problem `{other}`"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Labellings,
    Explain(Task),
    Decide(Problem),
    EmitAsp(Task),
    /// Maximum-cardinality labellings of a WAF read from a constraint file.
    Waf { constraints: String },
    /// Maximum-cardinality labellings of the WAF encoding of an explanation
    /// task for the goal and reference labelling.
    WafEncoding(Task),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Labellings => "labellings",
            Command::Explain(_) => "explain",
            Command::Decide(_) => "decide",
            Command::EmitAsp(_) => "emit-asp",
            Command::Waf { .. } | Command::WafEncoding(_) => "waf",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum MeasureSpec {
    #[default]
    Hamming,
    /// Decided-to-decided changes cost 2, changes involving `und` cost 1.
    DoubleUnd,
    /// Contents of a weight-table file.
    Weighted(String),
}

impl MeasureSpec {
    fn name(&self) -> &'static str {
        match self {
            MeasureSpec::Hamming => "hamming",
            MeasureSpec::DoubleUnd => "double-und",
            MeasureSpec::Weighted(_) => "weighted",
        }
    }

    fn build(&self, af: &ArgumentationFramework) -> Result<DistanceMeasure> {
        match self {
            MeasureSpec::Hamming => Ok(DistanceMeasure::Hamming),
            MeasureSpec::DoubleUnd => Ok(double_weight_measure(af)),
            MeasureSpec::Weighted(text) => parse_weight_table(text, af),
        }
    }
}

/// One query, with every input already read into memory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryRequest {
    pub command: Command,
    pub framework: String,
    pub format: InputFormat,
    pub semantics: Semantics,
    pub measure: MeasureSpec,
    pub goals: Vec<String>,
    pub criterion: GoalCriterion,
    /// Reference labelling text (JSON object or token list).
    pub labelling: Option<String>,
    /// Candidate labelling for the verification problems.
    pub candidate: Option<String>,
    pub k: Option<u64>,
    pub accept: Option<String>,
}

impl QueryRequest {
    pub fn new(command: Command, framework: impl Into<String>, format: InputFormat, semantics: Semantics) -> Self {
        QueryRequest {
            command,
            framework: framework.into(),
            format,
            semantics,
            measure: MeasureSpec::Hamming,
            goals: Vec::new(),
            criterion: GoalCriterion::Flip,
            labelling: None,
            candidate: None,
            k: None,
            accept: None,
        }
    }

    fn validate(&self) -> Result<()> {
        let missing = |what: &str| Err(Error::InvalidArgument(format!("`{}` needs {what}", self.command.name())));
        let needs_goal = !matches!(self.command, Command::Labellings | Command::Waf { .. });
        if needs_goal && self.goals.is_empty() {
            return missing("--goal");
        }
        if needs_goal && self.labelling.is_none() {
            return missing("--labelling");
        }
        if matches!(self.command, Command::EmitAsp(_) | Command::WafEncoding(_)) && self.goals.len() != 1 {
            return Err(Error::InvalidArgument(format!(
                "`{}` takes exactly one goal",
                self.command.name()
            )));
        }
        if let Command::Decide(p) = self.command {
            match p {
                Problem::CfEx | Problem::SfEx if self.k.is_none() => return missing("-k"),
                Problem::CfVe | Problem::SfVe if self.candidate.is_none() => return missing("--candidate"),
                Problem::CfCa | Problem::CfSa | Problem::SfCa | Problem::SfSa if self.accept.is_none() => {
                    return missing("--accept")
                }
                _ => {}
            }
        }
        Ok(())
    }

    fn echo(&self) -> QueryEcho {
        QueryEcho {
            command: self.command.name(),
            task: match self.command {
                Command::Explain(t) | Command::EmitAsp(t) | Command::WafEncoding(t) => Some(t.to_string()),
                _ => None,
            },
            problem: match self.command {
                Command::Decide(p) => Some(p.name()),
                _ => None,
            },
            semantics: self.semantics.short_name(),
            measure: self.measure.name(),
            goals: self.goals.clone(),
            criterion: self.criterion.to_string(),
            k: self.k,
            accept: self.accept.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QueryEcho {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub task: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub problem: Option<&'static str>,
    pub semantics: &'static str,
    pub measure: &'static str,
    pub goals: Vec<String>,
    pub criterion: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub accept: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorObject {
    pub category: &'static str,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

/// How `decide` answers map to exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExitCodeSemantics {
    /// `decide` exits 1 when the answer is yes, 0 when no.
    #[default]
    Answer,
    /// Every successful query exits 0.
    Status,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructuredOutput {
    pub status: Status,
    pub query: QueryEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorObject>,
    #[serde(skip)]
    human: String,
    #[serde(skip)]
    answer: Option<bool>,
}

impl StructuredOutput {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn human(&self) -> &str {
        &self.human
    }

    /// The boolean answer of a `decide` query.
    pub fn answer(&self) -> Option<bool> {
        self.answer
    }

    pub fn exit_code(&self, mode: ExitCodeSemantics) -> i32 {
        match (self.status, self.answer, mode) {
            (Status::Error, _, _) => 2,
            (Status::Ok, Some(true), ExitCodeSemantics::Answer) => 1,
            _ => 0,
        }
    }
}

/// `{"in":[..],"out":[..],"und":[..]}` with names in framework order.
pub fn labelling_json(af: &ArgumentationFramework, l: &Labelling) -> Value {
    let names = |label: Label| -> Vec<&str> { l.args_with(label).iter().map(|a| af.name(a)).collect() };
    json!({
        "in": names(Label::In),
        "out": names(Label::Out),
        "und": names(Label::Und),
    })
}

fn labellings_json(af: &ArgumentationFramework, set: &LabellingSet) -> Value {
    Value::Array(set.iter().map(|l| labelling_json(af, l)).collect())
}

fn labellings_human(af: &ArgumentationFramework, set: &LabellingSet) -> String {
    let mut out = String::new();
    for (i, l) in set.iter().enumerate() {
        let _ = writeln!(out, "L{}: {}", i + 1, l.display(af));
    }
    out
}

struct Outcome {
    result: Value,
    human: String,
    answer: Option<bool>,
}

/// Executes a query. Never panics on malformed input; failures are reported
/// as `status: error` with a category.
pub fn run(query: &QueryRequest) -> StructuredOutput {
    let echo = query.echo();
    match execute(query) {
        Ok(out) => StructuredOutput {
            status: Status::Ok,
            query: echo,
            result: Some(out.result),
            error: None,
            human: out.human,
            answer: out.answer,
        },
        Err(e) => StructuredOutput {
            status: Status::Error,
            query: echo,
            result: None,
            error: Some(ErrorObject {
                category: e.category().as_str(),
                message: e.to_string(),
            }),
            human: format!("error ({}): {e}\n", e.category().as_str()),
            answer: None,
        },
    }
}

fn execute(q: &QueryRequest) -> Result<Outcome> {
    q.validate()?;
    let af = parse_framework(&q.framework, q.format)?;
    match &q.command {
        Command::Labellings => {
            let set = enumerate_labellings(&af, q.semantics);
            Ok(Outcome {
                result: json!({ "count": set.len(), "labellings": labellings_json(&af, &set) }),
                human: format!("{} {} labelling(s)\n{}", set.len(), q.semantics, labellings_human(&af, &set)),
                answer: None,
            })
        }
        Command::Waf { constraints } => {
            let waf = WeakConstrainedAF::parse(af, constraints)?;
            Ok(waf_outcome(&waf, q.semantics))
        }
        Command::WafEncoding(task) => {
            let reference = parse_labelling(q.labelling.as_deref().unwrap_or_default(), &af)?;
            let goal = af.position(&q.goals[0])?;
            let waf = match task {
                Task::Counterfactual => cf_as_waf(&af, goal, &reference)?,
                Task::Semifactual => sf_as_waf(&af, goal, &reference)?,
            };
            Ok(waf_outcome(&waf, q.semantics))
        }
        Command::EmitAsp(task) => {
            let reference = parse_labelling(q.labelling.as_deref().unwrap_or_default(), &af)?;
            let goal = af.position(&q.goals[0])?;
            let program = emit_program(&af, q.semantics, *task, &reference, goal)?.to_string();
            Ok(Outcome {
                result: json!({ "program": program }),
                human: program,
                answer: None,
            })
        }
        Command::Explain(task) => {
            let measure = q.measure.build(&af)?;
            let query = explanation_query(q, &af, &measure)?;
            let res = match task {
                Task::Counterfactual => query.counterfactuals(),
                Task::Semifactual => query.semifactuals()?,
            };
            let human = format!(
                "{} {}(s) at distance {}\n{}",
                res.witnesses.len(),
                match task {
                    Task::Counterfactual => "counterfactual",
                    Task::Semifactual => "semifactual",
                },
                res.distance.map_or_else(|| "-".to_string(), |d| d.to_string()),
                labellings_human(&af, &res.witnesses)
            );
            Ok(Outcome {
                result: json!({
                    "task": task.to_string(),
                    "distance": res.distance,
                    "count": res.witnesses.len(),
                    "witnesses": labellings_json(&af, &res.witnesses),
                }),
                human,
                answer: None,
            })
        }
        Command::Decide(problem) => {
            let measure = q.measure.build(&af)?;
            let query = explanation_query(q, &af, &measure)?;
            let k = q.k.unwrap_or_default();
            let candidate = || parse_labelling(q.candidate.as_deref().unwrap_or_default(), &af);
            let accept = || af.position(q.accept.as_deref().unwrap_or_default());
            let answer = match problem {
                Problem::CfEx => query.cf_exists(k),
                Problem::SfEx => query.sf_exists(k)?,
                Problem::CfVe => query.cf_verify(&candidate()?)?,
                Problem::SfVe => query.sf_verify(&candidate()?)?,
                Problem::CfCa => query.cf_credulous(accept()?)?,
                Problem::CfSa => query.cf_skeptical(accept()?)?,
                Problem::SfCa => query.sf_credulous(accept()?)?,
                Problem::SfSa => query.sf_skeptical(accept()?)?,
            };
            Ok(Outcome {
                result: json!({ "problem": problem.name(), "answer": answer }),
                human: format!("{}\n", if answer { "YES" } else { "NO" }),
                answer: Some(answer),
            })
        }
    }
}

fn waf_outcome(waf: &WeakConstrainedAF, sem: Semantics) -> Outcome {
    let set = mc_labellings(waf, sem);
    let satisfied = set.iter().next().map(|l| waf.satisfied_weak(l));
    Outcome {
        result: json!({
            "count": set.len(),
            "satisfied_weak": satisfied,
            "weak_total": waf.weak.len(),
            "labellings": labellings_json(&waf.af, &set),
        }),
        human: format!(
            "{} maximum-cardinality {} labelling(s)\n{}",
            set.len(),
            sem,
            labellings_human(&waf.af, &set)
        ),
        answer: None,
    }
}

fn explanation_query<'a>(
    q: &QueryRequest,
    af: &'a ArgumentationFramework,
    measure: &'a DistanceMeasure,
) -> Result<ExplanationQuery<'a>> {
    if !q.semantics.is_multiple_status() {
        return Err(Error::UnsupportedSemantics(format!(
            "{} (the grounded labelling is unique, so it has no counterfactuals)",
            q.semantics
        )));
    }
    let reference = parse_labelling(q.labelling.as_deref().unwrap_or_default(), af)?;
    let goal = GoalSpec::from_names(af, &q.goals, q.criterion)?;
    ExplanationQuery::new(af, q.semantics, measure, goal, reference)
}
