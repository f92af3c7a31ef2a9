//! Generation of the asprin program that computes counterfactuals or
//! semifactuals with an external ASP solver.
//!
//! The program is ground: `arg`/`att` facts for the framework, the stable
//! semantics encoding, one strong constraint on the goal and one weak rule
//! `w(a)` per non-goal argument, followed by the cardinality preference.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::af::{ArgumentationFramework, Labelling};
use crate::error::{Error, Result};
use crate::semantics::{verify_labelling, Semantics};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    Counterfactual,
    Semifactual,
}

impl FromStr for Task {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cf" => Ok(Task::Counterfactual),
            "sf" => Ok(Task::Semifactual),
            other => Err(Error::InvalidArgument(format!("unknown task `{other}` (expected cf or sf)"))),
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Task::Counterfactual => "cf",
            Task::Semifactual => "sf",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Section {
    Facts,
    Semantics,
    Strong,
    Weak,
    Preference,
}

impl Section {
    pub fn name(self) -> &'static str {
        match self {
            Section::Facts => "facts",
            Section::Semantics => "semantics",
            Section::Strong => "strong",
            Section::Weak => "weak",
            Section::Preference => "preference",
        }
    }
}

/// Maps argument ids to ASP constants, injectively.
///
/// Ids are lowercased. An id whose lowercase form is not a constant token
/// (`[a-z][a-z0-9_]*`, not `not`) or collides with an earlier one is
/// replaced by `a<index>` (with `_` appended until unused).
#[derive(Debug, Clone)]
pub struct NameMap {
    names: Vec<String>,
}

fn is_constant(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
        && s != "not"
}

impl NameMap {
    pub fn new(af: &ArgumentationFramework) -> Self {
        let mut used = HashSet::new();
        let mut names = Vec::with_capacity(af.len());
        for (i, arg) in af.arguments().iter().enumerate() {
            let lower = arg.as_str().to_lowercase();
            let name = if is_constant(&lower) && !used.contains(&lower) {
                lower
            } else {
                let mut fallback = format!("a{i}");
                while used.contains(&fallback) {
                    fallback.push('_');
                }
                fallback
            };
            used.insert(name.clone());
            names.push(name);
        }
        NameMap { names }
    }

    pub fn get(&self, arg: usize) -> &str {
        &self.names[arg]
    }

    /// Inverse lookup of an emitted constant.
    pub fn position(&self, constant: &str) -> Option<usize> {
        self.names.iter().position(|n| n == constant)
    }

    /// `% map` comment lines for every id that was changed.
    fn comments(&self, af: &ArgumentationFramework) -> Vec<String> {
        self.names
            .iter()
            .enumerate()
            .filter(|(i, n)| af.name(*i) != n.as_str())
            .map(|(i, n)| format!("% map {n} = {:?}", af.name(i)))
            .collect()
    }
}

/// `arg(x).` per argument, then `att(x,y).` per attack, in canonical order.
pub fn emit_facts(af: &ArgumentationFramework, names: &NameMap) -> Vec<String> {
    let args = (0..af.len()).map(|a| format!("arg({}).", names.get(a)));
    let atts = af
        .attacks()
        .iter()
        .map(|&(a, b)| format!("att({},{}).", names.get(a), names.get(b)));
    args.chain(atts).collect()
}

/// The stable-semantics encoding; no other semantics has one.
pub fn emit_semantics(sem: Semantics) -> Result<Vec<String>> {
    if sem != Semantics::Stable {
        return Err(Error::UnsupportedEncoding(sem.to_string()));
    }
    Ok([
        "in(X) :- not out(X), arg(X).",
        "out(X) :- not in(X), arg(X).",
        "defeated(X) :- in(Y), att(Y,X).",
        ":- in(X), in(Y), att(X,Y).",
        ":- out(X), not defeated(X).",
    ]
    .map(String::from)
    .to_vec())
}

fn atom(l: &Labelling, arg: usize, names: &NameMap) -> String {
    format!("{}({})", l.label(arg), names.get(arg))
}

/// The strong constraint on the goal and one weak rule per other argument.
pub fn emit_task_constraints(
    task: Task,
    l: &Labelling,
    goal: usize,
    names: &NameMap,
) -> (Vec<String>, Vec<String>) {
    let goal_atom = atom(l, goal, names);
    let strong = match task {
        Task::Counterfactual => format!(":- {goal_atom}."),
        Task::Semifactual => format!(":- not {goal_atom}."),
    };
    let weak = (0..l.len())
        .filter(|&a| a != goal)
        .map(|a| {
            let body = match task {
                Task::Counterfactual => format!("not {}", atom(l, a, names)),
                Task::Semifactual => atom(l, a, names),
            };
            format!("w({}) :- {body}.", names.get(a))
        })
        .collect();
    (vec![strong], weak)
}

pub fn emit_preference() -> Vec<String> {
    vec![
        "#preference(p,less(cardinality)){w(X) : arg(X)}.".to_string(),
        "#optimize(p).".to_string(),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AspProgram {
    header: Vec<String>,
    pub sections: Vec<(Section, Vec<String>)>,
}

impl AspProgram {
    pub fn section(&self, s: Section) -> &[String] {
        self.sections
            .iter()
            .find(|(name, _)| *name == s)
            .map(|(_, lines)| lines.as_slice())
            .unwrap_or(&[])
    }

    /// All rule lines, without comments.
    pub fn rules(&self) -> impl Iterator<Item = &str> {
        self.sections.iter().flat_map(|(_, l)| l.iter().map(String::as_str))
    }
}

impl fmt::Display for AspProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.header {
            writeln!(f, "{line}")?;
        }
        for (section, lines) in &self.sections {
            writeln!(f)?;
            writeln!(f, "% {}", section.name())?;
            for line in lines {
                writeln!(f, "{line}")?;
            }
        }
        Ok(())
    }
}

fn input_digest(af: &ArgumentationFramework, sem: Semantics, task: Task, l: &Labelling, goal: usize) -> String {
    let mut hasher = Sha256::new();
    hasher.update(af.to_tgf());
    hasher.update(format!("semantics={sem}\ntask={task}\ngoal={}\nlabelling=", af.name(goal)));
    hasher.update(l.display(af).to_string());
    hex::encode(hasher.finalize())
}

/// The full program for one explanation task.
pub fn emit_program(
    af: &ArgumentationFramework,
    sem: Semantics,
    task: Task,
    l: &Labelling,
    goal: usize,
) -> Result<AspProgram> {
    let semantics = emit_semantics(sem)?;
    if goal >= af.len() {
        return Err(Error::UnknownArgument(format!("#{goal}")));
    }
    if !verify_labelling(af, sem, l)? {
        return Err(Error::ReferenceNotALabelling(sem.to_string()));
    }
    let names = NameMap::new(af);
    let (strong, weak) = emit_task_constraints(task, l, goal, &names);
    let mut header = vec![
        "% generated-by af-explain".to_string(),
        format!("% input-digest sha256:{}", input_digest(af, sem, task, l, goal)),
    ];
    header.extend(names.comments(af));
    Ok(AspProgram {
        header,
        sections: vec![
            (Section::Facts, emit_facts(af, &names)),
            (Section::Semantics, semantics),
            (Section::Strong, strong),
            (Section::Weak, weak),
            (Section::Preference, emit_preference()),
        ],
    })
}
