//! Frameworks, labellings and the set-level predicates everything else is
//! built from.
//!
//! Arguments are addressed by their position in the framework's canonical
//! (insertion) order. Sets and labellings store positions, and names are only
//! resolved at the edges (parsing and reporting).

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Identifier of an argument: non-empty, no whitespace, case-sensitive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Argument(String);

impl Argument {
    pub fn new(id: impl Into<String>) -> Result<Self> {
        let id = id.into();
        if id.is_empty() {
            return Err(Error::InvalidArgument("argument id is empty".into()));
        }
        if id.chars().any(char::is_whitespace) {
            return Err(Error::InvalidArgument(format!(
                "argument id `{id}` contains whitespace"
            )));
        }
        Ok(Argument(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Argument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Status of an argument in a labelling. The derived order `In < Out < Und`
/// is the canonical serialization order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    In,
    Out,
    Und,
}

impl Label {
    pub const ALL: [Label; 3] = [Label::In, Label::Out, Label::Und];

    pub fn as_str(self) -> &'static str {
        match self {
            Label::In => "in",
            Label::Out => "out",
            Label::Und => "und",
        }
    }

    pub(crate) fn index(self) -> usize {
        self as usize
    }
}

impl std::str::FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "in" => Ok(Label::In),
            "out" => Ok(Label::Out),
            "und" => Ok(Label::Und),
            other => Err(Error::InvalidArgument(format!(
                "unknown label `{other}` (expected in, out or und)"
            ))),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A subset of a framework's arguments, stored as argument positions.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArgumentSet(BTreeSet<usize>);

impl ArgumentSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, arg: usize) -> bool {
        self.0.contains(&arg)
    }

    pub fn insert(&mut self, arg: usize) -> bool {
        self.0.insert(arg)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &ArgumentSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &ArgumentSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union(&self, other: &ArgumentSet) -> ArgumentSet {
        ArgumentSet(self.0.union(&other.0).copied().collect())
    }
}

impl FromIterator<usize> for ArgumentSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ArgumentSet(iter.into_iter().collect())
    }
}

/// A total assignment of labels to the arguments of one framework.
///
/// Labellings are immutable values; [`Labelling::with`] returns a modified
/// copy. The derived ordering compares label vectors lexicographically in
/// framework order, which is the canonical order of a labelling set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labelling {
    labels: Vec<Label>,
}

impl Labelling {
    pub fn from_labels(labels: Vec<Label>) -> Self {
        Labelling { labels }
    }

    pub fn uniform(len: usize, label: Label) -> Self {
        Labelling {
            labels: vec![label; len],
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Label of the argument at `arg`. Panics when out of range.
    pub fn label(&self, arg: usize) -> Label {
        self.labels[arg]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn with(&self, arg: usize, label: Label) -> Labelling {
        let mut labels = self.labels.clone();
        labels[arg] = label;
        Labelling { labels }
    }

    pub fn args_with(&self, label: Label) -> ArgumentSet {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, l)| **l == label)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn in_set(&self) -> ArgumentSet {
        self.args_with(Label::In)
    }

    pub fn out_set(&self) -> ArgumentSet {
        self.args_with(Label::Out)
    }

    pub fn und_set(&self) -> ArgumentSet {
        self.args_with(Label::Und)
    }

    /// The extension corresponding to this labelling, i.e. its `in` set.
    pub fn to_extension(&self) -> ArgumentSet {
        self.in_set()
    }

    /// Renders the labelling as `⟨{in}, {out}, {und}⟩` using argument names.
    pub fn display<'a>(&'a self, af: &'a ArgumentationFramework) -> LabellingDisplay<'a> {
        LabellingDisplay { labelling: self, af }
    }
}

pub struct LabellingDisplay<'a> {
    labelling: &'a Labelling,
    af: &'a ArgumentationFramework,
}

impl fmt::Display for LabellingDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, label) in Label::ALL.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let names: Vec<&str> = self
                .labelling
                .args_with(*label)
                .iter()
                .map(|a| self.af.name(a))
                .collect();
            write!(f, "{}={{{}}}", label, names.join(","))?;
        }
        Ok(())
    }
}

/// An abstract argumentation framework: arguments plus an attack relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArgumentationFramework {
    arguments: Vec<Argument>,
    index: HashMap<String, usize>,
    attacks: Vec<(usize, usize)>,
    attackers: Vec<Vec<usize>>,
    targets: Vec<Vec<usize>>,
}

impl Default for ArgumentationFramework {
    fn default() -> Self {
        FrameworkBuilder::new().build()
    }
}

/// Incremental constructor for [`ArgumentationFramework`].
#[derive(Debug, Default, Clone)]
pub struct FrameworkBuilder {
    arguments: Vec<Argument>,
    index: HashMap<String, usize>,
    attacks: Vec<(usize, usize)>,
    seen: HashSet<(usize, usize)>,
}

impl FrameworkBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an argument and returns its position. Duplicates are rejected.
    pub fn add_argument(&mut self, id: &str) -> Result<usize> {
        let arg = Argument::new(id)?;
        if self.index.contains_key(id) {
            return Err(Error::InvalidArgument(format!("duplicate argument `{id}`")));
        }
        let pos = self.arguments.len();
        self.index.insert(id.to_string(), pos);
        self.arguments.push(arg);
        Ok(pos)
    }

    pub fn has_argument(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    /// Adds an attack between two declared arguments. Repeating an attack is
    /// a no-op.
    pub fn add_attack(&mut self, attacker: &str, target: &str) -> Result<()> {
        let a = *self
            .index
            .get(attacker)
            .ok_or_else(|| Error::UnknownArgument(attacker.to_string()))?;
        let b = *self
            .index
            .get(target)
            .ok_or_else(|| Error::UnknownArgument(target.to_string()))?;
        if self.seen.insert((a, b)) {
            self.attacks.push((a, b));
        }
        Ok(())
    }

    pub fn build(self) -> ArgumentationFramework {
        let n = self.arguments.len();
        let mut attackers = vec![Vec::new(); n];
        let mut targets = vec![Vec::new(); n];
        for &(a, b) in &self.attacks {
            attackers[b].push(a);
            targets[a].push(b);
        }
        ArgumentationFramework {
            arguments: self.arguments,
            index: self.index,
            attacks: self.attacks,
            attackers,
            targets,
        }
    }
}

impl ArgumentationFramework {
    /// Builds a framework from argument ids and `(attacker, target)` pairs.
    pub fn new<S: AsRef<str>>(arguments: &[S], attacks: &[(S, S)]) -> Result<Self> {
        let mut builder = FrameworkBuilder::new();
        for a in arguments {
            builder.add_argument(a.as_ref())?;
        }
        for (a, b) in attacks {
            builder.add_attack(a.as_ref(), b.as_ref())?;
        }
        Ok(builder.build())
    }

    pub fn len(&self) -> usize {
        self.arguments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arguments.is_empty()
    }

    pub fn arguments(&self) -> &[Argument] {
        &self.arguments
    }

    /// Attacks in insertion order, as argument positions.
    pub fn attacks(&self) -> &[(usize, usize)] {
        &self.attacks
    }

    pub fn attackers(&self, arg: usize) -> &[usize] {
        &self.attackers[arg]
    }

    pub fn targets(&self, arg: usize) -> &[usize] {
        &self.targets[arg]
    }

    pub fn attacks_pair(&self, attacker: usize, target: usize) -> bool {
        self.targets[attacker].contains(&target)
    }

    pub fn name(&self, arg: usize) -> &str {
        self.arguments[arg].as_str()
    }

    pub fn position(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownArgument(id.to_string()))
    }

    /// Resolves a list of ids into a set.
    pub fn set<I, S>(&self, ids: I) -> Result<ArgumentSet>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        ids.into_iter().map(|id| self.position(id.as_ref())).collect()
    }

    pub fn all_arguments(&self) -> ArgumentSet {
        (0..self.len()).collect()
    }

    /// Builds a labelling from the `in` and `out` id lists; the rest is `und`.
    pub fn labelling<S: AsRef<str>>(&self, ins: &[S], outs: &[S]) -> Result<Labelling> {
        let mut labels = vec![Label::Und; self.len()];
        for id in ins {
            labels[self.position(id.as_ref())?] = Label::In;
        }
        for id in outs {
            let pos = self.position(id.as_ref())?;
            if labels[pos] == Label::In {
                return Err(Error::InvalidArgument(format!(
                    "argument `{}` is labelled both in and out",
                    id.as_ref()
                )));
            }
            labels[pos] = Label::Out;
        }
        Ok(Labelling::from_labels(labels))
    }

    pub fn check_set(&self, s: &ArgumentSet) -> Result<()> {
        match s.iter().find(|&a| a >= self.len()) {
            Some(a) => Err(Error::InvalidArgument(format!(
                "argument #{a} does not belong to the framework"
            ))),
            None => Ok(()),
        }
    }

    pub fn check_labelling(&self, l: &Labelling) -> Result<()> {
        if l.len() != self.len() {
            return Err(Error::FrameworkMismatch {
                expected: self.len(),
                found: l.len(),
            });
        }
        Ok(())
    }

    /// Arguments attacked by some member of `s`.
    pub fn defeated_set(&self, s: &ArgumentSet) -> Result<ArgumentSet> {
        self.check_set(s)?;
        Ok(s.iter().flat_map(|a| self.targets[a].iter().copied()).collect())
    }

    /// Arguments all of whose attackers are defeated by `s`.
    pub fn acceptable_set(&self, s: &ArgumentSet) -> Result<ArgumentSet> {
        let defeated = self.defeated_set(s)?;
        Ok(self.acceptable_given(&defeated))
    }

    fn acceptable_given(&self, defeated: &ArgumentSet) -> ArgumentSet {
        (0..self.len())
            .filter(|&a| self.attackers[a].iter().all(|&b| defeated.contains(b)))
            .collect()
    }

    pub fn is_conflict_free(&self, s: &ArgumentSet) -> Result<bool> {
        Ok(s.is_disjoint(&self.defeated_set(s)?))
    }

    pub fn is_admissible_set(&self, s: &ArgumentSet) -> Result<bool> {
        let defeated = self.defeated_set(s)?;
        Ok(s.is_disjoint(&defeated) && s.is_subset(&self.acceptable_given(&defeated)))
    }

    fn has_attacker_labelled(&self, l: &Labelling, arg: usize, label: Label) -> bool {
        self.attackers[arg].iter().any(|&b| l.label(b) == label)
    }

    fn all_attackers_labelled(&self, l: &Labelling, arg: usize, label: Label) -> bool {
        self.attackers[arg].iter().all(|&b| l.label(b) == label)
    }

    /// Legality: every `out` argument has an `in` attacker and every `in`
    /// argument has all attackers `out`. `und` arguments are unconstrained.
    pub fn is_legal_labelling(&self, l: &Labelling) -> Result<bool> {
        self.check_labelling(l)?;
        Ok((0..self.len()).all(|a| match l.label(a) {
            Label::In => self.all_attackers_labelled(l, a, Label::Out),
            Label::Out => self.has_attacker_labelled(l, a, Label::In),
            Label::Und => true,
        }))
    }

    /// Completeness: `out` iff some attacker is `in`, `in` iff all attackers
    /// are `out`, `und` otherwise.
    pub fn is_complete_labelling(&self, l: &Labelling) -> Result<bool> {
        self.check_labelling(l)?;
        Ok((0..self.len()).all(|a| l.label(a) == self.forced_label(l, a)))
    }

    /// The label the completeness conditions require for `arg` given its
    /// attackers' labels in `l`.
    pub(crate) fn forced_label(&self, l: &Labelling, arg: usize) -> Label {
        if self.has_attacker_labelled(l, arg, Label::In) {
            Label::Out
        } else if self.all_attackers_labelled(l, arg, Label::Out) {
            Label::In
        } else {
            Label::Und
        }
    }

    /// `⟨E, Def(E), A ∖ (E ∪ Def(E))⟩`.
    pub fn extension_to_labelling(&self, e: &ArgumentSet) -> Result<Labelling> {
        let defeated = self.defeated_set(e)?;
        let labels = (0..self.len())
            .map(|a| {
                if e.contains(a) {
                    Label::In
                } else if defeated.contains(a) {
                    Label::Out
                } else {
                    Label::Und
                }
            })
            .collect();
        Ok(Labelling::from_labels(labels))
    }

    pub fn labelling_to_extension(&self, l: &Labelling) -> Result<ArgumentSet> {
        self.check_labelling(l)?;
        Ok(l.to_extension())
    }

    /// Serializes to Trivial Graph Format.
    pub fn to_tgf(&self) -> String {
        let mut out = String::new();
        for a in &self.arguments {
            out.push_str(a.as_str());
            out.push('\n');
        }
        out.push_str("#\n");
        for &(a, b) in &self.attacks {
            out.push_str(&format!("{} {}\n", self.name(a), self.name(b)));
        }
        out
    }

    /// Serializes to ASPARTIX (`arg(x).` / `att(x,y).`) format.
    pub fn to_apx(&self) -> String {
        let mut out = String::new();
        for a in &self.arguments {
            out.push_str(&format!("arg({a}).\n"));
        }
        for &(a, b) in &self.attacks {
            out.push_str(&format!("att({},{}).\n", self.name(a), self.name(b)));
        }
        out
    }
}
