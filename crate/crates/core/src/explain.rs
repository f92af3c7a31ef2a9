//! Counterfactual and semifactual explanations and their decision problems.
//!
//! A counterfactual of a reference labelling is a σ-labelling that changes
//! the status of every goal argument and is as close as possible to the
//! reference; a semifactual keeps every goal's status and is as far away as
//! possible. σ(Λ) is computed once per [`ExplanationQuery`] and scanned.

use std::fmt;
use std::str::FromStr;

use crate::af::{ArgumentationFramework, Label, Labelling};
use crate::distance::{distance, DistanceMeasure, DistanceValue};
use crate::error::{Error, Result};
use crate::semantics::{enumerate_labellings, verify_labelling, LabellingSet, Semantics};

/// How a counterfactual must change the status of the goals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GoalCriterion {
    /// Any different label.
    #[default]
    Flip,
    /// The new label is decided, and differs from the old one unless the old
    /// one was `und`.
    NonUnd,
}

impl FromStr for GoalCriterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "flip" => Ok(GoalCriterion::Flip),
            "non-und" => Ok(GoalCriterion::NonUnd),
            other => Err(Error::InvalidArgument(format!(
                "unknown goal criterion `{other}` (expected flip or non-und)"
            ))),
        }
    }
}

impl fmt::Display for GoalCriterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GoalCriterion::Flip => "flip",
            GoalCriterion::NonUnd => "non-und",
        })
    }
}

/// One or more goal arguments plus the status-change criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoalSpec {
    goals: Vec<usize>,
    criterion: GoalCriterion,
}

impl GoalSpec {
    pub fn new(goals: impl IntoIterator<Item = usize>, criterion: GoalCriterion) -> Result<Self> {
        let mut goals: Vec<usize> = goals.into_iter().collect();
        goals.sort_unstable();
        goals.dedup();
        if goals.is_empty() {
            return Err(Error::InvalidArgument("at least one goal argument is required".into()));
        }
        Ok(GoalSpec { goals, criterion })
    }

    pub fn single(goal: usize) -> Self {
        GoalSpec {
            goals: vec![goal],
            criterion: GoalCriterion::Flip,
        }
    }

    /// Resolves goal ids against `af`.
    pub fn from_names<S: AsRef<str>>(
        af: &ArgumentationFramework,
        names: &[S],
        criterion: GoalCriterion,
    ) -> Result<Self> {
        let goals = names
            .iter()
            .map(|n| af.position(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(goals, criterion)
    }

    pub fn goals(&self) -> &[usize] {
        &self.goals
    }

    pub fn criterion(&self) -> GoalCriterion {
        self.criterion
    }
}

/// Does `l2` change the status of every goal relative to `l`?
pub fn goal_changed(goal: &GoalSpec, l: &Labelling, l2: &Labelling) -> bool {
    goal.goals.iter().all(|&g| {
        let (old, new) = (l.label(g), l2.label(g));
        match goal.criterion {
            GoalCriterion::Flip => old != new,
            GoalCriterion::NonUnd => new != Label::Und && (old == Label::Und || new != old),
        }
    })
}

/// Does `l2` keep the status of every goal? The criterion is ignored.
pub fn goal_kept(goal: &GoalSpec, l: &Labelling, l2: &Labelling) -> bool {
    goal.goals.iter().all(|&g| l.label(g) == l2.label(g))
}

/// Optimal witnesses and their shared distance to the reference labelling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplanationResult {
    pub witnesses: LabellingSet,
    /// `None` exactly when there are no witnesses.
    pub distance: Option<DistanceValue>,
}

/// A validated explanation query over one framework, semantics, measure,
/// goal and reference labelling.
#[derive(Debug, Clone)]
pub struct ExplanationQuery<'a> {
    af: &'a ArgumentationFramework,
    semantics: Semantics,
    measure: &'a DistanceMeasure,
    goal: GoalSpec,
    reference: Labelling,
    labellings: LabellingSet,
}

impl<'a> ExplanationQuery<'a> {
    pub fn new(
        af: &'a ArgumentationFramework,
        semantics: Semantics,
        measure: &'a DistanceMeasure,
        goal: GoalSpec,
        reference: Labelling,
    ) -> Result<Self> {
        if !semantics.is_multiple_status() {
            return Err(Error::UnsupportedSemantics(semantics.to_string()));
        }
        if let Some(&g) = goal.goals.iter().find(|&&g| g >= af.len()) {
            return Err(Error::UnknownArgument(format!("#{g}")));
        }
        measure.check(af)?;
        if !verify_labelling(af, semantics, &reference)? {
            return Err(Error::ReferenceNotALabelling(semantics.to_string()));
        }
        Ok(ExplanationQuery {
            af,
            semantics,
            measure,
            goal,
            reference,
            labellings: enumerate_labellings(af, semantics),
        })
    }

    pub fn semantics(&self) -> Semantics {
        self.semantics
    }

    pub fn goal(&self) -> &GoalSpec {
        &self.goal
    }

    pub fn reference(&self) -> &Labelling {
        &self.reference
    }

    /// σ(Λ) for this query's framework and semantics.
    pub fn labellings(&self) -> &LabellingSet {
        &self.labellings
    }

    fn dist(&self, l: &Labelling) -> DistanceValue {
        distance(self.measure, &self.reference, l).expect("measure checked at construction")
    }

    fn require_flip(&self) -> Result<()> {
        if self.goal.criterion != GoalCriterion::Flip {
            return Err(Error::InvalidArgument(
                "the non-und criterion only applies to counterfactuals".into(),
            ));
        }
        Ok(())
    }

    fn check_candidate(&self, l2: &Labelling) -> Result<()> {
        self.af.check_labelling(l2)
    }

    fn check_arg(&self, arg: usize) -> Result<()> {
        if arg >= self.af.len() {
            return Err(Error::UnknownArgument(format!("#{arg}")));
        }
        Ok(())
    }

    fn optimal<P>(&self, keep: P, prefer_larger: bool) -> ExplanationResult
    where
        P: Fn(&Labelling) -> bool,
    {
        let scored: Vec<(DistanceValue, &Labelling)> = self
            .labellings
            .iter()
            .filter(|l| keep(l))
            .map(|l| (self.dist(l), l))
            .collect();
        let best = if prefer_larger {
            scored.iter().map(|(d, _)| *d).max()
        } else {
            scored.iter().map(|(d, _)| *d).min()
        };
        let witnesses = match best {
            Some(b) => scored
                .into_iter()
                .filter(|(d, _)| *d == b)
                .map(|(_, l)| l.clone())
                .collect(),
            None => LabellingSet::new(),
        };
        ExplanationResult {
            witnesses,
            distance: best,
        }
    }

    /// Closest σ-labellings changing the goal. Empty when none does.
    pub fn counterfactuals(&self) -> ExplanationResult {
        self.optimal(|l| goal_changed(&self.goal, &self.reference, l), false)
    }

    /// Farthest σ-labellings keeping the goal. Never empty: the reference
    /// itself keeps it.
    pub fn semifactuals(&self) -> Result<ExplanationResult> {
        self.require_flip()?;
        Ok(self.optimal(|l| goal_kept(&self.goal, &self.reference, l), true))
    }

    /// Is there a σ-labelling changing the goal within distance `k`?
    pub fn cf_exists(&self, k: DistanceValue) -> bool {
        self.labellings
            .iter()
            .any(|l| goal_changed(&self.goal, &self.reference, l) && self.dist(l) <= k)
    }

    /// Is there a σ-labelling keeping the goal at distance at least `k`?
    pub fn sf_exists(&self, k: DistanceValue) -> Result<bool> {
        self.require_flip()?;
        Ok(self
            .labellings
            .iter()
            .any(|l| goal_kept(&self.goal, &self.reference, l) && self.dist(l) >= k))
    }

    /// Is `l2` a counterfactual? Decided as: the goal changes, `l2` is a
    /// σ-labelling, and nothing changing the goal is strictly closer.
    pub fn cf_verify(&self, l2: &Labelling) -> Result<bool> {
        self.check_candidate(l2)?;
        if !goal_changed(&self.goal, &self.reference, l2)
            || !verify_labelling(self.af, self.semantics, l2)?
        {
            return Ok(false);
        }
        Ok(match self.dist(l2).checked_sub(1) {
            Some(closer) => !self.cf_exists(closer),
            None => true,
        })
    }

    /// Is `l2` a semifactual? The goal is kept, `l2` is a σ-labelling, and
    /// nothing keeping the goal is strictly farther.
    pub fn sf_verify(&self, l2: &Labelling) -> Result<bool> {
        self.require_flip()?;
        self.check_candidate(l2)?;
        if !goal_kept(&self.goal, &self.reference, l2)
            || !verify_labelling(self.af, self.semantics, l2)?
        {
            return Ok(false);
        }
        Ok(!self.sf_exists(self.dist(l2) + 1)?)
    }

    /// Is `arg` `in` in some counterfactual? False when there are none.
    pub fn cf_credulous(&self, arg: usize) -> Result<bool> {
        self.check_arg(arg)?;
        Ok(self
            .counterfactuals()
            .witnesses
            .iter()
            .any(|l| l.label(arg) == Label::In))
    }

    /// Is `arg` `in` in every counterfactual? True when there are none.
    pub fn cf_skeptical(&self, arg: usize) -> Result<bool> {
        self.check_arg(arg)?;
        Ok(self
            .counterfactuals()
            .witnesses
            .iter()
            .all(|l| l.label(arg) == Label::In))
    }

    pub fn sf_credulous(&self, arg: usize) -> Result<bool> {
        self.check_arg(arg)?;
        Ok(self
            .semifactuals()?
            .witnesses
            .iter()
            .any(|l| l.label(arg) == Label::In))
    }

    pub fn sf_skeptical(&self, arg: usize) -> Result<bool> {
        self.check_arg(arg)?;
        Ok(self
            .semifactuals()?
            .witnesses
            .iter()
            .all(|l| l.label(arg) == Label::In))
    }
}
