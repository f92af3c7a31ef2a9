//! Enumeration of σ-labellings and the classical decision problems.
//!
//! Complete labellings are found by backtracking over arguments in canonical
//! order. After each assignment the completeness conditions of the assigned
//! argument and of everything it attacks are re-checked against the partial
//! assignment, so a branch is cut as soon as one of them can no longer hold.
//! Preferred and semi-stable labellings are the complete ones that are
//! ⊆-maximal on `in` and on `in ∪ out` respectively.

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use rayon::prelude::*;

use crate::af::{ArgumentSet, ArgumentationFramework, Label, Labelling};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Semantics {
    Grounded,
    Complete,
    Stable,
    Preferred,
    SemiStable,
}

impl Semantics {
    pub const ALL: [Semantics; 5] = [
        Semantics::Grounded,
        Semantics::Complete,
        Semantics::Stable,
        Semantics::Preferred,
        Semantics::SemiStable,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            Semantics::Grounded => "gr",
            Semantics::Complete => "co",
            Semantics::Stable => "st",
            Semantics::Preferred => "pr",
            Semantics::SemiStable => "sst",
        }
    }

    /// Whether the semantics may admit more than one labelling.
    pub fn is_multiple_status(self) -> bool {
        self != Semantics::Grounded
    }
}

impl FromStr for Semantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gr" | "grounded" => Ok(Semantics::Grounded),
            "co" | "complete" => Ok(Semantics::Complete),
            "st" | "stable" => Ok(Semantics::Stable),
            "pr" | "preferred" => Ok(Semantics::Preferred),
            "sst" | "semi-stable" | "semistable" => Ok(Semantics::SemiStable),
            other => Err(Error::InvalidArgument(format!("unknown semantics `{other}`"))),
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

/// Duplicate-free labellings of one framework in canonical order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LabellingSet(Vec<Labelling>);

impl LabellingSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Labelling> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Labelling] {
        &self.0
    }

    pub fn contains(&self, l: &Labelling) -> bool {
        self.0.binary_search(l).is_ok()
    }

    pub fn is_subset(&self, other: &LabellingSet) -> bool {
        self.0.iter().all(|l| other.contains(l))
    }

    pub fn into_vec(self) -> Vec<Labelling> {
        self.0
    }
}

impl FromIterator<Labelling> for LabellingSet {
    fn from_iter<I: IntoIterator<Item = Labelling>>(iter: I) -> Self {
        let mut v: Vec<Labelling> = iter.into_iter().collect();
        v.sort();
        v.dedup();
        LabellingSet(v)
    }
}

impl<'a> IntoIterator for &'a LabellingSet {
    type Item = &'a Labelling;
    type IntoIter = std::slice::Iter<'a, Labelling>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl IntoIterator for LabellingSet {
    type Item = Labelling;
    type IntoIter = std::vec::IntoIter<Labelling>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

/// Allowed labels per argument, as a bitmask over `Label::index`.
type Domain = u8;
const ANY: Domain = 0b111;

fn allows(domain: Domain, label: Label) -> bool {
    domain & (1 << label.index()) != 0
}

/// Frameworks below this size are searched on the calling thread.
const PARALLEL_THRESHOLD: usize = 14;
const SPLIT_DEPTH: usize = 3;

struct CompleteSearch<'a> {
    af: &'a ArgumentationFramework,
    domains: &'a [Domain],
    assign: Vec<Option<Label>>,
}

impl<'a> CompleteSearch<'a> {
    fn new(af: &'a ArgumentationFramework, domains: &'a [Domain]) -> Self {
        CompleteSearch {
            af,
            domains,
            assign: vec![None; af.len()],
        }
    }

    /// Can `arg`'s completeness condition still hold under the partial
    /// assignment?
    fn consistent(&self, arg: usize) -> bool {
        let Some(label) = self.assign[arg] else {
            return true;
        };
        let mut some_in = false;
        let mut all_out = true;
        let mut open = false;
        for &b in self.af.attackers(arg) {
            match self.assign[b] {
                Some(Label::In) => some_in = true,
                Some(Label::Out) => {}
                Some(Label::Und) => all_out = false,
                None => {
                    open = true;
                    all_out = false;
                }
            }
        }
        match label {
            // every attacker must end up out
            Label::In => !some_in && self.af.attackers(arg).iter().all(|&b| {
                self.assign[b] != Some(Label::Und)
            }),
            Label::Out => some_in || open,
            // no attacker in, and not all attackers out
            Label::Und => !some_in && !all_out,
        }
    }

    fn assign_ok(&self, arg: usize) -> bool {
        self.consistent(arg) && self.af.targets(arg).iter().all(|&t| self.consistent(t))
    }

    fn run<F>(&mut self, depth: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(Labelling) -> ControlFlow<()>,
    {
        if depth == self.af.len() {
            let labels = self.assign.iter().map(|l| l.expect("assigned")).collect();
            return visit(Labelling::from_labels(labels));
        }
        for label in Label::ALL {
            if !allows(self.domains[depth], label) {
                continue;
            }
            self.assign[depth] = Some(label);
            if self.assign_ok(depth) {
                self.run(depth + 1, visit)?;
            }
        }
        self.assign[depth] = None;
        ControlFlow::Continue(())
    }

    /// Consistent partial assignments of the first `depth` arguments.
    fn prefixes(&mut self, depth: usize, at: usize, out: &mut Vec<Vec<Option<Label>>>) {
        if at == depth {
            out.push(self.assign.clone());
            return;
        }
        for label in Label::ALL {
            if !allows(self.domains[at], label) {
                continue;
            }
            self.assign[at] = Some(label);
            if self.assign_ok(at) {
                self.prefixes(depth, at + 1, out);
            }
        }
        self.assign[at] = None;
    }
}

/// Visits complete labellings whose labels lie in `domains`, stopping early
/// when `visit` breaks. Sequential; the visiting order is canonical.
fn search_complete<F>(af: &ArgumentationFramework, domains: &[Domain], mut visit: F)
where
    F: FnMut(Labelling) -> ControlFlow<()>,
{
    let _ = CompleteSearch::new(af, domains).run(0, &mut visit);
}

fn all_complete(af: &ArgumentationFramework) -> Vec<Labelling> {
    let domains = vec![ANY; af.len()];
    if af.len() < PARALLEL_THRESHOLD {
        let mut found = Vec::new();
        search_complete(af, &domains, |l| {
            found.push(l);
            ControlFlow::Continue(())
        });
        return found;
    }
    let mut prefixes = Vec::new();
    CompleteSearch::new(af, &domains).prefixes(SPLIT_DEPTH, 0, &mut prefixes);
    let mut found: Vec<Labelling> = prefixes
        .into_par_iter()
        .flat_map_iter(|prefix| {
            let mut search = CompleteSearch::new(af, &domains);
            search.assign = prefix;
            let mut part = Vec::new();
            let _ = search.run(SPLIT_DEPTH, &mut |l| {
                part.push(l);
                ControlFlow::Continue(())
            });
            part
        })
        .collect();
    found.sort();
    found
}

/// The grounded labelling: least fixpoint of `E ↦ Acc(E)` from `∅`.
pub fn grounded_labelling(af: &ArgumentationFramework) -> Labelling {
    let mut ext = ArgumentSet::new();
    loop {
        let next = af.acceptable_set(&ext).expect("own arguments");
        if next == ext {
            break;
        }
        ext = next;
    }
    af.extension_to_labelling(&ext).expect("own arguments")
}

fn decided(l: &Labelling) -> ArgumentSet {
    l.in_set().union(&l.out_set())
}

/// Keeps the elements whose key set is not strictly contained in another's.
fn maximal_by<K>(labellings: Vec<Labelling>, key: K) -> Vec<Labelling>
where
    K: Fn(&Labelling) -> ArgumentSet,
{
    let keys: Vec<ArgumentSet> = labellings.iter().map(&key).collect();
    labellings
        .into_iter()
        .enumerate()
        .filter(|(i, _)| {
            !keys
                .iter()
                .enumerate()
                .any(|(j, other)| j != *i && keys[*i] != *other && keys[*i].is_subset(other))
        })
        .map(|(_, l)| l)
        .collect()
}

/// All σ-labellings of `af` in canonical order. Stable may be empty.
pub fn enumerate_labellings(af: &ArgumentationFramework, sem: Semantics) -> LabellingSet {
    match sem {
        Semantics::Grounded => std::iter::once(grounded_labelling(af)).collect(),
        Semantics::Complete => all_complete(af).into_iter().collect(),
        Semantics::Stable => all_complete(af)
            .into_iter()
            .filter(|l| l.labels().iter().all(|&x| x != Label::Und))
            .collect(),
        Semantics::Preferred => maximal_by(all_complete(af), Labelling::in_set)
            .into_iter()
            .collect(),
        Semantics::SemiStable => maximal_by(all_complete(af), decided).into_iter().collect(),
    }
}

/// Is there a complete labelling within `domains` for which `better` holds?
fn exists_complete<P>(af: &ArgumentationFramework, domains: &[Domain], better: P) -> bool
where
    P: Fn(&Labelling) -> bool,
{
    let mut found = false;
    search_complete(af, domains, |cand| {
        if better(&cand) {
            found = true;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}

/// Decides whether `l` is a σ-labelling without enumerating σ(Λ).
pub fn verify_labelling(af: &ArgumentationFramework, sem: Semantics, l: &Labelling) -> Result<bool> {
    af.check_labelling(l)?;
    let complete = af.is_complete_labelling(l)?;
    Ok(match sem {
        Semantics::Grounded => *l == grounded_labelling(af),
        Semantics::Complete => complete,
        Semantics::Stable => complete && l.labels().iter().all(|&x| x != Label::Und),
        Semantics::Preferred => {
            complete && {
                // look for a complete labelling keeping every `in` and adding one
                let domains: Vec<Domain> = l
                    .labels()
                    .iter()
                    .map(|&x| if x == Label::In { 1 << Label::In.index() } else { ANY })
                    .collect();
                let n_in = l.in_set().len();
                !exists_complete(af, &domains, |c| c.in_set().len() > n_in)
            }
        }
        Semantics::SemiStable => {
            complete && {
                let domains: Vec<Domain> = l
                    .labels()
                    .iter()
                    .map(|&x| {
                        if x == Label::Und {
                            ANY
                        } else {
                            (1 << Label::In.index()) | (1 << Label::Out.index())
                        }
                    })
                    .collect();
                let n_decided = decided(l).len();
                !exists_complete(af, &domains, |c| decided(c).len() > n_decided)
            }
        }
    })
}

fn check_arg(af: &ArgumentationFramework, arg: usize) -> Result<()> {
    if arg >= af.len() {
        return Err(Error::UnknownArgument(format!("#{arg}")));
    }
    Ok(())
}

/// Is `arg` labelled `in` by some σ-labelling?
pub fn credulous_accept(af: &ArgumentationFramework, sem: Semantics, arg: usize) -> Result<bool> {
    check_arg(af, arg)?;
    Ok(enumerate_labellings(af, sem)
        .iter()
        .any(|l| l.label(arg) == Label::In))
}

/// Is `arg` labelled `in` by every σ-labelling? Vacuously true when there
/// are none.
pub fn skeptical_accept(af: &ArgumentationFramework, sem: Semantics, arg: usize) -> Result<bool> {
    check_arg(af, arg)?;
    Ok(enumerate_labellings(af, sem)
        .iter()
        .all(|l| l.label(arg) == Label::In))
}
