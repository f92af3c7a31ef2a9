//! Propositional constraints over labelled-argument atoms and
//! weak-constrained frameworks.
//!
//! Text syntax, one formula per line:
//!
//! ```text
//! [strong]
//! !in(meat)
//! [weak]
//! out(fish) | und(fish)
//! in(red) & !(out(white))
//! ```
//!
//! `!` binds tighter than `&`, which binds tighter than `|`. Blank lines and
//! lines starting with `%` or `#` are ignored.

use std::fmt;

use crate::af::{ArgumentationFramework, Label, Labelling};
use crate::error::{Error, Result};
use crate::semantics::{enumerate_labellings, LabellingSet, Semantics};

/// The atom `in(a)`, `out(a)` or `und(a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LabelAtom {
    pub arg: usize,
    pub label: Label,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(LabelAtom),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

impl Formula {
    pub fn atom(arg: usize, label: Label) -> Self {
        Formula::Atom(LabelAtom { arg, label })
    }

    pub fn negate(self) -> Self {
        Formula::Not(Box::new(self))
    }

    /// Largest argument position mentioned, if any.
    fn max_arg(&self) -> Option<usize> {
        match self {
            Formula::Atom(a) => Some(a.arg),
            Formula::Not(f) => f.max_arg(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().filter_map(Formula::max_arg).max(),
        }
    }

    /// Parses one formula, resolving argument names against `af`.
    pub fn parse(text: &str, af: &ArgumentationFramework) -> Result<Formula> {
        parse_formula(text, af, 1)
    }

    pub fn display<'a>(&'a self, af: &'a ArgumentationFramework) -> FormulaDisplay<'a> {
        FormulaDisplay { formula: self, af }
    }
}

pub struct FormulaDisplay<'a> {
    formula: &'a Formula,
    af: &'a ArgumentationFramework,
}

impl FormulaDisplay<'_> {
    fn write(&self, f: &mut fmt::Formatter<'_>, formula: &Formula, nested: bool) -> fmt::Result {
        match formula {
            Formula::Atom(a) => write!(f, "{}({})", a.label, self.af.name(a.arg)),
            Formula::Not(inner) => {
                f.write_str("!")?;
                self.write(f, inner, true)
            }
            Formula::And(fs) | Formula::Or(fs) => {
                let (op, empty) = match formula {
                    Formula::And(_) => (" & ", "true"),
                    _ => (" | ", "false"),
                };
                if fs.is_empty() {
                    // no literal syntax for the constants
                    return f.write_str(empty);
                }
                if nested {
                    f.write_str("(")?;
                }
                for (i, sub) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(op)?;
                    }
                    self.write(f, sub, true)?;
                }
                if nested {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.formula, false)
    }
}

/// `ℓ(L, a)`: the atom reflecting `a`'s label in `l`.
pub fn label_atom_of(l: &Labelling, arg: usize) -> LabelAtom {
    LabelAtom {
        arg,
        label: l.label(arg),
    }
}

/// Two-valued evaluation with exactly the atoms `ℓ(L, a)` true.
pub fn satisfies(l: &Labelling, f: &Formula) -> bool {
    match f {
        Formula::Atom(a) => l.label(a.arg) == a.label,
        Formula::Not(inner) => !satisfies(l, inner),
        Formula::And(fs) => fs.iter().all(|g| satisfies(l, g)),
        Formula::Or(fs) => fs.iter().any(|g| satisfies(l, g)),
    }
}

/// A framework with strong constraints (must hold) and a multiset of weak
/// constraints (satisfy as many as possible).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakConstrainedAF {
    pub af: ArgumentationFramework,
    pub strong: Vec<Formula>,
    pub weak: Vec<Formula>,
}

impl WeakConstrainedAF {
    pub fn new(af: ArgumentationFramework, strong: Vec<Formula>, weak: Vec<Formula>) -> Result<Self> {
        for f in strong.iter().chain(&weak) {
            if let Some(a) = f.max_arg().filter(|&a| a >= af.len()) {
                return Err(Error::InvalidArgument(format!(
                    "constraint mentions argument #{a} outside the framework"
                )));
            }
        }
        Ok(WeakConstrainedAF { af, strong, weak })
    }

    /// Parses a `[strong]` / `[weak]` constraint file against `af`.
    pub fn parse(af: ArgumentationFramework, text: &str) -> Result<Self> {
        enum Section {
            None,
            Strong,
            Weak,
        }
        let mut section = Section::None;
        let mut strong = Vec::new();
        let mut weak = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = i + 1;
            if line.is_empty() || line.starts_with('%') || line.starts_with('#') {
                continue;
            }
            match line {
                "[strong]" => section = Section::Strong,
                "[weak]" => section = Section::Weak,
                _ => {
                    let f = parse_formula(line, &af, lineno)?;
                    match section {
                        Section::Strong => strong.push(f),
                        Section::Weak => weak.push(f),
                        Section::None => {
                            return Err(Error::parse(
                                lineno,
                                "formula outside a [strong] or [weak] section",
                            ))
                        }
                    }
                }
            }
        }
        Ok(WeakConstrainedAF { af, strong, weak })
    }

    /// Serializes back to the constraint file syntax.
    pub fn constraints_text(&self) -> String {
        let mut out = String::from("[strong]\n");
        for f in &self.strong {
            out.push_str(&format!("{}\n", f.display(&self.af)));
        }
        out.push_str("[weak]\n");
        for f in &self.weak {
            out.push_str(&format!("{}\n", f.display(&self.af)));
        }
        out
    }

    pub fn satisfied_weak(&self, l: &Labelling) -> usize {
        self.weak.iter().filter(|w| satisfies(l, w)).count()
    }
}

/// σ-labellings satisfying every strong constraint and the largest number of
/// weak constraints, counted per occurrence.
pub fn mc_labellings(waf: &WeakConstrainedAF, sem: Semantics) -> LabellingSet {
    let scored: Vec<(usize, Labelling)> = enumerate_labellings(&waf.af, sem)
        .into_iter()
        .filter(|l| waf.strong.iter().all(|c| satisfies(l, c)))
        .map(|l| (waf.satisfied_weak(&l), l))
        .collect();
    let Some(best) = scored.iter().map(|(n, _)| *n).max() else {
        return LabellingSet::new();
    };
    scored
        .into_iter()
        .filter(|(n, _)| *n == best)
        .map(|(_, l)| l)
        .collect()
}

/// Counterfactuals as a WAF: `C = {¬ℓ(L,g)}`, `W = {ℓ(L,a) | a ≠ g}`.
pub fn cf_as_waf(af: &ArgumentationFramework, goal: usize, l: &Labelling) -> Result<WeakConstrainedAF> {
    af.check_labelling(l)?;
    check_goal(af, goal)?;
    let strong = vec![Formula::Atom(label_atom_of(l, goal)).negate()];
    let weak = (0..af.len())
        .filter(|&a| a != goal)
        .map(|a| Formula::Atom(label_atom_of(l, a)))
        .collect();
    WeakConstrainedAF::new(af.clone(), strong, weak)
}

/// Semifactuals as a WAF: `C = {ℓ(L,g)}`, `W = {¬ℓ(L,a) | a ≠ g}`.
pub fn sf_as_waf(af: &ArgumentationFramework, goal: usize, l: &Labelling) -> Result<WeakConstrainedAF> {
    af.check_labelling(l)?;
    check_goal(af, goal)?;
    let strong = vec![Formula::Atom(label_atom_of(l, goal))];
    let weak = (0..af.len())
        .filter(|&a| a != goal)
        .map(|a| Formula::Atom(label_atom_of(l, a)).negate())
        .collect();
    WeakConstrainedAF::new(af.clone(), strong, weak)
}

fn check_goal(af: &ArgumentationFramework, goal: usize) -> Result<()> {
    if goal >= af.len() {
        return Err(Error::UnknownArgument(format!("#{goal}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Atom(Label, String),
    Not,
    And,
    Or,
    Open,
    Close,
}

fn tokenize(text: &str, line: usize) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut rest = text;
    loop {
        rest = rest.trim_start();
        let Some(c) = rest.chars().next() else {
            return Ok(tokens);
        };
        let simple = match c {
            '!' => Some(Token::Not),
            '&' => Some(Token::And),
            '|' => Some(Token::Or),
            '(' => Some(Token::Open),
            ')' => Some(Token::Close),
            _ => None,
        };
        if let Some(t) = simple {
            tokens.push(t);
            rest = &rest[1..];
            continue;
        }
        let label = ["und", "out", "in"]
            .into_iter()
            .find(|kw| rest.starts_with(&format!("{kw}(")))
            .ok_or_else(|| Error::parse(line, format!("unexpected input `{}`", snippet(rest))))?;
        let after = &rest[label.len() + 1..];
        let close = after
            .find(')')
            .ok_or_else(|| Error::parse(line, format!("unclosed atom `{}`", snippet(rest))))?;
        let name = after[..close].trim();
        if name.is_empty() {
            return Err(Error::parse(line, "atom without argument name"));
        }
        tokens.push(Token::Atom(label.parse().expect("keyword"), name.to_string()));
        rest = &after[close + 1..];
    }
}

fn snippet(s: &str) -> String {
    s.chars().take(16).collect()
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    af: &'a ArgumentationFramework,
    line: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut parts = vec![self.and()?];
        while self.peek() == Some(&Token::Or) {
            self.pos += 1;
            parts.push(self.and()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::Or(parts) })
    }

    fn and(&mut self) -> Result<Formula> {
        let mut parts = vec![self.unary()?];
        while self.peek() == Some(&Token::And) {
            self.pos += 1;
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::And(parts) })
    }

    fn unary(&mut self) -> Result<Formula> {
        let token = self.peek().cloned();
        self.pos += 1;
        match token {
            Some(Token::Not) => Ok(self.unary()?.negate()),
            Some(Token::Open) => {
                let inner = self.or()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(Error::parse(self.line, "expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(Token::Atom(label, name)) => {
                let arg = self.af.position(&name).map_err(|_| {
                    Error::parse(self.line, format!("unknown argument `{name}`"))
                })?;
                Ok(Formula::atom(arg, label))
            }
            Some(t) => Err(Error::parse(self.line, format!("unexpected token {t:?}"))),
            None => Err(Error::parse(self.line, "unexpected end of formula")),
        }
    }
}

fn parse_formula(text: &str, af: &ArgumentationFramework, line: usize) -> Result<Formula> {
    let tokens = tokenize(text, line)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        af,
        line,
    };
    let f = parser.or()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::parse(line, "trailing input after formula"));
    }
    Ok(f)
}
