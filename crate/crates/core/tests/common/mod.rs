//! Shared fixtures and brute-force oracles for the integration tests.
//!
//! The oracles work on plain label vectors and attack-pair lists and do not
//! call into the library's search or explanation code.

#![allow(dead_code)]

use af_explain::{ArgumentationFramework, Label, Labelling};
use rand::Rng;

pub const RUNNING_TGF: &str =
    "fish\nmeat\nwhite\nred\n#\nfish meat\nmeat fish\nmeat white\nwhite red\nred white\n";
pub const EXAMPLE3_TGF: &str = "a\nb\nc\n#\na b\nb a\nb c\nc c\n";

pub fn running_example() -> ArgumentationFramework {
    af_explain::formats::parse_tgf(RUNNING_TGF).unwrap()
}

pub fn example3() -> ArgumentationFramework {
    af_explain::formats::parse_tgf(EXAMPLE3_TGF).unwrap()
}

/// L1..L6 of the running example.
pub fn running_labellings(af: &ArgumentationFramework) -> [Labelling; 6] {
    [
        af.labelling(&["fish", "white"], &["meat", "red"]).unwrap(),
        af.labelling(&["fish", "red"], &["meat", "white"]).unwrap(),
        af.labelling(&["meat", "red"], &["fish", "white"]).unwrap(),
        af.labelling(&["red"], &["white"]).unwrap(),
        af.labelling(&["fish"], &["meat"]).unwrap(),
        af.labelling::<&str>(&[], &[]).unwrap(),
    ]
}

/// Random framework with `n` arguments and each ordered pair (self-attacks
/// included) attacked with probability `density`.
pub fn random_af<R: Rng>(rng: &mut R, n: usize, density: f64) -> ArgumentationFramework {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut attacks = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if rng.gen_bool(density) {
                attacks.push((names[a].clone(), names[b].clone()));
            }
        }
    }
    ArgumentationFramework::new(&names, &attacks).unwrap()
}

/// Random per-argument weight rows with zero diagonal.
pub fn random_weights<R: Rng>(rng: &mut R, n: usize) -> Vec<[[u64; 3]; 3]> {
    (0..n)
        .map(|_| {
            let mut row = [[0u64; 3]; 3];
            for (i, r) in row.iter_mut().enumerate() {
                for (j, w) in r.iter_mut().enumerate() {
                    *w = if i == j { 0 } else { rng.gen_range(0..=4) };
                }
            }
            row
        })
        .collect()
}

pub mod oracle {
    use super::*;

    const LABELS: [Label; 3] = [Label::In, Label::Out, Label::Und];

    /// All `3^n` label vectors.
    pub fn all_labellings(n: usize) -> Vec<Vec<Label>> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    LABELS.iter().map(move |&l| {
                        let mut v = prefix.clone();
                        v.push(l);
                        v
                    })
                })
                .collect();
        }
        out
    }

    fn attackers(attacks: &[(usize, usize)], a: usize) -> impl Iterator<Item = usize> + '_ {
        attacks.iter().filter(move |(_, t)| *t == a).map(|(s, _)| *s)
    }

    pub fn is_complete(n: usize, attacks: &[(usize, usize)], l: &[Label]) -> bool {
        (0..n).all(|a| {
            let some_in = attackers(attacks, a).any(|b| l[b] == Label::In);
            let all_out = attackers(attacks, a).all(|b| l[b] == Label::Out);
            let expected = if some_in {
                Label::Out
            } else if all_out {
                Label::In
            } else {
                Label::Und
            };
            l[a] == expected
        })
    }

    fn set_of(l: &[Label], pred: impl Fn(Label) -> bool) -> Vec<usize> {
        (0..l.len()).filter(|&i| pred(l[i])).collect()
    }

    fn strict_subset(a: &[usize], b: &[usize]) -> bool {
        a.len() < b.len() && a.iter().all(|x| b.contains(x))
    }

    /// σ-labellings by exhaustive filtering, sorted.
    pub fn sigma(af: &ArgumentationFramework, sem: &str) -> Vec<Vec<Label>> {
        let n = af.len();
        let co: Vec<Vec<Label>> = all_labellings(n)
            .into_iter()
            .filter(|l| is_complete(n, af.attacks(), l))
            .collect();
        let ins = |l: &Vec<Label>| set_of(l, |x| x == Label::In);
        let decided = |l: &Vec<Label>| set_of(l, |x| x != Label::Und);
        let mut out: Vec<Vec<Label>> = match sem {
            "co" => co,
            "st" => co.into_iter().filter(|l| !l.contains(&Label::Und)).collect(),
            "pr" => co
                .iter()
                .filter(|l| !co.iter().any(|m| strict_subset(&ins(l), &ins(m))))
                .cloned()
                .collect(),
            "sst" => co
                .iter()
                .filter(|l| !co.iter().any(|m| strict_subset(&decided(l), &decided(m))))
                .cloned()
                .collect(),
            "gr" => {
                let min = co.iter().min_by_key(|l| ins(l).len()).unwrap().clone();
                vec![min]
            }
            other => panic!("unknown semantics {other}"),
        };
        out.sort();
        out
    }

    pub fn dist(weights: Option<&[[[u64; 3]; 3]]>, a: &[Label], b: &[Label]) -> u64 {
        let idx = |l: Label| LABELS.iter().position(|&x| x == l).unwrap();
        (0..a.len())
            .map(|i| match weights {
                None => u64::from(a[i] != b[i]),
                Some(w) => w[i][idx(a[i])][idx(b[i])],
            })
            .sum()
    }

    /// Optimal witnesses by scanning `candidates`: minimum distance among
    /// goal-changing ones (counterfactual) or maximum among goal-keeping
    /// ones (semifactual).
    pub fn explain(
        candidates: &[Vec<Label>],
        weights: Option<&[[[u64; 3]; 3]]>,
        goals: &[usize],
        reference: &[Label],
        counterfactual: bool,
    ) -> (Vec<Vec<Label>>, Option<u64>) {
        let ok: Vec<(&Vec<Label>, u64)> = candidates
            .iter()
            .filter(|c| {
                goals.iter().all(|&g| {
                    if counterfactual {
                        c[g] != reference[g]
                    } else {
                        c[g] == reference[g]
                    }
                })
            })
            .map(|c| (c, dist(weights, reference, c)))
            .collect();
        let best = if counterfactual {
            ok.iter().map(|(_, d)| *d).min()
        } else {
            ok.iter().map(|(_, d)| *d).max()
        };
        let mut w: Vec<Vec<Label>> = ok
            .into_iter()
            .filter(|(_, d)| Some(*d) == best)
            .map(|(c, _)| c.clone())
            .collect();
        w.sort();
        (w, best)
    }
}

pub fn to_vecs<'a>(ls: impl IntoIterator<Item = &'a Labelling>) -> Vec<Vec<Label>> {
    ls.into_iter().map(|l| l.labels().to_vec()).collect()
}
