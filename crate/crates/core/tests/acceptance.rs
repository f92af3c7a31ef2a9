//! Acceptance suite. Each test prints one `[PASS]`/`[FAIL]` line per
//! criterion; run with `--nocapture` to see them.

mod common;

use std::time::{Duration, Instant};

use af_explain::asp::{emit_program, Section, Task};
use af_explain::constraints::{cf_as_waf, mc_labellings, sf_as_waf};
use af_explain::{
    distance, double_weight_measure, enumerate_labellings, grounded_labelling, DistanceMeasure,
    ExplanationQuery, GoalSpec, Label, Labelling, LabellingSet, Semantics, WeightTable,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{example3, oracle, random_af, random_weights, running_example, running_labellings, to_vecs};

/// Collects sub-check outcomes for one criterion and reports them.
struct Criterion {
    id: &'static str,
    title: &'static str,
    failures: Vec<String>,
    started: Instant,
    budget: Duration,
}

impl Criterion {
    fn new(id: &'static str, title: &'static str, budget: Duration) -> Self {
        Criterion {
            id,
            title,
            failures: Vec::new(),
            started: Instant::now(),
            budget,
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn finish(mut self) {
        let elapsed = self.started.elapsed();
        if elapsed > self.budget {
            self.failures
                .push(format!("took {elapsed:?}, budget {:?}", self.budget));
        }
        let status = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("[{status}] {} {} ({elapsed:.2?})", self.id, self.title);
        for f in &self.failures {
            println!("       - {f}");
        }
        assert!(
            self.failures.is_empty(),
            "{} failed: {:?}",
            self.id,
            self.failures
        );
    }
}

fn set(ls: &[&Labelling]) -> LabellingSet {
    ls.iter().map(|l| (*l).clone()).collect()
}

fn query<'a>(
    af: &'a af_explain::ArgumentationFramework,
    sem: Semantics,
    m: &'a DistanceMeasure,
    goal: &str,
    reference: &Labelling,
) -> ExplanationQuery<'a> {
    let goal = GoalSpec::single(af.position(goal).unwrap());
    ExplanationQuery::new(af, sem, m, goal, reference.clone()).unwrap()
}

#[test]
fn ac1_running_example_enumeration() {
    let mut c = Criterion::new("AC1", "running example: st, co and gr labellings", Duration::from_secs(1));
    let af = running_example();
    let [l1, l2, l3, l4, l5, l6] = running_labellings(&af);
    c.check(
        enumerate_labellings(&af, Semantics::Stable) == set(&[&l1, &l2, &l3]),
        "st = {L1, L2, L3}",
    );
    c.check(
        enumerate_labellings(&af, Semantics::Complete) == set(&[&l1, &l2, &l3, &l4, &l5, &l6]),
        "co = {L1..L6}",
    );
    c.check(
        enumerate_labellings(&af, Semantics::Grounded) == set(&[&l6]),
        "gr = all-und",
    );
    c.finish();
}

#[test]
fn ac2_example3() {
    let mut c = Criterion::new("AC2", "three-argument framework with a self-attack", Duration::from_secs(1));
    let af = example3();
    let l1 = Labelling::uniform(3, Label::Und);
    let l2 = af.labelling(&["a"], &["b"]).unwrap();
    let l3 = af.labelling(&["b"], &["a", "c"]).unwrap();
    let h = DistanceMeasure::Hamming;
    c.check(
        enumerate_labellings(&af, Semantics::Complete) == set(&[&l1, &l2, &l3]),
        "co = {L1, L2, L3}",
    );
    c.check(distance(&h, &l1, &l2).unwrap() == 2, "δ(L1,L2) = 2");
    c.check(distance(&h, &l1, &l3).unwrap() == 3, "δ(L1,L3) = 3");
    c.check(distance(&h, &l2, &l3).unwrap() == 3, "δ(L2,L3) = 3");
    c.check(
        enumerate_labellings(&af, Semantics::Preferred) == set(&[&l2, &l3]),
        "pr = {L2, L3}",
    );
    c.check(enumerate_labellings(&af, Semantics::Stable) == set(&[&l3]), "st = {L3}");
    c.check(enumerate_labellings(&af, Semantics::SemiStable) == set(&[&l3]), "sst = {L3}");
    c.check(grounded_labelling(&af) == l1, "gr = L1");
    c.finish();
}

#[test]
fn ac3_explanation_golden() {
    let mut c = Criterion::new("AC3", "counterfactual and semifactual golden sets", Duration::from_secs(1));
    let af = running_example();
    let [_, l2, l3, l4, l5, _] = running_labellings(&af);
    let h = DistanceMeasure::Hamming;
    let eta = double_weight_measure(&af);

    let cf = query(&af, Semantics::Stable, &h, "meat", &l3).counterfactuals();
    c.check(
        cf.witnesses == set(&[&l2]) && cf.distance == Some(2),
        "CF^st(meat,L3) = {L2} at distance 2",
    );
    let sf = query(&af, Semantics::Stable, &h, "red", &l3).semifactuals().unwrap();
    c.check(sf.witnesses == set(&[&l2]), "SF^st(red,L3) = {L2}");

    let cf = query(&af, Semantics::Complete, &h, "meat", &l3).counterfactuals();
    c.check(
        cf.witnesses == set(&[&l2, &l5]),
        format!(
            "CF^co(meat,L3) = {{L2, L5}} under δ; computed {} at distance {:?} (δ(L3,L4) = {}, δ(L3,L5) = {})",
            names(&cf.witnesses, &running_labellings(&af)),
            cf.distance,
            distance(&h, &l3, &l4).unwrap(),
            distance(&h, &l3, &l5).unwrap(),
        ),
    );
    let sf = query(&af, Semantics::Complete, &h, "red", &l3).semifactuals().unwrap();
    c.check(sf.witnesses == set(&[&l2, &l4]), "SF^co(red,L3) = {L2, L4} under δ");

    let cf = query(&af, Semantics::Complete, &eta, "meat", &l3).counterfactuals();
    c.check(
        cf.witnesses == set(&[&l5]),
        format!(
            "CF^co(meat,L3) = {{L5}} under η; computed {} at distance {:?} (η(L3,L4) = {}, η(L3,L5) = {})",
            names(&cf.witnesses, &running_labellings(&af)),
            cf.distance,
            distance(&eta, &l3, &l4).unwrap(),
            distance(&eta, &l3, &l5).unwrap(),
        ),
    );
    let sf = query(&af, Semantics::Complete, &eta, "red", &l3).semifactuals().unwrap();
    c.check(sf.witnesses == set(&[&l2]), "SF^co(red,L3) = {L2} under η");
    c.finish();
}

fn names(set: &LabellingSet, all: &[Labelling; 6]) -> String {
    let names: Vec<String> = set
        .iter()
        .map(|l| match all.iter().position(|x| x == l) {
            Some(i) => format!("L{}", i + 1),
            None => "?".into(),
        })
        .collect();
    format!("{{{}}}", names.join(", "))
}

#[test]
fn ac4_decision_golden() {
    let mut c = Criterion::new("AC4", "decision problems on the running example", Duration::from_secs(1));
    let af = running_example();
    let [_, l2, l3, ..] = running_labellings(&af);
    let h = DistanceMeasure::Hamming;
    let meat_q = query(&af, Semantics::Stable, &h, "meat", &l3);
    let red_q = query(&af, Semantics::Stable, &h, "red", &l3);
    let red = af.position("red").unwrap();
    let fish = af.position("fish").unwrap();
    c.check(meat_q.cf_exists(2), "CF-EX^st(meat,2,L3)");
    c.check(meat_q.cf_verify(&l2).unwrap(), "CF-VE^st(meat,L3,L2)");
    c.check(meat_q.cf_credulous(red).unwrap(), "CF-CA^st(meat,L3,red)");
    c.check(meat_q.cf_skeptical(red).unwrap(), "CF-SA^st(meat,L3,red)");
    c.check(red_q.sf_exists(2).unwrap(), "SF-EX^st(red,2,L3)");
    c.check(red_q.sf_verify(&l2).unwrap(), "SF-VE^st(red,L3,L2)");
    c.check(red_q.sf_credulous(fish).unwrap(), "SF-CA^st(red,L3,fish)");
    c.check(red_q.sf_skeptical(fish).unwrap(), "SF-SA^st(red,L3,fish)");
    c.finish();
}

#[test]
fn ac5_asymmetry() {
    let mut c = Criterion::new("AC5", "counterfactual relation is not symmetric", Duration::from_secs(1));
    let af = running_example();
    let [l1, _, l3, ..] = running_labellings(&af);
    let h = DistanceMeasure::Hamming;
    let from_l1 = query(&af, Semantics::Stable, &h, "meat", &l1).counterfactuals();
    let from_l3 = query(&af, Semantics::Stable, &h, "meat", &l3).counterfactuals();
    c.check(from_l1.witnesses.contains(&l3), "L3 ∈ CF(meat, L1)");
    c.check(!from_l3.witnesses.contains(&l1), "L1 ∉ CF(meat, L3)");
    c.finish();
}

const MULTI: [(Semantics, &str); 4] = [
    (Semantics::Complete, "co"),
    (Semantics::Stable, "st"),
    (Semantics::Preferred, "pr"),
    (Semantics::SemiStable, "sst"),
];

#[test]
fn ac6_oracle_property_suite() {
    let mut c = Criterion::new("AC6", "random frameworks against brute-force oracles", Duration::from_secs(60));
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_af01);
    let trials = 500;
    let mut checked_queries = 0usize;
    for trial in 0..trials {
        let n = rng.gen_range(1..=8);
        let density = rng.gen_range(0.05..0.6);
        let af = random_af(&mut rng, n, density);
        let tag = format!("trial {trial} (n={n}): {}", af.to_tgf().replace('\n', " "));

        // (a) complete enumeration equals exhaustive filtering
        let co = enumerate_labellings(&af, Semantics::Complete);
        let oracle_co = oracle::sigma(&af, "co");
        c.check(to_vecs(&co) == oracle_co, format!("(a) co mismatch, {tag}"));

        // (b) inclusion chain
        let st = enumerate_labellings(&af, Semantics::Stable);
        let sst = enumerate_labellings(&af, Semantics::SemiStable);
        let pr = enumerate_labellings(&af, Semantics::Preferred);
        c.check(
            st.is_subset(&sst) && sst.is_subset(&pr) && pr.is_subset(&co),
            format!("(b) st ⊆ sst ⊆ pr ⊆ co violated, {tag}"),
        );
        c.check(st.is_empty() || st == sst, format!("(b) st ≠ ∅ but st ≠ sst, {tag}"));

        let rows = random_weights(&mut rng, n);
        let eta = DistanceMeasure::Weighted(WeightTable::from_rows(rows.clone()).unwrap());
        let hamming = DistanceMeasure::Hamming;

        for (sem, short) in MULTI {
            let sigma = oracle::sigma(&af, short);
            c.check(
                to_vecs(&enumerate_labellings(&af, sem)) == sigma,
                format!("{short} enumeration mismatch, {tag}"),
            );
            if sigma.is_empty() {
                continue;
            }
            let reference = Labelling::from_labels(sigma[rng.gen_range(0..sigma.len())].clone());
            for goal in 0..n {
                checked_queries += 1;
                for (measure, weights) in [(&hamming, None), (&eta, Some(rows.as_slice()))] {
                    let q = ExplanationQuery::new(&af, sem, measure, GoalSpec::single(goal), reference.clone())
                        .unwrap();
                    // (c) optimal witnesses against a scan of σ(Λ)
                    let cf = q.counterfactuals();
                    let expected = oracle::explain(&sigma, weights, &[goal], reference.labels(), true);
                    c.check(
                        (to_vecs(&cf.witnesses), cf.distance) == expected,
                        format!("(c) CF^{short} goal {goal} weighted={} mismatch, {tag}", weights.is_some()),
                    );
                    let sf = q.semifactuals().unwrap();
                    let expected = oracle::explain(&sigma, weights, &[goal], reference.labels(), false);
                    c.check(
                        (to_vecs(&sf.witnesses), sf.distance) == expected,
                        format!("(c) SF^{short} goal {goal} weighted={} mismatch, {tag}", weights.is_some()),
                    );
                    if weights.is_none() {
                        // (d) WAF encodings under Hamming distance
                        let cf_waf = mc_labellings(&cf_as_waf(&af, goal, &reference).unwrap(), sem);
                        c.check(cf_waf == cf.witnesses, format!("(d) CF^{short} WAF goal {goal}, {tag}"));
                        let sf_waf = mc_labellings(&sf_as_waf(&af, goal, &reference).unwrap(), sem);
                        c.check(sf_waf == sf.witnesses, format!("(d) SF^{short} WAF goal {goal}, {tag}"));
                    }
                }
            }
        }
        if c.failures.len() > 20 {
            break;
        }
    }
    println!("       {trials} frameworks, {checked_queries} (semantics, reference, goal) queries");
    c.finish();
}

#[test]
fn ac7_asp_emission() {
    let mut c = Criterion::new("AC7", "asprin program for CF^st(meat, L3)", Duration::from_secs(1));
    let af = running_example();
    let [_, _, l3, ..] = running_labellings(&af);
    let meat = af.position("meat").unwrap();
    let p = emit_program(&af, Semantics::Stable, Task::Counterfactual, &l3, meat).unwrap();
    let expect = |section: Section, lines: &[&str]| {
        let got = p.section(section);
        let mut got_sorted: Vec<&str> = got.iter().map(String::as_str).collect();
        let mut want: Vec<&str> = lines.to_vec();
        got_sorted.sort_unstable();
        want.sort_unstable();
        (got_sorted == want, format!("{} section: got {got:?}", section.name()))
    };
    let checks = [
        expect(
            Section::Facts,
            &[
                "arg(fish).",
                "arg(meat).",
                "arg(white).",
                "arg(red).",
                "att(fish,meat).",
                "att(meat,fish).",
                "att(meat,white).",
                "att(red,white).",
                "att(white,red).",
            ],
        ),
        expect(
            Section::Semantics,
            &[
                "in(X) :- not out(X), arg(X).",
                "out(X) :- not in(X), arg(X).",
                "defeated(X) :- in(Y), att(Y,X).",
                ":- in(X), in(Y), att(X,Y).",
                ":- out(X), not defeated(X).",
            ],
        ),
        expect(Section::Strong, &[":- in(meat)."]),
        expect(
            Section::Weak,
            &[
                "w(fish) :- not out(fish).",
                "w(white) :- not out(white).",
                "w(red) :- not in(red).",
            ],
        ),
        expect(
            Section::Preference,
            &["#preference(p,less(cardinality)){w(X) : arg(X)}.", "#optimize(p)."],
        ),
    ];
    for (ok, what) in checks {
        c.check(ok, what);
    }
    let again = emit_program(&af, Semantics::Stable, Task::Counterfactual, &l3, meat).unwrap();
    c.check(p.to_string() == again.to_string(), "byte-identical across runs");
    c.finish();
}

#[test]
fn ac8_trivial_cases() {
    let mut c = Criterion::new("AC8", "k = 0, grounded rejection, empty witness sets", Duration::from_secs(10));
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut frameworks = vec![running_example(), example3()];
    frameworks.extend((0..40).map(|_| {
        let n = rng.gen_range(1..=6);
        let d = rng.gen_range(0.1..0.5);
        random_af(&mut rng, n, d)
    }));
    let h = DistanceMeasure::Hamming;
    for af in &frameworks {
        for (sem, short) in MULTI {
            for reference in enumerate_labellings(af, sem) {
                for goal in 0..af.len() {
                    let q = ExplanationQuery::new(af, sem, &h, GoalSpec::single(goal), reference.clone()).unwrap();
                    c.check(!q.cf_exists(0), format!("CF-EX^{short} at k=0 must be false"));
                    c.check(q.sf_exists(0).unwrap(), format!("SF-EX^{short} at k=0 must be true"));
                    if q.counterfactuals().witnesses.is_empty() {
                        c.check(!q.cf_credulous(goal).unwrap(), "empty CF set: CF-CA false");
                        c.check(q.cf_skeptical(goal).unwrap(), "empty CF set: CF-SA true");
                    }
                }
            }
        }
        let gr = grounded_labelling(af);
        c.check(
            matches!(
                ExplanationQuery::new(af, Semantics::Grounded, &h, GoalSpec::single(0), gr),
                Err(af_explain::Error::UnsupportedSemantics(_))
            ),
            "grounded explanation query rejected",
        );
    }
    // a framework whose only complete labelling is all-und has no counterfactuals
    let selfie = af_explain::formats::parse_tgf("a\n#\na a\n").unwrap();
    let q = ExplanationQuery::new(
        &selfie,
        Semantics::Complete,
        &h,
        GoalSpec::single(0),
        Labelling::uniform(1, Label::Und),
    )
    .unwrap();
    c.check(q.counterfactuals().witnesses.is_empty(), "self-attacker has no counterfactual");
    c.check(!q.cf_credulous(0).unwrap(), "CF-CA on empty set is false");
    c.check(q.cf_skeptical(0).unwrap(), "CF-SA on empty set is true");
    c.finish();
}
