use fairagg::harness::*;
use fairagg::rules::*;
use fairagg::verdict::Status;

fn cfg(n: usize) -> GeneratorConfig {
    GeneratorConfig { n, trials: 1000, ..Default::default() }
}

fn two_vertex() -> WeightSet {
    WeightSet::from_rows(&[&[0.3, 0.7], &[0.7, 0.3]]).unwrap()
}

fn counterexamples() -> Vec<(NamedRule, Axiom)> {
    vec![
        (NamedRule::new("indifference", indifference_rule()), Axiom::Pareto),
        (NamedRule::new("leximin", relative_leximin_rule()), Axiom::Continuity),
        (NamedRule::new("parity", parity_rule()), Axiom::Iie),
        (NamedRule::new("max_weight", max_weight_rule(two_vertex())), Axiom::Wpm),
        (NamedRule::new("belief_weighted", belief_weighted_utilitarian_rule(None)), Axiom::BeliefIrrelevance),
        (NamedRule::new("nash", nash_rule()), Axiom::Rci),
    ]
}

fn assert_passes(rule: &Rule, axioms: &[Axiom], n: usize) {
    for &a in axioms {
        let rep = check_axiom(rule, a, &cfg(n)).unwrap();
        assert_eq!(rep.status, Status::NoViolationFound, "{} {a}: {:?}", rule.kind(), rep.witness);
        if a != Axiom::Continuity {
            assert!(rep.trials >= 1000);
        }
    }
}

#[test]
fn characterized_rules_pass_their_axioms() {
    for n in [2, 3] {
        assert_passes(&relative_fair_rule(WeightSet::simplex(n)), &Axiom::RELATIVE_FAIR, n);
        assert_passes(&relative_utilitarian_rule(WeightVector::equal(n)), &Axiom::UTILITARIAN, n);
        assert_passes(&relative_maximin_rule(), &Axiom::MAXIMIN, n);
        assert_passes(&relative_maximin_rule(), &[Axiom::Saa], n);
        assert_passes(&relative_leximin_rule(), &Axiom::LEXIMIN, n);
    }
    assert_passes(&relative_fair_rule(two_vertex()), &Axiom::RELATIVE_FAIR, 2);
    let cost = CostFunction::from_pairs(vec![(vec![0.2, 0.8], 0.05), (vec![0.6, 0.4], 0.0), (vec![1.0, 0.0], 0.1)]).unwrap();
    assert_passes(&variational_rule(cost), &Axiom::VARIATIONAL, 2);
}

#[test]
fn counterexamples_fail_exactly_their_axiom() {
    let rules: Vec<NamedRule> = counterexamples().into_iter().map(|(r, _)| r).collect();
    let m = axiom_matrix(&rules, &Axiom::RELATIVE_FAIR, &cfg(2)).unwrap();
    for ((_, designated), row) in counterexamples().iter().zip(&m.rows) {
        assert_eq!(row.violated(), vec![*designated], "{}", row.rule);
    }
}

#[test]
fn searched_violations() {
    let c = cfg(2);
    let cases = [
        (relative_maximin_rule(), Axiom::Ci, 2),
        (relative_fair_rule(two_vertex()), Axiom::Ci, 2),
        (relative_maximin_rule(), Axiom::Separability, 3),
        (relative_utilitarian_rule(WeightVector::new(vec![0.9, 0.1]).unwrap()), Axiom::Anonymity, 2),
        (relative_fair_rule(two_vertex()), Axiom::Saa, 2),
        (nash_rule(), Axiom::Wrci, 2),
    ];
    for (rule, axiom, n) in cases {
        let rep = check_axiom_with(&rule, axiom, &GeneratorConfig { n, ..c.clone() }, CheckOptions { golden: false, ..Default::default() })
            .unwrap();
        assert_eq!(rep.status, Status::Violated, "{} {axiom}", rule.kind());
        assert_eq!(rep.source, Some(WitnessSource::Search));
    }
    // without the golden instances, searches still find these
    for (named, axiom) in counterexamples() {
        if matches!(axiom, Axiom::Continuity | Axiom::Iie) {
            continue;
        }
        let rep = check_axiom_with(&named.rule, axiom, &c, CheckOptions { golden: false, ..Default::default() }).unwrap();
        assert_eq!(rep.status, Status::Violated, "{}", named.name);
    }
}

#[test]
fn strong_pareto_examples() {
    let rep = check_axiom(&relative_maximin_rule(), Axiom::StrongPareto, &cfg(2)).unwrap();
    assert_eq!(rep.status, Status::Violated);
    assert_eq!(rep.source, Some(WitnessSource::Golden));
    assert_passes(&relative_utilitarian_rule(WeightVector::equal(3)), &[Axiom::StrongPareto, Axiom::Anonymity], 3);
    assert_passes(&relative_fair_rule(WeightSet::from_rows(&[&[0.3, 0.7], &[0.7, 0.3]]).unwrap()), &[Axiom::Anonymity], 2);
}

#[test]
fn reports_are_deterministic_and_witnesses_replay() {
    let rules = [
        relative_maximin_rule(),
        nash_rule(),
        parity_rule(),
        belief_weighted_utilitarian_rule(None),
        relative_leximin_rule(),
    ];
    for rule in &rules {
        for axiom in Axiom::ALL {
            let a = check_axiom(rule, axiom, &GeneratorConfig { trials: 300, ..cfg(2) }).unwrap();
            let b = check_axiom(rule, axiom, &GeneratorConfig { trials: 300, ..cfg(2) }).unwrap();
            assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
            if let Some(w) = &a.witness {
                let json = serde_json::to_string(w).unwrap();
                let back: Witness = serde_json::from_str(&json).unwrap();
                assert_eq!(&back, w);
                assert_eq!(replay(rule, &back).unwrap(), Status::Violated, "{} {axiom}", rule.kind());
            }
        }
    }
}

#[test]
fn thread_count_does_not_change_reports() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| {
            check_axiom_with(&relative_maximin_rule(), Axiom::Ci, &cfg(2), CheckOptions { golden: false, ..Default::default() })
                .unwrap()
        })
    };
    assert_eq!(run(1), run(4));
}
