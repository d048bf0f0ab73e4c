use ffg_core::biframe::congruence_biframe;
use ffg_core::order::{FiniteFrame, Poset};
use ffg_core::paircover::well_monotone_qu;
use ffg_core::workbench::{
    enumerate_posets, enumerate_t0_spaces, export, labeled_poset_oracle, parse_object, replay, run_suite,
    search_counterexamples, t0_topology_oracle, Bounds, Format, Mutation, Object, Property, RunOptions,
    WorkbenchError,
};

#[test]
fn poset_counts_match_labeled_oracle() {
    let labeled = [1, 1, 3, 19, 219];
    for (n, &want) in labeled.iter().enumerate() {
        let (l, classes) = labeled_poset_oracle(n);
        assert_eq!(l, want);
        assert_eq!(enumerate_posets(n).unwrap().len(), classes);
    }
}

#[test]
fn poset_enumeration_respects_cap() {
    assert!(matches!(enumerate_posets(7), Err(WorkbenchError::SizeCap { .. })));
}

#[test]
fn space_counts_match_topology_scan() {
    for n in 0..=4 {
        let spaces = enumerate_t0_spaces(n).unwrap();
        assert_eq!(spaces.len(), t0_topology_oracle(n), "n = {n}");
        for s in &spaces {
            s.validate().unwrap();
        }
    }
    assert_eq!(enumerate_t0_spaces(1).unwrap().len(), 1);
    assert_eq!(enumerate_t0_spaces(2).unwrap().len(), 2);
}

#[test]
fn search_examples() {
    let kite = search_counterexamples(Property::NotUltraparacompactFrame, 3).unwrap();
    assert_eq!(kite.witness.unwrap().frame_size, 5);
    let c3 = search_counterexamples(Property::NonFitFrame, 4).unwrap();
    assert_eq!(c3.witness.unwrap().frame_size, 3);
    assert!(search_counterexamples(Property::ChainVsSaturationMismatch, 4)
        .unwrap()
        .witness
        .is_none());
    assert!("nonsense".parse::<Property>().is_err());
}

#[test]
fn suite_reports_are_deterministic() {
    let b = Bounds {
        max_poset: 2,
        random_cases: 20,
    };
    let a = run_suite("all", &b, 7, RunOptions::default()).unwrap();
    let c = run_suite("all", &b, 7, RunOptions::default()).unwrap();
    assert!(a.passed);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&c).unwrap());
    assert!(!serde_json::to_string(&a).unwrap().contains("wall_time"));
}

#[test]
fn chain_closure_mutation_is_caught_and_replays() {
    let b = Bounds {
        max_poset: 2,
        random_cases: 5,
    };
    let opts = RunOptions {
        mutation: Some(Mutation::ChainClosure),
        timing: false,
    };
    let r = run_suite("congruence-oracles", &b, 1, opts).unwrap();
    assert!(!r.passed);
    for w in r.witnesses() {
        let text = serde_json::to_string(w).unwrap();
        let Object::Witness(back) = parse_object(&text).unwrap() else {
            panic!("witness not recognised");
        };
        assert!(replay(&back).unwrap().is_err());
    }
}

fn json_round_trip(text: &str) -> String {
    let once = export(&parse_object(text).unwrap(), Format::Json).unwrap();
    let twice = export(&parse_object(&once).unwrap(), Format::Json).unwrap();
    assert_eq!(once, twice);
    once
}

#[test]
fn export_examples() {
    let c3 = serde_json::to_string(&FiniteFrame::chain(3)).unwrap();
    let dot = export(&parse_object(&c3).unwrap(), Format::Dot).unwrap();
    assert_eq!(dot.matches(" [label=").count(), 3);
    assert_eq!(dot.matches(" -> ").count(), 2);
    json_round_trip(&c3);

    let (cc3, _) = congruence_biframe(&FiniteFrame::chain(3)).unwrap();
    let text = json_round_trip(&serde_json::to_string(&cc3).unwrap());
    let Object::Biframe(back) = parse_object(&text).unwrap() else {
        panic!("biframe not recognised");
    };
    assert_eq!(back, cc3);
    assert!(export(&Object::Biframe(cc3.clone()), Format::Dot).unwrap().contains("fillcolor"));

    let qu = well_monotone_qu(&cc3).unwrap();
    json_round_trip(&serde_json::to_string(&qu).unwrap());
    let u = qu.base()[0].clone();
    let dot = export(&Object::Paircover(u.clone()), Format::Dot).unwrap();
    assert!(dot.starts_with("graph paircover"));
    assert_eq!(dot.matches(" -- ").count(), u.gens().len());

    let p = Poset::from_relations(3, &[(0, 1), (0, 2)]).unwrap();
    json_round_trip(&serde_json::to_string(&p).unwrap());
    assert!("svg".parse::<Format>().is_err());
    assert!(parse_object("{\"what\": 1}").is_err());
}
