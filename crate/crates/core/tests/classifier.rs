use posmon_core::classifier::{check_chain_consistency, classify_conductive, classify_known, ClassifyOptions, Status};
use posmon_core::factor::{atoms, atoms_in_box, probe_property, ProbeBound, ProbeResult, Property};
use posmon_core::gallery;
use posmon_core::instance::parse_instance;
use posmon_core::models::MonoidDescriptor;
use posmon_core::ordered::{GroupElement, GroupId};

#[test]
fn conductive_integers_agree_with_probes() {
    for a in 1..=8i64 {
        let r = classify_conductive(GroupId::Integers, &GroupElement::integer(a), 4).unwrap();
        let m = MonoidDescriptor::conductive(GroupElement::integer(a)).unwrap();
        for p in Property::PROBED {
            let res = probe_property(&m, p, &ProbeBound::Scalar(30 * a), 4).unwrap();
            match r.status(p) {
                Status::Proved => assert!(res.is_consistent(), "a={a} {p}: {res:?}"),
                Status::Refuted => assert!(res.is_refuted(), "a={a} {p}: {res:?}"),
                s => panic!("a={a} {p}: undecided {s:?}"),
            }
        }
        assert!(r.chain_ok);
    }
}

#[test]
fn conductive_lex_bfm_iff_leading_coordinate() {
    for k in 1..=3usize {
        for prio in 0..k {
            let g = GroupId::lex(k, prio).unwrap();
            let mut coords = vec![-3i64; k];
            loop {
                let a = GroupElement::lex(&coords, prio).unwrap();
                assert_eq!(a.group(), g);
                if a.is_positive() {
                    let r = classify_conductive(g, &a, 2).unwrap();
                    // first compared coordinate is the priority slot
                    let leading = coords[prio] != 0;
                    assert_eq!(r.status(Property::Bfm) == Status::Proved, leading, "{a}");
                    assert_eq!(r.status(Property::Ffm) == Status::Proved, leading && k == 1, "{a}");
                    assert!(check_chain_consistency(&r));
                }
                // odometer over the box
                let mut i = 0;
                while i < k && coords[i] == 3 {
                    coords[i] = -3;
                    i += 1;
                }
                if i == k {
                    break;
                }
                coords[i] += 1;
            }
        }
    }
}

#[test]
fn conductive_atoms_are_the_half_open_interval() {
    for a in 1..=8i64 {
        let m = MonoidDescriptor::conductive(GroupElement::integer(a)).unwrap();
        let got = atoms(&m, 6).atoms;
        let want: Vec<GroupElement> = (a..2 * a).map(GroupElement::integer).collect();
        assert_eq!(got, want);
    }
    for c in [[1, 0], [1, -2], [2, 3], [0, 1], [0, 3]] {
        let a = GroupElement::lex(&c, 0).unwrap();
        let m = MonoidDescriptor::conductive(a.clone()).unwrap();
        let got = atoms_in_box(&m, 6, &[3, 10]).atoms;
        let mut want = Vec::new();
        for x in -3..=3i64 {
            for y in -10..=10i64 {
                let e = GroupElement::lex(&[x, y], 0).unwrap();
                // a <= e < 2a, compared lexicographically by hand
                let ge = (x, y) >= (c[0], c[1]);
                let lt = (x, y) < (2 * c[0], 2 * c[1]);
                if ge && lt {
                    want.push(e);
                }
            }
        }
        assert_eq!(got, want, "a = {a}");
    }
}

#[test]
fn worked_examples_classify() {
    let r = classify_known(&parse_instance("conductive:Z2:a=(1,0)").unwrap(), &ClassifyOptions::default()).unwrap();
    assert_eq!((r.status(Property::Bfm), r.status(Property::Ffm)), (Status::Proved, Status::Refuted));
    let r = classify_known(&parse_instance("conductive:Z2:a=(0,1)").unwrap(), &ClassifyOptions::default()).unwrap();
    assert!([Property::Bfm, Property::Atm, Property::Qam].iter().all(|p| r.status(*p) == Status::Refuted));
    let r = classify_known(&parse_instance("mq:2/3").unwrap(), &ClassifyOptions::default()).unwrap();
    assert_eq!(r.verdicts[&Property::Bfm].source, "implied by ACCP");
    assert!(r.verdicts[&Property::Accp].witness.is_some());
}

#[test]
fn probes_never_contradict_known_numerical_facts() {
    // <3,5>: 15 = 5*3 = 3*5 breaks half-factoriality
    let m = parse_instance("nm:3,5").unwrap();
    let r = classify_known(&m, &ClassifyOptions { depth: 6, ..Default::default() }).unwrap();
    assert_eq!(r.status(Property::Bfm), Status::Proved);
    assert_eq!(r.status(Property::Hfm), Status::Refuted);
    assert_eq!(r.status(Property::Ffm), Status::ProbeConsistent);
    assert!(r.is_sound());
    let ProbeResult::Refuted { element, .. } = probe_property(&m, Property::Hfm, &ProbeBound::Scalar(30), 6).unwrap() else {
        panic!("expected a refutation");
    };
    assert_eq!(element, GroupElement::integer(15));
}

#[test]
fn gallery_runs_clean_and_deterministic() {
    let a = gallery::run_all(1);
    for e in &a.entries {
        assert!(e.passed, "{}: {:?}", e.id, e.checks.iter().filter(|c| !c.ok).collect::<Vec<_>>());
        assert!(check_chain_consistency(e.report.as_ref().unwrap()));
    }
    let b = gallery::run_all(3);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}
