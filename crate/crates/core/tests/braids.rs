mod common;

use common::small_graphs;
use kquiver::braid::{calibrate, evaluate_word, verify_braid, BraidWord};
use kquiver::IntegrableModule;

#[test]
fn braid_relations_on_a2_and_a1xa1() {
    let graphs = small_graphs();
    let a2 = &graphs.iter().find(|(n, _)| *n == "A2").unwrap().1;
    let conv = calibrate(a2).unwrap().chosen;
    for (name, w) in [
        ("A2", vec![1, 0]),
        ("A2", vec![1, 1]),
        ("A1xA1", vec![1, 1]),
        ("A1xA1", vec![2, 1]),
    ] {
        let cd = &graphs.iter().find(|(n, _)| *n == name).unwrap().1;
        let m = IntegrableModule::build(cd, &w, None).unwrap();
        for check in verify_braid(&m, &conv).unwrap() {
            assert!(
                check.passed,
                "{name} w={w:?} {}: {:?}",
                check.id, check.counterexample
            );
        }
    }
}

#[test]
fn braid_words_differ_only_by_relations() {
    let graphs = small_graphs();
    let a2 = &graphs.iter().find(|(n, _)| *n == "A2").unwrap().1;
    let conv = calibrate(a2).unwrap().chosen;
    let m = IntegrableModule::build(a2, &[1, 1], None).unwrap();
    let eval = |s: &str| evaluate_word(&BraidWord::parse(a2, s).unwrap(), &m, &conv).unwrap();
    assert!(eval("T1 T2 T1").sub(&eval("T2 T1 T2")).unwrap().is_zero());
    // T1 T2 and T2 T1 send a weight block to different targets
    assert!(eval("T1 T2").sub(&eval("T2 T1")).is_err());
    assert!(eval("T1 T1^-1").sub(&eval("")).unwrap().is_zero());
}
