mod common;

use common::{cartan_matrix, framings, freudenthal, small_graphs, weyl_dimension};
use kquiver::relations::{verify_module, weyl_symmetric};
use kquiver::IntegrableModule;

#[test]
fn relation_families_hold_on_small_modules() {
    for (name, cd) in small_graphs() {
        for w in framings(cd.rank(), 3) {
            let c = cartan_matrix(&cd);
            if weyl_dimension(&c, &w) > 20 {
                continue;
            }
            let m = IntegrableModule::build(&cd, &w, None).unwrap();
            for fam in verify_module(&m).unwrap() {
                assert!(
                    fam.passed,
                    "{name} w={w:?} family {}: {:?}",
                    fam.id, fam.counterexample
                );
            }
            assert!(weyl_symmetric(&m).unwrap(), "{name} w={w:?}");
        }
    }
}

#[test]
fn characters_match_freudenthal() {
    for (name, cd) in small_graphs() {
        let c = cartan_matrix(&cd);
        for w in framings(cd.rank(), 3) {
            if weyl_dimension(&c, &w) > 64 {
                continue;
            }
            let m = IntegrableModule::build(&cd, &w, None).unwrap();
            let oracle = freudenthal(&c, &w);
            let built: Vec<(Vec<i64>, i64)> = m
                .support()
                .filter(|(_, s)| s.dim > 0)
                .map(|(v, s)| (v.clone(), s.dim as i64))
                .collect();
            let expected: Vec<(Vec<i64>, i64)> = oracle.into_iter().collect();
            assert_eq!(built, expected, "{name} w={w:?}");
            assert_eq!(
                m.total_dim() as i64,
                weyl_dimension(&c, &w),
                "{name} w={w:?}"
            );
        }
    }
}

#[test]
fn adjoint_of_a2() {
    let (_, cd) = small_graphs()
        .into_iter()
        .find(|(n, _)| *n == "A2")
        .unwrap();
    let m = IntegrableModule::build(&cd, &[1, 1], None).unwrap();
    assert_eq!(m.total_dim(), 8);
    assert_eq!(m.dim(&[1, 1]), 2);
}

#[test]
fn module_file_round_trip() {
    let (_, cd) = small_graphs()
        .into_iter()
        .find(|(n, _)| *n == "A3")
        .unwrap();
    let m = IntegrableModule::build(&cd, &[1, 0, 1], None).unwrap();
    let back = IntegrableModule::from_json(&m.to_json()).unwrap();
    assert_eq!(back.to_json(), m.to_json());
    assert!(verify_module(&back).unwrap().iter().all(|f| f.passed));
}
