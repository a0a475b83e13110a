use kquiver::ktheory::{run_suite, CheckKind, SuiteConfig};

fn config(n: usize, checks: &[CheckKind], symbolic: bool) -> SuiteConfig {
    SuiteConfig {
        checks: checks.to_vec(),
        symbolic,
        ..SuiteConfig::new(n)
    }
}

const CORE: [CheckKind; 7] = [
    CheckKind::Commutator,
    CheckKind::Divided,
    CheckKind::Adjoint,
    CheckKind::LeftAdjoint,
    CheckKind::Reflection,
    CheckKind::ConvolutionSwap,
    CheckKind::Invertible,
];

#[test]
fn core_identities_at_points() {
    for n in 1..=4 {
        let r = run_suite(&config(n, &CORE, false)).unwrap();
        for c in &r.checks {
            assert!(c.passed, "N={n} {}: {:?}", c.id, c.counterexample);
        }
    }
}

#[test]
fn core_identities_symbolic() {
    for n in 1..=3 {
        let r = run_suite(&config(n, &CORE, true)).unwrap();
        assert!(r.passed, "N={n}: {:?}", r.checks.iter().find(|c| !c.passed));
    }
}

#[test]
fn cross_model_scalars_alternate() {
    for n in 1..=3 {
        let r = run_suite(&config(n, &[CheckKind::CrossModel], false)).unwrap();
        let c = &r.checks[0];
        assert!(c.passed, "N={n}: {:?}", c.counterexample);
        let scalars: Vec<&str> = c
            .observations
            .iter()
            .filter(|o| o.label == "scalar c_k")
            .map(|o| o.value.as_str())
            .collect();
        assert_eq!(scalars.len(), n + 1);
        assert_eq!(scalars[0], "1");
    }
}

#[test]
fn affine_correction_is_symmetric_in_k() {
    let r = run_suite(&config(4, &[CheckKind::Affine], false)).unwrap();
    let c = &r.checks[0];
    assert!(!c.passed);
    let sym = c
        .observations
        .iter()
        .find(|o| o.label == "correction {-|N-2k|} for every k")
        .unwrap();
    assert_eq!(sym.value, "true");
    for k in [vec![0, 1, 2], vec![2, 3, 4]] {
        let cfg = SuiteConfig {
            ks: Some(k.clone()),
            ..config(4, &[CheckKind::Affine], false)
        };
        assert!(run_suite(&cfg).unwrap().passed, "k in {k:?}");
    }
}

#[test]
fn seeds_change_points_but_not_verdicts() {
    let a = run_suite(&SuiteConfig {
        seed: 1,
        ..config(3, &CORE, false)
    })
    .unwrap();
    let b = run_suite(&SuiteConfig {
        seed: 2,
        ..config(3, &CORE, false)
    })
    .unwrap();
    assert_ne!(a.points, b.points);
    assert!(a.passed && b.passed);
}
