mod common;

use kquiver::quiver::{adjunction_shift, canonical_weight, quiver_dim};
use kquiver::{CartanData, GraphData, Weight};
use proptest::prelude::*;

#[test]
fn grassmannian_cotangent_dimensions() {
    let cd = CartanData::new(GraphData::path(1)).unwrap();
    for n in 0..=8i64 {
        for k in 0..=n {
            let l = Weight::new(vec![n], vec![k]);
            assert_eq!(quiver_dim(&cd, &l).dim, 2 * k * (n - k));
            assert_eq!(canonical_weight(&cd, &l), -2 * k * (n - k));
        }
    }
}

fn graph_strategy() -> impl Strategy<Value = CartanData> {
    prop::sample::select(vec!["A1", "A2", "A3", "A1xA1", "A2xA1", "A4"])
        .prop_map(|t| CartanData::new(GraphData::from_type(t).unwrap()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn adjunction_shift_is_half_the_dimension_drop(
        cd in graph_strategy(),
        seed in prop::collection::vec((0i64..4, 0i64..5), 4),
        i_raw in 0usize..4,
        r in 1i64..4,
    ) {
        let n = cd.rank();
        let w: Vec<i64> = seed.iter().take(n).map(|p| p.0).collect();
        let v: Vec<i64> = seed.iter().take(n).map(|p| p.1).collect();
        let i = i_raw % n;
        let lambda = Weight::new(w, v);
        let shift = adjunction_shift(&cd, &lambda, i, r).unwrap();
        let drop = quiver_dim(&cd, &lambda).dim - quiver_dim(&cd, &lambda.shifted(i, r)).dim;
        prop_assert_eq!(2 * shift.homological, drop);
        prop_assert_eq!(shift.equivariant, -shift.homological);
        prop_assert_eq!(canonical_weight(&cd, &lambda), -quiver_dim(&cd, &lambda).dim);
    }
}
