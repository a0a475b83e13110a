//! Closed-form numerics for quiver varieties and Hecke correspondences.

use serde::Serialize;

use crate::cartan::{CartanData, Weight};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimInfo {
    pub dim: i64,
    /// Heuristic marker: negative dimension or negative `v`.
    pub empty: bool,
}

/// `2 <alpha_v, Lambda_w> - <alpha_v, alpha_v>`.
pub fn quiver_dim(cd: &CartanData, lambda: &Weight) -> DimInfo {
    let wv: i64 = lambda.w.iter().zip(&lambda.v).map(|(a, b)| a * b).sum();
    let dim = 2 * wv - cd.root_pairing(&lambda.v, &lambda.v);
    DimInfo {
        dim,
        empty: dim < 0 || lambda.v.iter().any(|&x| x < 0),
    }
}

/// Equivariant weight of the canonical bundle.
pub fn canonical_weight(cd: &CartanData, lambda: &Weight) -> i64 {
    -quiver_dim(cd, lambda).dim
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Shift {
    pub homological: i64,
    pub equivariant: i64,
}

/// Shift relating the right adjoint of `E_i^(r)` to `F_i^(r)`:
/// `(r(<lambda,alpha_i> + r), -r(<lambda,alpha_i> + r))`.
pub fn adjunction_shift(cd: &CartanData, lambda: &Weight, i: usize, r: i64) -> Result<Shift> {
    if r < 1 {
        return Err(Error::OutOfRange(format!("r = {r} must be at least 1")));
    }
    let s = r * (cd.pair(lambda, i)? + r);
    Ok(Shift {
        homological: s,
        equivariant: -s,
    })
}

/// Left-adjoint variant: both signs flipped.
pub fn left_adjunction_shift(cd: &CartanData, lambda: &Weight, i: usize, r: i64) -> Result<Shift> {
    let s = adjunction_shift(cd, lambda, i, r)?;
    Ok(Shift {
        homological: -s.homological,
        equivariant: -s.equivariant,
    })
}

/// `1/2 (dim M(lambda) + dim M(lambda + r alpha_i))`.
pub fn hecke_dim(cd: &CartanData, lambda: &Weight, i: usize, r: i64) -> Result<DimInfo> {
    if r < 1 {
        return Err(Error::OutOfRange(format!("r = {r} must be at least 1")));
    }
    if i >= cd.rank() {
        return Err(Error::UnknownVertex(format!("#{i}")));
    }
    let a = quiver_dim(cd, lambda);
    let b = quiver_dim(cd, &lambda.shifted(i, r));
    let sum = a.dim + b.dim;
    if sum % 2 != 0 {
        return Err(Error::OutOfRange(format!(
            "odd dimension sum {sum} for the correspondence at {lambda}"
        )));
    }
    Ok(DimInfo {
        dim: sum / 2,
        empty: a.empty || b.empty,
    })
}

fn floor_half(x: i64) -> i64 {
    x.div_euclid(2)
}

/// Conjugation scalar `s` for vertex `i`, evaluated from the floor expression
/// `-[<l,l>/2] + 2 sum v + [<l-a_i, l-a_i>/2] - 2 sum v'`.
///
/// `<Lambda_w, Lambda_w>` is not determined by `(w, v)`; it enters both floors
/// as the same integer `K`, and the difference only depends on the parity of
/// `K`. Both parities are evaluated and must agree with `-<lambda, alpha_i> - 1`.
pub fn nakajima_conjugation_scalar(cd: &CartanData, lambda: &Weight, i: usize) -> Result<i64> {
    let n = cd.pair(lambda, i)?;
    let vprime = lambda.shifted(i, -1);
    // <lambda, lambda> - K
    let rest = |l: &Weight| -> i64 {
        let wv: i64 = l.w.iter().zip(&l.v).map(|(a, b)| a * b).sum();
        -2 * wv + cd.root_pairing(&l.v, &l.v)
    };
    let (a, b) = (rest(lambda), rest(&vprime));
    let sum_v: i64 = lambda.v.iter().sum();
    let sum_vp: i64 = vprime.v.iter().sum();
    let closed = -n - 1;
    for k in [0i64, 1] {
        let s = -floor_half(k + a) + 2 * sum_v + floor_half(k + b) - 2 * sum_vp;
        if s != closed {
            return Err(Error::Internal(format!(
                "conjugation scalar mismatch at {lambda}, vertex {i}: {s} vs {closed}"
            )));
        }
    }
    Ok(closed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    E,
    F,
}

/// Exponents of the line bundles in a kernel twist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TwistWord {
    pub det_v: i64,
    pub det_v_prime: i64,
    pub det_quotient: i64,
    pub det_neighbors: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelSpec {
    pub direction: Direction,
    pub vertex: usize,
    pub r: i64,
    pub source: Weight,
    pub twist: TwistWord,
    pub equivariant_shift: i64,
}

/// Grading data of the `E_i^(r)` / `F_i^(r)` kernels out of `lambda`.
pub fn kernel_spec(
    cd: &CartanData,
    dir: Direction,
    lambda: &Weight,
    i: usize,
    r: i64,
) -> Result<KernelSpec> {
    if r < 1 {
        return Err(Error::OutOfRange(format!("r = {r} must be at least 1")));
    }
    let n = cd.pair(lambda, i)?;
    let vi = lambda.v[i];
    let (twist, shift) = match dir {
        Direction::E => (
            TwistWord {
                det_v: r,
                det_v_prime: r,
                det_quotient: 0,
                det_neighbors: -r,
            },
            -r * vi,
        ),
        Direction::F => (
            TwistWord {
                det_v: 0,
                det_v_prime: 0,
                det_quotient: n + r,
                det_neighbors: 0,
            },
            r * (vi - r),
        ),
    };
    Ok(KernelSpec {
        direction: dir,
        vertex: i,
        r,
        source: lambda.clone(),
        twist,
        equivariant_shift: shift,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimRow {
    pub v: Vec<i64>,
    pub pairings: Vec<i64>,
    pub dim: i64,
    pub canonical_weight: i64,
    pub empty: bool,
}

/// Rows for every nonnegative `v` with `sum v <= height`, in lexicographic order.
pub fn dimension_table(cd: &CartanData, w: &[i64], height: i64) -> Result<Vec<DimRow>> {
    if w.len() != cd.rank() {
        return Err(Error::Shape(
            "framing length differs from vertex count".into(),
        ));
    }
    let mut out = Vec::new();
    let mut v = vec![0i64; cd.rank()];
    loop {
        if v.iter().sum::<i64>() <= height {
            let l = Weight::new(w.to_vec(), v.clone());
            let d = quiver_dim(cd, &l);
            out.push(DimRow {
                v: v.clone(),
                pairings: (0..cd.rank())
                    .map(|i| cd.pair(&l, i))
                    .collect::<Result<_>>()?,
                dim: d.dim,
                canonical_weight: -d.dim,
                empty: d.empty,
            });
        }
        // odometer over 0..=height in each coordinate, last coordinate fastest
        let mut k = cd.rank();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            if v[k] < height {
                v[k] += 1;
                break;
            }
            v[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::GraphData;
    use proptest::prelude::*;

    fn a1() -> CartanData {
        CartanData::new(GraphData::path(1)).unwrap()
    }

    #[test]
    fn dim_examples() {
        let cd = a1();
        for n in 0..=8 {
            for k in 0..=n {
                let d = quiver_dim(&cd, &Weight::new(vec![n], vec![k]));
                assert_eq!(d.dim, 2 * k * (n - k));
            }
        }
        let a2 = CartanData::new(GraphData::path(2)).unwrap();
        assert_eq!(quiver_dim(&a2, &Weight::new(vec![1, 1], vec![0, 0])).dim, 0);
        assert_eq!(quiver_dim(&a2, &Weight::new(vec![1, 1], vec![1, 1])).dim, 2);
        assert!(quiver_dim(&cd, &Weight::new(vec![1], vec![2])).empty);
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_weight(&a1(), &Weight::new(vec![2], vec![1])), -2);
        assert_eq!(canonical_weight(&a1(), &Weight::new(vec![2], vec![0])), 0);
    }

    #[test]
    fn adjunction_examples() {
        let cd = a1();
        // <lambda, alpha> = 0
        let s = adjunction_shift(&cd, &Weight::new(vec![2], vec![1]), 0, 1).unwrap();
        assert_eq!((s.homological, s.equivariant), (1, -1));
        // <lambda, alpha> = -2
        let s = adjunction_shift(&cd, &Weight::new(vec![2], vec![2]), 0, 2).unwrap();
        assert_eq!((s.homological, s.equivariant), (0, 0));
        let l = left_adjunction_shift(&cd, &Weight::new(vec![2], vec![1]), 0, 1).unwrap();
        assert_eq!((l.homological, l.equivariant), (-1, 1));
        assert!(adjunction_shift(&cd, &Weight::new(vec![2], vec![1]), 0, 0).is_err());
    }

    #[test]
    fn hecke_examples() {
        let cd = a1();
        let h = hecke_dim(&cd, &Weight::new(vec![2], vec![1]), 0, 1).unwrap();
        assert_eq!(h.dim, 1);
        let h = hecke_dim(&cd, &Weight::new(vec![2], vec![1]), 0, 2).unwrap();
        assert!(h.empty);
    }

    #[test]
    fn conjugation_examples() {
        let cd = a1();
        assert_eq!(
            nakajima_conjugation_scalar(&cd, &Weight::new(vec![2], vec![1]), 0).unwrap(),
            -1
        );
        assert_eq!(
            nakajima_conjugation_scalar(&cd, &Weight::new(vec![2], vec![0]), 0).unwrap(),
            -3
        );
    }

    #[test]
    fn kernel_specs() {
        let cd = a1();
        let l = Weight::new(vec![4], vec![1]);
        let e = kernel_spec(&cd, Direction::E, &l, 0, 1).unwrap();
        assert_eq!(e.equivariant_shift, -1);
        let f = kernel_spec(&cd, Direction::F, &l, 0, 2).unwrap();
        assert_eq!(f.twist.det_quotient, 2 + 2);
        assert_eq!(f.equivariant_shift, 2 * (1 - 2));
    }

    #[test]
    fn table_rows() {
        let rows = dimension_table(&a1(), &[2], 2).unwrap();
        let dims: Vec<i64> = rows.iter().map(|r| r.dim).collect();
        assert_eq!(dims, vec![0, 2, 0]);
        let a2 = CartanData::new(GraphData::path(2)).unwrap();
        let rows = dimension_table(&a2, &[1, 1], 2).unwrap();
        assert!(rows.iter().any(|r| r.v == vec![1, 1] && r.dim == 2));
    }

    proptest! {
        #[test]
        fn invariants(w in proptest::collection::vec(0i64..4, 3),
                      v in proptest::collection::vec(0i64..4, 3),
                      i in 0usize..3, r in 1i64..3) {
            let cd = CartanData::new(GraphData::path(3)).unwrap();
            let l = Weight::new(w, v);
            prop_assert_eq!(canonical_weight(&cd, &l) + quiver_dim(&cd, &l).dim, 0);
            let s = adjunction_shift(&cd, &l, i, r).unwrap();
            prop_assert_eq!(s.homological, -s.equivariant);
            let sr = cd.reflect(&l, i).unwrap();
            if sr.v.iter().all(|&x| x >= 0) {
                prop_assert_eq!(quiver_dim(&cd, &l).dim, quiver_dim(&cd, &sr).dim);
            }
            prop_assert_eq!(nakajima_conjugation_scalar(&cd, &l, i).unwrap(), -cd.pair(&l, i).unwrap() - 1);
            let h = hecke_dim(&cd, &l, i, r).unwrap();
            let up = quiver_dim(&cd, &l.shifted(i, r)).dim;
            prop_assert_eq!(h.dim - up, s.homological);
            for dir in [Direction::E, Direction::F] {
                let k = kernel_spec(&cd, dir, &l, i, r).unwrap();
                match dir {
                    Direction::E => prop_assert_eq!(k.equivariant_shift, -r * l.v[i]),
                    Direction::F => {
                        prop_assert_eq!(k.twist.det_quotient, cd.pair(&l, i).unwrap() + r);
                        prop_assert_eq!(k.equivariant_shift, r * (l.v[i] - r));
                    }
                }
            }
        }
    }
}
