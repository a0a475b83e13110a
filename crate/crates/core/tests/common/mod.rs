//! Independent oracles shared by the integration and acceptance tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::process::{Command, Output};

use kquiver::{CartanData, GraphData};

/// The finite-type graphs exercised by the relation suites.
pub fn small_graphs() -> Vec<(&'static str, CartanData)> {
    ["A1", "A1xA1", "A2", "A3"]
        .into_iter()
        .map(|t| {
            (
                t,
                CartanData::new(GraphData::from_type(t).unwrap()).unwrap(),
            )
        })
        .collect()
}

/// Integer Cartan matrix rebuilt from the edge list, independently of the crate.
pub fn cartan_matrix(cd: &CartanData) -> Vec<Vec<i64>> {
    let n = cd.rank();
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (a, b) in &cd.graph.edges {
        let (i, j) = (cd.index_of(a).unwrap(), cd.index_of(b).unwrap());
        c[i][j] -= 1;
        c[j][i] -= 1;
    }
    c
}

fn mat_vec(c: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    c.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Positive roots in simple-root coordinates: close the simple roots under
/// `beta -> beta + alpha_i` whenever `(beta, alpha_i) = -1` (simply laced).
pub fn positive_roots(c: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = c.len();
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut k = 0;
    while k < roots.len() {
        let beta = roots[k].clone();
        let cb = mat_vec(c, &beta);
        for i in 0..n {
            if cb[i] == -1 {
                let mut next = beta.clone();
                next[i] += 1;
                if !roots.contains(&next) {
                    roots.push(next);
                }
            }
        }
        k += 1;
    }
    roots.sort();
    roots
}

/// Weyl dimension formula `prod (lambda + rho, beta) / (rho, beta)`.
pub fn weyl_dimension(c: &[Vec<i64>], w: &[i64]) -> i64 {
    let shifted: Vec<i64> = w.iter().map(|x| x + 1).collect();
    let ones = vec![1; w.len()];
    let (mut num, mut den) = (1i64, 1i64);
    for b in positive_roots(c) {
        num *= dot(&shifted, &b);
        den *= dot(&ones, &b);
    }
    assert_eq!(num % den, 0);
    num / den
}

/// Freudenthal recursion for `V(Lambda_w)`, weights indexed by `v`.
///
/// With `mu = Lambda_w - alpha_v` all pairings reduce to integers:
/// `(mu + k beta, beta) = (w - C(v - k b)) . b` and
/// `|Lambda_w + rho|^2 - |mu + rho|^2 = 2 (w + 1) . v - v^T C v`.
pub fn freudenthal(c: &[Vec<i64>], w: &[i64]) -> BTreeMap<Vec<i64>, i64> {
    let n = w.len();
    let roots = positive_roots(c);
    // height of lambda - w0 lambda is (lambda, 2 rho) = sum over positive roots of (lambda, beta)
    let bound: i64 = roots.iter().map(|b| dot(w, b)).sum();
    let mut vs: Vec<Vec<i64>> = Vec::new();
    let mut v = vec![0i64; n];
    loop {
        if v.iter().sum::<i64>() <= bound {
            vs.push(v.clone());
        }
        let mut k = n;
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            if v[k] < bound {
                v[k] += 1;
                break;
            }
            v[k] = 0;
        }
        if v.iter().all(|&x| x == 0) {
            break;
        }
    }
    vs.sort_by_key(|v| v.iter().sum::<i64>());
    let mut m: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    let rho_w: Vec<i64> = w.iter().map(|x| x + 1).collect();
    for v in vs {
        if v.iter().all(|&x| x == 0) {
            m.insert(v, 1);
            continue;
        }
        let den = 2 * dot(&rho_w, &v) - dot(&v, &mat_vec(c, &v));
        let mut num = 0i64;
        for b in &roots {
            let mut k = 1;
            loop {
                let u: Vec<i64> = v.iter().zip(b).map(|(x, y)| x - k * y).collect();
                if u.iter().any(|&x| x < 0) {
                    break;
                }
                if let Some(&mu) = m.get(&u) {
                    let pairing: Vec<i64> =
                        w.iter().zip(mat_vec(c, &u)).map(|(a, b)| a - b).collect();
                    num += mu * dot(&pairing, b);
                }
                k += 1;
            }
        }
        // the identity m(mu) * den = 2 num holds at every mu, so den = 0 forces num = 0
        if den == 0 {
            assert_eq!(num, 0, "Freudenthal identity broken at v={v:?}");
        } else if num != 0 {
            assert_eq!((2 * num) % den, 0, "non-integral multiplicity at v={v:?}");
            m.insert(v, 2 * num / den);
        }
    }
    m
}

/// All nonzero `w` with nonnegative entries summing to at most `max`.
pub fn framings(rank: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                let used: i64 = p.iter().sum();
                (0..=max - used).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out.retain(|w| w.iter().any(|&x| x > 0));
    out
}

pub fn kquiver(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kquiver"))
        .args(args)
        .env_remove("KQUIVER_JOBS")
        .output()
        .expect("binary runs")
}
