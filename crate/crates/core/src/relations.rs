//! Exact relation checks on built modules.

use serde::Serialize;

use crate::error::Result;
use crate::matrix::Matrix;
use crate::qlaurent::{qfactorial, qint, QFraction};
use crate::rep::{IntegrableModule, QMatrix};

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Counterexample {
    pub weight: String,
    pub detail: String,
    pub lhs: Vec<Vec<String>>,
    pub rhs: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct RelationFamily {
    pub id: String,
    pub identity: String,
    pub instances: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

struct Family {
    out: RelationFamily,
}

impl Family {
    fn new(id: &str, identity: &str) -> Self {
        Self {
            out: RelationFamily {
                id: id.into(),
                identity: identity.into(),
                instances: 0,
                passed: true,
                counterexample: None,
            },
        }
    }

    fn check(
        &mut self,
        m: &IntegrableModule,
        v: &[i64],
        detail: impl FnOnce() -> String,
        lhs: QMatrix,
        rhs: QMatrix,
    ) {
        self.out.instances += 1;
        if lhs != rhs && self.out.passed {
            self.out.passed = false;
            let rows = |x: &QMatrix| {
                x.to_rows()
                    .iter()
                    .map(|r| r.iter().map(|e| e.to_string()).collect())
                    .collect()
            };
            self.out.counterexample = Some(Counterexample {
                weight: m.weight(v).to_string(),
                detail: detail(),
                lhs: rows(&lhs),
                rhs: rows(&rhs),
            });
        }
    }
}

fn up(v: &[i64], i: usize, r: i64) -> Vec<i64> {
    let mut u = v.to_vec();
    u[i] -= r;
    u
}

fn scalar_id(d: usize, c: QFraction) -> QMatrix {
    Matrix::identity(d).scale(&c)
}

/// Runs relation families (a)-(e) on every weight block (interior blocks only
/// for truncated modules).
pub fn verify_module(m: &IntegrableModule) -> Result<Vec<RelationFamily>> {
    let n = m.rank();
    let cd = &m.cartan;
    let name = |i: usize| cd.vertex_name(i).to_string();
    let mut comm = Family::new(
        "a",
        "(f_i e_i - e_i f_i) a_lambda = [<lambda, alpha_i>] a_lambda",
    );
    let mut cross = Family::new("b", "e_i f_j = f_j e_i for i != j");
    let mut serre = Family::new(
        "c",
        "Serre: e_i e_j e_i = e_i^(2) e_j + e_j e_i^(2) on edges, e_i e_j = e_j e_i otherwise; same for f",
    );
    let mut powers = Family::new("d", "e_i^r = [r]! e_i^(r) and f_i^r = [r]! f_i^(r)");
    let mut divided = Family::new(
        "e",
        "e_i e_i^(r) = [r+1] e_i^(r+1) and f_i f_i^(r) = [r+1] f_i^(r+1)",
    );

    for v in m.weights() {
        let d = m.dim(&v);
        for i in 0..n {
            for j in 0..n {
                if !m.is_interior(&v, 1) {
                    continue;
                }
                let fe = m.f(j, &up(&v, i, 1)).mul(&m.e(i, &v));
                let ef = m.e(i, &up(&v, j, -1)).mul(&m.f(j, &v));
                let lhs = fe.sub(&ef);
                if i == j {
                    let rhs = scalar_id(d, qint(m.pair(&v, i)).into());
                    comm.check(m, &v, || format!("i={}", name(i)), lhs, rhs);
                } else {
                    let rhs = Matrix::zeros(lhs.rows(), lhs.cols());
                    cross.check(m, &v, || format!("i={} j={}", name(i), name(j)), lhs, rhs);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for raise in [true, false] {
                    let steps = if raise { 0 } else { 3 };
                    if !m.is_interior(&v, steps) {
                        continue;
                    }
                    let s = if raise { 1 } else { -1 };
                    let g = |k: usize, pos: &[i64]| if raise { m.e(k, pos) } else { m.f(k, pos) };
                    let g2 = |k: usize, pos: &[i64]| {
                        if raise {
                            m.divided_e(k, 2, pos)
                        } else {
                            m.divided_f(k, 2, pos)
                        }
                    };
                    let letter = if raise { "e" } else { "f" };
                    if cd.matrix[i][j] == -1 {
                        let vi = up(&v, i, s);
                        let vij = up(&vi, j, s);
                        let lhs = g(i, &vij).mul(&g(j, &vi)).mul(&g(i, &v));
                        let vj = up(&v, j, s);
                        let a = g2(i, &vj).mul(&g(j, &v));
                        let b = g(j, &up(&v, i, 2 * s)).mul(&g2(i, &v));
                        serre.check(
                            m,
                            &v,
                            || format!("{letter} i={} j={}", name(i), name(j)),
                            lhs,
                            a.add(&b),
                        );
                    } else if i < j {
                        let lhs = g(i, &up(&v, j, s)).mul(&g(j, &v));
                        let rhs = g(j, &up(&v, i, s)).mul(&g(i, &v));
                        serre.check(
                            m,
                            &v,
                            || format!("{letter} i={} j={} commute", name(i), name(j)),
                            lhs,
                            rhs,
                        );
                    }
                }
            }
        }
        for i in 0..n {
            for raise in [true, false] {
                let letter = if raise { "e" } else { "f" };
                let s = if raise { 1 } else { -1 };
                let mut r = 1u32;
                loop {
                    if !raise && !m.is_interior(&v, r as i64 + 1) {
                        break;
                    }
                    let tgt = up(&v, i, s * r as i64);
                    if m.dim(&tgt) == 0 {
                        break;
                    }
                    let (pow, div, div_next) = if raise {
                        (
                            m.power(i, r, &v, true),
                            m.divided_e(i, r, &v),
                            m.divided_e(i, r + 1, &v),
                        )
                    } else {
                        (
                            m.power(i, r, &v, false),
                            m.divided_f(i, r, &v),
                            m.divided_f(i, r + 1, &v),
                        )
                    };
                    powers.check(
                        m,
                        &v,
                        || format!("{letter} i={} r={r}", name(i)),
                        pow,
                        div.scale(&qfactorial(r).into()),
                    );
                    let one = if raise { m.e(i, &tgt) } else { m.f(i, &tgt) };
                    divided.check(
                        m,
                        &v,
                        || format!("{letter} i={} r={r}", name(i)),
                        one.mul(&div),
                        div_next.scale(&qint(r as i64 + 1).into()),
                    );
                    r += 1;
                }
            }
        }
    }
    Ok(vec![
        comm.out,
        cross.out,
        serre.out,
        powers.out,
        divided.out,
    ])
}

/// `dim M(lambda) = dim M(s_i lambda)` for every weight and vertex.
pub fn weyl_symmetric(m: &IntegrableModule) -> Result<bool> {
    let ch = m.character()?;
    for (l, d) in &ch {
        for i in 0..m.rank() {
            let s = m.cartan.reflect(l, i)?;
            if m.dim(&s.v) != *d {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
