//! Comparison of the localization model with the algebraic sl2 module `V(N)`.
//!
//! The vectors `u_k = F^(k) 1` span a copy of `V(N)` inside
//! `⊕_k K(T*G(k,N))`. The algebraic basis `b_k` is matched by `b_k ↦ c_k u_k`,
//! intertwining `e ↦ E` and `f ↦ -F` (the algebraic module uses the opposite
//! commutator sign). The scalars `c_k` are forced by `f` and reported; `e` and
//! the Rickard operator are then checked against them.

use super::checks::{CheckKind, CheckReport, Recorder};
use super::local::{qint_at, Model};
use super::Scalar;
use crate::braid::{rickard_operator, RickardConvention};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::qlaurent::{qint, QFraction};
use crate::rep::IntegrableModule;

fn first_ratio<F: Scalar>(a: &Matrix<F>, b: &Matrix<F>) -> Option<F> {
    (0..b.rows()).find_map(|i| {
        let d = b.get(i, 0);
        (!d.is_zero()).then(|| a.get(i, 0).div(d).expect("nonzero"))
    })
}

pub(crate) fn cross_model_check<F: Scalar>(
    m: &Model<F>,
    alg: &IntegrableModule,
    braid: &RickardConvention,
) -> Result<CheckReport> {
    let mut rec = Recorder::new(CheckKind::CrossModel);
    let n = m.n();
    if alg.rank() != 1 || alg.dim(&[n as i64]) != 1 || alg.dim(&[n as i64 + 1]) != 0 {
        return Err(Error::Shape(format!(
            "cross-model check needs the sl2 module V({n})"
        )));
    }
    let at = |q: &QFraction| m.torus.qfraction(q).ok_or(Error::DivisionByZero);
    let mut u: Vec<Matrix<F>> = vec![Matrix::identity(1)];
    for k in 1..=n {
        let next = m.operator(&m.f(k, k)?).mul(&u[0]);
        rec.truth(!next.is_zero(), || format!("k={k}: F^(k) 1 vanishes"));
        u.push(next);
    }
    let mut c = vec![QFraction::one()];
    for k in 1..=n {
        let fu = m.operator(&m.f(k, 1)?).mul(&u[k - 1]);
        rec.truth(fu == u[k].scale(&qint_at(&m.torus, k as i64)), || {
            format!("k={k}: F u_(k-1) != [k] u_k")
        });
        let beta = alg.f(0, &[k as i64 - 1]).get(0, 0).clone();
        let alpha = alg.e(0, &[k as i64]).get(0, 0).clone();
        let ck = c[k - 1]
            .neg()
            .mul(&QFraction::from(qint(k as i64)))
            .div(&beta)
            .ok_or(Error::DivisionByZero)?;
        let eu = m.operator(&m.e(k, 1)?).mul(&u[k]);
        let coeff = alpha.mul(&c[k - 1]).div(&ck).ok_or(Error::DivisionByZero)?;
        let expect = u[k - 1].scale(&at(&coeff)?);
        rec.truth(eu == expect, || {
            format!("k={k}: E u_k disagrees with e on V({n})")
        });
        c.push(ck);
    }
    for (k, ck) in c.iter().enumerate() {
        rec.observe(Some(k), "scalar c_k", ck.to_string());
    }
    let alg_t = rickard_operator(alg, 0, braid)?;
    for k in 0..=n {
        let block = alg_t
            .blocks
            .get(&alg.weight(&[k as i64]))
            .ok_or_else(|| Error::Internal(format!("missing algebraic block at k={k}")))?;
        let tau = block.matrix.get(0, 0).clone();
        let geo = m.operator(&*m.rickard(k)?).mul(&u[k]);
        let scale = tau.mul(&c[n - k]).div(&c[k]).ok_or(Error::DivisionByZero)?;
        let alg_image = u[n - k].scale(&at(&scale)?);
        match first_ratio(&geo, &alg_image) {
            Some(rho) if geo == alg_image.scale(&rho) => {
                rec.truth(true, String::new);
                let text = m
                    .torus
                    .as_signed_t_power(&rho, 4 * n as i64 + 4)
                    .map_or_else(
                        || rho.render(),
                        |(s, e)| format!("{}t^{e}", if s < 0 { "-" } else { "" }),
                    );
                rec.observe(Some(k), "braid block ratio", text);
            }
            _ => rec.truth(false, || {
                format!("k={k}: T u_k is not proportional to u_(N-k)")
            }),
        }
    }
    Ok(rec.out)
}
