//! Multivariate rational functions over Q with factored denominators.
//!
//! Variables are indexed by position: `t` is variable 0 and `x_i` is variable
//! `i + 1`. Denominators are multisets of normalized polynomial factors; no
//! gcds are taken, but factors that divide the numerator exactly are cancelled.
//! Equality is by cross-multiplication over the common factor multiset.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exponent vector with trailing zeros trimmed.
pub type Mono = Vec<i32>;

fn trim(mut m: Mono) -> Mono {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn mono_mul(a: &[i32], b: &[i32]) -> Mono {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
            .collect(),
    )
}

fn mono_neg(a: &[i32]) -> Mono {
    a.iter().map(|x| -x).collect()
}

/// Laurent polynomial in several variables.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LPoly(BTreeMap<Mono, BigRational>);

impl LPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(Vec::new(), c)
    }

    pub fn term(m: Mono, c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(trim(m), c);
        p
    }

    fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(m.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.0 {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self(
            self.0
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.0 {
            for (mb, cb) in &o.0 {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }

    fn mul_term(&self, m: &[i32], c: &BigRational) -> Self {
        Self(
            self.0
                .iter()
                .map(|(k, v)| (mono_mul(k, m), v * c))
                .collect(),
        )
    }

    /// Componentwise minimum exponent over all terms.
    fn min_mono(&self) -> Mono {
        let n = self.0.keys().map(Vec::len).max().unwrap_or(0);
        let mut out = vec![i32::MAX; n];
        for m in self.0.keys() {
            for (i, slot) in out.iter_mut().enumerate() {
                *slot = (*slot).min(m.get(i).copied().unwrap_or(0));
            }
        }
        trim(
            out.into_iter()
                .map(|x| if x == i32::MAX { 0 } else { x })
                .collect(),
        )
    }

    /// Writes `self = x^m * c * p` with `p` a polynomial whose minimum exponent is
    /// zero in each variable and whose lex-leading coefficient is 1.
    fn normalize(&self) -> (Mono, BigRational, LPoly) {
        let m = self.min_mono();
        let shifted = self.mul_term(&mono_neg(&m), &BigRational::one());
        let c = shifted
            .0
            .values()
            .next_back()
            .cloned()
            .expect("nonzero polynomial");
        let p = shifted.mul_term(&[], &c.recip());
        (m, c, p)
    }

    fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0.get(&Vec::new()).is_some_and(|c| c.is_one())
    }

    /// Exact quotient by a normalized polynomial `f`, if it exists.
    fn div_exact(&self, f: &LPoly) -> Option<LPoly> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let m = self.min_mono();
        let mut rem = self.mul_term(&mono_neg(&m), &BigRational::one());
        let (lt_m, lt_c) = f.0.iter().next_back().expect("nonzero divisor");
        let mut quot = Self::zero();
        while let Some((pm, pc)) = rem.0.iter().next_back() {
            let n = pm.len().max(lt_m.len());
            let mut qm = Vec::with_capacity(n);
            for i in 0..n {
                let d = pm.get(i).copied().unwrap_or(0) - lt_m.get(i).copied().unwrap_or(0);
                if d < 0 {
                    return None;
                }
                qm.push(d);
            }
            let qm = trim(qm);
            let qc = pc / lt_c;
            rem = rem.add(&f.mul_term(&qm, &(-qc.clone())));
            quot.add_term(qm, qc);
        }
        Some(quot.mul_term(&m, &BigRational::one()))
    }

    pub fn eval(&self, vals: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.0 {
            let mut term = c.clone();
            for (i, e) in m.iter().enumerate() {
                term *= crate::qlaurent::pow_rat(&vals[i], *e as i64);
            }
            acc += term;
        }
        acc
    }

    /// Substitute every variable by its inverse.
    pub fn invert_vars(&self) -> Self {
        Self(
            self.0
                .iter()
                .map(|(m, c)| (mono_neg(m), c.clone()))
                .collect(),
        )
    }
}

impl fmt::Debug for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(m, c)| {
                let vars: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| **e != 0)
                    .map(|(i, e)| {
                        let name = if i == 0 {
                            "t".to_string()
                        } else {
                            format!("x{i}")
                        };
                        if *e == 1 {
                            name
                        } else {
                            format!("{name}^{e}")
                        }
                    })
                    .collect();
                if vars.is_empty() {
                    c.to_string()
                } else {
                    format!("{c}*{}", vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `num / prod(den factors)`.
#[derive(Clone)]
pub struct RatFn {
    num: LPoly,
    den: BTreeMap<LPoly, u32>,
}

impl RatFn {
    pub fn var(i: usize) -> Self {
        let mut m = vec![0; i + 1];
        m[i] = 1;
        Self::from_poly(LPoly::term(m, BigRational::one()))
    }

    pub fn from_poly(p: LPoly) -> Self {
        Self {
            num: p,
            den: BTreeMap::new(),
        }
    }

    pub fn numerator(&self) -> &LPoly {
        &self.num
    }

    pub fn den_factors(&self) -> usize {
        self.den.values().map(|&k| k as usize).sum()
    }

    fn expand(factors: &BTreeMap<LPoly, u32>) -> LPoly {
        let mut acc = LPoly::constant(BigRational::one());
        for (f, k) in factors {
            for _ in 0..*k {
                acc = acc.mul(f);
            }
        }
        acc
    }

    fn cancel(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let keys: Vec<LPoly> = self.den.keys().cloned().collect();
        for f in keys {
            while self.den.get(&f).copied().unwrap_or(0) > 0 {
                match self.num.div_exact(&f) {
                    Some(q) => {
                        self.num = q;
                        let k = self.den.get_mut(&f).expect("present");
                        *k -= 1;
                        if *k == 0 {
                            self.den.remove(&f);
                        }
                    }
                    None => break,
                }
            }
        }
        self
    }

    /// Numerators of `self` and `o` over the union of both factor multisets.
    fn common(&self, o: &Self) -> (LPoly, LPoly, BTreeMap<LPoly, u32>) {
        if self.den == o.den {
            return (self.num.clone(), o.num.clone(), self.den.clone());
        }
        let mut lcm = self.den.clone();
        for (f, k) in &o.den {
            let slot = lcm.entry(f.clone()).or_insert(0);
            *slot = (*slot).max(*k);
        }
        let missing = |d: &BTreeMap<LPoly, u32>| {
            let mut m = BTreeMap::new();
            for (f, k) in &lcm {
                let have = d.get(f).copied().unwrap_or(0);
                if *k > have {
                    m.insert(f.clone(), k - have);
                }
            }
            m
        };
        let a = self.num.mul(&Self::expand(&missing(&self.den)));
        let b = o.num.mul(&Self::expand(&missing(&o.den)));
        (a, b, lcm)
    }

    pub fn eval(&self, vals: &[BigRational]) -> Option<BigRational> {
        let mut d = BigRational::one();
        for (f, k) in &self.den {
            let v = f.eval(vals);
            for _ in 0..*k {
                d *= &v;
            }
        }
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(vals) / d)
    }

    /// Substitute every variable by its inverse.
    pub fn invert_vars(&self) -> Self {
        let num = self.num.invert_vars();
        let mut out = Self::from_poly(num);
        for (f, k) in &self.den {
            for _ in 0..*k {
                out = crate::field::Field::div(&out, &Self::from_poly(f.invert_vars()))
                    .expect("nonzero factor");
            }
        }
        out
    }
}

impl PartialEq for RatFn {
    fn eq(&self, o: &Self) -> bool {
        let (a, b, _) = self.common(o);
        a == b
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})", self.num)?;
        for (p, k) in &self.den {
            write!(f, " / ({p:?})^{k}")?;
        }
        Ok(())
    }
}

impl crate::field::Field for RatFn {
    fn zero() -> Self {
        Self::from_poly(LPoly::zero())
    }
    fn one() -> Self {
        Self::from_poly(LPoly::constant(One::one()))
    }
    fn from_i64(n: i64) -> Self {
        Self::from_poly(LPoly::constant(BigRational::from_integer(BigInt::from(n))))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.num.is_zero() {
            return o.clone();
        }
        if o.num.is_zero() {
            return self.clone();
        }
        let (a, b, den) = self.common(o);
        Self {
            num: a.add(&b),
            den,
        }
        .cancel()
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.num.is_zero() || o.num.is_zero() {
            return Self::zero();
        }
        let mut den = self.den.clone();
        for (f, k) in &o.den {
            *den.entry(f.clone()).or_insert(0) += k;
        }
        Self {
            num: self.num.mul(&o.num),
            den,
        }
        .cancel()
    }
    fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        let (m, c, p) = self.num.normalize();
        let num = Self::expand(&self.den).mul_term(&mono_neg(&m), &c.recip());
        let mut den = BTreeMap::new();
        if !p.is_one() {
            den.insert(p, 1);
        }
        Some(Self { num, den }.cancel())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn r(n: i64) -> BigRational {
        BigRational::from_i64(n)
    }

    #[test]
    fn arithmetic_matches_evaluation() {
        let t = RatFn::var(0);
        let x = RatFn::var(1);
        let y = RatFn::var(2);
        let one = RatFn::one();
        // 1/(1 - x/y) + 1/(1 - y/x) = 1
        let a = one.sub(&x.div(&y).unwrap()).inv().unwrap();
        let b = one.sub(&y.div(&x).unwrap()).inv().unwrap();
        assert_eq!(a.add(&b), one);
        let e = t.mul(&x).add(&y.inv().unwrap()).div(&one.sub(&t)).unwrap();
        let vals = [BigRational::new(2.into(), 3.into()), r(5), r(-7)];
        let direct =
            (r(2) / r(3) * r(5) + r(-7).recip()) / (r(1) - BigRational::new(2.into(), 3.into()));
        assert_eq!(e.eval(&vals).unwrap(), direct);
        assert_eq!(e.mul(&e.inv().unwrap()), one);
    }

    #[test]
    fn cancellation() {
        let x = RatFn::var(1);
        let one = RatFn::one();
        // (1 - x^2)/(1 - x) = 1 + x
        let num = one.sub(&x.mul(&x));
        let q = num.div(&one.sub(&x)).unwrap();
        assert_eq!(q.den_factors(), 0);
        assert_eq!(q, one.add(&x));
    }

    #[test]
    fn invert_vars() {
        let x = RatFn::var(1);
        let t = RatFn::var(0);
        let e = x.div(&RatFn::one().sub(&t)).unwrap();
        let c = e.invert_vars();
        let expect = x
            .inv()
            .unwrap()
            .div(&RatFn::one().sub(&t.inv().unwrap()))
            .unwrap();
        assert_eq!(c, expect);
    }
}
