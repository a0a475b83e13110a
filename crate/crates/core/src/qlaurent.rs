//! Laurent polynomials in `q` with rational coefficients, their fraction
//! field, and quantum integers / binomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Sparse Laurent polynomial `sum c_e q^e`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QLaurent {
    coeffs: BTreeMap<i64, BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(rat(1))
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn monomial(c: BigRational, e: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        Self { coeffs }
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(rat(1), e)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.coeffs
            .get(&e)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Multiply by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| (k + e, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Substitute `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(k, c)| (-k, c.clone())).collect(),
        }
    }

    pub fn is_palindromic(&self) -> bool {
        *self == self.bar()
    }

    pub fn eval(&self, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.coeffs {
            acc += c * pow_rat(q, *e);
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (lo_a, lo_b) = (self.min_exp()?, other.min_exp()?);
        let a = Poly::from_laurent(self);
        let b = Poly::from_laurent(other);
        let (quot, rem) = a.divrem(&b);
        if !rem.is_zero() {
            return None;
        }
        Some(quot.to_laurent(lo_a - lo_b))
    }
}

pub(crate) fn pow_rat(x: &BigRational, e: i64) -> BigRational {
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match *e {
                0 => String::new(),
                1 => "q".to_string(),
                e => format!("q^{e}"),
            };
            let coeff = if abs.is_integer() {
                abs.numer().to_string()
            } else {
                format!("{}/{}", abs.numer(), abs.denom())
            };
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{coeff}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{coeff}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QLaurent({self})")
    }
}

impl FromStr for QLaurent {
    type Err = Error;

    /// Parses the canonical text form, e.g. `"q^2 + 2 + q^-2"` or `"-3/2*q"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad Laurent polynomial: {s:?}"));
        let s = s.trim();
        if s.is_empty() {
            return Err(bad());
        }
        let mut out = Self::zero();
        // Split on top-level + and - separated by spaces.
        let mut sign = 1i64;
        let mut expect_term = true;
        for tok in s.split_whitespace() {
            if !expect_term {
                match tok {
                    "+" => sign = 1,
                    "-" => sign = -1,
                    _ => return Err(bad()),
                }
                expect_term = true;
                continue;
            }
            let (neg, body) = match tok.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, tok),
            };
            let (coeff_str, mono) = match body.split_once('*') {
                Some((c, m)) => (Some(c), Some(m)),
                None if body.starts_with('q') => (None, Some(body)),
                None => (Some(body), None),
            };
            let coeff = match coeff_str {
                Some(c) => parse_rational(c).ok_or_else(bad)?,
                None => rat(1),
            };
            let e = match mono {
                None => 0,
                Some("q") => 1,
                Some(m) => m
                    .strip_prefix("q^")
                    .and_then(|x| x.parse::<i64>().ok())
                    .ok_or_else(bad)?,
            };
            let mut c = coeff * rat(sign);
            if neg {
                c = -c;
            }
            out.add_term(e, c);
            expect_term = false;
        }
        if expect_term {
            return Err(bad());
        }
        Ok(out)
    }
}

pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl Add for &QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        let mut out = QLaurent::zero();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        QLaurent {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Serialize for QLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QLaurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Dense univariate polynomial over Q, coefficient `i` of `q^i`; no trailing zeros.
#[derive(Clone, PartialEq, Debug)]
struct Poly(Vec<BigRational>);

impl Poly {
    fn from_laurent(p: &QLaurent) -> Self {
        let lo = p.min_exp().unwrap_or(0);
        let hi = p.max_exp().unwrap_or(-1);
        let mut v = vec![BigRational::zero(); (hi - lo + 1).max(0) as usize];
        for (e, c) in p.terms() {
            v[(e - lo) as usize] = c.clone();
        }
        Poly(v)
    }

    fn to_laurent(&self, shift: i64) -> QLaurent {
        QLaurent::from_terms(
            self.0
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i64 + shift, c.clone())),
        )
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("nonzero polynomial")
    }

    fn divrem(&self, b: &Poly) -> (Poly, Poly) {
        let mut rem = self.0.clone();
        let db = b.0.len() - 1;
        if rem.len() < b.0.len() {
            return (Poly(vec![]), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - db];
        let lb = b.lead().clone();
        for i in (0..quot.len()).rev() {
            let c = &rem[i + db] / &lb;
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.0.iter().enumerate() {
                rem[i + j] -= &c * bj;
            }
            quot[i] = c;
        }
        (Poly(quot).trim(), Poly(rem).trim())
    }

    fn monic(&self) -> Poly {
        let l = self.lead().clone();
        Poly(self.0.iter().map(|c| c / &l).collect())
    }

    fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }
}

/// Element of Q(q). Kept reduced: the denominator is a monic polynomial
/// with nonzero constant term, coprime to the numerator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QFraction {
    num: QLaurent,
    den: QLaurent,
}

impl QFraction {
    pub fn new(num: QLaurent, den: QLaurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn from_laurent(p: QLaurent) -> Self {
        Self {
            num: p,
            den: QLaurent::one(),
        }
    }

    pub fn numer(&self) -> &QLaurent {
        &self.num
    }

    pub fn denom(&self) -> &QLaurent {
        &self.den
    }

    /// The Laurent polynomial this fraction equals, if any.
    pub fn as_laurent(&self) -> Option<&QLaurent> {
        self.den.is_one().then_some(&self.num)
    }

    fn reduce(num: QLaurent, den: QLaurent) -> Self {
        if num.is_zero() {
            return Self::from_laurent(QLaurent::zero());
        }
        if den.is_one() {
            return Self::from_laurent(num);
        }
        let shift = num.min_exp().unwrap() - den.min_exp().unwrap();
        let pn = Poly::from_laurent(&num);
        let pd = Poly::from_laurent(&den);
        let g = Poly::gcd(&pn, &pd);
        let (pn, _) = pn.divrem(&g);
        let (pd, _) = pd.divrem(&g);
        let lead = pd.lead().clone();
        let pd = pd.monic();
        let num = pn.to_laurent(shift).scale(&lead.recip());
        Self {
            num,
            den: pd.to_laurent(0),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn bar(&self) -> Self {
        Self::reduce(self.num.bar(), self.den.bar())
    }

    pub fn eval(&self, q: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(q);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(q) / d)
    }
}

impl From<QLaurent> for QFraction {
    fn from(p: QLaurent) -> Self {
        Self::from_laurent(p)
    }
}

impl fmt::Display for QFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for QFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QFraction({self})")
    }
}

impl FromStr for QFraction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('(') {
            let (n, d) = rest
                .split_once(") / (")
                .ok_or_else(|| Error::Parse(format!("bad fraction: {s:?}")))?;
            let d = d
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("bad fraction: {s:?}")))?;
            return QFraction::new(n.parse()?, d.parse()?);
        }
        Ok(Self::from_laurent(s.parse()?))
    }
}

impl Serialize for QFraction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QFraction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl crate::field::Field for QFraction {
    fn zero() -> Self {
        Self::from_laurent(QLaurent::zero())
    }
    fn one() -> Self {
        Self::from_laurent(QLaurent::one())
    }
    fn from_i64(n: i64) -> Self {
        Self::from_laurent(QLaurent::from_int(n))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::reduce(&self.num + &o.num, self.den.clone());
        }
        Self::reduce(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
    fn sub(&self, o: &Self) -> Self {
        crate::field::Field::add(self, &crate::field::Field::neg(o))
    }
    fn mul(&self, o: &Self) -> Self {
        if self.den.is_one() && o.den.is_one() {
            return Self::from_laurent(&self.num * &o.num);
        }
        Self::reduce(&self.num * &o.num, &self.den * &o.den)
    }
    fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Option<Self> {
        QFraction::inv(self)
    }
}

/// Quantum integer `[n] = (q^n - q^-n)/(q - q^-1)`.
pub fn qint(n: i64) -> QLaurent {
    let m = n.abs();
    let p = QLaurent::from_terms((0..m).map(|j| (m - 1 - 2 * j, rat(1))));
    if n < 0 {
        -&p
    } else {
        p
    }
}

/// `[n]! = [1][2]...[n]`.
pub fn qfactorial(n: u32) -> QLaurent {
    (1..=n as i64).fold(QLaurent::one(), |acc, i| &acc * &qint(i))
}

/// Gaussian binomial `[n choose k]`, by exact division of factorials.
pub fn qbinom(n: i64, k: i64) -> Result<QLaurent> {
    if k < 0 || k > n {
        return Err(Error::OutOfRange(format!("qbinom({n}, {k})")));
    }
    let num = qfactorial(n as u32);
    let den = &qfactorial(k as u32) * &qfactorial((n - k) as u32);
    Ok(num
        .div_exact(&den)
        .expect("quantum binomial division is exact"))
}

/// Class of `H^*(P^n)` with the symmetric bigrading: `[n+1]`, and 0 for `n = -1`.
pub fn cohomology_class(n: i64) -> Result<QLaurent> {
    if n < -1 {
        return Err(Error::OutOfRange(format!("cohomology class of P^{n}")));
    }
    Ok(qint(n + 1))
}
