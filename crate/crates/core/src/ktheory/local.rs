//! Torus-fixed-point localization on `T*G(k,N)` and convolution kernels.
//!
//! A kernel between `T*G(a,N)` and `T*G(b,N)` is stored by its restriction to
//! pairs of fixed points. Convolution divides by the Euler class of the middle
//! tangent space; the operator on localized K-theory divides by the Euler class
//! of the source tangent space.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use super::Scalar;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::qlaurent::{QFraction, QLaurent};

/// A coordinate subspace `V_S`, stored as sorted 0-based indices.
pub type FixedPoint = Vec<usize>;

/// `k`-subsets of `{0..n}` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<FixedPoint> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<FixedPoint>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Renders a fixed point 1-based, e.g. `{1,3}`.
pub fn fixed_point_text(s: &[usize]) -> String {
    let inner: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// A character `prod x_i^{x[i]} * t^t` of the torus `(C^*)^N x C^*`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Character {
    pub x: Vec<i32>,
    pub t: i32,
}

impl Character {
    fn ratio(n: usize, num: usize, den: usize, t: i32) -> Self {
        let mut x = vec![0; n];
        x[num] += 1;
        x[den] -= 1;
        Self { x, t }
    }

    pub fn eval<F: Scalar>(&self, torus: &Torus<F>) -> F {
        let mut acc = F::one();
        for (i, e) in self.x.iter().enumerate() {
            if *e != 0 {
                acc = acc.mul(&torus.x_pow(i, *e as i64));
            }
        }
        if self.t != 0 {
            acc = acc.mul(&torus.t_pow(self.t as i64));
        }
        acc
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, e) in self.x.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("x{}", i + 1)),
                _ => parts.push(format!("x{}^{e}", i + 1)),
            }
        }
        match self.t {
            0 => {}
            1 => parts.push("t".into()),
            e => parts.push(format!("t^{e}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

fn complement(n: usize, s: &[usize]) -> Vec<usize> {
    (0..n).filter(|j| !s.contains(j)).collect()
}

/// Tangent characters of `T*G(k,N)` at `S` with fibre weight `t^fibre`.
pub fn tangent_weights_with(n: usize, k: usize, s: &[usize], fibre: i32) -> Result<Vec<Character>> {
    if s.len() != k {
        return Err(Error::OutOfRange(format!(
            "fixed point {} has size {} but k = {k}",
            fixed_point_text(s),
            s.len()
        )));
    }
    if s.iter().any(|&i| i >= n) || s.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::OutOfRange(format!(
            "fixed point {} is not a sorted subset of 1..{n}",
            fixed_point_text(s)
        )));
    }
    let out = complement(n, s);
    let mut w = Vec::with_capacity(2 * k * (n - k));
    for &i in s {
        for &j in &out {
            w.push(Character::ratio(n, j, i, 0));
        }
    }
    for &i in s {
        for &j in &out {
            w.push(Character::ratio(n, i, j, fibre));
        }
    }
    Ok(w)
}

/// Tangent characters of `T*G(k,N)` at `S` (fibre weight `t^2`).
pub fn tangent_weights(n: usize, k: usize, s: &[usize]) -> Result<Vec<Character>> {
    tangent_weights_with(n, k, s, 2)
}

/// Tangent characters of the correspondence `{V' ⊂ V}` at `(S ⊃ S')`: the
/// two-step flag manifold plus the fibre `Hom(C^N/V, V')` twisted by the fibre weight.
pub fn correspondence_weights(n: usize, s: &[usize], sp: &[usize], fibre: i32) -> Vec<Character> {
    let out = complement(n, s);
    let diff: Vec<usize> = s.iter().copied().filter(|i| !sp.contains(i)).collect();
    let mut w = Vec::new();
    for &i in sp {
        for &j in &diff {
            w.push(Character::ratio(n, j, i, 0));
        }
    }
    for &i in s {
        for &j in &out {
            w.push(Character::ratio(n, j, i, 0));
        }
    }
    for &i in sp {
        for &j in &out {
            w.push(Character::ratio(n, i, j, fibre));
        }
    }
    w
}

/// Image of the equivariant shift `{1}` in K-theory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ShiftBase {
    #[serde(rename = "t")]
    T,
    #[serde(rename = "-t")]
    MinusT,
    #[serde(rename = "t^-1")]
    TInv,
    #[serde(rename = "-t^-1")]
    MinusTInv,
}

impl ShiftBase {
    pub const ALL: [ShiftBase; 4] = [
        ShiftBase::T,
        ShiftBase::MinusT,
        ShiftBase::TInv,
        ShiftBase::MinusTInv,
    ];

    /// `(sign, exponent)` with `{1} = sign * t^exponent`.
    pub fn parts(self) -> (i64, i64) {
        match self {
            ShiftBase::T => (1, 1),
            ShiftBase::MinusT => (-1, 1),
            ShiftBase::TInv => (1, -1),
            ShiftBase::MinusTInv => (-1, -1),
        }
    }
}

impl fmt::Display for ShiftBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ShiftBase::T => "t",
            ShiftBase::MinusT => "-t",
            ShiftBase::TInv => "t^-1",
            ShiftBase::MinusTInv => "-t^-1",
        };
        write!(f, "{s}")
    }
}

/// Equivariant conventions of the localization model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conventions {
    /// `t`-exponent of the cotangent fibre characters.
    pub fibre_exponent: i32,
    /// Image of `{1}`.
    pub shift_base: ShiftBase,
    /// Rickard term coefficient `(sign * t^a)^(l - lmin)`.
    pub rickard_sign: i64,
    pub rickard_t_exponent: i64,
}

impl Default for Conventions {
    fn default() -> Self {
        Self {
            fibre_exponent: 2,
            shift_base: ShiftBase::MinusT,
            rickard_sign: -1,
            rickard_t_exponent: 1,
        }
    }
}

impl Conventions {
    pub fn rickard_text(&self) -> String {
        let s = if self.rickard_sign < 0 { "-" } else { "" };
        format!("({s}t^{})^(l - lmin)", self.rickard_t_exponent)
    }
}

/// Values of the torus coordinates `x_1..x_N` and `t`.
#[derive(Clone, Debug)]
pub struct Torus<F> {
    pub x: Vec<F>,
    pub t: F,
}

impl<F: Scalar> Torus<F> {
    pub fn new(x: Vec<F>, t: F) -> Result<Self> {
        if x.iter().any(Field::is_zero) || t.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self { x, t })
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// The torus with every coordinate inverted (the duality involution).
    pub fn conj(&self) -> Self {
        Self {
            x: self
                .x
                .iter()
                .map(|v| v.inv().expect("nonzero coordinate"))
                .collect(),
            t: self.t.inv().expect("nonzero t"),
        }
    }

    pub fn x_pow(&self, i: usize, e: i64) -> F {
        self.x[i].pow(e).expect("nonzero coordinate")
    }

    pub fn t_pow(&self, e: i64) -> F {
        self.t.pow(e).expect("nonzero t")
    }

    /// `sign * t^e`.
    pub fn signed_t_pow(&self, sign: i64, e: i64) -> F {
        let p = self.t_pow(e);
        if sign < 0 {
            p.neg()
        } else {
            p
        }
    }

    /// A Laurent polynomial in `q` evaluated at `q = t`.
    pub fn laurent(&self, p: &QLaurent) -> F {
        let mut acc = F::zero();
        for (e, c) in p.terms() {
            acc = acc.add(&F::from_rational(c).mul(&self.t_pow(e)));
        }
        acc
    }

    /// A fraction in `q` evaluated at `q = t`.
    pub fn qfraction(&self, p: &QFraction) -> Option<F> {
        self.laurent(p.numer()).div(&self.laurent(p.denom()))
    }

    /// Identifies `value` as `sign * t^e` with `|e| <= bound`.
    pub fn as_signed_t_power(&self, value: &F, bound: i64) -> Option<(i64, i64)> {
        for e in -bound..=bound {
            let p = self.t_pow(e);
            if *value == p {
                return Some((1, e));
            }
            if *value == p.neg() {
                return Some((-1, e));
            }
        }
        None
    }
}

/// Restriction of a kernel to pairs of fixed points.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelMatrix<F> {
    pub n: usize,
    pub source: usize,
    pub target: usize,
    /// `(source index, target index) -> value`, indices into [`subsets`].
    pub entries: BTreeMap<(usize, usize), F>,
}

impl<F: Scalar> KernelMatrix<F> {
    pub fn zero(n: usize, source: usize, target: usize) -> Self {
        Self {
            n,
            source,
            target,
            entries: BTreeMap::new(),
        }
    }

    pub fn get(&self, p: usize, q: usize) -> F {
        self.entries.get(&(p, q)).cloned().unwrap_or_else(F::zero)
    }

    fn same_shape(&self, o: &Self) -> Result<()> {
        if (self.n, self.source, self.target) != (o.n, o.source, o.target) {
            return Err(Error::Shape(format!(
                "kernel G({},{})->G({},{}) vs G({},{})->G({},{})",
                self.source, self.n, self.target, self.n, o.source, o.n, o.target, o.n
            )));
        }
        Ok(())
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.n, self.source, self.target);
        for (key, v) in &self.entries {
            let w = v.mul(c);
            if !w.is_zero() {
                out.entries.insert(*key, w);
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        let mut out = self.clone();
        for (key, v) in &o.entries {
            let w = out.get(key.0, key.1).add(v);
            if w.is_zero() {
                out.entries.remove(key);
            } else {
                out.entries.insert(*key, w);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&F::one().neg()))
    }

    /// First entry where the kernels differ.
    pub fn first_difference(&self, o: &Self) -> Option<(usize, usize, F, F)> {
        let keys: std::collections::BTreeSet<_> = self
            .entries
            .keys()
            .chain(o.entries.keys())
            .copied()
            .collect();
        keys.into_iter().find_map(|(p, q)| {
            let (a, b) = (self.get(p, q), o.get(p, q));
            (a != b).then_some((p, q, a, b))
        })
    }

    /// Swaps source and target, keeping values.
    pub fn transpose(&self) -> Self {
        Self {
            n: self.n,
            source: self.target,
            target: self.source,
            entries: self
                .entries
                .iter()
                .map(|(&(p, q), v)| ((q, p), v.clone()))
                .collect(),
        }
    }
}

/// Localization data at one torus point, with kernel builders.
pub struct Model<F> {
    pub torus: Torus<F>,
    pub conv: Conventions,
    n: usize,
    points: Vec<Vec<FixedPoint>>,
    euler: Vec<Vec<F>>,
    omega: Vec<Vec<F>>,
    det_v: Vec<Vec<F>>,
    det_all: F,
    rickard_cache: Mutex<BTreeMap<usize, Arc<KernelMatrix<F>>>>,
}

/// K-theoretic Euler class `prod (1 - w^-1)`.
fn euler_class<F: Scalar>(weights: &[Character], torus: &Torus<F>) -> F {
    let one = F::one();
    weights.iter().fold(F::one(), |acc, w| {
        let v = w.eval(torus);
        acc.mul(&one.sub(&v.inv().expect("nonzero character")))
    })
}

impl<F: Scalar> Model<F> {
    pub fn new(torus: Torus<F>, conv: Conventions) -> Result<Self> {
        let n = torus.n();
        let mut points = Vec::new();
        let mut euler = Vec::new();
        let mut omega = Vec::new();
        let mut det_v = Vec::new();
        for k in 0..=n {
            let pts = subsets(n, k);
            let mut e = Vec::new();
            let mut o = Vec::new();
            let mut d = Vec::new();
            for s in &pts {
                let w = tangent_weights_with(n, k, s, conv.fibre_exponent)?;
                let lam = euler_class(&w, &torus);
                if lam.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                e.push(lam);
                o.push(w.iter().fold(F::one(), |acc, c| {
                    acc.mul(&c.eval(&torus).inv().expect("nonzero"))
                }));
                d.push(s.iter().fold(F::one(), |acc, &i| acc.mul(&torus.x[i])));
            }
            points.push(pts);
            euler.push(e);
            omega.push(o);
            det_v.push(d);
        }
        let det_all = torus.x.iter().fold(F::one(), |acc, v| acc.mul(v));
        Ok(Self {
            torus,
            conv,
            n,
            points,
            euler,
            omega,
            det_v,
            det_all,
            rickard_cache: Mutex::new(BTreeMap::new()),
        })
    }

    /// Same conventions at the inverted torus point.
    pub fn conj(&self) -> Result<Self> {
        Self::new(self.torus.conj(), self.conv.clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn fixed_points(&self, k: usize) -> &[FixedPoint] {
        &self.points[k]
    }

    pub fn euler(&self, k: usize, p: usize) -> &F {
        &self.euler[k][p]
    }

    pub fn det_v(&self, k: usize, p: usize) -> &F {
        &self.det_v[k][p]
    }

    pub fn det_all(&self) -> &F {
        &self.det_all
    }

    /// `L = det V det V' det(C^N)^-1` at a pair of fixed points.
    pub fn l_bundle(&self, a: usize, p: usize, b: usize, q: usize) -> F {
        self.det_v[a][p]
            .mul(&self.det_v[b][q])
            .div(&self.det_all)
            .expect("nonzero")
    }

    /// `{a}` in K-theory.
    pub fn shift(&self, a: i64) -> F {
        let (s, e) = self.conv.shift_base.parts();
        let sign = if s < 0 && a.rem_euclid(2) == 1 { -1 } else { 1 };
        self.torus.signed_t_pow(sign, e * a)
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k > self.n {
            return Err(Error::OutOfRange(format!("k = {k} exceeds N = {}", self.n)));
        }
        Ok(())
    }

    /// Structure sheaf of the diagonal: `diag(Euler class)`.
    pub fn identity(&self, k: usize) -> Result<KernelMatrix<F>> {
        self.check_k(k)?;
        let mut out = KernelMatrix::zero(self.n, k, k);
        for (p, e) in self.euler[k].iter().enumerate() {
            out.entries.insert((p, p), e.clone());
        }
        Ok(out)
    }

    /// `det V {shift}` on the diagonal; its operator is `diag(prod_{i in S} x_i)` times the shift.
    pub fn theta(&self, k: usize, shift: i64) -> Result<KernelMatrix<F>> {
        self.check_k(k)?;
        let sh = self.shift(shift);
        let mut out = KernelMatrix::zero(self.n, k, k);
        for p in 0..self.points[k].len() {
            out.entries
                .insert((p, p), self.euler[k][p].mul(&self.det_v[k][p]).mul(&sh));
        }
        Ok(out)
    }

    /// Structure sheaf of the correspondence at `(S ⊃ S')`.
    fn o_b(&self, big: usize, p: usize, small: usize, q: usize) -> F {
        let s = &self.points[big][p];
        let sp = &self.points[small][q];
        let tb = correspondence_weights(self.n, s, sp, self.conv.fibre_exponent);
        self.euler[big][p]
            .mul(&self.euler[small][q])
            .div(&euler_class(&tb, &self.torus))
            .expect("nonzero Euler class")
    }

    /// Pairs `(S, S')` with `S' ⊂ S`, `|S| = big`, `|S'| = small`.
    fn nested(&self, big: usize, small: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (p, s) in self.points[big].iter().enumerate() {
            for (q, sp) in self.points[small].iter().enumerate() {
                if sp.iter().all(|i| s.contains(i)) {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// `E^(r)` from `T*G(k,N)` to `T*G(k-r,N)`: `O_B ⊗ L^r {r(k-r)}`.
    pub fn e(&self, k: usize, r: usize) -> Result<KernelMatrix<F>> {
        self.check_k(k)?;
        if r > k {
            return Err(Error::OutOfRange(format!("E^({r}) needs r <= k = {k}")));
        }
        if r == 0 {
            return self.identity(k);
        }
        let small = k - r;
        let sh = self.shift((r * small) as i64);
        let mut out = KernelMatrix::zero(self.n, k, small);
        for (p, q) in self.nested(k, small) {
            let tw = self
                .l_bundle(k, p, small, q)
                .pow(r as i64)
                .expect("nonzero");
            out.entries
                .insert((p, q), tw.mul(&sh).mul(&self.o_b(k, p, small, q)));
        }
        Ok(out)
    }

    /// `F^(r)` from `T*G(k-r,N)` to `T*G(k,N)`: `O_B ⊗ det(V/V')^{N-2k+r} {r(N-k)}`.
    pub fn f(&self, k: usize, r: usize) -> Result<KernelMatrix<F>> {
        self.check_k(k)?;
        if r > k {
            return Err(Error::OutOfRange(format!(
                "F^({r}) into k = {k} needs r <= k"
            )));
        }
        if r == 0 {
            return self.identity(k);
        }
        let small = k - r;
        let n = self.n as i64;
        let exp = n - 2 * k as i64 + r as i64;
        let sh = self.shift(r as i64 * (n - k as i64));
        let mut out = KernelMatrix::zero(self.n, small, k);
        for (p, q) in self.nested(k, small) {
            let tw = self.det_v[k][p]
                .div(&self.det_v[small][q])
                .expect("nonzero")
                .pow(exp)
                .expect("nonzero");
            out.entries
                .insert((q, p), tw.mul(&sh).mul(&self.o_b(k, p, small, q)));
        }
        Ok(out)
    }

    /// Convolution `Q * P` (apply `P` first).
    pub fn compose(&self, p: &KernelMatrix<F>, q: &KernelMatrix<F>) -> Result<KernelMatrix<F>> {
        if p.target != q.source || p.n != q.n {
            return Err(Error::Shape(format!(
                "cannot compose G({},{})->G({},{}) with G({},{})->G({},{})",
                p.source, p.n, p.target, p.n, q.source, q.n, q.target, q.n
            )));
        }
        let mid = p.target;
        let mut by_source: BTreeMap<usize, Vec<(usize, &F)>> = BTreeMap::new();
        for (&(m, r), v) in &q.entries {
            by_source.entry(m).or_default().push((r, v));
        }
        let mut out: KernelMatrix<F> = KernelMatrix::zero(p.n, p.source, q.target);
        for (&(a, m), v) in &p.entries {
            let Some(row) = by_source.get(&m) else {
                continue;
            };
            let w = v.div(&self.euler[mid][m]).expect("nonzero Euler class");
            for (r, u) in row {
                let cur = out.get(a, *r).add(&w.mul(u));
                if cur.is_zero() {
                    out.entries.remove(&(a, *r));
                } else {
                    out.entries.insert((a, *r), cur);
                }
            }
        }
        Ok(out)
    }

    /// Operator on localized K-theory: `op[q][p] = K(p,q) / Euler(T_p)`.
    pub fn operator(&self, k: &KernelMatrix<F>) -> Matrix<F> {
        let rows = self.points[k.target].len();
        let cols = self.points[k.source].len();
        let mut m = Matrix::zeros(rows, cols);
        for (&(p, q), v) in &k.entries {
            m.set(
                q,
                p,
                v.div(&self.euler[k.source][p])
                    .expect("nonzero Euler class"),
            );
        }
        m
    }

    fn sign_dim(&self, k: usize) -> F {
        let d = 2 * k * (self.n - k);
        if d % 2 == 1 {
            F::one().neg()
        } else {
            F::one()
        }
    }

    /// Right adjoint `P^∨ ⊗ ω_X [dim X]` from the same kernel built at the conjugate point.
    pub fn right_adjoint(&self, conj: &KernelMatrix<F>) -> KernelMatrix<F> {
        let sgn = self.sign_dim(conj.source);
        let mut out = conj.transpose();
        for (&(q, p), v) in out.entries.iter_mut() {
            let _ = q;
            *v = v.mul(&self.omega[conj.source][p]).mul(&sgn);
        }
        out
    }

    /// Left adjoint `P^∨ ⊗ ω_Y [dim Y]` from the same kernel built at the conjugate point.
    pub fn left_adjoint(&self, conj: &KernelMatrix<F>) -> KernelMatrix<F> {
        let sgn = self.sign_dim(conj.target);
        let mut out = conj.transpose();
        for (&(q, _), v) in out.entries.iter_mut() {
            *v = v.mul(&self.omega[conj.target][q]).mul(&sgn);
        }
        out
    }

    /// Rickard kernel `T(k,N)` from `T*G(k,N)` to `T*G(N-k,N)`:
    /// `sum_l c^(l - lmin) F^(n+l) * E^(l)` with `n = N - 2k`, `lmin = max(0, -n)`.
    pub fn rickard(&self, k: usize) -> Result<Arc<KernelMatrix<F>>> {
        self.check_k(k)?;
        if let Some(hit) = self.rickard_cache.lock().expect("cache").get(&k) {
            return Ok(hit.clone());
        }
        let n = self.n as i64 - 2 * k as i64;
        let lmin = (-n).max(0);
        let c = self
            .torus
            .signed_t_pow(self.conv.rickard_sign, self.conv.rickard_t_exponent);
        let mut acc = KernelMatrix::zero(self.n, k, self.n - k);
        for l in lmin..=k as i64 {
            let e = self.e(k, l as usize)?;
            let f = self.f(self.n - k, (n + l) as usize)?;
            let term = self.compose(&e, &f)?;
            acc = acc.add(&term.scale(&c.pow(l - lmin).expect("nonzero")))?;
        }
        let acc = Arc::new(acc);
        self.rickard_cache
            .lock()
            .expect("cache")
            .insert(k, acc.clone());
        Ok(acc)
    }
}

/// Convenience for tests and reports: `[n]` at the torus value of `t`.
pub fn qint_at<F: Scalar>(torus: &Torus<F>, n: i64) -> F {
    torus.laurent(&crate::qlaurent::qint(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn model(n: usize) -> Model<BigRational> {
        let x = (0..n)
            .map(|i| rat(2 + 3 * i as i64, 5 + i as i64))
            .collect();
        Model::new(Torus::new(x, rat(3, 7)).unwrap(), Conventions::default()).unwrap()
    }

    #[test]
    fn tangent_weight_examples() {
        let w = tangent_weights(2, 1, &[0]).unwrap();
        let text: Vec<String> = w.iter().map(|c| c.to_string()).collect();
        assert_eq!(text, vec!["x1^-1*x2", "x1*x2^-1*t^2"]);
        assert!(tangent_weights(3, 0, &[]).unwrap().is_empty());
        for n in 0..6 {
            for k in 0..=n {
                for s in subsets(n, k) {
                    assert_eq!(tangent_weights(n, k, &s).unwrap().len(), 2 * k * (n - k));
                }
            }
        }
        assert!(tangent_weights(3, 2, &[0]).is_err());
    }

    #[test]
    fn theta_and_support() {
        let m = model(2);
        let th = m.operator(&m.theta(1, 0).unwrap());
        assert_eq!(
            th,
            Matrix::diagonal(vec![m.torus.x[0].clone(), m.torus.x[1].clone()])
        );
        let e = m.e(1, 1).unwrap();
        let keys: Vec<_> = e.entries.keys().copied().collect();
        assert_eq!(keys, vec![(0, 0), (1, 0)]);
    }

    #[test]
    fn ef_on_highest_weight() {
        let m = model(2);
        let ef = m.compose(&m.f(1, 1).unwrap(), &m.e(1, 1).unwrap()).unwrap();
        let op = m.operator(&ef);
        assert_eq!(op, Matrix::identity(1).scale(&qint_at(&m.torus, 2)));
    }

    #[test]
    fn identity_is_unit() {
        let m = model(3);
        let e = m.e(2, 1).unwrap();
        assert_eq!(m.compose(&m.identity(2).unwrap(), &e).unwrap(), e);
        assert_eq!(m.compose(&e, &m.identity(1).unwrap()).unwrap(), e);
        assert!(m.compose(&e, &e).is_err());
    }

    #[test]
    fn commutator_weight_zero() {
        let m = model(2);
        let ef = m.compose(&m.f(2, 1).unwrap(), &m.e(2, 1).unwrap()).unwrap();
        let fe = m.compose(&m.e(1, 1).unwrap(), &m.f(1, 1).unwrap()).unwrap();
        assert!(m.operator(&ef.sub(&fe).unwrap()).is_zero());
    }

    #[test]
    fn rickard_invertible_small() {
        for n in 1..=3 {
            let m = model(n);
            for k in 0..=n {
                let t = m.operator(&m.rickard(k).unwrap());
                assert_eq!(t.rank(), t.rows(), "N={n} k={k}");
            }
        }
    }
}
