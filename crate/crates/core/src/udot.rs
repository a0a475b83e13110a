//! Words in the modified quantum group: divided powers `E(i,r)`, `F(i,r)`
//! and weight idempotents `A(lambda)`, evaluated on built modules.

use std::collections::BTreeMap;
use std::fmt;

use crate::cartan::{CartanData, Weight};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::operator::{Block, WeightOperator};
use crate::qlaurent::{QFraction, QLaurent};
use crate::rep::IntegrableModule;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Letter {
    E { i: usize, r: u32 },
    F { i: usize, r: u32 },
    A(Weight),
}

impl Letter {
    /// Change of `v` caused by the letter.
    fn dv(&self) -> Option<(usize, i64)> {
        match self {
            Letter::E { i, r } => Some((*i, -(*r as i64))),
            Letter::F { i, r } => Some((*i, *r as i64)),
            Letter::A(_) => None,
        }
    }
}

/// `scalar * word`, letters applied right to left.
#[derive(Clone, Debug, PartialEq)]
pub struct UdotTerm {
    pub scalar: QLaurent,
    pub word: Vec<Letter>,
}

/// Result of idempotent normalization: letters without idempotents, the
/// source weight (if any idempotent fixed it) and the weight entering each letter.
#[derive(Clone, Debug, PartialEq)]
pub struct Normalized {
    pub scalar: QLaurent,
    pub letters: Vec<Letter>,
    pub source: Option<Weight>,
    pub flow: Option<Vec<Weight>>,
}

impl Normalized {
    pub fn to_term(&self) -> UdotTerm {
        let mut word = self.letters.clone();
        if let Some(s) = &self.source {
            word.push(Letter::A(s.clone()));
        }
        UdotTerm {
            scalar: self.scalar.clone(),
            word,
        }
    }
}

impl UdotTerm {
    pub fn new(word: Vec<Letter>) -> Self {
        Self {
            scalar: QLaurent::one(),
            word,
        }
    }

    pub fn with_scalar(mut self, s: QLaurent) -> Self {
        self.scalar = s;
        self
    }

    /// Parses e.g. `"E1^(2) F2 a[w=1,0;v=0,0]"`, optionally led by a scalar
    /// `"(q + q^-1) E1"` or a sign `"- F1 E1"`.
    pub fn parse(cd: &CartanData, text: &str) -> Result<Self> {
        let mut text = text.trim();
        let mut sign = num_rational::BigRational::one();
        if let Some(rest) = text.strip_prefix('-') {
            sign = -sign;
            text = rest.trim_start();
        }
        let mut scalar = QLaurent::one();
        if let Some(rest) = text.strip_prefix('(') {
            let (s, tail) = rest
                .split_once(')')
                .ok_or_else(|| Error::Parse(format!("unclosed scalar in {text:?}")))?;
            let c: QLaurent = s.parse()?;
            scalar = c;
            text = tail;
        }
        let mut word = Vec::new();
        for tok in text.split_whitespace() {
            word.push(parse_letter(cd, tok)?);
        }
        Ok(Self::new(word).with_scalar(scalar.scale(&sign)))
    }

    pub fn display(&self, cd: &CartanData) -> String {
        let mut parts = Vec::new();
        if !self.scalar.is_one() {
            parts.push(format!("({})", self.scalar));
        }
        for l in &self.word {
            parts.push(match l {
                Letter::E { i, r } => power_text("E", cd.vertex_name(*i), *r),
                Letter::F { i, r } => power_text("F", cd.vertex_name(*i), *r),
                Letter::A(w) => format!("a[{w}]"),
            });
        }
        parts.join(" ")
    }

    /// Pushes all idempotents to the right; `None` is the zero term.
    pub fn normalize(&self) -> Option<Normalized> {
        let letters: Vec<Letter> = self
            .word
            .iter()
            .filter(|l| !matches!(l, Letter::A(_)))
            .cloned()
            .collect();
        // v-shift accumulated by the letters to the right of each position
        let mut source: Option<Weight> = None;
        let mut shift: BTreeMap<usize, i64> = BTreeMap::new();
        let mut checks = Vec::new();
        for l in self.word.iter().rev() {
            match l {
                Letter::A(mu) => {
                    let mut s = mu.clone();
                    for (i, d) in &shift {
                        s.v[*i] -= d;
                    }
                    checks.push(s);
                }
                other => {
                    let (i, d) = other.dv().expect("not an idempotent");
                    *shift.entry(i).or_insert(0) += d;
                }
            }
        }
        for s in checks {
            match &source {
                None => source = Some(s),
                Some(x) if *x == s => {}
                Some(_) => return None,
            }
        }
        let flow = source.as_ref().map(|s| {
            let mut cur = s.clone();
            let mut out = vec![cur.clone(); letters.len()];
            for (k, l) in letters.iter().enumerate().rev() {
                out[k] = cur.clone();
                let (i, d) = l.dv().expect("not an idempotent");
                cur.v[i] += d;
            }
            out
        });
        Some(Normalized {
            scalar: self.scalar.clone(),
            letters,
            source,
            flow,
        })
    }

    /// Matrix of the term on every weight space of `m`.
    pub fn evaluate(&self, m: &IntegrableModule) -> Result<WeightOperator> {
        let n = m.rank();
        for l in &self.word {
            match l {
                Letter::E { i, .. } | Letter::F { i, .. } if *i >= n => {
                    return Err(Error::UnknownVertex(format!("#{i}")))
                }
                Letter::A(w) if w.w.len() != n => {
                    return Err(Error::Shape("idempotent built over another graph".into()))
                }
                _ => {}
            }
        }
        let norm = self.normalize();
        let scalar = QFraction::from(self.scalar.clone());
        let mut blocks = BTreeMap::new();
        for v in m.weights() {
            let src = m.weight(&v);
            let mut pos = v.clone();
            let mut mat = Matrix::identity(m.dim(&v));
            let mut alive = norm
                .as_ref()
                .is_some_and(|nm| nm.source.as_ref().is_none_or(|s| *s == src));
            let letters = norm
                .as_ref()
                .map(|nm| nm.letters.clone())
                .unwrap_or_default();
            for l in letters.iter().rev() {
                let (i, d) = l.dv().expect("normalized");
                if alive {
                    let step = match l {
                        Letter::E { i, r } => m.divided_e(*i, *r, &pos),
                        Letter::F { i, r } => m.divided_f(*i, *r, &pos),
                        Letter::A(_) => unreachable!(),
                    };
                    mat = step.mul(&mat);
                }
                pos[i] += d;
                if m.dim(&pos) == 0 {
                    alive = false;
                }
            }
            let target = m.weight(&pos);
            let matrix = if alive {
                mat.scale(&scalar)
            } else {
                Matrix::zeros(m.dim(&pos), m.dim(&v))
            };
            blocks.insert(src, Block { target, matrix });
        }
        Ok(WeightOperator { blocks })
    }
}

/// Formal sum of terms.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct UdotExpr {
    pub terms: Vec<UdotTerm>,
}

impl UdotExpr {
    pub fn new(terms: Vec<UdotTerm>) -> Self {
        Self { terms }
    }

    pub fn evaluate(&self, m: &IntegrableModule) -> Result<WeightOperator> {
        let mut acc: Option<WeightOperator> = None;
        for t in &self.terms {
            let op = t.evaluate(m)?;
            acc = Some(match acc {
                None => op,
                Some(a) => a.linear_combination(&QFraction::one(), &op, &QFraction::one())?,
            });
        }
        match acc {
            Some(a) => Ok(a),
            None => UdotTerm::new(vec![])
                .with_scalar(QLaurent::zero())
                .evaluate(m),
        }
    }
}

fn power_text(kind: &str, name: &str, r: u32) -> String {
    if r == 1 {
        format!("{kind}{name}")
    } else {
        format!("{kind}{name}^({r})")
    }
}

fn parse_letter(cd: &CartanData, tok: &str) -> Result<Letter> {
    let bad = || Error::Parse(format!("bad letter {tok:?}"));
    if let Some(rest) = tok.strip_prefix("a[") {
        let body = rest.strip_suffix(']').ok_or_else(bad)?;
        let w: Weight = body.parse()?;
        if w.w.len() != cd.rank() {
            return Err(Error::Shape(format!("weight {body} has wrong length")));
        }
        return Ok(Letter::A(w));
    }
    let (kind, rest) = tok.split_at(1);
    let (name, r) = match rest.split_once("^(") {
        Some((n, r)) => (
            n,
            r.strip_suffix(')')
                .and_then(|r| r.parse::<u32>().ok())
                .filter(|&r| r >= 1)
                .ok_or_else(bad)?,
        ),
        None => (rest, 1),
    };
    let i = cd.index_of(name)?;
    match kind {
        "E" => Ok(Letter::E { i, r }),
        "F" => Ok(Letter::F { i, r }),
        _ => Err(bad()),
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::E { i, r } => write!(f, "E#{i}^({r})"),
            Letter::F { i, r } => write!(f, "F#{i}^({r})"),
            Letter::A(w) => write!(f, "a[{w}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::GraphData;
    use crate::qlaurent::qint;

    fn a2() -> CartanData {
        CartanData::new(GraphData::path(2)).unwrap()
    }

    #[test]
    fn parse_scalars() {
        let cd = CartanData::new(GraphData::path(1)).unwrap();
        let t = UdotTerm::parse(&cd, "- F1 E1").unwrap();
        assert_eq!(t.scalar, QLaurent::from_int(-1));
        let t = UdotTerm::parse(&cd, "(q + q^-1) E1").unwrap();
        assert_eq!(t.scalar, qint(2));
        assert_eq!(UdotTerm::parse(&cd, &t.display(&cd)).unwrap(), t);
    }

    #[test]
    fn parse_and_display() {
        let cd = a2();
        let t = UdotTerm::parse(&cd, "E1^(2) F2 a[w=1,0;v=0,0]").unwrap();
        assert_eq!(t.word.len(), 3);
        assert_eq!(t.display(&cd), "E1^(2) F2 a[w=1,0;v=0,0]");
        assert!(UdotTerm::parse(&cd, "E3").is_err());
        assert!(UdotTerm::parse(&cd, "E1^(0)").is_err());
        assert!(UdotTerm::parse(&cd, "X1").is_err());
    }

    #[test]
    fn idempotent_rules() {
        let cd = a2();
        let t = UdotTerm::parse(&cd, "a[w=1,0;v=0,0] a[w=1,0;v=0,0]").unwrap();
        let n = t.normalize().unwrap();
        assert_eq!(n.to_term().display(&cd), "a[w=1,0;v=0,0]");
        let z = UdotTerm::parse(&cd, "a[w=1,0;v=0,0] a[w=1,0;v=1,0]").unwrap();
        assert!(z.normalize().is_none());
        // e_1 a_lambda = a_{lambda + alpha_1} e_1
        let t = UdotTerm::parse(&cd, "a[w=1,0;v=0,0] E1").unwrap();
        let n = t.normalize().unwrap();
        assert_eq!(n.source.unwrap().v, vec![1, 0]);
        assert_eq!(n.flow.unwrap()[0].v, vec![1, 0]);
        let bad = UdotTerm::parse(&cd, "a[w=1,0;v=1,0] E1 a[w=1,0;v=1,0]").unwrap();
        assert!(bad.normalize().is_none());
    }

    #[test]
    fn evaluation_examples() {
        let cd = a2();
        let m = IntegrableModule::build(&cd, &[1, 1], None).unwrap();
        let id = UdotTerm::parse(&cd, "a[w=1,1;v=1,1]")
            .unwrap()
            .evaluate(&m)
            .unwrap();
        for (src, b) in &id.blocks {
            if src.v == vec![1, 1] {
                assert!(b.matrix.is_identity());
            } else {
                assert!(b.matrix.is_zero());
            }
        }
        let top = UdotTerm::parse(&cd, "E1 a[w=1,1;v=0,0]")
            .unwrap()
            .evaluate(&m)
            .unwrap();
        assert!(top.is_zero());
        for v in m.weights() {
            let lam = m.weight(&v);
            let fe = UdotTerm::new(vec![
                Letter::F { i: 0, r: 1 },
                Letter::E { i: 0, r: 1 },
                Letter::A(lam.clone()),
            ]);
            let ef = UdotTerm::new(vec![
                Letter::E { i: 0, r: 1 },
                Letter::F { i: 0, r: 1 },
                Letter::A(lam.clone()),
            ])
            .with_scalar(QLaurent::from_int(-1));
            let op = UdotExpr::new(vec![fe, ef]).evaluate(&m).unwrap();
            let b = &op.blocks[&lam];
            let n = m.pair(&v, 0);
            assert_eq!(
                b.matrix,
                Matrix::identity(m.dim(&v)).scale(&QFraction::from(qint(n)))
            );
        }
    }
}
