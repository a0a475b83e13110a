//! Braid words and the decategorified Rickard operators `T_i` on integrable modules.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::cartan::{CartanData, Weight};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::operator::{Block, WeightOperator};
use crate::qlaurent::{QFraction, QLaurent};
use crate::rep::IntegrableModule;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    T(usize),
    Theta(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    pub letters: Vec<(Generator, i8)>,
}

impl BraidWord {
    /// Parses whitespace-separated tokens `T1`, `T2^-1`, `Th1`, `Th1^-1`.
    pub fn parse(cd: &CartanData, text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let (body, exp) = match tok.strip_suffix("^-1") {
                Some(b) => (b, -1),
                None => (tok.strip_suffix("^1").unwrap_or(tok), 1),
            };
            let gen = if let Some(name) = body.strip_prefix("Th").filter(|n| cd.index_of(n).is_ok())
            {
                Generator::Theta(cd.index_of(name)?)
            } else if let Some(name) = body.strip_prefix('T') {
                Generator::T(cd.index_of(name)?)
            } else {
                return Err(Error::Parse(format!("bad braid letter {tok:?}")));
            };
            letters.push((gen, exp));
        }
        Ok(Self { letters })
    }

    pub fn display(&self, cd: &CartanData) -> String {
        self.letters
            .iter()
            .map(|(g, e)| {
                let base = match g {
                    Generator::T(i) => format!("T{}", cd.vertex_name(*i)),
                    Generator::Theta(i) => format!("Th{}", cd.vertex_name(*i)),
                };
                if *e < 0 {
                    format!("{base}^-1")
                } else {
                    base
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Coefficient of the `l`-th Rickard term: `sign^l q^(a l + b l (n + l))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RickardConvention {
    pub sign: i64,
    pub a: i64,
    pub b: i64,
}

impl RickardConvention {
    pub fn coefficient(&self, l: i64, n: i64) -> QLaurent {
        let c = if self.sign < 0 && l % 2 != 0 { -1 } else { 1 };
        QLaurent::q_pow(self.a * l + self.b * l * (n + l))
            .scale(&num_rational::BigRational::from_i64(c))
    }
}

impl fmt::Display for RickardConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign < 0 { "(-1)^l" } else { "(+1)^l" };
        write!(f, "{s} q^({} l + {} l (n + l))", self.a, self.b)
    }
}

/// `T_i` on every weight space: `sum_l c(l) f_i^(n+l) e_i^(l)` with `n = <lambda, alpha_i>`.
pub fn rickard_operator(
    m: &IntegrableModule,
    i: usize,
    conv: &RickardConvention,
) -> Result<WeightOperator> {
    if m.truncated {
        return Err(Error::Truncated("the Rickard operator"));
    }
    if i >= m.rank() {
        return Err(Error::UnknownVertex(format!("#{i}")));
    }
    let mut blocks = BTreeMap::new();
    for v in m.weights() {
        let n = m.pair(&v, i);
        let mut tgt = v.clone();
        tgt[i] += n;
        let mut mat = Matrix::zeros(m.dim(&tgt), m.dim(&v));
        let mut l = (-n).max(0);
        loop {
            let mut mid = v.clone();
            mid[i] -= l;
            if m.dim(&mid) == 0 {
                break;
            }
            let term = m
                .divided_f(i, (n + l) as u32, &mid)
                .mul(&m.divided_e(i, l as u32, &v));
            mat = mat.add(&term.scale(&QFraction::from(conv.coefficient(l, n))));
            l += 1;
        }
        blocks.insert(
            m.weight(&v),
            Block {
                target: m.weight(&tgt),
                matrix: mat,
            },
        );
    }
    Ok(WeightOperator { blocks })
}

/// Operator of a word; the leftmost letter acts last.
pub fn evaluate_word(
    word: &BraidWord,
    m: &IntegrableModule,
    conv: &RickardConvention,
) -> Result<WeightOperator> {
    let mut cache: BTreeMap<usize, (WeightOperator, Option<WeightOperator>)> = BTreeMap::new();
    let mut acc = WeightOperator::identity(m);
    for (g, e) in word.letters.iter().rev() {
        let i = match g {
            Generator::T(i) => *i,
            Generator::Theta(i) => {
                return Err(Error::UnsupportedGenerator(format!(
                    "Th{}",
                    m.cartan.vertex_name(*i)
                )))
            }
        };
        let entry = match cache.entry(i) {
            std::collections::btree_map::Entry::Occupied(o) => o.into_mut(),
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert((rickard_operator(m, i, conv)?, None))
            }
        };
        let op = if *e > 0 {
            entry.0.clone()
        } else {
            if entry.1.is_none() {
                entry.1 = Some(entry.0.inverse()?);
            }
            entry.1.clone().expect("inverse cached")
        };
        acc = op.compose(&acc)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct BraidCheck {
    pub id: String,
    pub identity: String,
    pub instances: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

/// Braid relations for all vertex pairs, invertibility and weight compatibility.
pub fn verify_braid(m: &IntegrableModule, conv: &RickardConvention) -> Result<Vec<BraidCheck>> {
    let n = m.rank();
    let cd = &m.cartan;
    let ops: Vec<WeightOperator> = (0..n)
        .map(|i| rickard_operator(m, i, conv))
        .collect::<Result<_>>()?;
    let mut braid = BraidCheck {
        id: "braid".into(),
        identity: "T_i T_j T_i = T_j T_i T_j on edges, T_i T_j = T_j T_i otherwise".into(),
        instances: 0,
        passed: true,
        counterexample: None,
    };
    for i in 0..n {
        for j in i + 1..n {
            braid.instances += 1;
            let (lhs, rhs) = if cd.matrix[i][j] == -1 {
                (
                    ops[i].compose(&ops[j].compose(&ops[i])?)?,
                    ops[j].compose(&ops[i].compose(&ops[j])?)?,
                )
            } else {
                (ops[i].compose(&ops[j])?, ops[j].compose(&ops[i])?)
            };
            if let Some(w) = lhs.first_difference(&rhs) {
                if braid.passed {
                    braid.counterexample = Some(format!(
                        "i={} j={} at {w}",
                        cd.vertex_name(i),
                        cd.vertex_name(j)
                    ));
                }
                braid.passed = false;
            }
        }
    }
    let mut inv = BraidCheck {
        id: "invertible".into(),
        identity: "every T_i block is invertible".into(),
        instances: 0,
        passed: true,
        counterexample: None,
    };
    let mut compat = BraidCheck {
        id: "weight".into(),
        identity: "T_i maps M(lambda) to M(s_i lambda)".into(),
        instances: 0,
        passed: true,
        counterexample: None,
    };
    for (i, op) in ops.iter().enumerate() {
        for (src, b) in &op.blocks {
            inv.instances += 1;
            compat.instances += 1;
            let square = b.matrix.rows() == b.matrix.cols();
            if !square || b.matrix.inverse().is_none() {
                if inv.passed {
                    inv.counterexample = Some(format!("T{} at {src}", cd.vertex_name(i)));
                }
                inv.passed = false;
            }
            if b.target != cd.reflect(src, i)? {
                if compat.passed {
                    compat.counterexample = Some(format!("T{} at {src}", cd.vertex_name(i)));
                }
                compat.passed = false;
            }
        }
    }
    Ok(vec![braid, inv, compat])
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CandidateVerdict {
    pub convention: RickardConvention,
    pub rule: String,
    /// Pass/fail per calibration module, keyed by the module's framing.
    pub modules: BTreeMap<String, bool>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Calibration {
    pub chosen: RickardConvention,
    pub rule: String,
    pub candidates: Vec<CandidateVerdict>,
}

/// Candidate search: `sign` in {-1, +1}, `a, b` in `-2..=2`. A candidate passes if
/// every `T_i` block is invertible and the braid relations hold on `V(Lambda_i)`
/// and `V(Lambda_i + Lambda_j)` for the first edge `(i, j)`. Ties break toward
/// `sign = -1`, then small `|a| + |b|`, then small `|b|`, then large `a`, large `b`.
pub fn calibrate(cd: &CartanData) -> Result<Calibration> {
    if !cd.is_finite_type() {
        return Err(Error::Calibration(
            "calibration needs a finite-type graph".into(),
        ));
    }
    let (i, j) = (0..cd.rank())
        .flat_map(|i| (i + 1..cd.rank()).map(move |j| (i, j)))
        .find(|&(i, j)| cd.matrix[i][j] == -1)
        .ok_or_else(|| Error::Calibration("calibration needs a graph with an edge".into()))?;
    let mut w1 = vec![0; cd.rank()];
    w1[i] = 1;
    let mut w2 = w1.clone();
    w2[j] = 1;
    let mods = [
        IntegrableModule::build(cd, &w1, None)?,
        IntegrableModule::build(cd, &w2, None)?,
    ];
    let mut candidates = Vec::new();
    for sign in [-1, 1] {
        for a in -2..=2 {
            for b in -2..=2 {
                let conv = RickardConvention { sign, a, b };
                let mut modules = BTreeMap::new();
                for m in &mods {
                    let ok = verify_braid(m, &conv)?.iter().all(|c| c.passed);
                    modules.insert(Weight::highest(m.w.clone()).to_string(), ok);
                }
                let passed = modules.values().all(|&x| x);
                candidates.push(CandidateVerdict {
                    convention: conv,
                    rule: conv.to_string(),
                    modules,
                    passed,
                });
            }
        }
    }
    let chosen = candidates
        .iter()
        .filter(|c| c.passed)
        .map(|c| c.convention)
        .min_by_key(|c| (c.sign, c.a.abs() + c.b.abs(), c.b.abs(), -c.a, -c.b))
        .ok_or_else(|| {
            let failing: Vec<String> = candidates
                .iter()
                .map(|c| format!("{}: {:?}", c.rule, c.modules))
                .collect();
            Error::Calibration(format!("no candidate passes: {}", failing.join("; ")))
        })?;
    Ok(Calibration {
        chosen,
        rule: chosen.to_string(),
        candidates,
    })
}
