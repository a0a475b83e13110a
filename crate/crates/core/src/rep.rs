//! Integrable irreducible highest-weight modules `V(Lambda_w)` with exact
//! generator matrices, built from f-monomials and the contravariant form.
//!
//! Sign convention: on a vector of weight `lambda`,
//! `(f_i e_i - e_i f_i) = [<lambda, alpha_i>]`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cartan::{CartanData, GraphData, Weight};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{IndependenceTracker, Matrix};
use crate::qlaurent::{qfactorial, qint, QFraction};

pub type QMatrix = Matrix<QFraction>;

/// Sign `s` in `e_i f_i b = f_i e_i b + s [<wt b, alpha_i>] b`.
pub const COMMUTATOR_SIGN: i64 = -1;

#[derive(Clone, Debug, PartialEq)]
pub struct WeightSpace {
    pub dim: usize,
    /// Letters of each basis monomial in application order (first applied first).
    pub labels: Vec<Vec<usize>>,
    /// Contravariant form on the basis.
    pub gram: Option<QMatrix>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntegrableModule {
    pub cartan: CartanData,
    pub w: Vec<i64>,
    pub depth_limit: i64,
    pub truncated: bool,
    spaces: BTreeMap<Vec<i64>, WeightSpace>,
    /// `e_i : V(v) -> V(v - e_i)`, keyed by `(i, v)`.
    e: BTreeMap<(usize, Vec<i64>), QMatrix>,
    /// `f_i : V(v) -> V(v + e_i)`, keyed by `(i, v)`.
    f: BTreeMap<(usize, Vec<i64>), QMatrix>,
}

fn step(v: &[i64], i: usize, d: i64) -> Vec<i64> {
    let mut u = v.to_vec();
    u[i] += d;
    u
}

/// Formal spanning vector `f_i b` with `b` a basis vector of `V(u)`.
#[derive(Clone, Debug)]
struct Formal {
    i: usize,
    u: Vec<i64>,
    b: usize,
    label: Vec<usize>,
}

struct Layer {
    v: Vec<i64>,
    space: WeightSpace,
    e: Vec<(usize, QMatrix)>,
    f: Vec<(usize, Vec<i64>, QMatrix)>,
}

impl IntegrableModule {
    /// Builds `V(Lambda_w)` exploring weights with `sum v <= depth`. `None` picks
    /// the lowest-weight height on finite-type graphs and is an error otherwise.
    pub fn build(cd: &CartanData, w: &[i64], depth: Option<i64>) -> Result<Self> {
        if w.len() != cd.rank() {
            return Err(Error::Shape(format!(
                "framing has {} entries, graph has {} vertices",
                w.len(),
                cd.rank()
            )));
        }
        if w.iter().any(|&x| x < 0) || w.iter().all(|&x| x == 0) {
            return Err(Error::OutOfRange(
                "framing must be nonnegative and nonzero".into(),
            ));
        }
        let finite = cd.is_finite_type();
        let height = if finite {
            Some(cd.lowest_weight_height(w)?)
        } else {
            None
        };
        let limit = match (depth, height) {
            (Some(d), _) if d < 0 => {
                return Err(Error::OutOfRange("depth limit must be nonnegative".into()))
            }
            (Some(d), _) => d,
            (None, Some(h)) => h,
            (None, None) => {
                return Err(Error::OutOfRange(
                    "depth limit is required for graphs that are not of finite type".into(),
                ))
            }
        };
        let n = cd.rank();
        let zero = vec![0i64; n];
        let mut m = IntegrableModule {
            cartan: cd.clone(),
            w: w.to_vec(),
            depth_limit: limit,
            truncated: false,
            spaces: BTreeMap::new(),
            e: BTreeMap::new(),
            f: BTreeMap::new(),
        };
        m.spaces.insert(
            zero.clone(),
            WeightSpace {
                dim: 1,
                labels: vec![vec![]],
                gram: Some(Matrix::identity(1)),
            },
        );
        let mut frontier = vec![zero];
        for _ in 1..=limit {
            let cands: BTreeSet<Vec<i64>> = frontier
                .iter()
                .flat_map(|v| (0..n).map(move |i| step(v, i, 1)))
                .collect();
            let cands: Vec<Vec<i64>> = cands.into_iter().collect();
            let built: Vec<Option<Layer>> = cands
                .par_iter()
                .map(|v| m.build_space(v))
                .collect::<Result<_>>()?;
            frontier.clear();
            for layer in built.into_iter().flatten() {
                for (i, mat) in layer.e {
                    m.e.insert((i, layer.v.clone()), mat);
                }
                for (i, u, mat) in layer.f {
                    m.f.insert((i, u), mat);
                }
                frontier.push(layer.v.clone());
                m.spaces.insert(layer.v, layer.space);
            }
            if frontier.is_empty() {
                break;
            }
        }
        let complete = !frontier.is_empty() && height.is_some_and(|h| limit >= h);
        m.truncated = !frontier.is_empty() && !complete;
        m.rescale_to_divided_powers();
        Ok(m)
    }

    fn build_space(&self, v: &[i64]) -> Result<Option<Layer>> {
        let n = self.cartan.rank();
        let mut formal = Vec::new();
        for i in 0..n {
            let u = step(v, i, -1);
            if let Some(sp) = self.spaces.get(&u) {
                for b in 0..sp.dim {
                    let mut label = sp.labels[b].clone();
                    label.push(i);
                    formal.push(Formal {
                        i,
                        u: u.clone(),
                        b,
                        label,
                    });
                }
            }
        }
        if formal.is_empty() {
            return Ok(None);
        }
        formal.sort_by(|a, b| a.label.cmp(&b.label));
        // e_j applied to every formal vector, in coordinates of V(v - e_j).
        let mut e_images: Vec<Vec<Option<Vec<QFraction>>>> = vec![Vec::new(); n];
        for (j, imgs) in e_images.iter_mut().enumerate() {
            *imgs = formal.iter().map(|fv| self.e_of_formal(v, fv, j)).collect();
        }
        let k = formal.len();
        let mut gram = Matrix::zeros(k, k);
        for (a, fa) in formal.iter().enumerate() {
            let gu = self.spaces[&fa.u]
                .gram
                .as_ref()
                .expect("gram stored during build");
            for (c, img) in e_images[fa.i].iter().enumerate().take(k) {
                let img = img
                    .as_ref()
                    .expect("e_i maps into V(v - e_i), which exists");
                let mut acc = QFraction::zero();
                for (x, y) in gu.row(fa.b).iter().zip(img) {
                    if !x.is_zero() && !y.is_zero() {
                        acc = acc.add(&x.mul(y));
                    }
                }
                gram.set(a, c, acc);
            }
        }
        if gram != gram.transpose() {
            return Err(Error::Internal(format!(
                "contravariant form is not symmetric at v={v:?}"
            )));
        }
        let mut tracker = IndependenceTracker::default();
        let basis: Vec<usize> = (0..k).filter(|&a| tracker.try_add(gram.row(a))).collect();
        if basis.is_empty() {
            return Ok(None);
        }
        let g_basis = gram.submatrix(&basis, &basis);
        let all: Vec<usize> = (0..k).collect();
        let coords = g_basis
            .solve(&gram.submatrix(&basis, &all))
            .ok_or_else(|| Error::Internal(format!("singular Gram minor at v={v:?}")))?;
        let dim = basis.len();
        let mut f_mats = Vec::new();
        for i in 0..n {
            let u = step(v, i, -1);
            let Some(sp) = self.spaces.get(&u) else {
                continue;
            };
            let mut mat = Matrix::zeros(dim, sp.dim);
            for (a, fv) in formal.iter().enumerate() {
                if fv.i == i {
                    mat.set_column(fv.b, &coords.column(a));
                }
            }
            f_mats.push((i, u, mat));
        }
        let mut e_mats = Vec::new();
        for (j, imgs) in e_images.iter().enumerate() {
            let target = step(v, j, -1);
            let Some(sp) = self.spaces.get(&target) else {
                continue;
            };
            let mut mat = Matrix::zeros(sp.dim, dim);
            for (c, &a) in basis.iter().enumerate() {
                mat.set_column(c, imgs[a].as_ref().expect("target exists"));
            }
            e_mats.push((j, mat));
        }
        Ok(Some(Layer {
            v: v.to_vec(),
            space: WeightSpace {
                dim,
                labels: basis.iter().map(|&a| formal[a].label.clone()).collect(),
                gram: Some(g_basis),
            },
            e: e_mats,
            f: f_mats,
        }))
    }

    /// `e_j (f_i b) = f_i (e_j b) + delta_ij s [<wt b, alpha_i>] b`.
    fn e_of_formal(&self, v: &[i64], fv: &Formal, j: usize) -> Option<Vec<QFraction>> {
        let target = step(v, j, -1);
        let dim = self.spaces.get(&target)?.dim;
        let mut out = vec![QFraction::zero(); dim];
        let uj = step(&fv.u, j, -1);
        if let (Some(ejb), Some(fi)) = (self.e.get(&(j, fv.u.clone())), self.f.get(&(fv.i, uj))) {
            let col = ejb.column(fv.b);
            for (r, x) in out.iter_mut().enumerate() {
                let mut acc = QFraction::zero();
                for (c, y) in col.iter().enumerate() {
                    let a = fi.get(r, c);
                    if !a.is_zero() && !y.is_zero() {
                        acc = acc.add(&a.mul(y));
                    }
                }
                *x = acc;
            }
        }
        if fv.i == j {
            let n = self.pair_v(&fv.u, j);
            let c = QFraction::from(qint(n)).mul(&QFraction::from_i64(COMMUTATOR_SIGN));
            out[fv.b] = out[fv.b].add(&c);
        }
        Some(out)
    }

    /// Rescales each monomial basis vector `f_{i_m} ... f_{i_1} v` to the product of
    /// divided powers over runs of equal letters.
    fn rescale_to_divided_powers(&mut self) {
        let scale: BTreeMap<Vec<i64>, Vec<QFraction>> = self
            .spaces
            .iter()
            .map(|(v, sp)| {
                let c = sp.labels.iter().map(|l| run_factorial(l)).collect();
                (v.clone(), c)
            })
            .collect();
        // new coordinates are c_k x_k, so M -> D_t M D_s^{-1}.
        let conj = |m: &QMatrix, s: &[QFraction], t: &[QFraction]| {
            Matrix::from_fn(m.rows(), m.cols(), |r, c| {
                m.get(r, c).mul(&t[r]).div(&s[c]).expect("nonzero scale")
            })
        };
        for ((i, v), m) in self.e.iter_mut() {
            *m = conj(m, &scale[v], &scale[&step(v, *i, -1)]);
        }
        for ((i, v), m) in self.f.iter_mut() {
            *m = conj(m, &scale[v], &scale[&step(v, *i, 1)]);
        }
        for (v, sp) in self.spaces.iter_mut() {
            if let Some(g) = &sp.gram {
                let s = &scale[v];
                let inv: Vec<QFraction> = s.iter().map(|x| x.inv().expect("nonzero")).collect();
                sp.gram = Some(conj(g, s, &inv));
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    fn pair_v(&self, v: &[i64], i: usize) -> i64 {
        self.w[i]
            - self.cartan.matrix[i]
                .iter()
                .zip(v)
                .map(|(c, x)| c * x)
                .sum::<i64>()
    }

    pub fn weight(&self, v: &[i64]) -> Weight {
        Weight::new(self.w.clone(), v.to_vec())
    }

    pub fn pair(&self, v: &[i64], i: usize) -> i64 {
        self.pair_v(v, i)
    }

    pub fn dim(&self, v: &[i64]) -> usize {
        self.spaces.get(v).map_or(0, |s| s.dim)
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.values().map(|s| s.dim).sum()
    }

    pub fn support(&self) -> impl Iterator<Item = (&Vec<i64>, &WeightSpace)> {
        self.spaces.iter()
    }

    pub fn weights(&self) -> Vec<Vec<i64>> {
        self.spaces.keys().cloned().collect()
    }

    pub fn space(&self, v: &[i64]) -> Option<&WeightSpace> {
        self.spaces.get(v)
    }

    /// Whether an operator moving `steps` levels down from `v` stays inside the
    /// explored region. Always true for complete modules.
    pub fn is_interior(&self, v: &[i64], steps: i64) -> bool {
        !self.truncated || v.iter().sum::<i64>() + steps <= self.depth_limit
    }

    /// Matrix of `e_i` on `V(v)`; zero (possibly with no rows) if the target is empty.
    pub fn e(&self, i: usize, v: &[i64]) -> QMatrix {
        self.e
            .get(&(i, v.to_vec()))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim(&step(v, i, -1)), self.dim(v)))
    }

    /// Matrix of `f_i` on `V(v)`.
    pub fn f(&self, i: usize, v: &[i64]) -> QMatrix {
        self.f
            .get(&(i, v.to_vec()))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim(&step(v, i, 1)), self.dim(v)))
    }

    /// `e_i^r` on `V(v)` divided by `[r]!`.
    pub fn divided_e(&self, i: usize, r: u32, v: &[i64]) -> QMatrix {
        self.divided(i, r, v, true)
    }

    /// `f_i^r` on `V(v)` divided by `[r]!`.
    pub fn divided_f(&self, i: usize, r: u32, v: &[i64]) -> QMatrix {
        self.divided(i, r, v, false)
    }

    /// Plain power `e_i^r` or `f_i^r` on `V(v)`.
    pub fn power(&self, i: usize, r: u32, v: &[i64], raise: bool) -> QMatrix {
        let mut cur = Matrix::identity(self.dim(v));
        let mut pos = v.to_vec();
        for _ in 0..r {
            let m = if raise {
                self.e(i, &pos)
            } else {
                self.f(i, &pos)
            };
            cur = m.mul(&cur);
            pos = step(&pos, i, if raise { -1 } else { 1 });
        }
        cur
    }

    fn divided(&self, i: usize, r: u32, v: &[i64], raise: bool) -> QMatrix {
        let fact = QFraction::from(qfactorial(r))
            .inv()
            .expect("[r]! is nonzero");
        self.power(i, r, v, raise).scale(&fact)
    }

    /// Multiplicities keyed by weight; errors on truncated modules.
    pub fn character(&self) -> Result<BTreeMap<Weight, usize>> {
        if self.truncated {
            return Err(Error::Truncated("character"));
        }
        Ok(self
            .spaces
            .iter()
            .map(|(v, s)| (self.weight(v), s.dim))
            .collect())
    }

    /// Human-readable basis label: divided powers written left to right.
    pub fn label_text(&self, letters: &[usize]) -> String {
        label_text(&self.cartan, letters)
    }

    pub fn to_json(&self) -> ModuleFile {
        let mat = |m: &QMatrix| {
            m.to_rows()
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect()
        };
        let mut gens = Vec::new();
        for ((i, v), m) in &self.e {
            gens.push(GeneratorEntry {
                letter: "E".into(),
                vertex: self.cartan.vertex_name(*i).to_string(),
                v: v.clone(),
                matrix: mat(m),
            });
        }
        for ((i, v), m) in &self.f {
            gens.push(GeneratorEntry {
                letter: "F".into(),
                vertex: self.cartan.vertex_name(*i).to_string(),
                v: v.clone(),
                matrix: mat(m),
            });
        }
        ModuleFile {
            graph: self.cartan.graph.clone(),
            w: self.w.clone(),
            depth_limit: self.depth_limit,
            truncated: self.truncated,
            weights: self
                .spaces
                .iter()
                .map(|(v, s)| WeightEntry {
                    v: v.clone(),
                    pairings: (0..self.rank()).map(|i| self.pair_v(v, i)).collect(),
                    dim: s.dim,
                    basis: s.labels.iter().map(|l| self.label_text(l)).collect(),
                })
                .collect(),
            generators: gens,
        }
    }

    /// Rebuilds a module from its serialized form. Matrices are taken as given;
    /// the contravariant form is not stored.
    pub fn from_json(file: &ModuleFile) -> Result<Self> {
        let cd = CartanData::new(file.graph.clone())?;
        let n = cd.rank();
        let mut spaces = BTreeMap::new();
        for we in &file.weights {
            if we.v.len() != n || we.basis.len() != we.dim {
                return Err(Error::Parse(format!("malformed weight entry {:?}", we.v)));
            }
            let labels = we
                .basis
                .iter()
                .map(|s| parse_label(&cd, s))
                .collect::<Result<_>>()?;
            spaces.insert(
                we.v.clone(),
                WeightSpace {
                    dim: we.dim,
                    labels,
                    gram: None,
                },
            );
        }
        let mut m = IntegrableModule {
            cartan: cd,
            w: file.w.clone(),
            depth_limit: file.depth_limit,
            truncated: file.truncated,
            spaces,
            e: BTreeMap::new(),
            f: BTreeMap::new(),
        };
        for g in &file.generators {
            let i = m.cartan.index_of(&g.vertex)?;
            let rows = g
                .matrix
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| x.parse::<QFraction>())
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let (d, tgt) = match g.letter.as_str() {
                "E" => (-1, step(&g.v, i, -1)),
                "F" => (1, step(&g.v, i, 1)),
                other => return Err(Error::Parse(format!("unknown generator letter {other}"))),
            };
            let (r, c) = (m.dim(&tgt), m.dim(&g.v));
            if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                return Err(Error::Shape(format!(
                    "{}{} at v={:?} should be {r}x{c}",
                    g.letter, g.vertex, g.v
                )));
            }
            let mat = if r == 0 {
                Matrix::zeros(0, c)
            } else {
                Matrix::from_rows(rows)
            };
            if d < 0 {
                m.e.insert((i, g.v.clone()), mat);
            } else {
                m.f.insert((i, g.v.clone()), mat);
            }
        }
        Ok(m)
    }
}

fn run_factorial(letters: &[usize]) -> QFraction {
    let mut acc = QFraction::one();
    let mut k = 0;
    while k < letters.len() {
        let mut run = 1;
        while k + run < letters.len() && letters[k + run] == letters[k] {
            run += 1;
        }
        acc = acc.mul(&QFraction::from(qfactorial(run as u32)));
        k += run;
    }
    acc
}

pub fn label_text(cd: &CartanData, letters: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut k = letters.len();
    while k > 0 {
        let x = letters[k - 1];
        let mut run = 1;
        while k > run && letters[k - 1 - run] == x {
            run += 1;
        }
        let name = cd.vertex_name(x);
        parts.push(if run == 1 {
            format!("F{name}")
        } else {
            format!("F{name}^({run})")
        });
        k -= run;
    }
    parts.push("v".into());
    parts.join(" ")
}

fn parse_label(cd: &CartanData, s: &str) -> Result<Vec<usize>> {
    let mut letters = Vec::new();
    let toks: Vec<&str> = s.split_whitespace().collect();
    if toks.last() != Some(&"v") {
        return Err(Error::Parse(format!("bad basis label {s:?}")));
    }
    for tok in toks[..toks.len() - 1].iter().rev() {
        let body = tok
            .strip_prefix('F')
            .ok_or_else(|| Error::Parse(format!("bad basis label {s:?}")))?;
        let (name, run) = match body.split_once("^(") {
            Some((n, r)) => (
                n,
                r.strip_suffix(')')
                    .and_then(|r| r.parse::<usize>().ok())
                    .ok_or_else(|| Error::Parse(format!("bad basis label {s:?}")))?,
            ),
            None => (body, 1),
        };
        let i = cd.index_of(name)?;
        letters.extend(std::iter::repeat_n(i, run));
    }
    Ok(letters)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub v: Vec<i64>,
    pub pairings: Vec<i64>,
    pub dim: usize,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub letter: String,
    pub vertex: String,
    pub v: Vec<i64>,
    pub matrix: Vec<Vec<String>>,
}

/// Serialized module: weights, basis labels and generator matrices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub graph: GraphData,
    pub w: Vec<i64>,
    pub depth_limit: i64,
    pub truncated: bool,
    pub weights: Vec<WeightEntry>,
    pub generators: Vec<GeneratorEntry>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn module(g: GraphData, w: &[i64]) -> IntegrableModule {
        IntegrableModule::build(&CartanData::new(g).unwrap(), w, None).unwrap()
    }

    fn dims(m: &IntegrableModule) -> Vec<(Vec<i64>, usize)> {
        m.support().map(|(v, s)| (v.clone(), s.dim)).collect()
    }

    #[test]
    fn sl2_fundamental() {
        let m = module(GraphData::path(1), &[1]);
        assert_eq!(dims(&m), vec![(vec![0], 1), (vec![1], 1)]);
        assert!(!m.truncated);
    }

    #[test]
    fn a2_examples() {
        let m = module(GraphData::path(2), &[1, 0]);
        assert_eq!(
            dims(&m),
            vec![(vec![0, 0], 1), (vec![1, 0], 1), (vec![1, 1], 1)]
        );
        let adj = module(GraphData::path(2), &[1, 1]);
        assert_eq!(adj.total_dim(), 8);
        assert_eq!(adj.dim(&[1, 1]), 2);
    }

    #[test]
    fn divided_power_unit() {
        let m = module(GraphData::path(1), &[2]);
        let e2 = m.divided_e(0, 2, &[2]);
        assert!(e2.is_identity());
        assert!(m.divided_e(0, 1, &[0]).rows() == 0);
        assert_eq!(m.divided_e(0, 1, &[1]), m.e(0, &[1]));
    }

    #[test]
    fn commutator_sign() {
        let m = module(GraphData::path(1), &[3]);
        for k in 0..=3i64 {
            let v = [k];
            let d = m.dim(&v);
            let fe = m.f(0, &[k - 1]).mul(&m.e(0, &v));
            let ef = m.e(0, &[k + 1]).mul(&m.f(0, &v));
            let (fe, ef) = (
                if k == 0 { Matrix::zeros(d, d) } else { fe },
                if k == 3 { Matrix::zeros(d, d) } else { ef },
            );
            let n = m.pair(&v, 0);
            let expect = Matrix::identity(d).scale(&QFraction::from(qint(n)));
            assert_eq!(fe.sub(&ef), expect, "k={k}");
        }
    }

    #[test]
    fn truncated_on_affine_graph() {
        let tri = GraphData {
            vertices: vec!["a".into(), "b".into(), "c".into()],
            edges: vec![
                ("a".into(), "b".into()),
                ("b".into(), "c".into()),
                ("c".into(), "a".into()),
            ],
            orientation: None,
        };
        let cd = CartanData::new(tri).unwrap();
        assert!(IntegrableModule::build(&cd, &[1, 0, 0], None).is_err());
        let m = IntegrableModule::build(&cd, &[1, 0, 0], Some(3)).unwrap();
        assert!(m.truncated);
        assert!(m.character().is_err());
    }

    #[test]
    fn json_roundtrip() {
        let m = module(GraphData::path(2), &[1, 1]);
        let file = m.to_json();
        let text = serde_json::to_string(&file).unwrap();
        let back = IntegrableModule::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.total_dim(), 8);
        for i in 0..2 {
            for v in m.weights() {
                assert_eq!(back.e(i, &v), m.e(i, &v));
                assert_eq!(back.f(i, &v), m.f(i, &v));
            }
        }
        assert_eq!(file.weights[0].basis, vec!["v".to_string()]);
    }

    #[test]
    fn labels_parse() {
        let cd = CartanData::new(GraphData::path(2)).unwrap();
        let l = vec![1, 0, 0];
        let s = label_text(&cd, &l);
        assert_eq!(s, "F1^(2) F2 v");
        assert_eq!(parse_label(&cd, &s).unwrap(), l);
    }

    #[test]
    fn bad_inputs() {
        let cd = CartanData::new(GraphData::path(2)).unwrap();
        assert!(IntegrableModule::build(&cd, &[0, 0], None).is_err());
        assert!(IntegrableModule::build(&cd, &[1], None).is_err());
        assert!(IntegrableModule::build(&cd, &[1, 0], Some(-1)).is_err());
    }
}
