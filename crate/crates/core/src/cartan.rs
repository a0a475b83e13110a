//! Simply-laced Cartan data built from a loop-free graph, and weights in
//! `(w, v)` coordinates, `lambda = Lambda_w - alpha_v`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphData {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Vec<(String, String)>>,
}

/// On-disk graph description; `w` is optional.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<BTreeMap<String, i64>>,
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn graph(&self) -> GraphData {
        GraphData {
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            orientation: self.orientation.clone(),
        }
    }

    /// The framing vector in vertex order; missing vertices default to 0.
    pub fn framing(&self, cd: &CartanData) -> Result<Option<Vec<i64>>> {
        let Some(w) = &self.w else { return Ok(None) };
        let mut out = vec![0; cd.rank()];
        for (k, x) in w {
            if *x < 0 {
                return Err(Error::InvalidGraph(format!("negative framing at {k}")));
            }
            out[cd.index_of(k)?] = *x;
        }
        Ok(Some(out))
    }
}

impl GraphData {
    /// Path graph `1 - 2 - ... - n` (type A_n).
    pub fn path(n: usize) -> Self {
        let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let edges = vertices
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect();
        Self {
            vertices,
            edges,
            orientation: None,
        }
    }

    /// Disjoint union of type-A paths, e.g. `"A3"` or `"A1xA1"`; vertices are
    /// numbered `1..` across components.
    pub fn from_type(text: &str) -> Result<Self> {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for part in text.split(['x', '*']) {
            let n: usize = part
                .trim()
                .strip_prefix(['A', 'a'])
                .and_then(|r| r.parse().ok())
                .filter(|&n| n > 0)
                .ok_or_else(|| {
                    Error::Parse(format!(
                        "bad graph type {text:?}; expected e.g. A2 or A1xA1"
                    ))
                })?;
            let start = vertices.len();
            for i in 0..n {
                vertices.push((start + i + 1).to_string());
                if i > 0 {
                    edges.push(((start + i).to_string(), (start + i + 1).to_string()));
                }
            }
        }
        Ok(Self {
            vertices,
            edges,
            orientation: None,
        })
    }

    /// `n` vertices and no edges.
    pub fn discrete(n: usize) -> Self {
        Self {
            vertices: (1..=n).map(|i| i.to_string()).collect(),
            edges: Vec::new(),
            orientation: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    pub graph: GraphData,
    pub matrix: Vec<Vec<i64>>,
    index: BTreeMap<String, usize>,
    /// Per edge in `graph.edges`, +1 if that direction lies in the orientation.
    epsilon: Vec<i8>,
}

impl CartanData {
    pub fn new(graph: GraphData) -> Result<Self> {
        if graph.vertices.is_empty() {
            return Err(Error::InvalidGraph("empty vertex list".into()));
        }
        let mut index = BTreeMap::new();
        for (i, v) in graph.vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex {v}")));
            }
        }
        let n = graph.vertices.len();
        let mut matrix = vec![vec![0i64; n]; n];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = 2;
        }
        let lookup = |v: &String| {
            index
                .get(v)
                .copied()
                .ok_or_else(|| Error::InvalidGraph(format!("edge uses unknown vertex {v}")))
        };
        let mut seen = BTreeSet::new();
        for (a, b) in &graph.edges {
            let (i, j) = (lookup(a)?, lookup(b)?);
            if i == j {
                return Err(Error::InvalidGraph(format!("edge loop ({a}, {b})")));
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({a}, {b})")));
            }
            matrix[i][j] = -1;
            matrix[j][i] = -1;
        }
        let mut epsilon = vec![1i8; graph.edges.len()];
        if let Some(orient) = &graph.orientation {
            if orient.len() != graph.edges.len() {
                return Err(Error::InvalidGraph(
                    "orientation must list each edge exactly once".into(),
                ));
            }
            let mut used = BTreeSet::new();
            for (a, b) in orient {
                let (i, j) = (lookup(a)?, lookup(b)?);
                let Some(pos) = graph.edges.iter().position(|(x, y)| {
                    let (x, y) = (index[x], index[y]);
                    (x, y) == (i, j) || (x, y) == (j, i)
                }) else {
                    return Err(Error::InvalidGraph(format!(
                        "orientation ({a}, {b}) is not an edge"
                    )));
                };
                if !used.insert(pos) {
                    return Err(Error::InvalidGraph(format!(
                        "orientation lists edge ({a}, {b}) twice"
                    )));
                }
                let (x, _) = &graph.edges[pos];
                epsilon[pos] = if index[x] == i { 1 } else { -1 };
            }
        }
        Ok(Self {
            graph,
            matrix,
            index,
            epsilon,
        })
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.graph.vertices[i]
    }

    pub fn index_of(&self, v: &str) -> Result<usize> {
        self.index
            .get(v)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    fn check(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{i}")))
        }
    }

    /// Sign of the edge `graph.edges[e]` as listed: +1 if it lies in the orientation.
    pub fn edge_sign(&self, e: usize) -> i8 {
        self.epsilon[e]
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank()).filter(move |&j| self.matrix[i][j] == -1)
    }

    /// `<lambda, alpha_i> = w_i - (C v)_i`.
    pub fn pair(&self, lambda: &Weight, i: usize) -> Result<i64> {
        self.check(i)?;
        Ok(lambda.w[i]
            - self.matrix[i]
                .iter()
                .zip(&lambda.v)
                .map(|(c, v)| c * v)
                .sum::<i64>())
    }

    /// `s_i(lambda)`: same `w`, `v_i` increased by `<lambda, alpha_i>`.
    pub fn reflect(&self, lambda: &Weight, i: usize) -> Result<Weight> {
        let n = self.pair(lambda, i)?;
        let mut out = lambda.clone();
        out.v[i] += n;
        Ok(out)
    }

    /// `N_i = w_i + sum of v_j over neighbours j`.
    pub fn neighbor_sum(&self, lambda: &Weight, i: usize) -> Result<i64> {
        self.check(i)?;
        Ok(lambda.w[i] + self.neighbors(i).map(|j| lambda.v[j]).sum::<i64>())
    }

    /// `<alpha_a, alpha_b>` for root-coefficient vectors.
    pub fn root_pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (ai, row) in a.iter().zip(&self.matrix) {
            for (bj, cij) in b.iter().zip(row) {
                s += ai * cij * bj;
            }
        }
        s
    }

    pub fn cartan_matrix(&self) -> Matrix<BigRational> {
        let n = self.rank();
        Matrix::from_fn(n, n, |i, j| BigRational::from_i64(self.matrix[i][j]))
    }

    /// Finite type iff the Cartan matrix is positive definite (leading minors test).
    pub fn is_finite_type(&self) -> bool {
        let c = self.cartan_matrix();
        (1..=self.rank()).all(|k| {
            let idx: Vec<usize> = (0..k).collect();
            let d = c.submatrix(&idx, &idx).det();
            d > BigRational::from_i64(0)
        })
    }

    /// Height of `Lambda_w` minus the lowest weight of `V(Lambda_w)`, for finite type.
    pub fn lowest_weight_height(&self, w: &[i64]) -> Result<i64> {
        if !self.is_finite_type() {
            return Err(Error::OutOfRange(
                "lowest weight only exists for finite type".into(),
            ));
        }
        let mut lambda = Weight::highest(w.to_vec());
        while let Some(i) = (0..self.rank()).find(|&i| self.pair(&lambda, i).unwrap() > 0) {
            lambda = self.reflect(&lambda, i)?;
        }
        Ok(lambda.height())
    }

    pub fn weight_from_names(&self, w: &BTreeMap<String, i64>) -> Result<Vec<i64>> {
        let mut out = vec![0; self.rank()];
        for (k, x) in w {
            out[self.index_of(k)?] = *x;
        }
        Ok(out)
    }
}

/// `lambda = Lambda_w - alpha_v`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Weight {
    pub w: Vec<i64>,
    pub v: Vec<i64>,
}

impl Weight {
    pub fn new(w: Vec<i64>, v: Vec<i64>) -> Self {
        assert_eq!(w.len(), v.len(), "w and v must have equal length");
        Self { w, v }
    }

    pub fn highest(w: Vec<i64>) -> Self {
        let v = vec![0; w.len()];
        Self { w, v }
    }

    pub fn height(&self) -> i64 {
        self.v.iter().sum()
    }

    /// `lambda + r alpha_i`.
    pub fn shifted(&self, i: usize, r: i64) -> Self {
        let mut out = self.clone();
        out.v[i] -= r;
        out
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |x: &[i64]| x.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "w={};v={}", join(&self.w), join(&self.v))
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Parses `w=1,0;v=0,0`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad weight {s:?}; expected w=..;v=.."));
        let (a, b) = s.trim().split_once(';').ok_or_else(bad)?;
        let nums = |x: &str, key: &str| -> Result<Vec<i64>> {
            let body = x.trim().strip_prefix(key).ok_or_else(bad)?;
            body.split(',')
                .map(|t| t.trim().parse::<i64>().map_err(|_| bad()))
                .collect()
        };
        let w = nums(a, "w=")?;
        let v = nums(b, "v=")?;
        if w.len() != v.len() {
            return Err(bad());
        }
        Ok(Self { w, v })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_types() {
        assert_eq!(GraphData::from_type("A3").unwrap(), GraphData::path(3));
        assert_eq!(
            GraphData::from_type("A1xA1").unwrap(),
            GraphData::discrete(2)
        );
        let g = GraphData::from_type("A2xA1").unwrap();
        assert_eq!(g.edges, vec![("1".to_string(), "2".to_string())]);
        assert!(GraphData::from_type("D4").is_err());
        assert!(GraphData::from_type("A0").is_err());
    }
    use proptest::prelude::*;

    fn graph(vs: &[&str], es: &[(&str, &str)]) -> GraphData {
        GraphData {
            vertices: vs.iter().map(|s| s.to_string()).collect(),
            edges: es
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            orientation: None,
        }
    }

    #[test]
    fn build_examples() {
        let a1 = CartanData::new(graph(&["a"], &[])).unwrap();
        assert_eq!(a1.matrix, vec![vec![2]]);
        let two = CartanData::new(graph(&["a", "b"], &[])).unwrap();
        assert_eq!(two.matrix, vec![vec![2, 0], vec![0, 2]]);
        let path = CartanData::new(graph(&["a", "b", "c"], &[("a", "b"), ("b", "c")])).unwrap();
        assert_eq!(
            path.matrix,
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]
        );
    }

    #[test]
    fn rejects_bad_graphs() {
        let e = CartanData::new(graph(&["a"], &[("a", "a")])).unwrap_err();
        assert!(e.to_string().contains("(a, a)"));
        let e = CartanData::new(graph(&["a", "b"], &[("a", "b"), ("b", "a")])).unwrap_err();
        assert!(e.to_string().contains("duplicate edge (b, a)"));
        assert!(CartanData::new(graph(&[], &[])).is_err());
        assert!(CartanData::new(graph(&["a"], &[("a", "z")])).is_err());
    }

    #[test]
    fn orientation_signs() {
        let mut g = graph(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        g.orientation = Some(vec![("a".into(), "b".into()), ("c".into(), "b".into())]);
        let cd = CartanData::new(g.clone()).unwrap();
        assert_eq!((cd.edge_sign(0), cd.edge_sign(1)), (1, -1));
        g.orientation = Some(vec![("a".into(), "b".into()), ("b".into(), "a".into())]);
        assert!(CartanData::new(g).is_err());
    }

    #[test]
    fn pair_examples() {
        let a1 = CartanData::new(GraphData::path(1)).unwrap();
        assert_eq!(a1.pair(&Weight::new(vec![1], vec![0]), 0).unwrap(), 1);
        assert_eq!(a1.pair(&Weight::new(vec![5], vec![2]), 0).unwrap(), 1);
        assert_eq!(a1.pair(&Weight::new(vec![0], vec![1]), 0).unwrap(), -2);
        assert!(a1.pair(&Weight::new(vec![0], vec![1]), 3).is_err());
    }

    #[test]
    fn reflect_examples() {
        let a1 = CartanData::new(GraphData::path(1)).unwrap();
        let l = Weight::new(vec![1], vec![0]);
        assert_eq!(a1.reflect(&l, 0).unwrap().v, vec![1]);
        let l = Weight::new(vec![2], vec![0]);
        let s = a1.reflect(&l, 0).unwrap();
        assert_eq!(s.v, vec![2]);
        assert_eq!(a1.reflect(&s, 0).unwrap(), l);
        let fixed = Weight::new(vec![2], vec![1]);
        assert_eq!(a1.reflect(&fixed, 0).unwrap(), fixed);
    }

    #[test]
    fn neighbor_sum_examples() {
        let a1 = CartanData::new(GraphData::path(1)).unwrap();
        assert_eq!(
            a1.neighbor_sum(&Weight::new(vec![4], vec![3]), 0).unwrap(),
            4
        );
        let a2 = CartanData::new(GraphData::path(2)).unwrap();
        assert_eq!(
            a2.neighbor_sum(&Weight::new(vec![1, 0], vec![1, 1]), 0)
                .unwrap(),
            2
        );
        let d = CartanData::new(GraphData::discrete(2)).unwrap();
        assert_eq!(
            d.neighbor_sum(&Weight::new(vec![0, 0], vec![0, 0]), 0)
                .unwrap(),
            0
        );
    }

    #[test]
    fn finite_type_and_height() {
        let a2 = CartanData::new(GraphData::path(2)).unwrap();
        assert!(a2.is_finite_type());
        assert_eq!(a2.lowest_weight_height(&[1, 0]).unwrap(), 2);
        assert_eq!(a2.lowest_weight_height(&[1, 1]).unwrap(), 4);
        let tri = CartanData::new(graph(
            &["a", "b", "c"],
            &[("a", "b"), ("b", "c"), ("c", "a")],
        ))
        .unwrap();
        assert!(!tri.is_finite_type());
        assert!(tri.lowest_weight_height(&[1, 0, 0]).is_err());
    }

    #[test]
    fn weight_text() {
        let l: Weight = "w=1,0;v=0,2".parse().unwrap();
        assert_eq!(l, Weight::new(vec![1, 0], vec![0, 2]));
        assert_eq!(l.to_string(), "w=1,0;v=0,2");
        assert!("w=1;v=0,1".parse::<Weight>().is_err());
    }

    proptest! {
        #[test]
        fn reflection_laws(w in proptest::collection::vec(0i64..4, 3),
                           v in proptest::collection::vec(-3i64..5, 3),
                           i in 0usize..3) {
            let cd = CartanData::new(GraphData::path(3)).unwrap();
            let l = Weight::new(w, v);
            let s = cd.reflect(&l, i).unwrap();
            prop_assert_eq!(cd.pair(&s, i).unwrap(), -cd.pair(&l, i).unwrap());
            prop_assert_eq!(cd.reflect(&s, i).unwrap(), l.clone());
            prop_assert_eq!(cd.neighbor_sum(&l, i).unwrap() - 2 * l.v[i], cd.pair(&l, i).unwrap());
            for a in 0..3 {
                for b in 0..3 {
                    prop_assert_eq!(cd.matrix[a][b], cd.matrix[b][a]);
                }
            }
        }
    }
}
