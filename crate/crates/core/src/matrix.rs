//! Dense matrices over an exact field.

use serde::{Deserialize, Serialize};

use crate::field::Field;

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn diagonal(d: Vec<F>) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in d.into_iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: F) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[F]) {
        assert_eq!(col.len(), self.rows);
        for (i, x) in col.iter().enumerate() {
            self.set(i, j, x.clone());
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        self.data
            .iter()
            .enumerate()
            .map(move |(k, x)| (k / self.cols.max(1), k % self.cols.max(1), x))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.shape(), o.shape(), "matrix sum shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.shape(), o.shape(), "matrix difference shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| x.mul(c))
    }

    /// Rows and columns picked out by index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// Row echelon form; returns the pivot columns.
    fn echelon(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for j in c..self.cols {
                let x = self.get(r, j).mul(&inv);
                self.set(r, j, x);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in c..self.cols {
                    let x = self.get(i, j).sub(&f.mul(self.get(r, j)));
                    self.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().len()
    }

    /// Solves `self * X = rhs`, assuming `self` is square and invertible.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        if self.rows != self.cols || rhs.rows != self.rows {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::from_fn(n, n + rhs.cols, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else {
                rhs.get(i, j - n).clone()
            }
        });
        let piv = aug.echelon();
        if piv.len() < n || piv.iter().enumerate().any(|(i, &c)| i != c) {
            return None;
        }
        Some(Self::from_fn(n, rhs.cols, |i, j| aug.get(i, n + j).clone()))
    }

    pub fn inverse(&self) -> Option<Self> {
        self.solve(&Self::identity(self.rows))
    }

    pub fn det(&self) -> F {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return F::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = det.neg();
            }
            let piv = m.get(c, c).clone();
            det = det.mul(&piv);
            let inv = piv.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).mul(&inv);
                for j in c..n {
                    let x = m.get(i, j).sub(&f.mul(m.get(c, j)));
                    m.set(i, j, x);
                }
            }
        }
        det
    }
}

/// Incremental row-independence tracker used for greedy basis selection.
pub struct IndependenceTracker<F> {
    reduced: Vec<(usize, Vec<F>)>,
}

impl<F: Field> Default for IndependenceTracker<F> {
    fn default() -> Self {
        Self {
            reduced: Vec::new(),
        }
    }
}

impl<F: Field> IndependenceTracker<F> {
    /// Adds `v` if it is independent of the accepted vectors; returns whether it was.
    pub fn try_add(&mut self, v: &[F]) -> bool {
        let mut v = v.to_vec();
        for (p, r) in &self.reduced {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(r) {
                *x = x.sub(&f.mul(y));
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        let v: Vec<F> = v.iter().map(|x| x.mul(&inv)).collect();
        self.reduced.push((p, v));
        true
    }

    pub fn len(&self) -> usize {
        self.reduced.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reduced.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_i64(n)
    }

    fn m(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| r(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn det_rank_inverse() {
        let a = m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(a.det(), r(4));
        assert_eq!(a.rank(), 3);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        let s = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.rank(), 1);
        assert!(s.det().is_zero());
        assert!(s.inverse().is_none());
    }

    #[test]
    fn tracker_greedy() {
        let mut t = IndependenceTracker::default();
        assert!(t.try_add(&[r(1), r(1), r(0)]));
        assert!(!t.try_add(&[r(2), r(2), r(0)]));
        assert!(t.try_add(&[r(0), r(1), r(0)]));
        assert!(!t.try_add(&[r(3), r(-1), r(0)]));
        assert_eq!(t.len(), 2);
    }

    proptest! {
        #[test]
        fn inverse_roundtrip(v in proptest::collection::vec(-5i64..6, 9)) {
            let a = Matrix::from_fn(3, 3, |i, j| r(v[3 * i + j]));
            match a.inverse() {
                Some(inv) => {
                    prop_assert!(inv.mul(&a).is_identity());
                    prop_assert!(!a.det().is_zero());
                }
                None => prop_assert!(a.det().is_zero()),
            }
        }
    }
}
