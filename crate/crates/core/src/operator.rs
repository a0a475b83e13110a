//! Weight-homogeneous operators on a module: one matrix per source weight.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cartan::Weight;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::qlaurent::QFraction;
use crate::rep::{IntegrableModule, QMatrix};

#[derive(Clone, Debug, PartialEq)]
pub struct Block {
    pub target: Weight,
    pub matrix: QMatrix,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct WeightOperator {
    pub blocks: BTreeMap<Weight, Block>,
}

impl WeightOperator {
    pub fn identity(m: &IntegrableModule) -> Self {
        Self {
            blocks: m
                .weights()
                .into_iter()
                .map(|v| {
                    let l = m.weight(&v);
                    let d = m.dim(&v);
                    (
                        l.clone(),
                        Block {
                            target: l,
                            matrix: Matrix::identity(d),
                        },
                    )
                })
                .collect(),
        }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let mut blocks = BTreeMap::new();
        for (src, b) in &other.blocks {
            let Some(a) = self.blocks.get(&b.target) else {
                if b.matrix.rows() == 0 {
                    // passes through the zero space; the composite is zero
                    continue;
                }
                return Err(Error::Shape(format!("no block at weight {}", b.target)));
            };
            blocks.insert(
                src.clone(),
                Block {
                    target: a.target.clone(),
                    matrix: a.matrix.mul(&b.matrix),
                },
            );
        }
        Ok(Self { blocks })
    }

    pub fn inverse(&self) -> Result<Self> {
        let mut blocks = BTreeMap::new();
        for (src, b) in &self.blocks {
            let inv = b
                .matrix
                .inverse()
                .ok_or_else(|| Error::Internal(format!("singular block at weight {src}")))?;
            blocks.insert(
                b.target.clone(),
                Block {
                    target: src.clone(),
                    matrix: inv,
                },
            );
        }
        Ok(Self { blocks })
    }

    pub fn linear_combination(&self, a: &QFraction, other: &Self, b: &QFraction) -> Result<Self> {
        let mut blocks = BTreeMap::new();
        for (src, x) in &self.blocks {
            let Some(y) = other.blocks.get(src) else {
                return Err(Error::Shape(format!("missing block at {src}")));
            };
            if x.target != y.target && !(x.matrix.is_zero() || y.matrix.is_zero()) {
                return Err(Error::Shape(format!("targets differ at {src}")));
            }
            let target = if x.matrix.is_zero() {
                y.target.clone()
            } else {
                x.target.clone()
            };
            if x.matrix.shape() != y.matrix.shape() {
                return Err(Error::Shape(format!("block shapes differ at {src}")));
            }
            blocks.insert(
                src.clone(),
                Block {
                    target,
                    matrix: x.matrix.scale(a).add(&y.matrix.scale(b)),
                },
            );
        }
        Ok(Self { blocks })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.linear_combination(&QFraction::one(), other, &QFraction::from_i64(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|b| b.matrix.is_zero())
    }

    /// First source weight whose blocks differ, if any.
    pub fn first_difference(&self, other: &Self) -> Option<Weight> {
        for (src, x) in &self.blocks {
            match other.blocks.get(src) {
                Some(y) if x == y => {}
                Some(y)
                    if x.matrix.is_zero()
                        && y.matrix.is_zero()
                        && x.matrix.shape() == y.matrix.shape() => {}
                _ => return Some(src.clone()),
            }
        }
        other
            .blocks
            .keys()
            .find(|k| !self.blocks.contains_key(*k))
            .cloned()
    }

    pub fn report(&self) -> Vec<BlockReport> {
        self.blocks
            .iter()
            .map(|(s, b)| BlockReport {
                source: s.to_string(),
                target: b.target.to_string(),
                matrix: b
                    .matrix
                    .to_rows()
                    .iter()
                    .map(|r| r.iter().map(|x| x.to_string()).collect())
                    .collect(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct BlockReport {
    pub source: String,
    pub target: String,
    pub matrix: Vec<Vec<String>>,
}
