use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::chain::ChainPair;
use crate::error::{Error, Result};
use crate::structures::KKey;
use crate::transform::{enumerate_top, RangeMap, Transformation};

/// A bare multiplication table over elements `0..order`.
///
/// This is the form the isomorphism search works on, and the JSON
/// interchange format `{"order": n, "table": [[...]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTable", into = "RawTable")]
pub struct MulTable {
    order: usize,
    data: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct RawTable {
    order: usize,
    table: Vec<Vec<usize>>,
}

impl TryFrom<RawTable> for MulTable {
    type Error = Error;

    fn try_from(raw: RawTable) -> Result<Self> {
        MulTable::from_rows(raw.table).and_then(|t| {
            if t.order == raw.order {
                Ok(t)
            } else {
                Err(Error::Parse(format!("order {} does not match {} rows", raw.order, t.order)))
            }
        })
    }
}

impl From<MulTable> for RawTable {
    fn from(t: MulTable) -> Self {
        RawTable { order: t.order, table: t.rows() }
    }
}

impl MulTable {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let order = rows.len();
        let mut data = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::Parse(format!("row {i} has {} entries, expected {order}", row.len())));
            }
            for &v in row {
                if v >= order {
                    return Err(Error::Parse(format!("entry {v} in row {i} is out of range")));
                }
                data.push(v as u32);
            }
        }
        Ok(MulTable { order, data })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.data[i * self.order + j] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|i| (0..self.order).map(|j| self.mul(i, j)).collect()).collect()
    }

    /// `(ij)k = i(jk)` for all triples when `order ≤ 200`; on a strided grid
    /// of roughly that many points per axis otherwise. Returns the first
    /// failing triple.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        let stride = n.div_ceil(200).max(1);
        let axis: Vec<usize> = (0..n).step_by(stride).collect();
        for &i in &axis {
            for &j in &axis {
                let ij = self.mul(i, j);
                for &k in &axis {
                    if self.mul(ij, k) != self.mul(i, self.mul(j, k)) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_idempotent(&self, i: usize) -> bool {
        self.mul(i, i) == i
    }

    /// `βz = z` for every `β`.
    pub fn is_right_zero(&self, z: usize) -> bool {
        (0..self.order).all(|b| self.mul(b, z) == z)
    }

    /// `zβ = z` for every `β`.
    pub fn is_left_zero(&self, z: usize) -> bool {
        (0..self.order).all(|b| self.mul(z, b) == z)
    }

    /// `βe = β` for every `β`.
    pub fn is_right_identity(&self, e: usize) -> bool {
        (0..self.order).all(|b| self.mul(b, e) == b)
    }
}

/// Per-element data cached alongside a Cayley table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementInfo {
    pub idempotent: bool,
    pub constant: bool,
    pub range: Vec<usize>,
    pub key: KKey,
}

/// The multiplication table of `T_OP(X, X')` over the canonical element order.
#[derive(Debug, Clone)]
pub struct CayleyTable {
    pair: ChainPair,
    elements: Vec<Transformation>,
    info: Vec<ElementInfo>,
    table: MulTable,
    index: HashMap<Vec<usize>, usize>,
}

impl CayleyTable {
    pub fn build(pair: &ChainPair, cap: usize) -> Result<Self> {
        let elements = enumerate_top(pair, cap)?;
        let n = elements.len();
        let index: HashMap<Vec<usize>, usize> =
            elements.iter().enumerate().map(|(i, e)| (e.image().to_vec(), i)).collect();
        let mut data = Vec::with_capacity(n * n);
        let mut buf = vec![0usize; pair.size()];
        for a in &elements {
            for b in &elements {
                for (slot, &y) in buf.iter_mut().zip(a.image()) {
                    *slot = b.apply(y);
                }
                data.push(index[&buf] as u32);
            }
        }
        let table = MulTable { order: n, data };
        if let Some((i, j, k)) = table.associativity_failure() {
            return Err(Error::Violation(format!("composition not associative at ({i}, {j}, {k})")));
        }
        let info = elements
            .iter()
            .map(|e| ElementInfo {
                idempotent: e.is_idempotent(),
                constant: e.is_constant(),
                range: e.range_set().into_iter().collect(),
                key: KKey::of(e),
            })
            .collect();
        Ok(CayleyTable { pair: pair.clone(), elements, info, table, index })
    }

    pub fn pair(&self) -> &ChainPair {
        &self.pair
    }

    pub fn order(&self) -> usize {
        self.table.order
    }

    pub fn table(&self) -> &MulTable {
        &self.table
    }

    pub fn elements(&self) -> &[Transformation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Transformation {
        &self.elements[i]
    }

    pub fn info(&self, i: usize) -> &ElementInfo {
        &self.info[i]
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table.mul(i, j)
    }

    pub fn index_of(&self, image: &[usize]) -> Option<usize> {
        self.index.get(image).copied()
    }

    /// Index of the constant map at range element `a`.
    pub fn constant_index(&self, a: usize) -> Option<usize> {
        self.index_of(&vec![a; self.pair.size()])
    }

    /// Elements whose K-class key is `key`, ascending.
    pub fn class_members(&self, key: &KKey) -> Vec<usize> {
        (0..self.order()).filter(|&i| &self.info[i].key == key).collect()
    }
}
