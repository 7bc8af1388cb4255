use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::QiScalar;

/// Sparse vector over basis indices.
pub type SparseVec = BTreeMap<usize, QiScalar>;

/// Structure constants `[e_i, e_j] = Σ_k γ_{ij}^k e_k` of an algebra with a
/// 0-indexed basis `e_0, …, e_{dim−1}`. Absent entries are zero products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable {
    dim: usize,
    constants: BTreeMap<(usize, usize), SparseVec>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableDoc {
    dim: usize,
    products: Vec<ProductDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProductDoc {
    left: usize,
    right: usize,
    result: BTreeMap<usize, QiScalar>,
}

/// Add `c · v` into `acc`, dropping entries that cancel.
pub(crate) fn axpy(acc: &mut SparseVec, c: &QiScalar, v: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (&k, x) in v {
        let term = c * x;
        let slot = acc.entry(k).or_insert_with(QiScalar::zero);
        *slot += &term;
        if slot.is_zero() {
            acc.remove(&k);
        }
    }
}

impl StructureTable {
    pub fn zero(dim: usize) -> Self {
        StructureTable { dim, constants: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.dim {
            return Err(Error::DimensionMismatch(format!("basis index {i} outside 0..{}", self.dim)));
        }
        Ok(())
    }

    /// Set `γ_{ij}^k = value`.
    pub fn set(&mut self, i: usize, j: usize, k: usize, value: QiScalar) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        self.check_index(k)?;
        let entry = self.constants.entry((i, j)).or_default();
        if value.is_zero() {
            entry.remove(&k);
        } else {
            entry.insert(k, value);
        }
        if entry.is_empty() {
            self.constants.remove(&(i, j));
        }
        Ok(())
    }

    /// Add `value` to `γ_{ij}^k`.
    pub fn add(&mut self, i: usize, j: usize, k: usize, value: &QiScalar) -> Result<()> {
        let cur = self.constant(i, j, k);
        self.set(i, j, k, cur + value)
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> QiScalar {
        self.constants.get(&(i, j)).and_then(|v| v.get(&k)).cloned().unwrap_or_default()
    }

    /// `[e_i, e_j]` as a sparse vector (empty for a zero product).
    pub fn product(&self, i: usize, j: usize) -> SparseVec {
        self.constants.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Nonzero products in `(left, right)` order.
    pub fn products(&self) -> impl Iterator<Item = ((usize, usize), &SparseVec)> {
        self.constants.iter().map(|(&k, v)| (k, v))
    }

    /// Bilinear extension `[u, v]`.
    pub fn bracket(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (&i, a) in u {
            for (&j, b) in v {
                if let Some(p) = self.constants.get(&(i, j)) {
                    axpy(&mut acc, &(a * b), p);
                }
            }
        }
        acc
    }

    /// Table JSON; `one_based` shifts every index by one for comparison with
    /// tables written on `e_1, …, e_{dim}`.
    pub fn to_json(&self, one_based: bool) -> String {
        let shift = usize::from(one_based);
        let doc = TableDoc {
            dim: self.dim,
            products: self
                .constants
                .iter()
                .map(|(&(i, j), v)| ProductDoc {
                    left: i + shift,
                    right: j + shift,
                    result: v.iter().map(|(&k, c)| (k + shift, c.clone())).collect(),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("tables always serialize")
    }

    pub fn from_json(s: &str, one_based: bool) -> Result<Self> {
        let doc: TableDoc = serde_json::from_str(s)?;
        let mut t = StructureTable::zero(doc.dim);
        let unshift = |i: usize| -> Result<usize> {
            if one_based {
                i.checked_sub(1)
                    .ok_or_else(|| Error::DimensionMismatch("index 0 in a one-based table".into()))
            } else {
                Ok(i)
            }
        };
        for p in doc.products {
            let (i, j) = (unshift(p.left)?, unshift(p.right)?);
            for (k, c) in p.result {
                t.add(i, j, unshift(k)?, &c)?;
            }
        }
        Ok(t)
    }

    /// Direct sum with another table; the other basis is appended.
    pub fn direct_sum(&self, other: &StructureTable) -> StructureTable {
        let mut out = self.clone();
        out.dim += other.dim;
        let off = self.dim;
        for (&(i, j), v) in &other.constants {
            for (&k, c) in v {
                out.set(i + off, j + off, k + off, c.clone()).expect("indices in range");
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_and_relabel() {
        let mut t = StructureTable::zero(3);
        t.set(0, 0, 2, QiScalar::from_int(1)).unwrap();
        t.set(0, 1, 1, "1/2+1*i".parse().unwrap()).unwrap();
        t.set(0, 1, 2, QiScalar::from_int(-3)).unwrap();
        let zero_based = t.to_json(false);
        assert_eq!(
            zero_based,
            r#"{"dim":3,"products":[{"left":0,"right":0,"result":{"2":"1"}},{"left":0,"right":1,"result":{"1":"1/2+1*i","2":"-3"}}]}"#
        );
        assert_eq!(StructureTable::from_json(&zero_based, false).unwrap(), t);
        let one_based = t.to_json(true);
        assert!(one_based.contains(r#""left":1,"right":1,"result":{"3":"1"}"#));
        assert_eq!(StructureTable::from_json(&one_based, true).unwrap(), t);
        assert!(StructureTable::from_json(&zero_based, true).is_err());
    }

    #[test]
    fn out_of_range_indices() {
        let mut t = StructureTable::zero(2);
        assert!(t.set(0, 2, 0, QiScalar::from_int(1)).is_err());
        assert!(StructureTable::from_json(r#"{"dim":2,"products":[{"left":0,"right":0,"result":{"5":"1"}}]}"#, false).is_err());
    }

    #[test]
    fn setting_zero_removes() {
        let mut t = StructureTable::zero(2);
        t.set(1, 1, 0, QiScalar::from_int(4)).unwrap();
        t.set(1, 1, 0, QiScalar::zero()).unwrap();
        assert_eq!(t, StructureTable::zero(2));
    }
}
