use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::canonical::{invariant_vector, poly_p, poly_q, poly_w, slot_label, vanished};
use crate::algebra::ParamVector;
use crate::error::{Error, Result};
use crate::exactnum::QiScalar;

/// Partition cell: `U1, U2, …` for the fine partitions of dimensions 5
/// and 6, `U`/`F` for the coarse split when `n ≥ 6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellId {
    Sub(u8),
    Open,
    Closed,
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellId::Sub(k) => write!(f, "U{k}"),
            CellId::Open => f.write_str("U"),
            CellId::Closed => f.write_str("F"),
        }
    }
}

impl FromStr for CellId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "U" => Ok(CellId::Open),
            "F" => Ok(CellId::Closed),
            _ => s
                .strip_prefix('U')
                .and_then(|k| k.parse::<u8>().ok())
                .filter(|&k| k >= 1)
                .map(CellId::Sub)
                .ok_or_else(|| Error::Format(format!("unknown cell {s:?}"))),
        }
    }
}

impl Serialize for CellId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CellId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All cells of the partition used for dimension `dim`.
pub fn cells_for_dim(dim: usize) -> Result<Vec<CellId>> {
    let subs = match dim {
        5 => 5,
        6 => 11,
        d if d >= 7 => return Ok(vec![CellId::Open, CellId::Closed]),
        _ => return Err(Error::UnsupportedDimension { op: "cell_membership", dim }),
    };
    Ok((1..=subs).map(CellId::Sub).chain(std::iter::once(CellId::Closed)).collect())
}

/// Literal middle factor of the printed `U` condition, `4β_3²β_6 − 12β_3β_4β_6 + β_4³`.
pub fn literal_u_factor(p: &ParamVector) -> QiScalar {
    let (b3, b4, b6) = (p.beta(3), p.beta(4), p.beta(6));
    let mut acc = &QiScalar::from_int(4) * &(&b3.pow(2) * b6);
    acc -= &(&QiScalar::from_int(12) * &(&(b3 * b4) * b6));
    acc += &b4.pow(3);
    acc
}

/// The unique cell containing `p`.
pub fn cell_membership(p: &ParamVector) -> Result<CellId> {
    let nz = |v: &QiScalar| !v.is_zero();
    let (b3, b4, g) = (p.beta(3), p.beta(4), p.gamma());
    let cell = match p.dim() {
        5 => {
            let k = if nz(b3) {
                let g2 = g - &(&QiScalar::from_int(2) * &b3.pow(2));
                if nz(&g2) {
                    1
                } else if nz(b4) {
                    2
                } else {
                    3
                }
            } else if nz(g) {
                4
            } else if nz(b4) {
                5
            } else {
                return Ok(CellId::Closed);
            };
            CellId::Sub(k)
        }
        6 => {
            let b5 = p.beta(5);
            let k = match (nz(b3), nz(b4)) {
                (true, true) if nz(g) => 1,
                (true, true) => {
                    // β_3β_4 ≠ 4β_4², read literally.
                    let lhs = b3 * b4;
                    let rhs = &QiScalar::from_int(4) * &b4.pow(2);
                    if lhs != rhs {
                        2
                    } else {
                        3
                    }
                }
                (true, false) if nz(g) => 4,
                (true, false) => 5,
                (false, true) if nz(g) => 6,
                (false, true) if nz(b5) => 7,
                (false, true) => 8,
                (false, false) if nz(b5) && nz(g) => 9,
                (false, false) if nz(b5) => 10,
                (false, false) if nz(g) => 11,
                (false, false) => return Ok(CellId::Closed),
            };
            CellId::Sub(k)
        }
        d if d >= 7 => {
            let middle = if p.n() == 6 { poly_w(p) } else { poly_p(p) };
            if nz(b3) && nz(&poly_q(p)) && nz(&middle) {
                CellId::Open
            } else {
                CellId::Closed
            }
        }
        d => return Err(Error::UnsupportedDimension { op: "cell_membership", dim: d }),
    };
    Ok(cell)
}

/// `U`/`F` by the printed defining polynomial
/// `β_3(4β_3²β_6 − 12β_3β_4β_6 + β_4³)(4β_3β_5 − 5β_4²)`, kept for comparison.
pub fn cell_membership_literal(p: &ParamVector) -> Result<CellId> {
    if p.n() < 6 {
        return Err(Error::UnsupportedDimension { op: "cell_membership_literal", dim: p.dim() });
    }
    let prod = &(p.beta(3) * &literal_u_factor(p)) * &poly_q(p);
    Ok(if prod.is_zero() { CellId::Closed } else { CellId::Open })
}

/// Invariant report for one algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantReport {
    pub dim: usize,
    pub cell: CellId,
    pub invariants: BTreeMap<String, QiScalar>,
    pub open_set: bool,
    pub vanished: Vec<String>,
}

impl InvariantReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Cell, open-set status and (on the open set) the invariant vector. With
/// `literal`, the coarse cell for `n ≥ 6` uses the printed defining
/// polynomial instead.
pub fn invariant_report(p: &ParamVector, literal: bool) -> Result<InvariantReport> {
    let cell = if literal && p.n() >= 6 { cell_membership_literal(p)? } else { cell_membership(p)? };
    let gone = vanished(p)?;
    let invariants = if gone.is_empty() {
        let iv = invariant_vector(p)?;
        (3..=p.n() + 1).map(|t| (slot_label(p.n(), t), iv.get(t).clone())).collect()
    } else {
        BTreeMap::new()
    };
    Ok(InvariantReport { dim: p.dim(), cell, invariants, open_set: gone.is_empty(), vanished: gone })
}
