use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::ParamVector;
use crate::error::{Error, Result};
use crate::exactnum::{MultiPoly, QiScalar, Ring};
use crate::invariants::CellId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Entry {
    Int(i64),
    Lambda,
}

/// One published representative family `L(…)`, possibly depending on a
/// parameter `λ` in one slot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Family {
    dim: usize,
    index: usize,
    entries: Vec<Entry>,
}

/// Compact reference used in reports: the 1-based position in the
/// published list and the printed label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyRef {
    pub index: usize,
    pub label: String,
}

const DIM5: [[Entry; 3]; 5] = {
    use Entry::{Int as I, Lambda as L};
    [[I(1), I(0), L], [I(1), I(1), I(2)], [I(0), I(0), I(1)], [I(0), I(1), I(0)], [I(0), I(0), I(0)]]
};

const DIM6: [[Entry; 4]; 12] = {
    use Entry::{Int as I, Lambda as L};
    [
        [I(1), I(0), L, I(1)],
        [I(1), I(0), I(1), I(0)],
        [I(1), I(0), I(0), I(0)],
        [I(1), I(1), L, I(1)],
        [I(1), I(1), I(0), I(0)],
        [I(0), I(1), I(0), I(1)],
        [I(0), I(1), I(1), I(0)],
        [I(0), I(1), I(0), I(0)],
        [I(0), I(0), I(0), I(1)],
        [I(0), I(0), I(1), I(0)],
        [I(0), I(0), I(1), I(1)],
        [I(0), I(0), I(0), I(0)],
    ]
};

/// The published families for dimension 5 (five families) or 6 (twelve).
pub fn representatives(dim: usize) -> Result<Vec<Family>> {
    let rows: Vec<Vec<Entry>> = match dim {
        5 => DIM5.iter().map(|r| r.to_vec()).collect(),
        6 => DIM6.iter().map(|r| r.to_vec()).collect(),
        _ => return Err(Error::UnsupportedDimension { op: "representatives", dim }),
    };
    Ok(rows.into_iter().enumerate().map(|(i, entries)| Family { dim, index: i + 1, entries }).collect())
}

/// Family `index` (1-based) of dimension `dim`.
pub fn family(dim: usize, index: usize) -> Result<Family> {
    representatives(dim)?
        .into_iter()
        .nth(index.wrapping_sub(1))
        .ok_or_else(|| Error::InvalidParams(format!("dimension {dim} has no family {index}")))
}

impl Family {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.dim - 1
    }

    /// 1-based position in the published list.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn is_parametric(&self) -> bool {
        self.entries.contains(&Entry::Lambda)
    }

    /// Slot (`3..=n+1`) holding `λ`.
    pub fn lambda_slot(&self) -> Option<usize> {
        self.entries.iter().position(|e| *e == Entry::Lambda).map(|i| i + 3)
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|e| match e {
                Entry::Int(v) => v.to_string(),
                Entry::Lambda => "λ".to_string(),
            })
            .collect();
        format!("L({})", parts.join(","))
    }

    pub fn reference(&self) -> FamilyRef {
        FamilyRef { index: self.index, label: self.label() }
    }

    /// Slots over any ring, `λ` substituted by `lambda`.
    pub fn slots_in<R: Ring>(&self, lambda: &R) -> Vec<R> {
        self.entries
            .iter()
            .map(|e| match e {
                Entry::Int(v) => lambda.constant_like(&QiScalar::from_int(*v)),
                Entry::Lambda => lambda.clone(),
            })
            .collect()
    }

    /// Member of the family; `lambda` is ignored for fixed families.
    pub fn instantiate(&self, lambda: &QiScalar) -> ParamVector {
        ParamVector::from_tuple(self.slots_in(lambda)).expect("catalog rows have n − 1 slots")
    }

    /// Member with `λ = 0` for fixed families, or the requested value.
    pub fn member(&self, lambda: Option<&QiScalar>) -> Result<ParamVector> {
        match (self.is_parametric(), lambda) {
            (true, Some(l)) => Ok(self.instantiate(l)),
            (true, None) => Err(Error::InvalidParams(format!("{} needs a value for λ", self.label()))),
            (false, _) => Ok(self.instantiate(&QiScalar::zero())),
        }
    }

    /// Symbolic member over `Q(i)[λ]`.
    pub fn symbolic(&self) -> Vec<MultiPoly> {
        self.slots_in(&MultiPoly::var(1, 0))
    }

    /// Whether slot `t` of every member vanishes (`Some(true)`), never
    /// vanishes (`Some(false)`), or depends on `λ` (`None`).
    pub fn slot_vanishes(&self, t: usize) -> Option<bool> {
        match self.entries[t - 3] {
            Entry::Int(v) => Some(v == 0),
            Entry::Lambda => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Affine orbit invariant used to fix `λ`: `γ/β_3²` in dimension 5 (needs
/// `β_3 ≠ 0`) and `(2β_3β_4γ + 4β_3³β_5 − 5β_3²β_4²)/γ²` in dimension 6
/// (needs `β_3γ ≠ 0`). `None` off that domain.
pub fn lambda_invariant(p: &ParamVector) -> Option<QiScalar> {
    let b3 = p.beta(3);
    if b3.is_zero() {
        return None;
    }
    match p.dim() {
        5 => Some(p.gamma() * &b3.pow(2).inv().ok()?),
        6 => {
            let g = p.gamma();
            if g.is_zero() {
                return None;
            }
            Some(&lambda_invariant_numerator(&p.to_tuple()) * &g.pow(2).inv().ok()?)
        }
        _ => None,
    }
}

fn lambda_invariant_numerator<R: Ring>(slots: &[R]) -> R {
    let (b3, b4, b5, g) = (&slots[0], &slots[1], &slots[2], &slots[3]);
    let k = |v: i64| b3.constant_like(&QiScalar::from_int(v));
    let t1 = k(2).ring_mul(b3).ring_mul(b4).ring_mul(g);
    let t2 = k(4).ring_mul(&b3.ring_pow(3)).ring_mul(b5);
    let t3 = k(5).ring_mul(&b3.ring_pow(2)).ring_mul(&b4.ring_pow(2));
    t1.ring_add(&t2).ring_sub(&t3)
}

/// Name of [`lambda_invariant`] for a dimension.
pub fn lambda_invariant_name(dim: usize) -> &'static str {
    if dim == 5 {
        "gamma/beta3^2"
    } else {
        "(2*beta3*beta4*gamma + 4*beta3^3*beta5 - 5*beta3^2*beta4^2)/gamma^2"
    }
}

/// [`lambda_invariant`] of the family members as a polynomial in `λ`, when
/// the family lies in the invariant's domain for every `λ` (its
/// denominator then does not involve `λ`).
pub fn lambda_invariant_poly(f: &Family) -> Option<MultiPoly> {
    let nonzero = |t: usize| f.slot_vanishes(t) == Some(false);
    if !nonzero(3) {
        return None;
    }
    let slots = f.symbolic();
    let b3 = slots[0].as_constant()?;
    match f.dim {
        5 => {
            let inv = b3.pow(2).inv().ok()?;
            Some(slots[2].scale(&inv))
        }
        6 => {
            if !nonzero(6) {
                return None;
            }
            let g = slots[3].as_constant()?;
            Some(lambda_invariant_numerator(&slots).scale(&g.pow(2).inv().ok()?))
        }
        _ => None,
    }
}

/// How the published classification names a representative for a cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublishedAssignment {
    pub family: Family,
    /// `λ` for parametric families.
    pub lambda: Option<QiScalar>,
}

impl PublishedAssignment {
    pub fn representative(&self) -> ParamVector {
        self.family.member(self.lambda.as_ref()).expect("parametric assignments carry λ")
    }
}

/// The published representative for `p`'s cell (dimensions 5 and 6).
///
/// Parametric cells fix `λ` by matching [`lambda_invariant`]: dimension 5
/// `U1` gives `λ = γ/β_3²` in `L(1,0,λ)`; dimension 6 `U1` solves
/// `4μ − 3 = J` in `L(1,1,μ,1)` and `U4` solves `4λ = J` in `L(1,0,λ,1)`.
pub fn published_assignment(p: &ParamVector, cell: CellId) -> Result<PublishedAssignment> {
    let dim = p.dim();
    let CellId::Sub(k) = cell else {
        let index = if dim == 5 { 5 } else { 12 };
        if dim != 5 && dim != 6 || cell != CellId::Closed {
            return Err(Error::UnsupportedDimension { op: "published_assignment", dim });
        }
        return Ok(PublishedAssignment { family: family(dim, index)?, lambda: None });
    };
    let j = || lambda_invariant(p).expect("cell lies in the invariant's domain");
    let four = QiScalar::from_int(4);
    let (index, lambda) = match (dim, k) {
        (5, 1) => (1, Some(j())),
        (5, 2) => (2, None),
        (5, 3) => (1, Some(QiScalar::from_int(2))),
        (5, 4) => (3, None),
        (5, 5) => (4, None),
        (6, 1) => (4, Some(&(&j() + &QiScalar::from_int(3)) * &four.inv()?)),
        (6, 4) => (1, Some(&j() * &four.inv()?)),
        (6, 2) => (2, None),
        (6, 3) => (3, None),
        (6, 5) => (5, None),
        (6, k) if (6..=11).contains(&k) => (usize::from(k), None),
        _ => return Err(Error::InvalidParams(format!("no cell {cell} in dimension {dim}"))),
    };
    Ok(PublishedAssignment { family: family(dim, index)?, lambda })
}

/// `λ` that places `p` in parametric family `f`, if the invariant
/// decides it; the family's invariant must be affine and non-constant in `λ`.
pub fn lambda_for(f: &Family, p: &ParamVector) -> Option<QiScalar> {
    let poly = lambda_invariant_poly(f)?;
    let target = lambda_invariant(p)?;
    let slope = poly.coeff(&[1]);
    if slope.is_zero() || poly.total_degree() > 1 {
        return None;
    }
    let offset = poly.coeff(&[0]);
    Some(&(&target - &offset) * &slope.inv().ok()?)
}

/// Constant `c` as a polynomial in `λ`.
pub fn lambda_const(c: &QiScalar) -> MultiPoly {
    MultiPoly::constant(1, c.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::cell_membership;

    fn s(v: &str) -> QiScalar {
        v.parse().unwrap()
    }

    #[test]
    fn catalog_shape() {
        let d5 = representatives(5).unwrap();
        assert_eq!(d5.len(), 5);
        assert_eq!(d5.iter().filter(|f| f.is_parametric()).count(), 1);
        let d6 = representatives(6).unwrap();
        assert_eq!(d6.len(), 12);
        assert_eq!(d6.iter().filter(|f| f.is_parametric()).count(), 2);
        assert_eq!(d6[3].label(), "L(1,1,λ,1)");
        assert_eq!(d6[3].lambda_slot(), Some(5));
        assert_eq!(d5[0].instantiate(&s("1/4")), ParamVector::from_tuple(vec![s("1"), s("0"), s("1/4")]).unwrap());
        assert!(representatives(7).is_err());
        assert!(family(6, 13).is_err());
        assert!(family(6, 0).is_err());
    }

    #[test]
    fn lambda_invariants_of_parametric_families() {
        let d6 = representatives(6).unwrap();
        let lam = MultiPoly::var(1, 0);
        let four = MultiPoly::constant(1, QiScalar::from_int(4));
        assert_eq!(lambda_invariant_poly(&d6[0]).unwrap(), lam.mul(&four).unwrap());
        assert_eq!(
            lambda_invariant_poly(&d6[3]).unwrap(),
            lam.mul(&four).unwrap().sub(&lambda_const(&QiScalar::from_int(3))).unwrap()
        );
        assert_eq!(lambda_invariant_poly(&representatives(5).unwrap()[0]).unwrap(), lam);
        assert!(lambda_invariant_poly(&d6[1]).is_none());
    }

    #[test]
    fn published_assignments() {
        let p = ParamVector::from_tuple(vec![s("2"), s("3"), s("1")]).unwrap();
        let a = published_assignment(&p, cell_membership(&p).unwrap()).unwrap();
        assert_eq!(a.family.index(), 1);
        assert_eq!(a.lambda, Some(s("1/4")));
        let p = ParamVector::from_tuple(vec![s("1"), s("0"), s("7/3"), s("1")]).unwrap();
        let a = published_assignment(&p, cell_membership(&p).unwrap()).unwrap();
        assert_eq!(a.representative(), p);
        let f4 = family(6, 4).unwrap();
        let m = f4.instantiate(&s("5"));
        let a = published_assignment(&m, cell_membership(&m).unwrap()).unwrap();
        assert_eq!(a.representative(), m);
        assert_eq!(lambda_for(&f4, &m), Some(s("5")));
        let z = ParamVector::zero(5).unwrap();
        assert_eq!(published_assignment(&z, CellId::Closed).unwrap().family.index(), 12);
    }
}
