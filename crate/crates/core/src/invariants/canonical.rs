use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::ParamVector;
use crate::error::{Error, Result};
use crate::exactnum::QiScalar;
use crate::transform::{rho_apply_xyu, TransformParams};

fn q(n: i64) -> QiScalar {
    QiScalar::from_int(n)
}

/// `4β_3β_5 − 5β_4²`.
pub fn poly_q(p: &ParamVector) -> QiScalar {
    &(&q(4) * &(p.beta(3) * p.beta(5))) - &(&q(5) * &p.beta(4).pow(2))
}

/// `β_3²β_6 − 3β_3β_4β_5 + 2β_4³`.
pub fn poly_p(p: &ParamVector) -> QiScalar {
    let (b3, b4, b5, b6) = (p.beta(3), p.beta(4), p.beta(5), p.beta(6));
    &(&(&b3.pow(2) * b6) - &(&q(3) * &(&(b3 * b4) * b5))) + &(&q(2) * &b4.pow(3))
}

/// `2β_3²β_6 − 6β_3β_4β_5 + β_4γ + 4β_4³` for `n = 6`, where `γ` enters
/// the sixth slot through `β′_6 = … + yγ`.
pub fn poly_w(p: &ParamVector) -> QiScalar {
    &(&q(2) * &poly_p(p)) + &(p.beta(4) * p.gamma())
}

pub const NAME_BETA3: &str = "beta3";
pub const NAME_GAMMA: &str = "gamma";
pub const NAME_Q: &str = "4*beta3*beta5 - 5*beta4^2";
pub const NAME_P: &str = "beta3^2*beta6 - 3*beta3*beta4*beta5 + 2*beta4^3";
pub const NAME_W: &str = "2*beta3^2*beta6 - 6*beta3*beta4*beta5 + beta4*gamma + 4*beta4^3";
pub const NAME_DIM5: &str = "gamma - 2*beta3^2";

/// Which normalization recipe applies to a given `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CanonicalVariant {
    /// `n = 4`: `(1, β_4/(2β_3² − γ), 1/β_3)`.
    Dim5,
    /// `n = 5`: `(β_3²/γ, β_4/(2β_3²), γ/β_3³)`.
    Dim6,
    /// `n = 6`: the generic recipe with `2P` replaced by `W`.
    Dim7,
    /// `n ≥ 7`.
    Generic,
}

impl CanonicalVariant {
    pub fn for_n(n: usize) -> Result<Self> {
        match n {
            4 => Ok(CanonicalVariant::Dim5),
            5 => Ok(CanonicalVariant::Dim6),
            6 => Ok(CanonicalVariant::Dim7),
            n if n >= 7 => Ok(CanonicalVariant::Generic),
            _ => Err(Error::UnsupportedDimension { op: "canonical_point", dim: n + 1 }),
        }
    }
}

/// Named polynomial conditions `value ≠ 0` that define the open set on which
/// the normalization exists.
pub fn open_set_conditions(p: &ParamVector) -> Result<Vec<(&'static str, QiScalar)>> {
    let b3 = p.beta(3).clone();
    Ok(match CanonicalVariant::for_n(p.n())? {
        CanonicalVariant::Dim5 => vec![(NAME_BETA3, b3.clone()), (NAME_DIM5, p.gamma() - &(&q(2) * &b3.pow(2)))],
        CanonicalVariant::Dim6 => vec![(NAME_BETA3, b3), (NAME_GAMMA, p.gamma().clone())],
        CanonicalVariant::Dim7 => vec![(NAME_BETA3, b3), (NAME_Q, poly_q(p)), (NAME_W, poly_w(p))],
        CanonicalVariant::Generic => vec![(NAME_BETA3, b3), (NAME_Q, poly_q(p)), (NAME_P, poly_p(p))],
    })
}

/// Names of the open-set polynomials that vanish at `p`.
pub fn vanished(p: &ParamVector) -> Result<Vec<String>> {
    Ok(open_set_conditions(p)?
        .into_iter()
        .filter(|(_, v)| v.is_zero())
        .map(|(name, _)| name.to_string())
        .collect())
}

pub fn in_open_set(p: &ParamVector) -> Result<bool> {
    Ok(vanished(p)?.is_empty())
}

/// Operator arguments `(x0, y0, u0)` that normalize `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalPoint {
    pub x0: QiScalar,
    pub y0: QiScalar,
    pub u0: QiScalar,
    pub variant: CanonicalVariant,
}

impl CanonicalPoint {
    /// The base change `(A_0, B_0, D_0)` with `(1/A_0, B_0/A_0, D_0/A_0) = (x0, y0, u0)`.
    pub fn transform(&self) -> TransformParams {
        TransformParams::from_xyu(&self.x0, &self.y0, &self.u0).expect("canonical points have x0, u0 nonzero")
    }
}

pub fn canonical_point(p: &ParamVector) -> Result<CanonicalPoint> {
    let variant = CanonicalVariant::for_n(p.n())?;
    let gone = vanished(p)?;
    if !gone.is_empty() {
        return Err(Error::OutsideOpenSet { vanished: gone });
    }
    let b3 = p.beta(3);
    let b3sq = b3.pow(2);
    let inv = |v: &QiScalar| v.inv().expect("open-set conditions exclude zero");
    let (x0, y0, u0) = match variant {
        CanonicalVariant::Dim5 => {
            let y0 = p.beta(4) * &inv(&(&(&q(2) * &b3sq) - p.gamma()));
            (QiScalar::one(), y0, inv(b3))
        }
        CanonicalVariant::Dim6 => {
            let x0 = &b3sq * &inv(p.gamma());
            let y0 = p.beta(4) * &inv(&(&q(2) * &b3sq));
            let u0 = p.gamma() * &inv(&b3.pow(3));
            (x0, y0, u0)
        }
        CanonicalVariant::Dim7 | CanonicalVariant::Generic => {
            // x0 = β_3·Q / (4P) and u0 = 4P / (β_3²·Q); for n = 6 the role
            // of 2P is played by W.
            let four_p = if variant == CanonicalVariant::Dim7 { &q(2) * &poly_w(p) } else { &q(4) * &poly_p(p) };
            let b3q = b3 * &poly_q(p);
            let x0 = &b3q * &inv(&four_p);
            let y0 = p.beta(4) * &inv(&(&q(2) * &b3sq));
            let u0 = &four_p * &inv(&(b3 * &b3q));
            (x0, y0, u0)
        }
    };
    Ok(CanonicalPoint { x0, y0, u0, variant })
}

/// The normalized parameters `β⁰ = ϱ(x0, y0, u0; β)`, keyed by slot
/// `3..=n+1` (slot `n + 1` is `γ⁰`).
///
/// On the open set these are orbit invariants: `β⁰_3 = 1`, `β⁰_4 = 0`, and
/// for `n ≥ 6` also `β⁰_5 = β⁰_6`; for `n = 5` the last slot is `γ⁰ = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantVector {
    n: usize,
    values: Vec<QiScalar>,
}

impl InvariantVector {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Value at slot `t`, `3 ≤ t ≤ n + 1`.
    pub fn get(&self, t: usize) -> &QiScalar {
        &self.values[t - 3]
    }

    /// All slots `3..=n+1`.
    pub fn values(&self) -> &[QiScalar] {
        &self.values
    }

    /// The normalized vector viewed as a parameter vector.
    pub fn normal_form(&self) -> ParamVector {
        ParamVector::from_tuple(self.values.clone()).expect("n + 1 − 2 slots")
    }

    /// Slots that are not fixed by the normalization, in order.
    pub fn free_slots(n: usize) -> Vec<usize> {
        match n {
            4 | 5 => vec![5],
            _ => std::iter::once(5).chain(7..=n + 1).collect(),
        }
    }

    /// The values at [`InvariantVector::free_slots`].
    pub fn free_values(&self) -> Vec<QiScalar> {
        InvariantVector::free_slots(self.n).into_iter().map(|t| self.get(t).clone()).collect()
    }

    /// Labelled map `"3" → …, …, "gamma" → …`.
    pub fn labelled(&self) -> BTreeMap<String, QiScalar> {
        (3..=self.n + 1).map(|t| (slot_label(self.n, t), self.get(t).clone())).collect()
    }
}

/// `"t"` for a β slot and `"gamma"` for slot `n + 1`.
pub fn slot_label(n: usize, t: usize) -> String {
    if t == n + 1 {
        "gamma".to_string()
    } else {
        t.to_string()
    }
}

pub fn invariant_vector(p: &ParamVector) -> Result<InvariantVector> {
    let cp = canonical_point(p)?;
    let values = rho_apply_xyu(&cp.x0, &cp.y0, &cp.u0, p).to_tuple();
    Ok(InvariantVector { n: p.n(), values })
}

/// An algebra whose invariant vector has the prescribed free values (see
/// [`InvariantVector::free_slots`]). The normalized vector is its own
/// canonical form, so it is returned directly. For `n = 4` the value 2 is
/// excluded, and for `n ≥ 6` the first free value (shared by slots 5 and 6)
/// must be nonzero.
pub fn realize_invariants(n: usize, free: &[QiScalar]) -> Result<ParamVector> {
    CanonicalVariant::for_n(n)?;
    let slots = InvariantVector::free_slots(n);
    if free.len() != slots.len() {
        return Err(Error::LengthMismatch { expected: slots.len(), got: free.len() });
    }
    let mut values = vec![QiScalar::zero(); n - 1];
    values[0] = QiScalar::one();
    for (&t, v) in slots.iter().zip(free) {
        values[t - 3] = v.clone();
    }
    match n {
        4 => {
            if free[0] == QiScalar::from_int(2) {
                return Err(Error::OutsideOpenSet { vanished: vec![NAME_DIM5.to_string()] });
            }
        }
        5 => values[3] = QiScalar::one(),
        _ => {
            if free[0].is_zero() {
                return Err(Error::OutsideOpenSet { vanished: vec![NAME_Q.to_string()] });
            }
            values[3] = free[0].clone();
        }
    }
    ParamVector::from_tuple(values)
}
