use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::canonical::{poly_p, poly_q, poly_w, NAME_GAMMA, NAME_P, NAME_W};
use crate::algebra::ParamVector;
use crate::error::{Error, Result};
use crate::exactnum::QiScalar;

/// Printed closed-form invariants for dimensions 6, 7 and 8. `RhoK` names
/// the printed component `ϱ_K`, which sits at target slot `K + 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClosedForm {
    /// `β_3(4β_5β_3² − 5β_4²β_3 + 2β_4γ)/(4γ²)`.
    Dim6Rho3,
    /// `(2β_3β_4γ + 4β_3³β_5 − 5β_3²β_4²)/γ²`, four times [`ClosedForm::Dim6Rho3`].
    Dim6Prop7,
    /// `(4β_3β_5 − 5β_4²)³/(16W²)`.
    Dim7Rho3,
    /// Same expression as [`ClosedForm::Dim7Rho3`].
    Dim7Rho4,
    /// `γ(4β_3β_5 − 5β_4²)²/(4W²)`.
    Dim7Rho5,
    /// Printed as `(4β_3β_5 − 5β_4²)³/(16W²)`.
    Dim8Rho3,
    /// Printed as `(4β_3β_5 − 5β_4²)³/(16W²)`.
    Dim8Rho4,
    /// Printed with denominator `128(2P)`.
    Dim8Rho5,
    /// `β_3γ(4β_3β_5 − 5β_4²)³/(8(2P)³)`.
    Dim8Rho6,
}

impl ClosedForm {
    pub const ALL: [ClosedForm; 9] = [
        ClosedForm::Dim6Rho3,
        ClosedForm::Dim6Prop7,
        ClosedForm::Dim7Rho3,
        ClosedForm::Dim7Rho4,
        ClosedForm::Dim7Rho5,
        ClosedForm::Dim8Rho3,
        ClosedForm::Dim8Rho4,
        ClosedForm::Dim8Rho5,
        ClosedForm::Dim8Rho6,
    ];

    pub fn dim(self) -> usize {
        match self {
            ClosedForm::Dim6Rho3 | ClosedForm::Dim6Prop7 => 6,
            ClosedForm::Dim7Rho3 | ClosedForm::Dim7Rho4 | ClosedForm::Dim7Rho5 => 7,
            _ => 8,
        }
    }

    /// Target slot of the invariant vector that the formula describes.
    pub fn slot(self) -> usize {
        match self {
            ClosedForm::Dim6Rho3 | ClosedForm::Dim6Prop7 | ClosedForm::Dim7Rho3 | ClosedForm::Dim8Rho3 => 5,
            ClosedForm::Dim7Rho4 | ClosedForm::Dim8Rho4 => 6,
            ClosedForm::Dim7Rho5 | ClosedForm::Dim8Rho5 => 7,
            ClosedForm::Dim8Rho6 => 8,
        }
    }

    /// Constant `c` with `formula = c · invariant_vector(p)[slot]`.
    pub fn factor(self) -> QiScalar {
        match self {
            ClosedForm::Dim6Prop7 => QiScalar::from_int(4),
            _ => QiScalar::from_int(1),
        }
    }

    /// Whether the printed expression disagrees with the normalized
    /// component; [`closed_form_corrected`] then gives the repaired one.
    pub fn is_misprinted(self) -> bool {
        matches!(self, ClosedForm::Dim8Rho3 | ClosedForm::Dim8Rho4 | ClosedForm::Dim8Rho5)
    }

    fn name(self) -> &'static str {
        match self {
            ClosedForm::Dim6Rho3 => "dim6-rho3",
            ClosedForm::Dim6Prop7 => "dim6-prop7",
            ClosedForm::Dim7Rho3 => "dim7-rho3",
            ClosedForm::Dim7Rho4 => "dim7-rho4",
            ClosedForm::Dim7Rho5 => "dim7-rho5",
            ClosedForm::Dim8Rho3 => "dim8-rho3",
            ClosedForm::Dim8Rho4 => "dim8-rho4",
            ClosedForm::Dim8Rho5 => "dim8-rho5",
            ClosedForm::Dim8Rho6 => "dim8-rho6",
        }
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClosedForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ClosedForm::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown closed form {s:?}")))
    }
}

fn c(n: i64) -> QiScalar {
    QiScalar::from_int(n)
}

fn divide(num: QiScalar, den: QiScalar, den_name: &str) -> Result<QiScalar> {
    if den.is_zero() {
        return Err(Error::OutsideOpenSet { vanished: vec![den_name.to_string()] });
    }
    Ok(&num * &den.inv()?)
}

fn check_dim(p: &ParamVector, which: ClosedForm) -> Result<()> {
    if p.dim() != which.dim() {
        return Err(Error::DimensionMismatch(format!("{which} needs dimension {}, got {}", which.dim(), p.dim())));
    }
    Ok(())
}

/// `8β_3³β_7 − 28β_3²β_4β_6 + 28β_3β_4²β_5 + 4β_3β_4γ − 7β_4⁴` (n = 7).
fn dim8_rho5_core(p: &ParamVector) -> QiScalar {
    let (b3, b4, b5, b6, b7, g) = (p.beta(3), p.beta(4), p.beta(5), p.beta(6), p.beta(7), p.gamma());
    let mut acc = &c(8) * &(&b3.pow(3) * b7);
    acc -= &(&c(28) * &(&(&b3.pow(2) * b4) * b6));
    acc += &(&c(28) * &(&(b3 * &b4.pow(2)) * b5));
    acc += &(&c(4) * &(&(b3 * b4) * g));
    acc -= &(&c(7) * &b4.pow(4));
    acc
}

/// Exact value of the printed formula.
pub fn closed_form_invariant(p: &ParamVector, which: ClosedForm) -> Result<QiScalar> {
    check_dim(p, which)?;
    match which {
        ClosedForm::Dim6Rho3 | ClosedForm::Dim6Prop7 => {
            let (b3, b4, b5, g) = (p.beta(3), p.beta(4), p.beta(5), p.gamma());
            let mut inner = &c(4) * &(&b3.pow(2) * b5);
            inner -= &(&c(5) * &(&b4.pow(2) * b3));
            inner += &(&c(2) * &(b4 * g));
            let num = b3 * &inner;
            let den = if which == ClosedForm::Dim6Rho3 { &c(4) * &g.pow(2) } else { g.pow(2) };
            divide(num, den, NAME_GAMMA)
        }
        ClosedForm::Dim7Rho3 | ClosedForm::Dim7Rho4 | ClosedForm::Dim8Rho3 | ClosedForm::Dim8Rho4 => {
            divide(poly_q(p).pow(3), &c(16) * &poly_w(p).pow(2), NAME_W)
        }
        ClosedForm::Dim7Rho5 => divide(p.gamma() * &poly_q(p).pow(2), &c(4) * &poly_w(p).pow(2), NAME_W),
        ClosedForm::Dim8Rho5 => {
            divide(&poly_q(p).pow(4) * &dim8_rho5_core(p), &c(128) * &(&c(2) * &poly_p(p)), NAME_P)
        }
        ClosedForm::Dim8Rho6 => divide(
            &(p.beta(3) * p.gamma()) * &poly_q(p).pow(3),
            &c(8) * &(&c(2) * &poly_p(p)).pow(3),
            NAME_P,
        ),
    }
}

/// The formula with misprints repaired: for `n = 7` the sixth slot carries
/// no `γ` term, so `W` becomes `2P`, and the `ϱ_5` denominator is
/// `128(2P)⁴`. Equal to [`closed_form_invariant`] for every other form.
pub fn closed_form_corrected(p: &ParamVector, which: ClosedForm) -> Result<QiScalar> {
    check_dim(p, which)?;
    match which {
        ClosedForm::Dim8Rho3 | ClosedForm::Dim8Rho4 => {
            divide(poly_q(p).pow(3), &c(64) * &poly_p(p).pow(2), NAME_P)
        }
        ClosedForm::Dim8Rho5 => divide(
            &poly_q(p).pow(4) * &dim8_rho5_core(p),
            &c(128) * &(&c(2) * &poly_p(p)).pow(4),
            NAME_P,
        ),
        _ => closed_form_invariant(p, which),
    }
}

/// Forms available for a given algebra dimension.
pub fn closed_forms_for_dim(dim: usize) -> Vec<ClosedForm> {
    ClosedForm::ALL.into_iter().filter(|f| f.dim() == dim).collect()
}
