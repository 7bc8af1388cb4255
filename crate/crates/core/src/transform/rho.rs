use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::psi::psi_system;
use crate::algebra::ParamVector;
use crate::error::{Error, Result};
use crate::exactnum::{QiScalar, Ring};

/// An adapted base change `(A, B, D)` with `A·D ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TransformDoc", into = "TransformDoc")]
pub struct TransformParams {
    a: QiScalar,
    b: QiScalar,
    d: QiScalar,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TransformDoc {
    #[serde(rename = "A")]
    a: QiScalar,
    #[serde(rename = "B")]
    b: QiScalar,
    #[serde(rename = "D")]
    d: QiScalar,
}

impl TryFrom<TransformDoc> for TransformParams {
    type Error = Error;
    fn try_from(doc: TransformDoc) -> Result<Self> {
        TransformParams::new(doc.a, doc.b, doc.d)
    }
}

impl From<TransformParams> for TransformDoc {
    fn from(t: TransformParams) -> Self {
        TransformDoc { a: t.a, b: t.b, d: t.d }
    }
}

impl TransformParams {
    pub fn new(a: QiScalar, b: QiScalar, d: QiScalar) -> Result<Self> {
        if a.is_zero() || d.is_zero() {
            return Err(Error::InvalidTransform(format!("A·D must be nonzero (A = {a}, D = {d})")));
        }
        Ok(TransformParams { a, b, d })
    }

    pub fn from_ints(a: i64, b: i64, d: i64) -> Result<Self> {
        TransformParams::new(a.into(), b.into(), d.into())
    }

    pub fn identity() -> Self {
        TransformParams { a: QiScalar::one(), b: QiScalar::zero(), d: QiScalar::one() }
    }

    /// From the operator arguments `(x, y, u) = (1/A, B/A, D/A)`.
    pub fn from_xyu(x: &QiScalar, y: &QiScalar, u: &QiScalar) -> Result<Self> {
        let a = x.inv().map_err(|_| Error::InvalidTransform("x must be nonzero".into()))?;
        if u.is_zero() {
            return Err(Error::InvalidTransform("u must be nonzero".into()));
        }
        TransformParams::new(a.clone(), y * &a, u * &a)
    }

    pub fn a(&self) -> &QiScalar {
        &self.a
    }

    pub fn b(&self) -> &QiScalar {
        &self.b
    }

    pub fn d(&self) -> &QiScalar {
        &self.d
    }

    /// `1/A`.
    pub fn x(&self) -> QiScalar {
        self.a.inv().expect("A is nonzero")
    }

    /// `B/A`.
    pub fn y(&self) -> QiScalar {
        &self.b * &self.x()
    }

    /// `D/A`.
    pub fn u(&self) -> QiScalar {
        &self.d * &self.x()
    }
}

/// The base-change operator over any ring: with `slots = (β_3, …, β_n, γ)`
/// returns
///
/// ```text
/// β′_t = x^{t−2} · u · ψ_t(y; β)               3 ≤ t ≤ n−1
/// β′_n = x^{n−2} · u · (y·γ + ψ_n(y; β))
/// γ′   = x^{n−2} · u² · γ
/// ```
pub fn rho_apply_in<R: Ring>(n: usize, x: &R, y: &R, u: &R, slots: &[R]) -> Result<Vec<R>> {
    if slots.len() != n - 1 {
        return Err(Error::LengthMismatch { expected: n - 1, got: slots.len() });
    }
    let sys = psi_system(n)?;
    let mut assignment = Vec::with_capacity(n);
    assignment.push(y.clone());
    assignment.extend(slots.iter().cloned());

    let mut out = Vec::with_capacity(n - 1);
    let mut x_pow = x.clone(); // x^{t−2}
    for t in 3..=n {
        let mut psi = sys.psi(t).eval_in(&assignment)?;
        if t == n {
            psi = psi.ring_add(&y.ring_mul(&slots[n - 2]));
        }
        out.push(x_pow.ring_mul(u).ring_mul(&psi));
        if t < n {
            x_pow = x_pow.ring_mul(x);
        }
    }
    out.push(x_pow.ring_mul(&u.ring_pow(2)).ring_mul(&slots[n - 2]));
    Ok(out)
}

/// `ϱ(1/A, B/A, D/A; β)`.
pub fn rho_apply(tp: &TransformParams, p: &ParamVector) -> ParamVector {
    rho_apply_xyu(&tp.x(), &tp.y(), &tp.u(), p)
}

/// `ϱ(x, y, u; β)` with the operator arguments given directly.
pub fn rho_apply_xyu(x: &QiScalar, y: &QiScalar, u: &QiScalar, p: &ParamVector) -> ParamVector {
    let out = rho_apply_in(p.n(), x, y, u, &p.to_tuple()).expect("slot count matches n");
    ParamVector::from_tuple(out).expect("operator preserves n")
}

/// Single component `ϱ_t` (target slot `t`, with `t = n + 1` meaning `γ′`).
pub fn rho_component(x: &QiScalar, y: &QiScalar, u: &QiScalar, p: &ParamVector, t: usize) -> QiScalar {
    rho_apply_xyu(x, y, u, p).slot(t).clone()
}

/// Parameters of "apply `first`, then `second`": `(A_1A_2, B_1A_2 + B_2D_1, D_1D_2)`.
pub fn rho_compose(first: &TransformParams, second: &TransformParams) -> TransformParams {
    TransformParams {
        a: &first.a * &second.a,
        b: &(&first.b * &second.a) + &(&second.b * &first.d),
        d: &first.d * &second.d,
    }
}

/// `(1/A, −B/(AD), 1/D)`, whose operator arguments are `(A, −B/D, A/D)`.
pub fn rho_invert(tp: &TransformParams) -> TransformParams {
    let ainv = tp.a.inv().expect("A is nonzero");
    let dinv = tp.d.inv().expect("D is nonzero");
    TransformParams { b: -(&(&tp.b * &ainv) * &dinv), a: ainv, d: dinv }
}

/// Batch form of [`rho_apply`] over many parameter vectors.
pub fn rho_apply_batch(tp: &TransformParams, ps: &[ParamVector], exec: crate::exec::Execution) -> Vec<ParamVector> {
    exec.map(ps, |p| rho_apply(tp, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QiScalar {
        s.parse().unwrap()
    }

    fn pv(values: &[&str]) -> ParamVector {
        ParamVector::from_tuple(values.iter().map(|s| q(s)).collect()).unwrap()
    }

    #[test]
    fn identity_transform() {
        let p = pv(&["2", "-1/3", "0+1*i", "7"]);
        assert_eq!(rho_apply(&TransformParams::identity(), &p), p);
    }

    #[test]
    fn fixed_point_in_dim5() {
        let p = pv(&["1", "1", "2"]);
        assert_eq!(rho_apply(&TransformParams::from_ints(1, 1, 1).unwrap(), &p), p);
    }

    #[test]
    fn dim6_substitution() {
        let p = pv(&["1", "0", "0", "0"]);
        assert_eq!(rho_apply(&TransformParams::from_ints(1, 1, 1).unwrap(), &p), pv(&["1", "-2", "5", "0"]));
    }

    #[test]
    fn dim5_canonicalization_witness() {
        let tp = TransformParams::new(q("1"), q("3/7"), q("1/2")).unwrap();
        assert_eq!(rho_apply(&tp, &pv(&["2", "3", "1"])), pv(&["1", "0", "1/4"]));
    }

    #[test]
    fn composition_examples() {
        let one = TransformParams::from_ints(1, 1, 1).unwrap();
        assert_eq!(rho_compose(&one, &one), TransformParams::from_ints(1, 2, 1).unwrap());
        let tp = TransformParams::new(q("2"), q("-1/5"), q("0+3*i")).unwrap();
        assert_eq!(rho_compose(&tp, &TransformParams::identity()), tp);
        assert_eq!(rho_compose(&TransformParams::identity(), &tp), tp);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(rho_invert(&TransformParams::from_ints(1, 1, 1).unwrap()), TransformParams::from_ints(1, -1, 1).unwrap());
        assert_eq!(rho_invert(&TransformParams::identity()), TransformParams::identity());
        let tp = TransformParams::new(q("2"), q("3"), q("5")).unwrap();
        let inv = rho_invert(&tp);
        assert_eq!(inv.x(), q("2"));
        assert_eq!(inv.y(), q("-3/5"));
        assert_eq!(inv.u(), q("2/5"));
    }

    #[test]
    fn invalid_transforms() {
        assert!(TransformParams::from_ints(0, 1, 1).is_err());
        assert!(TransformParams::from_ints(1, 1, 0).is_err());
        assert!(serde_json::from_str::<TransformParams>(r#"{"A":"0","B":"1","D":"1"}"#).is_err());
        let tp: TransformParams = serde_json::from_str(r#"{"A":"2","B":"1/2","D":"-1"}"#).unwrap();
        assert_eq!(tp, TransformParams::new(q("2"), q("1/2"), q("-1")).unwrap());
    }

    #[test]
    fn n3_couples_gamma_into_last_beta() {
        // n = 3: β′_3 = x·u·(yγ + β_3), γ′ = x·u²·γ
        let p = pv(&["2", "3"]);
        let out = rho_apply_xyu(&q("2"), &q("5"), &q("7"), &p);
        assert_eq!(out, pv(&["238", "294"]));
    }
}
