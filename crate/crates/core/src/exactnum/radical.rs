use std::fmt;

use num_traits::{One, Zero};

use super::{QiScalar, Ring};
use crate::error::{Error, Result};

/// Element of `Q(i)[r] / (r^k − c)` with `c ≠ 0`, stored as the coefficients
/// of `1, r, …, r^{k−1}`.
///
/// An identity that holds in this ring holds for every complex `k`-th root of
/// `c` substituted for `r`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RadicalElem {
    degree: u32,
    radicand: QiScalar,
    coeffs: Vec<QiScalar>,
}

impl RadicalElem {
    pub fn new(degree: u32, radicand: QiScalar, coeffs: Vec<QiScalar>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidParams("radical degree must be at least 1".into()));
        }
        if radicand.is_zero() {
            return Err(Error::InvalidParams("radicand must be nonzero".into()));
        }
        let mut e = RadicalElem { degree, radicand, coeffs: vec![QiScalar::zero(); degree as usize] };
        for (j, c) in coeffs.into_iter().enumerate() {
            e.add_monomial(j as u32, &c);
        }
        Ok(e)
    }

    pub fn constant(degree: u32, radicand: QiScalar, c: QiScalar) -> Result<Self> {
        RadicalElem::new(degree, radicand, vec![c])
    }

    /// The root `r` itself.
    pub fn root(degree: u32, radicand: QiScalar) -> Result<Self> {
        RadicalElem::monomial(degree, radicand, QiScalar::one(), 1)
    }

    /// `c · r^m` for any `m ≥ 0` (reduced modulo `r^k − c`).
    pub fn monomial(degree: u32, radicand: QiScalar, c: QiScalar, m: u32) -> Result<Self> {
        let mut e = RadicalElem::new(degree, radicand, vec![])?;
        e.add_monomial(m, &c);
        Ok(e)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn radicand(&self) -> &QiScalar {
        &self.radicand
    }

    pub fn coeffs(&self) -> &[QiScalar] {
        &self.coeffs
    }

    fn add_monomial(&mut self, m: u32, c: &QiScalar) {
        let k = self.degree;
        let wraps = m / k;
        let slot = (m % k) as usize;
        let factor = self.radicand.pow(wraps);
        self.coeffs[slot] += &(c * &factor);
    }

    /// The value as a plain scalar when no power of `r` survives.
    pub fn as_scalar(&self) -> Option<QiScalar> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    /// `Some((c, m))` when the element is the single monomial `c·r^m`.
    pub fn as_monomial(&self) -> Option<(QiScalar, u32)> {
        let mut nz = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero());
        let (m, c) = nz.next()?;
        nz.next().is_none().then(|| (c.clone(), m as u32))
    }

    /// Inverse of a nonzero monomial `c·r^m`; uses `r^{-1} = r^{k−1}/radicand`.
    pub fn inverse_monomial(&self) -> Result<Self> {
        let (c, m) = self
            .as_monomial()
            .ok_or_else(|| Error::InvalidParams("only monomials are inverted".into()))?;
        let inv_c = c.inv()?;
        if m == 0 {
            return RadicalElem::constant(self.degree, self.radicand.clone(), inv_c);
        }
        let scale = inv_c.checked_div(&self.radicand)?;
        RadicalElem::monomial(self.degree, self.radicand.clone(), scale, self.degree - m)
    }

    fn same_field(&self, rhs: &RadicalElem) {
        assert!(
            self.degree == rhs.degree && self.radicand == rhs.radicand,
            "radical elements from different extensions"
        );
    }
}

impl Ring for RadicalElem {
    fn constant_like(&self, c: &QiScalar) -> Self {
        RadicalElem::constant(self.degree, self.radicand.clone(), c.clone()).expect("valid extension")
    }

    fn ring_add(&self, rhs: &Self) -> Self {
        self.same_field(rhs);
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        out
    }

    fn ring_mul(&self, rhs: &Self) -> Self {
        self.same_field(rhs);
        let mut out = self.zero_like();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out.add_monomial((i + j) as u32, &(a * b));
                }
            }
        }
        out
    }

    fn ring_scale(&self, c: &QiScalar) -> Self {
        let mut out = self.clone();
        for a in out.coeffs.iter_mut() {
            *a *= c;
        }
        out
    }

    fn ring_is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for RadicalElem {
    /// `a + b*r + c*r^2` where `r^k = radicand`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| match m {
                0 => format!("({c})"),
                1 => format!("({c})*r"),
                _ => format!("({c})*r^{m}"),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl fmt::Debug for RadicalElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [r^{} = {}]", self.degree, self.radicand)
    }
}
