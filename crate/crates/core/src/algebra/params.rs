use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::QiScalar;

/// Parameters `(β_3, …, β_n, γ)` of a second-class algebra `L(β)` of
/// dimension `n + 1`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ParamVectorDoc", into = "ParamVectorDoc")]
pub struct ParamVector {
    n: usize,
    beta: Vec<QiScalar>,
    gamma: QiScalar,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamVectorDoc {
    n: usize,
    beta: Vec<QiScalar>,
    gamma: QiScalar,
}

impl TryFrom<ParamVectorDoc> for ParamVector {
    type Error = Error;

    fn try_from(doc: ParamVectorDoc) -> Result<Self> {
        ParamVector::new(doc.n, doc.beta, doc.gamma)
    }
}

impl From<ParamVector> for ParamVectorDoc {
    fn from(p: ParamVector) -> Self {
        ParamVectorDoc { n: p.n, beta: p.beta, gamma: p.gamma }
    }
}

impl ParamVector {
    pub fn new(n: usize, beta: Vec<QiScalar>, gamma: QiScalar) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParams(format!("n must be at least 3, got {n}")));
        }
        if beta.len() != n - 2 {
            return Err(Error::InvalidParams(format!(
                "n = {n} needs {} beta entries, got {}",
                n - 2,
                beta.len()
            )));
        }
        Ok(ParamVector { n, beta, gamma })
    }

    /// Build from the flat tuple `(β_3, …, β_n, γ)`; `n` is inferred.
    pub fn from_tuple(values: Vec<QiScalar>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidParams("need at least (β_3, γ)".into()));
        }
        let mut beta = values;
        let gamma = beta.pop().unwrap();
        let n = beta.len() + 2;
        ParamVector::new(n, beta, gamma)
    }

    /// Convenience constructor from small integers, `(β_3, …, β_n, γ)`.
    pub fn from_ints(values: &[i64]) -> Result<Self> {
        ParamVector::from_tuple(values.iter().map(|&v| QiScalar::from_int(v)).collect())
    }

    pub fn zero(n: usize) -> Result<Self> {
        ParamVector::new(n, vec![QiScalar::zero(); n.saturating_sub(2)], QiScalar::zero())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of the algebra, `n + 1`.
    pub fn dim(&self) -> usize {
        self.n + 1
    }

    pub fn betas(&self) -> &[QiScalar] {
        &self.beta
    }

    pub fn gamma(&self) -> &QiScalar {
        &self.gamma
    }

    /// `β_t` for `3 ≤ t ≤ n`. Panics outside that range.
    pub fn beta(&self, t: usize) -> &QiScalar {
        assert!((3..=self.n).contains(&t), "beta index {t} outside 3..={}", self.n);
        &self.beta[t - 3]
    }

    /// Slot `t` of the parameter vector: `β_t` for `t ≤ n`, `γ` for `t = n + 1`.
    pub fn slot(&self, t: usize) -> &QiScalar {
        if t == self.n + 1 {
            &self.gamma
        } else {
            self.beta(t)
        }
    }

    /// `(β_3, …, β_n, γ)` as one vector.
    pub fn to_tuple(&self) -> Vec<QiScalar> {
        let mut v = self.beta.clone();
        v.push(self.gamma.clone());
        v
    }

    /// Replace slot `t` (`3 ≤ t ≤ n + 1`).
    pub fn with_slot(&self, t: usize, value: QiScalar) -> Self {
        let mut out = self.clone();
        if t == self.n + 1 {
            out.gamma = value;
        } else {
            out.beta[t - 3] = value;
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("parameter vectors always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

impl fmt::Display for ParamVector {
    /// `L(β_3,…,β_n,γ)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.to_tuple().iter().map(ToString::to_string).collect();
        write!(f, "L({})", parts.join(","))
    }
}

impl fmt::Debug for ParamVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
