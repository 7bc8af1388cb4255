use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock, OnceLock};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{MultiPoly, QiScalar};

/// The transition polynomials `ψ_3, …, ψ_{n+1}` in the variables
/// `y, z_3, …, z_{n+1}` (variable 0 is `y`, variable `j ≥ 1` is `z_{j+2}`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiSystem {
    n: usize,
    polys: Vec<MultiPoly>,
}

/// Variable index of `z_t`.
pub fn z_var(t: usize) -> usize {
    t - 2
}

fn binomial(n: usize, k: usize) -> QiScalar {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    QiScalar::from_real(acc.into())
}

/// Generates `ψ_3, …, ψ_n` by
///
/// ```text
/// ψ_t = z_t − Σ_{k=3}^{t−1} ( Σ_{j=1}^{k−1} C(k−1, j) · y^j · S_j(t−k) ) · ψ_k
/// ```
///
/// where `S_j(m)` is the j-fold nested sum of `z`-products: the sum over
/// ordered tuples `(s_1, …, s_j)` with `s_i ≥ 3` and `Σ (s_i − 2) = m` of
/// `z_{s_1} ⋯ z_{s_j}`. That is the coefficient of `X^m` in
/// `(Σ_s z_s X^{s−2})^j`, which is built here by repeated truncated
/// convolution. `ψ_{n+1} = z_{n+1}`.
pub fn psi_generate(n: usize) -> Result<PsiSystem> {
    if n < 3 {
        return Err(Error::InvalidParams(format!("psi needs n >= 3, got {n}")));
    }
    let vars = n;
    let z = |t: usize| MultiPoly::var(vars, z_var(t));
    let y = MultiPoly::var(vars, 0);
    let max_m = n.saturating_sub(3);
    let max_j = n - 2;

    // sums[j][m] = S_j(m); S_1(m) = z_{m+2}.
    let mut sums: Vec<Vec<MultiPoly>> = vec![vec![MultiPoly::zero(vars); max_m + 1]; max_j + 1];
    for m in 1..=max_m {
        sums[1][m] = z(m + 2);
    }
    for j in 2..=max_j {
        for m in j..=max_m {
            let mut acc = MultiPoly::zero(vars);
            for first in 1..=(m - (j - 1)) {
                let prod = sums[1][first].mul(&sums[j - 1][m - first])?;
                acc = acc.add(&prod)?;
            }
            sums[j][m] = acc;
        }
    }

    let y_pows: Vec<MultiPoly> = (0..=max_j as u32).map(|j| y.pow(j)).collect();
    let mut polys: Vec<MultiPoly> = Vec::with_capacity(n - 1);
    for t in 3..=n {
        let mut psi = z(t);
        for k in 3..t {
            let m = t - k;
            let mut weight = MultiPoly::zero(vars);
            for j in 1..k.min(m + 1) {
                let s = &sums[j][m];
                if s.is_zero() {
                    continue;
                }
                let term = y_pows[j].mul(s)?.scale(&binomial(k - 1, j));
                weight = weight.add(&term)?;
            }
            if !weight.is_zero() {
                psi = psi.sub(&weight.mul(&polys[k - 3])?)?;
            }
        }
        polys.push(psi);
    }
    polys.push(z(n + 1));
    Ok(PsiSystem { n, polys })
}

/// Shared, lazily generated `PsiSystem` for `n`.
pub fn psi_system(n: usize) -> Result<Arc<PsiSystem>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<PsiSystem>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(s) = cache.read().expect("psi cache poisoned").get(&n) {
        return Ok(s.clone());
    }
    let sys = Arc::new(psi_generate(n)?);
    cache.write().expect("psi cache poisoned").entry(n).or_insert_with(|| sys.clone());
    Ok(sys)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PsiDoc {
    n: usize,
    psi: BTreeMap<usize, Vec<TermDoc>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    coeff: QiScalar,
    y: u32,
    z: BTreeMap<usize, u32>,
}

impl PsiSystem {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `ψ_t` for `3 ≤ t ≤ n + 1`.
    pub fn psi(&self, t: usize) -> &MultiPoly {
        assert!((3..=self.n + 1).contains(&t), "psi index {t} outside 3..={}", self.n + 1);
        &self.polys[t - 3]
    }

    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    /// `["y", "z3", …, "z{n+1}"]`.
    pub fn var_names(&self) -> Vec<String> {
        std::iter::once("y".to_string()).chain((3..=self.n + 1).map(|t| format!("z{t}"))).collect()
    }

    /// One line per polynomial: `psi_t = …`.
    pub fn to_text(&self) -> String {
        let names = self.var_names();
        (3..=self.n + 1).map(|t| format!("psi_{t} = {}\n", self.psi(t).to_text(&names))).collect()
    }

    pub fn to_latex(&self) -> String {
        let names = self.var_names();
        (3..=self.n + 1)
            .map(|t| format!("\\psi_{{{t}}} = {}\n", self.psi(t).to_latex(&names)))
            .collect()
    }

    pub fn to_json(&self) -> String {
        let doc = PsiDoc {
            n: self.n,
            psi: (3..=self.n + 1)
                .map(|t| {
                    let terms = self
                        .psi(t)
                        .terms()
                        .into_iter()
                        .map(|(e, c)| TermDoc {
                            coeff: c.clone(),
                            y: e[0],
                            z: e.iter().enumerate().skip(1).filter(|(_, &k)| k > 0).map(|(v, &k)| (v + 2, k)).collect(),
                        })
                        .collect();
                    (t, terms)
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("psi systems always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: PsiDoc = serde_json::from_str(s)?;
        let n = doc.n;
        if n < 3 || doc.psi.keys().copied().ne(3..=n + 1) {
            return Err(Error::Format(format!("psi document for n = {n} must list keys 3..={}", n + 1)));
        }
        let polys = doc
            .psi
            .into_values()
            .map(|terms| {
                let mut out = Vec::with_capacity(terms.len());
                for term in terms {
                    let mut e = vec![0; n];
                    e[0] = term.y;
                    for (t, k) in term.z {
                        if !(3..=n + 1).contains(&t) {
                            return Err(Error::Format(format!("variable z{t} outside z3..z{}", n + 1)));
                        }
                        e[z_var(t)] = k;
                    }
                    out.push((e, term.coeff));
                }
                MultiPoly::from_terms(n, out)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PsiSystem { n, polys })
    }
}
