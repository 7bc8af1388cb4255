use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{QiScalar, Ring};
use crate::error::{Error, Result};

/// Exponent vector of a monomial, one entry per variable.
pub type Exponents = Vec<u32>;

/// Sparse multivariate polynomial with Gaussian-rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    var_count: usize,
    terms: BTreeMap<Exponents, QiScalar>,
}

/// Graded lexicographic order used for printing: lower total degree first,
/// then lexicographically larger exponent vectors first.
pub(crate) fn grlex(a: &Exponents, b: &Exponents) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| b.cmp(a))
}

impl MultiPoly {
    pub fn zero(var_count: usize) -> Self {
        MultiPoly { var_count, terms: BTreeMap::new() }
    }

    pub fn constant(var_count: usize, c: QiScalar) -> Self {
        let mut p = MultiPoly::zero(var_count);
        p.add_term(vec![0; var_count], c);
        p
    }

    /// The polynomial `x_idx`. Panics if `idx >= var_count`.
    pub fn var(var_count: usize, idx: usize) -> Self {
        assert!(idx < var_count, "variable {idx} out of range for {var_count} variables");
        let mut e = vec![0; var_count];
        e[idx] = 1;
        MultiPoly::monomial(e, QiScalar::one())
    }

    pub fn monomial(exps: Exponents, c: QiScalar) -> Self {
        let mut p = MultiPoly::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn from_terms(var_count: usize, terms: impl IntoIterator<Item = (Exponents, QiScalar)>) -> Result<Self> {
        let mut p = MultiPoly::zero(var_count);
        for (e, c) in terms {
            if e.len() != var_count {
                return Err(Error::LengthMismatch { expected: var_count, got: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the given monomial (zero when absent).
    pub fn coeff(&self, exps: &[u32]) -> QiScalar {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Terms in graded lexicographic order.
    pub fn terms(&self) -> Vec<(&Exponents, &QiScalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex(a.0, b.0));
        v
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    /// The constant coefficient, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<QiScalar> {
        match self.terms.len() {
            0 => Some(QiScalar::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, exps: Exponents, c: QiScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, rhs: &MultiPoly) -> Result<()> {
        if self.var_count != rhs.var_count {
            return Err(Error::VarCountMismatch { left: self.var_count, right: rhs.var_count });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn mul(&self, rhs: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(rhs)?;
        let mut out = MultiPoly::zero(self.var_count);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &QiScalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.var_count);
        }
        MultiPoly {
            var_count: self.var_count,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(&QiScalar::from_int(-1))
    }

    pub fn pow(&self, mut k: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::constant(self.var_count, QiScalar::one());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same variable count");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same variable count");
            }
        }
        acc
    }

    /// Exact value at the given point.
    pub fn eval(&self, assignment: &[QiScalar]) -> Result<QiScalar> {
        if assignment.len() != self.var_count {
            return Err(Error::LengthMismatch { expected: self.var_count, got: assignment.len() });
        }
        let mut acc = QiScalar::zero();
        let powers = power_tables(self, assignment, |v, k| v.pow(k));
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (var, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= &powers[var][k as usize];
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Value in any ring over Q(i): substitutes ring elements for the
    /// variables. Needs at least one variable so the ring context is known.
    pub fn eval_in<R: Ring>(&self, assignment: &[R]) -> Result<R> {
        if assignment.len() != self.var_count {
            return Err(Error::LengthMismatch { expected: self.var_count, got: assignment.len() });
        }
        let Some(first) = assignment.first() else {
            return Err(Error::LengthMismatch { expected: 1, got: 0 });
        };
        let powers = power_tables(self, assignment, |v, k| v.ring_pow(k));
        let mut acc = first.zero_like();
        for (e, c) in &self.terms {
            let mut t = first.constant_like(c);
            for (var, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.ring_mul(&powers[var][k as usize]);
                }
            }
            acc = acc.ring_add(&t);
        }
        Ok(acc)
    }

    /// Render with the given variable names, in graded lexicographic order.
    pub fn to_text(&self, names: &[String]) -> String {
        render(self, names, TextStyle::Plain)
    }

    /// LaTeX rendering (`z_{3}^{2}` style) for visual comparison.
    pub fn to_latex(&self, names: &[String]) -> String {
        render(self, names, TextStyle::Latex)
    }
}

fn power_tables<R: Clone>(p: &MultiPoly, assignment: &[R], pow: impl Fn(&R, u32) -> R) -> Vec<Vec<R>> {
    (0..p.var_count)
        .map(|var| {
            let max = p.degree_in(var);
            // Index 0 is never read for a nonzero exponent; fill it with the base.
            (0..=max).map(|k| if k == 0 { assignment[var].clone() } else { pow(&assignment[var], k) }).collect()
        })
        .collect()
}

#[derive(Clone, Copy)]
enum TextStyle {
    Plain,
    Latex,
}

fn render(p: &MultiPoly, names: &[String], style: TextStyle) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (e, c)) in p.terms().into_iter().enumerate() {
        let is_const = e.iter().all(|&k| k == 0);
        let negative_real = c.is_real() && c.re().is_negative();
        let mag = if negative_real { -c } else { c.clone() };
        if idx == 0 {
            if negative_real {
                out.push('-');
            }
        } else {
            out.push_str(if negative_real { " - " } else { " + " });
        }
        let coeff_text = if mag.is_real() { mag.to_string() } else { format!("({mag})") };
        let mut factors: Vec<String> = Vec::new();
        if is_const || !mag.is_one() {
            factors.push(coeff_text);
        }
        for (var, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let name = names.get(var).cloned().unwrap_or_else(|| format!("x{var}"));
            factors.push(match (style, k) {
                (_, 1) => match style {
                    TextStyle::Plain => name,
                    TextStyle::Latex => latex_name(&name),
                },
                (TextStyle::Plain, _) => format!("{name}^{k}"),
                (TextStyle::Latex, _) => format!("{}^{{{k}}}", latex_name(&name)),
            });
        }
        let sep = match style {
            TextStyle::Plain => "*",
            TextStyle::Latex => " ",
        };
        out.push_str(&factors.join(sep));
    }
    out
}

fn latex_name(name: &str) -> String {
    let split = name.find(|c: char| c.is_ascii_digit());
    match split {
        Some(at) => format!("{}_{{{}}}", &name[..at], &name[at..]),
        None => name.to_string(),
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&[]))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({self})", self.var_count)
    }
}

impl Ring for MultiPoly {
    fn constant_like(&self, c: &QiScalar) -> Self {
        MultiPoly::constant(self.var_count, c.clone())
    }

    fn ring_add(&self, rhs: &Self) -> Self {
        self.add(rhs).expect("ring elements share a variable count")
    }

    fn ring_mul(&self, rhs: &Self) -> Self {
        self.mul(rhs).expect("ring elements share a variable count")
    }

    fn ring_scale(&self, c: &QiScalar) -> Self {
        self.scale(c)
    }

    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
}
