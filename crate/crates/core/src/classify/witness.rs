use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::ParamVector;
use crate::error::{Error, Result};
use crate::exactnum::{QiScalar, RadicalElem, Ring};
use crate::transform::{rho_apply, rho_apply_in, TransformParams};

/// A base change `(A, B, D)` certifying `rho_apply(A, B, D; source) = target`.
///
/// `Symbolic` witnesses live in `Q(i)[r]/(r^k − c)`: `A`, `B`, `D` are
/// polynomials in an auxiliary root `r` of `r^k = c`, and the identity holds
/// for every choice of that root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Concrete(TransformParams),
    Symbolic(SymbolicWitness),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolicWitness {
    /// `k` in `r^k = c`.
    pub k: u32,
    /// `c` in `r^k = c`.
    pub c: QiScalar,
    /// Coefficients of `1, r, …, r^{k−1}`.
    #[serde(rename = "A")]
    pub a: Vec<QiScalar>,
    #[serde(rename = "B")]
    pub b: Vec<QiScalar>,
    #[serde(rename = "D")]
    pub d: Vec<QiScalar>,
}

impl SymbolicWitness {
    fn elem(&self, coeffs: &[QiScalar]) -> Result<RadicalElem> {
        if coeffs.len() != self.k as usize {
            return Err(Error::LengthMismatch { expected: self.k as usize, got: coeffs.len() });
        }
        RadicalElem::new(self.k, self.c.clone(), coeffs.to_vec())
    }

    /// `(A, B, D)` as elements of the extension.
    pub fn elements(&self) -> Result<(RadicalElem, RadicalElem, RadicalElem)> {
        Ok((self.elem(&self.a)?, self.elem(&self.b)?, self.elem(&self.d)?))
    }
}

impl Witness {
    pub fn identity() -> Self {
        Witness::Concrete(TransformParams::identity())
    }

    pub fn concrete(&self) -> Option<&TransformParams> {
        match self {
            Witness::Concrete(tp) => Some(tp),
            Witness::Symbolic(_) => None,
        }
    }

    /// Exact check that the witness maps `source` to `target`. Symbolic
    /// witnesses are checked as an identity in `Q(i)[r]/(r^k − c)`; `A`
    /// must then be a monomial `c·r^m` so that `1/A` stays in the ring.
    pub fn verify(&self, source: &ParamVector, target: &ParamVector) -> bool {
        if source.n() != target.n() {
            return false;
        }
        match self {
            Witness::Concrete(tp) => rho_apply(tp, source) == *target,
            Witness::Symbolic(sw) => {
                let Ok((a, b, d)) = sw.elements() else { return false };
                let Ok(x) = a.inverse_monomial() else { return false };
                let lift = |v: &QiScalar| a.constant_like(v);
                if d.ring_is_zero() {
                    return false;
                }
                let y = b.ring_mul(&x);
                let u = d.ring_mul(&x);
                let slots: Vec<RadicalElem> = source.to_tuple().iter().map(lift).collect();
                match rho_apply_in(source.n(), &x, &y, &u, &slots) {
                    Ok(out) => out.iter().zip(target.to_tuple().iter()).all(|(o, t)| *o == lift(t)),
                    Err(_) => false,
                }
            }
        }
    }
}

/// One step of the case analysis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceStep {
    /// The condition on the source that selects this branch.
    pub case: String,
    /// What the branch concludes about the unknowns.
    pub conclusion: String,
}

/// The exact reason a branch has no solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Contradiction {
    /// The equation forces `lhs = rhs` but the exact values differ.
    Unequal { equation: String, lhs: QiScalar, rhs: QiScalar },
    /// The equation forces a quantity that must be nonzero (`a = x·u`, `x`)
    /// to vanish.
    ZeroUnit { quantity: String, equation: String },
}

impl Contradiction {
    /// Whether the recorded values really conflict.
    pub fn is_exact(&self) -> bool {
        match self {
            Contradiction::Unequal { lhs, rhs, .. } => lhs != rhs,
            Contradiction::ZeroUnit { .. } => true,
        }
    }
}

/// Result of [`witness_search`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found { witness: Witness, trace: Vec<TraceStep> },
    Unsolvable { trace: Vec<TraceStep>, contradiction: Contradiction },
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            SearchOutcome::Found { witness, .. } => Some(witness),
            SearchOutcome::Unsolvable { .. } => None,
        }
    }

    pub fn trace(&self) -> &[TraceStep] {
        match self {
            SearchOutcome::Found { trace, .. } | SearchOutcome::Unsolvable { trace, .. } => trace,
        }
    }
}

/// An unknown that is either in `Q(i)` or a polynomial in a fresh root.
#[derive(Clone, Debug)]
enum Val {
    Q(QiScalar),
    R(RadicalElem),
}

impl Val {
    fn lift(&self, like: &RadicalElem) -> RadicalElem {
        match self {
            Val::Q(v) => like.constant_like(v),
            Val::R(r) => r.clone(),
        }
    }
}

struct Solver<'a> {
    p: &'a ParamVector,
    q: &'a ParamVector,
    trace: Vec<TraceStep>,
}

type Branch<T> = std::result::Result<T, Contradiction>;

fn nz(v: &QiScalar) -> bool {
    !v.is_zero()
}

fn div(a: &QiScalar, b: &QiScalar) -> QiScalar {
    a * &b.inv().expect("branch guards exclude zero divisors")
}

fn k(v: i64) -> QiScalar {
    QiScalar::from_int(v)
}

impl<'a> Solver<'a> {
    fn step(&mut self, case: impl Into<String>, conclusion: impl Into<String>) {
        self.trace.push(TraceStep { case: case.into(), conclusion: conclusion.into() });
    }

    fn require(&mut self, equation: &str, lhs: QiScalar, rhs: QiScalar) -> Branch<()> {
        if lhs == rhs {
            self.step(format!("check {equation}"), format!("holds: {lhs} = {rhs}"));
            Ok(())
        } else {
            Err(Contradiction::Unequal { equation: equation.to_string(), lhs, rhs })
        }
    }

    fn unit(&mut self, quantity: &str, equation: &str, value: QiScalar) -> Branch<QiScalar> {
        if value.is_zero() {
            return Err(Contradiction::ZeroUnit { quantity: quantity.to_string(), equation: equation.to_string() });
        }
        self.step(format!("solve {equation}"), format!("{quantity} = {value}"));
        Ok(value)
    }

    /// A square root of `c ≠ 0`, in `Q(i)` when one exists.
    fn sqrt(&mut self, name: &str, c: &QiScalar) -> Val {
        match c.sqrt_exact() {
            Some(r) => {
                self.step(format!("{name}^2 = {c}"), format!("{name} = {r}"));
                Val::Q(r)
            }
            None => {
                self.step(format!("{name}^2 = {c}"), format!("{name} = r with r^2 = {c} (no root in Q(i))"));
                Val::R(RadicalElem::root(2, c.clone()).expect("c is nonzero"))
            }
        }
    }

    /// Solve for `(x, y, a)`, `a = x·u`, with `n = 4`:
    ///
    /// ```text
    /// β′_3 = a·β_3
    /// β′_4 = x·a·(β_4 + y·(γ − 2β_3²))
    /// γ′   = a²·γ
    /// ```
    fn solve4(&mut self) -> Branch<(Val, Val, Val)> {
        let (p3, p4, pg) = (self.p.beta(3).clone(), self.p.beta(4).clone(), self.p.gamma().clone());
        let (q3, q4, qg) = (self.q.beta(3).clone(), self.q.beta(4).clone(), self.q.gamma().clone());
        if nz(&p3) {
            self.step(format!("beta3 = {p3} != 0"), "a = beta3'/beta3");
            let a = self.unit("a", "beta3' = a*beta3", div(&q3, &p3))?;
            self.require("gamma' = a^2*gamma", &a.pow(2) * &pg, qg)?;
            let g = &pg - &(&k(2) * &p3.pow(2));
            if nz(&g) {
                let y = div(&(&div(&q4, &a) - &p4), &g);
                self.step(format!("gamma - 2*beta3^2 = {g} != 0"), format!("x = 1, y = {y}"));
                return Ok((Val::Q(QiScalar::one()), Val::Q(y), Val::Q(a)));
            }
            self.step("gamma = 2*beta3^2", "beta4' = x*a*beta4, y free (take 0)");
            if nz(&p4) {
                let x = self.unit("x", "beta4' = x*a*beta4", div(&q4, &(&a * &p4)))?;
                return Ok((Val::Q(x), Val::Q(QiScalar::zero()), Val::Q(a)));
            }
            self.require("beta4' = x*a*beta4", q4, QiScalar::zero())?;
            return Ok((Val::Q(QiScalar::one()), Val::Q(QiScalar::zero()), Val::Q(a)));
        }
        self.step("beta3 = 0", "beta3' = 0 for every a");
        self.require("beta3' = a*beta3", q3, QiScalar::zero())?;
        if nz(&pg) {
            let c = self.unit("a^2", "gamma' = a^2*gamma", div(&qg, &pg))?;
            let a = self.sqrt("a", &c);
            // β′_4 = a·(β_4 + yγ) with x = 1, so y = (β′_4/a − β_4)/γ.
            let y = match &a {
                Val::Q(av) => Val::Q(div(&(&div(&q4, av) - &p4), &pg)),
                Val::R(r) => {
                    let inv_a = r.inverse_monomial().expect("root is a monomial");
                    let t = inv_a.ring_scale(&q4).ring_sub(&r.constant_like(&p4));
                    Val::R(t.ring_scale(&pg.inv().expect("gamma is nonzero")))
                }
            };
            self.step(format!("gamma = {pg} != 0"), "x = 1, y = (beta4'/a - beta4)/gamma");
            return Ok((Val::Q(QiScalar::one()), y, a));
        }
        self.step("gamma = 0", "gamma' = 0 for every a");
        self.require("gamma' = a^2*gamma", qg, QiScalar::zero())?;
        if nz(&p4) {
            let xa = self.unit("x*a", "beta4' = x*a*beta4", div(&q4, &p4))?;
            return Ok((Val::Q(xa), Val::Q(QiScalar::zero()), Val::Q(QiScalar::one())));
        }
        self.require("beta4' = x*a*beta4", q4, QiScalar::zero())?;
        Ok((Val::Q(QiScalar::one()), Val::Q(QiScalar::zero()), Val::Q(QiScalar::one())))
    }

    /// Solve for `(x, y, a)`, `a = x·u`, with `n = 5`:
    ///
    /// ```text
    /// β′_3 = a·β_3
    /// β′_4 = x·a·(β_4 − 2y·β_3²)
    /// β′_5 = x²·a·(β_5 + y·(γ − 5β_3β_4) + 5y²·β_3³)
    /// γ′   = x·a²·γ
    /// ```
    fn solve5(&mut self) -> Branch<(Val, Val, Val)> {
        let (p3, p4, p5, pg) =
            (self.p.beta(3).clone(), self.p.beta(4).clone(), self.p.beta(5).clone(), self.p.gamma().clone());
        let (q3, q4, q5, qg) =
            (self.q.beta(3).clone(), self.q.beta(4).clone(), self.q.beta(5).clone(), self.q.gamma().clone());
        let eq5 = |x: &QiScalar, y: &QiScalar, a: &QiScalar| -> QiScalar {
            let inner = &(&p5 + &(y * &(&pg - &(&k(5) * &(&p3 * &p4))))) + &(&k(5) * &(&y.pow(2) * &p3.pow(3)));
            &(&x.pow(2) * a) * &inner
        };
        if nz(&p3) {
            self.step(format!("beta3 = {p3} != 0"), "a = beta3'/beta3, y = (beta4 - beta4'/(x*a))/(2*beta3^2)");
            let a = self.unit("a", "beta3' = a*beta3", div(&q3, &p3))?;
            let two_b3sq = &k(2) * &p3.pow(2);
            if nz(&pg) {
                let x = self.unit("x", "gamma' = x*a^2*gamma", div(&qg, &(&a.pow(2) * &pg)))?;
                let y = div(&(&p4 - &div(&q4, &(&x * &a))), &two_b3sq);
                self.step("beta4' equation", format!("y = {y}"));
                self.require("beta5' = x^2*a*(beta5 + y*(gamma - 5*beta3*beta4) + 5*y^2*beta3^3)", eq5(&x, &y, &a), q5)?;
                return Ok((Val::Q(x), Val::Q(y), Val::Q(a)));
            }
            self.step("gamma = 0", "gamma' = 0 for every x, a");
            self.require("gamma' = x*a^2*gamma", qg, QiScalar::zero())?;
            // Substituting y(x) leaves a·c2·x² + a·c0 = β′_5 with no linear term.
            let c2 = div(&(&(&k(4) * &(&p3 * &p5)) - &(&k(5) * &p4.pow(2))), &(&k(4) * &p3));
            let c0 = div(&(&k(5) * &q4.pow(2)), &(&(&k(4) * &p3) * &a.pow(2)));
            self.step(
                "substitute y into the beta5' equation",
                format!("a*c2*x^2 + a*c0 = beta5' with c2 = (4*beta3*beta5 - 5*beta4^2)/(4*beta3) = {c2}, c0 = {c0}"),
            );
            let x = if nz(&c2) {
                let xsq = self.unit("x^2", "a*c2*x^2 + a*c0 = beta5'", div(&(&q5 - &(&a * &c0)), &(&a * &c2)))?;
                self.sqrt("x", &xsq)
            } else {
                self.require("a*c0 = beta5'", &a * &c0, q5)?;
                Val::Q(QiScalar::one())
            };
            let y = match &x {
                Val::Q(xv) => Val::Q(div(&(&p4 - &div(&q4, &(xv * &a))), &two_b3sq)),
                Val::R(r) => {
                    let inv_x = r.inverse_monomial().expect("root is a monomial");
                    let t = r.constant_like(&p4).ring_sub(&inv_x.ring_scale(&div(&q4, &a)));
                    Val::R(t.ring_scale(&two_b3sq.inv().expect("beta3 is nonzero")))
                }
            };
            return Ok((x, y, Val::Q(a)));
        }
        self.step("beta3 = 0", "beta3' = 0 for every a");
        self.require("beta3' = a*beta3", q3, QiScalar::zero())?;
        if nz(&p4) {
            let m = self.unit("x*a", "beta4' = x*a*beta4", div(&q4, &p4))?;
            if nz(&pg) {
                let a = self.unit("a", "gamma' = x*a^2*gamma", div(&qg, &(&m * &pg)))?;
                let x = div(&m, &a);
                let y = div(&(&div(&q5, &(&x.pow(2) * &a)) - &p5), &pg);
                self.step(format!("gamma = {pg} != 0"), format!("x = {x}, y = {y} from beta5' = x^2*a*(beta5 + y*gamma)"));
                return Ok((Val::Q(x), Val::Q(y), Val::Q(a)));
            }
            self.step("gamma = 0", "beta5' = x*(x*a)*beta5");
            self.require("gamma' = x*a^2*gamma", qg, QiScalar::zero())?;
            if nz(&p5) {
                let x = self.unit("x", "beta5' = x^2*a*beta5", div(&q5, &(&m * &p5)))?;
                let a = div(&m, &x);
                return Ok((Val::Q(x), Val::Q(QiScalar::zero()), Val::Q(a)));
            }
            self.require("beta5' = x^2*a*beta5", q5, QiScalar::zero())?;
            return Ok((Val::Q(QiScalar::one()), Val::Q(QiScalar::zero()), Val::Q(m)));
        }
        self.step("beta4 = 0", "beta4' = 0 for every x, a");
        self.require("beta4' = x*a*beta4", q4, QiScalar::zero())?;
        if nz(&pg) {
            let x = self.unit("x", "gamma' = x*a^2*gamma with a = 1", div(&qg, &pg))?;
            let y = div(&(&div(&q5, &x.pow(2)) - &p5), &pg);
            self.step(format!("gamma = {pg} != 0"), format!("a = 1, y = {y} from beta5' = x^2*(beta5 + y*gamma)"));
            return Ok((Val::Q(x), Val::Q(y), Val::Q(QiScalar::one())));
        }
        self.step("gamma = 0", "gamma' = 0 for every x, a");
        self.require("gamma' = x*a^2*gamma", qg, QiScalar::zero())?;
        if nz(&p5) {
            let a = self.unit("a", "beta5' = x^2*a*beta5 with x = 1", div(&q5, &p5))?;
            return Ok((Val::Q(QiScalar::one()), Val::Q(QiScalar::zero()), Val::Q(a)));
        }
        self.require("beta5' = x^2*a*beta5", q5, QiScalar::zero())?;
        Ok((Val::Q(QiScalar::one()), Val::Q(QiScalar::zero()), Val::Q(QiScalar::one())))
    }
}

/// `(A, B, D) = (1/x, y/x, a/x²)`.
fn assemble(x: Val, y: Val, a: Val) -> Witness {
    let field = [&x, &y, &a].into_iter().find_map(|v| match v {
        Val::R(r) => Some(r.clone()),
        Val::Q(_) => None,
    });
    match field {
        None => {
            let (Val::Q(x), Val::Q(y), Val::Q(a)) = (x, y, a) else { unreachable!() };
            let xi = x.inv().expect("x is nonzero");
            let tp = TransformParams::new(xi.clone(), &y * &xi, &a * &xi.pow(2)).expect("x and a are nonzero");
            Witness::Concrete(tp)
        }
        Some(like) => {
            let (x, y, a) = (x.lift(&like), y.lift(&like), a.lift(&like));
            let ai = x.inverse_monomial().expect("x is a monomial");
            let bb = y.ring_mul(&ai);
            let dd = a.ring_mul(&ai.ring_pow(2));
            if let (Some(av), Some(bv), Some(dv)) = (ai.as_scalar(), bb.as_scalar(), dd.as_scalar()) {
                return Witness::Concrete(TransformParams::new(av, bv, dv).expect("A and D are nonzero"));
            }
            Witness::Symbolic(SymbolicWitness {
                k: like.degree(),
                c: like.radicand().clone(),
                a: ai.coeffs().to_vec(),
                b: bb.coeffs().to_vec(),
                d: dd.coeffs().to_vec(),
            })
        }
    }
}

/// Decide whether some adapted base change maps `source` to `target`
/// (`n ∈ {4, 5}`), by exhaustive case analysis on the vanishing pattern of
/// the source. Each branch either constructs a witness or ends in an exact
/// contradiction, so `Unsolvable` proves non-isomorphism.
pub fn witness_search(source: &ParamVector, target: &ParamVector) -> Result<SearchOutcome> {
    if source.n() != target.n() {
        return Err(Error::DimensionMismatch(format!("dim {} vs dim {}", source.dim(), target.dim())));
    }
    let mut solver = Solver { p: source, q: target, trace: Vec::new() };
    let solved = match source.n() {
        4 => solver.solve4(),
        5 => solver.solve5(),
        n => return Err(Error::UnsupportedDimension { op: "witness_search", dim: n + 1 }),
    };
    let trace = solver.trace;
    match solved {
        Ok((x, y, a)) => {
            let witness = assemble(x, y, a);
            if !witness.verify(source, target) {
                return Err(Error::InvalidTransform(format!("constructed witness fails for {source} -> {target}")));
            }
            Ok(SearchOutcome::Found { witness, trace })
        }
        Err(contradiction) => Ok(SearchOutcome::Unsolvable { trace, contradiction }),
    }
}

/// Re-run the search and confirm it reproduces `outcome`, with every
/// witness re-verified by `rho_apply` and every contradiction exact.
pub fn reverify(source: &ParamVector, target: &ParamVector, outcome: &SearchOutcome) -> bool {
    let ok = match outcome {
        SearchOutcome::Found { witness, .. } => witness.verify(source, target),
        SearchOutcome::Unsolvable { contradiction, .. } => contradiction.is_exact(),
    };
    ok && witness_search(source, target).map(|again| again == *outcome).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &str) -> QiScalar {
        v.parse().unwrap()
    }

    fn pv(values: &[&str]) -> ParamVector {
        ParamVector::from_tuple(values.iter().map(|v| s(v)).collect()).unwrap()
    }

    fn found(p: &ParamVector, q: &ParamVector) -> Witness {
        match witness_search(p, q).unwrap() {
            SearchOutcome::Found { witness, .. } => witness,
            other => panic!("expected a witness for {p} -> {q}, got {other:?}"),
        }
    }

    #[test]
    fn dim5_witness_example() {
        let w = found(&pv(&["2", "3", "1"]), &pv(&["1", "0", "1/4"]));
        assert_eq!(w, Witness::Concrete(TransformParams::new(s("1"), s("3/7"), s("1/2")).unwrap()));
    }

    #[test]
    fn dim5_square_root_witness() {
        // a² = γ′/γ = 1/7 has no root in Q(i).
        let p = pv(&["0", "0", "7"]);
        let q = pv(&["0", "0", "1"]);
        let w = found(&p, &q);
        let Witness::Symbolic(sw) = &w else { panic!("expected a symbolic witness") };
        assert_eq!((sw.k, sw.c.clone()), (2, s("1/7")));
        assert!(w.verify(&p, &q));
        assert!(!w.verify(&p, &pv(&["0", "0", "2"])));
        // γ = 4 has the rational root 1/2.
        assert!(matches!(found(&pv(&["0", "0", "4"]), &q), Witness::Concrete(_)));
    }

    #[test]
    fn dim5_separations() {
        let out = witness_search(&pv(&["1", "0", "1"]), &pv(&["1", "0", "2"])).unwrap();
        let SearchOutcome::Unsolvable { contradiction, .. } = &out else { panic!("{out:?}") };
        assert_eq!(
            contradiction,
            &Contradiction::Unequal { equation: "gamma' = a^2*gamma".into(), lhs: s("1"), rhs: s("2") }
        );
        let out = witness_search(&pv(&["1", "0", "2"]), &pv(&["1", "1", "2"])).unwrap();
        assert!(matches!(out, SearchOutcome::Unsolvable { .. }));
        assert!(reverify(&pv(&["1", "0", "2"]), &pv(&["1", "1", "2"]), &out));
    }

    #[test]
    fn dim6_candidate_overlap() {
        let p = pv(&["1", "0", "2/3", "1"]);
        let q = pv(&["1", "1", "17/12", "1"]);
        let w = found(&p, &q);
        assert_eq!(w, Witness::Concrete(TransformParams::new(s("1"), s("-1/2"), s("1")).unwrap()));
    }

    #[test]
    fn dim6_u5_subcase() {
        let out = witness_search(&pv(&["1", "0", "0", "0"]), &pv(&["1", "1", "0", "0"])).unwrap();
        let SearchOutcome::Unsolvable { contradiction, .. } = &out else { panic!("{out:?}") };
        assert!(contradiction.is_exact());
        let w = found(&pv(&["1", "0", "1", "0"]), &pv(&["1", "1", "0", "0"]));
        assert!(matches!(w, Witness::Symbolic(_)));
    }

    #[test]
    fn round_trips_random_images() {
        let tps = [
            TransformParams::new(s("2"), s("-1/3"), s("5")).unwrap(),
            TransformParams::new(s("1/2+1*i"), s("3"), s("-2")).unwrap(),
        ];
        let sources = [
            pv(&["1", "2", "3"]),
            pv(&["0", "2", "3"]),
            pv(&["0", "0", "3"]),
            pv(&["3", "-1", "18"]),
            pv(&["1", "2", "3", "4"]),
            pv(&["1", "2", "3", "0"]),
            pv(&["0", "2", "3", "4"]),
            pv(&["0", "0", "3", "0"]),
            pv(&["0", "0", "0", "5"]),
        ];
        for p in &sources {
            for tp in &tps {
                let q = rho_apply(tp, p);
                let out = witness_search(p, &q).unwrap();
                assert!(out.witness().is_some(), "{p} -> {q}");
                assert!(reverify(p, &q, &out));
            }
        }
    }

    #[test]
    fn json_shapes() {
        let out = witness_search(&pv(&["0", "0", "7"]), &pv(&["0", "0", "1"])).unwrap();
        let j = serde_json::to_string(&out).unwrap();
        assert!(j.starts_with(r#"{"outcome":"found","witness":{"kind":"symbolic","k":2,"c":"1/7","A":["1","0"]"#), "{j}");
        assert_eq!(serde_json::from_str::<SearchOutcome>(&j).unwrap(), out);
        let w = Witness::identity();
        assert_eq!(serde_json::to_string(&w).unwrap(), r#"{"kind":"concrete","A":"1","B":"0","D":"1"}"#);
    }
}
