use serde::{Deserialize, Serialize};

use super::catalog::{lambda_for, published_assignment, representatives, Family, FamilyRef};
use super::witness::{reverify, witness_search, Contradiction, SearchOutcome, TraceStep, Witness};
use crate::algebra::ParamVector;
use crate::error::{Error, Result};
use crate::exactnum::QiScalar;
use crate::invariants::{canonical_point, cell_membership, invariant_vector, slot_label, vanished, CellId};
use crate::transform::{rho_compose, rho_invert};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Answer {
    Isomorphic,
    NotIsomorphic,
}

/// Why an [`IsoVerdict`] holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// A base change mapping the left input onto the right one.
    Witness { witness: Witness, trace: Vec<TraceStep> },
    /// Every branch of the witness equations ends in a contradiction.
    Unsolvable { trace: Vec<TraceStep>, contradiction: Contradiction },
    /// One invariant takes different exact values on the two inputs.
    Separation { invariant: String, left: QiScalar, right: QiScalar },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsoVerdict {
    pub answer: Answer,
    pub evidence: Evidence,
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        self.answer == Answer::Isomorphic
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdicts always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// Independent re-check: witnesses by `rho_apply`, separations by
    /// re-evaluating the invariant, unsolvability by re-running the search.
    pub fn reverify(&self, p: &ParamVector, q: &ParamVector) -> bool {
        match (&self.answer, &self.evidence) {
            (Answer::Isomorphic, Evidence::Witness { witness, .. }) => witness.verify(p, q),
            (Answer::NotIsomorphic, Evidence::Unsolvable { trace, contradiction }) => reverify(
                p,
                q,
                &SearchOutcome::Unsolvable { trace: trace.clone(), contradiction: contradiction.clone() },
            ),
            (Answer::NotIsomorphic, Evidence::Separation { invariant, left, right }) => {
                let value = |v: &ParamVector| -> Option<QiScalar> {
                    let iv = invariant_vector(v).ok()?;
                    (3..=v.n() + 1).find(|&t| slot_label(v.n(), t) == *invariant).map(|t| iv.get(t).clone())
                };
                left != right && value(p).as_ref() == Some(left) && value(q).as_ref() == Some(right)
            }
            _ => false,
        }
    }
}

fn from_search(outcome: SearchOutcome) -> IsoVerdict {
    match outcome {
        SearchOutcome::Found { witness, trace } => {
            IsoVerdict { answer: Answer::Isomorphic, evidence: Evidence::Witness { witness, trace } }
        }
        SearchOutcome::Unsolvable { trace, contradiction } => {
            IsoVerdict { answer: Answer::NotIsomorphic, evidence: Evidence::Unsolvable { trace, contradiction } }
        }
    }
}

/// Decide `p ≅ q`. Dimensions 5 and 6 use the complete case analysis of
/// [`witness_search`]. For `n ≥ 6` both inputs must lie in the open set,
/// where the invariant vectors decide and equal vectors give the witness
/// `p → normal form → q`.
pub fn iso_decide(p: &ParamVector, q: &ParamVector) -> Result<IsoVerdict> {
    if p.n() != q.n() {
        return Err(Error::DimensionMismatch(format!("dim {} vs dim {}", p.dim(), q.dim())));
    }
    if p.n() <= 5 {
        return Ok(from_search(witness_search(p, q)?));
    }
    let mut gone = vanished(p)?;
    gone.extend(vanished(q)?);
    if !gone.is_empty() {
        gone.sort();
        gone.dedup();
        return Err(Error::UndecidedOutsideU { vanished: gone });
    }
    let (ip, iq) = (invariant_vector(p)?, invariant_vector(q)?);
    if let Some(t) = (3..=p.n() + 1).find(|&t| ip.get(t) != iq.get(t)) {
        let evidence =
            Evidence::Separation { invariant: slot_label(p.n(), t), left: ip.get(t).clone(), right: iq.get(t).clone() };
        return Ok(IsoVerdict { answer: Answer::NotIsomorphic, evidence });
    }
    let tp = rho_compose(&canonical_point(p)?.transform(), &rho_invert(&canonical_point(q)?.transform()));
    let witness = Witness::Concrete(tp);
    if !witness.verify(p, q) {
        return Err(Error::InvalidTransform(format!("composed witness fails for {p} -> {q}")));
    }
    let trace = vec![TraceStep {
        case: "equal invariant vectors on the open set".into(),
        conclusion: "compose the canonical-point transform of the left input with the inverse for the right".into(),
    }];
    Ok(IsoVerdict { answer: Answer::Isomorphic, evidence: Evidence::Witness { witness, trace } })
}

/// A catalog member together with a verified witness onto it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CanonicalForm {
    pub cell: CellId,
    pub family: FamilyRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<QiScalar>,
    pub representative: ParamVector,
    pub witness: Witness,
    pub trace: Vec<TraceStep>,
}

/// The published representative for a cell that the input does not reach.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Discrepancy {
    pub cell: CellId,
    pub published: FamilyRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub published_lambda: Option<QiScalar>,
    pub published_representative: ParamVector,
    /// Why no base change reaches the published representative.
    pub trace: Vec<TraceStep>,
    pub contradiction: Contradiction,
    /// The catalog family the input actually belongs to, if any.
    pub actual: Option<CanonicalForm>,
}

/// Result of [`canonical_form`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Classification {
    Confirmed(CanonicalForm),
    Discrepancy(Discrepancy),
}

impl Classification {
    /// The catalog class the input was certified to belong to.
    pub fn class(&self) -> Option<&CanonicalForm> {
        match self {
            Classification::Confirmed(cf) => Some(cf),
            Classification::Discrepancy(d) => d.actual.as_ref(),
        }
    }

    pub fn cell(&self) -> CellId {
        match self {
            Classification::Confirmed(cf) => cf.cell,
            Classification::Discrepancy(d) => d.cell,
        }
    }

    pub fn is_confirmed(&self) -> bool {
        matches!(self, Classification::Confirmed(_))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("classifications always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// Every witness maps `p` onto its representative and every
    /// contradiction is reproduced by a fresh search.
    pub fn reverify(&self, p: &ParamVector) -> bool {
        let class_ok = self.class().is_none_or(|cf| cf.witness.verify(p, &cf.representative));
        let discrepancy_ok = match self {
            Classification::Confirmed(_) => true,
            Classification::Discrepancy(d) => reverify(
                p,
                &d.published_representative,
                &SearchOutcome::Unsolvable { trace: d.trace.clone(), contradiction: d.contradiction.clone() },
            ),
        };
        class_ok && discrepancy_ok
    }
}

fn form(cell: CellId, f: &Family, lambda: Option<QiScalar>, witness: Witness, trace: Vec<TraceStep>) -> CanonicalForm {
    let representative = f.member(lambda.as_ref()).expect("parametric forms carry λ");
    CanonicalForm { cell, family: f.reference(), lambda, representative, witness, trace }
}

/// First catalog family (in published order) that `p` is isomorphic to.
pub fn find_class(p: &ParamVector) -> Result<Option<CanonicalForm>> {
    let cell = cell_membership(p)?;
    for f in representatives(p.dim())? {
        let lambda = if f.is_parametric() {
            match lambda_for(&f, p) {
                Some(l) => Some(l),
                None => continue,
            }
        } else {
            None
        };
        let target = f.member(lambda.as_ref())?;
        if let SearchOutcome::Found { witness, trace } = witness_search(p, &target)? {
            return Ok(Some(form(cell, &f, lambda, witness, trace)));
        }
    }
    Ok(None)
}

/// Cell, published representative and a verified witness onto it
/// (dimensions 5 and 6). When the published representative is unreachable
/// the result is a [`Discrepancy`] carrying the unsolvability certificate
/// and the class actually found in the catalog.
pub fn canonical_form(p: &ParamVector) -> Result<Classification> {
    if p.dim() != 5 && p.dim() != 6 {
        return Err(Error::UnsupportedDimension { op: "canonical_form", dim: p.dim() });
    }
    let cell = cell_membership(p)?;
    let published = published_assignment(p, cell)?;
    let target = published.representative();
    match witness_search(p, &target)? {
        SearchOutcome::Found { witness, trace } => {
            Ok(Classification::Confirmed(form(cell, &published.family, published.lambda, witness, trace)))
        }
        SearchOutcome::Unsolvable { trace, contradiction } => Ok(Classification::Discrepancy(Discrepancy {
            cell,
            published: published.family.reference(),
            published_lambda: published.lambda,
            published_representative: target,
            trace,
            contradiction,
            actual: find_class(p)?,
        })),
    }
}
