use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::catalog::{
    family, lambda_const, lambda_for, lambda_invariant_name, lambda_invariant_poly, published_assignment,
    representatives, Family, FamilyRef,
};
use super::decide::{canonical_form, find_class, iso_decide, Answer, Classification, Discrepancy, Evidence, IsoVerdict};
use crate::algebra::ParamVector;
use crate::error::{Error, Result};
use crate::exactnum::{MultiPoly, QiScalar};
use crate::exec::Execution;
use crate::invariants::{cell_membership, cells_for_dim, slot_label, CellId, NAME_Q};
use crate::transform::{rho_apply_in, TransformParams};

/// Sample statistics for one cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellAudit {
    pub cell: CellId,
    /// Label of the published representative family.
    pub published: String,
    pub samples: usize,
    /// Whether every sample reached the published representative.
    pub confirmed: bool,
    pub confirmed_samples: usize,
    pub discrepancy_samples: usize,
    /// Actual classes of the discrepant samples, by family label.
    pub actual_classes: BTreeMap<String, usize>,
    /// Samples whose certificate failed to re-verify.
    pub witness_failures: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscrepancyEntry {
    pub cell: CellId,
    pub sample: usize,
    pub input: ParamVector,
    pub record: Discrepancy,
}

/// One concrete decision between two catalog members.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Probe {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_a: Option<QiScalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_b: Option<QiScalar>,
    pub a: ParamVector,
    pub b: ParamVector,
    pub verdict: IsoVerdict,
}

/// Outcome for a pair of families, over all values of their parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairVerdict {
    /// Every member of one family is isomorphic to a member of the other.
    Isomorphic,
    /// No member of one family is isomorphic to a member of the other.
    NotIsomorphic,
    /// Some but not all members coincide.
    PartialOverlap,
}

/// `rho_apply(witness, a(λ)) = b(μ(λ))` as an identity in `Q(i)[λ]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolicIdentity {
    pub a: FamilyRef,
    pub b: FamilyRef,
    pub witness: TransformParams,
    /// `μ` as a polynomial in `λ`.
    pub mu: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PairCertificate {
    /// The single decision between two fixed representatives.
    Decision,
    /// An orbit-invariant slot vanishes on every member of one family and on
    /// no member of the other.
    VanishingPattern { slot: String, a_vanishes: bool, b_vanishes: bool },
    /// The affine invariant agrees on at most one parameter value, which is
    /// then decided by the probe at `equal_at`.
    Invariant {
        invariant: String,
        a: String,
        b: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        equal_at: Option<QiScalar>,
    },
    /// Distinct parameter values of one family give distinct invariant values.
    Injective { invariant: String, value: String },
    Reparametrization(SymbolicIdentity),
    /// No symbolic argument applies; the verdict covers the probes only.
    ProbesOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairAudit {
    pub a: FamilyRef,
    pub b: FamilyRef,
    pub verdict: PairVerdict,
    pub certificate: PairCertificate,
    pub probes: Vec<Probe>,
}

/// A concrete test of a published claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub source: ParamVector,
    pub target: ParamVector,
    pub claimed: Answer,
    pub verdict: IsoVerdict,
    pub agrees: bool,
    /// Catalog class of `source` when the claim fails.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actual: Option<FamilyRef>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Finding {
    Confirmed,
    Refuted,
}

/// A rule proposed in place of a refuted one, with its own checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Alternative {
    pub rule: String,
    pub consistent: bool,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Adjudication {
    pub question: String,
    pub claim: String,
    pub finding: Finding,
    pub summary: String,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity: Option<SymbolicIdentity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alternative: Option<Alternative>,
}

/// Where a published representative lands under the published cell map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentativeCell {
    pub family: FamilyRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<QiScalar>,
    pub cell: CellId,
    pub published: FamilyRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub published_lambda: Option<QiScalar>,
    /// Whether the cell maps the representative to itself.
    pub fixed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditSummary {
    pub samples: usize,
    pub confirmed_samples: usize,
    pub discrepancy_samples: usize,
    pub witness_failures: usize,
    pub published_families: usize,
    /// Families left after merging those isomorphic for every parameter value.
    pub distinct_classes: usize,
    pub classes: Vec<Vec<usize>>,
    pub certificates_verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditReport {
    pub dim: usize,
    pub seed: u64,
    pub samples_per_cell: usize,
    pub cells: Vec<CellAudit>,
    pub pairwise: Vec<PairAudit>,
    pub discrepancies: Vec<DiscrepancyEntry>,
    pub adjudications: Vec<Adjudication>,
    pub representative_cells: Vec<RepresentativeCell>,
    pub summary: AuditSummary,
}

impl AuditReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Parameter values probed for each parametric family.
pub fn probe_values() -> Vec<QiScalar> {
    ["0", "1", "-1", "1/2", "2", "1+1*i"].iter().map(|v| v.parse().expect("valid literal")).collect()
}

fn random_scalar(rng: &mut ChaCha8Rng) -> QiScalar {
    let re = QiScalar::ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4));
    if rng.gen_ratio(1, 4) {
        let im = QiScalar::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3));
        &re + &(&im * &QiScalar::i())
    } else {
        re
    }
}

fn nonzero(rng: &mut ChaCha8Rng) -> QiScalar {
    loop {
        let v = random_scalar(rng);
        if !v.is_zero() {
            return v;
        }
    }
}

/// Zero one time in eight, so degenerate sub-cases turn up.
fn free(rng: &mut ChaCha8Rng) -> QiScalar {
    if rng.gen_ratio(1, 8) {
        QiScalar::zero()
    } else {
        nonzero(rng)
    }
}

/// A random member of `cell`.
pub fn sample_cell(dim: usize, cell: CellId, rng: &mut ChaCha8Rng) -> Result<ParamVector> {
    let z = QiScalar::zero;
    let two = QiScalar::from_int(2);
    let four = QiScalar::from_int(4);
    for _ in 0..1000 {
        let slots = match (dim, cell) {
            (5, CellId::Sub(1)) => vec![nonzero(rng), free(rng), free(rng)],
            (5, CellId::Sub(k @ (2 | 3))) => {
                let b3 = nonzero(rng);
                let b4 = if k == 2 { nonzero(rng) } else { z() };
                let g = &two * &b3.pow(2);
                vec![b3, b4, g]
            }
            (5, CellId::Sub(4)) => vec![z(), free(rng), nonzero(rng)],
            (5, CellId::Sub(5)) => vec![z(), nonzero(rng), z()],
            (5, CellId::Closed) => vec![z(), z(), z()],
            (6, CellId::Sub(1)) => vec![nonzero(rng), nonzero(rng), free(rng), nonzero(rng)],
            (6, CellId::Sub(2)) => vec![nonzero(rng), nonzero(rng), free(rng), z()],
            (6, CellId::Sub(3)) => {
                let b4 = nonzero(rng);
                vec![&four * &b4, b4, free(rng), z()]
            }
            (6, CellId::Sub(4)) => vec![nonzero(rng), z(), free(rng), nonzero(rng)],
            (6, CellId::Sub(5)) => vec![nonzero(rng), z(), free(rng), z()],
            (6, CellId::Sub(6)) => vec![z(), nonzero(rng), free(rng), nonzero(rng)],
            (6, CellId::Sub(7)) => vec![z(), nonzero(rng), nonzero(rng), z()],
            (6, CellId::Sub(8)) => vec![z(), nonzero(rng), z(), z()],
            (6, CellId::Sub(9)) => vec![z(), z(), nonzero(rng), nonzero(rng)],
            (6, CellId::Sub(10)) => vec![z(), z(), nonzero(rng), z()],
            (6, CellId::Sub(11)) => vec![z(), z(), z(), nonzero(rng)],
            (6, CellId::Closed) => vec![z(), z(), z(), z()],
            _ => return Err(Error::InvalidParams(format!("no cell {cell} in dimension {dim}"))),
        };
        let p = ParamVector::from_tuple(slots)?;
        if cell_membership(&p)? == cell {
            return Ok(p);
        }
    }
    Err(Error::InvalidParams(format!("could not sample cell {cell}")))
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn published_label(dim: usize, cell: CellId) -> Result<String> {
    // Any member of the cell names the same family.
    let p = sample_cell(dim, cell, &mut stream_rng(0, u64::MAX))?;
    Ok(published_assignment(&p, cell)?.family.label())
}

fn audit_cells(
    dim: usize,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<(Vec<CellAudit>, Vec<DiscrepancyEntry>, bool)> {
    let mut cells = Vec::new();
    let mut discrepancies = Vec::new();
    let mut all_verified = true;
    for (ci, cell) in cells_for_dim(dim)?.into_iter().enumerate() {
        let mut rng = stream_rng(seed, ci as u64 + 1);
        let inputs = (0..samples).map(|_| sample_cell(dim, cell, &mut rng)).collect::<Result<Vec<_>>>()?;
        let results = exec.map(&inputs, |p| canonical_form(p).map(|c| (c.reverify(p), c)));
        let mut audit = CellAudit {
            cell,
            published: published_label(dim, cell)?,
            samples,
            confirmed: true,
            confirmed_samples: 0,
            discrepancy_samples: 0,
            actual_classes: BTreeMap::new(),
            witness_failures: Vec::new(),
        };
        for (i, (p, r)) in inputs.into_iter().zip(results).enumerate() {
            let (ok, c) = r?;
            if !ok {
                audit.witness_failures.push(i);
                all_verified = false;
            }
            match c {
                Classification::Confirmed(_) => audit.confirmed_samples += 1,
                Classification::Discrepancy(d) => {
                    audit.discrepancy_samples += 1;
                    audit.confirmed = false;
                    let label = d.actual.as_ref().map_or_else(|| "unclassified".to_string(), |a| a.family.label.clone());
                    *audit.actual_classes.entry(label).or_default() += 1;
                    discrepancies.push(DiscrepancyEntry { cell, sample: i, input: p, record: d });
                }
            }
        }
        cells.push(audit);
    }
    Ok((cells, discrepancies, all_verified))
}

fn poly_text(p: &MultiPoly) -> String {
    p.to_text(&["λ".to_string()])
}

/// Check `rho_apply(tp, a(λ)) = b(μ(λ))` over `Q(i)[λ]`, where `μ(λ)` matches
/// the affine invariants of the two families.
pub fn reparametrization(a: &Family, b: &Family, tp: &TransformParams) -> Option<SymbolicIdentity> {
    let (ja, jb) = (lambda_invariant_poly(a)?, lambda_invariant_poly(b)?);
    let slope = jb.coeff(&[1]);
    if slope.is_zero() || jb.total_degree() > 1 {
        return None;
    }
    let mu = ja.sub(&lambda_const(&jb.coeff(&[0]))).ok()?.scale(&slope.inv().ok()?);
    let c = lambda_const;
    let image = rho_apply_in(a.n(), &c(&tp.x()), &c(&tp.y()), &c(&tp.u()), &a.symbolic()).ok()?;
    Some(SymbolicIdentity {
        a: a.reference(),
        b: b.reference(),
        witness: tp.clone(),
        mu: poly_text(&mu),
        holds: image == b.slots_in(&mu),
    })
}

fn probe(f: &Family, lf: Option<&QiScalar>, g: &Family, lg: Option<&QiScalar>) -> Result<Probe> {
    let (a, b) = (f.member(lf)?, g.member(lg)?);
    let verdict = iso_decide(&a, &b)?;
    Ok(Probe { lambda_a: lf.cloned(), lambda_b: lg.cloned(), a, b, verdict })
}

fn pair_probes(f: &Family, g: &Family) -> Result<Vec<Probe>> {
    let values = probe_values();
    let fixed = [None];
    let lambdas = |h: &Family| -> Vec<Option<QiScalar>> {
        if h.is_parametric() {
            values.iter().cloned().map(Some).collect()
        } else {
            fixed.to_vec()
        }
    };
    let mut out = Vec::new();
    if f == g {
        for (i, l) in values.iter().enumerate() {
            for m in &values[i + 1..] {
                out.push(probe(f, Some(l), g, Some(m))?);
            }
        }
        return Ok(out);
    }
    for lf in lambdas(f) {
        let mut lgs = lambdas(g);
        if g.is_parametric() {
            if let Some(star) = lambda_for(g, &f.member(lf.as_ref())?) {
                if !lgs.contains(&Some(star.clone())) {
                    lgs.push(Some(star));
                }
            }
        }
        for lg in lgs {
            out.push(probe(f, lf.as_ref(), g, lg.as_ref())?);
        }
    }
    Ok(out)
}

fn vanishing_certificate(f: &Family, g: &Family) -> Option<PairCertificate> {
    // β_3 and γ are multiplied by units under every base change.
    [3, f.n() + 1].into_iter().find_map(|t| match (f.slot_vanishes(t), g.slot_vanishes(t)) {
        (Some(x), Some(y)) if x != y => {
            Some(PairCertificate::VanishingPattern { slot: slot_name(f.n(), t), a_vanishes: x, b_vanishes: y })
        }
        _ => None,
    })
}

fn slot_name(n: usize, t: usize) -> String {
    if t == n + 1 {
        "gamma".into()
    } else {
        format!("beta{}", slot_label(n, t))
    }
}

fn audit_pair(f: &Family, g: &Family) -> Result<PairAudit> {
    let probes = pair_probes(f, g)?;
    let any_iso = probes.iter().any(|p| p.verdict.is_isomorphic());
    let all_iso = probes.iter().all(|p| p.verdict.is_isomorphic());
    let invariant = lambda_invariant_name(f.dim()).to_string();
    let (verdict, certificate) = if f == g {
        match lambda_invariant_poly(f) {
            Some(j) if j.total_degree() == 1 && !any_iso => {
                (PairVerdict::NotIsomorphic, PairCertificate::Injective { invariant, value: poly_text(&j) })
            }
            _ => (verdict_from_probes(any_iso, all_iso), PairCertificate::ProbesOnly),
        }
    } else if let Some(cert) = vanishing_certificate(f, g) {
        (PairVerdict::NotIsomorphic, cert)
    } else if !f.is_parametric() && !g.is_parametric() {
        (verdict_from_probes(any_iso, all_iso), PairCertificate::Decision)
    } else if f.is_parametric() && g.is_parametric() {
        let identity = probes
            .iter()
            .find_map(|p| match &p.verdict.evidence {
                Evidence::Witness { witness, .. } => witness.concrete().cloned(),
                _ => None,
            })
            .and_then(|tp| reparametrization(f, g, &tp));
        match identity {
            Some(id) if id.holds => (PairVerdict::Isomorphic, PairCertificate::Reparametrization(id)),
            _ => (verdict_from_probes(any_iso, false), PairCertificate::ProbesOnly),
        }
    } else {
        // One parametric side: the affine invariant leaves at most one value.
        let (param, fixed) = if f.is_parametric() { (f, g) } else { (g, f) };
        match (lambda_invariant_poly(param), lambda_for(param, &fixed.member(None)?)) {
            (Some(jp), star) if jp.total_degree() == 1 => {
                let jf = lambda_invariant_poly(fixed).map(|j| poly_text(&j)).unwrap_or_default();
                let (a, b) = if f.is_parametric() { (poly_text(&jp), jf) } else { (jf, poly_text(&jp)) };
                let verdict = if any_iso { PairVerdict::PartialOverlap } else { PairVerdict::NotIsomorphic };
                (verdict, PairCertificate::Invariant { invariant, a, b, equal_at: star })
            }
            _ => (verdict_from_probes(any_iso, false), PairCertificate::ProbesOnly),
        }
    };
    Ok(PairAudit { a: f.reference(), b: g.reference(), verdict, certificate, probes })
}

fn verdict_from_probes(any_iso: bool, all_iso: bool) -> PairVerdict {
    match (any_iso, all_iso) {
        (_, true) => PairVerdict::Isomorphic,
        (true, false) => PairVerdict::PartialOverlap,
        (false, false) => PairVerdict::NotIsomorphic,
    }
}

fn audit_pairs(dim: usize, exec: Execution) -> Result<Vec<PairAudit>> {
    let fams = representatives(dim)?;
    let mut pairs = Vec::new();
    for (i, f) in fams.iter().enumerate() {
        for g in &fams[i..] {
            if f != g || f.is_parametric() {
                pairs.push((f.clone(), g.clone()));
            }
        }
    }
    exec.map(&pairs, |(f, g)| audit_pair(f, g)).into_iter().collect()
}

fn check(source: ParamVector, target: ParamVector, claimed: Answer) -> Result<Check> {
    let verdict = iso_decide(&source, &target)?;
    let agrees = verdict.answer == claimed;
    let actual = if agrees { None } else { find_class(&source)?.map(|c| c.family) };
    Ok(Check { source, target, claimed, verdict, agrees, actual })
}

fn pv(values: &[&str]) -> ParamVector {
    ParamVector::from_tuple(values.iter().map(|v| v.parse().expect("valid literal")).collect())
        .expect("literal vectors have a valid length")
}

fn refutations(checks: &[Check]) -> String {
    let bad: Vec<String> = checks
        .iter()
        .filter(|c| !c.agrees)
        .map(|c| {
            let actual = c.actual.as_ref().map_or("no catalog family".to_string(), |f| f.label.clone());
            format!("{} is not isomorphic to {} (class {actual})", c.source, c.target)
        })
        .collect();
    if bad.is_empty() {
        format!("all {} checks agree", checks.len())
    } else {
        bad.join("; ")
    }
}

fn finding(checks: &[Check]) -> Finding {
    if checks.iter().all(|c| c.agrees) {
        Finding::Confirmed
    } else {
        Finding::Refuted
    }
}

fn overlap_question() -> Result<Adjudication> {
    let (f1, f4) = (family(6, 1)?, family(6, 4)?);
    let three_quarters = QiScalar::ratio(3, 4);
    let checks = probe_values()
        .iter()
        .map(|l| check(f1.instantiate(l), f4.instantiate(&(l + &three_quarters)), Answer::NotIsomorphic))
        .collect::<Result<Vec<_>>>()?;
    let identity = checks
        .iter()
        .find_map(|c| match &c.verdict.evidence {
            Evidence::Witness { witness, .. } => witness.concrete().cloned(),
            _ => None,
        })
        .and_then(|tp| reparametrization(&f1, &f4, &tp));
    let summary = match &identity {
        Some(id) if id.holds => format!(
            "{} and {} overlap: ({}, {}, {}) maps {} onto L(1,1,{},1) for every λ",
            f1.label(),
            f4.label(),
            id.witness.a(),
            id.witness.b(),
            id.witness.d(),
            f1.label(),
            id.mu
        ),
        _ => refutations(&checks),
    };
    let finding = if identity.as_ref().is_some_and(|id| id.holds) { Finding::Refuted } else { finding(&checks) };
    Ok(Adjudication {
        question: "overlap of families 1 and 4".into(),
        claim: format!("{} and {} have no isomorphic members", f1.label(), f4.label()),
        finding,
        summary,
        checks,
        identity,
        alternative: None,
    })
}

fn u5_question() -> Result<Adjudication> {
    let target = family(6, 5)?.member(None)?;
    let sources = [pv(&["1", "0", "0", "0"]), pv(&["1", "0", "1", "0"]), pv(&["2", "0", "-3", "0"]), pv(&["1/2", "0", "0", "0"])];
    let checks = sources
        .into_iter()
        .map(|p| check(p, target.clone(), Answer::Isomorphic))
        .collect::<Result<Vec<_>>>()?;
    Ok(Adjudication {
        question: "representative of U5".into(),
        claim: format!("every algebra with beta3 != 0, beta4 = 0, gamma = 0 is isomorphic to {target}"),
        finding: finding(&checks),
        summary: refutations(&checks),
        checks,
        identity: None,
        alternative: None,
    })
}

fn u2_u3_question(seed: u64) -> Result<Adjudication> {
    let l1010 = family(6, 2)?.member(None)?;
    let l1000 = family(6, 3)?.member(None)?;
    let fixed = [
        pv(&["4", "1", "1", "0"]),
        pv(&["4", "1", "5/16", "0"]),
        pv(&["8", "2", "-3", "0"]),
        pv(&["1", "1", "5/4", "0"]),
        pv(&["2", "1", "1", "0"]),
        pv(&["1", "2", "0", "0"]),
    ];
    let mut rng = stream_rng(seed, 0);
    let mut points: Vec<ParamVector> = fixed.to_vec();
    for k in 0..24 {
        let p = match k % 3 {
            0 => sample_cell(6, CellId::Sub(2), &mut rng)?,
            1 => sample_cell(6, CellId::Sub(3), &mut rng)?,
            // Q = 0 inside U2 or U3.
            _ => {
                let (b3, b4) = (nonzero(&mut rng), nonzero(&mut rng));
                let b5 = &(&QiScalar::from_int(5) * &b4.pow(2)) * &(&QiScalar::from_int(4) * &b3).inv()?;
                ParamVector::from_tuple(vec![b3, b4, b5, QiScalar::zero()])?
            }
        };
        points.push(p);
    }
    let literal = points
        .iter()
        .map(|p| {
            let target = if cell_membership(p)? == CellId::Sub(3) { &l1000 } else { &l1010 };
            check(p.clone(), target.clone(), Answer::Isomorphic)
        })
        .collect::<Result<Vec<_>>>()?;
    let alt_checks = points
        .iter()
        .map(|p| {
            let target = if crate::invariants::poly_q(p).is_zero() { &l1000 } else { &l1010 };
            check(p.clone(), target.clone(), Answer::Isomorphic)
        })
        .collect::<Result<Vec<_>>>()?;
    let consistent = alt_checks.iter().all(|c| c.agrees);
    Ok(Adjudication {
        question: "U2/U3 condition".into(),
        claim: format!(
            "with beta3*beta4 != 0 and gamma = 0: beta3*beta4 != 4*beta4^2 gives {l1010}, beta3*beta4 = 4*beta4^2 gives {l1000}"
        ),
        finding: finding(&literal),
        summary: refutations(&literal),
        checks: literal,
        identity: None,
        alternative: Some(Alternative {
            rule: format!("with beta3 != 0 and gamma = 0: {NAME_Q} != 0 gives {l1010}, {NAME_Q} = 0 gives {l1000}"),
            consistent,
            checks: alt_checks,
        }),
    })
}

fn representative_cells(dim: usize) -> Result<Vec<RepresentativeCell>> {
    let mut out = Vec::new();
    for f in representatives(dim)? {
        let lambdas: Vec<Option<QiScalar>> =
            if f.is_parametric() { probe_values().into_iter().map(Some).collect() } else { vec![None] };
        for lambda in lambdas {
            let p = f.member(lambda.as_ref())?;
            let cell = cell_membership(&p)?;
            let published = published_assignment(&p, cell)?;
            let fixed = published.family == f && published.lambda == lambda;
            out.push(RepresentativeCell {
                family: f.reference(),
                lambda,
                cell,
                published: published.family.reference(),
                published_lambda: published.lambda,
                fixed,
            });
        }
    }
    Ok(out)
}

fn classes(dim: usize, pairs: &[PairAudit]) -> Result<Vec<Vec<usize>>> {
    let count = representatives(dim)?.len();
    let mut parent: Vec<usize> = (0..=count).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for p in pairs.iter().filter(|p| p.verdict == PairVerdict::Isomorphic && p.a != p.b) {
        let (ra, rb) = (root(&mut parent, p.a.index), root(&mut parent, p.b.index));
        parent[ra.max(rb)] = ra.min(rb);
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 1..=count {
        let r = root(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    Ok(groups.into_values().collect())
}

/// Audit the published classification in dimension 5 or 6: sample every
/// cell, decide every pair of catalog families, and settle the open
/// questions about the dimension-6 list. Output depends only on the
/// arguments, whatever the execution mode.
pub fn verify_classification(dim: usize, samples_per_cell: usize, seed: u64, exec: Execution) -> Result<AuditReport> {
    if dim != 5 && dim != 6 {
        return Err(Error::UnsupportedDimension { op: "verify_classification", dim });
    }
    let (cells, discrepancies, samples_ok) = if samples_per_cell == 0 {
        (Vec::new(), Vec::new(), true)
    } else {
        audit_cells(dim, samples_per_cell, seed, exec)?
    };
    let pairwise = audit_pairs(dim, exec)?;
    let adjudications = if dim == 6 { vec![overlap_question()?, u5_question()?, u2_u3_question(seed)?] } else { Vec::new() };
    let representative_cells = representative_cells(dim)?;
    let classes = classes(dim, &pairwise)?;
    let summary = AuditSummary {
        samples: cells.iter().map(|c| c.samples).sum(),
        confirmed_samples: cells.iter().map(|c| c.confirmed_samples).sum(),
        discrepancy_samples: cells.iter().map(|c| c.discrepancy_samples).sum(),
        witness_failures: cells.iter().map(|c| c.witness_failures.len()).sum(),
        published_families: representatives(dim)?.len(),
        distinct_classes: classes.len(),
        classes,
        certificates_verified: false,
    };
    let mut report = AuditReport {
        dim,
        seed,
        samples_per_cell,
        cells,
        pairwise,
        discrepancies,
        adjudications,
        representative_cells,
        summary,
    };
    report.summary.certificates_verified = samples_ok && reverify_report(&report, exec);
    Ok(report)
}

fn check_ok(c: &Check) -> bool {
    c.verdict.reverify(&c.source, &c.target) && c.agrees == (c.verdict.answer == c.claimed)
}

fn identity_ok(id: &SymbolicIdentity, dim: usize) -> bool {
    let (Ok(a), Ok(b)) = (family(dim, id.a.index), family(dim, id.b.index)) else { return false };
    reparametrization(&a, &b, &id.witness).is_some_and(|again| again == *id)
}

/// Re-check every certificate stored in a report from its own data: each
/// probe and adjudication verdict, each discrepancy (a fresh search must
/// reproduce the contradiction, and the actual-class witness must verify),
/// and each symbolic identity.
pub fn reverify_report(report: &AuditReport, exec: Execution) -> bool {
    let dim = report.dim;
    let discrepancies_ok = exec
        .map(&report.discrepancies, |e| Classification::Discrepancy(e.record.clone()).reverify(&e.input))
        .into_iter()
        .all(|ok| ok);
    let probes: Vec<&Probe> = report.pairwise.iter().flat_map(|p| &p.probes).collect();
    let probes_ok = exec.map(&probes, |p| p.verdict.reverify(&p.a, &p.b)).into_iter().all(|ok| ok);
    let identities_ok = report.pairwise.iter().all(|p| match &p.certificate {
        PairCertificate::Reparametrization(id) => id.holds && identity_ok(id, dim),
        _ => true,
    });
    let adjudications_ok = report.adjudications.iter().all(|a| {
        a.checks.iter().all(check_ok)
            && a.identity.as_ref().is_none_or(|id| identity_ok(id, dim))
            && a.alternative.as_ref().is_none_or(|alt| alt.checks.iter().all(check_ok))
    });
    let cells_ok = report.cells.iter().all(|c| c.witness_failures.is_empty());
    discrepancies_ok && probes_ok && identities_ok && adjudications_ok && cells_ok
}
