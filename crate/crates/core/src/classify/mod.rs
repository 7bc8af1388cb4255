//! Certified isomorphism decisions and the published classification in
//! dimensions 5 and 6.

mod audit;
mod catalog;
mod decide;
mod witness;

pub use audit::{
    probe_values, reparametrization, reverify_report, sample_cell, verify_classification, Adjudication, Alternative,
    AuditReport, AuditSummary, CellAudit, Check, DiscrepancyEntry, Finding, PairAudit, PairCertificate, PairVerdict,
    Probe, RepresentativeCell, SymbolicIdentity,
};
pub use catalog::{
    family, lambda_for, lambda_invariant, lambda_invariant_name, lambda_invariant_poly, published_assignment,
    representatives, Family, FamilyRef, PublishedAssignment,
};
pub use decide::{
    canonical_form, find_class, iso_decide, Answer, CanonicalForm, Classification, Discrepancy, Evidence, IsoVerdict,
};
pub use witness::{reverify, witness_search, Contradiction, SearchOutcome, SymbolicWitness, TraceStep, Witness};
