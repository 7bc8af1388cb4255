//! Normalization points, orbit invariants, printed closed forms and the
//! partition cells of the parameter space.

mod canonical;
mod cells;
mod closed;

pub use canonical::{
    canonical_point, in_open_set, invariant_vector, open_set_conditions, poly_p, poly_q, poly_w, realize_invariants,
    slot_label, vanished, CanonicalPoint, CanonicalVariant, InvariantVector, NAME_BETA3, NAME_DIM5, NAME_GAMMA, NAME_P,
    NAME_Q, NAME_W,
};
pub use cells::{
    cell_membership, cell_membership_literal, cells_for_dim, invariant_report, literal_u_factor, CellId,
    InvariantReport,
};
pub use closed::{closed_form_corrected, closed_form_invariant, closed_forms_for_dim, ClosedForm};
