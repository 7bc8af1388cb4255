//! Structure-constant tables, the second-class constructor `L(β)`, and the
//! Leibniz / nilpotency / filiform / Lie checks.

mod checks;
mod params;
mod table;

pub use checks::{
    build_second_class, is_filiform, is_lie, leibniz_check, leibniz_defect, lower_central_dims, LeibnizViolation,
    LowerCentralSeries,
};
pub use params::ParamVector;
pub use table::{SparseVec, StructureTable};
