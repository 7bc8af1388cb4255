//! Transition polynomials `ψ_t` and the base-change operator `ϱ` on
//! second-class parameter vectors.

mod psi;
mod rho;

pub use psi::{psi_generate, psi_system, z_var, PsiSystem};
pub use rho::{
    rho_apply, rho_apply_batch, rho_apply_in, rho_apply_xyu, rho_component, rho_compose, rho_invert, TransformParams,
};
