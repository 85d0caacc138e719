//! Harmonic analysis on the representation space: Laguerre polynomials,
//! the Verma basis `f_Jm`, its action tables, the special-function
//! identities behind separation, and the orbit quantization condition.

mod actions;
mod basis;
mod identities;
mod laguerre;
mod quantization;

pub use actions::{
    conjugated_coefficient, intertwiner_squared, multiplier, p_records, p_table_image, printed_p_table,
    shapovalov_check, sl2_records, verify_p_actions, verify_sl2_actions, ActionError, ActionRecord, TableTerm,
};
pub use basis::{
    basis_vector, closed_form_f, generate_verma, generators_for, submodule_image, submodule_is_invariant,
    z_product_power, VermaError, VermaLabel,
};
pub use identities::{
    laguerre_product_identity, laguerre_product_sides, printed_product_normalization, separation_expansion, whittaker_image, whittaker_residual,
    IdentityError, SeparatedTerm, SeparationExpansion,
};
pub use laguerre::{factorial, laguerre, rising};
pub use quantization::{quantization_condition, Quantization, QuantizationError};
