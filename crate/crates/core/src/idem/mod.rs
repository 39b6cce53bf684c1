//! The isomorphism ψ: ℚNε → M_n(F) for components with trivial twisting,
//! the element x_e and complete sets of primitive idempotents.

mod normal;
mod psi;
mod sets;
mod xe;

pub use normal::{find_normal_element, is_normal, NormalBasisData, NORMAL_SEARCH_CAP};
pub use psi::{build_p_a, section_automorphisms, PsiMap};
pub use sets::{
    check_matrix_units, check_matrix_units_sampled, primitive_idempotents, primitive_idempotents_of, IdempotentChecks, IdempotentSet,
    IdempotentSetJson,
};
pub use xe::{compute_x_e, x_e_by_trace, XeData};
