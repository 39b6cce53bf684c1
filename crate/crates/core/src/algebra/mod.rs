//! Exact arithmetic in ℚG, the idempotents Ĥ, ε(H,K), e(G,H,K) and the
//! linear characters ρ_L.

mod character;
mod element;
mod idempotents;

pub use character::{rho_linear, LinearCharacter};
pub use element::{ElementJson, GroupAlgebraElement, TermJson};
pub use idempotents::{
    conjugate_sum, conjugation_stabilizer, e_idempotent, epsilon, hat, hat_set, minimal_normal_covers,
};
