//! Bass units, generalized Bass units, cyclotomic units, chain products,
//! the rank of the central unit group and its virtual bases.

mod basis;
mod bass;
mod chain;
mod cyclo;
mod independence;
mod rank;

pub use basis::{
    central_virtual_basis, metacyclic_basis_of, metacyclic_central_basis, metacyclic_rank_formula, CentralUnit,
    ProjectionJson, UnitCertificate, UnitChecks,
};
pub use bass::{
    bass_unit, bass_unit_with_inverse, coset_order, generalized_bass_unit, n_gm, n_gm_with_cap, BassUnitSpec,
    GeneralizedBassSpec, N_GM_ITERATION_CAP,
};
pub use chain::{chain_product, chain_product_in, ChainContext, ChainProductSpec};
pub use cyclo::{cyclotomic_unit, eta, norm_basis, norm_representatives, pi_norm, root_exponent};
pub use independence::{
    central_character, independence_check, independence_check_with, IndependenceCertificate, INDEPENDENCE_TOLERANCE,
};
pub use rank::{action_image, k_flag, rank, PairContribution, RankReport};
