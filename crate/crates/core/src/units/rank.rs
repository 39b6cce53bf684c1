use crate::error::{Error, Result};
use crate::exactnum::numtheory::euler_phi;
use crate::group::{conjugacy_classes, ClassKind, Group};
use crate::shoda::{PairSummary, StrongShodaPair};
use serde::Serialize;

/// One summand φ([H:K])/(k·[N:H]) − 1 of the rank formula.
#[derive(Clone, Debug, Serialize)]
pub struct PairContribution {
    pub pair: PairSummary,
    pub index: usize,
    pub normalizer_index: usize,
    pub k_flag: u8,
    pub contribution: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankReport {
    pub contributions: Vec<PairContribution>,
    pub total: i64,
    pub real_classes: usize,
    pub rational_classes: usize,
    /// #real − #rational conjugacy classes.
    pub oracle_total: i64,
}

/// 1 if h·h^n ∈ K for some n ∈ N_G(K), where H = ⟨h, K⟩; 2 otherwise.
pub fn k_flag(pair: &StrongShodaPair) -> u8 {
    let g = pair.group();
    let h = pair.generator;
    let real = pair.n.elements().iter().any(|&n| pair.k.contains(g.mul(h, g.conj(h, n))));
    if real {
        1
    } else {
        2
    }
}

/// Exponents x with n⁻¹ y n ∈ y^x K for n ∈ N: the image of N/H in 𝒰(ℤ/[H:K]).
pub fn action_image(pair: &StrongShodaPair) -> Vec<u64> {
    let g = pair.group();
    let mut seen = std::collections::BTreeSet::new();
    let ch = crate::algebra::LinearCharacter::with_generator(&pair.h, &pair.k, pair.generator).expect("verified pair");
    for &n in pair.n.elements() {
        let e = ch.exponent_of(g.conj(pair.generator, n)).expect("N normalizes H") as u64;
        seen.insert(if pair.index == 1 { 1 } else { e });
    }
    seen.into_iter().collect()
}

/// Rank of 𝒵(𝒰(ℤG)) by the strong Shoda pair formula, checked against the
/// class-count oracle.
pub fn rank(g: &Group, pairs: &[StrongShodaPair]) -> Result<RankReport> {
    let mut contributions = Vec::with_capacity(pairs.len());
    for pair in pairs {
        if !std::sync::Arc::ptr_eq(pair.group(), g) {
            return Err(Error::ParentMismatch);
        }
        let index = pair.index;
        let nh = pair.n.order() / pair.h.order();
        let flag = k_flag(pair);
        let phi = euler_phi(index as u64) as usize;
        let denom = flag as usize * nh;
        if !phi.is_multiple_of(denom) {
            return Err(Error::consistency(format!("φ({index}) is not divisible by {denom}")));
        }
        contributions.push(PairContribution {
            pair: pair.summary(),
            index,
            normalizer_index: nh,
            k_flag: flag,
            contribution: (phi / denom) as i64 - 1,
        });
    }
    let total = contributions.iter().map(|c| c.contribution).sum();
    let real_classes = conjugacy_classes(g, ClassKind::Real).len();
    let rational_classes = conjugacy_classes(g, ClassKind::Rational).len();
    let oracle_total = real_classes as i64 - rational_classes as i64;
    if total != oracle_total {
        return Err(Error::consistency(format!(
            "rank formula gives {total} but real minus rational classes is {oracle_total}"
        )));
    }
    Ok(RankReport { contributions, total, real_classes, rational_classes, oracle_total })
}
