use crate::algebra::GroupAlgebraElement;
use crate::exactnum::Rational;
use crate::group::Subgroup;
use num_traits::One;
use std::collections::BTreeSet;

/// The sum of the distinct conjugates x^y, y ∈ Y.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitSum {
    /// Smallest element index in the orbit.
    pub base: usize,
    pub orbit: Vec<usize>,
    pub sum: GroupAlgebraElement,
}

/// One sum per Y-orbit of X under conjugation, ordered by base element.
///
/// Each orbit element is counted once, so the orbit of 1 gives 1 rather
/// than |Y|·1. Both conventions span the same ℤ-module up to the scalar
/// |Y| on {1}, and counting once keeps the trivial orbit a unit.
pub fn orbit_sums(x: &Subgroup, y: &Subgroup) -> Vec<OrbitSum> {
    let g = x.group();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &e in x.elements() {
        if seen.contains(&e) {
            continue;
        }
        let orbit: BTreeSet<usize> = y.elements().iter().map(|&t| g.conj(e, t)).collect();
        seen.extend(orbit.iter().copied());
        let orbit: Vec<usize> = orbit.into_iter().collect();
        let sum = GroupAlgebraElement::from_terms(g, orbit.iter().map(|&o| (o, Rational::one())));
        out.push(OrbitSum { base: orbit[0], orbit, sum });
    }
    out.sort_by_key(|o| o.base);
    out
}
