use super::GroupAlgebraElement;
use crate::error::{Error, Result};
use crate::exactnum::numtheory::factorize;
use crate::exactnum::rational::Rational;
use crate::group::{Group, Subgroup};
use std::collections::BTreeSet;

/// Ŝ = (1/|S|) Σ_{s∈S} s for a nonempty subset.
pub fn hat_set(group: &Group, set: &[usize]) -> Result<GroupAlgebraElement> {
    let set: BTreeSet<usize> = set.iter().copied().collect();
    if set.is_empty() {
        return Err(Error::validation("hat of an empty set"));
    }
    let c = Rational::new(1.into(), (set.len() as i64).into());
    Ok(GroupAlgebraElement::from_terms(group, set.into_iter().map(|x| (x, c.clone()))))
}

pub fn hat(s: &Subgroup) -> GroupAlgebraElement {
    hat_set(s.group(), s.elements()).expect("subgroups are nonempty")
}

/// Minimal normal subgroups of H properly containing K (K normal in H).
pub fn minimal_normal_covers(h: &Subgroup, k: &Subgroup) -> Result<Vec<Subgroup>> {
    h.same_parent(k)?;
    if !k.is_subgroup_of(h) || !k.is_normal_in(h)? {
        return Err(Error::validation("K must be a normal subgroup of H"));
    }
    if h.order() == k.order() {
        return Ok(Vec::new());
    }
    let g = h.group();
    // Cyclic quotient: one cover per prime divisor of [H:K].
    if let Some(y) = h.quotient_cyclic_generator(k)? {
        let idx = h.order() / k.order();
        let mut out = Vec::new();
        for (p, _) in factorize(idx as u64) {
            let mut gens = k.small_generators();
            gens.push(g.pow(y, (idx / p as usize) as i64));
            out.push(Subgroup::generated(g, &gens)?);
        }
        return Ok(out);
    }
    // General case: normal closures of ⟨K, x⟩, keeping the minimal ones.
    let kg = k.small_generators();
    let hg = h.small_generators();
    let mut closures: Vec<Subgroup> = Vec::new();
    let mut seen = BTreeSet::new();
    for &x in h.elements() {
        if k.contains(x) {
            continue;
        }
        let mut gens = kg.clone();
        let mut frontier = vec![x];
        let mut conj = BTreeSet::from([x]);
        while let Some(y) = frontier.pop() {
            for &t in &hg {
                let z = g.conj(y, t);
                if conj.insert(z) {
                    frontier.push(z);
                }
            }
        }
        gens.extend(conj);
        let m = Subgroup::generated(g, &gens)?;
        if seen.insert(m.elements().to_vec()) {
            closures.push(m);
        }
    }
    let minimal = closures
        .iter()
        .filter(|m| !closures.iter().any(|o| o.order() < m.order() && o.is_subgroup_of(m)))
        .cloned()
        .collect();
    Ok(minimal)
}

/// ε(H,K) = ∏ (K̂ − M̂) over minimal normal covers M of K in H; ε(H,H) = Ĥ.
pub fn epsilon(h: &Subgroup, k: &Subgroup) -> Result<GroupAlgebraElement> {
    let covers = minimal_normal_covers(h, k)?;
    let g = h.group();
    let one = GroupAlgebraElement::one(g);
    let mut e = hat(k);
    for m in covers {
        e = &e * &(&one - &hat(&m));
    }
    Ok(e)
}

/// Stabilizer of x under conjugation.
pub fn conjugation_stabilizer(x: &GroupAlgebraElement) -> Subgroup {
    let g = x.group();
    let elems: Vec<usize> = (0..g.size()).filter(|&t| x.conjugate_by(t) == *x).collect();
    Subgroup::from_elements(g, &elems).expect("stabilizers are subgroups")
}

/// Sum of the distinct G-conjugates of x, with the transversal used.
pub fn conjugate_sum(x: &GroupAlgebraElement) -> (GroupAlgebraElement, Vec<usize>) {
    let g = x.group();
    let c = conjugation_stabilizer(x);
    let t = c.right_transversal(&Subgroup::whole(g)).expect("same parent");
    let sum = t.iter().fold(GroupAlgebraElement::zero(g), |acc, &s| &acc + &x.conjugate_by(s));
    (sum, t)
}

/// e(G,H,K) = Σ_{t∈T} ε(H,K)^t with T a right transversal of the stabilizer of ε.
pub fn e_idempotent(h: &Subgroup, k: &Subgroup) -> Result<GroupAlgebraElement> {
    Ok(conjugate_sum(&epsilon(h, k)?).0)
}
