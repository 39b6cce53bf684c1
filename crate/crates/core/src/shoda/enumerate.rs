use super::pair::{is_strong_shoda_pair, StrongShodaPair};
use crate::algebra::GroupAlgebraElement;
use crate::error::{Error, Result};
use crate::group::{all_subgroups, Group, Subgroup};

fn is_metabelian(g: &Group) -> bool {
    Subgroup::whole(g).derived().is_abelian()
}

/// Complete, non-redundant strong Shoda pairs of a metabelian group.
///
/// For a maximal abelian A ⊇ G′ the candidates are the maximal B with
/// A ≤ B and B′ ≤ K ≤ B for which B/K is cyclic.
pub fn enumerate_ssp(g: &Group, bound: usize) -> Result<Vec<StrongShodaPair>> {
    if !is_metabelian(g) {
        return Err(Error::unsupported("group is not metabelian; use the generic search"));
    }
    let subs = all_subgroups(g, bound)?;
    let derived = Subgroup::whole(g).derived();
    let a = subs
        .iter()
        .filter(|s| derived.is_subgroup_of(s) && s.is_abelian())
        .max_by(|x, y| x.order().cmp(&y.order()).then_with(|| y.elements().cmp(x.elements())))
        .expect("G' itself is abelian")
        .clone();
    let over_a: Vec<(&Subgroup, Subgroup)> = subs
        .iter()
        .filter(|b| a.is_subgroup_of(b))
        .map(|b| (b, b.derived()))
        .collect();
    let mut candidates = Vec::new();
    for k in &subs {
        let set: Vec<&Subgroup> = over_a
            .iter()
            .filter(|(b, bd)| k.is_subgroup_of(b) && bd.is_subgroup_of(k))
            .map(|(b, _)| *b)
            .collect();
        for h in &set {
            let maximal = !set.iter().any(|o| o.order() > h.order() && h.is_subgroup_of(o));
            if maximal && h.quotient_cyclic_generator(k)?.is_some() {
                candidates.push(StrongShodaPair::new(h, k)?);
            }
        }
    }
    finish(g, candidates)
}

/// Brute-force search over all (H, K) for groups outside the metabelian class.
pub fn enumerate_ssp_generic(g: &Group, bound: usize) -> Result<Vec<StrongShodaPair>> {
    let subs = all_subgroups(g, bound)?;
    let mut candidates: Vec<StrongShodaPair> = Vec::new();
    let mut es: Vec<GroupAlgebraElement> = Vec::new();
    for h in &subs {
        for k in &subs {
            if !k.is_subgroup_of(h) || !k.is_normal_in(h)? || h.quotient_cyclic_generator(k)?.is_none() {
                continue;
            }
            if is_strong_shoda_pair(h, k)?.is_ssp {
                let p = StrongShodaPair::new(h, k)?;
                let e = p.e();
                if !es.contains(&e) {
                    es.push(e);
                    candidates.push(p);
                }
            }
        }
    }
    finish(g, candidates)
}

/// Metabelian search when it applies, otherwise the generic one.
pub fn strong_shoda_pairs(g: &Group, bound: usize) -> Result<Vec<StrongShodaPair>> {
    if is_metabelian(g) {
        enumerate_ssp(g, bound)
    } else {
        enumerate_ssp_generic(g, bound)
    }
}

/// Dedup by equivalence (cross-checked against e-equality), sort, and verify
/// the partition of unity.
fn finish(g: &Group, candidates: Vec<StrongShodaPair>) -> Result<Vec<StrongShodaPair>> {
    let mut kept: Vec<(StrongShodaPair, GroupAlgebraElement)> = Vec::new();
    for p in candidates {
        let e = p.e();
        let mut dup = false;
        for (q, eq) in &kept {
            let by_pairs = p.equivalent(q)?;
            if by_pairs != (e == *eq) {
                return Err(Error::consistency("pair equivalence and e-equality disagree"));
            }
            if by_pairs {
                dup = true;
                break;
            }
        }
        if !dup {
            kept.push((p, e));
        }
    }
    kept.sort_by(|(x, _), (y, _)| {
        y.h.order()
            .cmp(&x.h.order())
            .then(y.k.order().cmp(&x.k.order()))
            .then_with(|| x.h.elements().cmp(y.h.elements()))
            .then_with(|| x.k.elements().cmp(y.k.elements()))
    });
    let es: Vec<&GroupAlgebraElement> = kept.iter().map(|(_, e)| e).collect();
    check_partition_of_unity(g, &es)?;
    Ok(kept.into_iter().map(|(p, _)| p).collect())
}

/// Σ e = 1 and e_i e_j = 0 for i ≠ j.
pub fn check_partition_of_unity(g: &Group, es: &[&GroupAlgebraElement]) -> Result<()> {
    let sum = es.iter().fold(GroupAlgebraElement::zero(g), |acc, e| &acc + *e);
    if !sum.is_one() {
        return Err(Error::consistency("primitive central idempotents do not sum to 1"));
    }
    for (i, x) in es.iter().enumerate() {
        for y in &es[i + 1..] {
            if !(*x * *y).is_zero() {
                return Err(Error::consistency("primitive central idempotents are not orthogonal"));
            }
        }
    }
    Ok(())
}
