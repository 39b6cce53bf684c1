use super::chain::ChainContext;
use super::cyclo::{eta, norm_representatives, pi_norm};
use super::rank::action_image;
use crate::algebra::{ElementJson, GroupAlgebraElement, LinearCharacter};
use crate::error::{Error, Result};
use crate::exactnum::numtheory::prime_power;
use crate::exactnum::CyclotomicNumber;
use crate::group::{Group, Subgroup};
use crate::shoda::{outer_transversal, FaithfulMetacyclic, StrongShodaPair};
use serde::Serialize;

/// A central unit of ℤG together with its inverse and the value it takes in
/// the simple component it lives in.
#[derive(Clone, Debug)]
pub struct CentralUnit {
    /// Position of the pair in the pair list the basis was built from.
    pub pair_index: usize,
    pub pair: StrongShodaPair,
    pub k: u64,
    pub description: String,
    pub element: GroupAlgebraElement,
    pub inverse: GroupAlgebraElement,
    /// ρ(u) in ℚ(ζ_[H:K]) for the linear character of H with kernel K.
    pub projection: CyclotomicNumber,
    /// Exponent E with projection = π(η_k(ζ))^E.
    pub eta_power: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitChecks {
    pub central: bool,
    pub integral: bool,
    pub unit: bool,
}

impl UnitChecks {
    pub fn all(&self) -> bool {
        self.central && self.integral && self.unit
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectionJson {
    pub component_id: usize,
    pub k: u64,
    pub eta_power: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnitCertificate {
    pub spec: String,
    pub element: ElementJson,
    pub inverse: ElementJson,
    pub checks: UnitChecks,
    pub projections: Vec<ProjectionJson>,
}

impl CentralUnit {
    pub fn checks(&self) -> UnitChecks {
        UnitChecks {
            central: self.element.is_central(),
            integral: self.element.is_integral() && self.inverse.is_integral(),
            unit: self.element.is_unit_with_inverse(&self.inverse),
        }
    }

    /// Whether ρ_{(H,K)}(u) matches the stored projection value exactly.
    pub fn projection_matches(&self) -> Result<bool> {
        let ch = LinearCharacter::with_generator(&self.pair.h, &self.pair.k, self.pair.generator)?;
        // uε = vε lies in ℚHε, where ρ is the identity on ε.
        let ue = &self.element * &self.pair.epsilon();
        if !ue.is_supported_on(&self.pair.h) {
            return Ok(false);
        }
        Ok(ch.apply(&ue)? == self.projection)
    }

    pub fn certificate(&self, group_ref: &str) -> UnitCertificate {
        UnitCertificate {
            spec: self.description.clone(),
            element: self.element.to_json(group_ref),
            inverse: self.inverse.to_json(group_ref),
            checks: self.checks(),
            projections: vec![ProjectionJson { component_id: self.pair_index, k: self.k, eta_power: self.eta_power }],
        }
    }
}

fn gens(s: &Subgroup) -> String {
    let g = s.group();
    s.small_generators().iter().map(|&x| g.label(x).to_string()).collect::<Vec<_>>().join(", ")
}

fn ensure_prime_power_indices(pairs: &[StrongShodaPair]) -> Result<()> {
    for pair in pairs {
        if pair.index > 1 && prime_power(pair.index as u64).is_none() {
            return Err(Error::unsupported(format!(
                "pair (H = <{}>, K = <{}>) has index {} which is not a prime power",
                gens(&pair.h),
                gens(&pair.k),
                pair.index
            )));
        }
    }
    Ok(())
}

/// ∏_{x∈X} c_j^s(H,K,k,x) lifted to ℤG, with its inverse.
fn chain_norm(ctx: &ChainContext, k: u64, xs: &[i64], j: u32, s: u32) -> Result<(GroupAlgebraElement, GroupAlgebraElement)> {
    let pn = ctx.pn() as usize;
    let mut v = super::bass::CyclicInt::one(pn);
    let mut w = super::bass::CyclicInt::one(pn);
    for &x in xs {
        let t = ctx.table(k, x)?;
        v = v.mul(&t.c[s as usize][j as usize]);
        w = w.mul(&t.inv[s as usize][j as usize]);
    }
    Ok((ctx.lift(&v), ctx.lift(&w)))
}

/// u ↦ ∏_{t∈T} t⁻¹ u t.
fn spread(u: &GroupAlgebraElement, transversal: &[usize]) -> GroupAlgebraElement {
    let mut acc = GroupAlgebraElement::one(u.group());
    for &t in transversal {
        acc = &acc * &u.conjugate_by(t);
    }
    acc
}

/// The virtual basis of 𝒵(𝒰(ℤG)) assembled pair by pair from the products
/// ∏_{t∈T_K} ∏_{x∈N/H} c_0^n(H,K,k,x)^t, k ∈ I ∖ {1}.
pub fn central_virtual_basis(g: &Group, pairs: &[StrongShodaPair]) -> Result<Vec<CentralUnit>> {
    ensure_prime_power_indices(pairs)?;
    let mut out = Vec::new();
    for (idx, pair) in pairs.iter().enumerate() {
        if !std::sync::Arc::ptr_eq(pair.group(), g) {
            return Err(Error::ParentMismatch);
        }
        if pair.index <= 2 {
            continue;
        }
        let image = action_image(pair);
        let reps = norm_representatives(pair.index as u64, &image);
        if reps.len() <= 1 {
            continue;
        }
        let ctx = ChainContext::with_generator(&pair.h, &pair.k, pair.generator)?;
        let xs: Vec<i64> = image.iter().map(|&x| x as i64).collect();
        let transversal = outer_transversal(pair);
        for &k in &reps[1..] {
            let (u, ui) = chain_norm(&ctx, k, &xs, 0, ctx.n)?;
            let element = spread(&u, &transversal);
            let inverse = spread(&ui, &transversal);
            let eta_power = ctx.bass_exponent(k)? * ctx.p.pow(ctx.n - 1);
            let projection = pi_norm(&image, &eta(k as i64, pair.index, 1)?)?.pow(eta_power as i64)?;
            out.push(CentralUnit {
                pair_index: idx,
                pair: pair.clone(),
                k,
                description: format!("prod_t prod_x c_0^{}(H,K,{k},x)^t for pair {idx}", ctx.n),
                element,
                inverse,
                projection,
                eta_power,
            });
        }
    }
    Ok(out)
}

/// The basis for C_{q^m} ⋊ C_{p^n}: type (i) units c_0^i(G, L_i, k, 1) and
/// type (ii) products ∏_x c_{m−j}^m(⟨a⟩, 1, k, r^x) of ordinary Bass units.
pub fn metacyclic_central_basis(q: u64, m: u32, p: u64, n: u32, r: u64) -> Result<(FaithfulMetacyclic, Vec<CentralUnit>)> {
    let mc = FaithfulMetacyclic::new(q, m, p, n, r)?;
    let units = metacyclic_basis_of(&mc)?;
    Ok((mc, units))
}

pub fn metacyclic_basis_of(mc: &FaithfulMetacyclic) -> Result<Vec<CentralUnit>> {
    let pairs = mc.catalog()?;
    let g = &mc.group;
    let whole = Subgroup::whole(g);
    let mut out = Vec::new();
    for i in 1..=mc.n {
        let pi = mc.p.pow(i);
        let ks: Vec<u64> = if mc.p == 2 {
            (3..pi / 2).filter(|k| k % 2 == 1).collect()
        } else {
            (2..pi).filter(|&k| 2 * k < pi && k % mc.p != 0).collect()
        };
        if ks.is_empty() {
            continue;
        }
        let pair = &pairs[i as usize];
        let ctx = ChainContext::with_generator(&whole, &mc.l(i), mc.b)?;
        for k in ks {
            let (element, inverse) = chain_norm(&ctx, k, &[1], 0, i)?;
            let eta_power = ctx.bass_exponent(k)? * mc.p.pow(i - 1);
            let projection = eta(k as i64, pi as usize, 1)?.pow(eta_power as i64)?;
            out.push(CentralUnit {
                pair_index: i as usize,
                pair: pair.clone(),
                k,
                description: format!("c_0^{i}(G,<a,b^{pi}>,{k},1)"),
                element,
                inverse,
                projection,
                eta_power,
            });
        }
    }
    let a = mc.a_subgroup();
    let qm = mc.qm();
    let ctx = ChainContext::with_generator(&a, &Subgroup::trivial(g), mc.a)?;
    let xs: Vec<i64> = (0..mc.pn())
        .map(|x| crate::exactnum::numtheory::mod_pow(mc.r, x, qm) as i64)
        .collect();
    for j in 1..=mc.m {
        let qj = mc.q.pow(j);
        let reps = norm_representatives(qj, &[mc.r % qj]);
        let pair_index = (mc.n + j) as usize;
        for &k in &reps[1..] {
            let (element, inverse) = chain_norm(&ctx, k, &xs, mc.m - j, mc.m)?;
            let eta_power = ctx.bass_exponent(k)? * mc.q.pow(mc.m - 1);
            let projection = pi_norm(&[mc.r % qj], &eta(k as i64, qj as usize, 1)?)?.pow(eta_power as i64)?;
            out.push(CentralUnit {
                pair_index,
                pair: pairs[pair_index].clone(),
                k,
                description: format!("prod_x c_{}^{}(<a>,1,{k},r^x)", mc.m - j, mc.m),
                element,
                inverse,
                projection,
                eta_power,
            });
        }
    }
    Ok(out)
}

/// Rank of 𝒵(𝒰(ℤG)) for C_{q^m} ⋊ C_{p^n} from the closed formula.
pub fn metacyclic_rank_formula(q: u64, m: u32, p: u64, n: u32) -> i64 {
    let (qm, pn) = (q.pow(m) as i64, p.pow(n) as i64);
    if p == 2 {
        (pn / 2) + (qm - 1) / pn - n as i64 - m as i64
    } else {
        (pn - 1) / 2 + (qm - 1) / (2 * pn) - n as i64 - m as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FiniteGroup, MetacyclicPresentation};
    use crate::shoda::strong_shoda_pairs;
    use crate::units::rank::rank;

    fn check_all(units: &[CentralUnit]) {
        for u in units {
            assert!(u.checks().all(), "{}", u.description);
            assert!(u.projection_matches().unwrap(), "{}", u.description);
        }
    }

    #[test]
    fn c5_single_unit() {
        let g = FiniteGroup::cyclic(5).unwrap();
        let pairs = strong_shoda_pairs(&g, 512).unwrap();
        let units = central_virtual_basis(&g, &pairs).unwrap();
        assert_eq!(units.len(), 1);
        check_all(&units);
    }

    #[test]
    fn general_basis_counts() {
        for (m, n, r) in [(7, 3, 2), (31, 5, 2), (13, 4, 5)] {
            let g = FiniteGroup::metacyclic(MetacyclicPresentation::new(m, n, 0, r).unwrap()).unwrap();
            let pairs = strong_shoda_pairs(&g, 512).unwrap();
            let units = central_virtual_basis(&g, &pairs).unwrap();
            assert_eq!(units.len() as i64, rank(&g, &pairs).unwrap().total);
            check_all(&units);
        }
    }

    #[test]
    fn non_prime_power_index_is_unsupported() {
        let g = FiniteGroup::cyclic(6).unwrap();
        let pairs = strong_shoda_pairs(&g, 512).unwrap();
        let err = central_virtual_basis(&g, &pairs).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn metacyclic_counts() {
        let (_, u) = metacyclic_central_basis(7, 1, 3, 1, 2).unwrap();
        assert!(u.is_empty());
        let (_, u) = metacyclic_central_basis(31, 1, 5, 1, 2).unwrap();
        assert_eq!(u.len(), 3);
        check_all(&u);
        let (_, u) = metacyclic_central_basis(13, 1, 2, 2, 5).unwrap();
        assert_eq!(u.len() as i64, metacyclic_rank_formula(13, 1, 2, 2));
        check_all(&u);
        assert!(metacyclic_central_basis(7, 1, 3, 1, 1).is_err());
    }
}
