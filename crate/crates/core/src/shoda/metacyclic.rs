use super::pair::StrongShodaPair;
use crate::error::{Error, Result};
use crate::exactnum::numtheory::{is_prime, mult_order};
use crate::group::{FiniteGroup, Group, MetacyclicPresentation, Subgroup};

/// G = C_{q^m} ⋊ C_{p^n} = ⟨a⟩ ⋊ ⟨b⟩ with a^b = a^r and ⟨b⟩ acting faithfully.
#[derive(Clone, Debug)]
pub struct FaithfulMetacyclic {
    pub q: u64,
    pub m: u32,
    pub p: u64,
    pub n: u32,
    pub r: u64,
    pub group: Group,
    pub a: usize,
    pub b: usize,
}

impl FaithfulMetacyclic {
    pub fn new(q: u64, m: u32, p: u64, n: u32, r: u64) -> Result<Self> {
        if !is_prime(q) || !is_prime(p) || q == p || m == 0 || n == 0 {
            return Err(Error::validation("need distinct primes p, q and positive exponents m, n"));
        }
        let qm = q.pow(m);
        let pn = p.pow(n);
        if mult_order(r, qm) != Some(pn) {
            return Err(Error::validation(format!(
                "action is not faithful: the order of {r} modulo {qm} is not {pn}; use the general enumeration instead"
            )));
        }
        let group = FiniteGroup::metacyclic(MetacyclicPresentation::new(qm, pn, 0, r)?)?;
        let (a, b) = (group.ab(1, 0)?, group.ab(0, 1)?);
        Ok(FaithfulMetacyclic { q, m, p, n, r, group, a, b })
    }

    /// Recognises a metacyclic group built as `metacyclic q^m p^n 0 r` with faithful action.
    pub fn from_group(group: &Group) -> Result<Self> {
        let pres = group
            .presentation()
            .ok_or_else(|| Error::unsupported("group has no metacyclic presentation"))?;
        let split = |x: u64| crate::exactnum::numtheory::prime_power(x);
        match (split(pres.m), split(pres.n), pres.t % pres.m.max(1)) {
            (Some((q, m)), Some((p, n)), 0) if q != p && mult_order(pres.r, pres.m) == Some(pres.n) => {
                let (a, b) = (group.ab(1, 0)?, group.ab(0, 1)?);
                Ok(FaithfulMetacyclic { q, m, p, n, r: pres.r, group: group.clone(), a, b })
            }
            _ => Err(Error::unsupported("not a faithful split metacyclic group C_{q^m} ⋊ C_{p^n}")),
        }
    }

    pub fn qm(&self) -> u64 {
        self.q.pow(self.m)
    }

    pub fn pn(&self) -> u64 {
        self.p.pow(self.n)
    }

    /// L_i = ⟨a, b^{p^i}⟩.
    pub fn l(&self, i: u32) -> Subgroup {
        let g = &self.group;
        Subgroup::generated(g, &[self.a, g.pow(self.b, self.p.pow(i) as i64)]).expect("in range")
    }

    /// K_j = ⟨a^{q^j}⟩.
    pub fn kj(&self, j: u32) -> Subgroup {
        let g = &self.group;
        Subgroup::generated(g, &[g.pow(self.a, self.q.pow(j) as i64)]).expect("in range")
    }

    pub fn a_subgroup(&self) -> Subgroup {
        Subgroup::generated(&self.group, &[self.a]).expect("in range")
    }

    pub fn b_subgroup(&self) -> Subgroup {
        Subgroup::generated(&self.group, &[self.b]).expect("in range")
    }

    /// (G, L_i) for i = 0..n, then (⟨a⟩, K_j) for j = 1..m.
    pub fn catalog(&self) -> Result<Vec<StrongShodaPair>> {
        let g = Subgroup::whole(&self.group);
        let mut out = Vec::new();
        for i in 0..=self.n {
            out.push(StrongShodaPair::new(&g, &self.l(i))?);
        }
        let a = self.a_subgroup();
        for j in 1..=self.m {
            out.push(StrongShodaPair::new(&a, &self.kj(j))?);
        }
        Ok(out)
    }
}

/// The strong Shoda pairs of C_{q^m} ⋊ C_{p^n} read off from the presentation.
pub fn metacyclic_ssp_catalog(q: u64, m: u32, p: u64, n: u32, r: u64) -> Result<(FaithfulMetacyclic, Vec<StrongShodaPair>)> {
    let mc = FaithfulMetacyclic::new(q, m, p, n, r)?;
    let pairs = mc.catalog()?;
    Ok((mc, pairs))
}
