use super::bass::{cyclic_bass, cyclic_bass_inverse, lift_through, n_gm, CyclicInt};
use super::cyclo::eta;
use crate::algebra::{GroupAlgebraElement, LinearCharacter};
use crate::error::{Error, Result};
use crate::exactnum::numtheory::{gcd, mult_order, prime_power};
use crate::exactnum::CyclotomicNumber;
use crate::group::Subgroup;

/// Parameters of c_j^s(H, K, k, r).
#[derive(Clone, Debug)]
pub struct ChainProductSpec {
    pub h: Subgroup,
    pub kernel: Subgroup,
    pub k: u64,
    pub r: i64,
    pub j: u32,
    pub s: u32,
}

/// Data shared by all chain products of a relative cyclic p-chain H/K = ⟨gK⟩.
#[derive(Clone, Debug)]
pub struct ChainContext {
    pub h: Subgroup,
    pub kernel: Subgroup,
    pub generator: usize,
    pub p: u64,
    pub n: u32,
    /// n_{H,K}.
    pub n_hk: u64,
}

/// c_j^s and their inverses in ℤ(H/K) ≅ ℤC_{p^n}, indexed `[s][j]`.
pub(crate) struct ChainTable {
    pub c: Vec<Vec<CyclicInt>>,
    pub inv: Vec<Vec<CyclicInt>>,
}

impl ChainContext {
    /// Uses the least element generating H/K.
    pub fn new(h: &Subgroup, kernel: &Subgroup) -> Result<Self> {
        let y = h
            .quotient_cyclic_generator(kernel)?
            .ok_or_else(|| Error::validation("H/K is not cyclic"))?;
        Self::with_generator(h, kernel, y)
    }

    pub fn with_generator(h: &Subgroup, kernel: &Subgroup, generator: usize) -> Result<Self> {
        h.same_parent(kernel)?;
        if !kernel.is_subgroup_of(h) || !kernel.is_normal_in(h)? {
            return Err(Error::validation("K is not normal in H"));
        }
        let index = (h.order() / kernel.order()) as u64;
        let (p, n) = if index == 1 {
            (1, 0)
        } else {
            prime_power(index).ok_or_else(|| Error::validation(format!("[H:K] = {index} is not a prime power")))?
        };
        if !h.contains(generator) || Subgroup::generated(h.group(), &[generator])?.join(kernel)? != *h {
            return Err(Error::validation("element does not generate H/K"));
        }
        let n_hk = n_gm(h, kernel)?;
        Ok(ChainContext { h: h.clone(), kernel: kernel.clone(), generator, p, n, n_hk })
    }

    pub fn pn(&self) -> u64 {
        self.p.pow(self.n)
    }

    /// H_j = ⟨g^{p^{n−j}}, K⟩ for j = 0..n.
    pub fn subgroup_chain(&self) -> Vec<Subgroup> {
        let g = self.h.group();
        (0..=self.n)
            .map(|j| {
                let x = g.pow(self.generator, self.p.pow(self.n - j) as i64);
                Subgroup::generated(g, &[x]).and_then(|s| s.join(&self.kernel)).expect("same parent")
            })
            .collect()
    }

    /// O_{p^n}(k)·n_{H,K}, the Bass exponent used throughout.
    pub fn bass_exponent(&self, k: u64) -> Result<u64> {
        let pn = self.pn();
        if self.p > 1 && gcd(k, self.p) != 1 {
            return Err(Error::validation(format!("k = {k} is not coprime to p = {}", self.p)));
        }
        let o = mult_order(k, pn).ok_or_else(|| Error::validation("k is not a unit"))?;
        Ok(o * self.n_hk)
    }

    pub(crate) fn table(&self, k: u64, r: i64) -> Result<ChainTable> {
        let pn = self.pn() as usize;
        let p = self.p as usize;
        let n = self.n as usize;
        let e = self.bass_exponent(k)?;
        let mut c: Vec<Vec<CyclicInt>> = Vec::with_capacity(n + 1);
        let mut inv: Vec<Vec<CyclicInt>> = Vec::with_capacity(n + 1);
        for s in 0..=n {
            let mut cs = vec![CyclicInt::one(pn); s + 1];
            let mut is = vec![CyclicInt::one(pn); s + 1];
            for j in (0..s).rev() {
                // ∏ over H_j/K of b(k, e, g^{r p^{n−s}} h) in ℤC_{p^n}.
                let mut base = CyclicInt::one(pn);
                let mut base_inv = CyclicInt::one(pn);
                let step = p.pow((n - j) as u32) as i64;
                let shift = r * p.pow((n - s) as u32) as i64;
                for t in 0..p.pow(j as u32) as i64 {
                    let x = (shift + t * step).rem_euclid(pn as i64);
                    // c^x has order d in C_{p^n}.
                    let d = if x == 0 { 1 } else { pn / gcd(x as u64, pn as u64) as usize };
                    let b = cyclic_bass(d, k, e)?.substitute(pn, x);
                    let bi = cyclic_bass_inverse(d, k, e)?.substitute(pn, x);
                    base = base.mul(&b);
                    base_inv = base_inv.mul(&bi);
                }
                let pw = self.p.pow((s - j - 1) as u32);
                let mut val = base.pow(pw);
                let mut val_inv = base_inv.pow(pw);
                for l in j + 1..s {
                    val = val.mul(&is[l]);
                    val_inv = val_inv.mul(&cs[l]);
                }
                for l in 0..j {
                    let s2 = s + l - j;
                    val = val.mul(&inv[s2][l]);
                    val_inv = val_inv.mul(&c[s2][l]);
                }
                cs[j] = val;
                is[j] = val_inv;
            }
            c.push(cs);
            inv.push(is);
        }
        Ok(ChainTable { c, inv })
    }

    /// 1 − K̂ + ṽK̂ for v ∈ ℤ(H/K).
    pub(crate) fn lift(&self, v: &CyclicInt) -> GroupAlgebraElement {
        lift_through(v, self.generator, &self.kernel)
    }

    /// Closed-form value of ρ_{H_{j1}}(c_j^s(H,K,k,r)) in ℚ(ζ_{p^{n−j1}}).
    pub fn projection_expected(&self, k: u64, r: i64, j: u32, j1: u32, s: u32) -> Result<CyclotomicNumber> {
        let order = self.p.pow(self.n - j1) as usize;
        if j != j1 {
            return Ok(CyclotomicNumber::one(order));
        }
        let e = self.bass_exponent(k)? * if s == 0 { 1 } else { self.p.pow(s - 1) };
        let root = self.p.pow(s - j) as usize;
        let base = eta(k as i64, root, r)?.embed(order)?;
        base.pow(e as i64)
    }

    /// ρ_{H_{j1}}(x) computed directly from the group-algebra element.
    pub fn projection(&self, x: &GroupAlgebraElement, j1: u32) -> Result<CyclotomicNumber> {
        let hj = &self.subgroup_chain()[j1 as usize];
        LinearCharacter::with_generator(&self.h, hj, self.generator)?.apply(x)
    }
}

/// c_j^s(H, K, k, r) and its inverse as elements of ℤH ⊆ ℤG.
pub fn chain_product(spec: &ChainProductSpec) -> Result<(GroupAlgebraElement, GroupAlgebraElement)> {
    let ctx = ChainContext::new(&spec.h, &spec.kernel)?;
    chain_product_in(&ctx, spec.k, spec.r, spec.j, spec.s)
}

pub fn chain_product_in(ctx: &ChainContext, k: u64, r: i64, j: u32, s: u32) -> Result<(GroupAlgebraElement, GroupAlgebraElement)> {
    if j > s || s > ctx.n {
        return Err(Error::validation(format!("need 0 <= j <= s <= n, got j = {j}, s = {s}, n = {}", ctx.n)));
    }
    let t = ctx.table(k, r)?;
    let (j, s) = (j as usize, s as usize);
    Ok((ctx.lift(&t.c[s][j]), ctx.lift(&t.inv[s][j])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn check_table(ctx: &ChainContext, k: u64, r: i64) {
        for s in 0..=ctx.n {
            for j in 0..=s {
                let (c, ci) = chain_product_in(ctx, k, r, j, s).unwrap();
                assert!(c.is_integral() && ci.is_integral());
                assert!((&c * &ci).is_one());
                for j1 in 0..=s {
                    let got = ctx.projection(&c, j1).unwrap();
                    let want = ctx.projection_expected(k, r, j, j1, s).unwrap();
                    assert_eq!(got, want, "k={k} r={r} j={j} j1={j1} s={s}");
                }
            }
        }
    }

    #[test]
    fn top_level_is_one() {
        let g = FiniteGroup::cyclic(9).unwrap();
        let ctx = ChainContext::new(&Subgroup::whole(&g), &Subgroup::trivial(&g)).unwrap();
        let (c, _) = chain_product_in(&ctx, 2, 1, 2, 2).unwrap();
        assert!(c.is_one());
    }

    #[test]
    fn c9_and_c4_tables() {
        let g = FiniteGroup::cyclic(9).unwrap();
        let ctx = ChainContext::new(&Subgroup::whole(&g), &Subgroup::trivial(&g)).unwrap();
        check_table(&ctx, 2, 1);
        let g = FiniteGroup::cyclic(4).unwrap();
        let ctx = ChainContext::new(&Subgroup::whole(&g), &Subgroup::trivial(&g)).unwrap();
        check_table(&ctx, 3, 1);
    }

    #[test]
    fn relative_chain_with_kernel() {
        // C12 with K = C3: H/K cyclic of order 4, n_{H,K} > 1.
        let g = FiniteGroup::cyclic(12).unwrap();
        let k = Subgroup::generated(&g, &[4]).unwrap();
        let ctx = ChainContext::new(&Subgroup::whole(&g), &k).unwrap();
        assert!(ctx.n_hk > 1);
        check_table(&ctx, 3, 1);
        check_table(&ctx, 3, 3);
    }

    #[test]
    fn rejects_bad_indices() {
        let g = FiniteGroup::cyclic(6).unwrap();
        assert!(ChainContext::new(&Subgroup::whole(&g), &Subgroup::trivial(&g)).is_err());
        let g = FiniteGroup::cyclic(4).unwrap();
        let ctx = ChainContext::new(&Subgroup::whole(&g), &Subgroup::trivial(&g)).unwrap();
        assert!(chain_product_in(&ctx, 3, 1, 2, 1).is_err());
        assert!(chain_product_in(&ctx, 2, 1, 0, 1).is_err());
    }
}
