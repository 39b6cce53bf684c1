use crate::algebra::{hat, GroupAlgebraElement};
use crate::error::{Error, Result};
use crate::exactnum::numtheory::{gcd, lcm, mod_inverse, mod_pow, mult_order, units_mod};
use crate::exactnum::Rational;
use crate::group::{Group, Subgroup};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Iteration cap for the power search behind n_{G,M}.
pub const N_GM_ITERATION_CAP: u64 = 1_000_000;

/// Integral element of ℤC_d written in the basis 1, c, …, c^{d−1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct CyclicInt {
    pub d: usize,
    pub c: Vec<BigInt>,
}

impl CyclicInt {
    pub fn one(d: usize) -> Self {
        let mut c = vec![BigInt::zero(); d];
        c[0] = BigInt::one();
        CyclicInt { d, c }
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.d, o.d);
        let d = self.d;
        let mut c = vec![BigInt::zero(); d];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[(i + j) % d] += a * b;
                }
            }
        }
        CyclicInt { d, c }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.d);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Image under c_d ↦ c_{d2}^e; the order of c^e in C_{d2} must divide d.
    pub fn substitute(&self, d2: usize, e: i64) -> Self {
        debug_assert_eq!((self.d as i64 * e).rem_euclid(d2 as i64), 0);
        let mut c = vec![BigInt::zero(); d2];
        for (i, a) in self.c.iter().enumerate() {
            if !a.is_zero() {
                c[(i as i64 * e).rem_euclid(d2 as i64) as usize] += a;
            }
        }
        CyclicInt { d: d2, c }
    }

    /// Σ c_i x^i in ℚG.
    pub fn realize(&self, group: &Group, x: usize) -> GroupAlgebraElement {
        GroupAlgebraElement::from_terms(
            group,
            self.c
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(i, a)| (group.pow(x, i as i64), Rational::from_integer(a.clone()))),
        )
    }

    fn residues(&self, m: u64) -> Vec<u64> {
        let mb = BigInt::from(m);
        self.c
            .iter()
            .map(|a| {
                let r: BigInt = a.mod_floor(&mb);
                r.try_into().expect("residue fits")
            })
            .collect()
    }
}

fn mul_mod(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    let d = a.len();
    let mut c = vec![0u128; d];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                c[(i + j) % d] = (c[(i + j) % d] + x as u128 * y as u128) % m as u128;
            }
        }
    }
    c.into_iter().map(|x| x as u64).collect()
}

fn is_one_mod(a: &[u64], m: u64) -> bool {
    a.iter().enumerate().all(|(i, &x)| x == if i == 0 { 1 % m } else { 0 })
}

/// b(k, m, c) in ℤC_d, taking k literally (not reduced modulo d).
pub(crate) fn cyclic_bass(d: usize, k: u64, m: u64) -> Result<CyclicInt> {
    let du = d as u64;
    if mod_pow(k % du, m, du) != 1 % du {
        return Err(Error::validation(format!("k^m = {k}^{m} is not 1 modulo {d}")));
    }
    let mut geom = vec![BigInt::zero(); d];
    for (i, c) in geom.iter_mut().enumerate() {
        *c = BigInt::from(k / du + u64::from((i as u64) < k % du));
    }
    let mut out = CyclicInt { d, c: geom }.pow(m);
    let km = num_traits::pow(BigInt::from(k), m as usize);
    let corr = (BigInt::one() - km) / BigInt::from(du);
    for c in out.c.iter_mut() {
        *c += &corr;
    }
    Ok(out)
}

/// Closed-form inverse b(k₁, m, c^k) with k·k₁ ≡ 1 (mod d).
pub(crate) fn cyclic_bass_inverse(d: usize, k: u64, m: u64) -> Result<CyclicInt> {
    let du = d as u64;
    let k1 = if d == 1 { 1 } else { mod_inverse(k % du, du).ok_or_else(|| Error::validation("k is not a unit"))? };
    Ok(cyclic_bass(d, k1, m)?.substitute(d, k as i64))
}

/// b(k, m, g) = (1 + g + ⋯ + g^{k−1})^m + ((1 − k^m)/n)(1 + g + ⋯ + g^{n−1}), n = |g|.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BassUnitSpec {
    pub g: usize,
    pub k: u64,
    pub m: u64,
    pub n: u64,
}

impl BassUnitSpec {
    pub fn new(group: &Group, g: usize, k: u64, m: u64) -> Result<Self> {
        if g >= group.size() {
            return Err(Error::validation("element out of range"));
        }
        if k == 0 || m == 0 {
            return Err(Error::validation("k and m must be positive"));
        }
        let n = group.element_order(g) as u64;
        if mod_pow(k % n, m, n) != 1 % n {
            return Err(Error::validation(format!("k^m = {k}^{m} is not 1 modulo |g| = {n}")));
        }
        Ok(BassUnitSpec { g, k, m, n })
    }

    /// Parameters of b(k₁, m, g^k), the inverse of this unit.
    pub fn inverse_spec(&self, group: &Group) -> Self {
        let k1 = if self.n == 1 { 1 } else { mod_inverse(self.k % self.n, self.n).expect("k is a unit") };
        BassUnitSpec { g: group.pow(self.g, self.k as i64), k: k1, m: self.m, n: self.n }
    }
}

pub fn bass_unit(group: &Group, spec: &BassUnitSpec) -> Result<GroupAlgebraElement> {
    let checked = BassUnitSpec::new(group, spec.g, spec.k, spec.m)?;
    Ok(cyclic_bass(checked.n as usize, checked.k, checked.m)?.realize(group, checked.g))
}

/// The unit together with its closed-form inverse; the product is checked to be 1.
pub fn bass_unit_with_inverse(group: &Group, spec: &BassUnitSpec) -> Result<(GroupAlgebraElement, GroupAlgebraElement)> {
    let u = bass_unit(group, spec)?;
    let v = bass_unit(group, &spec.inverse_spec(group))?;
    if !(&u * &v).is_one() {
        return Err(Error::consistency("Bass unit inverse formula failed"));
    }
    Ok((u, v))
}

/// 1 − M̂ + b(k, m, g)M̂ raised to the power `n_gm`.
#[derive(Clone, Debug)]
pub struct GeneralizedBassSpec {
    pub g: usize,
    pub normal: Subgroup,
    pub k: u64,
    pub m: u64,
    pub n_gm: u64,
}

/// Order of gM in G/M.
pub fn coset_order(g: usize, m: &Subgroup) -> usize {
    let grp = m.group();
    let mut x = g;
    let mut d = 1;
    while !m.contains(x) {
        x = grp.mul(x, g);
        d += 1;
    }
    d
}

/// 1 − M̂ + v(x)M̂ for v ∈ ℤC_d realised along x.
pub(crate) fn lift_through(v: &CyclicInt, x: usize, m: &Subgroup) -> GroupAlgebraElement {
    let group = m.group();
    let mh = hat(m);
    let one = GroupAlgebraElement::one(group);
    let body = &v.realize(group, x) * &mh;
    &(&one - &mh) + &body
}

/// Returns the unit and its inverse. Fails when the result is not integral,
/// which happens exactly when `n_gm` is not a multiple of n_{G,M}.
pub fn generalized_bass_unit(spec: &GeneralizedBassSpec) -> Result<(GroupAlgebraElement, GroupAlgebraElement)> {
    let m_sub = &spec.normal;
    let group = m_sub.group();
    if spec.g >= group.size() {
        return Err(Error::validation("element out of range"));
    }
    if !m_sub.is_normal() {
        return Err(Error::validation("M is not normal"));
    }
    if spec.k == 0 || spec.m == 0 || spec.n_gm == 0 {
        return Err(Error::validation("k, m and the exponent must be positive"));
    }
    let d = coset_order(spec.g, m_sub);
    if gcd(spec.k, d as u64) != 1 {
        return Err(Error::validation(format!("k = {} is not coprime to the order {d} of gM", spec.k)));
    }
    let e = spec.m.checked_mul(spec.n_gm).ok_or_else(|| Error::Capacity("exponent overflow".into()))?;
    let v = cyclic_bass(d, spec.k, e)?;
    let w = cyclic_bass_inverse(d, spec.k, e)?;
    let u = lift_through(&v, spec.g, m_sub);
    let ui = lift_through(&w, spec.g, m_sub);
    if !u.is_integral() || !ui.is_integral() {
        return Err(Error::validation(format!(
            "generalized Bass unit is not integral with exponent {}; use a multiple of n_GM",
            spec.n_gm
        )));
    }
    if !(&u * &ui).is_one() {
        return Err(Error::consistency("generalized Bass unit inverse failed"));
    }
    Ok((u, ui))
}

/// Least t ≥ 1 with v^t ≡ w^t ≡ 1 modulo `m` coefficientwise.
fn power_period(v: &CyclicInt, w: &CyclicInt, m: u64, cap: u64) -> Result<u64> {
    let (v, w) = (v.residues(m), w.residues(m));
    let (mut pv, mut pw) = (v.clone(), w.clone());
    for t in 1..=cap {
        if is_one_mod(&pv, m) && is_one_mod(&pw, m) {
            return Ok(t);
        }
        pv = mul_mod(&pv, &v, m);
        pw = mul_mod(&pw, &w, m);
    }
    Err(Error::Capacity(format!("n_GM power search exceeded {cap} iterations")))
}

/// n_{G,M} for M normal in the ambient subgroup `g` (use `Subgroup::whole` for G itself).
///
/// 1 − M̂ + v M̂ is integral iff v ≡ 1 modulo |M|, so for each coset order d
/// and each unit k modulo d the minimal exponent is found by iterating
/// powers of b(k, O_d(k), c) and of its closed-form inverse in (ℤ/|M|)C_d.
/// The answer is the lcm of these minimal exponents.
pub fn n_gm(g: &Subgroup, m: &Subgroup) -> Result<u64> {
    n_gm_with_cap(g, m, N_GM_ITERATION_CAP)
}

pub fn n_gm_with_cap(g: &Subgroup, m: &Subgroup, cap: u64) -> Result<u64> {
    g.same_parent(m)?;
    if !m.is_subgroup_of(g) || !m.is_normal_in(g)? {
        return Err(Error::validation("M is not a normal subgroup of G"));
    }
    let mo = m.order() as u64;
    if mo == 1 {
        return Ok(1);
    }
    let orders: std::collections::BTreeSet<usize> = g.elements().iter().map(|&x| coset_order(x, m)).collect();
    let mut n = 1;
    for d in orders {
        if d == 1 {
            continue;
        }
        for k in units_mod(d as u64) {
            let o = mult_order(k, d as u64).expect("unit");
            let v = cyclic_bass(d, k, o)?;
            let w = cyclic_bass_inverse(d, k, o)?;
            n = lcm(n, power_period(&v, &w, mo, cap)?);
        }
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::group::{FiniteGroup, MetacyclicPresentation};

    #[test]
    fn trivial_parameters_give_one() {
        let g = FiniteGroup::cyclic(7).unwrap();
        let u = bass_unit(&g, &BassUnitSpec::new(&g, 1, 1, 5).unwrap()).unwrap();
        assert!(u.is_one());
    }

    #[test]
    fn b_2_3_in_c7() {
        let g = FiniteGroup::cyclic(7).unwrap();
        let spec = BassUnitSpec::new(&g, 1, 2, 3).unwrap();
        let (u, v) = bass_unit_with_inverse(&g, &spec).unwrap();
        let one_g = GroupAlgebraElement::from_integer_terms(&g, &[(0, 1), (1, 1)]);
        let all = GroupAlgebraElement::from_integer_terms(&g, &(0..7).map(|i| (i, 1)).collect::<Vec<_>>());
        assert_eq!(u, &one_g.pow(3) - &all);
        assert!(u.is_integral() && v.is_integral());
        assert!(u.is_unit_with_inverse(&v));
    }

    #[test]
    fn rejects_bad_exponent() {
        let g = FiniteGroup::cyclic(7).unwrap();
        assert!(BassUnitSpec::new(&g, 1, 2, 2).is_err());
    }

    #[test]
    fn n_minus_one_is_minus_g_inverse_power() {
        let g = FiniteGroup::cyclic(9).unwrap();
        for m in 1..5u64 {
            let u = bass_unit(&g, &BassUnitSpec::new(&g, 1, 8, 2 * m).unwrap()).unwrap();
            let minus_g = GroupAlgebraElement::from_terms(&g, [(1, rat(-1, 1))]);
            let expected = minus_g.inverse().unwrap().pow(2 * m);
            assert_eq!(u, expected);
        }
    }

    #[test]
    fn n_gm_values() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let whole = Subgroup::whole(&c2);
        assert_eq!(n_gm(&whole, &Subgroup::trivial(&c2)).unwrap(), 1);
        // b(1, 1, ·) is the only Bass unit of C_1, so n_{C2,C2} = 1.
        assert_eq!(n_gm(&whole, &whole).unwrap(), 1);
        let g = FiniteGroup::metacyclic(MetacyclicPresentation::new(7, 3, 0, 2).unwrap()).unwrap();
        let a = Subgroup::generated(&g, &[1]).unwrap();
        assert_eq!(n_gm(&Subgroup::whole(&g), &a).unwrap(), 3);
    }

    #[test]
    fn generalized_unit_in_c7_c3() {
        let g = FiniteGroup::metacyclic(MetacyclicPresentation::new(7, 3, 0, 2).unwrap()).unwrap();
        let a = Subgroup::generated(&g, &[1]).unwrap();
        let n = n_gm(&Subgroup::whole(&g), &a).unwrap();
        let b = g.ab(0, 1).unwrap();
        let spec = GeneralizedBassSpec { g: b, normal: a.clone(), k: 2, m: 2, n_gm: n };
        let (u, ui) = generalized_bass_unit(&spec).unwrap();
        assert!(u.is_integral() && u.is_unit_with_inverse(&ui));
        let bad = GeneralizedBassSpec { n_gm: 1, ..spec };
        assert!(generalized_bass_unit(&bad).is_err());
        // g inside M gives the trivial unit.
        let inside = GeneralizedBassSpec { g: 1, normal: a, k: 1, m: 3, n_gm: n };
        assert!(generalized_bass_unit(&inside).unwrap().0.is_one());
    }

    #[test]
    fn trivial_m_reduces_to_ordinary_bass_unit() {
        let g = FiniteGroup::cyclic(5).unwrap();
        let spec = GeneralizedBassSpec { g: 1, normal: Subgroup::trivial(&g), k: 2, m: 4, n_gm: 1 };
        let (u, _) = generalized_bass_unit(&spec).unwrap();
        assert_eq!(u, bass_unit(&g, &BassUnitSpec::new(&g, 1, 2, 4).unwrap()).unwrap());
    }
}
