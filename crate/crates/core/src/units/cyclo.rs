use crate::error::{Error, Result};
use crate::exactnum::numtheory::{euler_phi, gcd, generated_unit_subgroup, units_mod};
use crate::exactnum::CyclotomicNumber;

/// η_k(ζ_n^j) = 1 + z + ⋯ + z^{k'−1} with z = ζ_n^j and k' = k mod |z|.
///
/// Returns 1 when z = 1.
pub fn eta(k: i64, n: usize, j: i64) -> Result<CyclotomicNumber> {
    if n == 0 {
        return Err(Error::validation("root of unity order must be positive"));
    }
    let jj = j.rem_euclid(n as i64) as u64;
    let d = n as u64 / gcd(jj, n as u64).max(1);
    let d = if jj == 0 { 1 } else { d };
    if d == 1 {
        return Ok(CyclotomicNumber::one(n));
    }
    let kk = k.rem_euclid(d as i64) as u64;
    if gcd(kk, d) != 1 {
        return Err(Error::validation(format!("k = {k} is not coprime to the order {d} of the root of unity")));
    }
    let terms: Vec<(i64, crate::exactnum::Rational)> =
        (0..kk as i64).map(|i| (i * j, crate::exactnum::rat(1, 1))).collect();
    Ok(CyclotomicNumber::from_terms(n, &terms))
}

/// Exponent j with z = ζ_n^j, n = z.order().
pub fn root_exponent(z: &CyclotomicNumber) -> Option<i64> {
    let n = z.order();
    (0..n as i64).find(|&j| CyclotomicNumber::zeta_pow(n, j) == *z)
}

/// The cyclotomic unit η_k(z) for a root of unity z given as a field element.
pub fn cyclotomic_unit(k: i64, z: &CyclotomicNumber) -> Result<CyclotomicNumber> {
    let j = root_exponent(z).ok_or_else(|| Error::validation("argument is not a power of the primitive root"))?;
    eta(k, z.order(), j)
}

/// π_A(u) = ∏_{σ∈A} σ(u), where A is the subgroup of 𝒰(ℤ/n) generated by `a`
/// and n is the order of the field of u.
pub fn pi_norm(a: &[u64], u: &CyclotomicNumber) -> Result<CyclotomicNumber> {
    let n = u.order() as u64;
    let group = generated_unit_subgroup(a, n);
    if group.iter().any(|&s| gcd(s, n) != 1) && n > 1 {
        return Err(Error::validation("automorphism exponents must be units"));
    }
    let mut acc = CyclotomicNumber::one(u.order());
    for s in group {
        acc = &acc * &u.galois(s as i64)?;
    }
    Ok(acc)
}

/// Smallest positive residues representing 𝒰(ℤ/n) modulo ⟨A, −1⟩, starting with 1.
pub fn norm_representatives(n: u64, a: &[u64]) -> Vec<u64> {
    if n <= 2 {
        return vec![1];
    }
    let mut gens = a.to_vec();
    gens.push(n - 1);
    let sub = generated_unit_subgroup(&gens, n);
    let mut covered = std::collections::BTreeSet::new();
    let mut reps = Vec::new();
    for k in units_mod(n) {
        if covered.contains(&k) {
            continue;
        }
        reps.push(k);
        for &s in &sub {
            covered.insert((k as u128 * s as u128 % n as u128) as u64);
        }
    }
    reps
}

/// {π_A(η_k(ζ_{p^n})) : k ∈ I ∖ {1}}, a virtual basis of 𝒰(ℤ[ζ_{p^n}]^A).
pub fn norm_basis(p: u64, n: u32, a: &[u64]) -> Result<Vec<CyclotomicNumber>> {
    if !crate::exactnum::numtheory::is_prime(p) {
        return Err(Error::validation(format!("{p} is not prime")));
    }
    let pn = p.pow(n);
    let reps = norm_representatives(pn, a);
    let out = reps[1..]
        .iter()
        .map(|&k| pi_norm(a, &eta(k as i64, pn as usize, 1)?))
        .collect::<Result<Vec<_>>>()?;
    let mut gens = a.to_vec();
    gens.push(pn - 1);
    let expected = euler_phi(pn) as usize / generated_unit_subgroup(&gens, pn).len() - 1;
    debug_assert!(pn <= 2 || out.len() == expected);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_values() {
        assert!(eta(1, 9, 1).unwrap().is_one());
        assert!(eta(4, 6, 0).unwrap().is_one());
        let z = CyclotomicNumber::zeta(5);
        let lhs = eta(4, 5, 1).unwrap();
        let rhs = -(&CyclotomicNumber::zeta_pow(5, -1) * &eta(1, 5, 1).unwrap());
        assert_eq!(lhs, rhs);
        let prod = &cyclotomic_unit(2, &z).unwrap() * &eta(3, 5, 2).unwrap();
        assert_eq!(prod, eta(6, 5, 1).unwrap());
        assert!(prod.is_one());
        assert!(eta(5, 10, 1).is_err());
    }

    #[test]
    fn norms() {
        let u = eta(2, 5, 1).unwrap();
        assert_eq!(pi_norm(&[], &u).unwrap(), u);
        let full = pi_norm(&[2], &u).unwrap();
        assert!(full.as_rational().is_some());
        let f = pi_norm(&[2], &eta(3, 7, 1).unwrap()).unwrap();
        assert_eq!(f.galois(2).unwrap(), f);
        assert!(f.is_integral());
    }

    #[test]
    fn representative_sets() {
        assert_eq!(norm_representatives(5, &[]), vec![1, 2]);
        assert!(norm_basis(5, 1, &[2]).unwrap().is_empty());
        assert_eq!(norm_basis(5, 1, &[]).unwrap(), vec![eta(2, 5, 1).unwrap()]);
        assert!(norm_basis(7, 1, &[2]).unwrap().is_empty());
        assert_eq!(norm_representatives(31, &[2]).len(), 3);
        assert_eq!(norm_representatives(16, &[]), vec![1, 3, 5, 7]);
    }
}
