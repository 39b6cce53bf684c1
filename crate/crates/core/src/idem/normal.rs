use crate::error::{Error, Result};
use crate::exactnum::linalg::determinant_is_zero;
use crate::exactnum::numtheory::{euler_phi, generated_unit_subgroup};
use crate::exactnum::{rat, CyclotomicNumber, Rational};

/// Cap on the number of {0, ±1} candidates tried after ζ and 1 + ζ.
pub const NORMAL_SEARCH_CAP: usize = 100_000;

/// A normal element w of ℚ(ζ_k) over the fixed field of `autos`, with the
/// conjugates σ(w) listed in the order of `basis_order`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalBasisData {
    pub k: usize,
    pub w: CyclotomicNumber,
    /// Exponents s with σ(ζ_k) = ζ_k^s, one per basis vector.
    pub basis_order: Vec<u64>,
    pub basis: Vec<CyclotomicNumber>,
}

impl NormalBasisData {
    pub fn new(k: usize, w: CyclotomicNumber, basis_order: Vec<u64>) -> Result<Self> {
        let basis = basis_order.iter().map(|&s| w.galois(s as i64)).collect::<Result<Vec<_>>>()?;
        if !is_normal(k, &w, &basis_order)? {
            return Err(Error::validation("element does not generate a normal basis"));
        }
        Ok(NormalBasisData { k, w, basis_order, basis })
    }

    pub fn degree(&self) -> usize {
        self.basis.len()
    }
}

/// det[σ_i σ_j (w)] ≠ 0.
pub fn is_normal(k: usize, w: &CyclotomicNumber, autos: &[u64]) -> Result<bool> {
    let m: Vec<Vec<CyclotomicNumber>> = autos
        .iter()
        .map(|&a| {
            autos
                .iter()
                .map(|&c| w.galois((a * c % k.max(1) as u64) as i64))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(!determinant_is_zero(&m)?)
}

/// Deterministic search: ζ_k, then 1 + ζ_k, then nonzero vectors with
/// coordinates in {0, 1, −1} in lexicographic order.
pub fn find_normal_element(k: usize, autos: &[u64]) -> Result<CyclotomicNumber> {
    let group = generated_unit_subgroup(autos, k.max(1) as u64);
    if group.len() <= 1 {
        return Ok(CyclotomicNumber::one(k.max(1)));
    }
    let z = CyclotomicNumber::zeta(k);
    let one = CyclotomicNumber::one(k);
    for w in [z.clone(), &one + &z] {
        if is_normal(k, &w, &group)? {
            return Ok(w);
        }
    }
    let phi = euler_phi(k as u64) as usize;
    let digits = [Rational::from_integer(0.into()), rat(1, 1), rat(-1, 1)];
    let mut counter = vec![0usize; phi];
    for _ in 0..NORMAL_SEARCH_CAP {
        // Increment the base-3 counter, last coordinate fastest.
        let mut i = phi;
        loop {
            if i == 0 {
                return Err(Error::Capacity("normal element search exhausted".into()));
            }
            i -= 1;
            counter[i] += 1;
            if counter[i] < 3 {
                break;
            }
            counter[i] = 0;
        }
        let coords: Vec<Rational> = counter.iter().map(|&d| digits[d].clone()).collect();
        let w = CyclotomicNumber::from_coords(k, &coords)?;
        if is_normal(k, &w, &group)? {
            return Ok(w);
        }
    }
    Err(Error::Capacity("normal element search exceeded its candidate cap".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(find_normal_element(7, &[]).unwrap().is_one());
        assert_eq!(find_normal_element(3, &[2]).unwrap(), CyclotomicNumber::zeta(3));
        let w = find_normal_element(7, &[2]).unwrap();
        assert!(is_normal(7, &w, &[1, 2, 4]).unwrap());
        assert_eq!(w, CyclotomicNumber::zeta(7));
        // ζ_4 is not normal for ℚ(i)/ℚ since i + (−i) = 0, but 1 + i is.
        assert_eq!(find_normal_element(4, &[3]).unwrap(), &CyclotomicNumber::one(4) + &CyclotomicNumber::zeta(4));
    }

    #[test]
    fn rational_candidate_is_not_normal() {
        assert!(!is_normal(5, &CyclotomicNumber::one(5), &[1, 2, 3, 4]).unwrap());
    }
}
