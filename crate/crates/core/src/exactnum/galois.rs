//! Galois automorphisms of ℚ(ζ_n) and fixed subfields via Gaussian periods.

use super::cyclotomic::CyclotomicNumber;
use super::linalg::rank;
use super::numtheory::{euler_phi, gcd, generated_unit_subgroup};
use super::rational::Rational;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// The automorphism ζ_n ↦ ζ_n^r.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaloisAutomorphism {
    order: u64,
    exponent: u64,
}

impl GaloisAutomorphism {
    pub fn new(order: u64, exponent: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::validation("order must be positive"));
        }
        let r = exponent.rem_euclid(order as i64) as u64;
        if order > 1 && gcd(r, order) != 1 {
            return Err(Error::validation(format!("exponent {exponent} is not a unit modulo {order}")));
        }
        Ok(GaloisAutomorphism { order, exponent: r })
    }

    pub fn identity(order: u64) -> Self {
        GaloisAutomorphism { order, exponent: 1 % order }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::validation("composing automorphisms of different fields"));
        }
        Ok(GaloisAutomorphism {
            order: self.order,
            exponent: self.exponent * other.exponent % self.order,
        })
    }

    pub fn apply(&self, a: &CyclotomicNumber) -> Result<CyclotomicNumber> {
        let a = if a.order() as u64 == self.order {
            a.clone()
        } else {
            a.embed(self.order as usize)?
        };
        a.galois(self.exponent as i64)
    }
}

pub fn galois_apply(s: &GaloisAutomorphism, a: &CyclotomicNumber) -> Result<CyclotomicNumber> {
    s.apply(a)
}

/// A ℚ-basis of the subfield of ℚ(ζ_n) fixed by a subgroup A ≤ (ℤ/n)^×.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixedFieldBasis {
    pub order: u64,
    pub subgroup: Vec<u64>,
    pub periods: Vec<CyclotomicNumber>,
}

impl FixedFieldBasis {
    pub fn degree(&self) -> usize {
        self.periods.len()
    }

    /// Whether `x` lies in the fixed field.
    pub fn contains(&self, x: &CyclotomicNumber) -> Result<bool> {
        for &a in &self.subgroup {
            if GaloisAutomorphism::new(self.order, a as i64)?.apply(x)? != *x {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Gaussian-period basis of ℚ(ζ_n)^A.
///
/// Orbit sums of ζ^e over unit exponents e come first (ordered by smallest
/// exponent); orbits of non-unit exponents follow and are only used when
/// the unit orbits do not already span, which happens for non-squarefree n.
pub fn fixed_field(n: u64, a: &[u64]) -> Result<FixedFieldBasis> {
    if n == 0 {
        return Err(Error::validation("order must be positive"));
    }
    let set: BTreeSet<u64> = a.iter().map(|x| x % n).collect();
    for &x in &set {
        if n > 1 && gcd(x, n) != 1 {
            return Err(Error::validation(format!("{x} is not a unit modulo {n}")));
        }
    }
    let closure = generated_unit_subgroup(&set.iter().copied().collect::<Vec<_>>(), n);
    if closure != set.iter().copied().collect::<Vec<_>>() {
        return Err(Error::validation("exponent set is not multiplicatively closed"));
    }
    let subgroup: Vec<u64> = closure;
    let target = (euler_phi(n) as usize) / subgroup.len();

    let mut seen = vec![false; n as usize];
    let mut unit_orbits = Vec::new();
    let mut other_orbits = Vec::new();
    for e in 0..n {
        if seen[e as usize] {
            continue;
        }
        let orbit: BTreeSet<u64> = subgroup.iter().map(|&s| e * s % n).collect();
        for &x in &orbit {
            seen[x as usize] = true;
        }
        if gcd(e, n) == 1 || n == 1 {
            unit_orbits.push(orbit);
        } else {
            other_orbits.push(orbit);
        }
    }
    let mut periods: Vec<CyclotomicNumber> = Vec::new();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for orbit in unit_orbits.into_iter().chain(other_orbits) {
        if periods.len() == target {
            break;
        }
        let terms: Vec<(i64, Rational)> = orbit.iter().map(|&x| (x as i64, Rational::from_integer(1.into()))).collect();
        let p = CyclotomicNumber::from_terms(n as usize, &terms);
        let mut trial = rows.clone();
        trial.push(p.coords());
        if rank(&trial)? == trial.len() {
            rows = trial;
            periods.push(p);
        }
    }
    if periods.len() != target {
        return Err(Error::consistency("Gaussian periods failed to span the fixed field"));
    }
    Ok(FixedFieldBasis { order: n, subgroup, periods })
}
