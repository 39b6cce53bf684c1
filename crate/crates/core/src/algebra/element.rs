use crate::error::{Error, Result};
use crate::exactnum::rational::{self, Rational};
use crate::group::{Group, Subgroup};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// An element of ℚG as a sparse map from element index to nonzero coefficient.
///
/// Arithmetic operators panic when the operands live in different groups;
/// the `checked_*` methods report that case as an error instead.
#[derive(Clone)]
pub struct GroupAlgebraElement {
    group: Group,
    coeffs: BTreeMap<usize, Rational>,
}

impl PartialEq for GroupAlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.coeffs == other.coeffs
    }
}

impl Eq for GroupAlgebraElement {}

impl fmt::Debug for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl GroupAlgebraElement {
    pub fn zero(group: &Group) -> Self {
        GroupAlgebraElement { group: group.clone(), coeffs: BTreeMap::new() }
    }

    pub fn one(group: &Group) -> Self {
        Self::basis(group, 0)
    }

    /// The group element `x` viewed in ℚG.
    pub fn basis(group: &Group, x: usize) -> Self {
        Self::from_terms(group, [(x, Rational::one())])
    }

    pub fn from_terms(group: &Group, terms: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut e = Self::zero(group);
        for (x, c) in terms {
            assert!(x < group.size(), "element index out of range");
            e.add_term(x, &c);
        }
        e
    }

    pub fn from_integer_terms(group: &Group, terms: &[(usize, i64)]) -> Self {
        Self::from_terms(group, terms.iter().map(|&(x, c)| (x, Rational::from_integer(c.into()))))
    }

    fn add_term(&mut self, x: usize, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(x).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&x);
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn coeff(&self, x: usize) -> Rational {
        self.coeffs.get(&x).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().map(|(x, c)| (*x, c))
    }

    pub fn support(&self) -> Vec<usize> {
        self.coeffs.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(One::is_one)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (x, c) in &other.coeffs {
            out.add_term(*x, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    fn neg_ref(&self) -> Self {
        GroupAlgebraElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|(x, c)| (*x, -c)).collect(),
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero(&self.group);
        }
        GroupAlgebraElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|(x, c)| (*x, c * q)).collect(),
        }
    }

    /// Integer numerators over the least common denominator.
    fn integral_parts(&self) -> (Vec<(usize, BigInt)>, BigInt) {
        let den = rational::common_denominator(self.coeffs.values());
        let v = self
            .coeffs
            .iter()
            .map(|(x, c)| (*x, c.numer() * (&den / c.denom())))
            .collect();
        (v, den)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let g = &self.group;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(g));
        }
        let (a, da) = self.integral_parts();
        let (b, db) = other.integral_parts();
        let den = da * db;
        let small = |v: &[(usize, BigInt)]| v.iter().all(|(_, c)| c.bits() < 53);
        let mut coeffs = BTreeMap::new();
        if small(&a) && small(&b) {
            let mut acc = vec![0i128; g.size()];
            let mut hit = vec![false; g.size()];
            let bs: Vec<(usize, i128)> = b.iter().map(|(y, c)| (*y, c.to_i128().expect("small"))).collect();
            for (x, c) in &a {
                let c = c.to_i128().expect("small");
                for (y, d) in &bs {
                    let z = g.mul(*x, *y);
                    acc[z] += c * d;
                    hit[z] = true;
                }
            }
            for (z, v) in acc.into_iter().enumerate() {
                if hit[z] && v != 0 {
                    coeffs.insert(z, Rational::new(BigInt::from(v), den.clone()));
                }
            }
        } else {
            let mut acc: Vec<BigInt> = vec![BigInt::zero(); g.size()];
            for (x, c) in &a {
                for (y, d) in &b {
                    acc[g.mul(*x, *y)] += c * d;
                }
            }
            for (z, v) in acc.into_iter().enumerate() {
                if !v.is_zero() {
                    coeffs.insert(z, Rational::new(v, den.clone()));
                }
            }
        }
        Ok(GroupAlgebraElement { group: g.clone(), coeffs })
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one(&self.group);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Image under h ↦ g⁻¹ h g.
    pub fn conjugate_by(&self, g: usize) -> Self {
        GroupAlgebraElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|(x, c)| (self.group.conj(*x, g), c.clone())).collect(),
        }
    }

    /// Image under the antipode g ↦ g⁻¹.
    pub fn antipode(&self) -> Self {
        GroupAlgebraElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|(x, c)| (self.group.inv(*x), c.clone())).collect(),
        }
    }

    /// Coefficient of the identity.
    pub fn trace(&self) -> Rational {
        self.coeff(0)
    }

    pub fn augmentation(&self) -> Rational {
        self.coeffs.values().sum()
    }

    pub fn is_supported_on(&self, s: &Subgroup) -> bool {
        self.coeffs.keys().all(|&x| s.contains(x))
    }

    /// Commutes with every group generator.
    pub fn is_central(&self) -> bool {
        self.group.generators().iter().all(|&g| self.conjugate_by(g) == *self)
    }

    pub fn is_idempotent(&self) -> bool {
        &(self * self) == self
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.denom().is_one())
    }

    /// Exact check of x·y = y·x = 1.
    pub fn is_unit_with_inverse(&self, y: &Self) -> bool {
        self.check(y).is_ok() && (self * y).is_one() && (y * self).is_one()
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.coeffs.values().map(|c| c.numer().abs().bits().max(c.denom().bits())).max().unwrap_or(0)
    }

    /// Two-sided inverse via the left regular representation, or `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        let g = &self.group;
        let n = g.size();
        // Column y of the matrix is self·y; solve for the coefficients of the inverse.
        let mut m = vec![vec![Rational::zero(); n]; n];
        for y in 0..n {
            for (x, c) in &self.coeffs {
                m[g.mul(*x, y)][y] += c;
            }
        }
        let mut rhs = vec![Rational::zero(); n];
        rhs[0] = Rational::one();
        let b: Vec<Vec<Rational>> = rhs.into_iter().map(|x| vec![x]).collect();
        let sol = crate::exactnum::linalg::solve_square(&m, &b).ok()?;
        let inv = Self::from_terms(g, sol.into_iter().enumerate().map(|(i, mut r)| (i, r.remove(0))));
        self.is_unit_with_inverse(&inv).then_some(inv)
    }

    pub fn to_json(&self, group_ref: &str) -> ElementJson {
        ElementJson {
            group_ref: group_ref.to_string(),
            terms: self
                .coeffs
                .iter()
                .map(|(x, c)| TermJson { elem_index: *x, coeff: c.clone() })
                .collect(),
        }
    }

    pub fn from_json(group: &Group, j: &ElementJson) -> Result<Self> {
        let mut e = Self::zero(group);
        for t in &j.terms {
            if t.elem_index >= group.size() {
                return Err(Error::validation(format!("element index {} out of range", t.elem_index)));
            }
            e.add_term(t.elem_index, &t.coeff);
        }
        Ok(e)
    }
}

/// JSON form `{group_ref, terms:[{elem_index, coeff:"p/q"}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementJson {
    pub group_ref: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub elem_index: usize,
    #[serde(with = "rational::as_string")]
    pub coeff: Rational,
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (x, c) in &self.coeffs {
            let neg = c.is_negative();
            let mag = rational::to_string(&c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let label = self.group.label(*x);
            match (label == "1", c.abs().is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{label}")?,
                (false, false) => write!(f, "{mag}*{label}")?,
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl std::ops::$tr<&GroupAlgebraElement> for &GroupAlgebraElement {
            type Output = GroupAlgebraElement;
            fn $m(self, rhs: &GroupAlgebraElement) -> GroupAlgebraElement {
                self.$checked(rhs).expect("parent group mismatch")
            }
        }
        impl std::ops::$tr<GroupAlgebraElement> for GroupAlgebraElement {
            type Output = GroupAlgebraElement;
            fn $m(self, rhs: GroupAlgebraElement) -> GroupAlgebraElement {
                self.$checked(&rhs).expect("parent group mismatch")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn neg(self) -> GroupAlgebraElement {
        self.neg_ref()
    }
}

impl std::ops::Neg for GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn neg(self) -> GroupAlgebraElement {
        self.neg_ref()
    }
}
