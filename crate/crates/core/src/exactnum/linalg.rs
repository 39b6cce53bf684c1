//! Exact linear algebra over ℚ and ℚ(ζ_n).
//!
//! Elimination always pivots on the first nonzero entry in column order, so
//! results (and hence certificates) are reproducible.

use super::cyclotomic::CyclotomicNumber;
use super::rational::Rational;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt::Debug;

/// Field operations needed by the generic eliminators.
pub trait Scalar: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_s(&self) -> bool;
    fn add_s(&self, o: &Self) -> Self;
    fn sub_s(&self, o: &Self) -> Self;
    fn mul_s(&self, o: &Self) -> Self;
    fn inv_s(&self) -> Result<Self>;
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_s(&self) -> bool {
        self.is_zero()
    }
    fn add_s(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_s(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_s(&self, o: &Self) -> Self {
        self * o
    }
    fn inv_s(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::ZeroDivision)
        } else {
            Ok(self.recip())
        }
    }
}

impl Scalar for CyclotomicNumber {
    fn zero_like(&self) -> Self {
        CyclotomicNumber::zero(self.order())
    }
    fn one_like(&self) -> Self {
        CyclotomicNumber::one(self.order())
    }
    fn is_zero_s(&self) -> bool {
        self.is_zero()
    }
    fn add_s(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_s(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_s(&self, o: &Self) -> Self {
        self * o
    }
    fn inv_s(&self) -> Result<Self> {
        self.inv()
    }
}

/// Solves the square integer system `m x = rhs` by fraction-free (Bareiss)
/// elimination followed by exact back substitution.
pub fn solve_integer_system(m: &[Vec<BigInt>], rhs: &[BigInt]) -> Result<Vec<Rational>> {
    let n = m.len();
    if rhs.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(Error::validation("integer system must be square"));
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero()).ok_or(Error::Singular { pivot_col: k })?;
        a.swap(k, p);
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut s = Rational::from_integer(a[i][n].clone());
        for j in i + 1..n {
            s -= &x[j] * &a[i][j];
        }
        x[i] = s / Rational::from_integer(a[i][i].clone());
    }
    Ok(x)
}

/// Row echelon reduction of `[a | b]` where `b` has any number of columns.
/// Returns the pivot columns of `a`; `a` and `b` are reduced in place to RREF.
fn rref<T: Scalar>(a: &mut [Vec<T>], b: &mut [Vec<T>]) -> Result<Vec<usize>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero_s()) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][c].inv_s()?;
        for x in a[r].iter_mut().chain(b[r].iter_mut()) {
            *x = x.mul_s(&inv);
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero_s() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..cols {
                if !a[r][j].is_zero_s() {
                    a[i][j] = a[i][j].sub_s(&f.mul_s(&a[r][j]));
                }
            }
            for j in 0..b[i].len() {
                if !b[r][j].is_zero_s() {
                    b[i][j] = b[i][j].sub_s(&f.mul_s(&b[r][j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

/// Solves `a X = b` for a square nonsingular `a`.
pub fn solve_square<T: Scalar>(a: &[Vec<T>], b: &[Vec<T>]) -> Result<Vec<Vec<T>>> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) || b.len() != n {
        return Err(Error::validation("system must be square with matching right-hand side"));
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    let pivots = rref(&mut a, &mut b)?;
    if let Some(c) = (0..n).find(|c| pivots.get(*c) != Some(c)) {
        return Err(Error::Singular { pivot_col: c });
    }
    Ok(b)
}

/// Solves a possibly rectangular consistent system `a x = b` with full column
/// rank, returning the unique solution. Inconsistency or rank deficiency is an error.
pub fn solve_unique<T: Scalar>(a: &[Vec<T>], b: &[T]) -> Result<Vec<T>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut a = a.to_vec();
    let mut bb: Vec<Vec<T>> = b.iter().map(|x| vec![x.clone()]).collect();
    let pivots = rref(&mut a, &mut bb)?;
    if let Some(c) = (0..cols).find(|c| pivots.get(*c) != Some(c)) {
        return Err(Error::Singular { pivot_col: c });
    }
    if bb[cols..].iter().any(|r| !r[0].is_zero_s()) {
        return Err(Error::consistency("linear system is inconsistent"));
    }
    Ok(bb.into_iter().take(cols).map(|mut r| r.remove(0)).collect())
}

pub fn rank<T: Scalar>(a: &[Vec<T>]) -> Result<usize> {
    let mut a = a.to_vec();
    let mut b: Vec<Vec<T>> = vec![Vec::new(); a.len()];
    Ok(rref(&mut a, &mut b)?.len())
}

pub fn determinant_is_zero<T: Scalar>(a: &[Vec<T>]) -> Result<bool> {
    Ok(rank(a)? < a.len())
}

/// Dense matrix over a single cyclotomic field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    order: usize,
    entries: Vec<Vec<CyclotomicNumber>>,
}

impl FieldMatrix {
    pub fn new(entries: Vec<Vec<CyclotomicNumber>>) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::validation("matrix must be nonempty and rectangular"));
        }
        let order = entries[0][0].order();
        if entries.iter().flatten().any(|e| e.order() != order) {
            return Err(Error::validation("matrix entries must share one cyclotomic order"));
        }
        Ok(FieldMatrix { rows, cols, order, entries })
    }

    pub fn zero(rows: usize, cols: usize, order: usize) -> Self {
        FieldMatrix { rows, cols, order, entries: vec![vec![CyclotomicNumber::zero(order); cols]; rows] }
    }

    pub fn identity(n: usize, order: usize) -> Self {
        let mut m = Self::zero(n, n, order);
        for i in 0..n {
            m.entries[i][i] = CyclotomicNumber::one(order);
        }
        m
    }

    pub fn from_rationals(rows: &[Vec<Rational>], order: usize) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|q| CyclotomicNumber::from_rational(order, q)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &CyclotomicNumber {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CyclotomicNumber) -> Result<()> {
        if v.order() != self.order {
            return Err(Error::validation("entry order mismatch"));
        }
        self.entries[i][j] = v;
        Ok(())
    }

    pub fn entries(&self) -> &[Vec<CyclotomicNumber>] {
        &self.entries
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows || self.order != o.order {
            return Err(Error::validation("matrix shape or order mismatch in product"));
        }
        let mut out = Self::zero(self.rows, o.cols, self.order);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o.entries[k][j];
                    if !b.is_zero() {
                        out.entries[i][j] = &out.entries[i][j] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip(&self, o: &Self, f: impl Fn(&CyclotomicNumber, &CyclotomicNumber) -> CyclotomicNumber) -> Result<Self> {
        if self.rows != o.rows || self.cols != o.cols || self.order != o.order {
            return Err(Error::validation("matrix shape or order mismatch"));
        }
        let entries = self
            .entries
            .iter()
            .zip(&o.entries)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a, b)).collect())
            .collect();
        Ok(FieldMatrix { rows: self.rows, cols: self.cols, order: self.order, entries })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a - b)
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> Self {
        let mut m = self.clone();
        for e in m.entries.iter_mut().flatten() {
            *e = &*e * c;
        }
        m
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::validation("only square matrices are invertible"));
        }
        let id = Self::identity(self.rows, self.order);
        let x = solve_square(&self.entries, &id.entries)?;
        Self::new(x)
    }

    pub fn solve(&self, v: &[CyclotomicNumber]) -> Result<Vec<CyclotomicNumber>> {
        if self.rows != self.cols || v.len() != self.rows {
            return Err(Error::validation("solve needs a square matrix and matching vector"));
        }
        let b: Vec<Vec<CyclotomicNumber>> = v.iter().map(|x| vec![x.clone()]).collect();
        Ok(solve_square(&self.entries, &b)?.into_iter().map(|mut r| r.remove(0)).collect())
    }

    pub fn apply(&self, v: &[CyclotomicNumber]) -> Vec<CyclotomicNumber> {
        self.entries
            .iter()
            .map(|r| r.iter().zip(v).fold(CyclotomicNumber::zero(self.order), |acc, (a, b)| &acc + &(a * b)))
            .collect()
    }

    pub fn trace(&self) -> CyclotomicNumber {
        (0..self.rows.min(self.cols)).fold(CyclotomicNumber::zero(self.order), |acc, i| &acc + &self.entries[i][i])
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows, self.order)
    }

    /// Unitriangular with nonzero entries only on or above (`upper`) or below the diagonal.
    pub fn is_unitriangular(&self, upper: bool) -> bool {
        if self.rows != self.cols {
            return false;
        }
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                let e = &self.entries[i][j];
                if i == j {
                    e.is_one()
                } else if (j > i) == upper {
                    true
                } else {
                    e.is_zero()
                }
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::rat;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn bareiss_solves_and_detects_singularity() {
        let m = vec![vec![bi(2), bi(1)], vec![bi(1), bi(3)]];
        let x = solve_integer_system(&m, &[bi(1), bi(2)]).unwrap();
        assert_eq!(x, vec![rat(1, 5), rat(3, 5)]);
        let s = vec![vec![bi(1), bi(1)], vec![bi(1), bi(1)]];
        assert!(matches!(solve_integer_system(&s, &[bi(1), bi(1)]), Err(Error::Singular { pivot_col: 1 })));
    }

    #[test]
    fn field_matrix_solve_examples() {
        let z = CyclotomicNumber::zeta(3);
        let one = CyclotomicNumber::one(3);
        let zero = CyclotomicNumber::zero(3);
        let m = FieldMatrix::new(vec![vec![z.clone(), zero.clone()], vec![zero, one.clone()]]).unwrap();
        let x = m.solve(&[one.clone(), one.clone()]).unwrap();
        assert_eq!(x, vec![z.pow(2).unwrap(), one.clone()]);
        let id = FieldMatrix::identity(2, 3);
        let v = vec![z.clone(), &one + &z];
        assert_eq!(id.solve(&v).unwrap(), v);
        let ones = FieldMatrix::new(vec![vec![one.clone(), one.clone()], vec![one.clone(), one]]).unwrap();
        assert!(matches!(ones.solve(&v), Err(Error::Singular { pivot_col: 1 })));
    }

    #[test]
    fn rectangular_unique_solve() {
        let a = vec![vec![rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(2, 1)], vec![rat(1, 1), rat(1, 1)]];
        let x = solve_unique(&a, &[rat(1, 1), rat(4, 1), rat(3, 1)]).unwrap();
        assert_eq!(x, vec![rat(1, 1), rat(2, 1)]);
        assert!(solve_unique(&a, &[rat(1, 1), rat(4, 1), rat(4, 1)]).is_err());
    }
}
