//! Exact arithmetic in ℚ(ζ_n), stored in the power basis modulo Φ_n.

use super::linalg::solve_integer_system;
use super::numtheory::{euler_phi, gcd, lcm, ramanujan_sum};
use super::rational::{self, Rational};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::borrow::Cow;
use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

/// Coefficients of Φ_n in increasing degree. Monic of degree φ(n).
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = divide_monic(&poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

fn divide_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dc) in den.iter().enumerate() {
            rem[i + j] -= &c * dc;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Per-order data: degree and the reductions of x^j modulo Φ_n for 0 ≤ j < n.
struct FieldData {
    degree: usize,
    reductions: Vec<Vec<(usize, i64)>>,
}

impl FieldData {
    fn new(order: usize) -> Self {
        let phi: Vec<i64> = cyclotomic_polynomial(order as u64)
            .iter()
            .map(|c| i64::try_from(c).expect("cyclotomic coefficient exceeds i64"))
            .collect();
        let degree = phi.len() - 1;
        let mut reductions = Vec::with_capacity(order.max(degree));
        let mut cur = vec![0i64; degree];
        for j in 0..order.max(1) {
            if j < degree {
                cur = vec![0; degree];
                cur[j] = 1;
            } else {
                let top = cur[degree - 1];
                let mut next = vec![0i64; degree];
                next[1..degree].copy_from_slice(&cur[..degree - 1]);
                for i in 0..degree {
                    next[i] = next[i]
                        .checked_sub(top.checked_mul(phi[i]).expect("reduction overflow"))
                        .expect("reduction overflow");
                }
                cur = next;
            }
            reductions.push(
                cur.iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0)
                    .map(|(i, c)| (i, *c))
                    .collect(),
            );
        }
        FieldData { degree, reductions }
    }
}

/// Reduces an exponent vector Σ v_j x^j (j < n) modulo Φ_n without normalising.
fn reduce_raw(order: usize, v: &[BigInt]) -> Vec<BigInt> {
    let f = field(order);
    let mut num = vec![BigInt::zero(); f.degree];
    for (j, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for &(i, r) in &f.reductions[j % order] {
            num[i] += c * r;
        }
    }
    num
}

thread_local! {
    static FIELDS: RefCell<HashMap<usize, Rc<FieldData>>> = RefCell::new(HashMap::new());
}

fn field(order: usize) -> Rc<FieldData> {
    FIELDS.with(|f| {
        f.borrow_mut()
            .entry(order)
            .or_insert_with(|| Rc::new(FieldData::new(order)))
            .clone()
    })
}

/// An element of ℚ(ζ_n).
///
/// Stored as integer numerators over a shared positive denominator, fully
/// reduced, so two equal field elements of the same order have identical
/// representations. Elements of different orders compare equal when they
/// agree after embedding into the compositum.
#[derive(Clone, Debug)]
pub struct CyclotomicNumber {
    order: usize,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CyclotomicNumber {
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let d = euler_phi(order as u64) as usize;
        CyclotomicNumber { order, num: vec![BigInt::zero(); d], den: BigInt::one() }
    }

    pub fn one(order: usize) -> Self {
        Self::from_rational(order, &Rational::one())
    }

    pub fn from_rational(order: usize, q: &Rational) -> Self {
        let mut z = Self::zero(order);
        z.num[0] = q.numer().clone();
        z.den = q.denom().clone();
        z.normalize();
        z
    }

    pub fn from_int(order: usize, n: i64) -> Self {
        Self::from_rational(order, &Rational::from_integer(n.into()))
    }

    /// ζ_n^e for any integer exponent.
    pub fn zeta_pow(order: usize, e: i64) -> Self {
        let mut v = vec![BigInt::zero(); order];
        v[e.rem_euclid(order as i64) as usize] = BigInt::one();
        Self::from_exponents(order, v, BigInt::one())
    }

    pub fn zeta(order: usize) -> Self {
        Self::zeta_pow(order, 1)
    }

    /// Σ c_e ζ^e for arbitrary (possibly repeated or negative) exponents.
    pub fn from_terms(order: usize, terms: &[(i64, Rational)]) -> Self {
        let den = rational::common_denominator(terms.iter().map(|(_, c)| c));
        let mut v = vec![BigInt::zero(); order];
        for (e, c) in terms {
            v[e.rem_euclid(order as i64) as usize] += c.numer() * (&den / c.denom());
        }
        Self::from_exponents(order, v, den)
    }

    /// Builds from power-basis coordinates; the length must be φ(order).
    pub fn from_coords(order: usize, coords: &[Rational]) -> Result<Self> {
        let d = euler_phi(order as u64) as usize;
        if coords.len() != d {
            return Err(Error::validation(format!(
                "expected {d} coordinates for order {order}, got {}",
                coords.len()
            )));
        }
        let den = rational::common_denominator(coords);
        let num = coords.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let mut z = CyclotomicNumber { order, num, den };
        z.normalize();
        Ok(z)
    }

    fn from_exponents(order: usize, v: Vec<BigInt>, den: BigInt) -> Self {
        let mut z = CyclotomicNumber { order, num: reduce_raw(order, &v), den };
        z.normalize();
        z
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        let g = self.num.iter().fold(self.den.clone(), |g, c| g.gcd(c));
        if !g.is_one() && !g.is_zero() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.num.len()
    }

    pub fn coords(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn coord(&self, i: usize) -> Rational {
        Rational::new(self.num[i].clone(), self.den.clone())
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// Algebraic integrality; the power basis is an integral basis of ℤ[ζ_n].
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// The rational value, when the element lies in ℚ.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num.iter().skip(1).all(Zero::is_zero) {
            Some(self.coord(0))
        } else {
            None
        }
    }

    /// Σ |coordinate|, used to size working precision for embeddings.
    pub fn l1_norm_log2(&self) -> u64 {
        let total: BigInt = self.num.iter().map(|c| c.abs()).sum();
        let bits = total.bits();
        bits.saturating_sub(self.den.bits().saturating_sub(1))
    }

    /// Re-expresses the element in ℚ(ζ_m) for a multiple m of the order.
    pub fn embed(&self, new_order: usize) -> Result<Self> {
        if !new_order.is_multiple_of(self.order) {
            return Err(Error::validation(format!(
                "cannot embed order {} into order {new_order}",
                self.order
            )));
        }
        if new_order == self.order {
            return Ok(self.clone());
        }
        let step = new_order / self.order;
        let mut v = vec![BigInt::zero(); new_order];
        for (i, c) in self.num.iter().enumerate() {
            v[i * step] = c.clone();
        }
        Ok(Self::from_exponents(new_order, v, self.den.clone()))
    }

    fn align<'a>(a: &'a Self, b: &'a Self) -> (Cow<'a, Self>, Cow<'a, Self>) {
        if a.order == b.order {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        let l = lcm(a.order as u64, b.order as u64) as usize;
        let lift = |x: &'a Self| -> Cow<'a, Self> {
            if x.order == l {
                Cow::Borrowed(x)
            } else {
                Cow::Owned(x.embed(l).expect("lcm is a multiple"))
            }
        };
        (lift(a), lift(b))
    }

    fn add_impl(&self, other: &Self, sign: i8) -> Self {
        let (a, b) = Self::align(self, other);
        let den = &a.den * &b.den / a.den.gcd(&b.den);
        let fa = &den / &a.den;
        let fb = &den / &b.den;
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| if sign > 0 { x * &fa + y * &fb } else { x * &fa - y * &fb })
            .collect();
        let mut z = CyclotomicNumber { order: a.order, num, den };
        z.normalize();
        z
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let (a, b) = Self::align(self, other);
        let n = a.order;
        if let Some(q) = a.as_rational() {
            return b.scale(&q);
        }
        if let Some(q) = b.as_rational() {
            return a.scale(&q);
        }
        let mut v = vec![BigInt::zero(); n];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    v[(i + j) % n] += x * y;
                }
            }
        }
        Self::from_exponents(n, v, &a.den * &b.den)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut z = CyclotomicNumber {
            order: self.order,
            num: self.num.iter().map(|c| c * q.numer()).collect(),
            den: &self.den * q.denom(),
        };
        z.normalize();
        z
    }

    /// Multiplicative inverse, solving the multiplication-matrix system exactly.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDivision);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(self.order, &q.recip()));
        }
        let n = self.order;
        let d = self.degree();
        // Column j holds the numerator coordinates of num·ζ^j.
        let mut m = vec![vec![BigInt::zero(); d]; d];
        for j in 0..d {
            let mut v = vec![BigInt::zero(); n];
            for (i, c) in self.num.iter().enumerate() {
                v[(i + j) % n] = c.clone();
            }
            for (i, c) in reduce_raw(n, &v).into_iter().enumerate() {
                m[i][j] = c;
            }
        }
        let mut rhs = vec![BigInt::zero(); d];
        rhs[0] = self.den.clone();
        let sol = solve_integer_system(&m, &rhs)?;
        Self::from_coords(n, &sol)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.order);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Image under ζ ↦ ζ^r.
    pub fn galois(&self, r: i64) -> Result<Self> {
        let n = self.order;
        let r = r.rem_euclid(n as i64) as usize;
        if gcd(r as u64, n as u64) != 1 && n > 1 {
            return Err(Error::validation(format!(
                "Galois exponent {r} is not coprime to {n}"
            )));
        }
        let mut v = vec![BigInt::zero(); n];
        for (i, c) in self.num.iter().enumerate() {
            v[(i * r) % n] += c;
        }
        Ok(Self::from_exponents(n, v, self.den.clone()))
    }

    /// Trace down to ℚ.
    pub fn trace(&self) -> Rational {
        let n = self.order as u64;
        let s: BigInt = self
            .num
            .iter()
            .enumerate()
            .map(|(i, c)| c * ramanujan_sum(n, i as u64))
            .sum();
        Rational::new(s, self.den.clone())
    }

    /// Absolute norm down to ℚ, as the product of all conjugates.
    pub fn norm(&self) -> Rational {
        let n = self.order as i64;
        let mut acc = Self::one(self.order);
        for r in 1..n.max(2) {
            if gcd(r as u64, n as u64) == 1 {
                acc = &acc * &self.galois(r).expect("coprime");
            }
        }
        acc.as_rational().expect("norm is rational")
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = Self::align(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CyclotomicNumber {}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl std::ops::$tr<&CyclotomicNumber> for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                $body(self, rhs)
            }
        }
        impl std::ops::$tr<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                $body(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &CyclotomicNumber, b| a.add_impl(b, 1));
forward_binop!(Sub, sub, |a: &CyclotomicNumber, b| a.add_impl(b, -1));
forward_binop!(Mul, mul, |a: &CyclotomicNumber, b| a.mul_impl(b));

impl std::ops::Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            order: self.order,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl std::ops::Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", rational::to_string(c))?,
                1 => write!(f, "{}*z{}", rational::to_string(c), self.order)?,
                _ => write!(f, "{}*z{}^{}", rational::to_string(c), self.order, i)?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycJson {
    order: usize,
    #[serde(with = "rational::vec_as_string")]
    coords: Vec<Rational>,
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycJson { order: self.order, coords: self.coords() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = CycJson::deserialize(d)?;
        if j.order == 0 {
            return Err(serde::de::Error::custom("order must be positive"));
        }
        CyclotomicNumber::from_coords(j.order, &j.coords).map_err(serde::de::Error::custom)
    }
}
