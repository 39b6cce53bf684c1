//! Complex embeddings of cyclotomic numbers in binary fixed point.
//!
//! Values are `mantissa / 2^bits`. Trigonometric tables come from Machin's
//! formula for π and Taylor series, all in exact integer arithmetic, so the
//! only error is truncation at the working precision.

use super::cyclotomic::CyclotomicNumber;
use super::galois::GaloisAutomorphism;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

pub const DEFAULT_PRECISION_BITS: u32 = 128;
const GUARD_BITS: u32 = 32;

/// A binary fixed-point real number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixed {
    pub mantissa: BigInt,
    pub bits: u32,
}

impl Fixed {
    pub fn to_f64(&self) -> f64 {
        let shift = self.mantissa.bits().saturating_sub(62);
        let top = (&self.mantissa >> shift).to_f64().unwrap_or(0.0);
        top * 2f64.powi(shift as i32 - self.bits as i32)
    }

    /// Natural log of the absolute value; `None` for zero.
    pub fn ln_abs(&self) -> Option<f64> {
        if self.mantissa.is_zero() {
            return None;
        }
        let m = self.mantissa.abs();
        let shift = m.bits().saturating_sub(62);
        let top = (&m >> shift).to_f64()?;
        Some(top.ln() + (shift as f64 - self.bits as f64) * std::f64::consts::LN_2)
    }
}

/// A complex value with fixed-point parts at a common precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexFixed {
    pub re: Fixed,
    pub im: Fixed,
}

impl ComplexFixed {
    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// ln |z|, computed from |z|² so no square root is needed.
    pub fn ln_abs(&self) -> Option<f64> {
        let sq = &self.re.mantissa * &self.re.mantissa + &self.im.mantissa * &self.im.mantissa;
        Fixed { mantissa: sq, bits: 2 * self.re.bits }.ln_abs().map(|l| l / 2.0)
    }
}

/// arctan(1/x) scaled by 2^bits.
fn atan_inv(x: u64, bits: u32) -> BigInt {
    let one = BigInt::from(1) << bits;
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = &one / &x;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / (2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

pub fn pi(bits: u32) -> BigInt {
    let w = bits + GUARD_BITS;
    let v = atan_inv(5, w) * 16 - atan_inv(239, w) * 4;
    v >> GUARD_BITS
}

/// (cos θ, sin θ) scaled by 2^bits for θ = 2π·num/den.
fn cos_sin(num: u64, den: u64, bits: u32) -> (BigInt, BigInt) {
    let w = bits + GUARD_BITS;
    let one = BigInt::from(1) << w;
    // Centre the angle in (-π, π].
    let mut n = (num % den) as i64;
    if 2 * n > den as i64 {
        n -= den as i64;
    }
    let theta = pi(w) * 2 * n / den as i64;
    let (mut c, mut s) = (BigInt::zero(), BigInt::zero());
    let mut term = one.clone();
    let mut k = 0u64;
    // term_k = θ^k / k!; even k feed cos, odd feed sin.
    loop {
        match k % 4 {
            0 => c += &term,
            1 => s += &term,
            2 => c -= &term,
            _ => s -= &term,
        }
        k += 1;
        term = ((&term * &theta) >> w) / k;
        if term.is_zero() {
            break;
        }
    }
    (c >> GUARD_BITS, s >> GUARD_BITS)
}

type Table = Rc<Vec<(BigInt, BigInt)>>;

thread_local! {
    static TABLES: RefCell<HashMap<(usize, u32), Table>> = RefCell::new(HashMap::new());
}

fn roots_table(n: usize, bits: u32) -> Table {
    TABLES.with(|t| {
        t.borrow_mut()
            .entry((n, bits))
            .or_insert_with(|| Rc::new((0..n as u64).map(|e| cos_sin(e, n as u64, bits)).collect()))
            .clone()
    })
}

/// Evaluates `a` under ζ ↦ exp(2πi·r/n).
///
/// The working precision is raised by the bit size of the coordinates so
/// that heavy cancellation in large units does not eat the requested bits.
pub fn complex_embed(a: &CyclotomicNumber, s: &GaloisAutomorphism, precision_bits: u32) -> Result<ComplexFixed> {
    if precision_bits < 53 {
        return Err(Error::validation("precision must be at least 53 bits"));
    }
    let a = if a.order() as u64 == s.order() { a.clone() } else { a.embed(s.order() as usize)? };
    let n = a.order();
    let extra = a.l1_norm_log2() as u32 + 64 - (a.degree() as u64).leading_zeros() + 8;
    let w = precision_bits + extra;
    let table = roots_table(n, w);
    let r = s.exponent() as usize;
    let (mut re, mut im) = (BigInt::zero(), BigInt::zero());
    for (i, c) in a.numerators().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (cs, sn) = &table[(i * r) % n];
        re += c * cs;
        im += c * sn;
    }
    let den = a.denominator();
    Ok(ComplexFixed {
        re: Fixed { mantissa: re / den, bits: w },
        im: Fixed { mantissa: im / den, bits: w },
    })
}
