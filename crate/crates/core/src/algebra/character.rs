use super::GroupAlgebraElement;
use crate::error::{Error, Result};
use crate::exactnum::CyclotomicNumber;
use crate::group::Subgroup;

/// The linear character ρ_L of H with kernel L, extended to ℚH.
///
/// The generator coset of H/L is the least element index generating it, and
/// that element is sent to ζ_{[H:L]}.
#[derive(Clone, Debug)]
pub struct LinearCharacter {
    h: Subgroup,
    l: Subgroup,
    generator: usize,
    k: usize,
    exponent: Vec<Option<usize>>,
}

impl LinearCharacter {
    pub fn new(h: &Subgroup, l: &Subgroup) -> Result<Self> {
        let y = h
            .quotient_cyclic_generator(l)?
            .ok_or_else(|| Error::validation("H/L is not cyclic"))?;
        Self::with_generator(h, l, y)
    }

    pub fn with_generator(h: &Subgroup, l: &Subgroup, y: usize) -> Result<Self> {
        let g = h.group();
        let k = h.order() / l.order();
        let mut exponent = vec![None; g.size()];
        let mut cur = 0;
        for e in 0..k {
            for &x in l.elements() {
                let z = g.mul(cur, x);
                if exponent[z].is_some() {
                    return Err(Error::validation("element does not generate H/L"));
                }
                exponent[z] = Some(e);
            }
            cur = g.mul(cur, y);
        }
        Ok(LinearCharacter { h: h.clone(), l: l.clone(), generator: y, k, exponent })
    }

    pub fn generator(&self) -> usize {
        self.generator
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.l
    }

    pub fn domain(&self) -> &Subgroup {
        &self.h
    }

    /// Exponent e with x ∈ y^e L, for x in H.
    pub fn exponent_of(&self, x: usize) -> Option<usize> {
        self.exponent.get(x).copied().flatten()
    }

    pub fn apply(&self, x: &GroupAlgebraElement) -> Result<CyclotomicNumber> {
        let mut terms = Vec::with_capacity(x.support().len());
        for (g, c) in x.terms() {
            let e = self
                .exponent_of(g)
                .ok_or_else(|| Error::validation("element is not supported on H"))?;
            terms.push((e as i64, c.clone()));
        }
        Ok(CyclotomicNumber::from_terms(self.k, &terms))
    }
}

/// ρ_L(x) with the default generator choice.
pub fn rho_linear(h: &Subgroup, l: &Subgroup, x: &GroupAlgebraElement) -> Result<CyclotomicNumber> {
    LinearCharacter::new(h, l)?.apply(x)
}
