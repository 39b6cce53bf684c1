use super::pair::{PairSummary, StrongShodaPair};
use crate::algebra::LinearCharacter;
use crate::error::{Error, Result};
use crate::exactnum::{fixed_field, CyclotomicNumber, FixedFieldBasis};
use crate::group::Subgroup;
use serde::Serialize;
use std::collections::BTreeMap;

/// Wedderburn data of the component ℚGe(G,H,K) ≅ M_n(ℚ(ζ_k) *_τ^α N/H).
#[derive(Clone, Debug)]
pub struct SimpleComponent {
    pub pair: StrongShodaPair,
    /// n = [G:N].
    pub matrix_degree: usize,
    /// k = [H:K].
    pub cyclotomic_order: usize,
    /// Section φ: representatives of N/H in N, the identity first.
    pub section: Vec<usize>,
    /// α_{φ(c)}(ζ_k) = ζ_k^{action[c]}.
    pub action: Vec<usize>,
    /// τ(c, d) = ζ_k^{twisting[c][d]}.
    pub twisting: Vec<Vec<usize>>,
    /// Coset index of φ(c)φ(d).
    pub coset_product: Vec<Vec<usize>>,
    pub twist_trivial: bool,
    pub center: FixedFieldBasis,
    pub character: LinearCharacter,
}

impl SimpleComponent {
    pub fn twist(&self, c: usize, d: usize) -> CyclotomicNumber {
        CyclotomicNumber::zeta_pow(self.cyclotomic_order, self.twisting[c][d] as i64)
    }

    /// Index of the N/H coset containing x ∈ N.
    pub fn coset_of(&self, x: usize) -> Option<usize> {
        let g = self.pair.group();
        self.section.iter().position(|&s| self.pair.h.contains(g.mul(g.inv(s), x)))
    }

    /// [F:ℚ] = φ(k)/[N:H].
    pub fn center_degree(&self) -> usize {
        self.center.degree()
    }

    /// Whether complex conjugation lies in the action image (F totally real).
    pub fn center_is_real(&self) -> bool {
        let k = self.cyclotomic_order;
        k <= 2 || self.action.contains(&(k - 1))
    }

    pub fn to_json(&self) -> ComponentJson {
        let g = self.pair.group();
        ComponentJson {
            pair: self.pair.summary(),
            degree: self.matrix_degree,
            k: self.cyclotomic_order,
            action: self
                .section
                .iter()
                .zip(&self.action)
                .map(|(&s, &i)| (g.label(s).to_string(), i))
                .collect(),
            twisting: self.twisting.clone(),
            twist_trivial: self.twist_trivial,
            center_periods: self.center.periods.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentJson {
    #[serde(flatten)]
    pub pair: PairSummary,
    pub degree: usize,
    pub k: usize,
    pub action: BTreeMap<String, usize>,
    pub twisting: Vec<Vec<usize>>,
    pub twist_trivial: bool,
    pub center_periods: Vec<CyclotomicNumber>,
}

fn build(pair: &StrongShodaPair, section: Vec<usize>) -> Result<SimpleComponent> {
    let g = pair.group();
    let k = pair.index;
    let ch = LinearCharacter::with_generator(&pair.h, &pair.k, pair.generator)?;
    let y = pair.generator;
    let coset = |x: usize| section.iter().position(|&s| pair.h.contains(g.mul(g.inv(s), x)));
    let mut action = Vec::with_capacity(section.len());
    for &s in &section {
        let i = ch
            .exponent_of(g.conj(y, s))
            .ok_or_else(|| Error::consistency("N does not normalize H"))?;
        action.push(i);
    }
    let c = section.len();
    let mut twisting = vec![vec![0; c]; c];
    let mut coset_product = vec![vec![0; c]; c];
    for a in 0..c {
        for b in 0..c {
            let prod = g.mul(section[a], section[b]);
            let d = coset(prod).ok_or_else(|| Error::consistency("section does not cover N/H"))?;
            coset_product[a][b] = d;
            let w = g.mul(g.inv(section[d]), prod);
            twisting[a][b] = ch.exponent_of(w).ok_or_else(|| Error::consistency("cocycle value outside H"))?;
        }
    }
    let image: Vec<u64> = action.iter().map(|&i| i as u64).collect();
    let center = fixed_field(k as u64, &image)?;
    let distinct: std::collections::BTreeSet<usize> = action.iter().map(|&i| i % k.max(1)).collect();
    if distinct.len() != action.len() && k > 1 {
        return Err(Error::consistency("action of N/H on H/K is not faithful"));
    }
    Ok(SimpleComponent {
        pair: pair.clone(),
        matrix_degree: pair.degree,
        cyclotomic_order: k,
        twist_trivial: twisting.iter().flatten().all(|&j| j == 0),
        section,
        action,
        twisting,
        coset_product,
        center,
        character: ch,
    })
}

/// Descriptor using the minimal-index section of N/H.
pub fn component_descriptor(pair: &StrongShodaPair) -> Result<SimpleComponent> {
    let section = pair.h.left_transversal(&pair.n)?;
    build(pair, section)
}

/// Searches sections φ (modulo K, identity fixed) for one with trivial twisting,
/// up to `max_sections` candidates. Falls back to the default section.
pub fn component_descriptor_searching(pair: &StrongShodaPair, max_sections: usize) -> Result<SimpleComponent> {
    let default = component_descriptor(pair)?;
    if default.twist_trivial {
        return Ok(default);
    }
    let g = pair.group();
    let k = pair.index;
    let y = pair.generator;
    let base = default.section.clone();
    let c = base.len();
    let total = (k as u128).checked_pow(c.saturating_sub(1) as u32).unwrap_or(u128::MAX);
    if total > max_sections as u128 {
        return Ok(default);
    }
    let mut digits = vec![0usize; c];
    loop {
        // Advance the mixed-radix counter over cosets 1..c.
        let mut pos = 1;
        while pos < c {
            digits[pos] += 1;
            if digits[pos] < k {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
        if pos >= c {
            return Ok(default);
        }
        let section: Vec<usize> = base
            .iter()
            .zip(&digits)
            .map(|(&s, &d)| g.mul(s, g.pow(y, d as i64)))
            .collect();
        let comp = build(pair, section)?;
        if comp.twist_trivial {
            return Ok(comp);
        }
    }
}

/// Sum of n²·[ℚ(ζ_k):ℚ]·|N/H| over components; equals |G| for a complete set.
pub fn total_dimension(components: &[SimpleComponent]) -> usize {
    components
        .iter()
        .map(|c| c.matrix_degree * c.matrix_degree * crate::exactnum::numtheory::euler_phi(c.cyclotomic_order as u64) as usize * c.section.len())
        .sum()
}

/// The transversal of N in G used to spread N-level data to G.
pub fn outer_transversal(pair: &StrongShodaPair) -> Vec<usize> {
    pair.n.right_transversal(&Subgroup::whole(pair.group())).expect("same parent")
}
