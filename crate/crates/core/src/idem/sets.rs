use super::psi::PsiMap;
use super::xe::compute_x_e;
use crate::algebra::{ElementJson, GroupAlgebraElement};
use crate::error::Result;
use crate::shoda::{component_descriptor, outer_transversal, PairSummary, SimpleComponent, StrongShodaPair};
use serde::Serialize;

/// A complete set of orthogonal primitive idempotents of ℚGe(G,H,K).
#[derive(Clone, Debug)]
pub struct IdempotentSet {
    pub pair: StrongShodaPair,
    pub x_e: GroupAlgebraElement,
    /// Right transversal of N in G.
    pub transversal: Vec<usize>,
    /// x_e^i T̂₁ ε x_e^{-i} for i < [N:H].
    pub local: Vec<GroupAlgebraElement>,
    /// t⁻¹ E_i t, ordered by t then i.
    pub idempotents: Vec<GroupAlgebraElement>,
    powers: Vec<GroupAlgebraElement>,
    hat: GroupAlgebraElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdempotentChecks {
    pub orthogonal: bool,
    pub sum_equals_e: bool,
    pub count: usize,
    pub expected_count: usize,
}

impl IdempotentChecks {
    pub fn all(&self) -> bool {
        self.orthogonal && self.sum_equals_e && self.count == self.expected_count
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdempotentSetJson {
    pub pair_id: PairSummary,
    pub x_e: ElementJson,
    pub idempotents: Vec<ElementJson>,
    pub checks: IdempotentChecks,
}

pub fn primitive_idempotents(pair: &StrongShodaPair) -> Result<IdempotentSet> {
    primitive_idempotents_of(&component_descriptor(pair)?)
}

pub fn primitive_idempotents_of(component: &SimpleComponent) -> Result<IdempotentSet> {
    let psi = PsiMap::new(component)?;
    let x_e = compute_x_e(&psi)?.x_e;
    let pair = component.pair.clone();
    let eps = pair.epsilon();
    let n = psi.degree();
    let mut powers = vec![eps.clone()];
    for i in 1..n {
        powers.push(&powers[i - 1] * &x_e);
    }
    let hat = &psi.section_hat() * &eps;
    let local: Vec<GroupAlgebraElement> =
        (0..n).map(|i| &(&powers[i] * &hat) * &powers[(n - i) % n]).collect();
    let transversal = outer_transversal(&pair);
    let mut idempotents = Vec::with_capacity(transversal.len() * n);
    for &t in &transversal {
        for e in &local {
            idempotents.push(e.conjugate_by(t));
        }
    }
    Ok(IdempotentSet { pair, x_e, transversal, local, idempotents, powers, hat })
}

impl IdempotentSet {
    pub fn local_degree(&self) -> usize {
        self.local.len()
    }

    /// E_{(t,i),(t',j)} = t⁻¹ x^i T̂₁ε x^{-j} t', indexed like `idempotents`.
    pub fn matrix_units(&self) -> Vec<Vec<GroupAlgebraElement>> {
        let g = self.pair.group();
        let n = self.local.len();
        let index: Vec<(usize, usize)> =
            self.transversal.iter().flat_map(|&t| (0..n).map(move |i| (t, i))).collect();
        let mid: Vec<Vec<GroupAlgebraElement>> = (0..n)
            .map(|i| (0..n).map(|j| &(&self.powers[i] * &self.hat) * &self.powers[(n - j) % n]).collect())
            .collect();
        index
            .iter()
            .map(|&(t, i)| {
                index
                    .iter()
                    .map(|&(s, j)| {
                        let left = GroupAlgebraElement::basis(g, g.inv(t));
                        let right = GroupAlgebraElement::basis(g, s);
                        &(&left * &mid[i][j]) * &right
                    })
                    .collect()
            })
            .collect()
    }

    pub fn checks(&self) -> IdempotentChecks {
        let g = self.pair.group();
        let mut orthogonal = true;
        'outer: for (i, x) in self.idempotents.iter().enumerate() {
            for (j, y) in self.idempotents.iter().enumerate() {
                let prod = x * y;
                let ok = if i == j { prod == *x } else { prod.is_zero() };
                if !ok {
                    orthogonal = false;
                    break 'outer;
                }
            }
        }
        let sum = self.idempotents.iter().fold(GroupAlgebraElement::zero(g), |acc, e| &acc + e);
        IdempotentChecks {
            orthogonal,
            sum_equals_e: sum == self.pair.e(),
            count: self.idempotents.len(),
            expected_count: g.size() / self.pair.h.order(),
        }
    }

    pub fn to_json(&self, group_ref: &str) -> IdempotentSetJson {
        IdempotentSetJson {
            pair_id: self.pair.summary(),
            x_e: self.x_e.to_json(group_ref),
            idempotents: self.idempotents.iter().map(|e| e.to_json(group_ref)).collect(),
            checks: self.checks(),
        }
    }
}

/// Checks that `units` multiply like matrix units and sum (on the diagonal) to e.
pub fn check_matrix_units(units: &[Vec<GroupAlgebraElement>], e: &GroupAlgebraElement) -> bool {
    let d = units.len();
    let mut diag = GroupAlgebraElement::zero(e.group());
    for i in 0..d {
        diag = &diag + &units[i][i];
        for j in 0..d {
            for k in 0..d {
                for l in 0..d {
                    let prod = &units[i][j] * &units[k][l];
                    let ok = if j == k { prod == units[i][l] } else { prod.is_zero() };
                    if !ok {
                        return false;
                    }
                }
            }
        }
    }
    diag == *e
}

/// Checks `samples` random relations E_ij E_kl = δ_jk E_il (half of them
/// with j = k) and the diagonal sum.
pub fn check_matrix_units_sampled(
    units: &[Vec<GroupAlgebraElement>],
    e: &GroupAlgebraElement,
    samples: usize,
    seed: u64,
) -> bool {
    use rand::{Rng, SeedableRng};
    let d = units.len();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for s in 0..samples {
        let (i, j, l) = (rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d));
        let k = if s % 2 == 0 { j } else { rng.gen_range(0..d) };
        let prod = &units[i][j] * &units[k][l];
        let ok = if j == k { prod == units[i][l] } else { prod.is_zero() };
        if !ok {
            return false;
        }
    }
    let diag = (0..d).fold(GroupAlgebraElement::zero(e.group()), |acc, i| &acc + &units[i][i]);
    diag == *e
}
