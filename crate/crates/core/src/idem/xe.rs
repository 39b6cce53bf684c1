use super::psi::{build_p_a, PsiMap};
use crate::algebra::GroupAlgebraElement;
use crate::error::{Error, Result};
use crate::exactnum::{FieldMatrix, Rational};
use num_traits::Zero;

/// x_e ∈ ℚNε with ψ(x_e) = P A P⁻¹, together with the matrices used.
#[derive(Clone, Debug)]
pub struct XeData {
    pub x_e: GroupAlgebraElement,
    pub target: FieldMatrix,
    pub p: FieldMatrix,
    pub a: FieldMatrix,
}

/// Computes x_e by composing preimages ψ⁻¹(P)·ψ⁻¹(A)·ψ⁻¹(P⁻¹) and
/// cross-checks it against the trace formula.
pub fn compute_x_e(psi: &PsiMap) -> Result<XeData> {
    let n = psi.degree();
    let (p, a) = build_p_a(n, psi.order());
    let p_inv = p.inverse()?;
    let target = p.mul(&a)?.mul(&p_inv)?;
    let pre = psi.preimage_many(&[&p, &a, &p_inv])?;
    let x_e = &(&pre[0] * &pre[1]) * &pre[2];
    if psi.apply(&x_e)? != target {
        return Err(Error::consistency("psi(x_e) differs from P A P^-1"));
    }
    let by_trace = x_e_by_trace(psi, &target)?;
    if by_trace != x_e {
        return Err(Error::consistency("the two constructions of x_e disagree"));
    }
    Ok(XeData { x_e, target, p, a })
}

/// ψ⁻¹(m) = (1/|H|) Σ_{g∈N} tr_{F/ℚ}(Tr(m ψ(g⁻¹))) g.
pub fn x_e_by_trace(psi: &PsiMap, m: &FieldMatrix) -> Result<GroupAlgebraElement> {
    let comp = &psi.component;
    let g = comp.pair.group();
    let scale = Rational::from_integer((comp.pair.h.order() * psi.degree()).into());
    let mut terms = Vec::new();
    for &x in comp.pair.n.elements() {
        let img = psi.apply(&GroupAlgebraElement::basis(g, g.inv(x)))?;
        let c = m.mul(&img)?.trace().trace() / &scale;
        if !c.is_zero() {
            terms.push((x, c));
        }
    }
    Ok(GroupAlgebraElement::from_terms(g, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FiniteGroup, MetacyclicPresentation, Subgroup};
    use crate::shoda::{component_descriptor, StrongShodaPair};

    #[test]
    fn x_e_in_c7_c3_is_b_epsilon() {
        let g = FiniteGroup::metacyclic(MetacyclicPresentation::new(7, 3, 0, 2).unwrap()).unwrap();
        let a = Subgroup::generated(&g, &[1]).unwrap();
        let pair = StrongShodaPair::new(&a, &Subgroup::trivial(&g)).unwrap();
        let psi = PsiMap::new(&component_descriptor(&pair).unwrap()).unwrap();
        let data = compute_x_e(&psi).unwrap();
        let b = GroupAlgebraElement::basis(&g, g.ab(0, 1).unwrap());
        let p = psi.preimage(&data.p).unwrap();
        let p_inv = psi.preimage(&data.p.inverse().unwrap()).unwrap();
        assert_eq!(data.x_e, &(&p * &(&b * &pair.epsilon())) * &p_inv);
        assert_eq!(data.x_e.pow(3), pair.epsilon());
    }

    #[test]
    fn x_e_in_c13_c4() {
        let g = FiniteGroup::metacyclic(MetacyclicPresentation::new(13, 4, 0, 5).unwrap()).unwrap();
        let a = Subgroup::generated(&g, &[1]).unwrap();
        let pair = StrongShodaPair::new(&a, &Subgroup::trivial(&g)).unwrap();
        let psi = PsiMap::new(&component_descriptor(&pair).unwrap()).unwrap();
        let data = compute_x_e(&psi).unwrap();
        assert_eq!(psi.apply(&data.x_e).unwrap(), data.target);
        assert_eq!(data.x_e.pow(4), pair.epsilon());
        assert_ne!(data.x_e.pow(2), pair.epsilon());
    }

    #[test]
    fn degree_one_component() {
        let g = FiniteGroup::cyclic(5).unwrap();
        let pair = StrongShodaPair::new(&Subgroup::whole(&g), &Subgroup::trivial(&g)).unwrap();
        let psi = PsiMap::new(&component_descriptor(&pair).unwrap()).unwrap();
        assert_eq!(compute_x_e(&psi).unwrap().x_e, pair.epsilon());
    }
}
