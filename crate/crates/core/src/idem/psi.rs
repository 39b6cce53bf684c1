use super::normal::{find_normal_element, NormalBasisData};
use crate::algebra::GroupAlgebraElement;
use crate::error::{Error, Result};
use crate::exactnum::linalg::solve_square;
use crate::exactnum::numtheory::euler_phi;
use crate::exactnum::{rat, CyclotomicNumber, FieldMatrix, Rational};
use crate::shoda::SimpleComponent;
use num_traits::Zero;

/// The isomorphism ψ: ℚNε → M_n(F) for a component with trivial twisting.
///
/// The crossed-product generators are the section elements t_c, acting on
/// ℚHε ≅ ℚ(ζ_k) by σ_c(v) = t_c v t_c⁻¹, and the basis is B_c = σ_c(w).
#[derive(Clone, Debug)]
pub struct PsiMap {
    pub component: SimpleComponent,
    pub data: NormalBasisData,
    /// Inverse of [σ_e(B_c)]_{e,c}; turns conjugate vectors into B-coordinates.
    coord: FieldMatrix,
    /// Matrix of σ_c in the basis B.
    perms: Vec<FieldMatrix>,
}

pub(crate) fn twist_error() -> Error {
    Error::unsupported(
        "component has nontrivial twisting; the crossed-product isomorphism needs a trivial cocycle \
         (compare the pair (<a, b^3>, 1) of C19 x| C9, where tau(b^2 H, b^2 H) = zeta_57^19)",
    )
}

impl PsiMap {
    pub fn new(component: &SimpleComponent) -> Result<Self> {
        let autos = section_automorphisms(component)?;
        let w = find_normal_element(component.cyclotomic_order.max(1), &autos)?;
        Self::with_normal_element(component, w)
    }

    pub fn with_normal_element(component: &SimpleComponent, w: CyclotomicNumber) -> Result<Self> {
        if !component.twist_trivial {
            return Err(twist_error());
        }
        let k = component.cyclotomic_order.max(1);
        let autos = section_automorphisms(component)?;
        let data = NormalBasisData::new(k, w, autos.clone())?;
        let n = autos.len();
        let conj: Vec<Vec<CyclotomicNumber>> = autos
            .iter()
            .map(|&e| data.basis.iter().map(|b| b.galois(e as i64)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let coord = FieldMatrix::new(conj)?.inverse()?;
        let mut perms = Vec::with_capacity(n);
        for c in 0..n {
            let mut m = FieldMatrix::zero(n, n, k);
            for d in 0..n {
                m.set(component.coset_product[c][d], d, CyclotomicNumber::one(k))?;
            }
            perms.push(m);
        }
        Ok(PsiMap { component: component.clone(), data, coord, perms })
    }

    pub fn degree(&self) -> usize {
        self.perms.len()
    }

    pub fn order(&self) -> usize {
        self.data.k
    }

    /// F-coordinates of l ∈ ℚ(ζ_k) in the basis B.
    pub fn coordinates(&self, l: &CyclotomicNumber) -> Result<Vec<CyclotomicNumber>> {
        let v = self
            .data
            .basis_order
            .iter()
            .map(|&e| l.galois(e as i64))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.coord.apply(&v))
    }

    /// Matrix of multiplication by z in the basis B.
    pub fn multiplication_matrix(&self, z: &CyclotomicNumber) -> Result<FieldMatrix> {
        let n = self.degree();
        let k = self.order();
        let mut m = FieldMatrix::zero(n, n, k);
        for (d, b) in self.data.basis.iter().enumerate() {
            for (i, x) in self.coordinates(&(z * b))?.into_iter().enumerate() {
                m.set(i, d, x)?;
            }
        }
        Ok(m)
    }

    pub fn permutation(&self, c: usize) -> &FieldMatrix {
        &self.perms[c]
    }

    /// Splits x ∈ ℚN as Σ_c z_c t_c with z_c ∈ ℚ(ζ_k) (after multiplying by ε).
    fn blocks(&self, x: &GroupAlgebraElement) -> Result<Vec<Vec<(i64, Rational)>>> {
        let comp = &self.component;
        let g = comp.pair.group();
        let mut blocks = vec![Vec::new(); self.degree()];
        for (el, coeff) in x.terms() {
            let c = comp
                .coset_of(el)
                .ok_or_else(|| Error::validation(format!("element {} is not in N", g.label(el))))?;
            // el = t_c h, and t_c h t_c⁻¹ = el t_c⁻¹ ∈ H.
            let moved = g.mul(el, g.inv(comp.section[c]));
            let e = comp
                .character
                .exponent_of(moved)
                .ok_or_else(|| Error::consistency("section element does not normalize H"))?;
            blocks[c].push((e as i64, coeff.clone()));
        }
        Ok(blocks)
    }

    /// ψ(xε) for x supported on N.
    pub fn apply(&self, x: &GroupAlgebraElement) -> Result<FieldMatrix> {
        let n = self.degree();
        let k = self.order();
        let mut out = FieldMatrix::zero(n, n, k);
        for (c, terms) in self.blocks(x)?.into_iter().enumerate() {
            if terms.is_empty() {
                continue;
            }
            let z = CyclotomicNumber::from_terms(k, &terms);
            if z.is_zero() {
                continue;
            }
            out = out.add(&self.multiplication_matrix(&z)?.mul(&self.perms[c])?)?;
        }
        Ok(out)
    }

    /// Solves ψ(X) = m for X = Σ_c α_c t_c ε with α_c = Σ_i x_{c,i} y^i ε,
    /// i < φ(k). Returns the coefficients x_{c,i} block by block.
    pub fn preimage_blocks(&self, m: &FieldMatrix) -> Result<Vec<Vec<Rational>>> {
        Ok(self.preimage_blocks_many(&[m])?.remove(0))
    }

    /// Reads X as the F-linear map l ↦ Σ_c α_c σ_c(l) of ℚ(ζ_k) and matches
    /// it with m on each basis vector: Σ_c α_c σ_c(B_d) = Σ_i m_{id} B_i.
    /// This is a square system of nφ(k) rational equations, solved once for
    /// all right-hand sides.
    pub fn preimage_blocks_many(&self, ms: &[&FieldMatrix]) -> Result<Vec<Vec<Vec<Rational>>>> {
        let n = self.degree();
        let k = self.order();
        let phi = euler_phi(k as u64) as usize;
        if ms.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::validation("matrix size does not match the component degree"));
        }
        let coset_product = &self.component.coset_product;
        let mut a = vec![Vec::with_capacity(n * phi); n * phi];
        for c in 0..n {
            for i in 0..phi {
                let z = CyclotomicNumber::zeta_pow(k, i as i64);
                for d in 0..n {
                    let v = &z * &self.data.basis[coset_product[c][d]];
                    for (j, q) in v.coords().into_iter().enumerate() {
                        a[d * phi + j].push(q);
                    }
                }
            }
        }
        let mut b = vec![Vec::with_capacity(ms.len()); n * phi];
        for m in ms {
            for d in 0..n {
                let mut r = CyclotomicNumber::zero(k);
                for (i, basis) in self.data.basis.iter().enumerate() {
                    r = &r + &(m.get(i, d) * basis);
                }
                for (j, q) in r.coords().into_iter().enumerate() {
                    b[d * phi + j].push(q);
                }
            }
        }
        let sol = solve_square(&a, &b)?;
        Ok((0..ms.len())
            .map(|s| (0..n).map(|c| (0..phi).map(|i| sol[c * phi + i][s].clone()).collect()).collect())
            .collect())
    }

    /// ψ⁻¹(m) as an element of ℚNε ⊆ ℚG.
    pub fn preimage(&self, m: &FieldMatrix) -> Result<GroupAlgebraElement> {
        Ok(self.preimage_many(&[m])?.remove(0))
    }

    /// ψ⁻¹ of several matrices, each checked by applying ψ again.
    pub fn preimage_many(&self, ms: &[&FieldMatrix]) -> Result<Vec<GroupAlgebraElement>> {
        let all = self.preimage_blocks_many(ms)?;
        let mut out = Vec::with_capacity(ms.len());
        for (blocks, m) in all.iter().zip(ms) {
            let x = self.assemble(blocks);
            if self.apply(&x)? != **m {
                return Err(Error::validation("matrix is not in the image of psi (entries must lie in the center)"));
            }
            out.push(x);
        }
        Ok(out)
    }

    fn assemble(&self, blocks: &[Vec<Rational>]) -> GroupAlgebraElement {
        let comp = &self.component;
        let g = comp.pair.group();
        let y = comp.pair.generator;
        let mut x = GroupAlgebraElement::zero(g);
        for (c, coeffs) in blocks.iter().enumerate() {
            let terms = coeffs
                .iter()
                .enumerate()
                .filter(|(_, q)| !q.is_zero())
                .map(|(i, q)| (g.mul(g.pow(y, i as i64), comp.section[c]), q.clone()));
            x = &x + &GroupAlgebraElement::from_terms(g, terms);
        }
        &x * &comp.pair.epsilon()
    }

    /// T̂₁ = (1/n) Σ t over the section.
    pub fn section_hat(&self) -> GroupAlgebraElement {
        let comp = &self.component;
        let n = comp.section.len() as i64;
        GroupAlgebraElement::from_terms(comp.pair.group(), comp.section.iter().map(|&t| (t, rat(1, n))))
    }
}

/// Exponents s_c with t_c y t_c⁻¹ ∈ y^{s_c} K.
pub fn section_automorphisms(component: &SimpleComponent) -> Result<Vec<u64>> {
    let g = component.pair.group();
    let y = component.pair.generator;
    component
        .section
        .iter()
        .map(|&t| {
            component
                .character
                .exponent_of(g.conj(y, g.inv(t)))
                .map(|e| if component.cyclotomic_order <= 1 { 1 } else { e as u64 })
                .ok_or_else(|| Error::consistency("section element does not normalize H"))
        })
        .collect()
}

/// The bordered ±1 matrix P and the cyclic permutation matrix A.
pub fn build_p_a(n: usize, order: usize) -> (FieldMatrix, FieldMatrix) {
    let mut p = vec![vec![Rational::zero(); n]; n];
    let mut a = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        p[0][i] = rat(1, 1);
        p[i][0] = rat(1, 1);
        if i > 0 {
            p[i][i] = rat(-1, 1);
            a[i][i - 1] = rat(1, 1);
        }
    }
    a[0][n - 1] = rat(1, 1);
    if n == 1 {
        p[0][0] = rat(1, 1);
    }
    (
        FieldMatrix::from_rationals(&p, order).expect("square"),
        FieldMatrix::from_rationals(&a, order).expect("square"),
    )
}
