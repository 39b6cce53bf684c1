use super::orbit::{orbit_sums, OrbitSum};
use crate::algebra::{hat, GroupAlgebraElement};
use crate::error::{Error, Result};
use crate::exactnum::{rat, CyclotomicNumber, FieldMatrix, Rational};
use crate::idem::{compute_x_e, PsiMap};
use crate::shoda::{component_descriptor, FaithfulMetacyclic, StrongShodaPair};
use crate::units::metacyclic_basis_of;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Central,
    VPlus,
    VMinus,
    Bicyclic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn role(self) -> Role {
        match self {
            Sign::Plus => Role::VPlus,
            Sign::Minus => Role::VMinus,
        }
    }

    fn admits(self, h: usize, k: usize) -> bool {
        match self {
            Sign::Plus => h < k,
            Sign::Minus => h > k,
        }
    }
}

/// Per-generator verification results; `None` where a check does not apply.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorChecks {
    pub integral: bool,
    pub inverse_integral: bool,
    pub inverse_verified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub central: Option<bool>,
    /// (u − 1)² = 0.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub square_zero: Option<bool>,
    /// ψ_j(u) is unitriangular of the declared orientation in the frame P·Π.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unitriangular: Option<bool>,
}

impl GeneratorChecks {
    pub fn all(&self) -> bool {
        self.integral
            && self.inverse_integral
            && self.inverse_verified
            && self.central.unwrap_or(true)
            && self.square_zero.unwrap_or(true)
            && self.unitriangular.unwrap_or(true)
    }
}

#[derive(Clone, Debug)]
pub struct UnitGenerator {
    pub role: Role,
    /// j for V± generators.
    pub component: Option<u32>,
    /// (h, k) with 1 ≤ h, k ≤ p^n.
    pub position: Option<(usize, usize)>,
    /// Base element of the orbit sum y.
    pub orbit_base: Option<usize>,
    pub description: String,
    pub element: GroupAlgebraElement,
    pub inverse: GroupAlgebraElement,
    pub checks: GeneratorChecks,
}

/// Data of the component ℚGε(⟨a⟩, K_j) ≅ M_{p^n}(F_j) used to build V_j^±.
#[derive(Clone, Debug)]
pub struct ComponentFrame {
    pub j: u32,
    pub pair: StrongShodaPair,
    pub psi: PsiMap,
    pub x: GroupAlgebraElement,
    /// Least t with t·x^k integral for 1 ≤ k ≤ p^n.
    pub t: BigInt,
    /// Q = P·Π; Q⁻¹ψ(x^h b̂ x^{−k})Q is the matrix unit at (h, k).
    pub frame: FieldMatrix,
    frame_inv: FieldMatrix,
    powers: Vec<GroupAlgebraElement>,
    b_hat: GroupAlgebraElement,
}

impl ComponentFrame {
    pub fn new(mc: &FaithfulMetacyclic, j: u32) -> Result<Self> {
        if j == 0 || j > mc.m {
            return Err(Error::validation(format!("component index {j} outside 1..={}", mc.m)));
        }
        let pair = StrongShodaPair::new(&mc.a_subgroup(), &mc.kj(j))?;
        let psi = PsiMap::new(&component_descriptor(&pair)?)?;
        let xe = compute_x_e(&psi)?;
        let pn = mc.pn() as usize;
        if psi.degree() != pn {
            return Err(Error::consistency("component degree differs from p^n"));
        }
        let mut powers = vec![pair.epsilon()];
        for i in 1..pn {
            powers.push(&powers[i - 1] * &xe.x_e);
        }
        let t = t_scale(&powers);
        // Column h − 1 of Π is the standard vector e_{h mod p^n}.
        let mut pi = vec![vec![Rational::zero(); pn]; pn];
        for h in 1..=pn {
            pi[h % pn][h - 1] = rat(1, 1);
        }
        let frame = xe.p.mul(&FieldMatrix::from_rationals(&pi, psi.order())?)?;
        let frame_inv = frame.inverse()?;
        Ok(ComponentFrame {
            j,
            pair,
            x: xe.x_e,
            t,
            frame,
            frame_inv,
            powers,
            b_hat: hat(&mc.b_subgroup()),
            psi,
        })
    }

    pub fn degree(&self) -> usize {
        self.powers.len()
    }

    /// x^h b̂ x^{−k} for 1 ≤ h, k ≤ p^n.
    pub fn matrix_unit(&self, h: usize, k: usize) -> GroupAlgebraElement {
        let n = self.degree();
        &(&self.powers[h % n] * &self.b_hat) * &self.powers[(n - k % n) % n]
    }

    /// Q⁻¹ ψ_j(uε) Q.
    pub fn image(&self, u: &GroupAlgebraElement) -> Result<FieldMatrix> {
        let img = self.psi.apply(&(u * &self.pair.epsilon()))?;
        self.frame_inv.mul(&img)?.mul(&self.frame)
    }

    /// Whether Q⁻¹ψ_j(u)Q is the identity plus entries only at (h, k).
    pub fn is_elementary_at(&self, u: &GroupAlgebraElement, h: usize, k: usize) -> Result<bool> {
        let m = self.image(u)?;
        let n = self.degree();
        Ok((0..n).all(|i| {
            (0..n).all(|c| {
                let e = m.get(i, c);
                if i == c {
                    e.is_one()
                } else if (i, c) == (h - 1, k - 1) {
                    true
                } else {
                    e.is_zero()
                }
            })
        }))
    }
}

/// Least common multiple of the coefficient denominators of the given powers.
pub fn t_scale(powers: &[GroupAlgebraElement]) -> BigInt {
    use num_integer::Integer;
    powers.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denominator_lcm()))
}

/// The case p = 2, n = 1, q = 3 where the elementary generators need the bicyclic supplement.
pub fn is_exceptional(mc: &FaithfulMetacyclic) -> bool {
    mc.p == 2 && mc.n == 1 && mc.q == 3
}

fn unit_checks(u: &GroupAlgebraElement, inv: &GroupAlgebraElement) -> GeneratorChecks {
    GeneratorChecks {
        integral: u.is_integral(),
        inverse_integral: inv.is_integral(),
        inverse_verified: u.is_unit_with_inverse(inv),
        ..Default::default()
    }
}

fn square_zero(u: &GroupAlgebraElement) -> bool {
    let d = u - &GroupAlgebraElement::one(u.group());
    (&d * &d).is_zero()
}

/// The generators 1 + p^n t_j² y x_j^h b̂ x_j^{−k} of V_j^±.
pub fn v_generators_in(
    frame: &ComponentFrame,
    sign: Sign,
    sums: &[OrbitSum],
    pn: u64,
) -> Result<Vec<UnitGenerator>> {
    let g = frame.pair.group();
    let one = GroupAlgebraElement::one(g);
    let scale = Rational::from_integer(&frame.t * &frame.t * BigInt::from(pn));
    let n = frame.degree();
    let mut out = Vec::new();
    for h in 1..=n {
        for k in 1..=n {
            if !sign.admits(h, k) {
                continue;
            }
            let unit = frame.matrix_unit(h, k).scale(&scale);
            for y in sums {
                let d = &y.sum * &unit;
                let element = &one + &d;
                let inverse = &one - &d;
                let mut checks = unit_checks(&element, &inverse);
                checks.square_zero = Some(square_zero(&element));
                let shape = match sign {
                    Sign::Plus => frame.image(&element)?.is_unitriangular(true),
                    Sign::Minus => frame.image(&element)?.is_unitriangular(false),
                };
                checks.unitriangular = Some(shape && frame.is_elementary_at(&element, h, k)?);
                out.push(UnitGenerator {
                    role: sign.role(),
                    component: Some(frame.j),
                    position: Some((h, k)),
                    orbit_base: Some(y.base),
                    description: format!(
                        "1 + {pn}*{}^2 * [{}]~ * x_{}^{h} b^ x_{}^-{k}",
                        frame.t,
                        g.label(y.base),
                        frame.j,
                        frame.j
                    ),
                    element,
                    inverse,
                    checks,
                });
            }
        }
    }
    Ok(out)
}

fn exceptional_error() -> Error {
    Error::unsupported(
        "for C_3^m x| C_2 the elementary generators alone need not reach finite index in the \
         M_2(Q) component; request the bicyclic supplement",
    )
}

/// V_j^± for a faithful metacyclic group.
pub fn v_generators(mc: &FaithfulMetacyclic, j: u32, sign: Sign, allow_exceptional: bool) -> Result<Vec<UnitGenerator>> {
    if is_exceptional(mc) && !allow_exceptional {
        return Err(exceptional_error());
    }
    let frame = ComponentFrame::new(mc, j)?;
    let sums = orbit_sums(&mc.a_subgroup(), &mc.b_subgroup());
    v_generators_in(&frame, sign, &sums, mc.pn())
}

/// 1 − (1−b)a(1+b), its conjugate by ba, and 1 + (1−ba)a(1+ba).
pub fn bicyclic_supplement(mc: &FaithfulMetacyclic) -> Result<Vec<UnitGenerator>> {
    if mc.pn() != 2 {
        return Err(Error::validation("the bicyclic supplement needs b of order 2"));
    }
    let g = &mc.group;
    let one = GroupAlgebraElement::one(g);
    let basis = |x: usize| GroupAlgebraElement::basis(g, x);
    let a = basis(mc.a);
    let nil = |x: usize| &(&(&one - &basis(x)) * &a) * &(&one + &basis(x));
    let ba = g.mul(mc.b, mc.a);
    let d1 = nil(mc.b);
    let d3 = nil(ba);
    let items = [
        ("1 - (1 - b) a (1 + b)", &one - &d1, &one + &d1),
        ("(1 - (1 - b) a (1 + b))^(ba)", (&one - &d1).conjugate_by(ba), (&one + &d1).conjugate_by(ba)),
        ("1 + (1 - ba) a (1 + ba)", &one + &d3, &one - &d3),
    ];
    Ok(items
        .into_iter()
        .map(|(desc, element, inverse)| {
            let mut checks = unit_checks(&element, &inverse);
            checks.square_zero = Some(square_zero(&element));
            UnitGenerator {
                role: Role::Bicyclic,
                component: None,
                position: None,
                orbit_base: None,
                description: desc.to_string(),
                element,
                inverse,
                checks,
            }
        })
        .collect())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GeneratorOptions {
    /// Append the bicyclic units even outside the exceptional case (needs p^n = 2).
    pub bicyclic: bool,
}

/// U ∪ V⁺ ∪ V⁻, plus the bicyclic supplement where needed or requested.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub mc: FaithfulMetacyclic,
    pub t_values: Vec<(u32, BigInt)>,
    pub generators: Vec<UnitGenerator>,
    pub supplemented: bool,
}

impl GeneratorSet {
    pub fn by_role(&self, role: Role) -> impl Iterator<Item = &UnitGenerator> {
        self.generators.iter().filter(move |u| u.role == role)
    }

    pub fn all_checks_pass(&self) -> bool {
        self.generators.iter().all(|u| u.checks.all())
    }
}

pub fn full_generator_set(q: u64, m: u32, p: u64, n: u32, r: u64) -> Result<GeneratorSet> {
    full_generator_set_with(&FaithfulMetacyclic::new(q, m, p, n, r)?, GeneratorOptions::default())
}

pub fn full_generator_set_with(mc: &FaithfulMetacyclic, opts: GeneratorOptions) -> Result<GeneratorSet> {
    let mut generators = Vec::new();
    for u in metacyclic_basis_of(mc)? {
        let mut checks = unit_checks(&u.element, &u.inverse);
        checks.central = Some(u.element.is_central());
        generators.push(UnitGenerator {
            role: Role::Central,
            component: None,
            position: None,
            orbit_base: None,
            description: u.description.clone(),
            element: u.element,
            inverse: u.inverse,
            checks,
        });
    }
    let sums = orbit_sums(&mc.a_subgroup(), &mc.b_subgroup());
    let mut t_values = Vec::new();
    for j in 1..=mc.m {
        let frame = ComponentFrame::new(mc, j)?;
        for sign in [Sign::Plus, Sign::Minus] {
            generators.extend(v_generators_in(&frame, sign, &sums, mc.pn())?);
        }
        t_values.push((j, frame.t.clone()));
    }
    let supplemented = is_exceptional(mc) || opts.bicyclic;
    if supplemented {
        generators.extend(bicyclic_supplement(mc)?);
    }
    Ok(GeneratorSet { mc: mc.clone(), t_values, generators, supplemented })
}

/// The scalar ψ_j(yε) = z·I for y central in the component.
pub fn scalar_of(frame: &ComponentFrame, y: &GroupAlgebraElement) -> Result<CyclotomicNumber> {
    let m = frame.psi.apply(&(y * &frame.pair.epsilon()))?;
    let z = m.get(0, 0).clone();
    let n = frame.degree();
    let scalar = (0..n).all(|i| (0..n).all(|c| if i == c { *m.get(i, c) == z } else { m.get(i, c).is_zero() }));
    if !scalar {
        return Err(Error::validation("element is not central in the component"));
    }
    Ok(z)
}
