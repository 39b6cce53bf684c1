//! Structural invariants across the library, checked on random inputs.

use proptest::prelude::*;
use std::sync::OnceLock;
use wedderkit::algebra::{epsilon, hat, rho_linear, GroupAlgebraElement};
use wedderkit::exactnum::linalg::{determinant_is_zero, solve_square};
use wedderkit::exactnum::numtheory::{gcd, generated_unit_subgroup};
use wedderkit::exactnum::{complex_embed, fixed_field, rat, CyclotomicNumber, GaloisAutomorphism, Rational};
use wedderkit::group::{all_subgroups, conjugacy_classes, ClassKind, FiniteGroup, Group, MetacyclicPresentation, Subgroup};
use wedderkit::idem::PsiMap;
use wedderkit::shoda::{component_descriptor, strong_shoda_pairs, FaithfulMetacyclic, StrongShodaPair};
use wedderkit::unitgens::{full_generator_set, verify_certificate, GeneratorSet, Role};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn cyclotomic(n: usize) -> impl Strategy<Value = CyclotomicNumber> {
    prop::collection::vec(small_rational(), n).prop_map(move |c| {
        let terms: Vec<(i64, Rational)> = c.into_iter().enumerate().map(|(i, q)| (i as i64, q)).collect();
        CyclotomicNumber::from_terms(n, &terms)
    })
}

fn field_triple() -> impl Strategy<Value = (usize, CyclotomicNumber, CyclotomicNumber, CyclotomicNumber)> {
    (1usize..=36).prop_flat_map(|n| (Just(n), cyclotomic(n), cyclotomic(n), cyclotomic(n)))
}

fn unit_exponent(n: usize) -> impl Strategy<Value = i64> {
    (1..=n.max(2) as i64).prop_map(move |s| {
        (s..s + n as i64).find(|&k| gcd(k as u64, n as u64) == 1).unwrap_or(1)
    })
}

fn presentations() -> &'static [Group] {
    static G: OnceLock<Vec<Group>> = OnceLock::new();
    G.get_or_init(|| {
        let mut v: Vec<Group> = [(7, 3, 0, 2), (13, 4, 0, 5), (4, 2, 0, 3), (4, 2, 2, 3), (5, 4, 0, 2), (9, 6, 0, 2)]
            .into_iter()
            .map(|(m, n, t, r)| FiniteGroup::metacyclic(MetacyclicPresentation::new(m, n, t, r).unwrap()).unwrap())
            .collect();
        v.push(FiniteGroup::permutations(4, false).unwrap());
        v.push(FiniteGroup::permutations(4, true).unwrap());
        v.push(FiniteGroup::abelian(&[2, 6]).unwrap());
        v
    })
}

struct PairFixture {
    pairs: Vec<StrongShodaPair>,
}

fn pair_fixtures() -> &'static [PairFixture] {
    static F: OnceLock<Vec<PairFixture>> = OnceLock::new();
    F.get_or_init(|| {
        presentations()
            .iter()
            .map(|g| PairFixture { pairs: strong_shoda_pairs(g, 512).unwrap() })
            .collect()
    })
}

fn subgroup_element(s: &Subgroup) -> impl Strategy<Value = GroupAlgebraElement> {
    let s = s.clone();
    prop::collection::vec((0..s.order(), -3i64..=3), 1..5).prop_map(move |t| {
        let terms: Vec<(usize, i64)> = t.into_iter().map(|(i, c)| (s.elements()[i], c)).collect();
        GroupAlgebraElement::from_integer_terms(s.group(), &terms)
    })
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn field_axioms((n, a, b, c) in field_triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert_eq!(a.order(), n);
    }

    #[test]
    fn galois_is_a_homomorphism_and_composes(
        (n, a, b, r, s) in (1usize..=36).prop_flat_map(|n| (Just(n), cyclotomic(n), cyclotomic(n), unit_exponent(n), unit_exponent(n)))
    ) {
        let sr = GaloisAutomorphism::new(n as u64, r).unwrap();
        let ss = GaloisAutomorphism::new(n as u64, s).unwrap();
        prop_assert_eq!(sr.apply(&(&a * &b)).unwrap(), &sr.apply(&a).unwrap() * &sr.apply(&b).unwrap());
        prop_assert_eq!(sr.apply(&(&a + &b)).unwrap(), &sr.apply(&a).unwrap() + &sr.apply(&b).unwrap());
        let composed = sr.compose(&ss).unwrap().apply(&a).unwrap();
        prop_assert_eq!(composed, sr.apply(&ss.apply(&a).unwrap()).unwrap());
    }

    #[test]
    fn fixed_field_periods_are_fixed(n in 2u64..=40, seed in 1u64..40) {
        let gen = (seed..seed + n).map(|k| k % n).find(|&k| k > 0 && gcd(k, n) == 1).unwrap();
        let basis = fixed_field(n, &generated_unit_subgroup(&[gen], n)).unwrap();
        for p in &basis.periods {
            prop_assert!(basis.contains(p).unwrap());
        }
        let span: Vec<Vec<Rational>> = basis.periods.iter().map(|p| p.coords()).collect();
        prop_assert_eq!(wedderkit::exactnum::linalg::rank(&span).unwrap(), basis.degree());
    }

    #[test]
    fn square_solve_satisfies_the_system(
        (a, b) in (1usize..=6).prop_flat_map(|n| (
            prop::collection::vec(prop::collection::vec(small_rational(), n), n),
            prop::collection::vec(prop::collection::vec(small_rational(), 2), n),
        ))
    ) {
        match solve_square(&a, &b) {
            Ok(x) => {
                for (row, rhs) in a.iter().zip(&b) {
                    for c in 0..2 {
                        let lhs: Rational = row.iter().zip(&x).map(|(p, q)| p * &q[c]).sum();
                        prop_assert_eq!(&lhs, &rhs[c]);
                    }
                }
            }
            Err(_) => prop_assert!(determinant_is_zero(&a).unwrap()),
        }
    }

    #[test]
    fn complex_embedding_is_multiplicative(
        (n, a, b, r) in (1usize..=30).prop_flat_map(|n| (Just(n), cyclotomic(n), cyclotomic(n), unit_exponent(n)))
    ) {
        let s = GaloisAutomorphism::new(n as u64, r).unwrap();
        let (ar, ai) = complex_embed(&a, &s, 128).unwrap().to_f64();
        let (br, bi) = complex_embed(&b, &s, 128).unwrap().to_f64();
        let (pr, pi) = complex_embed(&(&a * &b), &s, 128).unwrap().to_f64();
        let scale = 1.0 + (ar.hypot(ai) * br.hypot(bi));
        prop_assert!((pr - (ar * br - ai * bi)).abs() <= 1e-10 * scale);
        prop_assert!((pi - (ar * bi + ai * br)).abs() <= 1e-10 * scale);
    }

    #[test]
    fn group_axioms(gi in 0..presentations().len(), x in any::<prop::sample::Index>(), y in any::<prop::sample::Index>(), z in any::<prop::sample::Index>()) {
        let g = &presentations()[gi];
        let (x, y, z) = (x.index(g.size()), y.index(g.size()), z.index(g.size()));
        prop_assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
        prop_assert_eq!(g.mul(x, g.inv(x)), 0);
        prop_assert_eq!(g.mul(0, x), x);
        prop_assert_eq!(g.pow(x, g.element_order(x) as i64), 0);
    }

    #[test]
    fn transversals_partition_the_group(gi in 0..presentations().len(), si in any::<prop::sample::Index>()) {
        let g = &presentations()[gi];
        let subs = all_subgroups(g, 512).unwrap();
        let s = &subs[si.index(subs.len())];
        let whole = Subgroup::whole(g);
        let right = s.right_transversal(&whole).unwrap();
        prop_assert_eq!(right.len() * s.order(), g.size());
        let mut seen = vec![false; g.size()];
        for &t in &right {
            for &h in s.elements() {
                let x = g.mul(h, t);
                prop_assert!(!seen[x]);
                seen[x] = true;
            }
        }
        let left = s.left_transversal(&whole).unwrap();
        let mut seen = vec![false; g.size()];
        for &t in &left {
            for &h in s.elements() {
                let x = g.mul(t, h);
                prop_assert!(!seen[x]);
                seen[x] = true;
            }
        }
    }

    #[test]
    fn hat_and_epsilon_are_idempotent(fi in 0..presentations().len(), pi in any::<prop::sample::Index>()) {
        let f = &pair_fixtures()[fi];
        let p = &f.pairs[pi.index(f.pairs.len())];
        prop_assert!(hat(&p.h).is_idempotent());
        prop_assert!(hat(&p.k).is_idempotent());
        let eps = epsilon(&p.h, &p.k).unwrap();
        prop_assert!(eps.is_idempotent());
        let e = p.e();
        prop_assert!(e.is_idempotent());
        prop_assert!(e.is_central());
        prop_assert_eq!(&e * &eps, eps);
    }

    #[test]
    fn equivalence_is_symmetric(fi in 0..presentations().len(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let f = &pair_fixtures()[fi];
        let (p, q) = (&f.pairs[a.index(f.pairs.len())], &f.pairs[b.index(f.pairs.len())]);
        prop_assert_eq!(p.equivalent(q).unwrap(), q.equivalent(p).unwrap());
        prop_assert!(p.equivalent(p).unwrap());
        // The enumerated pairs are pairwise inequivalent and their e's orthogonal.
        if a.index(f.pairs.len()) != b.index(f.pairs.len()) {
            prop_assert!(!p.equivalent(q).unwrap());
            prop_assert!((&p.e() * &q.e()).is_zero());
        }
    }

    #[test]
    fn class_counts_are_ordered(gi in 0..presentations().len()) {
        let g = &presentations()[gi];
        let ord = conjugacy_classes(g, ClassKind::Ordinary).len();
        let real = conjugacy_classes(g, ClassKind::Real).len();
        let rational = conjugacy_classes(g, ClassKind::Rational).len();
        prop_assert!(ord >= real && real >= rational && rational >= 1);
        prop_assert_eq!(pair_fixtures()[gi].pairs.len(), rational);
    }
}

fn rho_inputs() -> impl Strategy<Value = (StrongShodaPair, GroupAlgebraElement, GroupAlgebraElement)> {
    (0..presentations().len(), any::<prop::sample::Index>()).prop_flat_map(|(fi, pi)| {
        let f = &pair_fixtures()[fi];
        let p = f.pairs[pi.index(f.pairs.len())].clone();
        (Just(p.clone()), subgroup_element(&p.h), subgroup_element(&p.h))
    })
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn rho_is_multiplicative((p, x, y) in rho_inputs()) {
        let lhs = rho_linear(&p.h, &p.k, &(&x * &y)).unwrap();
        let rhs = &rho_linear(&p.h, &p.k, &x).unwrap() * &rho_linear(&p.h, &p.k, &y).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

struct PsiFixture {
    psi: PsiMap,
    n_elements: Vec<usize>,
}

fn psi_fixtures() -> &'static [PsiFixture] {
    static F: OnceLock<Vec<PsiFixture>> = OnceLock::new();
    F.get_or_init(|| {
        let mut out = Vec::new();
        for (q, m, p, n, r) in [(7, 1, 3, 1, 2), (13, 1, 2, 2, 5), (5, 1, 2, 2, 2)] {
            let mc = FaithfulMetacyclic::new(q, m, p, n, r).unwrap();
            let pair = StrongShodaPair::new(&mc.a_subgroup(), &mc.kj(1)).unwrap();
            let psi = PsiMap::new(&component_descriptor(&pair).unwrap()).unwrap();
            out.push(PsiFixture { n_elements: pair.n.elements().to_vec(), psi });
        }
        out
    })
}

fn psi_inputs() -> impl Strategy<Value = (usize, GroupAlgebraElement, GroupAlgebraElement)> {
    (0..psi_fixtures().len()).prop_flat_map(|i| {
        let f = &psi_fixtures()[i];
        let s = Subgroup::from_elements(f.psi.component.pair.group(), &f.n_elements).unwrap();
        (Just(i), subgroup_element(&s), subgroup_element(&s))
    })
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn psi_is_multiplicative((i, x, y) in psi_inputs()) {
        let psi = &psi_fixtures()[i].psi;
        let lhs = psi.apply(&(&x * &y)).unwrap();
        prop_assert_eq!(lhs, psi.apply(&x).unwrap().mul(&psi.apply(&y).unwrap()).unwrap());
        let sum = psi.apply(&(&x + &y)).unwrap();
        prop_assert_eq!(sum, psi.apply(&x).unwrap().add(&psi.apply(&y).unwrap()).unwrap());
    }

    #[test]
    fn psi_preimage_round_trips((i, x, _y) in psi_inputs()) {
        let psi = &psi_fixtures()[i].psi;
        let m = psi.apply(&x).unwrap();
        let back = psi.preimage(&m).unwrap();
        prop_assert_eq!(psi.apply(&back).unwrap(), m);
        let eps = psi.component.pair.epsilon();
        prop_assert_eq!(back, &x * &eps);
    }
}

#[test]
fn psi_of_section_hat_is_the_averaging_matrix() {
    for f in psi_fixtures() {
        let psi = &f.psi;
        let img = psi.apply(&psi.section_hat()).unwrap();
        let n = psi.degree();
        let avg = rat(1, n as i64);
        for i in 0..n {
            for j in 0..n {
                assert_eq!(img.get(i, j).as_rational(), Some(avg.clone()));
            }
        }
    }
}

fn generator_sets() -> &'static [GeneratorSet] {
    static S: OnceLock<Vec<GeneratorSet>> = OnceLock::new();
    S.get_or_init(|| vec![full_generator_set(7, 1, 3, 1, 2).unwrap(), full_generator_set(5, 2, 2, 1, 24).unwrap()])
}

#[test]
fn unitriangular_products_stay_unitriangular() {
    use wedderkit::unitgens::ComponentFrame;
    for set in generator_sets() {
        for j in 1..=set.mc.m {
            let frame = ComponentFrame::new(&set.mc, j).unwrap();
            for (role, upper) in [(Role::VPlus, true), (Role::VMinus, false)] {
                let gens: Vec<_> = set.by_role(role).filter(|u| u.component == Some(j)).collect();
                assert!(!gens.is_empty());
                let mut acc = GroupAlgebraElement::one(&set.mc.group);
                for u in gens.iter().cycle().take(gens.len() + 3) {
                    acc = &acc * &u.element;
                    assert!(frame.image(&acc).unwrap().is_unitriangular(upper));
                }
            }
        }
    }
}

#[test]
fn generators_on_distinct_components_commute() {
    for set in generator_sets() {
        let v: Vec<_> = set.generators.iter().filter(|u| matches!(u.role, Role::VPlus | Role::VMinus)).collect();
        for a in &v {
            for b in &v {
                if a.component != b.component {
                    assert_eq!(&a.element * &b.element, &b.element * &a.element);
                }
            }
        }
        for c in set.by_role(Role::Central) {
            for b in &v {
                assert_eq!(&c.element * &b.element, &b.element * &c.element);
            }
        }
    }
}

#[test]
fn certificates_round_trip_and_serialize_deterministically() {
    for set in generator_sets() {
        let cert = set.certificate();
        let text = serde_json::to_string(&cert).unwrap();
        assert_eq!(text, serde_json::to_string(&set.certificate()).unwrap());
        let again = full_generator_set(set.mc.q, set.mc.m, set.mc.p, set.mc.n, set.mc.r).unwrap();
        assert_eq!(text, serde_json::to_string(&again.certificate()).unwrap());
        let back = serde_json::from_str(&text).unwrap();
        assert!(verify_certificate(&back).unwrap().passed);
    }
}
