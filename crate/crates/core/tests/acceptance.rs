//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! Built with `harness = false`; exits non-zero if any criterion fails.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};
use wedderkit::algebra::GroupAlgebraElement;
use wedderkit::exactnum::numtheory::{gcd, lcm, mult_order};
use wedderkit::exactnum::{rat, CyclotomicNumber, Rational};
use wedderkit::group::{FiniteGroup, Group, GroupSpec, Subgroup};
use wedderkit::idem::{build_p_a, check_matrix_units, check_matrix_units_sampled, primitive_idempotents_of, PsiMap};
use wedderkit::shoda::{check_partition_of_unity, component_descriptor, strong_shoda_pairs, StrongShodaPair};
use wedderkit::unitgens::{full_generator_set, verify_certificate, ComponentFrame, GeneratorCertificate, Role};
use wedderkit::units::{
    bass_unit, chain_product_in, eta, independence_check_with, metacyclic_central_basis, rank, BassUnitSpec,
    ChainContext,
};

type Outcome = std::result::Result<String, String>;
/// Name, check and runtime limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn ensure(cond: bool, what: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn ok<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn build(spec: &str) -> std::result::Result<Group, String> {
    ok(GroupSpec::parse(spec).and_then(|s| s.build()))
}

// Golden example.

fn block(v: &[(i64, i64)]) -> Vec<Rational> {
    v.iter().map(|&(n, d)| rat(n, d)).collect()
}

fn golden() -> Outcome {
    // Coefficients of 1, a, ..., a^5 in the three blocks of ψ⁻¹(P).
    let alpha = [
        block(&[(-4, 7), (-1, 14), (-1, 2), (-5, 14), (-1, 7), (-5, 14)]),
        block(&[(2, 7), (-11, 14), (-3, 14), (-1, 2), (-1, 7), (-9, 14)]),
        block(&[(2, 7), (-9, 14), (-11, 14), (-9, 14), (2, 7), (-1, 2)]),
    ];
    let (p, _) = build_p_a(3, 7);
    let psi_for = |spec: &str| -> std::result::Result<PsiMap, String> {
        let g = build(spec)?;
        let a = ok(Subgroup::generated(&g, &[1]))?;
        let pair = ok(StrongShodaPair::new(&a, &Subgroup::trivial(&g)))?;
        ok(component_descriptor(&pair).and_then(|c| PsiMap::new(&c)))
    };
    // With b a b^-1 = a^4 the section element b carries the block usually written next to b^2.
    let psi = psi_for("metacyclic 7 3 0 2")?;
    ensure(psi.data.basis_order == [1, 4, 2], format!("basis order {:?}", psi.data.basis_order))?;
    let blocks = ok(psi.preimage_blocks(&p))?;
    ensure(blocks == [alpha[0].clone(), alpha[2].clone(), alpha[1].clone()], "blocks differ for metacyclic 7 3 0 2")?;
    // Relabelling b -> b^-1 gives the basis {ae, a^2e, a^4e} and the usual block order.
    let psi = psi_for("metacyclic 7 3 0 4")?;
    ensure(psi.data.basis_order == [1, 2, 4], format!("basis order {:?}", psi.data.basis_order))?;
    ensure(ok(psi.preimage_blocks(&p))? == alpha, "blocks differ for metacyclic 7 3 0 4")?;
    let x = ok(psi.preimage(&p))?;
    ensure(ok(psi.apply(&x))? == p, "psi(preimage) != P")?;
    Ok("18 coefficients exact under both labellings of b".into())
}

// Obstruction example.

fn obstruction() -> Outcome {
    let g = build("metacyclic 19 9 0 7")?;
    let h = ok(Subgroup::generated(&g, &[ok(g.ab(1, 0))?, ok(g.ab(0, 3))?]))?;
    let pair = ok(StrongShodaPair::new(&h, &Subgroup::trivial(&g)))?;
    let c = ok(component_descriptor(&pair))?;
    let b2 = c.coset_of(ok(g.ab(0, 2))?).ok_or("b^2 not in N")?;
    let tau = c.twist(b2, b2);
    ensure(tau == CyclotomicNumber::zeta_pow(57, 19), format!("tau(b^2H, b^2H) = {tau:?}"))?;
    ensure(!c.twist_trivial, "twist reported trivial")?;
    match primitive_idempotents_of(&c) {
        Err(e) if e.exit_code() == 3 => Ok(format!("tau = zeta_57^19, idempotents refused: {e}")),
        Err(e) => Err(format!("wrong error kind: {e}")),
        Ok(_) => Err("idempotents were produced".into()),
    }
}

// Rank and class counts, against an independent orbit count on the table.

const TEST_GROUPS: [(&str, &str); 10] = [
    ("C5", "cyclic 5"),
    ("C12", "cyclic 12"),
    ("D8", "metacyclic 4 2 0 3"),
    ("D10", "metacyclic 5 2 0 4"),
    ("Q8", "metacyclic 4 2 2 3"),
    ("A4", "alternating 4"),
    ("C7:C3", "metacyclic 7 3 0 2"),
    ("C13:C4", "metacyclic 13 4 0 5"),
    ("C31:C5", "metacyclic 31 5 0 2"),
    ("C49:C3", "metacyclic 49 3 0 18"),
];

/// Orbits of x under conjugation combined with x -> x^k for k in `exps(|x|)`.
fn orbit_count(g: &Group, exps: impl Fn(usize) -> Vec<usize>) -> usize {
    let mut seen = vec![false; g.size()];
    let mut count = 0;
    for x in 0..g.size() {
        if seen[x] {
            continue;
        }
        count += 1;
        let mut stack = vec![x];
        seen[x] = true;
        while let Some(y) = stack.pop() {
            let mut next: Vec<usize> = (0..g.size()).map(|t| g.mul(g.mul(g.inv(t), y), t)).collect();
            next.extend(exps(g.element_order(y)).into_iter().map(|k| g.pow(y, k as i64)));
            for z in next {
                if !seen[z] {
                    seen[z] = true;
                    stack.push(z);
                }
            }
        }
    }
    count
}

fn real_classes(g: &Group) -> usize {
    orbit_count(g, |n| vec![n.max(1) - 1])
}

fn rational_classes(g: &Group) -> usize {
    orbit_count(g, |n| (1..=n.max(1)).filter(|&k| gcd(k as u64, n as u64) == 1).collect())
}

fn rank_cross_validation() -> Outcome {
    let mut parts = Vec::new();
    for (name, spec) in TEST_GROUPS {
        let g = build(spec)?;
        let pairs = ok(strong_shoda_pairs(&g, 512))?;
        let report = ok(rank(&g, &pairs))?;
        let real = real_classes(&g);
        let rational = rational_classes(&g);
        let oracle = real as i64 - rational as i64;
        ensure(report.total == oracle, format!("{name}: formula {} vs oracle {oracle}", report.total))?;
        parts.push(format!("{name}={}", report.total));
    }
    Ok(parts.join(" "))
}

// Projection table.

fn projection_table() -> Outcome {
    // (group order, kernel generator exponent) inside a cyclic group: [H:K] = order / |K|.
    let chains: [(u64, u64, &[u64], &[i64]); 7] = [
        (4, 0, &[3], &[1, 3]),
        (12, 4, &[3, 5], &[1, 2]),
        (8, 0, &[3, 5, 7], &[1, 3]),
        (24, 8, &[5, 7], &[1, 5]),
        (9, 0, &[2, 4], &[1, 2]),
        (18, 9, &[2, 5, 7], &[1, 4]),
        (27, 0, &[2, 4], &[1, 2]),
    ];
    let mut checked = 0usize;
    let mut indices = BTreeSet::new();
    for (order, kgen, ks, rs) in chains {
        let g = ok(FiniteGroup::cyclic(order))?;
        let kernel = if kgen == 0 { Subgroup::trivial(&g) } else { ok(Subgroup::generated(&g, &[kgen as usize]))? };
        let ctx = ok(ChainContext::new(&Subgroup::whole(&g), &kernel))?;
        indices.insert(ctx.pn());
        for &k in ks {
            for &r in rs {
                for s in 0..=ctx.n {
                    for j in 0..=s {
                        let (c, ci) = ok(chain_product_in(&ctx, k, r, j, s))?;
                        ensure((&c * &ci).is_one(), format!("C{order}: inverse fails"))?;
                        for j1 in 0..=s {
                            let got = ok(ctx.projection(&c, j1))?;
                            let want = expected_projection(&ctx, k, r, j, j1, s)?;
                            ensure(
                                got == want,
                                format!("C{order}/K, k={k} r={r} j={j} j1={j1} s={s}: {got:?} vs {want:?}"),
                            )?;
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    ensure(indices == BTreeSet::from([4, 8, 9, 27]), format!("indices covered {indices:?}"))?;
    Ok(format!("{checked} projections over [H:K] in {{4, 8, 9, 27}}"))
}

/// η_k(ζ^r_{p^{s−j}})^{O_{p^n}(k)·p^{s−1}·n_{H,K}} when j = j₁, else 1, in ℚ(ζ_{p^{n−j₁}}).
fn expected_projection(ctx: &ChainContext, k: u64, r: i64, j: u32, j1: u32, s: u32) -> std::result::Result<CyclotomicNumber, String> {
    let order = ctx.p.pow(ctx.n - j1) as usize;
    if j != j1 {
        return Ok(CyclotomicNumber::one(order));
    }
    let o = mult_order(k, ctx.pn()).ok_or("k not a unit")?;
    let e = o * ctx.n_hk * if s == 0 { 1 } else { ctx.p.pow(s - 1) };
    // The quotient (1 − z^k)/(1 − z) computed by field division, not by the geometric sum.
    let d = ctx.p.pow(s - j) as usize;
    let z = CyclotomicNumber::zeta_pow(d, r);
    let one = CyclotomicNumber::one(d);
    let base = if z.is_one() { one } else { ok((&one - &ok(z.pow(k as i64))?).div(&(&one - &z)))? };
    ok(ok(base.embed(order))?.pow(e as i64))
}

// Central basis.

fn central_basis() -> Outcome {
    let (mc, units) = ok(metacyclic_central_basis(31, 1, 5, 1, 2))?;
    let expected = (5 - 1) / 2 + (31 - 1) / 10 - 2;
    ensure(units.len() == expected, format!("{} units, expected {expected}", units.len()))?;
    for u in &units {
        ensure(u.element.is_central(), "not central")?;
        ensure(u.element.is_integral() && u.inverse.is_integral(), "not integral")?;
        ensure(u.element.is_unit_with_inverse(&u.inverse), "inverse fails")?;
    }
    let pairs = ok(strong_shoda_pairs(&mc.group, 512))?;
    let elements: Vec<_> = units.iter().map(|u| u.element.clone()).collect();
    let cert = ok(independence_check_with(&elements, &pairs, 128))?;
    let smallest = cert.smallest_singular_value.unwrap_or(0.0);
    ensure(cert.rank == 3, format!("numeric rank {}", cert.rank))?;
    ensure(smallest > 1e-6, format!("smallest singular value {smallest:e}"))?;
    ensure(cert.precision_bits == 128, "precision")?;
    Ok(format!("3 units, rank 3, smallest singular value {smallest:.4e} at 128 bits"))
}

// Idempotents and matrix units.

fn idempotents() -> Outcome {
    let mut parts = Vec::new();
    for (name, spec) in [("C7:C3", "metacyclic 7 3 0 2"), ("C13:C4", "metacyclic 13 4 0 5"), ("C49:C3", "metacyclic 49 3 0 18")] {
        let g = build(spec)?;
        let mut built = 0;
        for pair in ok(strong_shoda_pairs(&g, 512))? {
            let comp = ok(component_descriptor(&pair))?;
            if !comp.twist_trivial {
                continue;
            }
            let set = ok(primitive_idempotents_of(&comp))?;
            let e = pair.e();
            let want = g.size() / pair.h.order();
            ensure(set.idempotents.len() == want, format!("{name}: {} idempotents, [G:H] = {want}", set.idempotents.len()))?;
            let mut sum = GroupAlgebraElement::zero(&g);
            for (i, x) in set.idempotents.iter().enumerate() {
                ensure(x.is_idempotent(), format!("{name}: not idempotent"))?;
                for y in &set.idempotents[i + 1..] {
                    ensure((x * y).is_zero() && (y * x).is_zero(), format!("{name}: not orthogonal"))?;
                }
                sum = &sum + x;
            }
            ensure(sum == e, format!("{name}: idempotents do not sum to e"))?;
            let units = set.matrix_units();
            let relations =
                if units.len() <= 4 { check_matrix_units(&units, &e) } else { check_matrix_units_sampled(&units, &e, 1000, 0) };
            ensure(relations, format!("{name}: matrix unit relations fail"))?;
            built += 1;
        }
        parts.push(format!("{name}: {built} components"));
    }
    Ok(parts.join(", "))
}

// Identity suites.

const DRAWS: usize = 1000;

fn b(g: &Group, x: usize, k: u64, m: u64) -> std::result::Result<GroupAlgebraElement, String> {
    ok(BassUnitSpec::new(g, x, k, m).and_then(|s| bass_unit(g, &s)))
}

fn unit_mod(rng: &mut ChaCha8Rng, n: u64) -> u64 {
    loop {
        let k = rng.gen_range(1..n.max(2));
        if gcd(k, n) == 1 {
            return k;
        }
    }
}

fn identity_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let groups: Vec<Group> = ["cyclic 6", "cyclic 10", "cyclic 12", "cyclic 16", "cyclic 21", "metacyclic 7 3 0 2", "metacyclic 13 4 0 5", "metacyclic 4 2 2 3"]
        .iter()
        .map(|s| build(s))
        .collect::<std::result::Result<_, _>>()?;
    let basis = |g: &Group, x: usize, e: i64| GroupAlgebraElement::basis(g, g.pow(x, e));
    for eq in 1..=7 {
        for _ in 0..DRAWS {
            let g = &groups[rng.gen_range(0..groups.len())];
            let x = loop {
                let x = rng.gen_range(0..g.size());
                if g.element_order(x) > 1 {
                    break x;
                }
            };
            let n = g.element_order(x) as u64;
            let k = unit_mod(&mut rng, n);
            let o = mult_order(k, n).unwrap_or(1);
            let s = rng.gen_range(1..=2u64);
            let holds = match eq {
                1 => b(g, x, k, o * s)? == b(g, x, k + rng.gen_range(1..=3) * n, o * s)?,
                2 => {
                    let s1 = rng.gen_range(1..=2u64);
                    &b(g, x, k, o * s)? * &b(g, x, k, o * s1)? == b(g, x, k, o * (s + s1))?
                }
                3 => {
                    let k1 = unit_mod(&mut rng, n);
                    let m = lcm(o, mult_order(k1, n).unwrap_or(1)) * s;
                    &b(g, x, k, m)? * &b(g, g.pow(x, k as i64), k1, m)? == b(g, x, k * k1, m)?
                }
                4 => b(g, x, 1, rng.gen_range(1..=40))?.is_one(),
                5 => {
                    let m = 2 * rng.gen_range(1..=10u64);
                    b(g, x, n - 1, m)? == basis(g, x, -(m as i64))
                }
                6 => {
                    let r = rng.gen_range(1..=3u64);
                    b(g, x, k, o * s)?.pow(r) == b(g, x, k, o * s * r)?
                }
                _ => {
                    let m = lcm(o, 2) * s;
                    b(g, x, n - k, m)? == &b(g, x, k, m)? * &basis(g, x, -((k * m) as i64))
                }
            };
            ensure(holds, format!("Bass identity ({eq}) fails at n = {n}, k = {k}"))?;
        }
    }
    for eq in 8..=11 {
        for _ in 0..DRAWS {
            let n = rng.gen_range(2..=100usize);
            let k = unit_mod(&mut rng, n as u64) as i64;
            let one = CyclotomicNumber::one(n);
            let zeta = CyclotomicNumber::zeta(n);
            let quotient = |k: i64| ok((&one - &CyclotomicNumber::zeta_pow(n, k)).div(&(&one - &zeta)));
            let holds = match eq {
                8 => {
                    let t = rng.gen_range(1..=3) * n as i64;
                    ok(eta(k + t, n, 1))? == ok(eta(k, n, 1))? && ok(eta(k, n, 1))? == quotient(k)?
                }
                9 => {
                    let k1 = unit_mod(&mut rng, n as u64) as i64;
                    ok(eta(k * k1, n, 1))? == &ok(eta(k, n, 1))? * &ok(eta(k1, n, k))?
                }
                10 => ok(eta(1, n, rng.gen_range(1..n as i64)))?.is_one(),
                _ => ok(eta(n as i64 - k, n, 1))? == -(&CyclotomicNumber::zeta_pow(n, -k) * &quotient(k)?),
            };
            ensure(holds, format!("cyclotomic identity ({eq}) fails at n = {n}, k = {k}"))?;
        }
    }
    Ok(format!("{DRAWS} draws for each of the 11 identities"))
}

// Partition of unity.

fn partition() -> Outcome {
    let mut parts = Vec::new();
    for (name, spec) in TEST_GROUPS {
        let g = build(spec)?;
        let pairs = ok(strong_shoda_pairs(&g, 512))?;
        let es: Vec<_> = pairs.iter().map(|p| p.e()).collect();
        let mut sum = GroupAlgebraElement::zero(&g);
        for (i, e) in es.iter().enumerate() {
            ensure(e.is_idempotent() && e.is_central(), format!("{name}: e not a central idempotent"))?;
            for f in &es[i + 1..] {
                ensure((e * f).is_zero(), format!("{name}: e's not orthogonal"))?;
            }
            sum = &sum + e;
        }
        ensure(sum.is_one(), format!("{name}: sum of e's is not 1"))?;
        ok(check_partition_of_unity(&g, &es.iter().collect::<Vec<_>>()))?;
        let rational = rational_classes(&g);
        ensure(pairs.len() == rational, format!("{name}: {} pairs vs {rational} rational classes", pairs.len()))?;
        parts.push(format!("{name}={}", pairs.len()));
    }
    Ok(parts.join(" "))
}

// Certificates.

fn certificates() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut parts = Vec::new();
    for (name, params) in [("C7:C3", (7, 1, 3, 1, 2)), ("C13:C4", (13, 1, 2, 2, 5))] {
        let (q, m, p, n, r) = params;
        let set = ok(full_generator_set(q, m, p, n, r))?;
        let g = &set.mc.group;
        for j in 1..=m {
            let frame = ok(ComponentFrame::new(&set.mc, j))?;
            for u in set.generators.iter().filter(|u| u.component == Some(j)) {
                ensure(u.element.is_integral() && u.inverse.is_integral(), format!("{name}: not integral"))?;
                ensure(u.element.is_unit_with_inverse(&u.inverse), format!("{name}: inverse fails"))?;
                let upper = match u.role {
                    Role::VPlus => true,
                    Role::VMinus => false,
                    _ => continue,
                };
                ensure(ok(frame.image(&u.element))?.is_unitriangular(upper), format!("{name}: image not unitriangular"))?;
            }
        }
        let cert: GeneratorCertificate = ok(serde_json::from_str(&ok(serde_json::to_string(&set.certificate()))?))?;
        ensure(ok(verify_certificate(&cert))?.passed, format!("{name}: emitted certificate rejected"))?;

        // Perturb one coefficient (possibly a zero one) of each element and each inverse.
        let mut rejected = 0;
        for i in 0..cert.generators.len() {
            for which in 0..2 {
                let mut single = cert.clone();
                single.t_values.clear();
                let mut gen = single.generators[i].clone();
                let target = if which == 0 { &mut gen.element } else { &mut gen.inverse };
                let mut el = ok(GroupAlgebraElement::from_json(g, target))?;
                let at = rng.gen_range(0..g.size());
                let delta = rat(if rng.gen_bool(0.5) { 1 } else { -1 } * rng.gen_range(1..=3), 1);
                el = &el + &GroupAlgebraElement::basis(g, at).scale(&delta);
                *target = el.to_json(&cert.group.spec);
                single.generators = vec![gen];
                match verify_certificate(&single) {
                    Err(e) if e.exit_code() == 4 => rejected += 1,
                    other => return Err(format!("{name}: perturbation of generator {i} not rejected: {other:?}")),
                }
            }
        }
        // And a few perturbations inside the full certificate.
        for i in [0, cert.generators.len() / 2, cert.generators.len() - 1] {
            let mut bad = cert.clone();
            bad.generators[i].element.terms[0].coeff += rat(1, 1);
            ensure(matches!(verify_certificate(&bad), Err(e) if e.exit_code() == 4), format!("{name}: full tamper accepted"))?;
            rejected += 1;
        }
        parts.push(format!("{name}: {} generators, {rejected} perturbations rejected", cert.generators.len()));
    }
    Ok(parts.join("; "))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("golden example C7:C3", golden, 1),
        ("obstruction C19:C9", obstruction, 5),
        ("rank cross-validation", rank_cross_validation, 30),
        ("projection table", projection_table, 60),
        ("central basis C31:C5", central_basis, 60),
        ("idempotent completeness", idempotents, 120),
        ("identity suites", identity_suites, 30),
        ("partition of unity", partition, 60),
        ("unit-generator certificates", certificates, 60),
    ];
    // Criterion numbers given on the command line select a subset.
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        if !only.is_empty() && !only.contains(&(i + 1)) {
            continue;
        }
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > Duration::from_secs(limit) => {
                Err(format!("{detail}; took {elapsed:.2?}, limit {limit}s"))
            }
            r => r,
        };
        match result {
            Ok(detail) => println!("criterion {}: PASS {name} ({elapsed:.2?}) {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({elapsed:.2?}) {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
