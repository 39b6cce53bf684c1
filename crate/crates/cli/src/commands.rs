use crate::{Cli, Command, SpecArgs};
use serde_json::{json, Value};
use std::fmt::Write as _;
use wedderkit::group::{conjugacy_classes, ClassKind, Group, GroupSpec};
use wedderkit::idem::{check_matrix_units, check_matrix_units_sampled, primitive_idempotents_of};
use wedderkit::shoda::{
    check_partition_of_unity, component_descriptor, component_descriptor_searching, strong_shoda_pairs,
    total_dimension, FaithfulMetacyclic, SimpleComponent, StrongShodaPair,
};
use wedderkit::units::{central_virtual_basis, independence_check_with, metacyclic_basis_of, rank};
use wedderkit::unitgens::{full_generator_set_with, verify_certificate, GeneratorCertificate, GeneratorOptions, Role};
use wedderkit::{Error, Result};

/// Upper bound on the number of sections tried by `--search-section`.
const SECTION_SEARCH_CAP: usize = 100_000;
/// Matrix-unit relations are checked exhaustively up to this size, sampled above it.
const EXHAUSTIVE_UNITS_MAX: usize = 4;
const RELATION_SAMPLES: usize = 1000;

pub struct Output {
    pub json: Value,
    pub text: String,
    pub exit_code: u8,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, exit_code: 0 }
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            format!("{}\n", serde_json::to_string_pretty(&self.json).expect("serializable"))
        } else {
            self.text.clone()
        }
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e.exit_code() {
        3 => "unsupported",
        4 => "consistency",
        _ => "validation",
    }
}

struct Context {
    spec: String,
    group: Group,
    pairs: Vec<StrongShodaPair>,
}

impl Context {
    fn new(args: &SpecArgs, cli: &Cli) -> Result<Self> {
        let spec = GroupSpec::parse(&args.spec.join(" "))?;
        let group = spec.build()?;
        let pairs = strong_shoda_pairs(&group, cli.bound as usize)?;
        Ok(Context { spec: spec.to_string(), group, pairs })
    }

    fn component(&self, pair: &StrongShodaPair, search: bool) -> Result<SimpleComponent> {
        if search {
            component_descriptor_searching(pair, SECTION_SEARCH_CAP)
        } else {
            component_descriptor(pair)
        }
    }
}

fn labels(pair: &StrongShodaPair) -> String {
    let gens = |s: &wedderkit::group::Subgroup| {
        let g = s.group();
        let v: Vec<&str> = s.small_generators().iter().map(|&x| g.label(x)).collect();
        if v.is_empty() {
            "1".to_string()
        } else {
            format!("<{}>", v.join(", "))
        }
    };
    format!("({}, {})", gens(&pair.h), gens(&pair.k))
}

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Wedderburn(a) => wedderburn(&Context::new(a, cli)?, cli),
        Command::Rank(a) => rank_cmd(&Context::new(a, cli)?),
        Command::CentralBasis(a) => central_basis(&Context::new(a, cli)?, cli),
        Command::Idempotents(a) => idempotents(&Context::new(a, cli)?, cli, false),
        Command::MatrixUnits(a) => idempotents(&Context::new(a, cli)?, cli, true),
        Command::UnitGenerators(a) => unit_generators(a, cli),
        Command::Verify { certificate } => verify(certificate),
        Command::Oracle(a) => oracle(&Context::new(a, cli)?),
    }
}

fn wedderburn(ctx: &Context, cli: &Cli) -> Result<Output> {
    let comps = ctx.pairs.iter().map(|p| ctx.component(p, cli.search_section)).collect::<Result<Vec<_>>>()?;
    let total = total_dimension(&comps);
    if total != ctx.group.size() {
        return Err(Error::consistency(format!("component dimensions sum to {total}, not {}", ctx.group.size())));
    }
    let mut text = format!("{} (order {}): {} simple components\n", ctx.spec, ctx.group.size(), comps.len());
    let mut items = Vec::new();
    for c in &comps {
        let dim = total_dimension(std::slice::from_ref(c));
        let mut v = serde_json::to_value(c.to_json())?;
        v["dimension"] = json!(dim);
        items.push(v);
        let _ = writeln!(
            text,
            "  {:<24} M_{}(Q(zeta_{}) * N/H), [N:H]={}, center degree {}, twist {}",
            labels(&c.pair),
            c.matrix_degree,
            c.cyclotomic_order,
            c.section.len(),
            c.center_degree(),
            if c.twist_trivial { "trivial" } else { "NONTRIVIAL" }
        );
    }
    Ok(Output::ok(json!({"group": ctx.spec, "order": ctx.group.size(), "components": items}), text))
}

fn rank_cmd(ctx: &Context) -> Result<Output> {
    let report = rank(&ctx.group, &ctx.pairs)?;
    let mut text = format!(
        "rank {} (real classes {}, rational classes {})\n",
        report.total, report.real_classes, report.rational_classes
    );
    for (c, p) in report.contributions.iter().zip(&ctx.pairs) {
        let _ = writeln!(
            text,
            "  {:<24} [H:K]={} [N:H]={} k={} contributes {}",
            labels(p),
            c.index,
            c.normalizer_index,
            c.k_flag,
            c.contribution
        );
    }
    Ok(Output::ok(serde_json::to_value(&report)?, text))
}

fn central_basis(ctx: &Context, cli: &Cli) -> Result<Output> {
    let units = match FaithfulMetacyclic::from_group(&ctx.group) {
        Ok(mc) => metacyclic_basis_of(&mc)?,
        Err(_) => central_virtual_basis(&ctx.group, &ctx.pairs)?,
    };
    let elements: Vec<_> = units.iter().map(|u| u.element.clone()).collect();
    let cert = independence_check_with(&elements, &ctx.pairs, cli.precision)?;
    let mut text = format!("{} central units\n", units.len());
    let mut certs = Vec::new();
    let mut ok = cert.passed;
    for u in &units {
        let checks = u.checks();
        ok &= checks.all();
        let _ = writeln!(
            text,
            "  {} [central {}, integral {}, unit {}]",
            u.description, checks.central, checks.integral, checks.unit
        );
        certs.push(u.certificate(&ctx.spec));
    }
    let _ = writeln!(
        text,
        "independence: rank {} of {} over {} places, smallest singular value {} ({} bits) -> {}",
        cert.rank,
        cert.units,
        cert.places,
        cert.smallest_singular_value.map_or("n/a".to_string(), |v| format!("{v:.6e}")),
        cert.precision_bits,
        if cert.passed { "pass" } else { "FAIL" }
    );
    let mut out = Output::ok(json!({"group": ctx.spec, "units": certs, "independence": cert}), text);
    if !ok {
        out.exit_code = 4;
    }
    Ok(out)
}

fn idempotents(ctx: &Context, cli: &Cli, units: bool) -> Result<Output> {
    let mut items = Vec::new();
    let mut text = String::new();
    let mut exit_code = 0u8;
    for pair in &ctx.pairs {
        let label = labels(pair);
        let set = ctx.component(pair, cli.search_section).and_then(|c| primitive_idempotents_of(&c));
        let set = match set {
            Ok(s) => s,
            Err(e) => {
                exit_code = exit_code.max(e.exit_code() as u8);
                let _ = writeln!(text, "  {label:<24} {e}");
                items.push(json!({"pair_id": pair.summary(), "error": error_kind(&e), "message": e.to_string()}));
                continue;
            }
        };
        if units {
            let mu = set.matrix_units();
            let d = mu.len();
            let (mode, ok) = if d <= EXHAUSTIVE_UNITS_MAX {
                ("exhaustive", check_matrix_units(&mu, &pair.e()))
            } else {
                ("sampled", check_matrix_units_sampled(&mu, &pair.e(), RELATION_SAMPLES, 0))
            };
            if !ok {
                exit_code = exit_code.max(4);
            }
            let _ = writeln!(text, "  {label:<24} {d}x{d} matrix units, relations ({mode}) {}", pass(ok));
            let elems: Vec<Vec<_>> =
                mu.iter().map(|row| row.iter().map(|x| x.to_json(&ctx.spec)).collect()).collect();
            items.push(json!({
                "pair_id": pair.summary(),
                "size": d,
                "units": elems,
                "checks": {"relations": ok, "mode": mode},
            }));
        } else {
            let j = set.to_json(&ctx.spec);
            if !j.checks.all() {
                exit_code = exit_code.max(4);
            }
            let _ = writeln!(
                text,
                "  {label:<24} {} idempotents, orthogonal {}, sum = e {}",
                j.checks.count, j.checks.orthogonal, j.checks.sum_equals_e
            );
            items.push(serde_json::to_value(&j)?);
        }
    }
    let key = if units { "matrix_units" } else { "idempotent_sets" };
    Ok(Output { json: json!({"group": ctx.spec, key: items}), text, exit_code })
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "hold"
    } else {
        "FAIL"
    }
}

fn unit_generators(args: &SpecArgs, cli: &Cli) -> Result<Output> {
    let group = GroupSpec::parse(&args.spec.join(" "))?.build()?;
    let mc = FaithfulMetacyclic::from_group(&group)?;
    let set = full_generator_set_with(&mc, GeneratorOptions { bicyclic: cli.bicyclic })?;
    let cert = set.certificate();
    let mut text = format!("{}: {} generators\n", cert.group.spec, set.generators.len());
    for role in [Role::Central, Role::VPlus, Role::VMinus, Role::Bicyclic] {
        let n = set.by_role(role).count();
        if n > 0 {
            let _ = writeln!(text, "  {:<9} {n}", serde_json::to_value(role)?.as_str().unwrap_or("?"));
        }
    }
    for (j, t) in &set.t_values {
        let _ = writeln!(text, "  t_{j} = {t}");
    }
    let ok = set.all_checks_pass();
    let _ = writeln!(text, "  checks {}", if ok { "pass" } else { "FAIL" });
    let mut out = Output::ok(serde_json::to_value(&cert)?, text);
    if !ok {
        out.exit_code = 4;
    }
    Ok(out)
}

fn verify(path: &std::path::Path) -> Result<Output> {
    let cert: GeneratorCertificate = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let report = verify_certificate(&cert)?;
    let text = format!("certificate verified: {} generators {:?}\n", report.generators, report.by_role);
    Ok(Output::ok(serde_json::to_value(&report)?, text))
}

fn oracle(ctx: &Context) -> Result<Output> {
    let g = &ctx.group;
    let ordinary = conjugacy_classes(g, ClassKind::Ordinary).len();
    let real = conjugacy_classes(g, ClassKind::Real).len();
    let rational = conjugacy_classes(g, ClassKind::Rational).len();
    let es: Vec<_> = ctx.pairs.iter().map(|p| p.e()).collect();
    check_partition_of_unity(g, &es.iter().collect::<Vec<_>>())?;
    let report = rank(g, &ctx.pairs)?;
    let class_match = ctx.pairs.len() == rational;
    let text = format!(
        "classes: {ordinary} ordinary, {real} real, {rational} rational\n\
         strong Shoda pairs: {} ({})\n\
         partition of unity: pass\n\
         rank: formula {} vs #real - #rational {}\n",
        ctx.pairs.len(),
        if class_match { "matches rational classes" } else { "MISMATCH" },
        report.total,
        report.oracle_total
    );
    let mut out = Output::ok(
        json!({
            "group": ctx.spec,
            "order": g.size(),
            "classes": {"ordinary": ordinary, "real": real, "rational": rational},
            "strong_shoda_pairs": ctx.pairs.len(),
            "class_count_matches": class_match,
            "partition_of_unity": true,
            "rank": {"formula": report.total, "oracle": report.oracle_total},
        }),
        text,
    );
    if !class_match {
        out.exit_code = 4;
    }
    Ok(out)
}
