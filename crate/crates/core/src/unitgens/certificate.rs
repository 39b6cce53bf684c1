use super::generators::{ComponentFrame, GeneratorChecks, GeneratorSet, Role};
use crate::algebra::{ElementJson, GroupAlgebraElement};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Group};
use crate::shoda::FaithfulMetacyclic;
use serde::{Deserialize, Serialize};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

pub const CERTIFICATE_SCHEMA: &str = "wedderkit-cert/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetacyclicParameters {
    pub q: u64,
    pub m: u32,
    pub p: u64,
    pub n: u32,
    pub r: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupJson {
    pub spec: String,
    pub parameters: MetacyclicParameters,
    pub order: usize,
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TValueJson {
    pub component: u32,
    pub t: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub role: Role,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit_base: Option<usize>,
    pub description: String,
    pub element: ElementJson,
    pub inverse: ElementJson,
    pub checks: GeneratorChecks,
}

/// Self-contained record of a generator set: the group table, every
/// generator with its inverse, and the checks that were run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorCertificate {
    pub schema: String,
    pub group: GroupJson,
    pub t_values: Vec<TValueJson>,
    pub bicyclic_supplement: bool,
    pub generators: Vec<GeneratorJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub generators: usize,
    pub by_role: BTreeMap<String, usize>,
    pub passed: bool,
}

impl GeneratorSet {
    pub fn certificate(&self) -> GeneratorCertificate {
        let mc = &self.mc;
        let g = &mc.group;
        let spec = format!("metacyclic {} {} 0 {}", mc.qm(), mc.pn(), mc.r);
        GeneratorCertificate {
            schema: CERTIFICATE_SCHEMA.to_string(),
            group: GroupJson {
                parameters: MetacyclicParameters { q: mc.q, m: mc.m, p: mc.p, n: mc.n, r: mc.r },
                order: g.size(),
                labels: g.labels().to_vec(),
                table: g.table().to_vec(),
                spec: spec.clone(),
            },
            t_values: self.t_values.iter().map(|(j, t)| TValueJson { component: *j, t: t.to_string() }).collect(),
            bicyclic_supplement: self.supplemented,
            generators: self
                .generators
                .iter()
                .map(|u| GeneratorJson {
                    role: u.role,
                    component: u.component,
                    h: u.position.map(|p| p.0),
                    k: u.position.map(|p| p.1),
                    orbit_base: u.orbit_base,
                    description: u.description.clone(),
                    element: u.element.to_json(&spec),
                    inverse: u.inverse.to_json(&spec),
                    checks: u.checks.clone(),
                })
                .collect(),
        }
    }
}

fn fail(i: usize, what: &str) -> Error {
    Error::consistency(format!("generator {i}: {what}"))
}

/// Re-checks a certificate from its JSON content alone.
///
/// The group is rebuilt from the embedded table; the metacyclic parameters
/// are only used to rebuild ψ_j for the triangularity checks, after the
/// regenerated table has been compared with the embedded one.
pub fn verify_certificate(cert: &GeneratorCertificate) -> Result<VerifyReport> {
    if cert.schema != CERTIFICATE_SCHEMA {
        return Err(Error::validation(format!("unknown certificate schema {:?}", cert.schema)));
    }
    if cert.group.order != cert.group.table.len() {
        return Err(Error::consistency("group order does not match the table"));
    }
    let table: Group = FiniteGroup::from_table(cert.group.table.clone(), cert.group.labels.clone())?;
    let pr = cert.group.parameters;
    let mc = FaithfulMetacyclic::new(pr.q, pr.m, pr.p, pr.n, pr.r)?;
    if mc.group.table() != table.table() {
        return Err(Error::consistency("embedded table differs from the stated presentation"));
    }
    let g = &mc.group;
    let mut frames: BTreeMap<u32, ComponentFrame> = BTreeMap::new();
    let mut by_role = BTreeMap::new();
    for (i, gen) in cert.generators.iter().enumerate() {
        let u = GroupAlgebraElement::from_json(g, &gen.element)?;
        let inv = GroupAlgebraElement::from_json(g, &gen.inverse)?;
        if !u.is_integral() || !inv.is_integral() {
            return Err(fail(i, "not integral"));
        }
        if !u.is_unit_with_inverse(&inv) {
            return Err(fail(i, "stated inverse is wrong"));
        }
        match gen.role {
            Role::Central => {
                if !u.is_central() {
                    return Err(fail(i, "not central"));
                }
            }
            Role::Bicyclic => {
                let d = &u - &GroupAlgebraElement::one(g);
                if !(&d * &d).is_zero() {
                    return Err(fail(i, "u - 1 does not square to zero"));
                }
            }
            Role::VPlus | Role::VMinus => {
                let (Some(j), Some(h), Some(k)) = (gen.component, gen.h, gen.k) else {
                    return Err(fail(i, "missing component or position"));
                };
                if (gen.role == Role::VPlus) != (h < k) || h == k {
                    return Err(fail(i, "position does not match the role"));
                }
                if let Entry::Vacant(e) = frames.entry(j) {
                    e.insert(ComponentFrame::new(&mc, j)?);
                }
                let frame = &frames[&j];
                let d = &u - &GroupAlgebraElement::one(g);
                if !(&d * &d).is_zero() {
                    return Err(fail(i, "u - 1 does not square to zero"));
                }
                if &d * &frame.pair.e() != d {
                    return Err(fail(i, "not supported on its component"));
                }
                if !frame.is_elementary_at(&u, h, k)? {
                    return Err(fail(i, "psi image is not elementary at the stated position"));
                }
            }
        }
        if !gen.checks.all() {
            return Err(fail(i, "recorded checks do not all pass"));
        }
        *by_role.entry(serde_json::to_value(gen.role)?.as_str().unwrap_or("?").to_string()).or_insert(0) += 1;
    }
    for tv in &cert.t_values {
        if let Entry::Vacant(e) = frames.entry(tv.component) {
            e.insert(ComponentFrame::new(&mc, tv.component)?);
        }
        if frames[&tv.component].t.to_string() != tv.t {
            return Err(Error::consistency(format!("t value of component {} does not match", tv.component)));
        }
    }
    Ok(VerifyReport { generators: cert.generators.len(), by_role, passed: true })
}
