//! Generators of a finite-index subgroup of the unit group of ℤG for faithful
//! metacyclic G = C_{q^m} ⋊ C_{p^n}: central units, elementary-type units
//! built from matrix units, and the bicyclic supplement for C_{3^m} ⋊ C_2.

mod certificate;
mod generators;
mod orbit;

pub use certificate::{
    verify_certificate, GeneratorCertificate, GeneratorJson, GroupJson, MetacyclicParameters, TValueJson,
    VerifyReport, CERTIFICATE_SCHEMA,
};
pub use generators::{
    bicyclic_supplement, full_generator_set, full_generator_set_with, is_exceptional, scalar_of, t_scale,
    v_generators, v_generators_in, ComponentFrame, GeneratorChecks, GeneratorOptions, GeneratorSet, Role, Sign,
    UnitGenerator,
};
pub use orbit::{orbit_sums, OrbitSum};
