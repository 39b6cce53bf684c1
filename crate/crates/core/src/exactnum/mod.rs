//! Exact rational and cyclotomic arithmetic, Galois actions, fixed fields,
//! exact linear algebra and high-precision complex embeddings.

pub mod cyclotomic;
pub mod embed;
pub mod galois;
pub mod linalg;
pub mod numtheory;
pub mod rational;

pub use cyclotomic::{cyclotomic_polynomial, CyclotomicNumber};
pub use embed::{complex_embed, ComplexFixed, Fixed, DEFAULT_PRECISION_BITS};
pub use galois::{fixed_field, galois_apply, FixedFieldBasis, GaloisAutomorphism};
pub use linalg::FieldMatrix;
pub use rational::{rat, Rational};
