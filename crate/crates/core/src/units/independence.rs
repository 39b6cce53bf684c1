use super::cyclo::norm_representatives;
use super::rank::action_image;
use crate::algebra::{GroupAlgebraElement, LinearCharacter};
use crate::error::{Error, Result};
use crate::exactnum::{complex_embed, CyclotomicNumber, GaloisAutomorphism, Rational, DEFAULT_PRECISION_BITS};
use crate::group::Group;
use crate::shoda::{strong_shoda_pairs, StrongShodaPair};
use crate::group::DEFAULT_SUBGROUP_BOUND;
use nalgebra::DMatrix;
use num_traits::Zero;
use serde::Serialize;

/// Singular values below this count as zero.
pub const INDEPENDENCE_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug, Serialize)]
pub struct IndependenceCertificate {
    pub units: usize,
    pub places: usize,
    pub rank: usize,
    pub singular_values: Vec<f64>,
    pub smallest_singular_value: Option<f64>,
    pub precision_bits: u32,
    pub tolerance: f64,
    pub passed: bool,
}

/// Central character ω_χ(u) = χ(u)/χ(1) for χ induced from the linear character of the pair.
pub fn central_character(pair: &StrongShodaPair, u: &GroupAlgebraElement) -> Result<CyclotomicNumber> {
    let g = pair.group();
    let ch = LinearCharacter::with_generator(&pair.h, &pair.k, pair.generator)?;
    let k = pair.index.max(1);
    let mut coeffs = vec![Rational::zero(); k];
    for (x, c) in u.terms() {
        for t in 0..g.size() {
            if let Some(e) = ch.exponent_of(g.conj(x, t)) {
                coeffs[e % k] += c;
            }
        }
    }
    let size = Rational::from_integer(g.size().into());
    let terms: Vec<(i64, Rational)> =
        coeffs.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (e as i64, c / &size)).collect();
    Ok(CyclotomicNumber::from_terms(k, &terms))
}

/// Log-embedding rank certificate at the default precision.
pub fn independence_check(units: &[GroupAlgebraElement], g: &Group) -> Result<IndependenceCertificate> {
    let pairs = strong_shoda_pairs(g, DEFAULT_SUBGROUP_BOUND)?;
    independence_check_with(units, &pairs, DEFAULT_PRECISION_BITS)
}

/// Builds the matrix of ln|σ(ω(u))| over one embedding per archimedean place
/// of each Wedderburn center, leaving out one place per center, and checks
/// that its numeric rank equals the number of units.
pub fn independence_check_with(
    units: &[GroupAlgebraElement],
    pairs: &[StrongShodaPair],
    precision_bits: u32,
) -> Result<IndependenceCertificate> {
    if units.iter().any(|u| !u.is_central()) {
        return Err(Error::validation("independence check needs central units"));
    }
    let mut columns: Vec<Vec<f64>> = Vec::new();
    for pair in pairs {
        let reps = norm_representatives(pair.index as u64, &action_image(pair));
        if reps.len() <= 1 {
            continue;
        }
        let omegas = units.iter().map(|u| central_character(pair, u)).collect::<Result<Vec<_>>>()?;
        for &s in &reps[1..] {
            let sigma = GaloisAutomorphism::new(pair.index as u64, s as i64)?;
            let mut col = Vec::with_capacity(units.len());
            for w in &omegas {
                let z = complex_embed(w, &sigma, precision_bits)?;
                col.push(z.ln_abs().ok_or_else(|| Error::consistency("unit projects to zero"))?);
            }
            columns.push(col);
        }
    }
    let (rows, cols) = (units.len(), columns.len());
    if rows == 0 {
        return Ok(IndependenceCertificate {
            units: 0,
            places: cols,
            rank: 0,
            singular_values: vec![],
            smallest_singular_value: None,
            precision_bits,
            tolerance: INDEPENDENCE_TOLERANCE,
            passed: true,
        });
    }
    let m = DMatrix::from_fn(rows, cols, |i, j| columns[j][i]);
    let mut sv: Vec<f64> = if cols == 0 { vec![] } else { m.svd(false, false).singular_values.iter().copied().collect() };
    sv.sort_by(|a, b| b.total_cmp(a));
    let rank = sv.iter().filter(|&&s| s > INDEPENDENCE_TOLERANCE).count();
    // With fewer places than units the missing singular values are zero.
    let smallest = if cols < rows { Some(0.0) } else { sv.last().copied() };
    Ok(IndependenceCertificate {
        units: rows,
        places: cols,
        rank,
        singular_values: sv,
        smallest_singular_value: smallest,
        precision_bits,
        tolerance: INDEPENDENCE_TOLERANCE,
        passed: rank == rows,
    })
}
