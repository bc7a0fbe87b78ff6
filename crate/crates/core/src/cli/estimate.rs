use crate::error::{domain, Result};
use crate::units::{norm, ParticlePair, StaticFieldConfig, CODATA};

/// Dimensionless field strength `beta = e^2 |B0| |E0| / (c m^2 omega0^2)`,
/// `m` the reduced mass of the pair.
pub fn estimate_beta(fields: &StaticFieldConfig, omega0: f64, pair: &ParticlePair) -> Result<f64> {
    if !(omega0.is_finite() && omega0 > 0.0) {
        return domain(format!("omega0 must be positive, got {omega0}"));
    }
    let e = pair.charge();
    let m = pair.reduced_mass();
    Ok(e * e * norm(fields.b0) * norm(fields.e0) / (CODATA.c_light * m * m * omega0 * omega0))
}

/// Refractive-index change `(N/V) chi_12 / (eps0 c)` for a number density in
/// m^-3 and chi_12 in C m / T.
pub fn estimate_delta_n(number_density: f64, chi12: f64) -> Result<f64> {
    if !(number_density.is_finite() && number_density > 0.0) {
        return domain(format!("number density must be positive, got {number_density}"));
    }
    Ok(number_density * chi12 / (CODATA.eps0 * CODATA.c_light))
}
