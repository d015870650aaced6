//! Scalar math shims. Everything transcendental goes through `libm` so the
//! solver produces bit-identical numbers with and without `std`.

pub(crate) use libm::{cos, erf, exp, log as ln, sin, sqrt};

pub(crate) const TAU: f64 = core::f64::consts::TAU;
const FRAC_1_SQRT_2: f64 = core::f64::consts::FRAC_1_SQRT_2;

/// Standard normal density.
pub(crate) fn std_normal_pdf(z: f64) -> f64 {
    exp(-0.5 * z * z) / sqrt(TAU)
}

/// Standard normal cumulative distribution.
pub(crate) fn std_normal_cdf(z: f64) -> f64 {
    0.5 * (1.0 + erf(z * FRAC_1_SQRT_2))
}
