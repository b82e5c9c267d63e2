//! Surface fire spread physics.
//!
//! Rate of spread is `R = R0 * r` where `r` is the directional multiplier
//! built from the slope factor `Φs` and the wind factor `Φw`:
//!
//! ```text
//! Φs(A; β)      = a_s β^(-b_s) A²
//! Φw(U; σ, βr)  = C_w(σ, βr) U^B_w(σ)
//! C_w(σ, βr)    = a_w exp(-b_w σ^c_w) · βr^(-d_w exp(-e_w σ))
//! B_w(σ)        = f_w σ^g_w
//!
//!                 upslope (A >= 0)          downslope (A < 0)
//! headfire U>=0   1 + Φw + Φs               1 + max(0, Φw - Φs)
//! backfire U<0    1 + max(0, Φs - Φw(|U|))  1
//! ```
//!
//! Units are imperial: distances in ft, wind and spread rates in ft/min.
//! Travel times come out in minutes.

use serde::{Deserialize, Serialize};

use crate::error::{Result, WspError};

/// How the seven wind constants are wired into `C_w` and `B_w`.
///
/// `Published` is the default and matches the formulas above. `Classic`
/// swaps the roles of `(d_w, e_w)` and `(f_w, g_w)`, giving the exponent
/// `B = d_w σ^e_w` and the packing term `βr^(-f_w exp(-g_w σ))` found in
/// most fire-behaviour references.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WindWiring {
    #[default]
    Published,
    Classic,
}

/// Empirical constants of the slope and wind factors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FuelConstants {
    pub a_s: f64,
    pub b_s: f64,
    pub a_w: f64,
    pub b_w: f64,
    pub c_w: f64,
    pub d_w: f64,
    pub e_w: f64,
    pub f_w: f64,
    pub g_w: f64,
    #[serde(default)]
    pub wiring: WindWiring,
}

impl Default for FuelConstants {
    fn default() -> Self {
        FuelConstants {
            a_s: 5.275,
            b_s: 0.3,
            a_w: 7.47,
            b_w: 0.133,
            c_w: 0.55,
            d_w: 0.02526,
            e_w: 0.54,
            f_w: 0.715,
            g_w: 3.59e-4,
            wiring: WindWiring::Published,
        }
    }
}

/// Fuel-bed parameters: packing ratio, surface-area-to-volume ratio
/// (ft²/ft³) and relative packing ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpreadParams {
    beta: f64,
    sigma: f64,
    beta_rel: f64,
}

impl Default for SpreadParams {
    fn default() -> Self {
        SpreadParams { beta: 0.005, sigma: 2000.0, beta_rel: 1.0 }
    }
}

impl SpreadParams {
    pub fn new(beta: f64, sigma: f64, beta_rel: f64) -> Result<Self> {
        for (name, v) in [("beta", beta), ("sigma", sigma), ("beta_rel", beta_rel)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(WspError::domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(SpreadParams { beta, sigma, beta_rel })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn beta_rel(&self) -> f64 {
        self.beta_rel
    }
}

/// `Φs = a_s β^(-b_s) A²` for slope tangent `A`.
pub fn slope_factor(slope_tan: f64, beta: f64, c: &FuelConstants) -> Result<f64> {
    if !(beta > 0.0) {
        return Err(WspError::domain(format!("packing ratio must be positive, got {beta}")));
    }
    Ok(slope_factor_unchecked(slope_tan, beta, c))
}

fn slope_factor_unchecked(slope_tan: f64, beta: f64, c: &FuelConstants) -> f64 {
    c.a_s * beta.powf(-c.b_s) * slope_tan * slope_tan
}

/// Coefficient `C_w` and exponent `B_w` of the wind factor.
pub fn wind_coefficients(p: &SpreadParams, c: &FuelConstants) -> (f64, f64) {
    let base = c.a_w * (-c.b_w * p.sigma.powf(c.c_w)).exp();
    match c.wiring {
        WindWiring::Published => {
            let coef = base * p.beta_rel.powf(-c.d_w * (-c.e_w * p.sigma).exp());
            (coef, c.f_w * p.sigma.powf(c.g_w))
        }
        WindWiring::Classic => {
            let coef = base * p.beta_rel.powf(-c.f_w * (-c.g_w * p.sigma).exp());
            (coef, c.d_w * p.sigma.powf(c.e_w))
        }
    }
}

/// `Φw = C_w U^B_w` for midflame wind speed `U >= 0` (ft/min).
pub fn wind_factor(wind: f64, p: &SpreadParams, c: &FuelConstants) -> Result<f64> {
    if !(wind >= 0.0) {
        return Err(WspError::domain(format!("wind speed must be nonnegative, got {wind}")));
    }
    Ok(wind_factor_unchecked(wind, p, c))
}

fn wind_factor_unchecked(wind: f64, p: &SpreadParams, c: &FuelConstants) -> f64 {
    if wind == 0.0 {
        return 0.0;
    }
    let (coef, exponent) = wind_coefficients(p, c);
    coef * wind.powf(exponent)
}

/// Which of the four wind/slope cases a direction falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpreadCase {
    UpslopeHeadfire,
    DownslopeHeadfire,
    UpslopeBackfire,
    DownslopeBackfire,
}

impl SpreadCase {
    /// Zero wind counts as headfire, zero slope as upslope.
    pub fn classify(wind_signed: f64, slope_signed: f64) -> Self {
        match (wind_signed >= 0.0, slope_signed >= 0.0) {
            (true, true) => SpreadCase::UpslopeHeadfire,
            (true, false) => SpreadCase::DownslopeHeadfire,
            (false, true) => SpreadCase::UpslopeBackfire,
            (false, false) => SpreadCase::DownslopeBackfire,
        }
    }
}

/// Directional spread multiplier `r >= 1`.
pub fn albini_multiplier(wind_signed: f64, slope_signed: f64, c: &FuelConstants, p: &SpreadParams) -> f64 {
    let phi_w = wind_factor_unchecked(wind_signed.abs(), p, c);
    let phi_s = slope_factor_unchecked(slope_signed, p.beta, c);
    match SpreadCase::classify(wind_signed, slope_signed) {
        SpreadCase::UpslopeHeadfire => 1.0 + phi_w + phi_s,
        SpreadCase::DownslopeHeadfire => 1.0 + (phi_w - phi_s).max(0.0),
        SpreadCase::UpslopeBackfire => 1.0 + (phi_s - phi_w).max(0.0),
        SpreadCase::DownslopeBackfire => 1.0,
    }
}

/// `R = R0 · r` in ft/min.
pub fn rate_of_spread(
    base_rate: f64,
    wind_signed: f64,
    slope_signed: f64,
    c: &FuelConstants,
    p: &SpreadParams,
) -> Result<f64> {
    if !(base_rate > 0.0) {
        return Err(WspError::domain(format!("base rate of spread must be positive, got {base_rate}")));
    }
    Ok(base_rate * albini_multiplier(wind_signed, slope_signed, c, p))
}

/// Time to cross `distance` ft between two cells spreading at `rate_tail`
/// and `rate_head` ft/min: distance over the harmonic mean of the rates.
pub fn travel_time(distance: f64, rate_tail: f64, rate_head: f64) -> Result<f64> {
    if !(distance > 0.0) {
        return Err(WspError::domain(format!("distance must be positive, got {distance}")));
    }
    if !(rate_tail > 0.0 && rate_head > 0.0) {
        return Err(WspError::domain(format!(
            "spread rates must be positive, got {rate_tail} and {rate_head}"
        )));
    }
    Ok(distance * (rate_tail + rate_head) / (2.0 * rate_tail * rate_head))
}
