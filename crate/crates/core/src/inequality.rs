//! The eigenvalue/conformal-volume inequality checker and the volume bound
//! chain it feeds.
//!
//! For a compact Riemannian orbifold of dimension m admitting a piecewise
//! conformal map to a round sphere,
//!
//! ```text
//! lambda_1 * Vol^{2/m} <= m * V_c^{2/m}
//! ```
//!
//! (Li-Yau, sharpened by El Soufi-Ilias). With the congruence spectral gap
//! lambda_1 >= 3/4, the conformal volume ceiling V_c <= 4 * Vol(S^3) and
//! m = 3, this chain caps the orbifold volume at 64*pi^2.

use serde::Serialize;

use crate::constants::{LAMBDA1_CONGRUENCE_LOWER, REFLECTION_INDEX_BOUND, SPHERE3_VOLUME};
use crate::error::{Error, Result};

/// One evaluation of the inequality; `slack >= 0` means it holds.
#[derive(Debug, Clone, Serialize)]
pub struct InequalityCheck {
    /// First nonzero Neumann eigenvalue (units 1/length^2).
    pub lambda1: f64,
    /// Riemannian volume (units length^m).
    pub vol: f64,
    /// Orbifold dimension.
    pub dim_m: u32,
    /// Conformal volume (units of m-volume on the unit sphere).
    pub conf_vol: f64,
    /// `m * conf_vol^{2/m} - lambda1 * vol^{2/m}`.
    pub slack: f64,
}

/// Evaluate the inequality slack for the given data.
pub fn li_yau_slack(lambda1: f64, vol: f64, dim_m: u32, conf_vol: f64) -> Result<InequalityCheck> {
    if !lambda1.is_finite() || lambda1 < 0.0 {
        return Err(Error::Domain(format!(
            "lambda1 = {lambda1} must be finite and >= 0"
        )));
    }
    if !vol.is_finite() || vol <= 0.0 {
        return Err(Error::Domain(format!(
            "vol = {vol} must be finite and positive"
        )));
    }
    if dim_m < 2 {
        return Err(Error::Domain(format!(
            "dimension m = {dim_m} must be at least 2"
        )));
    }
    if !conf_vol.is_finite() || conf_vol <= 0.0 {
        return Err(Error::Domain(format!(
            "conf_vol = {conf_vol} must be finite and positive"
        )));
    }
    let e = 2.0 / dim_m as f64;
    let slack = dim_m as f64 * conf_vol.powf(e) - lambda1 * vol.powf(e);
    Ok(InequalityCheck {
        lambda1,
        vol,
        dim_m,
        conf_vol,
        slack,
    })
}

/// The constants of the volume bound chain and its conclusion.
#[derive(Debug, Clone, Serialize)]
pub struct BoundChain {
    /// Spectral gap lower bound fed into the chain.
    pub lambda_min: f64,
    /// Volume of the unit 3-sphere.
    pub vc_sphere3: f64,
    /// Reflection supergroup index bound.
    pub index_bound: u64,
    /// Conformal volume ceiling `index_bound * vc_sphere3`.
    pub vc_bound: f64,
    /// Resulting volume cap `(3 * vc_bound^{2/3} / lambda_min)^{3/2}`.
    pub vol_bound: f64,
}

/// Evaluate the chain. With the defaults `(3/4, 2*pi^2, 4)` the result is
/// exactly `64*pi^2`.
pub fn volume_bound_chain(
    lambda_min: f64,
    vc_sphere3: f64,
    index_bound: u64,
) -> Result<BoundChain> {
    if !lambda_min.is_finite() || lambda_min <= 0.0 {
        return Err(Error::Domain(format!(
            "lambda_min = {lambda_min} must be finite and positive"
        )));
    }
    if !vc_sphere3.is_finite() || vc_sphere3 <= 0.0 {
        return Err(Error::Domain(format!(
            "vc_sphere3 = {vc_sphere3} must be finite and positive"
        )));
    }
    if index_bound < 1 {
        return Err(Error::Domain("index_bound must be at least 1".into()));
    }
    let vc_bound = index_bound as f64 * vc_sphere3;
    let vol_bound = (3.0 * vc_bound.powf(2.0 / 3.0) / lambda_min).powf(1.5);
    Ok(BoundChain {
        lambda_min,
        vc_sphere3,
        index_bound,
        vc_bound,
        vol_bound,
    })
}

impl Default for BoundChain {
    fn default() -> Self {
        volume_bound_chain(
            LAMBDA1_CONGRUENCE_LOWER,
            SPHERE3_VOLUME,
            REFLECTION_INDEX_BOUND,
        )
        .expect("default constants are in range")
    }
}
