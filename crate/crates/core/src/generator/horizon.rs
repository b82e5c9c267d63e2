//! Burn quantiles of the free-burning fire and the optimization horizon.

use crate::error::{Result, WspError};
use crate::graph::Minutes;

pub const DAY_MIN: Minutes = 24.0 * 60.0;
pub const TWO_DAYS_MIN: Minutes = 48.0 * 60.0;

/// Largest finite arrival time `t` with `|{v : a_v < t}| <= p% · |V|`.
///
/// Evaluated over the finite arrival values only, so `q(100)` is the
/// latest finite arrival.
pub fn free_burn_quantile(arrivals: &[Minutes], percent: f64) -> Result<Minutes> {
    if !(percent > 0.0 && percent <= 100.0) {
        return Err(WspError::domain(format!("percentage must lie in (0, 100], got {percent}")));
    }
    let mut finite: Vec<Minutes> = arrivals.iter().copied().filter(|a| a.is_finite()).collect();
    if finite.is_empty() {
        return Err(WspError::domain("no finite arrival times"));
    }
    finite.sort_by(f64::total_cmp);
    let allowed = percent / 100.0 * arrivals.len() as f64;
    // count(< finite[i]) is the index of the first occurrence of finite[i].
    let mut best = finite[0];
    let mut first = 0;
    for i in 0..finite.len() {
        if i > 0 && finite[i] != finite[i - 1] {
            first = i;
        }
        if first as f64 <= allowed {
            best = finite[i];
        } else {
            break;
        }
    }
    Ok(best)
}

/// `H = max{min{max{q(100), 24h}, 48h}, q(70)}` in minutes.
pub fn compute_horizon(arrivals: &[Minutes]) -> Result<Minutes> {
    let q100 = free_burn_quantile(arrivals, 100.0)?;
    let q70 = free_burn_quantile(arrivals, 70.0)?;
    Ok(horizon_from_quantiles(q100, q70))
}

pub fn horizon_from_quantiles(q100: Minutes, q70: Minutes) -> Minutes {
    q100.clamp(DAY_MIN, TWO_DAYS_MIN).max(q70)
}
