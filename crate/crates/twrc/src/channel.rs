//! Channel parameters: link amplitudes, power budgets, and the geometric
//! path-loss constructor.
//!
//! All noise variances are normalized to one, so a squared amplitude times a
//! transmit power is directly a receive SNR. Only amplitudes matter for the
//! achievable rates; carrier phases are assumed known and compensated.

use crate::{Error, Result};

/// Gaussian capacity `C(x) = log2(1 + x)` in bits per channel use.
///
/// Errors on negative or non-finite input.
pub fn capacity(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::domain(format!("capacity argument must be finite and >= 0, got {x}")));
    }
    Ok(cap(x))
}

/// Unchecked `log2(1 + x)` for internal hot paths.
#[inline]
pub(crate) fn cap(x: f64) -> f64 {
    x.ln_1p() / std::f64::consts::LN_2
}

/// The six link amplitudes of a two-way relay channel.
///
/// `gij` is the amplitude of the link carrying node `j`'s signal to node `i`,
/// with `r` denoting the relay. Rate formulas use the squares.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelGains {
    pub g12: f64,
    pub g1r: f64,
    pub g21: f64,
    pub g2r: f64,
    pub gr1: f64,
    pub gr2: f64,
}

impl ChannelGains {
    /// Builds a gain set, rejecting negative or non-finite amplitudes.
    pub fn new(g12: f64, g1r: f64, g21: f64, g2r: f64, gr1: f64, gr2: f64) -> Result<Self> {
        for (name, v) in [
            ("g12", g12),
            ("g1r", g1r),
            ("g21", g21),
            ("g2r", g2r),
            ("gr1", gr1),
            ("gr2", gr2),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::domain(format!("gain {name} must be finite and >= 0, got {v}")));
            }
        }
        Ok(Self { g12, g1r, g21, g2r, gr1, gr2 })
    }

    /// Gains with user indices 1 and 2 exchanged.
    ///
    /// Useful for mirror-symmetric analysis: every regime statement about one
    /// side maps to the other side under this swap.
    pub fn swap_users(&self) -> Self {
        Self {
            g12: self.g21,
            g1r: self.g2r,
            g21: self.g12,
            g2r: self.g1r,
            gr1: self.gr2,
            gr2: self.gr1,
        }
    }
}

/// Per-node average transmit power limits, linear scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerBudget {
    pub p1: f64,
    pub p2: f64,
    pub pr: f64,
}

impl PowerBudget {
    pub fn new(p1: f64, p2: f64, pr: f64) -> Result<Self> {
        for (name, v) in [("p1", p1), ("p2", p2), ("pr", pr)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::domain(format!("power {name} must be finite and >= 0, got {v}")));
            }
        }
        Ok(Self { p1, p2, pr })
    }

    /// Budget with user indices exchanged.
    pub fn swap_users(&self) -> Self {
        Self { p1: self.p2, p2: self.p1, pr: self.pr }
    }
}

/// Node placement on the plane together with a path-loss exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeLayout {
    pub u1_pos: [f64; 2],
    pub u2_pos: [f64; 2],
    pub relay_pos: [f64; 2],
    pub pathloss_exponent: f64,
}

impl NodeLayout {
    /// Layout with the two users at (-1, 0) and (1, 0), the customary survey
    /// geometry.
    pub fn with_default_users(relay_pos: [f64; 2], pathloss_exponent: f64) -> Result<Self> {
        Self::new([-1.0, 0.0], [1.0, 0.0], relay_pos, pathloss_exponent)
    }

    pub fn new(
        u1_pos: [f64; 2],
        u2_pos: [f64; 2],
        relay_pos: [f64; 2],
        pathloss_exponent: f64,
    ) -> Result<Self> {
        if !pathloss_exponent.is_finite() || pathloss_exponent <= 0.0 {
            return Err(Error::domain(format!(
                "path-loss exponent must be > 0, got {pathloss_exponent}"
            )));
        }
        let layout = Self { u1_pos, u2_pos, relay_pos, pathloss_exponent };
        for (a, b, what) in [
            (u1_pos, u2_pos, "users"),
            (u1_pos, relay_pos, "user 1 and relay"),
            (u2_pos, relay_pos, "user 2 and relay"),
        ] {
            if dist(a, b) <= 0.0 {
                return Err(Error::domain(format!("coincident nodes: {what}")));
            }
        }
        Ok(layout)
    }
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Channel gains from node geometry: each amplitude is `d^(-gamma/2)` for the
/// Euclidean distance `d` of the link, so reciprocal links share one value.
pub fn gains_from_layout(layout: &NodeLayout) -> Result<ChannelGains> {
    let NodeLayout { u1_pos, u2_pos, relay_pos, pathloss_exponent } = *layout;
    // reject coincident nodes even if the layout was built by hand
    NodeLayout::new(u1_pos, u2_pos, relay_pos, pathloss_exponent)?;
    let amp = |d: f64| d.powf(-pathloss_exponent / 2.0);
    let g_users = amp(dist(u1_pos, u2_pos));
    let g_1 = amp(dist(u1_pos, relay_pos));
    let g_2 = amp(dist(u2_pos, relay_pos));
    ChannelGains::new(g_users, g_1, g_users, g_2, g_1, g_2)
}
