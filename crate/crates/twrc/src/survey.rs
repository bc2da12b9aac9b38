//! Relay-placement sweeps.
//!
//! The two users sit at (-1, 0) and (1, 0); the relay is placed on every cell
//! of a rectangular grid. Each cell gets its path-loss gains, a regime label,
//! and — where one side dominates — the time-share certificate and the
//! throughput gain of partial DF over DF-DT time sharing.

use rayon::prelude::*;

use crate::channel::{gains_from_layout, NodeLayout, PowerBudget};
use crate::regime_analysis::{
    classify_regime, timeshare_certificate, Major, RegimeLabel, TimeshareCertificate, User,
};
use crate::{Error, Result};

/// Relay positions closer than this to a user are flagged instead of
/// evaluated; the path-loss model blows up at zero distance.
pub const NEAR_USER_DISTANCE: f64 = 1e-3;

/// Rectangular sweep description.
#[derive(Debug, Clone, Copy)]
pub struct SweepGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
    pub pathloss_exponent: f64,
    pub power: PowerBudget,
}

impl SweepGrid {
    /// The customary survey window: `[-2, 2]^2` at 81 x 81 cells, path-loss
    /// exponent 2.4, unit powers.
    pub fn default_survey() -> Self {
        Self {
            x_min: -2.0,
            x_max: 2.0,
            y_min: -2.0,
            y_max: 2.0,
            nx: 81,
            ny: 81,
            pathloss_exponent: 2.4,
            power: PowerBudget { p1: 1.0, p2: 1.0, pr: 1.0 },
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.nx < 2 || self.ny < 2 {
            return Err(Error::domain("sweep grid needs at least 2 cells per axis"));
        }
        if !(self.x_min < self.x_max && self.y_min < self.y_max) {
            return Err(Error::domain("sweep window bounds must be ordered"));
        }
        if !self.pathloss_exponent.is_finite() || self.pathloss_exponent <= 0.0 {
            return Err(Error::domain("path-loss exponent must be > 0"));
        }
        Ok(())
    }

    // endpoint-weighted form so symmetric windows produce exactly
    // sign-symmetric coordinates
    fn cell_pos(&self, ix: usize, iy: usize) -> [f64; 2] {
        let lerp = |lo: f64, hi: f64, i: usize, n: usize| {
            (lo * (n - 1 - i) as f64 + hi * i as f64) / (n - 1) as f64
        };
        [
            lerp(self.x_min, self.x_max, ix, self.nx),
            lerp(self.y_min, self.y_max, iy, self.ny),
        ]
    }
}

/// One sweep cell.
#[derive(Debug, Clone, Copy)]
pub struct MapCell {
    pub x: f64,
    pub y: f64,
    /// None when the cell sits on top of a user.
    pub label: Option<RegimeLabel>,
    /// Throughput gain of partial DF over DF-DT time sharing, percent;
    /// zero wherever the classifier predicts no strict exceedance.
    pub gain_percent: f64,
    /// Optimal private powers `(gamma1*, gamma2*)` where the regime pins
    /// them; None in regime C where the whole sweep is needed.
    pub gamma_star: Option<[f64; 2]>,
}

impl MapCell {
    pub fn near_user(&self) -> bool {
        self.label.is_none()
    }
}

/// Percentage improvement of the partial-DF weighted sum rate over the DF-DT
/// time-share support value. Negative differences clamp to zero.
pub fn throughput_gain(cert: &TimeshareCertificate) -> Result<f64> {
    if !cert.r_ts.is_finite() || cert.r_ts <= 0.0 {
        return Err(Error::domain(format!("time-share rate must be positive, got {}", cert.r_ts)));
    }
    Ok(((cert.r_s - cert.r_ts) / cert.r_ts).max(0.0) * 100.0)
}

/// Classifies every relay position of the grid; row-major output
/// (y outer, x inner), deterministic regardless of evaluation order.
pub fn sweep_regime_map(grid: &SweepGrid) -> Result<Vec<MapCell>> {
    grid.validate()?;
    let cells: Vec<Result<MapCell>> = (0..grid.ny * grid.nx)
        .into_par_iter()
        .map(|idx| evaluate_cell(grid, grid.cell_pos(idx % grid.nx, idx / grid.nx)))
        .collect();
    cells.into_iter().collect()
}

fn evaluate_cell(grid: &SweepGrid, pos: [f64; 2]) -> Result<MapCell> {
    let d1 = (pos[0] + 1.0).hypot(pos[1]);
    let d2 = (pos[0] - 1.0).hypot(pos[1]);
    if d1 < NEAR_USER_DISTANCE || d2 < NEAR_USER_DISTANCE {
        return Ok(MapCell { x: pos[0], y: pos[1], label: None, gain_percent: 0.0, gamma_star: None });
    }
    let layout = NodeLayout::with_default_users(pos, grid.pathloss_exponent)?;
    let gains = gains_from_layout(&layout)?;
    let p = grid.power;
    let label = classify_regime(&gains, &p)?;
    let (gain, gamma_star) = match label.major {
        Major::D => (0.0, Some([0.0, 0.0])),
        Major::E => (0.0, Some([p.p1, p.p2])),
        Major::C => (0.0, None),
        Major::A | Major::B => {
            let pdf_user = label.certificate_user().expect("A/B labels carry a side");
            let cert = timeshare_certificate(&gains, &p, pdf_user)?;
            let gain = throughput_gain(&cert)?;
            let gamma_star = match pdf_user {
                User::User2 => [0.0, cert.gamma_star],
                User::User1 => [cert.gamma_star, 0.0],
            };
            (gain, Some(gamma_star))
        }
    };
    Ok(MapCell { x: pos[0], y: pos[1], label: Some(label), gain_percent: gain, gamma_star })
}
