//! Six-phase half-duplex decode-forward scheme.
//!
//! A block is divided into six phases: each user broadcasts alone (phases 1
//! and 2), both users address the relay (phase 3), each user and the relay
//! beamform to the other user (phases 4 and 5), and the relay broadcasts a
//! bin index of the decoded common pair (phase 6). Receivers decode jointly
//! across all their listening phases, so every rate bound is a
//! duration-weighted sum of per-phase mutual informations.
//!
//! Setting phase durations or power components to zero recovers the earlier
//! protocols from the literature; the restrictions are named by what they
//! remove, see [`HdSchemeKind`].

use rayon::prelude::*;

use crate::channel::{cap, ChannelGains, PowerBudget};
use crate::rate_geometry::{convex_union, pentagon_vertices, RatePentagon, RateRegion};
use crate::{Error, Result};

const BUDGET_SLACK: f64 = 1e-12;
const TAU_SLACK: f64 = 1e-12;

/// Phase durations and per-phase transmit powers of the six-phase scheme.
///
/// Powers are instantaneous within their phase; the budget constraints weight
/// them by the phase durations so each block meets the average-power limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HdAllocation {
    /// Fractions of the block spent in each phase; they sum to one.
    pub tau: [f64; 6],
    /// User 1 solo phase: common and private components.
    pub alpha11: f64,
    pub beta11: f64,
    /// User 2 solo phase.
    pub alpha22: f64,
    pub beta22: f64,
    /// Multiple-access phase toward the relay.
    pub alpha13: f64,
    pub alpha23: f64,
    /// User 1 + relay beamforming phase (common), plus user 1 private.
    pub alpha14: f64,
    pub beta14: f64,
    pub gamma34: f64,
    /// User 2 + relay beamforming phase.
    pub alpha25: f64,
    pub beta25: f64,
    pub gamma35: f64,
    /// Relay bin-index broadcast phase.
    pub gamma36: f64,
}

impl HdAllocation {
    pub fn zero() -> Self {
        Self {
            tau: [0.0; 6],
            alpha11: 0.0,
            beta11: 0.0,
            alpha22: 0.0,
            beta22: 0.0,
            alpha13: 0.0,
            alpha23: 0.0,
            alpha14: 0.0,
            beta14: 0.0,
            gamma34: 0.0,
            alpha25: 0.0,
            beta25: 0.0,
            gamma35: 0.0,
            gamma36: 0.0,
        }
    }

    /// Rescales durations to sum to one (powers untouched) and clears the
    /// powers of zero-duration phases.
    pub fn with_normalized_durations(mut self) -> Result<Self> {
        let total: f64 = self.tau.iter().sum();
        if !(total.is_finite() && total > 0.0) {
            return Err(Error::domain(format!("phase durations must have a positive sum, got {total}")));
        }
        for t in &mut self.tau {
            *t /= total;
        }
        self.clear_idle_phases();
        Ok(self)
    }

    /// Zeroes powers assigned to phases of zero duration.
    pub fn clear_idle_phases(&mut self) {
        if self.tau[0] == 0.0 {
            self.alpha11 = 0.0;
            self.beta11 = 0.0;
        }
        if self.tau[1] == 0.0 {
            self.alpha22 = 0.0;
            self.beta22 = 0.0;
        }
        if self.tau[2] == 0.0 {
            self.alpha13 = 0.0;
            self.alpha23 = 0.0;
        }
        if self.tau[3] == 0.0 {
            self.alpha14 = 0.0;
            self.beta14 = 0.0;
            self.gamma34 = 0.0;
        }
        if self.tau[4] == 0.0 {
            self.alpha25 = 0.0;
            self.beta25 = 0.0;
            self.gamma35 = 0.0;
        }
        if self.tau[5] == 0.0 {
            self.gamma36 = 0.0;
        }
    }

    /// Duration-weighted powers spent by (user 1, user 2, relay).
    pub fn spent(&self) -> (f64, f64, f64) {
        let t = &self.tau;
        (
            t[0] * (self.alpha11 + self.beta11) + t[2] * self.alpha13 + t[3] * (self.alpha14 + self.beta14),
            t[1] * (self.alpha22 + self.beta22) + t[2] * self.alpha23 + t[4] * (self.alpha25 + self.beta25),
            t[3] * self.gamma34 + t[4] * self.gamma35 + t[5] * self.gamma36,
        )
    }

    pub fn validate(&self, budget: &PowerBudget) -> Result<()> {
        let all = [
            self.tau[0], self.tau[1], self.tau[2], self.tau[3], self.tau[4], self.tau[5],
            self.alpha11, self.beta11, self.alpha22, self.beta22, self.alpha13, self.alpha23,
            self.alpha14, self.beta14, self.gamma34, self.alpha25, self.beta25, self.gamma35,
            self.gamma36,
        ];
        if all.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::domain("durations and powers must be finite and >= 0"));
        }
        let total: f64 = self.tau.iter().sum();
        if (total - 1.0).abs() > TAU_SLACK {
            return Err(Error::domain(format!("phase durations sum to {total}, expected 1")));
        }
        let (s1, s2, sr) = self.spent();
        if s1 > budget.p1 + BUDGET_SLACK {
            return Err(Error::domain(format!("user 1 spends {s1}, budget {}", budget.p1)));
        }
        if s2 > budget.p2 + BUDGET_SLACK {
            return Err(Error::domain(format!("user 2 spends {s2}, budget {}", budget.p2)));
        }
        if sr > budget.pr + BUDGET_SLACK {
            return Err(Error::domain(format!("relay spends {sr}, budget {}", budget.pr)));
        }
        Ok(())
    }
}

/// The six-phase scheme and the prior protocols it reduces to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HdSchemeKind {
    /// All six phases and both message components everywhere.
    Full,
    /// No beamforming phases at all (`tau4 = tau5 = 0`).
    FourPhase,
    /// Solo phases carry common messages only (`beta11 = beta22 = 0`).
    SoloCommonOnly,
    /// Additionally no coherent components in the beamforming phases
    /// (`alpha14 = alpha25 = 0`): the relay forwards independently.
    IndependentSixPhase,
}

impl HdSchemeKind {
    fn forbids_solo_private(&self) -> bool {
        matches!(self, HdSchemeKind::SoloCommonOnly | HdSchemeKind::IndependentSixPhase)
    }

    fn forbids_coherent(&self) -> bool {
        matches!(self, HdSchemeKind::IndependentSixPhase)
    }

    fn active_phases(&self) -> &'static [usize] {
        match self {
            HdSchemeKind::FourPhase => &[0, 1, 2, 5],
            _ => &[0, 1, 2, 3, 4, 5],
        }
    }
}

/// Applies the prior protocol's zero pattern.
///
/// Durations freed by removing a phase are redistributed proportionally over
/// the remaining phases (equally when nothing remains); the powers of removed
/// phases and components are cleared. Re-optimization over the reduced space
/// is the caller's business.
pub fn hd_restrict(kind: HdSchemeKind, a: &HdAllocation) -> HdAllocation {
    let mut out = *a;
    match kind {
        HdSchemeKind::Full => {}
        HdSchemeKind::FourPhase => {
            out.tau[3] = 0.0;
            out.tau[4] = 0.0;
            let rest: f64 = out.tau.iter().sum();
            if rest > 0.0 {
                for t in &mut out.tau {
                    *t /= rest;
                }
            } else {
                for i in [0, 1, 2, 5] {
                    out.tau[i] = 0.25;
                }
            }
            out.clear_idle_phases();
        }
        HdSchemeKind::SoloCommonOnly => {
            out.beta11 = 0.0;
            out.beta22 = 0.0;
        }
        HdSchemeKind::IndependentSixPhase => {
            out.beta11 = 0.0;
            out.beta22 = 0.0;
            out.alpha14 = 0.0;
            out.alpha25 = 0.0;
        }
    }
    out
}

/// Rate pentagon of the six-phase scheme for one allocation.
pub fn hd_pentagon(g: &ChannelGains, a: &HdAllocation, budget: &PowerBudget) -> Result<RatePentagon> {
    let mut a = *a;
    a.clear_idle_phases();
    a.validate(budget)?;
    let (r1, r2, sum) = hd_rate_bounds(g, &a);
    RatePentagon::new(r1, r2, sum)
}

fn hd_rate_bounds(g: &ChannelGains, a: &HdAllocation) -> (f64, f64, f64) {
    let t = &a.tau;
    let (gr1s, gr2s) = (g.gr1 * g.gr1, g.gr2 * g.gr2);
    let (g21s, g12s) = (g.g21 * g.g21, g.g12 * g.g12);
    let (g2rs, g1rs) = (g.g2r * g.g2r, g.g1r * g.g1r);

    let relay1 = cap(gr1s * a.alpha11 / (gr1s * a.beta11 + 1.0));
    let relay2 = cap(gr2s * a.alpha22 / (gr2s * a.beta22 + 1.0));
    let j1 = t[0] * relay1 + t[2] * cap(gr1s * a.alpha13);
    let j2 = t[1] * relay2 + t[2] * cap(gr2s * a.alpha23);
    let j3 = t[0] * relay1 + t[1] * relay2 + t[2] * cap(gr1s * a.alpha13 + gr2s * a.alpha23);

    let j4 = t[0] * cap(g21s * a.beta11) + t[3] * cap(g21s * a.beta14);
    let coh4 = g.g21 * a.alpha14.sqrt() + g.g2r * a.gamma34.sqrt();
    let j5 = t[0] * cap(g21s * (a.alpha11 + a.beta11))
        + t[5] * cap(g2rs * a.gamma36)
        + t[3] * cap(coh4 * coh4 + g21s * a.beta14);

    let j6 = t[1] * cap(g12s * a.beta22) + t[4] * cap(g12s * a.beta25);
    let coh5 = g.g12 * a.alpha25.sqrt() + g.g1r * a.gamma35.sqrt();
    let j7 = t[1] * cap(g12s * (a.alpha22 + a.beta22))
        + t[5] * cap(g1rs * a.gamma36)
        + t[4] * cap(coh5 * coh5 + g12s * a.beta25);

    ((j1 + j4).min(j5), (j2 + j6).min(j7), j3 + j4 + j6)
}

/// Duration-grid and inner power-search budget.
#[derive(Debug, Clone, Copy)]
pub struct HdSearchConfig {
    /// Step of the duration simplex grid; all faces included.
    pub tau_step: f64,
    /// Points per one-dimensional power scan around the canonical split.
    pub line_points: usize,
    /// Step-halving rounds of the per-direction coordinate descent.
    pub refine_halvings: usize,
    /// Support directions tracked across the first quadrant.
    pub support_directions: usize,
}

impl Default for HdSearchConfig {
    fn default() -> Self {
        Self { tau_step: 0.1, line_points: 9, refine_halvings: 6, support_directions: 33 }
    }
}

impl HdSearchConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tau_step > 0.0 && self.tau_step <= 0.5) {
            return Err(Error::domain("tau_step must be in (0, 0.5]"));
        }
        if self.line_points < 2 || self.support_directions < 2 {
            return Err(Error::domain("need at least 2 grid points and 2 directions"));
        }
        Ok(())
    }

    fn directions(&self) -> Vec<[f64; 2]> {
        let n = self.support_directions;
        (0..n)
            .map(|j| {
                let theta = std::f64::consts::FRAC_PI_2 * j as f64 / (n - 1) as f64;
                [theta.cos(), theta.sin()]
            })
            .collect()
    }
}

/// Inner search coordinates: budget shares per transmit phase plus the
/// common/private split inside the mixed phases. Shares are raw weights,
/// normalized on use, so coordinate moves stay feasible by construction.
///
/// Layout: `[w1_ph1, w1_ph3, w1_ph4, t11, t14, w2_ph2, w2_ph3, w2_ph5, t22,
/// t25, wr_ph4, wr_ph5, wr_ph6]` where `w*` are budget weights and `t11, t22`
/// are the common fractions of the solo-phase powers, `t14, t25` the coherent
/// fractions of the beamforming-phase powers.
#[derive(Debug, Clone, Copy)]
struct InnerParam {
    s: [f64; 13],
}

const N_SCALARS: usize = 13;
const T11: usize = 3;
const T14: usize = 4;
const T22: usize = 8;
const T25: usize = 9;

impl InnerParam {
    fn canonical(kind: HdSchemeKind, tau: &[f64; 6]) -> Self {
        let mut p = Self {
            s: [
                tau[0], tau[2], tau[3], 0.5, 0.5,
                tau[1], tau[2], tau[4], 0.5, 0.5,
                tau[3], tau[4], tau[5],
            ],
        };
        p.clamp(kind);
        p
    }

    fn clamp(&mut self, kind: HdSchemeKind) {
        for (i, v) in self.s.iter_mut().enumerate() {
            *v = match i {
                T11 | T14 | T22 | T25 => v.clamp(0.0, 1.0),
                _ => v.max(0.0),
            };
        }
        if kind.forbids_solo_private() {
            self.s[T11] = 1.0;
            self.s[T22] = 1.0;
        }
        if kind.forbids_coherent() {
            self.s[T14] = 0.0;
            self.s[T25] = 0.0;
        }
    }

    fn w1(&self) -> [f64; 3] {
        [self.s[0], self.s[1], self.s[2]]
    }

    fn w2(&self) -> [f64; 3] {
        [self.s[5], self.s[6], self.s[7]]
    }

    fn wr(&self) -> [f64; 3] {
        [self.s[10], self.s[11], self.s[12]]
    }
}

/// Splits `budget` over the phases according to weights, respecting zero
/// durations, and returns per-phase average powers scaled to instantaneous.
fn share_powers(weights: &[f64; 3], taus: [f64; 3], budget: f64) -> [f64; 3] {
    let mut w = *weights;
    for (wi, t) in w.iter_mut().zip(taus) {
        if t <= 0.0 {
            *wi = 0.0;
        }
    }
    let total: f64 = w.iter().sum();
    let mut out = [0.0; 3];
    if total <= 0.0 || budget <= 0.0 {
        return out;
    }
    for i in 0..3 {
        if taus[i] > 0.0 {
            out[i] = budget * w[i] / total / taus[i];
        }
    }
    out
}

fn build_alloc(kind: HdSchemeKind, tau: &[f64; 6], prm: &InnerParam, p: &PowerBudget) -> HdAllocation {
    let mut prm = *prm;
    prm.clamp(kind);
    let u1 = share_powers(&prm.w1(), [tau[0], tau[2], tau[3]], p.p1);
    let u2 = share_powers(&prm.w2(), [tau[1], tau[2], tau[4]], p.p2);
    let r = share_powers(&prm.wr(), [tau[3], tau[4], tau[5]], p.pr);
    let mut a = HdAllocation {
        tau: *tau,
        alpha11: prm.s[T11] * u1[0],
        beta11: (1.0 - prm.s[T11]) * u1[0],
        alpha13: u1[1],
        alpha14: prm.s[T14] * u1[2],
        beta14: (1.0 - prm.s[T14]) * u1[2],
        alpha22: prm.s[T22] * u2[0],
        beta22: (1.0 - prm.s[T22]) * u2[0],
        alpha23: u2[1],
        alpha25: prm.s[T25] * u2[2],
        beta25: (1.0 - prm.s[T25]) * u2[2],
        gamma34: r[0],
        gamma35: r[1],
        gamma36: r[2],
    };
    a.clear_idle_phases();
    a
}

/// Duration vectors of the simplex grid over the kind's active phases.
fn tau_grid(kind: HdSchemeKind, step: f64) -> Vec<[f64; 6]> {
    let phases = kind.active_phases();
    let units = (1.0 / step).round().max(1.0) as usize;
    let mut out = Vec::new();
    let mut counts = vec![0usize; phases.len()];
    fill_compositions(units, 0, &mut counts, &mut |c| {
        let mut tau = [0.0; 6];
        for (slot, &ph) in phases.iter().enumerate() {
            tau[ph] = c[slot] as f64 / units as f64;
        }
        out.push(tau);
    });
    out
}

fn fill_compositions(
    remaining: usize,
    slot: usize,
    counts: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if slot + 1 == counts.len() {
        counts[slot] = remaining;
        emit(counts);
        return;
    }
    for take in 0..=remaining {
        counts[slot] = take;
        fill_compositions(remaining - take, slot + 1, counts, emit);
    }
}

type DirectionBest = (f64, [f64; 6], InnerParam);

/// Candidate allocations at one duration vector: the canonical
/// proportional split plus one-dimensional scans of every free scalar and
/// one-hot share extremes.
fn inner_candidates(kind: HdSchemeKind, tau: &[f64; 6], cfg: &HdSearchConfig) -> Vec<InnerParam> {
    let base = InnerParam::canonical(kind, tau);
    let mut out = vec![base];
    let n = cfg.line_points;
    for idx in 0..N_SCALARS {
        for k in 0..n {
            let val = k as f64 / (n - 1) as f64;
            let mut prm = base;
            prm.s[idx] = val;
            out.push(prm);
        }
    }
    for group in [0usize, 5, 10] {
        for hot in 0..3 {
            let mut prm = base;
            for i in 0..3 {
                prm.s[group + i] = if i == hot { 1.0 } else { 0.0 };
            }
            out.push(prm);
        }
    }
    out
}

/// Fixed-duration power search: evaluates the candidate set and polishes each
/// support direction by coordinate descent over the inner scalars.
pub fn optimize_hd_powers(
    g: &ChannelGains,
    p: &PowerBudget,
    kind: HdSchemeKind,
    tau: [f64; 6],
    cfg: &HdSearchConfig,
) -> Result<RateRegion> {
    cfg.validate()?;
    let total: f64 = tau.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::domain(format!("phase durations sum to {total}, expected 1")));
    }
    let dirs = cfg.directions();
    let mut points = Vec::new();
    let mut best: Vec<DirectionBest> = dirs
        .iter()
        .map(|_| (f64::NEG_INFINITY, tau, InnerParam::canonical(kind, &tau)))
        .collect();
    scan_tau_point(g, p, kind, &tau, cfg, &dirs, &mut points, &mut best);
    for (j, dir) in dirs.iter().enumerate() {
        let refined = refine_direction(g, p, kind, &best[j], *dir, cfg);
        let a = build_alloc(kind, &refined.1, &refined.2, p);
        let (r1, r2, c) = hd_rate_bounds(g, &a);
        push_pentagon(r1, r2, c, &mut points);
    }
    RateRegion::from_points(&points)
}

#[allow(clippy::too_many_arguments)]
fn scan_tau_point(
    g: &ChannelGains,
    p: &PowerBudget,
    kind: HdSchemeKind,
    tau: &[f64; 6],
    cfg: &HdSearchConfig,
    dirs: &[[f64; 2]],
    points: &mut Vec<[f64; 2]>,
    best: &mut [DirectionBest],
) {
    for prm in inner_candidates(kind, tau, cfg) {
        let a = build_alloc(kind, tau, &prm, p);
        let (r1, r2, c) = hd_rate_bounds(g, &a);
        let region = pentagon_vertices(&RatePentagon { r1_max: r1, r2_max: r2, sum_max: c });
        points.extend_from_slice(region.vertices());
        for (j, dir) in dirs.iter().enumerate() {
            let s = region.support_dir(*dir);
            if s > best[j].0 {
                best[j] = (s, *tau, prm);
            }
        }
    }
}

fn refine_direction(
    g: &ChannelGains,
    p: &PowerBudget,
    kind: HdSchemeKind,
    start: &DirectionBest,
    dir: [f64; 2],
    cfg: &HdSearchConfig,
) -> DirectionBest {
    let (mut score, tau, mut prm) = *start;
    if !score.is_finite() {
        return *start;
    }
    let mut step = 0.25;
    for _ in 0..=cfg.refine_halvings {
        for _ in 0..2 {
            for idx in 0..N_SCALARS {
                for sign in [1.0, -1.0] {
                    let mut cand = prm;
                    cand.s[idx] += sign * step;
                    cand.clamp(kind);
                    let a = build_alloc(kind, &tau, &cand, p);
                    let (r1, r2, c) = hd_rate_bounds(g, &a);
                    let s = support_of(r1, r2, c, dir);
                    if s > score + 1e-15 {
                        score = s;
                        prm = cand;
                    }
                }
            }
        }
        step /= 2.0;
    }
    (score, tau, prm)
}

/// Convex closure of the six-phase region over durations and powers.
///
/// Outer grid over the duration simplex (faces included), inner power search
/// per grid point, then per-direction coordinate descent at the winning
/// durations. Restricted kinds search the same grid under their zero
/// patterns, and each kind's region folds in the regions of its own
/// restrictions so nesting holds by construction. Deterministic for a fixed
/// config.
pub fn optimize_hd_region(
    g: &ChannelGains,
    p: &PowerBudget,
    kind: HdSchemeKind,
    cfg: &HdSearchConfig,
) -> Result<RateRegion> {
    cfg.validate()?;
    let dirs = cfg.directions();
    let grid = tau_grid(kind, cfg.tau_step);

    let per_tau: Vec<(Vec<[f64; 2]>, Vec<DirectionBest>)> = grid
        .par_iter()
        .map(|tau| {
            let mut points = Vec::new();
            let mut best: Vec<DirectionBest> = dirs
                .iter()
                .map(|_| (f64::NEG_INFINITY, *tau, InnerParam::canonical(kind, tau)))
                .collect();
            scan_tau_point(g, p, kind, tau, cfg, &dirs, &mut points, &mut best);
            (points, best)
        })
        .collect();

    let mut points = Vec::new();
    let mut best: Vec<DirectionBest> = dirs
        .iter()
        .map(|_| (f64::NEG_INFINITY, [0.0; 6], InnerParam::canonical(kind, &[0.0; 6])))
        .collect();
    for (pts, bests) in per_tau {
        points.extend(pts);
        for (j, b) in bests.into_iter().enumerate() {
            if b.0 > best[j].0 {
                best[j] = b;
            }
        }
    }
    for (j, dir) in dirs.iter().enumerate() {
        if !best[j].0.is_finite() {
            continue;
        }
        let refined = refine_direction(g, p, kind, &best[j], *dir, cfg);
        let a = build_alloc(kind, &refined.1, &refined.2, p);
        let (r1, r2, c) = hd_rate_bounds(g, &a);
        push_pentagon(r1, r2, c, &mut points);
    }
    let mut region = RateRegion::from_points(&points)?;

    let sub_kinds: &[HdSchemeKind] = match kind {
        HdSchemeKind::Full => {
            &[HdSchemeKind::FourPhase, HdSchemeKind::SoloCommonOnly, HdSchemeKind::IndependentSixPhase]
        }
        HdSchemeKind::SoloCommonOnly => &[HdSchemeKind::IndependentSixPhase],
        _ => &[],
    };
    if !sub_kinds.is_empty() {
        let mut parts = vec![region];
        for &sub in sub_kinds {
            parts.push(optimize_hd_region(g, p, sub, cfg)?);
        }
        region = convex_union(&parts)?;
    }
    Ok(region)
}

fn push_pentagon(a: f64, b: f64, c: f64, points: &mut Vec<[f64; 2]>) {
    let r = pentagon_vertices(&RatePentagon { r1_max: a, r2_max: b, sum_max: c });
    points.extend_from_slice(r.vertices());
}

fn support_of(a: f64, b: f64, c: f64, dir: [f64; 2]) -> f64 {
    let r = pentagon_vertices(&RatePentagon { r1_max: a, r2_max: b, sum_max: c });
    r.support_dir(dir)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> PowerBudget {
        PowerBudget::new(1.0, 1.0, 1.0).unwrap()
    }

    fn unit_gains() -> ChannelGains {
        ChannelGains::new(1.0, 1.0, 1.0, 1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn single_phase_degenerate() {
        let mut a = HdAllocation::zero();
        a.tau[0] = 1.0;
        a.beta11 = 1.0;
        let pent = hd_pentagon(&unit_gains(), &a, &unit()).unwrap();
        assert!((pent.r1_max - 1.0).abs() < 1e-12);
        assert_eq!(pent.r2_max, 0.0);
        assert!((pent.sum_max - 1.0).abs() < 1e-12);
    }

    #[test]
    fn idle_network_is_origin() {
        let mut a = HdAllocation::zero();
        a.tau = [1.0 / 6.0; 6];
        a.tau[5] = 1.0 - a.tau[..5].iter().sum::<f64>();
        let pent = hd_pentagon(&unit_gains(), &a, &unit()).unwrap();
        assert_eq!((pent.r1_max, pent.r2_max, pent.sum_max), (0.0, 0.0, 0.0));
    }

    #[test]
    fn beamforming_phase_amplitude_gain() {
        // strong relay uplink so the cross-decoding bound J5 binds; equal
        // amplitudes alpha14 = gamma34 = 1 then receive (1+1)^2 = 4x the power
        // of either signal alone
        let g = ChannelGains::new(1.0, 1.0, 1.0, 1.0, 10.0, 1.0).unwrap();
        let mut a = HdAllocation::zero();
        a.tau = [0.5, 0.0, 0.0, 0.5, 0.0, 0.0];
        a.alpha11 = 1.0;
        a.alpha14 = 1.0;
        a.gamma34 = 1.0;
        let pent = hd_pentagon(&g, &a, &PowerBudget::new(1.0, 1.0, 0.5).unwrap()).unwrap();
        let coherent = 0.5 * cap(1.0) + 0.5 * cap((1.0f64 + 1.0).powi(2));
        assert!((pent.r1_max - coherent).abs() < 1e-12);
        // same powers combined without the amplitude sum
        let independent = 0.5 * cap(1.0) + 0.5 * cap(1.0 + 1.0);
        assert!(pent.r1_max > independent);
    }

    #[test]
    fn coherent_beats_independent_signaling() {
        // same per-phase powers, coherent vs independent combining
        let g = ChannelGains::new(1.0, 1.0, 0.9, 0.4, 1.0, 1.0).unwrap();
        for (a14, g34, b14) in [(0.5, 0.25, 0.1), (1.0, 1.0, 0.0), (0.2, 0.8, 0.3)] {
            let coh = (g.g21 * f64::sqrt(a14) + g.g2r * f64::sqrt(g34)).powi(2) + g.g21 * g.g21 * b14;
            let ind = g.g21 * g.g21 * a14 + g.g2r * g.g2r * g34 + g.g21 * g.g21 * b14;
            assert!(cap(coh) >= cap(ind));
        }
    }

    #[test]
    fn no_bin_phase_drops_bin_terms() {
        let g = ChannelGains::new(0.7, 1.2, 0.9, 0.4, 1.1, 0.8).unwrap();
        let mut a = HdAllocation::zero();
        a.tau = [0.25, 0.25, 0.25, 0.25, 0.0, 0.0];
        a.alpha11 = 1.0;
        a.beta11 = 1.0;
        a.alpha22 = 2.0;
        a.alpha13 = 1.0;
        a.alpha23 = 1.0;
        a.alpha14 = 1.0;
        a.gamma34 = 2.0;
        a.gamma36 = 7.0; // idle phase: cleared, must not contribute
        let pent = hd_pentagon(&g, &a, &PowerBudget::new(1.0, 1.0, 1.0).unwrap()).unwrap();
        let g21s = g.g21 * g.g21;
        let coh = (g.g21 * 1.0 + g.g2r * f64::sqrt(2.0)).powi(2);
        let expected_j5 = 0.25 * cap(g21s * 2.0) + 0.25 * cap(coh);
        let j1 = 0.25 * cap(g.gr1 * g.gr1 * 1.0 / (g.gr1 * g.gr1 + 1.0))
            + 0.25 * cap(g.gr1 * g.gr1);
        let j4 = 0.25 * cap(g21s);
        assert!((pent.r1_max - (j1 + j4).min(expected_j5)).abs() < 1e-12);
    }

    #[test]
    fn duration_scaling_invariant() {
        let g = ChannelGains::new(0.7, 1.2, 0.9, 0.4, 1.1, 0.8).unwrap();
        let p = unit();
        let mut a = HdAllocation::zero();
        a.tau = [0.2, 0.2, 0.2, 0.2, 0.1, 0.1];
        a.alpha11 = 0.5;
        a.beta11 = 0.5;
        a.alpha22 = 1.0;
        a.alpha13 = 1.0;
        a.alpha23 = 1.0;
        a.alpha14 = 0.5;
        a.gamma34 = 1.0;
        a.gamma35 = 1.0;
        a.gamma36 = 2.0;
        let mut scaled = a;
        for t in &mut scaled.tau {
            *t *= 3.0;
        }
        let scaled = scaled.with_normalized_durations().unwrap();
        let p1 = hd_pentagon(&g, &a, &p).unwrap();
        let p2 = hd_pentagon(&g, &scaled, &p).unwrap();
        assert!((p1.r1_max - p2.r1_max).abs() < 1e-12);
        assert!((p1.r2_max - p2.r2_max).abs() < 1e-12);
        assert!((p1.sum_max - p2.sum_max).abs() < 1e-12);
    }

    #[test]
    fn monotone_in_own_phase_powers() {
        let g = ChannelGains::new(0.7, 1.2, 0.9, 0.4, 1.1, 0.8).unwrap();
        let mut a = HdAllocation::zero();
        a.tau = [0.2, 0.2, 0.2, 0.2, 0.1, 0.1];
        a.alpha11 = 0.3;
        a.alpha22 = 0.4;
        a.alpha13 = 0.5;
        a.alpha23 = 0.5;
        a.alpha14 = 0.4;
        a.gamma34 = 0.6;
        a.gamma35 = 0.6;
        a.gamma36 = 0.5;
        let base = hd_rate_bounds(&g, &a);
        let mut bigger = a;
        bigger.alpha13 = 0.8;
        let b = hd_rate_bounds(&g, &bigger);
        assert!(b.0 >= base.0 && b.2 >= base.2);
        let mut bin = a;
        bin.gamma36 = 1.2;
        let b = hd_rate_bounds(&g, &bin);
        assert!(b.0 >= base.0 && b.1 >= base.1);
    }

    #[test]
    fn restrict_patterns() {
        let mut a = HdAllocation::zero();
        a.tau = [0.2, 0.2, 0.2, 0.2, 0.1, 0.1];
        a.beta11 = 0.5;
        a.beta22 = 0.5;
        a.alpha14 = 0.4;
        a.alpha25 = 0.4;
        a.gamma34 = 1.0;

        let four = hd_restrict(HdSchemeKind::FourPhase, &a);
        assert_eq!(four.tau[3], 0.0);
        assert_eq!(four.tau[4], 0.0);
        assert!((four.tau.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!((four.tau[0] - 0.2 / 0.7).abs() < 1e-12);
        assert_eq!(four.gamma34, 0.0);

        let solo = hd_restrict(HdSchemeKind::SoloCommonOnly, &a);
        assert_eq!((solo.beta11, solo.beta22), (0.0, 0.0));
        assert_eq!(solo.alpha14, 0.4);

        let ind = hd_restrict(HdSchemeKind::IndependentSixPhase, &a);
        assert_eq!((ind.beta11, ind.beta22, ind.alpha14, ind.alpha25), (0.0, 0.0, 0.0, 0.0));

        assert_eq!(hd_restrict(HdSchemeKind::Full, &a), a);
    }

    #[test]
    fn validation_rejects_bad_allocations() {
        let p = unit();
        let mut a = HdAllocation::zero();
        a.tau = [0.5, 0.5, 0.0, 0.0, 0.0, 0.0];
        a.alpha11 = 3.0; // spends 1.5 > 1
        assert!(a.validate(&p).is_err());
        a.alpha11 = 1.0;
        assert!(a.validate(&p).is_ok());
        a.tau = [0.5, 0.4, 0.0, 0.0, 0.0, 0.0];
        assert!(a.validate(&p).is_err()); // durations do not sum to one
    }

    #[test]
    fn optimizer_nesting_single_draw() {
        let g = ChannelGains::new(0.5, 1.5, 0.8, 0.6, 1.8, 0.9).unwrap();
        let p = unit();
        let cfg = HdSearchConfig {
            tau_step: 0.25,
            line_points: 5,
            refine_halvings: 3,
            support_directions: 9,
        };
        let full = optimize_hd_region(&g, &p, HdSchemeKind::Full, &cfg).unwrap();
        let four = optimize_hd_region(&g, &p, HdSchemeKind::FourPhase, &cfg).unwrap();
        let solo = optimize_hd_region(&g, &p, HdSchemeKind::SoloCommonOnly, &cfg).unwrap();
        let ind = optimize_hd_region(&g, &p, HdSchemeKind::IndependentSixPhase, &cfg).unwrap();
        assert!(full.contains(&four, 1e-9));
        assert!(full.contains(&solo, 1e-9));
        assert!(solo.contains(&ind, 1e-9));
        assert!(full.contains(&ind, 1e-9));
    }

    #[test]
    fn fixed_tau_power_search() {
        let g = unit_gains();
        let p = unit();
        let cfg = HdSearchConfig { line_points: 5, refine_halvings: 3, support_directions: 9, ..Default::default() };
        // single solo phase: only user 1 talks, directly
        let region =
            optimize_hd_powers(&g, &p, HdSchemeKind::Full, [1.0, 0.0, 0.0, 0.0, 0.0, 0.0], &cfg)
                .unwrap();
        assert!((region.support_dir([1.0, 0.0]) - 1.0).abs() < 1e-9);
        assert!(region.support_dir([0.0, 1.0]) < 1e-12);
        // no relay transmit phases and no direct... phase 3 alone delivers nothing
        let region =
            optimize_hd_powers(&g, &p, HdSchemeKind::Full, [0.0, 0.0, 1.0, 0.0, 0.0, 0.0], &cfg)
                .unwrap();
        assert_eq!(region.vertices().len(), 1);
    }

    #[test]
    fn search_config_validation() {
        let cfg = HdSearchConfig::default();
        assert!(cfg.validate().is_ok());
        assert!(HdSearchConfig { tau_step: 0.0, ..cfg }.validate().is_err());
        assert!(HdSearchConfig { line_points: 1, ..cfg }.validate().is_err());
    }
}
