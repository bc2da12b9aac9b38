//! Full-duplex composite decode-forward scheme and its special cases.
//!
//! Each user splits its power between a coherent repeat of the previous common
//! message (`alpha`), a fresh common message decoded at the relay (`beta`) and
//! a private message decoded only at the destination (`gamma`). The relay
//! splits its power between beamforming with each user (`pr1`, `pr2`) and an
//! independently coded bin index of both common messages (`beta3`).
//!
//! The relay beamforming powers are kept as `pr1 = k1 * alpha1` and
//! `pr2 = k2 * alpha2` rather than the scaling factors `k1, k2` themselves:
//! that decouples the user and relay budgets and removes the `alpha = 0`
//! singularity from the search space.

use crate::channel::{cap, ChannelGains, PowerBudget};
use crate::rate_geometry::{convex_union, pentagon_vertices, RatePentagon, RateRegion};
use crate::{Error, Result};

/// Budget slack tolerated by allocation validation.
const BUDGET_SLACK: f64 = 1e-12;

/// Power split of the composite full-duplex scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdAllocation {
    /// User 1 power on the coherent repeat of its previous common message.
    pub alpha1: f64,
    /// User 2 coherent-repeat power.
    pub alpha2: f64,
    /// User 1 power on its fresh common message.
    pub beta1: f64,
    /// User 2 fresh-common power.
    pub beta2: f64,
    /// Relay power on the independently coded bin index.
    pub beta3: f64,
    /// User 1 private-message power.
    pub gamma1: f64,
    /// User 2 private-message power.
    pub gamma2: f64,
    /// Relay power spent beamforming user 1's old common message.
    pub pr1: f64,
    /// Relay power spent beamforming user 2's old common message.
    pub pr2: f64,
}

impl FdAllocation {
    /// All-zero allocation (silent network).
    pub fn zero() -> Self {
        Self {
            alpha1: 0.0,
            alpha2: 0.0,
            beta1: 0.0,
            beta2: 0.0,
            beta3: 0.0,
            gamma1: 0.0,
            gamma2: 0.0,
            pr1: 0.0,
            pr2: 0.0,
        }
    }

    /// Checks nonnegativity, the three budget constraints, and the coupling
    /// that relay beamforming requires the matching user coherent power.
    pub fn validate(&self, budget: &PowerBudget) -> Result<()> {
        let fields = self.as_array();
        for (v, name) in fields.iter().zip(FIELD_NAMES) {
            if !v.is_finite() || *v < 0.0 {
                return Err(Error::domain(format!("allocation {name} must be finite and >= 0, got {v}")));
            }
        }
        let u1 = self.alpha1 + self.beta1 + self.gamma1;
        let u2 = self.alpha2 + self.beta2 + self.gamma2;
        let r = self.pr1 + self.pr2 + self.beta3;
        if u1 > budget.p1 + BUDGET_SLACK {
            return Err(Error::domain(format!("user 1 allocation {u1} exceeds budget {}", budget.p1)));
        }
        if u2 > budget.p2 + BUDGET_SLACK {
            return Err(Error::domain(format!("user 2 allocation {u2} exceeds budget {}", budget.p2)));
        }
        if r > budget.pr + BUDGET_SLACK {
            return Err(Error::domain(format!("relay allocation {r} exceeds budget {}", budget.pr)));
        }
        if self.pr1 > 0.0 && self.alpha1 == 0.0 {
            return Err(Error::domain("pr1 > 0 requires alpha1 > 0"));
        }
        if self.pr2 > 0.0 && self.alpha2 == 0.0 {
            return Err(Error::domain("pr2 > 0 requires alpha2 > 0"));
        }
        Ok(())
    }

    fn as_array(&self) -> [f64; 9] {
        [
            self.alpha1, self.beta1, self.gamma1, self.alpha2, self.beta2, self.gamma2,
            self.pr1, self.pr2, self.beta3,
        ]
    }

    fn from_array(v: [f64; 9]) -> Self {
        Self {
            alpha1: v[0],
            beta1: v[1],
            gamma1: v[2],
            alpha2: v[3],
            beta2: v[4],
            gamma2: v[5],
            pr1: v[6],
            pr2: v[7],
            beta3: v[8],
        }
    }
}

const A1: usize = 0;
const B1: usize = 1;
const G1: usize = 2;
const A2: usize = 3;
const B2: usize = 4;
const G2: usize = 5;
const PR1: usize = 6;
const PR2: usize = 7;
const B3: usize = 8;
const FIELD_NAMES: [&str; 9] =
    ["alpha1", "beta1", "gamma1", "alpha2", "beta2", "gamma2", "pr1", "pr2", "beta3"];

/// Which user keeps a full decode-forward connection in the hybrid scheme
/// while the other transmits directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum User {
    User1,
    User2,
}

/// The composite scheme and its parameter restrictions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    /// Everything enabled.
    Composite,
    /// Coherent block-structured DF: no private messages, no binning.
    MarkovDf,
    /// Independent (network-coded) DF: relay sends only the bin index.
    IndependentDf,
    /// Users ignore the relay entirely.
    DirectTransmission,
    /// Independent relaying plus private messages, no coherent component.
    IndependentPartialDf,
    /// One user runs full DF with the relay, the other transmits directly.
    HybridDfDt(User),
}

impl SchemeKind {
    /// Fields forced to zero by this scheme kind.
    fn zeroed_fields(&self) -> &'static [usize] {
        match self {
            SchemeKind::Composite => &[],
            SchemeKind::MarkovDf => &[G1, G2, B3],
            SchemeKind::IndependentDf => &[A1, A2, G1, G2, PR1, PR2],
            SchemeKind::DirectTransmission => &[A1, A2, B1, B2, B3, PR1, PR2],
            SchemeKind::IndependentPartialDf => &[A1, A2, PR1, PR2],
            SchemeKind::HybridDfDt(User::User1) => &[G1, A2, B2, PR2],
            SchemeKind::HybridDfDt(User::User2) => &[G2, A1, B1, PR1],
        }
    }

    /// Free fields per power group (user 1, user 2, relay).
    fn groups(&self) -> [Vec<usize>; 3] {
        let zeroed = self.zeroed_fields();
        let keep = |fields: &[usize]| -> Vec<usize> {
            fields.iter().copied().filter(|f| !zeroed.contains(f)).collect()
        };
        [keep(&[A1, B1, G1]), keep(&[A2, B2, G2]), keep(&[PR1, PR2, B3])]
    }
}

/// Applies the kind's mandated zero pattern to an allocation.
///
/// `Composite` is the identity. Relay beamforming powers tied to a zeroed
/// coherent component are cleared along with it.
pub fn restrict(kind: SchemeKind, a: &FdAllocation) -> FdAllocation {
    let mut v = a.as_array();
    for &f in kind.zeroed_fields() {
        v[f] = 0.0;
    }
    FdAllocation::from_array(v)
}

/// Rate pentagon of the composite scheme for one allocation.
///
/// The two cross-decoding bounds carry the coherent beamforming terms
/// `(g21*sqrt(alpha1) + g2r*sqrt(pr1))^2` and its mirror.
pub fn fd_pentagon(
    g: &ChannelGains,
    a: &FdAllocation,
    budget: &PowerBudget,
) -> Result<RatePentagon> {
    a.validate(budget)?;
    let (r1, r2, sum) = fd_rate_bounds(g, &a.as_array());
    RatePentagon::new(r1, r2, sum)
}

/// Unchecked rate bounds used by both the public entry point and the search.
fn fd_rate_bounds(g: &ChannelGains, v: &[f64; 9]) -> (f64, f64, f64) {
    let (gr1s, gr2s) = (g.gr1 * g.gr1, g.gr2 * g.gr2);
    let (g21s, g12s) = (g.g21 * g.g21, g.g12 * g.g12);
    let (g2rs, g1rs) = (g.g2r * g.g2r, g.g1r * g.g1r);
    let denom = gr1s * v[G1] + gr2s * v[G2] + 1.0;
    let i1 = cap(gr1s * v[B1] / denom);
    let i2 = cap(gr2s * v[B2] / denom);
    let i3 = cap((gr1s * v[B1] + gr2s * v[B2]) / denom);
    let i4 = cap(g21s * v[G1]);
    let i6 = cap(g12s * v[G2]);
    let coh1 = g.g21 * v[A1].sqrt() + g.g2r * v[PR1].sqrt();
    let coh2 = g.g12 * v[A2].sqrt() + g.g1r * v[PR2].sqrt();
    let i5 = cap(coh1 * coh1 + g21s * (v[B1] + v[G1]) + g2rs * v[B3]);
    let i7 = cap(coh2 * coh2 + g12s * (v[B2] + v[G2]) + g1rs * v[B3]);
    ((i1 + i4).min(i5), (i2 + i6).min(i7), i3 + i4 + i6)
}

/// Grid and refinement budget for the allocation search.
#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    /// Grid points per free dimension when the kind has at most three free
    /// dimensions.
    pub coarse_steps: usize,
    /// Grid points per free dimension for larger search spaces.
    pub fine_steps: usize,
    /// Step-halving rounds of the per-direction coordinate descent.
    pub refine_halvings: usize,
    /// Number of support directions tracked across the first quadrant.
    pub support_directions: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { coarse_steps: 21, fine_steps: 9, refine_halvings: 6, support_directions: 33 }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.coarse_steps < 2 || self.fine_steps < 2 {
            return Err(Error::domain("search grids need at least 2 points per free dimension"));
        }
        if self.support_directions < 2 {
            return Err(Error::domain("need at least 2 support directions"));
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

/// Convex closure of the pentagons reachable by `kind` under `budget`.
///
/// Grid enumeration over the kind's free allocation simplices (budget faces
/// suffice: every rate bound is nondecreasing in the fresh-common and bin
/// powers, so slack is always absorbed there), followed by one coordinate
/// descent pass per support direction. The composite search also folds in
/// every restricted kind's region so that parameter restriction always yields
/// a subset. Deterministic for a fixed config.
pub fn optimize_fd_region(
    g: &ChannelGains,
    p: &PowerBudget,
    kind: SchemeKind,
    search: &SearchConfig,
) -> Result<RateRegion> {
    search.validate()?;
    let groups = kind.groups();
    let budgets = [p.p1, p.p2, p.pr];
    let free_dims: usize = groups.iter().map(|f| f.len().saturating_sub(1)).sum();
    let steps = if free_dims <= 3 { search.coarse_steps } else { search.fine_steps };

    // per-group lists of candidate splits
    let group_points: Vec<Vec<[f64; 9]>> = groups
        .iter()
        .zip(budgets)
        .map(|(fields, q)| simplex_points(fields, q, steps))
        .collect();

    let dirs = search.directions();
    let mut points: Vec<[f64; 2]> = Vec::new();
    let mut best: Vec<(f64, [f64; 9])> = vec![(f64::NEG_INFINITY, [0.0; 9]); dirs.len()];

    for u1 in &group_points[0] {
        for u2 in &group_points[1] {
            for rl in &group_points[2] {
                let mut v = [0.0; 9];
                for i in 0..9 {
                    v[i] = u1[i] + u2[i] + rl[i];
                }
                let Some(v) = sanitize(kind, v) else { continue };
                let (a, b, c) = fd_rate_bounds(g, &v);
                let region = pentagon_vertices(&RatePentagon { r1_max: a, r2_max: b, sum_max: c });
                points.extend_from_slice(region.vertices());
                for (j, d) in dirs.iter().enumerate() {
                    let s = region.support_dir(*d);
                    if s > best[j].0 {
                        best[j] = (s, v);
                    }
                }
            }
        }
    }

    // coordinate-descent polish of each direction's winner
    let active: Vec<usize> = groups.iter().flatten().copied().collect();
    for (j, d) in dirs.iter().enumerate() {
        let (mut score, mut v) = best[j];
        if !score.is_finite() {
            continue;
        }
        let mut step = 1.0 / (steps - 1) as f64;
        for _ in 0..=search.refine_halvings {
            for _ in 0..2 {
                for &f in &active {
                    let group = group_of(f);
                    let q = budgets[group];
                    if q <= 0.0 {
                        continue;
                    }
                    for sign in [1.0, -1.0] {
                        let mut cand = v;
                        cand[f] = (cand[f] + sign * step * q).max(0.0);
                        renormalize_group(&mut cand, group, q);
                        let Some(cand) = sanitize(kind, cand) else { continue };
                        let (a, b, c) = fd_rate_bounds(g, &cand);
                        let s = pentagon_support(a, b, c, *d);
                        if s > score + 1e-15 {
                            score = s;
                            v = cand;
                        }
                    }
                }
            }
            step /= 2.0;
        }
        let (a, b, c) = fd_rate_bounds(g, &v);
        record_pentagon(a, b, c, &mut points);
    }

    let mut region = RateRegion::from_points(&points)?;

    if kind == SchemeKind::Composite {
        let sub_kinds = [
            SchemeKind::MarkovDf,
            SchemeKind::IndependentDf,
            SchemeKind::DirectTransmission,
            SchemeKind::IndependentPartialDf,
            SchemeKind::HybridDfDt(User::User1),
            SchemeKind::HybridDfDt(User::User2),
        ];
        let mut parts = vec![region];
        for sub in sub_kinds {
            parts.push(optimize_fd_region(g, p, sub, search)?);
        }
        region = convex_union(&parts)?;
    }

    Ok(region)
}

fn group_of(field: usize) -> usize {
    match field {
        A1 | B1 | G1 => 0,
        A2 | B2 | G2 => 1,
        _ => 2,
    }
}

/// Scales a group back onto its budget face after a perturbation.
fn renormalize_group(v: &mut [f64; 9], group: usize, q: f64) {
    let fields: &[usize] = match group {
        0 => &[A1, B1, G1],
        1 => &[A2, B2, G2],
        _ => &[PR1, PR2, B3],
    };
    let sum: f64 = fields.iter().map(|&f| v[f]).sum();
    if sum > 0.0 {
        let scale = q / sum;
        for &f in fields {
            v[f] *= scale;
        }
    }
}

/// Candidate splits of budget `q` over `fields`, covering the whole simplex
/// face including its boundary.
fn simplex_points(fields: &[usize], q: f64, steps: usize) -> Vec<[f64; 9]> {
    let mut out = Vec::new();
    let units = steps - 1;
    match fields.len() {
        0 => out.push([0.0; 9]),
        1 => {
            let mut v = [0.0; 9];
            v[fields[0]] = q;
            out.push(v);
        }
        2 => {
            for i in 0..=units {
                let mut v = [0.0; 9];
                v[fields[0]] = q * i as f64 / units as f64;
                v[fields[1]] = q - v[fields[0]];
                out.push(v);
            }
        }
        _ => {
            for i in 0..=units {
                for j in 0..=(units - i) {
                    let mut v = [0.0; 9];
                    v[fields[0]] = q * i as f64 / units as f64;
                    v[fields[1]] = q * j as f64 / units as f64;
                    v[fields[2]] = (q - v[fields[0]] - v[fields[1]]).max(0.0);
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Repairs relay beamforming power that lost its user-side counterpart: the
/// power moves into the bin-index component when the kind has one, otherwise
/// the point is infeasible.
fn sanitize(kind: SchemeKind, mut v: [f64; 9]) -> Option<[f64; 9]> {
    let has_b3 = !kind.zeroed_fields().contains(&B3);
    for (pr, alpha) in [(PR1, A1), (PR2, A2)] {
        if v[pr] > 0.0 && v[alpha] == 0.0 {
            if has_b3 {
                v[B3] += v[pr];
                v[pr] = 0.0;
            } else {
                return None;
            }
        }
    }
    Some(v)
}

fn record_pentagon(a: f64, b: f64, c: f64, points: &mut Vec<[f64; 2]>) {
    let r = pentagon_vertices(&RatePentagon { r1_max: a, r2_max: b, sum_max: c });
    points.extend_from_slice(r.vertices());
}

fn pentagon_support(a: f64, b: f64, c: f64, dir: [f64; 2]) -> f64 {
    let r = pentagon_vertices(&RatePentagon { r1_max: a, r2_max: b, sum_max: c });
    r.support_dir(dir)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gains_sq(g12s: f64, g1rs: f64, g21s: f64, g2rs: f64, gr1s: f64, gr2s: f64) -> ChannelGains {
        ChannelGains::new(g12s.sqrt(), g1rs.sqrt(), g21s.sqrt(), g2rs.sqrt(), gr1s.sqrt(), gr2s.sqrt())
            .unwrap()
    }

    fn unit_budget() -> PowerBudget {
        PowerBudget::new(1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn silent_network_is_origin() {
        let g = gains_sq(1.0, 1.0, 1.0, 1.0, 1.0, 1.0);
        let p = unit_budget();
        let pent = fd_pentagon(&g, &FdAllocation::zero(), &p).unwrap();
        assert_eq!((pent.r1_max, pent.r2_max, pent.sum_max), (0.0, 0.0, 0.0));
    }

    #[test]
    fn independent_df_reference_pentagon() {
        // squared gains: relay links 3, everything else 1
        let g = gains_sq(1.0, 1.0, 1.0, 1.0, 3.0, 3.0);
        let p = unit_budget();
        let a = FdAllocation { beta1: 1.0, beta2: 1.0, beta3: 1.0, ..FdAllocation::zero() };
        let pent = fd_pentagon(&g, &a, &p).unwrap();
        assert!((pent.r1_max - 1.584962500721156).abs() < 1e-12); // min(C(3), C(2)) = log2(3)
        assert!((pent.r2_max - 1.584962500721156).abs() < 1e-12);
        assert!((pent.sum_max - 2.807354922057604).abs() < 1e-12); // C(6) = log2(7)
    }

    #[test]
    fn direct_transmission_pentagon() {
        let g = gains_sq(1.0, 1.0, 1.0, 1.0, 1.0, 1.0);
        let p = unit_budget();
        let a = FdAllocation { gamma1: 1.0, gamma2: 1.0, ..FdAllocation::zero() };
        let pent = fd_pentagon(&g, &a, &p).unwrap();
        assert!((pent.r1_max - 1.0).abs() < 1e-12);
        assert!((pent.r2_max - 1.0).abs() < 1e-12);
        assert!((pent.sum_max - 2.0).abs() < 1e-12);
    }

    #[test]
    fn restrict_patterns() {
        let a = FdAllocation {
            alpha1: 0.3,
            beta1: 0.3,
            gamma1: 0.4,
            alpha2: 0.2,
            beta2: 0.5,
            gamma2: 0.3,
            pr1: 0.25,
            pr2: 0.25,
            beta3: 0.5,
        };
        let m = restrict(SchemeKind::MarkovDf, &a);
        assert_eq!((m.gamma1, m.gamma2, m.beta3), (0.0, 0.0, 0.0));
        assert_eq!((m.alpha1, m.beta1, m.pr1), (0.3, 0.3, 0.25));

        let dt = restrict(SchemeKind::DirectTransmission, &a);
        assert_eq!((dt.gamma1, dt.gamma2), (0.4, 0.3));
        assert_eq!(dt.alpha1 + dt.beta1 + dt.beta2 + dt.alpha2 + dt.beta3 + dt.pr1 + dt.pr2, 0.0);

        assert_eq!(restrict(SchemeKind::Composite, &a), a);

        let h = restrict(SchemeKind::HybridDfDt(User::User1), &a);
        assert_eq!((h.gamma1, h.alpha2, h.beta2, h.pr2), (0.0, 0.0, 0.0, 0.0));
        assert_eq!((h.alpha1, h.beta1, h.gamma2, h.pr1, h.beta3), (0.3, 0.3, 0.3, 0.25, 0.5));
    }

    #[test]
    fn allocation_validation() {
        let p = unit_budget();
        let over = FdAllocation { beta1: 0.7, gamma1: 0.5, ..FdAllocation::zero() };
        assert!(over.validate(&p).is_err());
        let orphan = FdAllocation { pr1: 0.5, ..FdAllocation::zero() };
        assert!(orphan.validate(&p).is_err());
        let ok = FdAllocation { alpha1: 0.5, pr1: 0.5, beta3: 0.5, ..FdAllocation::zero() };
        assert!(ok.validate(&p).is_ok());
    }

    #[test]
    fn dt_region_is_full_power_rectangle() {
        let g = gains_sq(1.0, 1.0, 1.0, 1.0, 2.0, 2.0);
        let p = unit_budget();
        for steps in [3, 9, 21] {
            let cfg = SearchConfig { coarse_steps: steps, fine_steps: steps, ..Default::default() };
            let region = optimize_fd_region(&g, &p, SchemeKind::DirectTransmission, &cfg).unwrap();
            assert!(region.distance_outside([1.0, 1.0]) < 1e-12);
            assert!((region.support_value(0.0) - 1.0).abs() < 1e-12);
            assert!((region.support_dir([1.0, 0.0]) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn independent_df_search_saturates_budget() {
        let g = gains_sq(1.0, 1.0, 1.0, 1.0, 3.0, 3.0);
        let p = unit_budget();
        let region =
            optimize_fd_region(&g, &p, SchemeKind::IndependentDf, &SearchConfig::default()).unwrap();
        let expect = pentagon_vertices(
            &RatePentagon::new(1.584962500721156, 1.584962500721156, 2.807354922057604).unwrap(),
        );
        assert!(region.contains(&expect, 1e-9));
        assert!(expect.contains(&region, 1e-9));
    }

    #[test]
    fn composite_contains_each_restriction() {
        let cfg = SearchConfig { fine_steps: 5, coarse_steps: 9, ..Default::default() };
        let p = unit_budget();
        // a handful of spot channels; the seeded 20-draw version lives in the
        // acceptance suite
        let gain_sets = [
            (1.0, 1.0, 1.0, 1.0, 3.0, 3.0),
            (1.0, 0.5, 1.0, 1.0, 20.0, 0.5),
            (0.2, 2.0, 1.5, 0.3, 0.7, 4.0),
        ];
        for gs in gain_sets {
            let g = gains_sq(gs.0, gs.1, gs.2, gs.3, gs.4, gs.5);
            let comp = optimize_fd_region(&g, &p, SchemeKind::Composite, &cfg).unwrap();
            for kind in [
                SchemeKind::MarkovDf,
                SchemeKind::IndependentDf,
                SchemeKind::DirectTransmission,
                SchemeKind::IndependentPartialDf,
                SchemeKind::HybridDfDt(User::User1),
                SchemeKind::HybridDfDt(User::User2),
            ] {
                let sub = optimize_fd_region(&g, &p, kind, &cfg).unwrap();
                assert!(comp.contains(&sub, 1e-9), "composite misses {kind:?} for {gs:?}");
            }
        }
    }

    #[test]
    fn zero_budget_gives_origin_region() {
        let g = gains_sq(1.0, 1.0, 1.0, 1.0, 1.0, 1.0);
        let p = PowerBudget::new(0.0, 0.0, 0.0).unwrap();
        let region =
            optimize_fd_region(&g, &p, SchemeKind::Composite, &SearchConfig::default()).unwrap();
        assert_eq!(region.vertices().len(), 1);
        assert_eq!(region.vertices()[0], [0.0, 0.0]);
    }

    #[test]
    fn monotone_in_power() {
        let g = gains_sq(1.0, 1.0, 1.0, 1.0, 2.0, 1.5);
        let cfg = SearchConfig { fine_steps: 5, coarse_steps: 9, ..Default::default() };
        let small = PowerBudget::new(0.5, 0.8, 0.6).unwrap();
        let big = PowerBudget::new(1.0, 0.8, 0.9).unwrap();
        for kind in [SchemeKind::IndependentPartialDf, SchemeKind::MarkovDf, SchemeKind::Composite] {
            let r_small = optimize_fd_region(&g, &small, kind, &cfg).unwrap();
            let r_big = optimize_fd_region(&g, &big, kind, &cfg).unwrap();
            assert!(r_big.contains(&r_small, 1e-9), "region shrank for {kind:?}");
        }
    }

    #[test]
    fn pentagon_continuous_in_allocation() {
        let g = gains_sq(0.8, 1.2, 1.0, 0.9, 2.0, 1.5);
        let base = [0.2, 0.5, 0.3, 0.1, 0.6, 0.3, 0.2, 0.3, 0.5];
        let (a0, b0, c0) = fd_rate_bounds(&g, &base);
        let eps = 1e-6;
        for f in 0..9 {
            let mut v = base;
            v[f] += eps;
            let (a, b, c) = fd_rate_bounds(&g, &v);
            for (x, y) in [(a, a0), (b, b0), (c, c0)] {
                assert!((x - y).abs() < 50.0 * eps, "field {f} jumps: {x} vs {y}");
            }
        }
    }

    #[test]
    fn i5_uses_only_totals_without_beamforming() {
        // with pr1 = 0 the first cross-decoding bound depends on the user-1
        // total and the bin power only
        let g = gains_sq(0.8, 1.2, 1.0, 0.9, 2.0, 1.5);
        let v1 = [0.0, 0.6, 0.4, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0];
        let v2 = [0.4, 0.2, 0.4, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0];
        let g21s = g.g21 * g.g21;
        let g2rs = g.g2r * g.g2r;
        let i5 = |v: &[f64; 9]| {
            cap((g.g21 * v[A1].sqrt()).powi(2) + g21s * (v[B1] + v[G1]) + g2rs * v[B3])
        };
        // same totals alpha1+beta1+gamma1 and beta3
        assert!((i5(&v1) - cap(g21s * 1.0 + g2rs * 1.0)).abs() < 1e-12);
        assert!((i5(&v2) - i5(&v1)).abs() < 1e-12);
    }
}
