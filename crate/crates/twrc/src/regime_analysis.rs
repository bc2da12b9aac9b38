//! Link-regime analysis of the independent partial-DF scheme.
//!
//! With the coherent components switched off, the scheme is a combination of
//! DF relaying (common parts) and direct transmission (private parts). Five
//! mutually exhaustive gain regimes decide how much of the machinery is
//! worth using:
//!
//! - **A** — one user keeps a partial split, the other switches between full
//!   DF and DT. Contains a sub-regime where the scheme only ties the DF-DT
//!   time-share region, detected by comparing the weighted sum rates `R_S`
//!   and `R_TS`.
//! - **B** — one relay uplink is so strong that full DF for that user plus DT
//!   for the other is optimal, strictly beating DF-DT time sharing.
//! - **C** — both relay uplinks are stronger than the direct link but the
//!   relay sum rate is not; time sharing between DF and DT is tight.
//! - **D** — full DF for both users.
//! - **E** — the relay is useless; direct transmission for both.
//!
//! The closed forms are cross-checked by [`brute_force_regime_oracle`], which
//! sweeps the private-power plane and compares regions geometrically.

use rayon::prelude::*;

use crate::channel::{cap, ChannelGains, PowerBudget};
pub use crate::fd_schemes::User;
use crate::rate_geometry::{convex_union, pentagon_vertices, RatePentagon, RateRegion};
use crate::{Error, Result};

/// Geometric margin (bits) below which two regions count as coinciding.
pub const ORACLE_TOL: f64 = 1e-6;

/// Major regime letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Major {
    A,
    B,
    C,
    D,
    E,
}

impl std::fmt::Display for Major {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Major::A => "A",
            Major::B => "B",
            Major::C => "C",
            Major::D => "D",
            Major::E => "E",
        };
        f.write_str(s)
    }
}

/// Classifier output.
///
/// `strong_user` is populated for regimes A and B only and names the user
/// whose relay uplink beats its direct link. `timeshare_equivalent` is
/// populated for regime A only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeLabel {
    pub major: Major,
    pub strong_user: Option<User>,
    pub timeshare_equivalent: Option<bool>,
}

impl RegimeLabel {
    fn plain(major: Major) -> Self {
        Self { major, strong_user: None, timeshare_equivalent: None }
    }

    /// The user whose private power is the free variable of the time-share
    /// certificate on this label's side (the partial-DF user in regime A,
    /// the DT user in regime B).
    pub fn certificate_user(&self) -> Option<User> {
        match (self.major, self.strong_user) {
            (Major::A | Major::B, Some(User::User1)) => Some(User::User2),
            (Major::A | Major::B, Some(User::User2)) => Some(User::User1),
            _ => None,
        }
    }

    /// Short sub-case name used in serialized output.
    pub fn sub_str(&self) -> Option<&'static str> {
        match (self.major, self.strong_user) {
            (Major::A, Some(User::User1)) => Some("user2_pdf_user1_switches"),
            (Major::A, Some(User::User2)) => Some("user1_pdf_user2_switches"),
            (Major::B, Some(User::User1)) => Some("user1_df_user2_dt"),
            (Major::B, Some(User::User2)) => Some("user2_df_user1_dt"),
            _ => None,
        }
    }

    /// True when the classifier predicts the scheme strictly exceeds DF-DT
    /// time sharing.
    pub fn predicts_strict_exceedance(&self) -> bool {
        match self.major {
            Major::B => true,
            Major::A => !self.timeshare_equivalent.unwrap_or(false),
            _ => false,
        }
    }

    /// Label with the user indices exchanged.
    pub fn mirrored(&self) -> Self {
        let strong_user = self.strong_user.map(|u| match u {
            User::User1 => User::User2,
            User::User2 => User::User1,
        });
        Self { major: self.major, strong_user, timeshare_equivalent: self.timeshare_equivalent }
    }
}

impl std::fmt::Display for RegimeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.major)?;
        if let Some(sub) = self.sub_str() {
            write!(f, " ({sub})")?;
        }
        if let Some(ts) = self.timeshare_equivalent {
            write!(f, " [{}]", if ts { "timeshare-equivalent" } else { "strict" })?;
        }
        Ok(())
    }
}

/// Slope weight, optimal private power and the two weighted sum rates that
/// decide whether partial DF beats DF-DT time sharing on one side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeshareCertificate {
    /// Which user's private power is the free variable.
    pub pdf_user: User,
    /// Slope weight of the outermost DF-DT time-sharing line.
    pub mu: f64,
    /// Private power of the pdf user maximizing the weighted sum rate.
    pub gamma_star: f64,
    /// Weighted sum rate of the partial-DF scheme at `gamma_star`.
    pub r_s: f64,
    /// Weighted sum rate of the DF-DT time-share line.
    pub r_ts: f64,
}

/// Squared-gain view of one analysis side. Side 1 treats user 2's private
/// power as free (weight `mu` multiplies `R1`); side 2 is the mirror image.
#[derive(Debug, Clone, Copy)]
struct Side {
    x: f64,  // relay uplink of the switching user
    y: f64,  // its direct link
    v: f64,  // relay uplink of the pdf user
    u: f64,  // its direct link
    w: f64,  // downlink from relay to the receiver of the switching user
    p1: f64, // power of the switching user
    p2: f64, // power of the pdf user
    pr: f64,
}

impl Side {
    fn for_pdf_user(g: &ChannelGains, p: &PowerBudget, pdf_user: User) -> Self {
        match pdf_user {
            User::User2 => Self {
                x: g.gr1 * g.gr1,
                y: g.g21 * g.g21,
                v: g.gr2 * g.gr2,
                u: g.g12 * g.g12,
                w: g.g2r * g.g2r,
                p1: p.p1,
                p2: p.p2,
                pr: p.pr,
            },
            User::User1 => Self::for_pdf_user(&g.swap_users(), &p.swap_users(), User::User2),
        }
    }

    /// Weighted objective `f = J3 - J1 + mu * J1` of the lower corner point,
    /// with the full remaining power on the common parts.
    fn f(&self, gamma1: f64, gamma2: f64, mu: f64) -> f64 {
        let b1 = self.p1 - gamma1;
        let b2 = self.p2 - gamma2;
        let d = self.x * gamma1 + self.v * gamma2 + 1.0;
        let j1 = cap(self.x * b1 / d) + cap(self.y * gamma1);
        let j3 = cap((self.x * b1 + self.v * b2) / d) + cap(self.y * gamma1) + cap(self.u * gamma2);
        j3 - j1 + mu * j1
    }

    fn mu_denominator(&self) -> f64 {
        cap(self.x * self.p1) - cap(self.y * self.p1)
    }

    fn mu(&self) -> f64 {
        (cap(self.u * self.p2) - cap(self.v * self.p2 / (1.0 + self.x * self.p1)))
            / self.mu_denominator()
    }

    fn r_ts(&self) -> f64 {
        (cap(self.x * self.p1) * cap(self.u * self.p2)
            - cap(self.v * self.p2 / (1.0 + self.x * self.p1)) * cap(self.y * self.p1))
            / self.mu_denominator()
    }

    /// Exact maximizer of `f(0, gamma)` over `[0, p2]`.
    ///
    /// The stationarity condition is linear in `gamma`: `f' ~ den*gamma - num`
    /// after clearing positive denominators. A negative `den` makes the
    /// stationary point the maximum (the closed-form positive-part expression,
    /// additionally capped by the power budget); otherwise the maximum sits at
    /// an endpoint.
    fn gamma_star(&self, mu: f64) -> f64 {
        let Side { x, v, u, p1, p2, .. } = *self;
        let num = v * x * mu * p1 - (u - v + u * x * p1);
        let den = v * u - v * v + v * u * x * p1 * (1.0 - mu);
        if den < 0.0 {
            (num / den).max(0.0).min(p2)
        } else if den > 0.0 {
            if self.f(0.0, 0.0, mu) >= self.f(0.0, p2, mu) {
                0.0
            } else {
                p2
            }
        } else if num >= 0.0 {
            0.0
        } else {
            p2
        }
    }
}

fn check_positive_budgets(p: &PowerBudget) -> Result<()> {
    if p.p1 <= 0.0 || p.p2 <= 0.0 {
        return Err(Error::domain("regime analysis requires positive user powers"));
    }
    Ok(())
}

/// Rate pentagon of the independent partial-DF scheme for private powers
/// `(gamma1, gamma2)`; the remaining power `beta_i = P_i - gamma_i` carries
/// the common messages and the relay spends everything on the bin index.
///
/// The cross-decoding caps generalize to unequal budgets as
/// `J4 = C(g21^2 P1 + g2r^2 Pr)` and `J5 = C(g12^2 P2 + g1r^2 Pr)`.
pub fn independent_pdf_pentagon(
    g: &ChannelGains,
    p: &PowerBudget,
    gamma1: f64,
    gamma2: f64,
) -> Result<RatePentagon> {
    if !(0.0..=p.p1 + 1e-12).contains(&gamma1) || !(0.0..=p.p2 + 1e-12).contains(&gamma2) {
        return Err(Error::domain(format!(
            "private powers ({gamma1}, {gamma2}) outside [0,{}] x [0,{}]",
            p.p1, p.p2
        )));
    }
    let (a, b, c) = pdf_bounds(g, p, gamma1.min(p.p1), gamma2.min(p.p2));
    RatePentagon::new(a, b, c)
}

fn pdf_bounds(g: &ChannelGains, p: &PowerBudget, gamma1: f64, gamma2: f64) -> (f64, f64, f64) {
    let (x, y) = (g.gr1 * g.gr1, g.g21 * g.g21);
    let (v, u) = (g.gr2 * g.gr2, g.g12 * g.g12);
    let b1 = p.p1 - gamma1;
    let b2 = p.p2 - gamma2;
    let d = x * gamma1 + v * gamma2 + 1.0;
    let j1 = cap(x * b1 / d) + cap(y * gamma1);
    let j2 = cap(v * b2 / d) + cap(u * gamma2);
    let j3 = cap((x * b1 + v * b2) / d) + cap(y * gamma1) + cap(u * gamma2);
    let j4 = cap(y * p.p1 + g.g2r * g.g2r * p.pr);
    let j5 = cap(u * p.p2 + g.g1r * g.g1r * p.pr);
    (j1.min(j4), j2.min(j5), j3)
}

/// Evaluates the five regime condition sets.
///
/// Boundary ties resolve toward the simpler scheme: E over C/D, D over A/B,
/// C over A, B over A.
pub fn classify_regime(g: &ChannelGains, p: &PowerBudget) -> Result<RegimeLabel> {
    check_positive_budgets(p)?;
    let (x, y) = (g.gr1 * g.gr1, g.g21 * g.g21);
    let (v, u) = (g.gr2 * g.gr2, g.g12 * g.g12);
    if x <= y && v <= u {
        return Ok(RegimeLabel::plain(Major::E));
    }
    if x >= y && v >= u {
        let major = if cap(x * p.p1 + v * p.p2) >= cap(y * p.p1) + cap(u * p.p2) {
            Major::D
        } else {
            Major::C
        };
        return Ok(RegimeLabel::plain(major));
    }
    // exactly one side has the stronger relay uplink
    let (strong, side) = if x > y && v < u {
        (User::User1, Side::for_pdf_user(g, p, User::User2))
    } else {
        (User::User2, Side::for_pdf_user(g, p, User::User1))
    };
    let hybrid_threshold = (side.y + side.w * side.pr / side.p1) * (1.0 + side.v * side.p2);
    if side.x >= hybrid_threshold {
        return Ok(RegimeLabel {
            major: Major::B,
            strong_user: Some(strong),
            timeshare_equivalent: None,
        });
    }
    // regime A: the time-share sub-regime needs both the gain window and the
    // weighted-sum-rate comparison
    let in_window = side.x
        < (side.y + side.w * side.pr / side.p1).min(side.y * (1.0 + side.v * side.p2));
    let ts = if in_window {
        let mu = side.mu();
        let gamma_star = side.gamma_star(mu);
        side.f(0.0, gamma_star, mu) <= side.r_ts()
    } else {
        false
    };
    Ok(RegimeLabel {
        major: Major::A,
        strong_user: Some(strong),
        timeshare_equivalent: Some(ts),
    })
}

/// Closed-form time-share certificate for the side where `pdf_user` keeps the
/// private split.
///
/// Errors when the side's gain ordering does not hold (the slope denominator
/// `C(x P1) - C(y P1)` must be positive).
pub fn timeshare_certificate(
    g: &ChannelGains,
    p: &PowerBudget,
    pdf_user: User,
) -> Result<TimeshareCertificate> {
    check_positive_budgets(p)?;
    let side = Side::for_pdf_user(g, p, pdf_user);
    if side.mu_denominator() <= 0.0 {
        return Err(Error::domain(
            "time-share certificate undefined: relay uplink does not dominate the direct link on this side",
        ));
    }
    let mu = side.mu();
    let gamma_star = side.gamma_star(mu);
    Ok(TimeshareCertificate {
        pdf_user,
        mu,
        gamma_star,
        r_s: side.f(0.0, gamma_star, mu),
        r_ts: side.r_ts(),
    })
}

/// Weighted corner objective `f(gamma1, gamma2) = J3 - J1 + mu * J1` of the
/// independent partial-DF region (side 1: weight on `R1`).
pub fn weighted_objective_f(
    g: &ChannelGains,
    p: &PowerBudget,
    gamma1: f64,
    gamma2: f64,
    mu: f64,
) -> f64 {
    debug_assert!((0.0..=p.p1).contains(&gamma1) && (0.0..=p.p2).contains(&gamma2));
    Side::for_pdf_user(g, p, User::User2).f(gamma1, gamma2, mu)
}

/// Largest private power of user 2 that keeps the relay path binding for
/// user 1, i.e. keeps `J1 >= J4` at `gamma1 = 0`; capped by the budget once
/// the relay uplink clears the hybrid threshold.
pub fn gamma2_max(g: &ChannelGains, p: &PowerBudget) -> f64 {
    let (x, y) = (g.gr1 * g.gr1, g.g21 * g.g21);
    let v = g.gr2 * g.gr2;
    let t = y + g.g2r * g.g2r * p.pr / p.p1;
    if x >= t * (1.0 + v * p.p2) {
        p.p2
    } else {
        (x / t - 1.0) / v
    }
}

/// Brute-force verdict on one channel: whether the swept partial-DF region
/// strictly exceeds the DF-DT time-share hull, whether the two coincide, and
/// which grid allocation reproduces the whole region best.
#[derive(Debug, Clone)]
pub struct OracleVerdict {
    /// Swept region pokes outside the hull by more than [`ORACLE_TOL`].
    pub exceeds: bool,
    /// Hausdorff distance between region and hull is below [`ORACLE_TOL`].
    pub coincides: bool,
    /// Largest distance of a swept-region vertex outside the hull (bits).
    pub max_outside: f64,
    /// Grid point whose single pentagon tracks the whole region best.
    pub gamma_star: [f64; 2],
    /// Convex closure over the private-power grid.
    pub pdf_region: RateRegion,
    /// Convex hull of the full-DF and DT regions.
    pub ts_hull: RateRegion,
}

/// Sweeps `(gamma1, gamma2)` on a `grid_n x grid_n` grid (endpoints included)
/// and compares the resulting convex closure against DF-DT time sharing.
///
/// Resolutions of 101+ points per axis make the `1e-6`-bit verdicts meaningful
/// at unit-scale budgets.
pub fn brute_force_regime_oracle(
    g: &ChannelGains,
    p: &PowerBudget,
    grid_n: usize,
) -> Result<OracleVerdict> {
    if grid_n < 2 {
        return Err(Error::domain("oracle grid needs at least 2 points per axis"));
    }
    let n = grid_n;
    let gamma1_at = |i: usize| p.p1 * i as f64 / (n - 1) as f64;
    let gamma2_at = |j: usize| p.p2 * j as f64 / (n - 1) as f64;

    let bounds: Vec<(f64, f64, f64)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let g = *g;
            let p = *p;
            (0..n).map(move |j| pdf_bounds(&g, &p, gamma1_at(i), gamma2_at(j)))
        })
        .collect();

    let mut points = Vec::with_capacity(bounds.len() * 5);
    for &(a, b, c) in &bounds {
        let r = pentagon_vertices(&RatePentagon { r1_max: a, r2_max: b, sum_max: c });
        points.extend_from_slice(r.vertices());
    }
    let pdf_region = RateRegion::from_points(&points)?;

    let df = pentagon_vertices(&independent_pdf_pentagon(g, p, 0.0, 0.0)?);
    let dt = pentagon_vertices(&independent_pdf_pentagon(g, p, p.p1, p.p2)?);
    let ts_hull = convex_union(&[df, dt])?;

    let max_outside = ts_hull.max_outside_distance(&pdf_region);

    let corner_ids = [0, (n - 1) * n, n - 1, n * n - 1];
    let mut best = (f64::INFINITY, 0usize);
    let union_vertices = pdf_region.vertices();
    let visit = |id: usize, best: &mut (f64, usize)| {
        let (a, b, c) = bounds[id];
        let pent = pentagon_vertices(&RatePentagon { r1_max: a, r2_max: b, sum_max: c });
        let mut worst = 0.0f64;
        for &vtx in union_vertices {
            let d = pent.distance_outside(vtx);
            if d > worst {
                worst = d;
                if worst >= best.0 {
                    return; // cannot become the argmin
                }
            }
        }
        if worst < best.0 {
            *best = (worst, id);
        }
    };
    for id in corner_ids {
        visit(id, &mut best);
    }
    for id in 0..n * n {
        visit(id, &mut best);
    }
    let (i, j) = (best.1 / n, best.1 % n);

    Ok(OracleVerdict {
        exceeds: max_outside > ORACLE_TOL,
        coincides: max_outside < ORACLE_TOL,
        max_outside,
        gamma_star: [gamma1_at(i), gamma2_at(j)],
        pdf_region,
        ts_hull,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gains_sq(g12s: f64, g1rs: f64, g21s: f64, g2rs: f64, gr1s: f64, gr2s: f64) -> ChannelGains {
        ChannelGains::new(g12s.sqrt(), g1rs.sqrt(), g21s.sqrt(), g2rs.sqrt(), gr1s.sqrt(), gr2s.sqrt())
            .unwrap()
    }

    fn unit() -> PowerBudget {
        PowerBudget::new(1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn pdf_pentagon_full_df() {
        let g = gains_sq(1.0, 1.0, 1.0, 1.0, 4.0, 4.0);
        let pent = independent_pdf_pentagon(&g, &unit(), 0.0, 0.0).unwrap();
        // J1 = C(4) = log2 5, capped by J4 = C(1 + 1) = log2 3
        assert!((pent.r1_max - 1.584962500721156).abs() < 1e-12);
        assert!((pent.sum_max - 3.169925001442312).abs() < 1e-12); // C(8) = log2 9
    }

    #[test]
    fn pdf_pentagon_direct_transmission() {
        let g = gains_sq(1.0, 1.0, 1.0, 1.0, 4.0, 4.0);
        let pent = independent_pdf_pentagon(&g, &unit(), 1.0, 1.0).unwrap();
        assert!((pent.r1_max - 1.0).abs() < 1e-12);
        assert!((pent.r2_max - 1.0).abs() < 1e-12);
        assert!((pent.sum_max - 2.0).abs() < 1e-12);
    }

    #[test]
    fn pdf_pentagon_interference_denominator() {
        // gamma2 = 0.5 contributes 0.25 of interference at the relay
        let g = gains_sq(1.0, 1.0, 1.0, 1.0, 2.5, 0.5);
        let pent = independent_pdf_pentagon(&g, &unit(), 0.0, 0.5).unwrap();
        // J1 = C(2.5 / 1.25) = C(2) = log2 3, no J4 cap (J4 = C(2) as well)
        assert!((pent.r1_max - 1.584962500721156).abs() < 1e-12);
        assert!(independent_pdf_pentagon(&g, &unit(), -0.1, 0.0).is_err());
        assert!(independent_pdf_pentagon(&g, &unit(), 0.0, 1.5).is_err());
    }

    #[test]
    fn classify_reference_channels() {
        let p = unit();
        let label = |g: ChannelGains| classify_regime(&g, &p).unwrap();

        let e = label(gains_sq(1.0, 1.0, 1.0, 1.0, 0.5, 0.5));
        assert_eq!(e.major, Major::E);
        assert_eq!(e.strong_user, None);

        let d = label(gains_sq(1.0, 1.0, 1.0, 1.0, 4.0, 4.0));
        assert_eq!(d.major, Major::D);

        let b = label(gains_sq(1.0, 1.0, 1.0, 1.0, 20.0, 0.5));
        assert_eq!(b.major, Major::B);
        assert_eq!(b.strong_user, Some(User::User1));
        assert_eq!(b.sub_str(), Some("user1_df_user2_dt"));

        let c = label(gains_sq(1.0, 1.0, 1.0, 1.0, 1.2, 1.2));
        assert_eq!(c.major, Major::C);
    }

    #[test]
    fn classify_mirror_symmetry() {
        let p = unit();
        let sets = [
            (1.0, 1.0, 1.0, 1.0, 20.0, 0.5),
            (1.0, 0.5, 1.0, 1.0, 2.0, 0.5),
            (2.0, 1.0, 0.3, 0.8, 0.9, 3.0),
            (1.0, 1.0, 1.0, 1.0, 1.2, 1.2),
        ];
        for gs in sets {
            let g = gains_sq(gs.0, gs.1, gs.2, gs.3, gs.4, gs.5);
            let direct = classify_regime(&g, &p).unwrap();
            let swapped = classify_regime(&g.swap_users(), &p.swap_users()).unwrap();
            assert_eq!(swapped, direct.mirrored(), "mirror mismatch for {gs:?}");
        }
    }

    #[test]
    fn gamma2_max_cases() {
        let p = unit();
        let g = gains_sq(1.0, 1.0, 1.0, 1.0, 2.5, 0.5);
        assert!((gamma2_max(&g, &p) - 0.5).abs() < 1e-12);

        // exactly at the hybrid threshold: (1 + 1) * (1 + 1) = 4 = gr1^2
        let g = gains_sq(1.0, 1.0, 1.0, 1.0, 4.0, 1.0);
        assert_eq!(gamma2_max(&g, &p), 1.0);

        let g = gains_sq(1.0, 1.0, 1.0, 1.0, 2.0, 0.5);
        assert!(gamma2_max(&g, &p).abs() < 1e-12);
    }

    #[test]
    fn certificate_reference_channel() {
        // gr1^2 = 2, g21^2 = 1, gr2^2 = 0.5, g12^2 = 1
        let g = gains_sq(1.0, 1.0, 1.0, 1.0, 2.0, 0.5);
        let p = unit();
        let cert = timeshare_certificate(&g, &p, User::User2).unwrap();
        assert!((cert.mu - 1.329328935965807).abs() < 1e-12);
        assert_eq!(cert.gamma_star, 1.0);
        assert!((cert.r_s - 2.624961616787846).abs() < 1e-12);
        assert!((cert.r_ts - 2.329328935965806).abs() < 1e-12);

        // independent check 1: dense grid argmax of f(0, gamma2)
        let mut best = (f64::NEG_INFINITY, 0.0);
        for i in 0..=100_000 {
            let gamma2 = i as f64 / 100_000.0;
            let f = weighted_objective_f(&g, &p, 0.0, gamma2, cert.mu);
            if f > best.0 {
                best = (f, gamma2);
            }
        }
        assert!((best.1 - cert.gamma_star).abs() <= 1e-5);
        assert!((best.0 - cert.r_s).abs() < 1e-9);

        // independent check 2: r_ts is the support value of the DF-DT hull
        let df = pentagon_vertices(&independent_pdf_pentagon(&g, &p, 0.0, 0.0).unwrap());
        let dt = pentagon_vertices(&independent_pdf_pentagon(&g, &p, 1.0, 1.0).unwrap());
        let hull = convex_union(&[df, dt]).unwrap();
        assert!((hull.support_value(cert.mu) - cert.r_ts).abs() < 1e-9);
    }

    #[test]
    fn certificate_requires_gain_ordering() {
        let g = gains_sq(1.0, 1.0, 1.0, 1.0, 0.5, 0.5);
        assert!(timeshare_certificate(&g, &unit(), User::User2).is_err());
    }

    #[test]
    fn certificate_degenerate_relay_downlink() {
        // gr2 = 0: the pdf user has no relay path at all
        let g = gains_sq(1.0, 1.0, 1.0, 1.0, 2.0, 0.0);
        let p = unit();
        let cert = timeshare_certificate(&g, &p, User::User2).unwrap();
        // mu numerator reduces to C(g12^2 P2)
        assert!((cert.mu - 1.0 / (cap(2.0) - 1.0)).abs() < 1e-12);
        // f(0, 0) = mu * C(gr1^2 P1): everything else vanishes
        let f0 = weighted_objective_f(&g, &p, 0.0, 0.0, cert.mu);
        assert!((f0 - cert.mu * cap(2.0)).abs() < 1e-12);
        assert!(cert.gamma_star == 0.0 || cert.gamma_star == 1.0);
    }

    #[test]
    fn objective_degenerates_to_sum_rate_at_unit_weight() {
        let g = gains_sq(1.0, 1.0, 1.0, 1.0, 2.0, 0.5);
        let p = unit();
        for (g1, g2) in [(0.0, 0.3), (0.5, 0.5), (1.0, 0.2)] {
            let f = weighted_objective_f(&g, &p, g1, g2, 1.0);
            let pent = independent_pdf_pentagon(&g, &p, g1, g2).unwrap();
            // J3 equals the uncapped sum bound here (no cap active at these gains)
            assert!((f - pent.sum_max).abs() < 1e-12);
        }
    }

    #[test]
    fn objective_gamma1_derivative_sign_flips_at_threshold() {
        // sign of df/dgamma1 flips at gamma2 = (x - y) / (y v) = 0.4 here
        let g = gains_sq(1.0, 1.0, 1.0, 1.0, 1.2, 0.5);
        let p = unit();
        let mu = 1.3;
        let thr = (1.2 - 1.0) / (1.0 * 0.5);
        assert!((0.0..1.0).contains(&thr));
        let h = 1e-6;
        for (gamma2, expect_increasing) in [(thr * 0.5, false), (thr * 1.5, true)] {
            let f0 = weighted_objective_f(&g, &p, 0.4, gamma2, mu);
            let f1 = weighted_objective_f(&g, &p, 0.4 + h, gamma2, mu);
            assert_eq!(f1 - f0 > 0.0, expect_increasing, "gamma2 = {gamma2}");
        }
    }

    #[test]
    fn objective_gamma1_argmax_at_endpoints() {
        let g = gains_sq(1.0, 1.0, 1.0, 1.0, 2.0, 0.5);
        let p = unit();
        let mu = 1.3293;
        for gamma2 in [0.0, 0.3, 0.7, 1.0] {
            let mut best = (f64::NEG_INFINITY, 0.0);
            for i in 0..=2000 {
                let gamma1 = i as f64 / 2000.0;
                let f = weighted_objective_f(&g, &p, gamma1, gamma2, mu);
                if f > best.0 {
                    best = (f, gamma1);
                }
            }
            assert!(
                best.1 < 1e-9 || (best.1 - 1.0).abs() < 1e-9,
                "interior argmax {} at gamma2 = {gamma2}",
                best.1
            );
        }
    }

    #[test]
    fn regime_c_extremes() {
        // in regime C the full-DF corner maximizes both individual rates while
        // full direct transmission maximizes the sum rate
        let p = unit();
        for sq in [(1.0, 1.0, 1.0, 1.0, 1.2, 1.2), (1.3, 0.7, 0.9, 1.1, 1.25, 1.6)] {
            let g = gains_sq(sq.0, sq.1, sq.2, sq.3, sq.4, sq.5);
            if classify_regime(&g, &p).unwrap().major != Major::C {
                continue;
            }
            let df = independent_pdf_pentagon(&g, &p, 0.0, 0.0).unwrap();
            let dt = independent_pdf_pentagon(&g, &p, 1.0, 1.0).unwrap();
            let n = 41;
            for i in 0..n {
                for j in 0..n {
                    let pent = independent_pdf_pentagon(
                        &g,
                        &p,
                        i as f64 / (n - 1) as f64,
                        j as f64 / (n - 1) as f64,
                    )
                    .unwrap();
                    assert!(pent.r1_max <= df.r1_max + 1e-12);
                    assert!(pent.r2_max <= df.r2_max + 1e-12);
                    assert!(pent.sum_max <= dt.sum_max + 1e-12);
                }
            }
        }
    }

    #[test]
    fn oracle_endpoint_regimes() {
        let p = unit();
        // regime D: full DF is the whole region
        let g = gains_sq(1.0, 1.0, 1.0, 1.0, 4.0, 4.0);
        let v = brute_force_regime_oracle(&g, &p, 41).unwrap();
        assert!(v.coincides);
        assert_eq!(v.gamma_star, [0.0, 0.0]);

        // regime E: DT is the whole region
        let g = gains_sq(1.0, 1.0, 1.0, 1.0, 0.5, 0.5);
        let v = brute_force_regime_oracle(&g, &p, 41).unwrap();
        assert!(v.coincides);
        assert_eq!(v.gamma_star, [1.0, 1.0]);
    }

    #[test]
    fn oracle_detects_regime_b_exceedance() {
        let p = unit();
        let g = gains_sq(1.0, 1.0, 1.0, 1.0, 20.0, 0.5);
        let v = brute_force_regime_oracle(&g, &p, 101).unwrap();
        assert!(v.exceeds, "max_outside = {}", v.max_outside);
        // the swept region reaches the rectangle corner (C(2), C(1))
        let corner = [cap(2.0), 1.0];
        assert!(v.pdf_region.distance_outside(corner) < 1e-9);
        assert!(v.ts_hull.distance_outside(corner) > 0.1);
    }

    #[test]
    fn oracle_rejects_degenerate_grid() {
        let g = gains_sq(1.0, 1.0, 1.0, 1.0, 2.0, 0.5);
        assert!(brute_force_regime_oracle(&g, &unit(), 1).is_err());
    }
}
