//! Exponential coefficient profiles: empirical profiles from coefficient
//! vectors, the closed-form profile library, numeric inversion of
//! `alpha -> e^{-g'(alpha)}` into `t -> t G(t)`, and the zeros-imply-profile
//! verification harness.

use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::families::ExactPolynomial;
use crate::hp;
use crate::quadrature as quad;

/// Per-index natural-log coefficient magnitudes (extended reals, `-inf` for
/// zero coefficients); the representation that survives degrees where exact
/// values overflow doubles.
#[derive(Debug, Clone)]
pub struct LogCoeffVector {
    pub logs: Vec<f64>,
    pub n: usize,
}

impl LogCoeffVector {
    pub fn new(logs: Vec<f64>) -> Self {
        let n = logs.len().saturating_sub(1);
        LogCoeffVector { logs, n }
    }

    /// Natural logs of the (nonnegative) coefficients of an exact polynomial.
    pub fn from_exact(p: &ExactPolynomial) -> Result<Self> {
        for (index, c) in p.coeffs.iter().enumerate() {
            if c.is_negative() {
                return Err(Error::NegativeCoefficient { index });
            }
        }
        Ok(LogCoeffVector::new(
            p.coeffs.iter().map(hp::ln_rat_abs).collect(),
        ))
    }

    pub fn from_float(p: &crate::families::FloatPolynomial) -> Result<Self> {
        let mut logs = Vec::with_capacity(p.coeffs.len());
        for (index, c) in p.coeffs.iter().enumerate() {
            if c.is_sign_negative() && !c.is_zero() {
                return Err(Error::NegativeCoefficient { index });
            }
            logs.push(if c.is_zero() {
                f64::NEG_INFINITY
            } else {
                c.clone().ln().to_f64()
            });
        }
        Ok(LogCoeffVector::new(logs))
    }

    /// `ln P(1) = ln sum_k a_k` via log-sum-exp.
    pub fn log_p1(&self) -> f64 {
        let m = self.logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if m == f64::NEG_INFINITY {
            return f64::NEG_INFINITY;
        }
        m + self.logs.iter().map(|&l| (l - m).exp()).sum::<f64>().ln()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalize {
    None,
    ByP1,
}

/// Sampled `(alpha, g(alpha))` grid with the degree that produced it.
#[derive(Debug, Clone)]
pub struct ProfileGrid {
    pub alphas: Vec<f64>,
    pub gvals: Vec<f64>,
    pub n_used: usize,
}

impl ProfileGrid {
    /// Discrete concavity of the finite part: second differences <= 0.
    pub fn is_concave(&self, slack: f64) -> bool {
        for w in self.gvals.windows(3) {
            if w.iter().all(|v| v.is_finite()) && w[0] + w[2] - 2.0 * w[1] > slack {
                return false;
            }
        }
        true
    }

    /// Forward-difference `e^{-g'}` proxies must increase on the finite part.
    pub fn implied_eg_increasing(&self, slack: f64) -> bool {
        let n = self.n_used as f64;
        let mut prev = f64::NEG_INFINITY;
        for w in self.gvals.windows(2) {
            if w[0].is_finite() && w[1].is_finite() {
                let eg = -(w[1] - w[0]) * n; // log e^{-g'} between grid points
                if eg < prev - slack {
                    return false;
                }
                prev = eg;
            }
        }
        true
    }
}

/// Empirical profile `g_k = (1/n)(ln a_k - [ln P(1)])` on the full index
/// grid `alpha_k = k/n`.
pub fn empirical_profile(coeffs: &LogCoeffVector, normalize: Normalize) -> ProfileGrid {
    let n = coeffs.n.max(1);
    let shift = match normalize {
        Normalize::None => 0.0,
        Normalize::ByP1 => coeffs.log_p1(),
    };
    let alphas = (0..=coeffs.n).map(|k| k as f64 / n as f64).collect();
    let gvals = coeffs
        .logs
        .iter()
        .map(|&l| {
            if l == f64::NEG_INFINITY {
                f64::NEG_INFINITY
            } else {
                (l - shift) / n as f64
            }
        })
        .collect();
    ProfileGrid {
        alphas,
        gvals,
        n_used: n,
    }
}

pub fn empirical_profile_exact(p: &ExactPolynomial, normalize: Normalize) -> Result<ProfileGrid> {
    Ok(empirical_profile(&LogCoeffVector::from_exact(p)?, normalize))
}

/// Closed-form profile families (each knows `g`, `e^{-g'}` and its domain).
#[derive(Debug, Clone)]
pub enum ClosedProfile {
    Stirling,
    Touchard,
    Fubini,
    Eulerian,
    Narayana { gamma: f64 },
    /// covers Laguerre (`a = [], b = [1 + gamma*]`), Jacobi
    /// (`a = [2+u+v], b = [1+u]`) and the differential-flow cases
    Hypergeometric { a: Vec<f64>, b: Vec<f64> },
    QLaguerre { a: f64, lambda: f64 },
    /// covariance-coefficient profile g_M
    CovarianceGm { sigma2: f64, lambda: f64 },
}

pub fn profile_laguerre(gamma_star: f64) -> ClosedProfile {
    ClosedProfile::Hypergeometric {
        a: vec![],
        b: vec![1.0 + gamma_star],
    }
}

pub fn profile_jacobi(u: f64, v: f64) -> ClosedProfile {
    ClosedProfile::Hypergeometric {
        a: vec![2.0 + u + v],
        b: vec![1.0 + u],
    }
}

/// Monotone auxiliary roots, each solved by bisection of its defining
/// equation to residual <= 1e-12.

/// `w/(e^w - 1) = alpha`, `w in (0, inf)`.
pub fn solve_w_stirling(alpha: f64) -> f64 {
    let h = |w: f64| {
        if w < 1e-8 {
            1.0 - w / 2.0
        } else {
            w / w.exp_m1()
        }
    };
    bisect_decreasing(h, alpha, 1e-12, 700.0)
}

/// `(1 - e^{-w})/w = alpha`, `w in (0, inf)`.
pub fn solve_w_touchard(alpha: f64) -> f64 {
    let h = |w: f64| {
        if w < 1e-8 {
            1.0 - w / 2.0
        } else {
            -(-w).exp_m1() / w
        }
    };
    bisect_decreasing(h, alpha, 1e-12, 1e18)
}

/// `e^w/(e^w - 1) - 1/w = alpha`, `w` over all of R (negative below 1/2).
pub fn solve_w_eulerian(alpha: f64) -> f64 {
    // h(w) = 1/(1 - e^{-w}) - 1/w, increasing from 0 to 1
    let h = |w: f64| {
        if w.abs() < 1e-6 {
            0.5 + w / 12.0
        } else {
            1.0 / (-(-w).exp_m1()) - 1.0 / w
        }
    };
    let mut lo = -1e18f64;
    let mut hi = 1e18f64;
    for _ in 0..220 {
        let mid = 0.5 * (lo + hi);
        if h(mid) < alpha {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn bisect_decreasing<F: Fn(f64) -> f64>(h: F, target: f64, _tol: f64, wmax: f64) -> f64 {
    let mut lo = 1e-300f64;
    let mut hi = wmax;
    for _ in 0..220 {
        let mid = 0.5 * (lo + hi);
        if h(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `int_0^u ln|c - x| dx`, closed form, the building block of the
/// hypergeometric profile.
fn log_integral(c: f64, u: f64) -> f64 {
    if u <= 0.0 {
        return 0.0;
    }
    if c <= 0.0 {
        // |c - x| = x + |c|
        let m = -c;
        return (u + m) * (u + m).ln() - if m > 0.0 { m * m.ln() } else { 0.0 } - u;
    }
    // c > 0; valid for u <= c (our parameters have c >= 1 > u, boundary ok)
    let rest = c - u;
    let rest_term = if rest > 0.0 { rest * rest.ln() } else { 0.0 };
    c * c.ln() - rest_term - u
}

fn entropy(alpha: f64) -> f64 {
    let mut acc = 0.0;
    if alpha > 0.0 {
        acc -= alpha * alpha.ln();
    }
    if alpha < 1.0 {
        acc -= (1.0 - alpha) * (1.0 - alpha).ln();
    }
    acc
}

impl ClosedProfile {
    /// Domain `(m_low, m_bar)` of the finite part.
    pub fn domain(&self) -> (f64, f64) {
        match self {
            ClosedProfile::CovarianceGm { lambda, .. } => {
                ((1.0 - 1.0 / lambda).max(0.0), 1.0)
            }
            _ => (0.0, 1.0),
        }
    }

    /// Profile value `g(alpha)`; `-inf` outside the domain.
    pub fn g(&self, alpha: f64) -> f64 {
        let (lo, hi) = self.domain();
        if alpha <= lo || alpha >= hi {
            return f64::NEG_INFINITY;
        }
        match self {
            ClosedProfile::Stirling => {
                let w = solve_w_stirling(alpha);
                -1.0 + alpha + (1.0 - alpha) * alpha.ln() + w + (alpha - 1.0) * w.ln()
            }
            ClosedProfile::Touchard => {
                let w = solve_w_touchard(alpha);
                let f = alpha * w.exp_m1().ln() - w.ln();
                f + alpha - 1.0 - alpha * alpha.ln()
            }
            ClosedProfile::Fubini => {
                // g_F = f(w_T; alpha): the sign that makes the envelope
                // derivative reproduce e^{-g'} = 1/(e^{w_T} - 1)
                let w = solve_w_touchard(alpha);
                alpha * w.exp_m1().ln() - w.ln()
            }
            ClosedProfile::Eulerian => {
                let w = solve_w_eulerian(alpha);
                let ratio = if w.abs() < 1e-6 {
                    // (e^w - 1)/w = 1 + w/2 + w^2/6 + ...
                    (w / 2.0 + w * w / 6.0).ln_1p()
                } else {
                    (w.exp_m1() / w).ln()
                };
                -alpha * w + ratio
            }
            ClosedProfile::Narayana { gamma } => gamma * entropy(alpha),
            ClosedProfile::Hypergeometric { a, b } => {
                let u = 1.0 - alpha;
                let mut acc = entropy(alpha);
                for &bs in b {
                    acc += log_integral(bs, u);
                }
                for &as_ in a {
                    acc -= log_integral(as_, u);
                }
                acc
            }
            ClosedProfile::QLaguerre { a, lambda } => {
                let (a, lam) = (*a, *lambda);
                let f = move |x: f64| {
                    let top = (lam * (1.0 - x)).exp_m1().ln();
                    let b1 = if a > 0.0 {
                        (-(a * (-lam * x).exp())).ln_1p()
                    } else {
                        0.0
                    };
                    let b2 = (-((-lam * x).exp())).ln_1p();
                    top - b1 - b2
                };
                quad::integrate(f, 0.0, alpha, 1e-12).unwrap_or(f64::NAN)
            }
            ClosedProfile::CovarianceGm { sigma2, lambda } => {
                let (s2, lam) = (*sigma2, *lambda);
                let astar = gm_alpha_star(s2, lam);
                let c = (1.0 - astar).ln() / lam - astar.ln() / lam + astar.ln()
                    - astar
                    - 2.0 * (1.0 / lam - 1.0) * s2.sqrt().ln();
                -2.0 * alpha * s2.sqrt().ln()
                    + (-alpha + 1.0 - 1.0 / lam) * (lam * alpha + 1.0 - lam).ln()
                    + alpha
                    + entropy(alpha)
                    + c
            }
        }
    }

    /// `e^{-g'(alpha)}`, the monotone function whose inverse is `t G(t)`.
    pub fn eg(&self, alpha: f64) -> f64 {
        match self {
            ClosedProfile::Stirling => alpha / solve_w_stirling(alpha),
            ClosedProfile::Touchard => {
                let w = solve_w_touchard(alpha);
                1.0 / (w * w.exp())
            }
            ClosedProfile::Fubini => 1.0 / solve_w_touchard(alpha).exp_m1(),
            ClosedProfile::Eulerian => solve_w_eulerian(alpha).exp(),
            ClosedProfile::Narayana { gamma } => (alpha / (1.0 - alpha)).powf(*gamma),
            ClosedProfile::Hypergeometric { a, b } => {
                let mut acc = alpha / (1.0 - alpha);
                for &bs in b {
                    acc *= bs - 1.0 + alpha;
                }
                for &as_ in a {
                    acc /= as_ - 1.0 + alpha;
                }
                acc
            }
            ClosedProfile::QLaguerre { a, lambda } => {
                // (1 - a e^{-la})(1 - e^{-la}) / (e^{l(1-a)} - 1)
                let e = (-lambda * alpha).exp();
                (1.0 - a * e) * (1.0 - e) / (lambda * (1.0 - alpha)).exp_m1()
            }
            ClosedProfile::CovarianceGm { sigma2, lambda } => {
                sigma2 * alpha * (lambda * alpha + 1.0 - lambda) / (1.0 - alpha)
            }
        }
    }
}

/// Unique solution of `sigma^2 lambda t^2 + (sigma^2 (1-lambda) + 1) t - 1 = 0`
/// in `(lambda*, 1)`.
pub fn gm_alpha_star(sigma2: f64, lambda: f64) -> f64 {
    let a = sigma2 * lambda;
    let b = sigma2 * (1.0 - lambda) + 1.0;
    let c = -1.0;
    let disc = (b * b - 4.0 * a * c).sqrt();
    (-b + disc) / (2.0 * a)
}

/// Inversion outcome: a `t` outside the range of `e^{-g'}` is absorbed by an
/// atom of the limit law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Inversion {
    /// `alpha` with `e^{-g'(alpha)} = t` and `G(t) = alpha/t`
    Interior { alpha: f64, g_of_t: f64 },
    /// `t` below the range: mass `m_low` at zero absorbs it (`tG -> m_low`)
    AtomAtZero,
    /// `t` above the range: the mass at the infinite end absorbs it
    AtomAtInfinity,
}

/// Invert the strictly increasing `eg` at `t > 0` by bracketing bisection
/// plus a secant polish; residual `|eg(alpha) - t| <= 1e-12 (1 + t)`.
pub fn invert_profile_to_tg<F: Fn(f64) -> f64>(
    eg: F,
    domain: (f64, f64),
    t: f64,
) -> Result<Inversion> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("inversion needs t > 0, got {t}")));
    }
    let (mlo, mhi) = domain;
    let edge = 1e-6;
    let lo_val = eg(mlo + edge * (mhi - mlo));
    let hi_val = eg(mhi - edge * (mhi - mlo));
    if t <= lo_val {
        return Ok(Inversion::AtomAtZero);
    }
    if t >= hi_val {
        return Ok(Inversion::AtomAtInfinity);
    }
    let mut lo = mlo + edge * (mhi - mlo);
    let mut hi = mhi - edge * (mhi - mlo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if eg(mid) < t {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-16 {
            break;
        }
    }
    let mut alpha = 0.5 * (lo + hi);
    // secant polish
    for _ in 0..4 {
        let f0 = eg(alpha) - t;
        if f0.abs() <= 1e-13 * (1.0 + t) {
            break;
        }
        let h = 1e-9 * (1.0 + alpha);
        let d = (eg(alpha + h) - eg(alpha - h)) / (2.0 * h);
        if d <= 0.0 || !d.is_finite() {
            break;
        }
        let next = alpha - f0 / d;
        if next > mlo && next < mhi {
            alpha = next;
        }
    }
    if (eg(alpha) - t).abs() > 1e-12 * (1.0 + t) {
        return Err(Error::Numerical(format!(
            "profile inversion residual too large at t = {t}"
        )));
    }
    Ok(Inversion::Interior {
        alpha,
        g_of_t: alpha / t,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ProfileDeviation {
    pub n: usize,
    /// sup over `alpha_k` in `[m_low+eps, m_bar-eps]` of `|g_emp - g|`
    pub sup_deviation: f64,
    /// max of the normalized log-coefficients outside `[m_low-eps, m_bar+eps]`
    pub outside_max: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ZeroProfileReport {
    pub eps: f64,
    pub rows: Vec<ProfileDeviation>,
    pub deviations_decreasing: bool,
    /// Thm 2.4(c): when `m_low == m_bar` the sup statement is void
    pub void_window: bool,
}

/// Compare `P_n(1)`-normalized empirical profiles against a closed profile
/// on the interior window `[m_low + eps, m_bar - eps]`.
///
/// The closed profile must be the one for the same normalization: since the
/// empirical side is divided by `P_n(1)`, the closed `g` is recentred by its
/// own maximum `M_g`.
pub fn verify_zero_to_profile(
    seq: &[(usize, ProfileGrid)],
    profile: &ClosedProfile,
    eps: f64,
) -> ZeroProfileReport {
    let (mlo, mhi) = profile.domain();
    if (mhi - mlo).abs() < 1e-12 {
        return ZeroProfileReport {
            eps,
            rows: vec![],
            deviations_decreasing: false,
            void_window: true,
        };
    }
    let mg = profile_max(profile);
    let mut rows = Vec::new();
    for (n, grid) in seq {
        let mut sup = 0.0f64;
        let mut outside = f64::NEG_INFINITY;
        for (&alpha, &val) in grid.alphas.iter().zip(&grid.gvals) {
            if alpha >= mlo + eps && alpha <= mhi - eps {
                let dev = (val - (profile.g(alpha) - mg)).abs();
                if dev.is_finite() {
                    sup = sup.max(dev);
                } else {
                    sup = f64::INFINITY;
                }
            } else if alpha < mlo - eps || alpha > mhi + eps {
                outside = outside.max(val);
            }
        }
        rows.push(ProfileDeviation {
            n: *n,
            sup_deviation: sup,
            outside_max: outside,
        });
    }
    let deviations_decreasing = rows.windows(2).all(|w| w[1].sup_deviation <= w[0].sup_deviation);
    ZeroProfileReport {
        eps,
        rows,
        deviations_decreasing,
        void_window: false,
    }
}

/// `M_g = sup g` by golden-section on the concave profile.
pub fn profile_max(profile: &ClosedProfile) -> f64 {
    let (mlo, mhi) = profile.domain();
    let (mut a, mut b) = (mlo + 1e-9, mhi - 1e-9);
    let phi = (5.0f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let c = b - phi * (b - a);
        let d = a + phi * (b - a);
        if profile.g(c) < profile.g(d) {
            a = c;
        } else {
            b = d;
        }
    }
    profile.g(0.5 * (a + b))
}

#[derive(Debug, Clone, Serialize)]
pub struct LegendreCheck {
    pub alpha: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
}

/// Check the Legendre-transform link `g(alpha) = M_g + inf_u (Psi(e^u) - alpha u)`
/// between a closed profile and its matched law (golden-section on the
/// convex objective).
pub fn legendre_check(
    profile: &ClosedProfile,
    law: &crate::limitlaws::LimitLaw,
    alpha: f64,
) -> Result<LegendreCheck> {
    let mg = profile_max(profile);
    let obj = |u: f64| -> Result<f64> {
        Ok(law.normalized_log_potential(u.exp())? - alpha * u)
    };
    let (mut a, mut b) = (-25.0f64, 25.0f64);
    let phi = (5.0f64.sqrt() - 1.0) / 2.0;
    for _ in 0..120 {
        let c = b - phi * (b - a);
        let d = a + phi * (b - a);
        if obj(c)? > obj(d)? {
            a = c;
        } else {
            b = d;
        }
    }
    let u = 0.5 * (a + b);
    let inf_val = obj(u)?;
    if (u - (-25.0)).abs() < 1e-3 || (u - 25.0).abs() < 1e-3 {
        return Err(Error::Numerical(
            "legendre objective appears unbounded below on the search window".into(),
        ));
    }
    let lhs = profile.g(alpha) - mg;
    Ok(LegendreCheck {
        alpha,
        lhs,
        rhs: inf_val,
        abs_err: (lhs - inf_val).abs(),
    })
}

/// CSV report rows `n, alpha, g_emp, g_closed, deviation`.
pub fn write_profile_csv<W: std::io::Write>(
    w: &mut W,
    n: usize,
    grid: &ProfileGrid,
    profile: &ClosedProfile,
    normalized: bool,
) -> Result<()> {
    let mg = if normalized { profile_max(profile) } else { 0.0 };
    writeln!(w, "n,alpha,g_emp,g_closed,deviation")?;
    for (&alpha, &val) in grid.alphas.iter().zip(&grid.gvals) {
        let closed = profile.g(alpha) - mg;
        let dev = (val - closed).abs();
        writeln!(w, "{n},{alpha},{val},{closed},{dev}")?;
    }
    Ok(())
}

/// Scale an exact polynomial into its profile normalization `b_n P(a_n x)`
/// with rational factors.
pub fn rescale_for_profile(p: &ExactPolynomial, arg: &Rat, coeff: &Rat) -> ExactPolynomial {
    p.scale_argument(arg).scale_coeffs(coeff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{pow_rat, rat, rat_int};
    use crate::families;
    use crate::limitlaws::{self, LimitLaw};
    use num_complex::Complex64;

    fn stirling_scaled(n: usize) -> ExactPolynomial {
        // S_n(n x)/n^n
        let p = families::stirling1_poly(n);
        rescale_for_profile(
            &p,
            &rat_int(n as i64),
            &(rat_int(1) / pow_rat(&rat_int(n as i64), n)),
        )
    }

    #[test]
    fn aux_root_residuals() {
        for i in 1..40 {
            let alpha = i as f64 / 40.0;
            let ws = solve_w_stirling(alpha);
            assert!((ws / ws.exp_m1() - alpha).abs() <= 1e-12, "w_S at {alpha}");
            let wt = solve_w_touchard(alpha);
            assert!(((-(-wt).exp_m1()) / wt - alpha).abs() <= 1e-12, "w_T at {alpha}");
            let we = solve_w_eulerian(alpha);
            let h = 1.0 / (-(-we).exp_m1()) - 1.0 / we;
            assert!((h - alpha).abs() <= 1e-10, "w_E at {alpha}: {h}");
        }
    }

    #[test]
    fn binomial_profile_matches_entropy() {
        // (x+1)^n: empirical profile at 1/2 vs the Stirling-approximated
        // oracle of ln C(n, n/2)/n, and the entropy limit ln 2
        let n = 200usize;
        let p = families::binomial_power_poly_unchecked(n, 1);
        let grid = empirical_profile_exact(&p, Normalize::None).unwrap();
        let g_half = grid.gvals[n / 2];
        let m = n as f64 / 2.0;
        let stirling_oracle =
            (n as f64 * 2.0f64.ln() * (m / m) + 0.5 * (2.0 / (std::f64::consts::PI * n as f64)).ln())
                / n as f64;
        assert!((g_half - stirling_oracle).abs() < 1e-3);
        assert!((g_half - 2.0f64.ln()).abs() < 0.02);
        assert!(grid.is_concave(1e-12));
        assert!(grid.implied_eg_increasing(1e-9));
    }

    #[test]
    fn monomial_profile_all_neg_inf() {
        let p = ExactPolynomial::from_i64(&[0, 0, 0, 1]);
        let grid = empirical_profile_exact(&p, Normalize::None).unwrap();
        assert!(grid.gvals[..3].iter().all(|v| *v == f64::NEG_INFINITY));
        assert_eq!(grid.gvals[3], 0.0);
    }

    #[test]
    fn negative_coefficient_rejected() {
        let p = ExactPolynomial::from_i64(&[1, -1, 1]);
        match empirical_profile_exact(&p, Normalize::None) {
            Err(Error::NegativeCoefficient { index }) => assert_eq!(index, 1),
            other => panic!("expected NegativeCoefficient, got {other:?}"),
        }
    }

    #[test]
    fn laguerre_empirical_vs_closed() {
        // gamma_n = n (gamma* = 1) via the hypergeometric normalization
        let n = 300usize;
        let p = families::hypergeometric_poly(n, &[], &[rat_int(2)]).unwrap();
        let grid = empirical_profile_exact(&p, Normalize::None).unwrap();
        let closed = profile_laguerre(1.0);
        let idx = n / 2;
        assert!((grid.gvals[idx] - closed.g(0.5)).abs() < 0.02);
    }

    #[test]
    fn closed_profile_trivia() {
        let nar = ClosedProfile::Narayana { gamma: 2.0 };
        assert!((nar.eg(0.5) - 1.0).abs() < 1e-15);
        // g_M with sigma^2 = 1, lambda = 1: e^{-g'} = alpha^2/(1-alpha)
        let gm = ClosedProfile::CovarianceGm {
            sigma2: 1.0,
            lambda: 1.0,
        };
        for alpha in [0.2, 0.5, 0.8] {
            assert!((gm.eg(alpha) - alpha * alpha / (1.0 - alpha)).abs() < 1e-14);
        }
    }

    #[test]
    fn gm_matches_normalized_laguerre_profile() {
        // sigma^2 = 1, lambda = 1 coincides with the Laguerre gamma* = 0
        // profile after centering by M_g
        let gm = ClosedProfile::CovarianceGm {
            sigma2: 1.0,
            lambda: 1.0,
        };
        let lag = profile_laguerre(0.0);
        let mg = profile_max(&lag);
        for i in 1..20 {
            let alpha = i as f64 / 20.0;
            assert!(
                (gm.g(alpha) - (lag.g(alpha) - mg)).abs() < 1e-10,
                "alpha={alpha}: {} vs {}",
                gm.g(alpha),
                lag.g(alpha) - mg
            );
        }
        // and sup g_M = 0
        assert!(profile_max(&gm).abs() < 1e-10);
    }

    #[test]
    fn inversion_algebraic_case() {
        // eg = alpha/(1-alpha): t = 1 -> alpha = 1/2
        let eg = |a: f64| a / (1.0 - a);
        match invert_profile_to_tg(eg, (0.0, 1.0), 1.0).unwrap() {
            Inversion::Interior { alpha, .. } => assert!((alpha - 0.5).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn inversion_touchard_vs_closed_transform() {
        let prof = ClosedProfile::Touchard;
        let t = 10.0;
        match invert_profile_to_tg(|a| prof.eg(a), prof.domain(), t).unwrap() {
            Inversion::Interior { g_of_t, .. } => {
                let w = crate::specialfn::lambert_w0(1.0 / t).unwrap();
                let target = w.exp() - 1.0;
                assert!((g_of_t - target).abs() < 1e-9, "{g_of_t} vs {target}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn inversion_mp_sign_convention() {
        // Laguerre gamma* = 0 profile: alpha/t at t=5 matches -G_MP(-5)
        let prof = profile_laguerre(0.0);
        let law = limitlaws::law_mp(1.0, 1.0).unwrap();
        match invert_profile_to_tg(|a| prof.eg(a), prof.domain(), 5.0).unwrap() {
            Inversion::Interior { g_of_t, .. } => {
                let target = -law.cauchy(Complex64::new(-5.0, 0.0)).unwrap().re;
                assert!((g_of_t - target).abs() < 1e-9, "{g_of_t} vs {target}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    /// Table rows: closed profile paired with `alpha(t) = t * G_row(t)` from
    /// the matched law, with the sign/shift conventions of each row.
    fn table_rows() -> Vec<(&'static str, ClosedProfile, Box<dyn Fn(f64) -> f64>)> {
        let mk_neg = |law: LimitLaw| {
            Box::new(move |t: f64| -t * law.cauchy(Complex64::new(-t, 0.0)).unwrap().re)
                as Box<dyn Fn(f64) -> f64>
        };
        let mut rows: Vec<(&str, ClosedProfile, Box<dyn Fn(f64) -> f64>)> = Vec::new();
        let uni = limitlaws::law_uniform_stirling();
        rows.push((
            "stirling",
            ClosedProfile::Stirling,
            Box::new(move |t| t * uni.cauchy(Complex64::new(t, 0.0)).unwrap().re),
        ));
        let tou = limitlaws::law_touchard();
        rows.push((
            "touchard",
            ClosedProfile::Touchard,
            Box::new(move |t| t * tou.cauchy(Complex64::new(t, 0.0)).unwrap().re),
        ));
        let fub = limitlaws::law_fubini();
        rows.push((
            "fubini",
            ClosedProfile::Fubini,
            Box::new(move |t| t * fub.cauchy(Complex64::new(t, 0.0)).unwrap().re),
        ));
        let eul = limitlaws::law_eulerian();
        rows.push((
            "eulerian",
            ClosedProfile::Eulerian,
            Box::new(move |t| t * eul.cauchy(Complex64::new(t, 0.0)).unwrap().re),
        ));
        for gamma in [2.0, 3.0] {
            let nar = limitlaws::law_narayana(gamma).unwrap();
            rows.push((
                "narayana",
                ClosedProfile::Narayana { gamma },
                Box::new(move |t| t * nar.cauchy(Complex64::new(t, 0.0)).unwrap().re),
            ));
        }
        for gs in [0.0, 1.0, 5.0] {
            let mp = limitlaws::law_mp(gs + 1.0, 1.0 / (gs + 1.0)).unwrap();
            rows.push(("laguerre", profile_laguerre(gs), mk_neg(mp)));
        }
        // Hermite row shares the Laguerre gamma*=0 profile alpha^2/(1-alpha)
        let mp11 = limitlaws::law_mp(1.0, 1.0).unwrap();
        rows.push(("hermite", profile_laguerre(0.0), mk_neg(mp11)));
        // Legendre / Gegenbauer: alpha = 2 t G_J(2t + 1)
        for (name, u, v) in [
            ("legendre", 0.0, 0.0),
            ("gegenbauer", 0.5, 0.5),
            ("gegenbauer", 4.5, 4.5),
            ("jacobi", 1.0, 0.25),
        ] {
            let law = limitlaws::law_jacobi(u, v).unwrap();
            rows.push((
                name,
                profile_jacobi(u, v),
                Box::new(move |t| {
                    2.0 * t * law.cauchy(Complex64::new(2.0 * t + 1.0, 0.0)).unwrap().re
                }),
            ));
        }
        for (a, lam) in [(1.0, 2.0), (1.0 / 3.0, 0.25), (1.0, std::f64::consts::LN_2)] {
            let law = limitlaws::law_q_laguerre(a, lam).unwrap();
            rows.push((
                "q_laguerre",
                ClosedProfile::QLaguerre { a, lambda: lam },
                mk_neg(law),
            ));
        }
        rows
    }

    #[test]
    fn profile_law_consistency_all_rows() {
        for (name, prof, tg) in table_rows() {
            for i in 1..=10 {
                let t = 0.3 * i as f64;
                match invert_profile_to_tg(|a| prof.eg(a), prof.domain(), t) {
                    Ok(Inversion::Interior { alpha, .. }) => {
                        let target = tg(t);
                        assert!(
                            (alpha - target).abs() < 1e-8,
                            "{name} at t={t}: alpha={alpha} tG={target}"
                        );
                    }
                    Ok(_) => {} // t outside the eg range: nothing to compare
                    Err(e) => panic!("{name} at t={t}: {e}"),
                }
            }
        }
    }

    #[test]
    fn roundtrip_and_monotonicity() {
        for (name, prof, _) in table_rows() {
            let (lo, hi) = prof.domain();
            let mut prev = 0.0;
            for i in 1..20 {
                let alpha = lo + (hi - lo) * i as f64 / 20.0;
                let t = prof.eg(alpha);
                assert!(t > prev, "{name}: eg not increasing at {alpha}");
                prev = t;
                match invert_profile_to_tg(|a| prof.eg(a), prof.domain(), t) {
                    Ok(Inversion::Interior { alpha: back, .. }) => {
                        assert!((back - alpha).abs() < 1e-10, "{name} roundtrip at {alpha}");
                    }
                    other => panic!("{name}: {other:?}"),
                }
            }
        }
    }

    #[test]
    fn gm_lambda2_atom_detection() {
        // lambda = 2 -> lambda* = 1/2; small t is absorbed by the atom at 0
        let gm = ClosedProfile::CovarianceGm {
            sigma2: 1.0,
            lambda: 2.0,
        };
        assert_eq!(gm.domain().0, 0.5);
        match invert_profile_to_tg(|a| gm.eg(a), gm.domain(), 1e-9).unwrap() {
            Inversion::AtomAtZero => {}
            other => panic!("expected atom absorption, got {other:?}"),
        }
    }

    #[test]
    fn zero_profile_harness_on_stirling() {
        let closed = ClosedProfile::Stirling;
        let mut seq = Vec::new();
        for n in [50usize, 100, 200] {
            let p = stirling_scaled(n);
            let grid = empirical_profile_exact(&p, Normalize::ByP1).unwrap();
            seq.push((n, grid));
        }
        let report = verify_zero_to_profile(&seq, &closed, 0.05);
        assert!(!report.void_window);
        assert!(report.rows[2].sup_deviation < report.rows[0].sup_deviation);
        assert!(report.rows[2].sup_deviation < 0.05);
    }

    #[test]
    fn legendre_check_examples() {
        let fub = limitlaws::law_fubini();
        let chk = legendre_check(&ClosedProfile::Fubini, &fub, 0.5).unwrap();
        assert!(chk.abs_err < 1e-6, "fubini: {chk:?}");
        let uni = limitlaws::law_uniform_stirling();
        let chk = legendre_check(&ClosedProfile::Stirling, &uni, 0.3).unwrap();
        assert!(chk.abs_err < 1e-6, "stirling: {chk:?}");
    }
}
