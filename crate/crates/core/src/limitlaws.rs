//! One evaluable law object per limiting zero distribution: Cauchy
//! transform, density, CDF, moments, logarithmic potentials, support and
//! atom masses.
//!
//! Branch handling is centralized in [`sqrt_branch`]: the analytic branch of
//! `sqrt((t - lo)(t - hi))` off the cut `[lo, hi]` that behaves like `t` at
//! infinity. Every Marchenko–Pastur / Jacobi / q-Laguerre transform routes
//! through it, in rationalized forms free of removable-singularity
//! cancellation (e.g. `G_MP = 2/(t - sigma^2(1-lambda) + s(t))`).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact::{rat_int, Rat};
use crate::hp;
use crate::quadrature as quad;
use crate::specialfn;

const PI: f64 = std::f64::consts::PI;
const E: f64 = std::f64::consts::E;

/// Branch of `sqrt((t - lo)(t - hi))`, analytic off `[lo, hi]`, `~ t` as
/// `|t| -> inf`. Product of principal square roots of the two factors.
pub fn sqrt_branch(t: Complex64, lo: f64, hi: f64) -> Complex64 {
    (t - lo).sqrt() * (t - hi).sqrt()
}

/// A logarithmic potential value; the Eulerian law has `U = +inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Potential {
    Finite(f64),
    Infinite,
}

impl Potential {
    pub fn unwrap_finite(self) -> f64 {
        match self {
            Potential::Finite(v) => v,
            Potential::Infinite => panic!("potential is infinite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LawKind {
    UniformStirling,
    Touchard,
    Fubini,
    Eulerian,
    /// real gamma >= 2
    Narayana { gamma: f64 },
    MarchenkoPastur { sigma2: f64, lambda: f64 },
    Semicircle,
    Arcsine,
    /// u, v >= 0 limit ratios of the parameter sequences
    Jacobi { u: f64, v: f64 },
    /// a in (0, 1], lambda > 0
    QLaguerre { a: f64, lambda: f64 },
}

#[derive(Debug, Clone)]
pub struct LimitLaw {
    pub kind: LawKind,
    /// closed support of the absolutely continuous part
    pub support: (f64, f64),
    pub atom_at_zero: f64,
    /// mass `1 - m_bar` at the infinite end
    pub atom_at_infinity: f64,
}

pub fn law_uniform_stirling() -> LimitLaw {
    LimitLaw {
        kind: LawKind::UniformStirling,
        support: (-1.0, 0.0),
        atom_at_zero: 0.0,
        atom_at_infinity: 0.0,
    }
}

pub fn law_touchard() -> LimitLaw {
    LimitLaw {
        kind: LawKind::Touchard,
        support: (-E, 0.0),
        atom_at_zero: 0.0,
        atom_at_infinity: 0.0,
    }
}

pub fn law_fubini() -> LimitLaw {
    LimitLaw {
        kind: LawKind::Fubini,
        support: (-1.0, 0.0),
        atom_at_zero: 0.0,
        atom_at_infinity: 0.0,
    }
}

pub fn law_eulerian() -> LimitLaw {
    LimitLaw {
        kind: LawKind::Eulerian,
        support: (f64::NEG_INFINITY, 0.0),
        atom_at_zero: 0.0,
        atom_at_infinity: 0.0,
    }
}

pub fn law_narayana(gamma: f64) -> Result<LimitLaw> {
    if !(gamma >= 2.0) {
        return Err(Error::Domain(format!(
            "narayana law requires gamma >= 2 (proven real-rootedness range), got {gamma}"
        )));
    }
    Ok(LimitLaw {
        kind: LawKind::Narayana { gamma },
        support: (f64::NEG_INFINITY, 0.0),
        atom_at_zero: 0.0,
        atom_at_infinity: 0.0,
    })
}

pub fn law_mp(sigma2: f64, lambda: f64) -> Result<LimitLaw> {
    if !(sigma2 > 0.0) || !(lambda > 0.0) {
        return Err(Error::Domain(format!(
            "Marchenko-Pastur requires sigma^2 > 0 and lambda > 0, got ({sigma2}, {lambda})"
        )));
    }
    let (lo, hi) = mp_edges(sigma2, lambda);
    Ok(LimitLaw {
        kind: LawKind::MarchenkoPastur { sigma2, lambda },
        support: (lo, hi),
        atom_at_zero: (1.0 - 1.0 / lambda).max(0.0),
        atom_at_infinity: 0.0,
    })
}

pub fn mp_edges(sigma2: f64, lambda: f64) -> (f64, f64) {
    let r = lambda.sqrt();
    (sigma2 * (1.0 - r) * (1.0 - r), sigma2 * (1.0 + r) * (1.0 + r))
}

pub fn law_semicircle() -> LimitLaw {
    LimitLaw {
        kind: LawKind::Semicircle,
        support: (-2.0, 2.0),
        atom_at_zero: 0.0,
        atom_at_infinity: 0.0,
    }
}

pub fn law_arcsine() -> LimitLaw {
    LimitLaw {
        kind: LawKind::Arcsine,
        support: (-1.0, 1.0),
        atom_at_zero: 0.0,
        atom_at_infinity: 0.0,
    }
}

pub fn law_jacobi(u: f64, v: f64) -> Result<LimitLaw> {
    if !(u >= 0.0) || !(v >= 0.0) {
        return Err(Error::Domain(format!(
            "jacobi law requires u, v >= 0 (parameter-sequence ratios), got ({u}, {v})"
        )));
    }
    let (lo, hi) = jacobi_edges(u, v);
    Ok(LimitLaw {
        kind: LawKind::Jacobi { u, v },
        support: (lo, hi),
        atom_at_zero: 0.0,
        atom_at_infinity: 0.0,
    })
}

pub fn law_gegenbauer(gamma: f64) -> Result<LimitLaw> {
    if !(gamma >= 0.5) {
        return Err(Error::Domain(format!(
            "gegenbauer law requires gamma >= 1/2, got {gamma}"
        )));
    }
    law_jacobi(gamma - 0.5, gamma - 0.5)
}

/// Support of the Jacobi limit law: roots of
/// `(t(u+v)+(u-v))^2 + 4(1+u+v)(t^2-1)`.
pub fn jacobi_edges(u: f64, v: f64) -> (f64, f64) {
    let s = u + v;
    let d = u - v;
    let a = s * s + 4.0 * (1.0 + s);
    let b = 2.0 * s * d;
    let disc = 64.0 * (1.0 + s) * (1.0 + u) * (1.0 + v);
    let r = disc.sqrt();
    ((-b - r) / (2.0 * a), (-b + r) / (2.0 * a))
}

pub fn law_q_laguerre(a: f64, lambda: f64) -> Result<LimitLaw> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::Domain(format!(
            "q-laguerre law requires 0 < a <= 1 (coefficient nonnegativity), got a={a}"
        )));
    }
    if !(lambda > 0.0) {
        return Err(Error::Domain(format!(
            "q-laguerre law requires lambda > 0, got {lambda}"
        )));
    }
    let (lo, hi) = q_laguerre_edges(a, lambda);
    let upper = if lambda > (1.0 + a).ln() { 1.0 } else { hi };
    Ok(LimitLaw {
        kind: LawKind::QLaguerre { a, lambda },
        support: (lo, upper),
        atom_at_zero: 0.0,
        atom_at_infinity: 0.0,
    })
}

/// `t_pm = e^{-lambda} (sqrt(1 - a e^{-lambda}) pm sqrt(a(1 - e^{-lambda})))^2`
pub fn q_laguerre_edges(a: f64, lambda: f64) -> (f64, f64) {
    let q = (-lambda).exp();
    let p = (1.0 - a * q).sqrt();
    let m = (a * (1.0 - q)).sqrt();
    (q * (p - m) * (p - m), q * (p + m) * (p + m))
}

impl LimitLaw {
    pub fn m_bar(&self) -> f64 {
        1.0 - self.atom_at_infinity
    }

    pub fn m_low(&self) -> f64 {
        self.atom_at_zero
    }

    fn on_support(&self, t: Complex64) -> bool {
        t.im == 0.0 && t.re >= self.support.0 - 1e-300 && t.re <= self.support.1 + 1e-300
    }

    /// Cauchy transform `G(t)`, closed form per family, for `t` off the
    /// closed support.
    pub fn cauchy(&self, t: Complex64) -> Result<Complex64> {
        if self.on_support(t) {
            return Err(Error::OnSupport(format!(
                "t = {t} lies on the support; the boundary value is the density up to -pi Im"
            )));
        }
        Ok(self.cauchy_unchecked(t))
    }

    /// Same formulas without the support gate; used by Perron-inversion
    /// consistency tests that evaluate at `x + i eps`.
    pub fn cauchy_unchecked(&self, t: Complex64) -> Complex64 {
        match self.kind {
            LawKind::UniformStirling => ((t + 1.0) / t).ln(),
            LawKind::Touchard => {
                let w = specialfn::lambert_w0_complex(1.0 / t)
                    .expect("1/t off the W branch cut for t off support");
                w.exp() - 1.0
            }
            LawKind::Fubini => {
                let l = (1.0 + 1.0 / t).ln();
                1.0 / (t * (t + 1.0) * l)
            }
            LawKind::Eulerian => {
                // removable singularity at t = 1
                if (t - 1.0).norm() < 1e-5 {
                    let s = t - 1.0;
                    // 1/(t-1) - 1/(t log t) = 1/2 + s/12 - s^2/24 + ...
                    0.5 + s / 12.0 - s * s / 24.0
                } else {
                    1.0 / (t - 1.0) - 1.0 / (t * t.ln())
                }
            }
            LawKind::Narayana { gamma } => {
                let p = t.powf(-1.0 / gamma);
                1.0 / (t * (p + 1.0))
            }
            LawKind::MarchenkoPastur { sigma2, lambda } => {
                let (lo, hi) = mp_edges(sigma2, lambda);
                let s = sqrt_branch(t, lo, hi);
                2.0 / (t - sigma2 * (1.0 - lambda) + s)
            }
            LawKind::Semicircle => {
                let s = sqrt_branch(t, -2.0, 2.0);
                2.0 / (t + s)
            }
            LawKind::Arcsine => 1.0 / sqrt_branch(t, -1.0, 1.0),
            LawKind::Jacobi { u, v } => {
                let (lo, hi) = jacobi_edges(u, v);
                let a = (u + v) * (u + v) + 4.0 * (1.0 + u + v);
                let big_s = a.sqrt() * sqrt_branch(t, lo, hi);
                let n = t * (u + v) + (u - v);
                2.0 * (1.0 + u + v) / (big_s + n)
            }
            LawKind::QLaguerre { a, lambda } => {
                let (lo, hi) = q_laguerre_edges(a, lambda);
                let el = lambda.exp();
                let s = el * sqrt_branch(t, lo, hi);
                let arg = (a + 1.0 - el * t + s) / (2.0 * a);
                -arg.ln() / (lambda * t)
            }
        }
    }

    /// Lebesgue density of the absolutely continuous part.
    pub fn density(&self, x: f64) -> f64 {
        let (lo, hi) = self.support;
        if x < lo || x > hi {
            return 0.0;
        }
        match self.kind {
            LawKind::UniformStirling => 1.0,
            LawKind::Touchard => {
                if x >= 0.0 || x <= -E {
                    return 0.0;
                }
                // p = Im e^{W_0(1/x + i0)} / pi with e^w = (1/x)/w, so
                // p = v / (pi |x| |w|^2); no exponential, stable to x -> 0
                let w = specialfn::lambert_w0_cut_ln(-x.abs().ln());
                (w.im / (PI * x.abs() * w.norm_sqr())).max(0.0)
            }
            LawKind::Fubini => {
                if x >= 0.0 || x <= -1.0 {
                    return 0.0;
                }
                let l = (1.0 + 1.0 / x).abs().ln();
                -1.0 / (x * (x + 1.0) * (PI * PI + l * l))
            }
            LawKind::Eulerian => {
                if x >= 0.0 {
                    return 0.0;
                }
                let l = x.abs().ln();
                1.0 / (x.abs() * (PI * PI + l * l))
            }
            LawKind::Narayana { gamma } => {
                if x >= 0.0 {
                    return 0.0;
                }
                let y = x.abs().powf(1.0 / gamma);
                (PI / gamma).sin() / (PI * x.abs() * (1.0 / y + 2.0 * (PI / gamma).cos() + y))
            }
            LawKind::MarchenkoPastur { sigma2, lambda } => {
                let d = (hi - x) * (x - lo);
                if d <= 0.0 || x == 0.0 {
                    return 0.0;
                }
                d.sqrt() / (2.0 * PI * sigma2 * lambda * x)
            }
            LawKind::Semicircle => {
                let d = 4.0 - x * x;
                if d <= 0.0 {
                    0.0
                } else {
                    d.sqrt() / (2.0 * PI)
                }
            }
            LawKind::Arcsine => {
                let d = 1.0 - x * x;
                if d <= 0.0 {
                    0.0
                } else {
                    1.0 / (PI * d.sqrt())
                }
            }
            LawKind::Jacobi { u, v } => {
                // -D(x) = -((x(u+v)+(u-v))^2 + 4(1+u+v)(x^2-1)) >= 0 inside
                let n = x * (u + v) + (u - v);
                let d = -(n * n + 4.0 * (1.0 + u + v) * (x * x - 1.0));
                if d <= 0.0 {
                    0.0
                } else {
                    d.sqrt() / (2.0 * PI * (1.0 - x * x))
                }
            }
            LawKind::QLaguerre { a, lambda } => {
                let (tlo, thi) = q_laguerre_edges(a, lambda);
                let el = lambda.exp();
                if x >= tlo && x <= thi {
                    if x == 0.0 {
                        return 0.0;
                    }
                    let d = (x - tlo) * (thi - x);
                    if d < 0.0 {
                        return 0.0;
                    }
                    let re = a + 1.0 - el * x;
                    let im = el * d.sqrt();
                    im.atan2(re) / (lambda * PI * x)
                } else if lambda > (1.0 + a).ln() && x > thi && x <= 1.0 {
                    // logarithm crossing its branch cut contributes Im = pi
                    1.0 / (lambda * x)
                } else {
                    0.0
                }
            }
        }
    }

    /// `p(-e^u) e^u` for the laws with logarithmic concentration near 0
    /// and/or heavy tails, computed stably from `u = ln(-x)` (so that deep
    /// tails never form an underflowing `x`).
    fn density_log_space(&self, u: f64) -> f64 {
        match self.kind {
            LawKind::Touchard => {
                if u >= 1.0 {
                    return 0.0;
                }
                let w = specialfn::lambert_w0_cut_ln(-u);
                (w.im / (PI * w.norm_sqr())).max(0.0)
            }
            LawKind::Fubini => {
                // x = -e^u, u <= 0: p(x) |x| = 1/((1-e^u)(pi^2 + (ln1p(-e^u) - u)^2))
                if u >= 0.0 {
                    return 0.0;
                }
                let eu = u.exp();
                let l = (-eu).ln_1p() - u;
                1.0 / ((1.0 - eu) * (PI * PI + l * l))
            }
            LawKind::Eulerian => 1.0 / (PI * PI + u * u),
            LawKind::Narayana { gamma } => {
                let c = (PI / gamma).cos();
                (PI / gamma).sin() / (PI * ((-u / gamma).exp() + 2.0 * c + (u / gamma).exp()))
            }
            _ => unreachable!("density_log_space is only wired for log-substituted laws"),
        }
    }

    /// Integral of `g(x) * density(x)` over `support ∩ [a, b]` with
    /// law-appropriate endpoint substitutions.
    pub fn integrate_against<G: Fn(f64) -> f64 + Copy>(
        &self,
        g: G,
        a: f64,
        b: f64,
        tol: f64,
    ) -> Result<f64> {
        let (lo, hi) = self.support;
        let a = a.max(lo);
        let b = b.min(hi);
        if b <= a {
            return Ok(0.0);
        }
        let f = |x: f64| g(x) * self.density(x);
        // g evaluated at -e^u, guarding the underflow-to-zero deep tail
        let gu = move |u: f64| {
            let x = -u.exp();
            if x == 0.0 {
                g(-f64::MIN_POSITIVE)
            } else {
                g(x)
            }
        };
        match self.kind {
            LawKind::UniformStirling => quad::integrate(f, a, b, tol),
            LawKind::MarchenkoPastur { .. }
            | LawKind::Semicircle
            | LawKind::Arcsine
            | LawKind::Jacobi { .. } => quad::integrate_sqrt_edges(f, lo, hi, a, b, tol),
            LawKind::QLaguerre { a: qa, lambda } => {
                let (tlo, thi) = q_laguerre_edges(qa, lambda);
                let mut acc = 0.0;
                // arc part with sqrt edges
                acc += quad::integrate_sqrt_edges(f, tlo, thi, a, b.min(thi), tol / 2.0)?;
                // plateau part (smooth)
                if b > thi {
                    acc += quad::integrate(f, a.max(thi), b, tol / 2.0)?;
                }
                Ok(acc)
            }
            LawKind::Touchard => {
                // sqrt-type vanishing at -e, log-type concentration at 0:
                // u = ln(-x) near zero, plain sqrt-aware split elsewhere
                let mut acc = 0.0;
                let cut = -1.0f64;
                if a < cut {
                    acc += quad::integrate_sqrt_lo(f, lo, b.min(cut), tol / 2.0)?
                        - quad::integrate_sqrt_lo(f, lo, a, tol / 2.0)?;
                }
                if b > cut {
                    let fu = |u: f64| gu(u) * self.density_log_space(u);
                    let upper = (-a.max(cut)).ln();
                    acc += quad::integrate_to_neg_inf(&fu, upper, tol / 2.0)?;
                    if b < 0.0 {
                        acc -= quad::integrate_to_neg_inf(&fu, (-b).ln(), tol / 2.0)?;
                    }
                }
                Ok(acc)
            }
            LawKind::Fubini => {
                // log-type concentration at both -1 and 0; the left half maps
                // onto the right one through the reflection x -> -1-x
                let mut acc = 0.0;
                let mid = -0.5f64;
                if a < mid {
                    let fv = |v: f64| {
                        let y = -v.exp(); // y = x + 1 reflected: x = -1 - y
                        let x = if y == 0.0 { -1.0 + f64::MIN_POSITIVE } else { -1.0 - y };
                        g(x) * self.density_log_space(v)
                    };
                    let upper = (1.0 + b.min(mid)).ln();
                    acc += quad::integrate_to_neg_inf(&fv, upper, tol / 2.0)?;
                    if a > -1.0 {
                        acc -= quad::integrate_to_neg_inf(&fv, (1.0 + a).ln(), tol / 2.0)?;
                    }
                }
                if b > mid {
                    let fu = |u: f64| gu(u) * self.density_log_space(u);
                    let upper = (-a.max(mid)).ln();
                    acc += quad::integrate_to_neg_inf(&fu, upper, tol / 2.0)?;
                    if b < 0.0 {
                        acc -= quad::integrate_to_neg_inf(&fu, (-b).ln(), tol / 2.0)?;
                    }
                }
                Ok(acc)
            }
            LawKind::Eulerian | LawKind::Narayana { .. } => {
                // full log substitution u = ln(-x)
                let fu = |u: f64| gu(u) * self.density_log_space(u);
                let to_upper = if a <= -1e300 {
                    // both tails: integrate over all of u via two half-lines
                    quad::integrate_to_neg_inf(&fu, 0.0, tol / 4.0)?
                        + quad::integrate_to_neg_inf(|u| fu(-u), 0.0, tol / 4.0)?
                } else {
                    let upper = (-a).ln();
                    if upper <= 0.0 {
                        quad::integrate_to_neg_inf(&fu, upper, tol / 2.0)?
                    } else {
                        quad::integrate_to_neg_inf(&fu, 0.0, tol / 4.0)?
                            + quad::integrate(&fu, 0.0, upper, tol / 4.0)?
                    }
                };
                let below = if b >= 0.0 {
                    0.0
                } else {
                    let lower = (-b).ln();
                    if lower <= 0.0 {
                        quad::integrate_to_neg_inf(&fu, lower, tol / 2.0)?
                    } else {
                        quad::integrate_to_neg_inf(&fu, 0.0, tol / 4.0)?
                            + quad::integrate(&fu, 0.0, lower, tol / 4.0)?
                    }
                };
                Ok(to_upper - below)
            }
        }
    }

    /// Total mass of the density (excluding atoms).
    pub fn density_mass(&self, tol: f64) -> Result<f64> {
        self.integrate_against(|_| 1.0, f64::NEG_INFINITY, f64::INFINITY, tol)
    }

    /// CDF including atoms.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        match self.kind {
            LawKind::Eulerian => {
                // closed arctan antiderivative; heavy tails defeat naive
                // quadrature
                Ok(if x >= 0.0 {
                    1.0
                } else {
                    0.5 - (x.abs().ln() / PI).atan() / PI
                })
            }
            LawKind::Arcsine => Ok(if x <= -1.0 {
                0.0
            } else if x >= 1.0 {
                1.0
            } else {
                0.5 + x.asin() / PI
            }),
            _ => {
                let mut acc = self
                    .integrate_against(|_| 1.0, f64::NEG_INFINITY, x, 1e-10)?;
                if x >= 0.0 {
                    acc += self.atom_at_zero;
                }
                Ok(acc.clamp(0.0, 1.0))
            }
        }
    }

    /// Moments `m_0..=m_kmax`; closed form where available, else quadrature.
    pub fn moments(&self, k_max: usize) -> Result<Vec<f64>> {
        match self.kind {
            LawKind::Eulerian => Err(Error::InfiniteMoment(
                "all power moments of the Eulerian limit law are infinite".into(),
            )),
            LawKind::Narayana { .. } => {
                if k_max >= 1 {
                    Err(Error::InfiniteMoment(
                        "the Narayana limit law has |x|^{-1-1/gamma} tails; k >= 1 moments diverge"
                            .into(),
                    ))
                } else {
                    Ok(vec![1.0])
                }
            }
            LawKind::Touchard => Ok((0..=k_max).map(|k| touchard_moment(k)).collect()),
            LawKind::Fubini => Ok((0..=k_max).map(|k| fubini_moment(k)).collect()),
            _ => {
                let mut out = Vec::with_capacity(k_max + 1);
                for k in 0..=k_max {
                    let mut v = self.integrate_against(
                        |x| x.powi(k as i32),
                        f64::NEG_INFINITY,
                        f64::INFINITY,
                        1e-10,
                    )?;
                    if k == 0 {
                        v += self.atom_at_zero + self.atom_at_infinity;
                    }
                    out.push(v);
                }
                Ok(out)
            }
        }
    }

    /// Plain logarithmic potential `U(t) = ∫ log|t - z| dμ(z)` at real `t`
    /// off the support; closed form where the theory supplies one.
    pub fn log_potential(&self, t: f64) -> Result<Potential> {
        match self.kind {
            LawKind::Eulerian => Ok(Potential::Infinite),
            LawKind::Touchard => {
                let tc = Complex64::new(t, 0.0);
                let w = specialfn::lambert_w0_complex(1.0 / tc).map_err(|_| {
                    Error::OnSupport(format!("t = {t} on the Touchard support"))
                })?;
                Ok(Potential::Finite(
                    (1.0 / w + w - tc - 1.0 + tc.ln()).re,
                ))
            }
            LawKind::Fubini => {
                let l = (1.0 + 1.0 / t).abs().ln();
                Ok(Potential::Finite(-(l.abs().ln())))
            }
            LawKind::Narayana { gamma } => {
                if t <= 0.0 {
                    return Err(Error::OnSupport(format!("t = {t} on the Narayana support")));
                }
                Ok(Potential::Finite(
                    gamma * (1.0 + t.powf(1.0 / gamma)).abs().ln(),
                ))
            }
            LawKind::MarchenkoPastur { sigma2, lambda } => {
                let g = self.cauchy(Complex64::new(t, 0.0))?.re;
                Ok(Potential::Finite(
                    t * g - g.abs().ln() + (1.0 - sigma2 * lambda * g).abs().ln() / lambda - 1.0,
                ))
            }
            LawKind::Semicircle => {
                let tc = Complex64::new(t, 0.0);
                let s = sqrt_branch(tc, -2.0, 2.0);
                let val = 0.25 * (tc * tc - tc * s).re + ((tc + s) / 2.0).norm().ln() - 0.5;
                Ok(Potential::Finite(val))
            }
            _ => {
                // quadrature of log|t - x| against the density
                let v = self.integrate_against(
                    |x| (t - x).abs().ln(),
                    f64::NEG_INFINITY,
                    f64::INFINITY,
                    1e-10,
                )?;
                let atom = if self.atom_at_zero > 0.0 {
                    self.atom_at_zero * t.abs().ln()
                } else {
                    0.0
                };
                Ok(Potential::Finite(v + atom))
            }
        }
    }

    /// Normalized potential `Psi(t) = ∫ log|(t-z)/(1-z)| dμ(z)`; finite for
    /// every law here (including Eulerian, closed form).
    pub fn normalized_log_potential(&self, t: f64) -> Result<f64> {
        match self.kind {
            LawKind::Eulerian => {
                if t <= 0.0 {
                    return Err(Error::OnSupport(format!("t = {t} on the Eulerian support")));
                }
                if (t - 1.0).abs() < 1e-8 {
                    // (t-1)/ln t = 1 + (t-1)/2 + O((t-1)^2)
                    return Ok((0.5 * (t - 1.0)).ln_1p());
                }
                Ok(((t - 1.0) / t.ln()).abs().ln())
            }
            _ => {
                let one_off = 1.0 < self.support.0 || 1.0 > self.support.1;
                if one_off {
                    if let (Ok(Potential::Finite(u_t)), Ok(Potential::Finite(u_1))) =
                        (self.log_potential(t), self.log_potential(1.0))
                    {
                        return Ok(u_t - u_1);
                    }
                }
                // the integrand has an integrable log singularity at z = 1
                // when 1 sits inside the support; split there and clamp the
                // log argument (quadrature nodes can round onto z = 1)
                let g = |x: f64| {
                    let num = (t - x).abs().max(1e-300);
                    let den = (1.0 - x).abs().max(1e-300);
                    (num / den).ln()
                };
                let v = if 1.0 > self.support.0 && 1.0 < self.support.1 {
                    self.integrate_against(g, f64::NEG_INFINITY, 1.0, 1e-10)?
                        + self.integrate_against(g, 1.0, f64::INFINITY, 1e-10)?
                } else {
                    self.integrate_against(g, f64::NEG_INFINITY, f64::INFINITY, 1e-10)?
                };
                let atom = self.atom_at_zero * t.abs().ln();
                Ok(v + atom)
            }
        }
    }

    /// Tabulate `x, density, cdf` rows as CSV.
    pub fn tabulate_density_cdf<W: std::io::Write>(
        &self,
        grid: &[f64],
        w: &mut W,
    ) -> Result<()> {
        writeln!(w, "x,density,cdf")?;
        for &x in grid {
            writeln!(w, "{},{},{}", x, self.density(x), self.cdf(x)?)?;
        }
        Ok(())
    }

    /// Tabulate `t, re_g, im_g` rows as CSV, evaluating at `t + i eps`.
    pub fn tabulate_transform<W: std::io::Write>(
        &self,
        grid: &[f64],
        eps: f64,
        w: &mut W,
    ) -> Result<()> {
        writeln!(w, "t,re_g,im_g")?;
        for &t in grid {
            let g = self.cauchy_unchecked(Complex64::new(t, eps));
            writeln!(w, "{},{},{}", t, g.re, g.im)?;
        }
        Ok(())
    }
}

/// `(-k)^k/(k+1)!` in f64.
pub fn touchard_moment(k: usize) -> f64 {
    let num = exact::pow_rat(&rat_int(-(k as i64)), k);
    let den = Rat::from_integer(crate::exact::factorial(k + 1));
    hp::rat_to_f64(&(num / den))
}

use crate::exact;

/// Exact Cauchy number `C_k = ∫_0^1 x(x+1)...(x+k-1) dx` via the Stirling
/// polynomial coefficients.
pub fn cauchy_number(k: usize) -> Rat {
    let s = crate::families::stirling1_poly(k);
    let mut acc = Rat::from_integer(num_bigint::BigInt::from(0));
    for (j, c) in s.coeffs.iter().enumerate() {
        acc += c / rat_int((j + 1) as i64);
    }
    acc
}

/// `(-1)^k C_k / k!` in f64.
pub fn fubini_moment(k: usize) -> f64 {
    let mut v = cauchy_number(k) / Rat::from_integer(exact::factorial(k));
    if k % 2 == 1 {
        v = -v;
    }
    hp::rat_to_f64(&v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn touchard_moments_match_formula() {
        assert_eq!(touchard_moment(0), 1.0);
        assert_eq!(touchard_moment(1), -0.5);
        assert!((touchard_moment(2) - 2.0 / 3.0).abs() < 1e-15);
        assert!((touchard_moment(3) + 9.0 / 8.0).abs() < 1e-15);
    }

    #[test]
    fn cauchy_numbers_exact() {
        use crate::exact::rat;
        assert_eq!(cauchy_number(0), rat(1, 1));
        assert_eq!(cauchy_number(1), rat(1, 2));
        assert_eq!(cauchy_number(2), rat(5, 6));
        // quadrature oracle for C_3 = int_0^1 x(x+1)(x+2) dx = 9/4
        let oracle = quad::integrate(|x| x * (x + 1.0) * (x + 2.0), 0.0, 1.0, 1e-12).unwrap();
        assert!((hp::rat_to_f64(&cauchy_number(3)) - oracle).abs() < 1e-12);
        // fubini k=2 moment = C_2/2! = 5/12
        assert!((fubini_moment(2) - 5.0 / 12.0).abs() < 1e-15);
        assert_eq!(fubini_moment(1), -0.5);
    }

    #[test]
    fn pointwise_density_values() {
        let e = law_eulerian();
        assert!((e.density(-1.0) - 1.0 / (PI * PI)).abs() < 1e-15);
        let n = law_narayana(2.0).unwrap();
        assert!((n.density(-1.0) - 1.0 / (2.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn mp_support_and_atom() {
        let l = law_mp(1.0, 1.0).unwrap();
        assert_eq!(l.support, (0.0, 4.0));
        assert_eq!(l.atom_at_zero, 0.0);
        let l2 = law_mp(1.0, 2.0).unwrap();
        assert!((l2.atom_at_zero - 0.5).abs() < 1e-15);
    }

    #[test]
    fn q_laguerre_support() {
        let lam = std::f64::consts::LN_2;
        let (lo, hi) = q_laguerre_edges(1.0, lam);
        assert!(lo.abs() < 1e-15);
        assert!((hi - 4.0 * (-lam).exp() * (1.0 - (-lam).exp())).abs() < 1e-15);
        // lambda > log(1+a): support extends to 1
        let l = law_q_laguerre(1.0, 2.0).unwrap();
        assert_eq!(l.support.1, 1.0);
    }

    #[test]
    fn cauchy_closed_values() {
        let sc = law_semicircle();
        let g = sc.cauchy(Complex64::new(3.0, 0.0)).unwrap();
        assert!((g.re - (3.0 - 5.0f64.sqrt()) / 2.0).abs() < 1e-14);
        let u = law_uniform_stirling();
        let g = u.cauchy(Complex64::new(1.0, 0.0)).unwrap();
        assert!((g.re - 2.0f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn touchard_cauchy_vs_quadrature() {
        let law = law_touchard();
        let g = law.cauchy(Complex64::new(10.0, 0.0)).unwrap().re;
        let q = law
            .integrate_against(|x| 1.0 / (10.0 - x), f64::NEG_INFINITY, f64::INFINITY, 1e-11)
            .unwrap();
        assert!((g - q).abs() < 1e-8, "g={g} q={q}");
    }

    #[test]
    fn masses_are_one() {
        let laws: Vec<LimitLaw> = vec![
            law_uniform_stirling(),
            law_touchard(),
            law_fubini(),
            law_eulerian(),
            law_narayana(2.0).unwrap(),
            law_mp(1.0, 1.0).unwrap(),
            law_mp(2.0, 0.5).unwrap(),
            law_mp(1.0, 2.0).unwrap(),
            law_semicircle(),
            law_arcsine(),
            law_jacobi(1.0, 0.5).unwrap(),
            law_q_laguerre(1.0, 2.0).unwrap(),
            law_q_laguerre(1.0 / 3.0, 0.25).unwrap(),
        ];
        for law in &laws {
            let m = law.density_mass(1e-9).unwrap();
            let total = m + law.atom_at_zero + law.atom_at_infinity;
            assert!(
                (total - 1.0).abs() < 1e-6,
                "{:?}: mass = {total}",
                law.kind
            );
        }
    }

    #[test]
    fn tg_tends_to_mbar() {
        // compact-support laws reach m_bar at 1/t speed
        for law in [
            law_touchard(),
            law_fubini(),
            law_mp(1.0, 2.0).unwrap(),
            law_q_laguerre(0.5, 1.0).unwrap(),
            law_semicircle(),
        ] {
            let t = 1e6;
            let g = law.cauchy(Complex64::new(t, 0.0)).unwrap().re;
            assert!(
                (t * g - law.m_bar()).abs() < 1e-3,
                "{:?}: tG = {}",
                law.kind,
                t * g
            );
        }
        // heavy-tail laws approach m_bar only like 1/ln t (Eulerian) or
        // t^{-1/gamma} (Narayana); assert the exact tail-corrected value at
        // 1e6 plus the monotone approach
        let e = law_eulerian();
        let tg6 = 1e6 * e.cauchy(Complex64::new(1e6, 0.0)).unwrap().re;
        let expect = 1e6 / (1e6 - 1.0) - 1.0 / 1e6f64.ln();
        assert!((tg6 - expect).abs() < 1e-9);
        let tg12 = 1e12 * e.cauchy(Complex64::new(1e12, 0.0)).unwrap().re;
        assert!(tg6 < tg12 && tg12 < 1.0);
        let n = law_narayana(2.0).unwrap();
        let tgn = 1e8 * n.cauchy(Complex64::new(1e8, 0.0)).unwrap().re;
        assert!((tgn - 1.0 / (1.0 + 1e8f64.powf(-0.5))).abs() < 1e-12);
    }

    #[test]
    fn perron_inversion_consistency() {
        let laws = vec![
            law_touchard(),
            law_fubini(),
            law_eulerian(),
            law_narayana(3.0).unwrap(),
            law_mp(1.0, 0.5).unwrap(),
            law_semicircle(),
            law_arcsine(),
            law_jacobi(0.7, 0.2).unwrap(),
            law_q_laguerre(1.0, 2.0).unwrap(),
        ];
        for law in &laws {
            let (lo, hi) = law.support;
            let lo = lo.max(-30.0);
            for i in 1..50 {
                let x = lo + (hi - lo) * i as f64 / 50.0;
                let g = law.cauchy_unchecked(Complex64::new(x, 1e-6));
                let perron = -g.im / PI;
                let p = law.density(x);
                assert!(
                    (perron - p).abs() <= 1e-3 * (1.0 + p),
                    "{:?} at x={x}: perron={perron} density={p}",
                    law.kind
                );
            }
        }
    }

    #[test]
    fn potential_closed_values() {
        let f = law_fubini();
        let u1 = f.log_potential(1.0).unwrap().unwrap_finite();
        assert!((u1 + (2.0f64.ln()).ln()).abs() < 1e-14);
        // U_sc(t) = log t + o(1)
        let sc = law_semicircle();
        let u = sc.log_potential(1e4).unwrap().unwrap_finite();
        assert!((u - (1e4f64).ln()).abs() < 1e-3);
        // Eulerian plain potential is infinite, normalized one is closed
        assert_eq!(law_eulerian().log_potential(2.0).unwrap(), Potential::Infinite);
        let psi = law_eulerian().normalized_log_potential(1.0 + 1e-12).unwrap();
        assert!(psi.abs() < 1e-9);
    }

    #[test]
    fn psi_at_one_vanishes_off_support() {
        for law in [law_eulerian(), law_fubini(), law_touchard(), law_uniform_stirling()] {
            let psi = law.normalized_log_potential(1.0).unwrap_or(0.0);
            assert!(psi.abs() < 1e-9, "{:?}", law.kind);
        }
    }

    #[test]
    fn psi_derivative_is_cauchy() {
        for law in [
            law_fubini(),
            law_eulerian(),
            law_touchard(),
            law_mp(1.0, 1.0).unwrap(),
            law_semicircle(),
        ] {
            let t = law.support.1.max(0.0) + 1.5;
            let h = 1e-5;
            let fp = (law.normalized_log_potential(t + h).unwrap()
                - law.normalized_log_potential(t - h).unwrap())
                / (2.0 * h);
            let g = law.cauchy(Complex64::new(t, 0.0)).unwrap().re;
            assert!((fp - g).abs() < 1e-6, "{:?}: fd={fp} G={g}", law.kind);
        }
    }

    #[test]
    fn eulerian_reciprocal_invariance() {
        let e = law_eulerian();
        let (a, b) = (0.5f64, 2.3f64);
        let m1 = e
            .integrate_against(|_| 1.0, -b, -a, 1e-10)
            .unwrap();
        let m2 = e
            .integrate_against(|_| 1.0, -1.0 / a, -1.0 / b, 1e-10)
            .unwrap();
        assert!((m1 - m2).abs() < 1e-8, "{m1} vs {m2}");
    }

    #[test]
    fn fubini_reflection() {
        let f = law_fubini();
        for i in 1..20 {
            let x = -i as f64 / 20.0;
            assert!((f.density(x) - f.density(-1.0 - x)).abs() < 1e-12);
        }
    }

    #[test]
    fn q_laguerre_degenerates_to_mp() {
        let lam = 1e-3;
        let ql = law_q_laguerre(1.0, lam).unwrap();
        let mp = law_mp(1.0, 1.0).unwrap();
        for &t in &[-1.0, -2.5, 5.0, 7.0] {
            let zoom = ql.cauchy(Complex64::new(lam * t, 0.0)).unwrap() * lam;
            let target = mp.cauchy(Complex64::new(t, 0.0)).unwrap();
            assert!(
                (zoom - target).norm() < 1e-2,
                "t={t}: {zoom} vs {target}"
            );
        }
    }

    #[test]
    fn law_constructor_rejections() {
        assert!(law_narayana(1.5).is_err());
        assert!(law_mp(-1.0, 1.0).is_err());
        assert!(law_jacobi(-0.2, 0.0).is_err());
        assert!(law_gegenbauer(0.2).is_err());
        assert!(law_q_laguerre(1.2, 1.0).is_err());
        assert!(law_q_laguerre(0.5, -1.0).is_err());
    }

    #[test]
    fn eulerian_moments_rejected() {
        assert!(law_eulerian().moments(2).is_err());
    }
}
