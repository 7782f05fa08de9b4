//! Principal branch of the Lambert W function on the real axis, on the slit
//! complex plane, and its boundary values on the branch cut `(-inf, -1/e]`.
//!
//! The real-axis routine iterates Halley from a piecewise initial guess
//! (series at 0, square-root expansion at the branch point, log-log at
//! infinity) and polishes in MPFR; boundary values on the cut come from the
//! real parametrization `w = -v cot v + i v`, `v in (0, pi)`, which is
//! strictly monotone and therefore bisectable with guaranteed bracketing.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hp::{self, Real};

const INV_E: f64 = 1.0 / std::f64::consts::E;

fn initial_guess(x: f64) -> f64 {
    if x < -INV_E + 0.2 {
        // square-root expansion about the branch point
        let p = (2.0 * (std::f64::consts::E * x + 1.0)).max(0.0).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 * p * p * p / 72.0
    } else if x.abs() <= 0.3 {
        // series about 0
        x * (1.0 + x * (-1.0 + x * (1.5 - x * 8.0 / 3.0)))
    } else if x > 3.0 {
        let l = x.ln();
        l - l.ln()
    } else {
        x.ln_1p()
    }
}

fn halley_step_f64(w: f64, x: f64) -> f64 {
    let ew = w.exp();
    let f = w * ew - x;
    let fp = ew * (1.0 + w);
    let next = w - f / (fp - f * (w + 2.0) / (2.0 * (w + 1.0)));
    if next <= -1.0 {
        // stay on the principal branch
        (w - 1.0) / 2.0
    } else {
        next
    }
}

/// `W_0(x)` for real `x >= -1/e` (the boundary returns exactly -1).
pub fn lambert_w0(x: f64) -> Result<f64> {
    if x < -INV_E {
        // tolerate roundoff-level undershoot of the representable -1/e
        if x > -INV_E - 1e-15 {
            return Ok(-1.0);
        }
        return Err(Error::Domain(format!(
            "lambert_w0: x = {x} < -1/e lies outside the real domain of W_0"
        )));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == -INV_E {
        return Ok(-1.0);
    }
    let mut w = initial_guess(x);
    for _ in 0..60 {
        let next = halley_step_f64(w, x);
        if (next - w).abs() <= 1e-17 * (1.0 + next.abs()) {
            w = next;
            break;
        }
        w = next;
    }
    // one MPFR polish pass: the working precision lives above 128 bits so the
    // f64 rounding of the result is correct to the last ulp
    Ok(lambert_w0_hp_from(w, x).to_f64())
}

/// High-precision `W_0(x)`: Halley at [`hp::PREC`] seeded by the f64 result.
pub fn lambert_w0_hp(x: f64) -> Result<Real> {
    let w = lambert_w0(x)?;
    Ok(lambert_w0_hp_from(w, x))
}

fn lambert_w0_hp_from(seed: f64, x: f64) -> Real {
    let prec = hp::PREC;
    let xr = Real::with_val(prec, x);
    let mut w = Real::with_val(prec, seed);
    for _ in 0..4 {
        let ew = w.clone().exp();
        let f = w.clone() * &ew - xr.clone();
        let fp = ew.clone() * (Real::with_val(prec, 1) + w.clone());
        if fp == 0 {
            break;
        }
        let denom = fp.clone()
            - f.clone() * (w.clone() + Real::with_val(prec, 2))
                / ((w.clone() + Real::with_val(prec, 1)) * Real::with_val(prec, 2));
        let step = f / denom;
        w -= step;
    }
    w
}

fn complex_guess(z: Complex64) -> Complex64 {
    let e = std::f64::consts::E;
    if (z + INV_E).norm() < 0.25 && z.im.abs() < 0.25 {
        let p = (2.0 * (e * z + 1.0)).sqrt();
        -1.0 + p - p * p / 3.0
    } else if z.norm() < 0.3 {
        z * (1.0 - z + 1.5 * z * z)
    } else if z.norm() <= 3.0 {
        // principal log keeps the seed on the W_0 sheet; ln z itself can sit
        // in the left half-plane here, where ln(ln z) hops branches
        (z + 1.0).ln()
    } else {
        let l = z.ln();
        l - l.ln()
    }
}

fn halley_complex(z: Complex64, seed: Complex64) -> Complex64 {
    let mut w = seed;
    for _ in 0..80 {
        let ew = w.exp();
        let f = w * ew - z;
        let fp = ew * (w + 1.0);
        let denom = fp - f * (w + 2.0) / (2.0 * (w + 1.0));
        let next = w - f / denom;
        if !(next.re.is_finite() && next.im.is_finite()) {
            break;
        }
        let delta = (next - w).norm();
        w = next;
        if delta <= 1e-16 * (1.0 + w.norm()) {
            break;
        }
    }
    w
}

/// Principal-branch membership: the image of `W_0` is bounded by the curve
/// `u = -v cot v`, `|v| < pi` (with `u >= -1` on the real axis).
fn is_principal(w: Complex64) -> bool {
    let v = w.im.abs();
    if v >= std::f64::consts::PI {
        return false;
    }
    let boundary = if v < 1e-8 { -1.0 } else { -v * v.cos() / v.sin() };
    w.re >= boundary - 1e-9 * (1.0 + w.norm())
}

/// `W_0(z)` on the slit plane `C \ (-inf, -1/e]`.
pub fn lambert_w0_complex(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= -INV_E {
        return Err(Error::OnSupport(
            "z on the branch cut (-inf, -1/e]; use lambert_w0_cut for boundary values".into(),
        ));
    }
    if z.im < 0.0 {
        // Schwarz reflection: handle the lower half-plane off the upper one
        return Ok(lambert_w0_complex(z.conj())?.conj());
    }
    if z.norm() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let good = |w: Complex64| {
        (w * w.exp() - z).norm() <= 1e-14 * (1.0 + z.norm())
            && is_principal(w)
            && w.im >= -1e-12 * (1.0 + w.norm())
    };
    let mut w = halley_complex(z, complex_guess(z));
    if !good(w) {
        // fall back through the other seed families; near the cut the
        // boundary-value parametrization is the reliable one
        let e = std::f64::consts::E;
        let p = (2.0 * (e * z + 1.0)).sqrt();
        let mut seeds = vec![
            (z + 1.0).ln(),
            -1.0 + p - p * p / 3.0,
            z * (1.0 - z),
            Complex64::new(1.0, 0.5),
        ];
        if z.re < -INV_E {
            seeds.insert(0, lambert_w0_cut_ln((-z.re).ln()));
        }
        for s in seeds {
            w = halley_complex(z, s);
            if good(w) {
                break;
            }
        }
    }
    if !good(w) {
        return Err(Error::Numerical(format!(
            "lambert_w0_complex failed to converge on the principal branch at z = {z}"
        )));
    }
    Ok(w)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutSide {
    Upper,
    Lower,
}

/// Boundary value `W_0(x ± i0)` for real `x < -1/e`.
///
/// Solves `x = -(v/sin v) e^{-v cot v}` for `v in (0, pi)` by bisection (the
/// right side is strictly decreasing), then `w = -v cot v + i v`; the lower
/// side is the conjugate.
pub fn lambert_w0_cut(x: f64, side: CutSide) -> Result<Complex64> {
    if !(x < -INV_E) {
        return Err(Error::Domain(format!(
            "lambert_w0_cut: x = {x} is not in (-inf, -1/e)"
        )));
    }
    let w = lambert_w0_cut_ln((-x).ln());
    Ok(match side {
        CutSide::Upper => w,
        CutSide::Lower => w.conj(),
    })
}

/// Upper boundary value `W_0(x + i0)` parametrized by `ln(-x) > -1`; taking
/// the magnitude in log form keeps deep-tail density evaluations (where `x`
/// itself underflows) exact.
pub fn lambert_w0_cut_ln(ln_neg_x: f64) -> Complex64 {
    let target = ln_neg_x;
    if target > 1e13 {
        // v = pi - delta, delta = pi/(t+1) with t + ln t = target; at this
        // depth two Newton steps pin t to machine precision
        let mut t = target - target.ln();
        for _ in 0..3 {
            t -= (t + t.ln() - target) * t / (t + 1.0);
        }
        let delta = std::f64::consts::PI / (t + 1.0);
        let v = std::f64::consts::PI - delta;
        return Complex64::new(-v * v.cos() / v.sin(), v);
    }
    // h(v) = ln(v/sin v) - v cot v, increasing from -1 (v->0) to +inf (v->pi)
    let h = |v: f64| (v / v.sin()).ln() - v * v.cos() / v.sin();
    let mut lo = 1e-300f64;
    let mut hi = std::f64::consts::PI - 1e-14;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if h(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    let v = 0.5 * (lo + hi);
    let u = -v * v.cos() / v.sin();
    let mut w = Complex64::new(u, v);
    if ln_neg_x < 700.0 {
        // Newton polish against the defining equation; stays on the sheet
        let x = -ln_neg_x.exp();
        for _ in 0..2 {
            let ew = w.exp();
            let f = w * ew - x;
            let fp = ew * (w + 1.0);
            let next = w - f / fp;
            if next.im > 0.0 && next.im < std::f64::consts::PI && next.re.is_finite() {
                w = next;
            }
        }
    }
    w
}

/// Partial sum of `e^{W_0(z)} = 1 + sum_k (-k)^k/(k+1)! z^{k+1}`, the
/// independent series oracle for the iterative routines. Valid for
/// `|z| < 1/e`.
pub fn exp_w0_series(z: Complex64, terms: usize) -> Result<Complex64> {
    if z.norm() >= INV_E {
        return Err(Error::Numerical(format!(
            "exp_w0_series: |z| = {} >= 1/e, the series does not converge",
            z.norm()
        )));
    }
    let mut sum = Complex64::new(1.0, 0.0);
    // a_k = (-k)^k/(k+1)! z^{k+1}; ratio recurrence keeps magnitudes sane
    let mut term = z; // k = 0
    for k in 0..terms {
        sum += term;
        let kk = (k + 1) as f64;
        let ratio = if k == 0 {
            // a_1/a_0 = -z/2
            -z / 2.0
        } else {
            let grow = (kk / (kk - 1.0)).powf(kk - 1.0);
            -z * kk * grow / (kk + 1.0)
        };
        term *= ratio;
    }
    Ok(sum)
}

/// Closed-form derivative `W_0'(z) = W_0(z) / (z (1 + W_0(z)))`.
pub fn lambert_w0_derivative(z: f64) -> Result<f64> {
    let w = lambert_w0(z)?;
    if z == 0.0 {
        return Ok(1.0);
    }
    Ok(w / (z * (1.0 + w)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ulp(x: f64) -> f64 {
        let y = x.abs().max(f64::MIN_POSITIVE);
        let up = f64::from_bits(y.to_bits() + 1);
        up - y
    }

    #[test]
    fn real_axis_fixed_points() {
        assert_eq!(lambert_w0(0.0).unwrap(), 0.0);
        let w = lambert_w0(std::f64::consts::E).unwrap();
        assert!((w - 1.0).abs() < 4.0 * f64::EPSILON);
        assert_eq!(lambert_w0(-INV_E).unwrap(), -1.0);
        assert!(lambert_w0(-0.4).is_err());
    }

    #[test]
    fn real_axis_residual_contract() {
        // |w e^w - x| <= 8 ulp(|x| + |w|), log-spaced grid over the domain
        let mut pts = vec![-INV_E + 1e-12, -INV_E + 1e-6, -0.35, -0.2, -0.05];
        let mut x = 1e-8;
        while x < 1e8 {
            pts.push(x);
            x *= 3.7;
        }
        for &x in &pts {
            let w = lambert_w0(x).unwrap();
            assert!(w > -1.0 - 1e-15, "w={w} out of principal range at x={x}");
            let resid = (w * w.exp() - x).abs();
            assert!(
                resid <= 8.0 * ulp(x.abs() + w.abs()),
                "x={x} w={w} resid={resid:e}"
            );
        }
    }

    #[test]
    fn complex_defining_equation() {
        let z = Complex64::new(0.0, 1.0);
        let w = lambert_w0_complex(z).unwrap();
        assert!((w * w.exp() - z).norm() <= 1e-14 * (1.0 + z.norm()));

        // agreement with the real routine on the axis
        for &x in &[-0.3, -0.1, 0.5, 2.0, 50.0] {
            let wr = lambert_w0(x).unwrap();
            let wc = lambert_w0_complex(Complex64::new(x, 0.0)).unwrap();
            assert!((wc.re - wr).abs() <= 1e-14 * (1.0 + wr.abs()));
            assert!(wc.im.abs() <= 1e-14);
        }

        // Schwarz reflection off the cut
        for i in 0..40 {
            let re = -2.0 + 0.3 * i as f64;
            for &im in &[0.1, 0.7, 2.5, -0.4, -3.0] {
                let z = Complex64::new(re, im);
                let a = lambert_w0_complex(z).unwrap();
                let b = lambert_w0_complex(z.conj()).unwrap();
                assert!((a.conj() - b).norm() <= 1e-13 * (1.0 + a.norm()), "z={z}");
            }
        }

        assert!(lambert_w0_complex(Complex64::new(-1.0, 0.0)).is_err());
    }

    #[test]
    fn cut_limits_match_known_limits() {
        // Im W0(x+i0) -> pi as x -> -inf. The approach is logarithmic:
        // pi - Im ~ pi/ln(-x), so 0.01 proximity needs ln(-x) ~ 300.
        let w = lambert_w0_cut(-1e150, CutSide::Upper).unwrap();
        assert!((w.im - std::f64::consts::PI).abs() < 0.01);
        let w8 = lambert_w0_cut(-1e8, CutSide::Upper).unwrap();
        assert!((w8.im - std::f64::consts::PI).abs() < 0.25);
        // Im W0(x+i0) -> 0 as x -> -1/e
        let w = lambert_w0_cut(-INV_E - 1e-6, CutSide::Upper).unwrap();
        assert!(w.im.abs() < 0.01 && w.im > 0.0);
        // residual at x = -2
        let w = lambert_w0_cut(-2.0, CutSide::Upper).unwrap();
        assert!((w * w.exp() - Complex64::new(-2.0, 0.0)).norm() <= 1e-12);
        // lower side is the conjugate
        let wl = lambert_w0_cut(-2.0, CutSide::Lower).unwrap();
        assert_eq!(wl, w.conj());
        assert!(lambert_w0_cut(-0.2, CutSide::Upper).is_err());
    }

    #[test]
    fn cut_imaginary_part_decreasing() {
        let mut prev = std::f64::consts::PI;
        for i in 0..100 {
            // sweep x upward toward -1/e; Im W0(x+i0) decreases in x, so it
            // must drop along the sweep
            let x = -1e6 * (0.87f64).powi(i);
            if x >= -INV_E {
                break;
            }
            let w = lambert_w0_cut(x, CutSide::Upper).unwrap();
            assert!(w.im < prev, "Im not decreasing in x at x={x}");
            prev = w.im;
        }
    }

    #[test]
    fn series_oracle_cross_checks() {
        assert_eq!(
            exp_w0_series(Complex64::new(0.0, 0.0), 10).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        let s = exp_w0_series(Complex64::new(0.2, 0.0), 40).unwrap();
        let w = lambert_w0(0.2).unwrap();
        assert!((s.re - w.exp()).abs() <= 1e-12);
        // At z = -0.3 the k-th term decays like (0.3 e)^k, so 60 terms leave a
        // ~1e-8 tail; the full oracle comparison runs at 200 terms.
        let s60 = exp_w0_series(Complex64::new(-0.3, 0.0), 60).unwrap();
        let w3 = lambert_w0(-0.3).unwrap();
        assert!((s60.re - w3.exp()).abs() <= 1e-7);
        let s = exp_w0_series(Complex64::new(-0.3, 0.0), 200).unwrap();
        assert!((s.re - w3.exp()).abs() <= 1e-10, "err={}", (s.re - w3.exp()).abs());
        assert!(exp_w0_series(Complex64::new(0.4, 0.0), 10).is_err());
    }

    #[test]
    fn derivative_identity_vs_finite_difference() {
        // W'(z) = W/(z(1+W)) against central differences on a log-spaced grid
        let mut z = -INV_E + 0.01;
        let mut pts = Vec::new();
        while z < 1e3 {
            pts.push(z);
            z = if z < 0.0 { z + 0.05 } else { z * 1.6 + 0.01 };
        }
        for &z in &pts {
            let h = 1e-6 * (1.0 + z.abs());
            let fd = (lambert_w0(z + h).unwrap() - lambert_w0(z - h).unwrap()) / (2.0 * h);
            let formula = lambert_w0_derivative(z).unwrap();
            assert!(
                (fd - formula).abs() <= 1e-6 * (1.0 + formula.abs()),
                "z={z} fd={fd} formula={formula}"
            );
        }
    }

    #[test]
    fn global_residual_invariant() {
        // |W(z) e^W(z) - z| <= 1e-13 (1 + |z|) across real and complex points
        for i in 0..100 {
            let x = -INV_E + 1e-9 + (i as f64) * 0.9;
            let w = lambert_w0(x).unwrap();
            assert!((w * w.exp() - x).abs() <= 1e-13 * (1.0 + x.abs()));
        }
        for i in 0..20 {
            for j in 0..20 {
                let z = Complex64::new(-3.0 + 0.4 * i as f64, -2.0 + 0.21 * j as f64);
                if z.im == 0.0 {
                    continue;
                }
                let w = lambert_w0_complex(z).unwrap();
                assert!(
                    (w * w.exp() - z).norm() <= 1e-13 * (1.0 + z.norm()),
                    "z={z}"
                );
            }
        }
    }
}
