//! Adaptive Gauss–Kronrod (G7/K15) quadrature plus the endpoint
//! substitutions the law densities need: `x = a + u^2` / `x = b - u^2` at
//! square-root edges and geometric paneling toward infinite endpoints.

use crate::error::{Error, Result};

// QUADPACK dqk15 abscissae and weights.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut resg = WG[3] * fc;
    let mut resk = WGK[7] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let f1 = f(c - x);
        let f2 = f(c + x);
        resk += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    (resk * h, ((resk - resg) * h).abs())
}

/// Adaptive integration of `f` over `[a, b]` to absolute tolerance `tol`:
/// globally adaptive, always splitting the interval with the largest error
/// estimate (endpoint log singularities then converge geometrically).
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let tol = tol.max(1e-15);
    let first = gk15(&mut f, a, b);
    // (error, a, b, value)
    let mut cells: Vec<(f64, f64, f64, f64)> = vec![(first.1, a, b, first.0)];
    let mut err_sum = first.1;
    while err_sum > tol {
        if cells.len() > 4000 {
            return Err(Error::Numerical(
                "adaptive quadrature exceeded its subdivision budget".into(),
            ));
        }
        // split the worst cell
        let (imax, _) = cells
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .0.total_cmp(&y.1 .0))
            .unwrap();
        let (e0, ca, cb, _) = cells.swap_remove(imax);
        err_sum -= e0;
        let m = 0.5 * (ca + cb);
        if (cb - ca).abs() <= 1e-15 * (ca.abs() + cb.abs() + 1.0) || m <= ca || m >= cb {
            // can't subdivide further; keep the cell and accept its error
            cells.push((0.0, ca, cb, gk15(&mut f, ca, cb).0));
            continue;
        }
        for (x0, x1) in [(ca, m), (m, cb)] {
            let (v, e) = gk15(&mut f, x0, x1);
            err_sum += e;
            cells.push((e, x0, x1, v));
        }
    }
    // compensated sum of the cell values
    let mut total = 0.0;
    let mut comp = 0.0;
    for &(_, _, _, v) in &cells {
        let y = v - comp;
        let t = total + y;
        comp = (t - total) - y;
        total = t;
    }
    Ok(total)
}

/// Integrate `f` over `[a, b]` where `f` has an (integrable) square-root
/// singularity at `a`: substitute `x = a + u^2`.
pub fn integrate_sqrt_lo<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if b <= a {
        return Ok(0.0);
    }
    let umax = (b - a).sqrt();
    integrate(|u| 2.0 * u * f(a + u * u), 0.0, umax, tol)
}

/// Same with the singularity at `b`: substitute `x = b - u^2`.
pub fn integrate_sqrt_hi<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if b <= a {
        return Ok(0.0);
    }
    let umax = (b - a).sqrt();
    integrate(|u| 2.0 * u * f(b - u * u), 0.0, umax, tol)
}

/// Integrate over a finite support `[lo, hi]` whose density has square-root
/// edges at both ends (the generic shape here): split at the midpoint and
/// substitute on each half. `a`/`b` clip the range.
pub fn integrate_sqrt_edges<F: Fn(f64) -> f64 + Copy>(
    f: F,
    lo: f64,
    hi: f64,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<f64> {
    let a = a.max(lo);
    let b = b.min(hi);
    if b <= a {
        return Ok(0.0);
    }
    let mid = 0.5 * (lo + hi);
    let mut acc = 0.0;
    if a < mid {
        acc += integrate_sqrt_lo(&f, lo, b.min(mid), tol / 2.0)?
            - integrate_sqrt_lo(&f, lo, a, tol / 2.0)?;
    }
    if b > mid {
        acc += integrate_sqrt_hi(&f, a.max(mid), hi, tol / 2.0)?
            - integrate_sqrt_hi(&f, b, hi, tol / 2.0)?;
    }
    Ok(acc)
}

/// Integrate `g` over `(-inf, b]` by geometric paneling
/// `[b - 2^{k+1}, b - 2^k]`; stops once consecutive panels fall below the
/// tolerance share and the panel width is already huge.
pub fn integrate_to_neg_inf<F: Fn(f64) -> f64>(g: F, b: f64, tol: f64) -> Result<f64> {
    let mut total = 0.0;
    let mut width = 1.0f64;
    let mut right = b;
    let mut small_streak = 0;
    for _ in 0..2200 {
        let left = right - width;
        let v = integrate(&g, left, right, tol / 8.0)?;
        total += v;
        if v.abs() < tol / 4.0 {
            small_streak += 1;
            if small_streak >= 2 && width > 1e6 {
                return Ok(total);
            }
        } else {
            small_streak = 0;
        }
        right = left;
        width *= 2.0;
        if width > 1e305 {
            return Ok(total);
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let v = integrate(|x| x * x, 0.0, 3.0, 1e-12).unwrap();
        assert!((v - 9.0).abs() < 1e-12);
    }

    #[test]
    fn sqrt_edge() {
        // semicircle mass: (1/2pi) int sqrt(4-x^2) over [-2,2] = 1
        let f = |x: f64| (4.0 - x * x).max(0.0).sqrt() / (2.0 * std::f64::consts::PI);
        let v = integrate_sqrt_edges(f, -2.0, 2.0, -2.0, 2.0, 1e-11).unwrap();
        assert!((v - 1.0).abs() < 1e-10, "{v}");
    }

    #[test]
    fn heavy_tail_to_neg_inf() {
        // int_{-inf}^{-1} dx/x^2 = 1
        let v = integrate_to_neg_inf(|x| 1.0 / (x * x), -1.0, 1e-10).unwrap();
        assert!((v - 1.0).abs() < 1e-8, "{v}");
    }
}
