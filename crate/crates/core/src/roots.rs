//! Certified real-root isolation, empirical zero measures, and
//! Kolmogorov–Smirnov distances between empirical and limiting laws.
//!
//! Two isolation paths share one contract ("number of certified real roots
//! equals the degree, else error"):
//!
//! * exact Sturm bisection (degree <= [`STURM_DEGREE_LIMIT`]), the
//!   certificate being the sign-variation count;
//! * certified-sign bisection in MPFR for high degrees, where every sign is
//!   guarded by a rigorous Horner rounding bound (precision escalates until
//!   the sign is certain), and the certificate is `degree` disjoint certified
//!   sign-change brackets.
//!
//! Float-coefficient families run the same scan at the precision of their
//! coefficients; their count-vs-degree check is numerical evidence, not
//! proof, matching what is provable there.

use num_bigint::{BigInt, Sign};
use num_traits::Zero;
use rug::Float;

use crate::error::{Error, Result};
use crate::exact::{pseudo_rem, IntPoly, Rat, RatPoly};
use crate::families::{ExactPolynomial, FloatPolynomial};
use crate::hp;
use crate::limitlaws::LimitLaw;

pub const STURM_DEGREE_LIMIT: usize = 64;

/// Sturm chain of a square-free (or any) integer polynomial.
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Self {
        let mut chain = vec![p.clone().primitive()];
        let d = p.derivative().primitive();
        if !d.is_zero() {
            chain.push(d);
        }
        while chain.len() >= 2 {
            let k = chain.len();
            let r = pseudo_rem(&chain[k - 2], &chain[k - 1]);
            if r.is_zero() {
                break;
            }
            let mut r = r.primitive();
            for v in r.c.iter_mut() {
                *v = -v.clone();
            }
            chain.push(r);
        }
        SturmChain { chain }
    }

    fn variations<F: Fn(&IntPoly) -> Sign>(&self, sign_of: F) -> usize {
        let mut count = 0;
        let mut last = Sign::NoSign;
        for p in &self.chain {
            let s = sign_of(p);
            if s == Sign::NoSign {
                continue;
            }
            if last != Sign::NoSign && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, num: &BigInt, den: &BigInt) -> usize {
        self.variations(|p| p.sign_at(num, den))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        self.variations(|p| p.sign_at_neg_inf())
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        self.variations(|p| p.sign_at_pos_inf())
    }

    /// Number of distinct real roots in `(a, b]` with rational endpoints.
    pub fn count_in(&self, a: &Rat, b: &Rat) -> usize {
        let va = self.variations_at(a.numer(), a.denom());
        let vb = self.variations_at(b.numer(), b.denom());
        va.saturating_sub(vb)
    }

    pub fn count_all(&self) -> usize {
        self.variations_at_neg_inf()
            .saturating_sub(self.variations_at_pos_inf())
    }
}

/// Number of distinct real roots, counted exactly.
pub fn sturm_distinct_real_roots(p: &ExactPolynomial) -> usize {
    let ip = IntPoly::from_rat(&p.as_poly());
    if ip.deg() == 0 {
        return 0;
    }
    SturmChain::new(&ip).count_all()
}

/// Yun square-free decomposition: returns `(factor, multiplicity)` pairs
/// with the factors square-free and pairwise coprime.
pub fn squarefree_decomposition(p: &RatPoly) -> Vec<(RatPoly, usize)> {
    let mut out = Vec::new();
    let g = crate::exact::ratpoly_gcd(p, &p.derivative());
    if g.deg() == 0 {
        out.push((p.clone(), 1));
        return out;
    }
    let mut c = poly_div_exact(p, &g);
    let mut d = poly_sub(&poly_div_exact(&p.derivative(), &g), &c.derivative());
    let mut mult = 1usize;
    loop {
        let a = crate::exact::ratpoly_gcd(&c, &d);
        if a.deg() > 0 {
            out.push((a.clone(), mult));
        }
        let c_next = poly_div_exact(&c, &a);
        let d_next = poly_sub(&poly_div_exact(&d, &a), &c_next.derivative());
        c = c_next;
        d = d_next;
        mult += 1;
        if c.deg() == 0 {
            break;
        }
        if mult > 64 {
            break;
        }
    }
    out
}

fn poly_sub(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let neg = b.scale(&crate::exact::rat_int(-1));
    a.add(&neg).trim()
}

/// Exact division, panics if not exact (internal use on gcd multiples).
fn poly_div_exact(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut rem = a.c.clone();
    let db = b.deg();
    let da = a.deg();
    if da < db {
        return RatPoly::zero(1);
    }
    let lead = b.c[db].clone();
    let mut q = vec![Rat::from_integer(BigInt::zero()); da - db + 1];
    for k in (db..=da).rev() {
        let coef = &rem[k] / &lead;
        q[k - db] = coef.clone();
        for j in 0..=db {
            let sub = &coef * &b.c[j];
            rem[k - db + j] -= sub;
        }
    }
    RatPoly::new(q).trim()
}

// ---------------------------------------------------------------------------
// certified high-precision sign evaluation

struct HpPoly {
    exact: Option<Vec<BigInt>>,
    /// per-precision coefficient caches
    cache: std::cell::RefCell<Vec<(u32, Vec<Float>)>>,
    /// relative coefficient uncertainty (0 for exact inputs)
    coeff_rel_err: f64,
    base_prec: u32,
    deg: usize,
}

impl HpPoly {
    fn from_bigints(c: Vec<BigInt>) -> Self {
        let deg = c.len() - 1;
        HpPoly {
            exact: Some(c),
            cache: std::cell::RefCell::new(Vec::new()),
            coeff_rel_err: 0.0,
            base_prec: 192,
            deg,
        }
    }

    fn from_floats(c: &[Float], prec: u32) -> Self {
        let deg = c.len() - 1;
        HpPoly {
            exact: None,
            cache: std::cell::RefCell::new(vec![(prec, c.to_vec())]),
            coeff_rel_err: 2.0f64.powi(-(prec as i32) + 1),
            base_prec: prec,
            deg,
        }
    }

    fn coeffs_at(&self, prec: u32) -> Vec<Float> {
        if let Some(hit) = self
            .cache
            .borrow()
            .iter()
            .find(|(p, _)| *p == prec)
            .map(|(_, c)| c.clone())
        {
            return hit;
        }
        let made: Vec<Float> = match &self.exact {
            Some(ints) => ints.iter().map(|v| hp::real_from_bigint(prec, v)).collect(),
            None => {
                let base = &self.cache.borrow()[0].1.clone();
                base.iter().map(|v| Float::with_val(prec, v)).collect()
            }
        };
        self.cache.borrow_mut().push((prec, made.clone()));
        made
    }

    /// Certified sign of `P(x)`: `Some(+1/-1)` when the rounding bound allows
    /// it, `None` when `x` is numerically indistinguishable from a root at
    /// this precision.
    fn sign_at_prec(&self, x: &Float, prec: u32) -> Option<i32> {
        let c = self.coeffs_at(prec);
        let xp = Float::with_val(prec, x);
        let ax = xp.clone().abs();
        let mut val = Float::with_val(prec, 0);
        let mut mag = Float::with_val(prec, 0);
        for k in (0..c.len()).rev() {
            val = val.mul_add(&xp, &c[k]);
            let ck = c[k].clone().abs();
            mag = mag.mul_add(&ax, &ck);
        }
        // (2 deg + 2) u * sum |c_i||x|^i plus the coefficient uncertainty
        let u = 2.0f64.powi(-(prec as i32) + 1);
        let bound = mag * ((2 * self.deg + 2) as f64 * u + self.coeff_rel_err * (self.deg + 1) as f64);
        if val > bound {
            Some(1)
        } else if val < -bound.clone() {
            Some(-1)
        } else {
            None
        }
    }

    /// Escalate precision until certified; float-coefficient inputs bottom
    /// out at their own precision floor (numerical-evidence mode).
    fn sign_at(&self, x: &Float) -> Option<i32> {
        let mut prec = self.base_prec;
        let max = if self.exact.is_some() { 6144 } else { 256.max(self.base_prec) };
        loop {
            if let Some(s) = self.sign_at_prec(x, prec) {
                return Some(s);
            }
            if prec >= max {
                return None;
            }
            prec = (prec * 2).min(max);
        }
    }

    /// One pass at base precision: certified sign if possible, plus the
    /// cancellation depth log2|P(x)| - log2(sum |c_i| |x|^i). Deep dips mark
    /// cells that hide roots even when the computed value is pure roundoff.
    fn probe(&self, x: &Float) -> (Option<i32>, f64) {
        let prec = self.base_prec;
        let c = self.coeffs_at(prec);
        let xp = Float::with_val(prec, x);
        let ax = xp.clone().abs();
        let mut val = Float::with_val(prec, 0);
        let mut mag = Float::with_val(prec, 0);
        for k in (0..c.len()).rev() {
            val = val.mul_add(&xp, &c[k]);
            let ck = c[k].clone().abs();
            mag = mag.mul_add(&ax, &ck);
        }
        let dip = match (val.get_exp(), mag.get_exp()) {
            (Some(ev), Some(em)) => (ev - em) as f64,
            (None, _) => f64::NEG_INFINITY,
            _ => 0.0,
        };
        let u = 2.0f64.powi(-(prec as i32) + 1);
        let bound =
            mag * ((2 * self.deg + 2) as f64 * u + self.coeff_rel_err * (self.deg + 1) as f64);
        let sign = if val > bound {
            Some(1)
        } else if val < -bound.clone() {
            Some(-1)
        } else {
            self.sign_at(x)
        };
        (sign, dip)
    }

    /// Derivative polynomial with the same backing kind.
    fn derivative_poly(&self) -> HpPoly {
        match &self.exact {
            Some(c) => {
                let d: Vec<BigInt> = c
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(k, v)| v * BigInt::from(k))
                    .collect();
                HpPoly::from_bigints(if d.is_empty() { vec![BigInt::zero()] } else { d })
            }
            None => {
                let base = &self.cache.borrow()[0].1;
                let d: Vec<Float> = base
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(k, v)| v.clone() * (k as f64))
                    .collect();
                HpPoly::from_floats(&d, self.base_prec)
            }
        }
    }

    /// Uncertified sign of the raw Horner value at base precision; used only
    /// to steer splitter bisection (the rigorous probes happen on P itself).
    fn raw_sign(&self, x: &Float) -> i32 {
        let prec = self.base_prec;
        let v = self.eval(x, prec);
        if v.is_zero() {
            0
        } else if v.is_sign_negative() {
            -1
        } else {
            1
        }
    }

    /// Cancellation depth only, at base precision, no sign escalation.
    fn dip_only(&self, x: &Float) -> f64 {
        let prec = self.base_prec;
        let c = self.coeffs_at(prec);
        let xp = Float::with_val(prec, x);
        let ax = xp.clone().abs();
        let mut val = Float::with_val(prec, 0);
        let mut mag = Float::with_val(prec, 0);
        for k in (0..c.len()).rev() {
            val = val.mul_add(&xp, &c[k]);
            let ck = c[k].clone().abs();
            mag = mag.mul_add(&ax, &ck);
        }
        match (val.get_exp(), mag.get_exp()) {
            (Some(ev), Some(em)) => (ev - em) as f64,
            (None, _) => f64::NEG_INFINITY,
            _ => 0.0,
        }
    }

    fn eval(&self, x: &Float, prec: u32) -> Float {
        let c = self.coeffs_at(prec);
        let xp = Float::with_val(prec, x);
        let mut val = Float::with_val(prec, 0);
        for k in (0..c.len()).rev() {
            val = val.mul_add(&xp, &c[k]);
        }
        val
    }

    fn derivative_eval(&self, x: &Float, prec: u32) -> Float {
        let c = self.coeffs_at(prec);
        let xp = Float::with_val(prec, x);
        let mut val = Float::with_val(prec, 0);
        for k in (1..c.len()).rev() {
            let dk = c[k].clone() * (k as f64);
            val = val.mul_add(&xp, &dk);
        }
        val
    }
}

fn bigint_bits(v: &BigInt) -> i64 {
    v.bits() as i64
}

/// Root magnitude bounds in log2 from the Cauchy bound (both directions).
fn log2_bounds(c: &[BigInt]) -> (f64, f64) {
    let n = c.len() - 1;
    let max_bits = c.iter().map(bigint_bits).max().unwrap_or(1);
    let hi = (max_bits - bigint_bits(&c[n]) + 2) as f64;
    let lo = -((max_bits - bigint_bits(&c[0]) + 2) as f64);
    (lo, hi)
}

const COORD_PREC: u32 = 192;

/// Root-magnitude estimates in log2 from consecutive nonzero coefficient
/// ratios: for a real-rooted polynomial with log-concave coefficient
/// magnitudes these approximate the sorted root magnitudes, which makes
/// geometric midpoints between them a nearly perfect isolation grid.
fn ratio_grid(log2c: &[f64]) -> Vec<f64> {
    let nz: Vec<(usize, f64)> = log2c
        .iter()
        .cloned()
        .enumerate()
        .filter(|(_, v)| v.is_finite())
        .collect();
    let mut out = Vec::new();
    for w in nz.windows(2) {
        let (k0, l0) = w[0];
        let (k1, l1) = w[1];
        let gap = (k1 - k0) as f64;
        out.push((l0 - l1) / gap);
    }
    out.sort_by(f64::total_cmp);
    out
}

struct Bracket {
    lo: Float,
    hi: Float,
}

struct ScanPoint {
    u: f64,
    x: Float,
    sign: Option<i32>,
    /// cancellation depth of P at x, for dip-prioritized refinement
    mag: f64,
    /// the cell to the right of this point is certified root-free
    clean_right: bool,
}

fn make_point(p: &HpPoly, sign_axis: f64, u: f64) -> ScanPoint {
    let mut x = Float::with_val(COORD_PREC, u).exp2();
    if sign_axis < 0.0 {
        x = -x;
    }
    let (sign, mag) = p.probe(&x);
    ScanPoint {
        u,
        x,
        sign,
        mag,
        clean_right: false,
    }
}

/// Approximate roots of `polys[level]` inside `(a, b)`, found recursively:
/// splitters come from the next derivative (Rolle-complete through the
/// chain), with cheap uncertified bisection. Only the final probes of P at
/// these splitters are certified, which is all the bracket logic needs.
fn roots_in_cell(polys: &[HpPoly], level: usize, a: &Float, b: &Float, depth: usize) -> Vec<Float> {
    let p = &polys[level];
    if depth == 0 || level + 1 >= polys.len() {
        return Vec::new();
    }
    let crits = roots_in_cell(polys, level + 1, a, b, depth - 1);
    let mut nodes: Vec<Float> = Vec::with_capacity(crits.len() + 2);
    nodes.push(a.clone());
    nodes.extend(crits);
    nodes.push(b.clone());
    let mut out = Vec::new();
    for w in nodes.windows(2) {
        let (sa, sb) = (p.raw_sign(&w[0]), p.raw_sign(&w[1]));
        if sa == sb || sa == 0 || sb == 0 {
            if sa == 0 {
                out.push(w[0].clone());
            }
            continue;
        }
        let prec = 320u32;
        let mut lo = Float::with_val(prec, &w[0]);
        let mut hi = Float::with_val(prec, &w[1]);
        for _ in 0..110 {
            let mid = Float::with_val(prec, &lo + &hi) / 2u32;
            let s = p.raw_sign(&mid);
            if s == sa {
                lo = mid;
            } else {
                hi = mid;
            }
            let width = Float::with_val(prec, &hi - &lo);
            let scale = Float::with_val(prec, &hi).abs() + Float::with_val(prec, 1e-300);
            if width < scale * Float::with_val(prec, 2.0f64.powi(-90)) {
                break;
            }
        }
        out.push(Float::with_val(prec, &lo + &hi) / 2u32);
    }
    out
}

/// Determinately resolve a same-sign cell: returns interior splitter points
/// (critical points of the derivative chain) or empty when the cell has no
/// interior sign structure.
fn settle_cell(chain: &[HpPoly], a: &Float, b: &Float) -> Vec<Float> {
    roots_in_cell(chain, 1, a, b, chain.len())
}

/// Exact Descartes count: for real-rooted polynomials the number of
/// positive roots equals the number of coefficient sign variations (and the
/// negative count is the variation count of `P(-x)`).
fn descartes_variations(signs: &[i32]) -> usize {
    let mut count = 0;
    let mut last = 0;
    for &s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Newton iteration from a seed; returns the converged point when it lands
/// cleanly (simple real roots have fat basins around the ratio estimates).
fn newton_candidate(p: &HpPoly, x0: Float) -> Option<Float> {
    let prec = 320u32;
    let mut x = Float::with_val(prec, &x0);
    for _ in 0..30 {
        let f = p.eval(&x, prec);
        let d = p.derivative_eval(&x, prec);
        if d == 0 {
            return None;
        }
        let step = f / d;
        let next = Float::with_val(prec, &x - &step);
        let scale = x.clone().abs() + Float::with_val(prec, 1e-300);
        let rel = (step.clone().abs() / scale).to_f64();
        x = next;
        if rel < 1e-50 {
            return Some(x);
        }
    }
    None
}

fn u_of(x: &Float) -> f64 {
    x.clone().abs().to_f64().log2()
}

/// Scan one sign of the axis for certified sign-change brackets.
///
/// Points start at the coefficient-ratio grid (plus guards); while brackets
/// are missing, the same-sign cells with the deepest cancellation dips are
/// mined with a golden-section search on the dip (which parks points right
/// inside hidden root clusters) plus midpoint subdivision.
fn scan_axis(
    p: &HpPoly,
    sign_axis: f64,
    expected: usize,
    ratios: &[f64],
    candidates: &[Float],
) -> Vec<Bracket> {
    if expected == 0 {
        return Vec::new();
    }
    // derivative chain for the determinate cell resolver (built on demand)
    let mut chain: Vec<HpPoly> = Vec::new();
    let u_lo = ratios.first().cloned().unwrap_or(0.0) - 2.0;
    let u_hi = ratios.last().cloned().unwrap_or(0.0) + 2.0;
    let mut cands: Vec<Float> = candidates
        .iter()
        .filter(|c| c.is_sign_negative() == (sign_axis < 0.0) && !c.is_zero())
        .cloned()
        .collect();
    cands.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cands.dedup_by(|a, b| {
        let d = Float::with_val(COORD_PREC, &*a - &*b).abs();
        let s = Float::with_val(COORD_PREC, &*b).abs();
        d <= s * Float::with_val(COORD_PREC, 2.0f64.powi(-58))
    });
    // sample points: guards, candidates, and midpoints between consecutive
    // candidates (the certification skeleton)
    let mut xs: Vec<Float> = Vec::new();
    let guard = |u: f64| -> Float {
        let mut g = Float::with_val(COORD_PREC, u).exp2();
        if sign_axis < 0.0 {
            g = -g;
        }
        g
    };
    xs.push(guard(if sign_axis < 0.0 { u_hi } else { u_lo }));
    for (i, c) in cands.iter().enumerate() {
        if i > 0 {
            xs.push(Float::with_val(COORD_PREC, c + &cands[i - 1]) / 2u32);
        }
        xs.push(c.clone());
    }
    xs.push(guard(if sign_axis < 0.0 { u_lo } else { u_hi }));
    // coarse u-grid filler for regions the candidates missed
    for w in ratios.windows(2) {
        xs.push(guard(0.5 * (w[0] + w[1])));
    }
    if cands.is_empty() {
        for &r in ratios {
            xs.push(guard(r - 0.3));
            xs.push(guard(r + 0.3));
        }
    }
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs.dedup_by(|a, b| a == b);
    let mut pts: Vec<ScanPoint> = xs
        .into_iter()
        .map(|x| {
            let (sign, mag) = p.probe(&x);
            ScanPoint {
                u: u_of(&x),
                x,
                sign,
                mag,
                clean_right: false,
            }
        })
        .collect();

    let debug = std::env::var("ZP_SCAN_DEBUG").is_ok();
    let count_brackets = |pts: &[ScanPoint]| {
        let mut c = 0usize;
        let mut last: Option<i32> = None;
        for q in pts {
            match q.sign {
                Some(s) => {
                    if let Some(prev) = last {
                        if prev != s {
                            c += 1;
                        }
                    }
                    last = Some(s);
                }
                None => {
                    c += 1;
                    last = None;
                }
            }
        }
        c
    };

    for _round in 0..60 {
        let found = count_brackets(&pts);
        if debug {
            eprintln!("round {_round}: found {found}/{expected}, pts {}", pts.len());
        }
        if found >= expected || pts.len() > 300_000 {
            break;
        }
        let mut cells: Vec<(f64, usize)> = Vec::new();
        for i in 0..pts.len() - 1 {
            if pts[i].clean_right {
                continue;
            }
            if let (Some(a), Some(b)) = (pts[i].sign, pts[i + 1].sign) {
                if a == b {
                    cells.push((pts[i].mag.min(pts[i + 1].mag), i));
                }
            }
        }
        if cells.is_empty() {
            break;
        }
        cells.sort_by(|x, y| x.0.total_cmp(&y.0));
        if debug && !cells.is_empty() {
            let (m, i) = cells[0];
            eprintln!("  worst cell dip {m} at u=[{}, {}]", pts[i].u, pts[i+1].u);
        }
        let deficit = expected - found;
        let budget = (4 * deficit).max(8).min(cells.len());
        let mut insertions: Vec<(usize, Vec<ScanPoint>)> = Vec::new();
        let mut finished: Vec<(usize, Vec<Float>)> = Vec::new();
        for &(_, i) in cells.iter().take(budget) {
            let xa = &pts[i].x;
            let xb = &pts[i + 1].x;
            let width = Float::with_val(COORD_PREC, xb - xa);
            let scale = Float::with_val(COORD_PREC, xb).abs() + Float::with_val(COORD_PREC, 1e-300);
            let rel = (width.clone() / &scale).to_f64().abs();
            if rel <= 1e-12 {
                // below mass-subdivision resolution: derivative-chain resolver
                if chain.is_empty() {
                    chain.push(HpPoly {
                        exact: p.exact.clone(),
                        cache: p.cache.clone(),
                        coeff_rel_err: p.coeff_rel_err,
                        base_prec: p.base_prec,
                        deg: p.deg,
                    });
                    while chain.last().unwrap().deg > 0 && chain.len() < 12 {
                        let d = chain.last().unwrap().derivative_poly();
                        chain.push(d);
                    }
                }
                let splits = settle_cell(&chain, xa, xb);
                finished.push((i, splits));
                continue;
            }
            // deficit-scaled uniform subdivision; u-space for wide cells,
            // x-space once the cell is relatively narrow
            let k = (4 * deficit).clamp(8, 256);
            let mut list: Vec<ScanPoint> = Vec::with_capacity(k);
            let (ua, ub) = (pts[i].u, pts[i + 1].u);
            let wide_u = (ub - ua).abs() > 0.5;
            for j in 1..=k {
                let f = j as f64 / (k + 1) as f64;
                let x = if wide_u {
                    let u = ua + (ub - ua) * f;
                    let mut v = Float::with_val(COORD_PREC, u).exp2();
                    if sign_axis < 0.0 {
                        v = -v;
                    }
                    v
                } else {
                    Float::with_val(COORD_PREC, xa + width.clone() * Float::with_val(COORD_PREC, f))
                };
                let (s, mag) = p.probe(&x);
                list.push(ScanPoint {
                    u: u_of(&x),
                    x,
                    sign: s,
                    mag,
                    clean_right: false,
                });
            }
            list.sort_by(|x, y| x.x.partial_cmp(&y.x).unwrap());
            insertions.push((i + 1, list));
        }
        // apply resolver outcomes and insertions from the right
        let mut edits: Vec<(usize, Option<Vec<ScanPoint>>)> = Vec::new();
        for (i, splits) in finished {
            if splits.is_empty() {
                edits.push((i, None)); // certified clean
            } else {
                let mut list = Vec::with_capacity(splits.len());
                for m in splits {
                    let (s, mag) = p.probe(&m);
                    list.push(ScanPoint {
                        u: u_of(&m),
                        x: m,
                        sign: s,
                        mag,
                        clean_right: false,
                    });
                }
                list.sort_by(|x, y| x.x.partial_cmp(&y.x).unwrap());
                edits.push((i + 1, Some(list)));
            }
        }
        for (at, news) in insertions {
            edits.push((at, Some(news)));
        }
        edits.sort_by_key(|(i, _)| std::cmp::Reverse(*i));
        for (at, news) in edits {
            match news {
                Some(list) => {
                    for (j, q) in list.into_iter().enumerate() {
                        pts.insert(at + j, q);
                    }
                }
                None => pts[at].clean_right = true,
            }
        }
    }

    if debug {
        let mut mono_bad = 0;
        for w in pts.windows(2) {
            if w[0].x >= w[1].x {
                mono_bad += 1;
            }
        }
        let harvested = count_brackets(&pts);
        eprintln!(
            "axis {sign_axis}: expected {expected}, harvested {harvested}, pts {}, order violations {mono_bad}",
            pts.len()
        );
        let mut last: Option<usize> = None;
        for (i, q) in pts.iter().enumerate() {
            match q.sign {
                Some(s) => {
                    if let Some(j) = last {
                        if pts[j].sign != Some(s) {
                            eprintln!("BR {:.12e} {:.12e}", pts[j].x.to_f64(), q.x.to_f64());
                        }
                    }
                    last = Some(i);
                }
                None => {
                    eprintln!("BR {:.12e} {:.12e}", q.x.to_f64(), q.x.to_f64());
                    last = None;
                }
            }
        }
    }
    // harvest brackets
    let mut out = Vec::new();
    let mut last_known: Option<usize> = None;
    for i in 0..pts.len() {
        match pts[i].sign {
            Some(s) => {
                if let Some(j) = last_known {
                    if pts[j].sign != Some(s) {
                        out.push(Bracket {
                            lo: pts[j].x.clone(),
                            hi: pts[i].x.clone(),
                        });
                    }
                }
                last_known = Some(i);
            }
            None => {
                out.push(Bracket {
                    lo: pts[i].x.clone(),
                    hi: pts[i].x.clone(),
                });
                last_known = None;
            }
        }
    }
    out
}

fn refine_bracket(p: &HpPoly, b: &Bracket, bits: u32) -> f64 {
    if b.lo == b.hi {
        return b.lo.to_f64();
    }
    let prec = COORD_PREC.max(bits + 64);
    let mut lo = Float::with_val(prec, &b.lo);
    let mut hi = Float::with_val(prec, &b.hi);
    let slo = p.sign_at(&lo).unwrap_or(0);
    for _ in 0..(bits as usize + 40) {
        let mid = Float::with_val(prec, &lo + &hi) / 2u32;
        match p.sign_at(&mid) {
            Some(s) if s == slo => lo = mid,
            Some(_) => hi = mid,
            None => {
                lo = mid.clone();
                hi = mid;
                break;
            }
        }
        // stop once the interval is far below f64 resolution of its scale
        let width = Float::with_val(prec, &hi - &lo);
        let scale = Float::with_val(prec, &hi).abs();
        if width < scale * Float::with_val(prec, 2.0f64.powi(-(bits as i32))) {
            break;
        }
    }
    // Newton polish at elevated precision
    let mut x = Float::with_val(prec, &lo + &hi) / 2u32;
    for _ in 0..3 {
        let f = p.eval(&x, prec);
        let d = p.derivative_eval(&x, prec);
        if d == 0 {
            break;
        }
        let step = f / d;
        let next = Float::with_val(prec, &x - &step);
        if next >= lo && next <= hi {
            x = next;
        } else {
            break;
        }
    }
    x.to_f64()
}

/// Options for [`isolate_real_roots`].
#[derive(Debug, Clone, Copy)]
pub struct IsolateOptions {
    /// target precision `2^-bits` (relative to the root scale)
    pub bits: u32,
}

impl Default for IsolateOptions {
    fn default() -> Self {
        IsolateOptions { bits: 60 }
    }
}

/// Isolate all real roots of an exact polynomial known (and verified) to be
/// real-rooted. Returns roots sorted ascending with multiplicities.
pub fn isolate_real_roots(p: &ExactPolynomial, opts: IsolateOptions) -> Result<Vec<f64>> {
    let poly = p.as_poly().trim();
    let deg = poly.deg();
    if deg == 0 {
        return Ok(vec![]);
    }
    if deg <= STURM_DEGREE_LIMIT {
        isolate_via_sturm(&poly, opts)
    } else {
        isolate_via_certified_scan(&poly, opts)
    }
}

fn isolate_via_sturm(poly: &RatPoly, opts: IsolateOptions) -> Result<Vec<f64>> {
    let deg = poly.deg();
    // strip exact zero roots up front
    let (stripped, zero_mult) = strip_zero_roots(&poly.c);
    let poly = &RatPoly::new(stripped);
    let mut roots: Vec<f64> = vec![0.0; zero_mult];
    let mut certified = zero_mult;
    for (factor, mult) in squarefree_decomposition(poly) {
        let ip = IntPoly::from_rat(&factor);
        let fdeg = ip.deg();
        if fdeg == 0 {
            continue;
        }
        let chain = SturmChain::new(&ip);
        let total = chain.count_all();
        certified += total * mult;
        if total < fdeg {
            return Err(Error::NotRealRooted {
                found: roots.len() + total,
                degree: deg,
            });
        }
        // bound and isolate by Sturm bisection on rational intervals; the
        // Cauchy bound exponent can be large (heavy-tailed root families),
        // so the endpoint is a big integer power of two
        let (_l2lo, l2hi) = log2_bounds(&ip.c);
        let bound = BigInt::from(1) << (l2hi.max(1.0).ceil() as usize);
        let mut stack = vec![(
            Rat::new(-&bound, BigInt::from(1)),
            Rat::new(bound.clone(), BigInt::from(1)),
        )];
        let hp_poly = HpPoly::from_bigints(ip.c.clone());
        while let Some((a, b)) = stack.pop() {
            let cnt = chain.count_in(&a, &b);
            if cnt == 0 {
                continue;
            }
            if cnt == 1 {
                let r = refine_sturm_bracket(&hp_poly, &chain, &a, &b, opts.bits);
                for _ in 0..mult {
                    roots.push(r);
                }
                continue;
            }
            let mid = (&a + &b) / Rat::new(BigInt::from(2), BigInt::from(1));
            // a root exactly at mid belongs to the left half (count_in is
            // half-open (a, b])
            stack.push((a, mid.clone()));
            stack.push((mid, b));
        }
    }
    if certified < deg {
        return Err(Error::NotRealRooted {
            found: certified,
            degree: deg,
        });
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

fn refine_sturm_bracket(
    p: &HpPoly,
    chain: &SturmChain,
    a: &Rat,
    b: &Rat,
    bits: u32,
) -> f64 {
    // Sturm-bisect the rational interval a few times to localize enough for
    // a sign-based refinement, then hand over to the certified refiner.
    let two = Rat::new(BigInt::from(2), BigInt::from(1));
    let mut a = a.clone();
    let mut b = b.clone();
    for _ in 0..2 {
        let mid = (&a + &b) / &two;
        if chain.count_in(&a, &mid) == 1 {
            b = mid;
        } else {
            a = mid;
        }
    }
    let bracket = Bracket {
        lo: hp::real_from_rat(COORD_PREC, &a),
        hi: hp::real_from_rat(COORD_PREC, &b),
    };
    refine_bracket(p, &bracket, bits)
}

fn isolate_via_certified_scan(poly: &RatPoly, opts: IsolateOptions) -> Result<Vec<f64>> {
    let ip = IntPoly::from_rat(poly);
    isolate_scan_core(
        HpPoly::from_bigints(strip_zero_roots(&ip.c).0),
        strip_zero_roots(&ip.c).1,
        ip.deg(),
        opts,
    )
}

fn strip_zero_roots<T: Clone + Zero + PartialEq>(c: &[T]) -> (Vec<T>, usize) {
    let k = c.iter().position(|v| !v.is_zero()).unwrap_or(0);
    (c[k..].to_vec(), k)
}

fn isolate_scan_core(
    hp_poly: HpPoly,
    zero_mult: usize,
    deg: usize,
    opts: IsolateOptions,
) -> Result<Vec<f64>> {
    let expected = deg - zero_mult;
    if expected == 0 {
        return Ok(vec![0.0; zero_mult]);
    }
    // coefficient signs for the exact Descartes counts
    let coeff_signs: Vec<i32> = match &hp_poly.exact {
        Some(c) => c
            .iter()
            .map(|v| match v.sign() {
                Sign::Plus => 1,
                Sign::Minus => -1,
                Sign::NoSign => 0,
            })
            .collect(),
        None => hp_poly.cache.borrow()[0]
            .1
            .iter()
            .map(|v| {
                if v.is_zero() {
                    0
                } else if v.is_sign_negative() {
                    -1
                } else {
                    1
                }
            })
            .collect(),
    };
    let v_pos = descartes_variations(&coeff_signs);
    let alt: Vec<i32> = coeff_signs
        .iter()
        .enumerate()
        .map(|(k, s)| if k % 2 == 1 { -s } else { *s })
        .collect();
    let v_neg = descartes_variations(&alt);
    // for real-rooted polynomials Descartes is exact per axis
    if v_pos + v_neg < expected {
        return Err(Error::NotRealRooted {
            found: v_pos + v_neg + zero_mult,
            degree: deg,
        });
    }
    let log2c: Vec<f64> = match &hp_poly.exact {
        Some(c) => c
            .iter()
            .map(|v| {
                if v.is_zero() {
                    f64::NEG_INFINITY
                } else {
                    crate::hp::ln_bigint(v) / std::f64::consts::LN_2
                }
            })
            .collect(),
        None => hp_poly.cache.borrow()[0]
            .1
            .iter()
            .map(|v| {
                if v.is_zero() {
                    f64::NEG_INFINITY
                } else {
                    v.get_exp().unwrap_or(0) as f64
                }
            })
            .collect(),
    };
    let ratios = ratio_grid(&log2c);
    // Newton candidates from the ratio estimates, per axis
    let mut candidates: Vec<Float> = Vec::new();
    for (axis, count) in [(-1.0f64, v_neg), (1.0f64, v_pos)] {
        if count == 0 {
            continue;
        }
        for &r in &ratios {
            let mut seed = Float::with_val(COORD_PREC, r).exp2();
            if axis < 0.0 {
                seed = -seed;
            }
            if let Some(c) = newton_candidate(&hp_poly, seed) {
                if c.is_sign_negative() == (axis < 0.0) && !c.is_zero() {
                    candidates.push(c);
                }
            }
        }
    }
    let mut brackets = scan_axis(&hp_poly, -1.0, v_neg, &ratios, &candidates);
    let neg_found = brackets.len();
    brackets.extend(scan_axis(&hp_poly, 1.0, v_pos, &ratios, &candidates));
    if brackets.len() != expected || neg_found != v_neg {
        return Err(Error::NotRealRooted {
            found: brackets.len() + zero_mult,
            degree: deg,
        });
    }
    let mut roots: Vec<f64> = brackets
        .iter()
        .map(|b| refine_bracket(&hp_poly, b, opts.bits))
        .collect();
    roots.extend(std::iter::repeat(0.0).take(zero_mult));
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

/// Isolation for the float-coefficient families; the count-vs-degree result
/// is numerical evidence at the coefficients' precision.
pub fn isolate_real_roots_float(p: &FloatPolynomial, opts: IsolateOptions) -> Result<Vec<f64>> {
    // strip zero coefficients at the bottom
    let k = p
        .coeffs
        .iter()
        .position(|c| !c.is_zero())
        .unwrap_or(0);
    let deg = {
        let mut d = p.coeffs.len() - 1;
        while d > 0 && p.coeffs[d].is_zero() {
            d -= 1;
        }
        d
    };
    let hp_poly = HpPoly::from_floats(&p.coeffs[k..=deg], p.prec.max(256));
    isolate_scan_core(hp_poly, k, deg, opts)
}

// ---------------------------------------------------------------------------
// empirical measures and KS distance

/// Which infinite endpoint absorbs the deficiency mass `(n - deg P)/n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfinityEnd {
    Neg,
    Pos,
}

/// The empirical zero distribution: equal weight `1/n` per root plus the
/// remaining mass at infinity.
#[derive(Debug, Clone)]
pub struct EmpiricalMeasure {
    /// sorted ascending, multiplicities preserved
    pub roots: Vec<f64>,
    pub n: usize,
    pub mass_at_infinity: f64,
    pub infinity_end: InfinityEnd,
}

impl EmpiricalMeasure {
    pub fn total_mass(&self) -> f64 {
        self.roots.len() as f64 / self.n as f64 + self.mass_at_infinity
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let below = self.roots.partition_point(|r| *r <= x);
        let atom = if self.infinity_end == InfinityEnd::Neg {
            self.mass_at_infinity
        } else {
            0.0
        };
        below as f64 / self.n as f64 + atom
    }
}

/// Build the empirical measure of `P` with explicit normalizer `n >= deg P`.
pub fn empirical_measure(roots: &[f64], n: usize, end: InfinityEnd) -> EmpiricalMeasure {
    let mut roots = roots.to_vec();
    roots.sort_by(f64::total_cmp);
    let mass = (n - roots.len()) as f64 / n as f64;
    EmpiricalMeasure {
        roots,
        n,
        mass_at_infinity: mass,
        infinity_end: end,
    }
}

/// Kolmogorov–Smirnov distance between an empirical measure and a limit law.
///
/// The laws with unbounded support are compared through the compactifying
/// map implicitly: the KS statistic is invariant under strictly monotone
/// reparametrization, so only the boundary atoms need explicit handling.
pub fn ks_distance(em: &EmpiricalMeasure, law: &LimitLaw) -> Result<f64> {
    let mut d: f64 = 0.0;
    // boundary: mass at the infinite end
    match em.infinity_end {
        InfinityEnd::Neg => {
            d = d.max((em.mass_at_infinity - law.atom_at_infinity).abs());
        }
        InfinityEnd::Pos => {
            d = d.max((em.mass_at_infinity - law.atom_at_infinity).abs());
        }
    }
    let base_atom = if em.infinity_end == InfinityEnd::Neg {
        em.mass_at_infinity
    } else {
        0.0
    };
    let n = em.n as f64;
    // cumulative law CDF along the sorted roots
    let mut flaw = law.cdf(em.roots[0])?;
    let mut i = 0usize;
    while i < em.roots.len() {
        // collapse ties
        let mut j = i;
        while j + 1 < em.roots.len() && em.roots[j + 1] == em.roots[i] {
            j += 1;
        }
        let f_at = base_atom + (j + 1) as f64 / n;
        let f_before = base_atom + i as f64 / n;
        d = d.max((flaw - f_at).abs()).max((flaw - f_before).abs());
        if j + 1 < em.roots.len() {
            let seg = law_cdf_increment(law, em.roots[i], em.roots[j + 1])?;
            flaw += seg;
        }
        i = j + 1;
    }
    Ok(d)
}

fn law_cdf_increment(law: &LimitLaw, a: f64, b: f64) -> Result<f64> {
    // closed-form CDFs are cheap; others integrate the density segment
    match law.kind {
        crate::limitlaws::LawKind::Eulerian | crate::limitlaws::LawKind::Arcsine => {
            Ok(law.cdf(b)? - law.cdf(a)?)
        }
        _ => {
            let mut inc = law.integrate_against(|_| 1.0, a, b, 1e-9)?;
            if a < 0.0 && b >= 0.0 {
                inc += law.atom_at_zero;
            }
            Ok(inc)
        }
    }
}

/// KS distance between two empirical measures (metric spot checks).
pub fn ks_distance_empirical(a: &EmpiricalMeasure, b: &EmpiricalMeasure) -> f64 {
    let mut pts: Vec<f64> = a.roots.iter().chain(b.roots.iter()).cloned().collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let mut d: f64 = (a.mass_at_infinity - b.mass_at_infinity).abs();
    for &x in &pts {
        d = d.max((a.cdf(x) - b.cdf(x)).abs());
        let eps = (x.abs() * 1e-12).max(1e-300);
        d = d.max((a.cdf(x - eps) - b.cdf(x - eps)).abs());
    }
    d
}

/// Exact Taylor shift `P(x) -> P(x + A)` for moving positive roots into the
/// nonpositive half-line before profile analysis.
pub fn shift_for_positive_roots(p: &ExactPolynomial, a: &Rat) -> ExactPolynomial {
    ExactPolynomial::new(p.as_poly().taylor_shift(a).c)
}

/// Write roots as CSV `index,root,multiplicity`.
pub fn write_roots_csv<W: std::io::Write>(w: &mut W, roots: &[f64]) -> Result<()> {
    writeln!(w, "index,root,multiplicity")?;
    let mut i = 0usize;
    let mut idx = 0usize;
    while i < roots.len() {
        let mut j = i;
        while j + 1 < roots.len() && roots[j + 1] == roots[i] {
            j += 1;
        }
        writeln!(w, "{},{},{}", idx, roots[i], j - i + 1)?;
        idx += 1;
        i = j + 1;
    }
    Ok(())
}

/// Write an empirical measure as CSV `root,cumulative_weight`.
pub fn write_empirical_csv<W: std::io::Write>(w: &mut W, em: &EmpiricalMeasure) -> Result<()> {
    writeln!(w, "root,cumulative_weight")?;
    if em.infinity_end == InfinityEnd::Neg && em.mass_at_infinity > 0.0 {
        writeln!(w, "-inf,{}", em.mass_at_infinity)?;
    }
    for (i, r) in em.roots.iter().enumerate() {
        writeln!(w, "{},{}", r, em.cdf(*r).max((i + 1) as f64 / em.n as f64))?;
    }
    if em.infinity_end == InfinityEnd::Pos && em.mass_at_infinity > 0.0 {
        writeln!(w, "+inf,1")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use crate::families;
    use crate::limitlaws;

    #[test]
    fn isolates_small_cubic() {
        // (x+1)(x+2)(x+3)
        let p = ExactPolynomial::from_i64(&[6, 11, 6, 1]);
        let roots = isolate_real_roots(&p, IsolateOptions::default()).unwrap();
        assert_eq!(roots.len(), 3);
        for (r, want) in roots.iter().zip([-3.0, -2.0, -1.0]) {
            assert!((r - want).abs() < 1e-12);
        }
    }

    #[test]
    fn multiplicities_via_squarefree() {
        // (x+1)^2 (x-2)
        let p = ExactPolynomial::from_i64(&[-2, -3, 0, 1]);
        let roots = isolate_real_roots(&p, IsolateOptions::default()).unwrap();
        assert_eq!(roots.len(), 3);
        assert!((roots[0] + 1.0).abs() < 1e-12);
        assert!((roots[1] + 1.0).abs() < 1e-12);
        assert!((roots[2] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_complex_roots() {
        // x^2 + 1
        let p = ExactPolynomial::from_i64(&[1, 0, 1]);
        match isolate_real_roots(&p, IsolateOptions::default()) {
            Err(Error::NotRealRooted { found, degree }) => {
                assert_eq!((found, degree), (0, 2));
            }
            other => panic!("expected NotRealRooted, got {other:?}"),
        }
    }

    #[test]
    fn touchard_scaled_roots_in_support() {
        // roots of T_5(5x): 4 negative + zero, all in (-e, 0]
        let t = families::touchard_poly(5).scale_argument(&rat_int(5));
        let roots = isolate_real_roots(&t, IsolateOptions::default()).unwrap();
        assert_eq!(roots.len(), 5);
        assert_eq!(*roots.last().unwrap(), 0.0);
        assert!(roots[0] > -std::f64::consts::E);
        // oracle: bisection of the sign changes of the f64 polynomial
        let c = t.as_poly().to_f64();
        let eval = |x: f64| c.iter().rev().fold(0.0, |acc, v| acc * x + v);
        for r in &roots[..4] {
            assert!(eval(r - 1e-9) * eval(r + 1e-9) <= 0.0, "root {r} not bracketed");
        }
    }

    #[test]
    fn free_mult_poisson_rank_one_roots() {
        // P_2(x; 2, 1) has roots {1/2, 1}
        let p = families::free_mult_poisson_poly(2, &rat_int(2), 1).unwrap();
        let roots = isolate_real_roots(&p, IsolateOptions::default()).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - 0.5).abs() < 1e-12);
        assert!((roots[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sturm_counts_for_certified_families() {
        let n = 24;
        assert_eq!(sturm_distinct_real_roots(&families::touchard_poly(n)), n);
        assert_eq!(sturm_distinct_real_roots(&families::fubini_poly(n)), n);
        assert_eq!(
            sturm_distinct_real_roots(&families::eulerian_poly(n)),
            n - 1
        );
    }

    #[test]
    fn large_degree_certified_scan() {
        // degree 150 forces the scan path
        let n = 150;
        let t = families::touchard_poly(n);
        let roots = isolate_real_roots(&t, IsolateOptions::default()).unwrap();
        assert_eq!(roots.len(), n);
        // all nonpositive, scaled support bound after x -> x/n is (-e, 0]
        assert!(roots.iter().all(|r| *r <= 0.0));
        assert!(roots[0] / n as f64 > -std::f64::consts::E);
    }

    #[test]
    fn hermite_symmetric_roots() {
        let h = families::hermite_poly(30);
        let roots = isolate_real_roots(&h, IsolateOptions::default()).unwrap();
        assert_eq!(roots.len(), 30);
        for i in 0..15 {
            assert!(
                (roots[i] + roots[29 - i]).abs() < 1e-10,
                "asymmetry at {i}"
            );
        }
    }

    #[test]
    fn float_family_roots() {
        let g = families::free_mult_hermite_poly(40, &rat(1, 40)).unwrap();
        let roots = isolate_real_roots_float(&g, IsolateOptions::default()).unwrap();
        assert_eq!(roots.len(), 40);
        assert!(roots.iter().all(|r| *r > 0.0));
    }

    #[test]
    fn empirical_measure_bookkeeping() {
        let em = empirical_measure(&[-2.0, -1.0], 2, InfinityEnd::Neg);
        assert_eq!(em.mass_at_infinity, 0.0);
        assert_eq!(em.cdf(-1.5), 0.5);
        let em = empirical_measure(&[-1.0], 3, InfinityEnd::Neg);
        assert!((em.mass_at_infinity - 2.0 / 3.0).abs() < 1e-15);
        assert!((em.total_mass() - 1.0).abs() < 1e-15);
        // eulerian degree bookkeeping
        let e = families::eulerian_poly(10);
        let roots = isolate_real_roots(&e, IsolateOptions::default()).unwrap();
        let em = empirical_measure(&roots, 10, InfinityEnd::Neg);
        assert_eq!(em.roots.len(), 9);
        assert!((em.mass_at_infinity - 0.1).abs() < 1e-15);
    }

    #[test]
    fn ks_quantile_construction() {
        // measure sampled at law quantiles (k - 1/2)/n has KS <= 1/(2n) + tol
        let law = limitlaws::law_semicircle();
        let n = 50;
        let mut roots = Vec::new();
        let mut x = -2.0;
        for k in 1..=n {
            let target = (k as f64 - 0.5) / n as f64;
            // invert the CDF by bisection
            let mut lo = x;
            let mut hi = 2.0;
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if law.cdf(mid).unwrap() < target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            x = 0.5 * (lo + hi);
            roots.push(x);
        }
        let em = empirical_measure(&roots, n, InfinityEnd::Neg);
        let d = ks_distance(&em, &law).unwrap();
        assert!(d <= 0.5 / n as f64 + 1e-6, "d = {d}");
    }

    #[test]
    fn ks_metric_spot_checks() {
        let a = empirical_measure(&[-1.0, -0.5, -0.2], 3, InfinityEnd::Neg);
        let b = empirical_measure(&[-0.9, -0.4], 3, InfinityEnd::Neg);
        let c = empirical_measure(&[-1.5, -0.6, -0.1], 3, InfinityEnd::Neg);
        let dab = ks_distance_empirical(&a, &b);
        let dba = ks_distance_empirical(&b, &a);
        assert_eq!(dab, dba);
        let dac = ks_distance_empirical(&a, &c);
        let dbc = ks_distance_empirical(&b, &c);
        assert!(dac <= dab + dbc + 1e-15);
        assert_eq!(ks_distance_empirical(&a, &a), 0.0);
    }

    #[test]
    fn taylor_shift_roots() {
        let p = ExactPolynomial::from_i64(&[-1, 0, 1]); // x^2 - 1
        let shifted = shift_for_positive_roots(&p, &rat_int(1));
        assert_eq!(shifted.coeffs, ExactPolynomial::from_i64(&[0, 2, 1]).coeffs);
        let roots = isolate_real_roots(&shifted, IsolateOptions::default()).unwrap();
        assert!((roots[0] + 2.0).abs() < 1e-12 && roots[1].abs() < 1e-12);
        // shift then unshift returns the original roots
        let back = shift_for_positive_roots(&shifted, &rat_int(-1));
        let orig = isolate_real_roots(&back, IsolateOptions::default()).unwrap();
        assert!((orig[0] + 1.0).abs() < 1e-12 && (orig[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hermite_shift_window() {
        // He_4(2x) shifted by A = 2 has all roots in [-4, 0]
        let h = families::hermite_poly(4).scale_argument(&rat_int(2));
        let shifted = shift_for_positive_roots(&h, &rat_int(2));
        let roots = isolate_real_roots(&shifted, IsolateOptions::default()).unwrap();
        assert!(roots.iter().all(|r| *r >= -4.0 && *r <= 0.0), "{roots:?}");
    }
}
