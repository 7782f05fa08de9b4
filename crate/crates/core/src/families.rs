//! Exact coefficient vectors for every polynomial family covered by the
//! library, normalized exactly as the rescaled versions require.
//!
//! All combinatorial families are produced by recurrences in big-integer
//! arithmetic (the closed forms are alternating sums with catastrophic
//! cancellation). Only the little q-Laguerre and the free multiplicative
//! Hermite families carry transcendental coefficients; those return
//! [`FloatPolynomial`] at MPFR precision [`crate::hp::PREC`].

use num_traits::{One, Signed, Zero};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exact::{
    self, big, binomial, binomial_rat, factorial, falling, rat_int, rising, Rat, RatPoly,
};
use crate::hp::{self, Real};

/// Degree-indexed vector of exact rational coefficients `a_{k:n}`,
/// `k = 0..=n`; the trailing coefficient may be zero (degree at most `n`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactPolynomial {
    pub coeffs: Vec<Rat>,
    /// Declared degree bound; `coeffs.len() == n + 1`.
    pub n: usize,
}

impl ExactPolynomial {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        let n = coeffs.len().saturating_sub(1);
        ExactPolynomial { coeffs, n }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| rat_int(v)).collect())
    }

    pub fn as_poly(&self) -> RatPoly {
        RatPoly::new(self.coeffs.clone())
    }

    pub fn deg(&self) -> usize {
        self.as_poly().deg()
    }

    /// Substitute `x -> s x`: multiplies `a_k` by `s^k` exactly. The one code
    /// path shared by every rescaled family.
    pub fn scale_argument(&self, s: &Rat) -> ExactPolynomial {
        ExactPolynomial::new(self.as_poly().scale_argument(s).c)
    }

    /// Multiply every coefficient by the same exact factor.
    pub fn scale_coeffs(&self, s: &Rat) -> ExactPolynomial {
        ExactPolynomial::new(self.coeffs.iter().map(|v| v * s).collect())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.as_poly().eval(x)
    }

    /// Newton log-concavity `a_k^2 >= a_{k-1} a_{k+1}` on interior indices,
    /// checked exactly; meaningful when all coefficients are nonnegative.
    pub fn is_log_concave(&self) -> bool {
        for k in 1..self.n {
            if self.coeffs[k].pow(2) < &self.coeffs[k - 1] * &self.coeffs[k + 1] {
                return false;
            }
        }
        true
    }

    pub fn all_nonnegative(&self) -> Result<()> {
        for (index, c) in self.coeffs.iter().enumerate() {
            if c.is_negative() {
                return Err(Error::NegativeCoefficient { index });
            }
        }
        Ok(())
    }
}

/// Coefficient vector in high-precision floats, for the two transcendental
/// families.
#[derive(Debug, Clone)]
pub struct FloatPolynomial {
    pub coeffs: Vec<Real>,
    pub n: usize,
    pub prec: u32,
}

impl FloatPolynomial {
    pub fn new(coeffs: Vec<Real>, prec: u32) -> Self {
        let n = coeffs.len().saturating_sub(1);
        FloatPolynomial { coeffs, n, prec }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64()).collect()
    }
}

/// Variable rescale recorded by [`FamilySpec`]; metadata only, applied via
/// [`ExactPolynomial::scale_argument`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scaling {
    None,
    /// `x -> n x`
    TimesN,
    /// `x -> sqrt(n) x` (Hermite; applied to roots rather than coefficients)
    TimesSqrtN,
}

/// Family identifier plus parameters, as used by the CLI and file headers.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Stirling1,
    Touchard,
    Fubini,
    Eulerian,
    Narayana,
    BinomialPower { gamma: u32 },
    Hypergeometric { a: Vec<Rat>, b: Vec<Rat> },
    Laguerre { gamma: Rat },
    Hermite,
    Jacobi { u: Rat, v: Rat },
    LittleQLaguerre { a: Rat, lambda: Rat },
    FreeMultHermite { sigma2: Rat },
    FreeMultPoisson { b: Rat, c: u32 },
}

impl Family {
    pub fn id(&self) -> &'static str {
        match self {
            Family::Stirling1 => "stirling1",
            Family::Touchard => "touchard",
            Family::Fubini => "fubini",
            Family::Eulerian => "eulerian",
            Family::Narayana => "narayana",
            Family::BinomialPower { .. } => "binomial_power",
            Family::Hypergeometric { .. } => "hypergeometric",
            Family::Laguerre { .. } => "laguerre",
            Family::Hermite => "hermite",
            Family::Jacobi { .. } => "jacobi",
            Family::LittleQLaguerre { .. } => "little_q_laguerre",
            Family::FreeMultHermite { .. } => "free_mult_hermite",
            Family::FreeMultPoisson { .. } => "free_mult_poisson",
        }
    }

    pub fn params(&self) -> Vec<(String, String)> {
        match self {
            Family::BinomialPower { gamma } => vec![("gamma".into(), gamma.to_string())],
            Family::Hypergeometric { a, b } => vec![
                ("a".into(), join_rats(a)),
                ("b".into(), join_rats(b)),
            ],
            Family::Laguerre { gamma } => vec![("gamma".into(), gamma.to_string())],
            Family::Jacobi { u, v } => {
                vec![("u".into(), u.to_string()), ("v".into(), v.to_string())]
            }
            Family::LittleQLaguerre { a, lambda } => vec![
                ("a".into(), a.to_string()),
                ("lambda".into(), lambda.to_string()),
            ],
            Family::FreeMultHermite { sigma2 } => vec![("sigma2".into(), sigma2.to_string())],
            Family::FreeMultPoisson { b, c } => {
                vec![("b".into(), b.to_string()), ("c".into(), c.to_string())]
            }
            _ => vec![],
        }
    }
}

fn join_rats(v: &[Rat]) -> String {
    v.iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

/// A family instance: which family, at which degree parameter, with which
/// recorded rescale.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
    pub scaling: Scaling,
}

/// `S_n(x) = x(x+1)...(x+n-1)`, unsigned Stirling numbers of the first kind.
/// `n = 0` is the empty product (constant 1), not an error.
pub fn stirling1_poly(n: usize) -> ExactPolynomial {
    // s(n,k) = s(n-1,k-1) + (n-1) s(n-1,k)
    let mut row = vec![big(0); n + 1];
    row[0] = big(1);
    for m in 1..=n {
        for k in (1..=m).rev() {
            let carry = &row[k] * big((m - 1) as i64);
            row[k] = &row[k - 1] + carry;
        }
        row[0] = big(0);
    }
    ExactPolynomial::new(row.into_iter().map(Rat::from_integer).collect())
}

/// Touchard polynomial coefficients: Stirling numbers of the second kind,
/// `S(n,k) = k S(n-1,k) + S(n-1,k-1)`.
pub fn touchard_poly(n: usize) -> ExactPolynomial {
    let mut row = vec![big(0); n + 1];
    row[0] = big(1);
    for m in 1..=n {
        for k in (1..=m).rev() {
            let carry = &row[k] * big(k as i64);
            row[k] = &row[k - 1] + carry;
        }
        row[0] = big(0);
    }
    ExactPolynomial::new(row.into_iter().map(Rat::from_integer).collect())
}

/// Fubini polynomial coefficients `k! S(n,k)`.
pub fn fubini_poly(n: usize) -> ExactPolynomial {
    let t = touchard_poly(n);
    let mut fact = Rat::one();
    let coeffs = t
        .coeffs
        .into_iter()
        .enumerate()
        .map(|(k, v)| {
            if k > 0 {
                fact *= rat_int(k as i64);
            }
            v * &fact
        })
        .collect();
    ExactPolynomial::new(coeffs)
}

/// Eulerian polynomial `E_n(x)`, degree exactly `n-1`;
/// `<n,j> = (j+1)<n-1,j> + (n-j)<n-1,j-1>`.
pub fn eulerian_poly(n: usize) -> ExactPolynomial {
    assert!(n >= 1, "eulerian_poly requires n >= 1");
    let mut row = vec![big(0); n];
    row[0] = big(1);
    for m in 2..=n {
        for j in (1..m).rev() {
            let keep = &row[j] * big((j + 1) as i64);
            let carry = &row[j - 1] * big((m - j) as i64);
            row[j] = keep + carry;
        }
        // j = 0 stays 1
    }
    ExactPolynomial::new(row.into_iter().map(Rat::from_integer).collect())
}

/// Narayana polynomial `N_n(x) = sum_{k=1}^n N_{n,k-1} x^k`,
/// `N_{n,k} = C(n,k) C(n-1,k) / (k+1)`.
pub fn narayana_poly(n: usize) -> ExactPolynomial {
    let mut coeffs = vec![Rat::zero(); n + 1];
    for k in 1..=n {
        let idx = k - 1;
        let num = binomial(n, idx) * binomial(n - 1, idx);
        coeffs[k] = Rat::new(num, big((idx + 1) as i64));
    }
    ExactPolynomial::new(coeffs)
}

/// `B_{n,gamma}(x) = sum C(n,k)^gamma x^k` for integer `gamma >= 2` (the
/// range with proven real-rootedness).
pub fn binomial_power_poly(n: usize, gamma: u32) -> Result<ExactPolynomial> {
    if gamma < 2 {
        return Err(Error::Domain(format!(
            "binomial powers need integer gamma >= 2 (real-rootedness hypothesis), got {gamma}"
        )));
    }
    Ok(binomial_power_poly_unchecked(n, gamma))
}

/// Same as [`binomial_power_poly`] without the `gamma >= 2` gate; used by the
/// CLI for exploratory parameters with real-rootedness left unverified.
pub fn binomial_power_poly_unchecked(n: usize, gamma: u32) -> ExactPolynomial {
    let coeffs = (0..=n)
        .map(|k| Rat::from_integer(binomial(n, k).pow(gamma)))
        .collect();
    ExactPolynomial::new(coeffs)
}

/// Rescaled hypergeometric polynomial with coefficients
/// `a_{k:n} = C(n,k) n^{(i-j)(n-k)} (b n)^(falling n-k) / (a n)^(falling n-k)`.
///
/// Accepts per-`n` parameter sequences; the boundary `b_s = 1 - 1/n` (where
/// the top falling factorial vanishes) is fine because falling factorials are
/// exact products.
pub fn hypergeometric_poly(n: usize, a: &[Rat], b: &[Rat]) -> Result<ExactPolynomial> {
    let nn = rat_int(n as i64);
    let low = Rat::one() - Rat::new(big(1), big(n as i64));
    for (which, list) in [("a", a), ("b", b)] {
        for (s, p) in list.iter().enumerate() {
            if !p.is_negative() && *p < low {
                return Err(Error::Domain(format!(
                    "hypergeometric parameter {which}_{} = {p} lies in [0, 1-1/n); \
                     hypothesis a_s, b_s not in [0,1) (up to the 1-1/n boundary) violated",
                    s + 1
                )));
            }
        }
    }
    let i = a.len() as i64;
    let j = b.len() as i64;
    let mut coeffs = vec![Rat::zero(); n + 1];
    for k in 0..=n {
        let m = n - k;
        let mut num = Rat::from_integer(binomial(n, k));
        // n^{(i-j)(n-k)}
        let e = (i - j) * m as i64;
        if e >= 0 {
            num *= exact::pow_rat(&nn, e as usize);
        } else {
            num /= exact::pow_rat(&nn, (-e) as usize);
        }
        for bs in b {
            num *= falling(&(bs * &nn), m);
        }
        let mut den = Rat::one();
        for (s, asv) in a.iter().enumerate() {
            let x = asv * &nn;
            // exact product with per-factor zero detection
            for l in 0..m {
                let f = &x - rat_int(l as i64);
                if f.is_zero() {
                    return Err(Error::VanishingFactor {
                        param_index: s + 1,
                        step: l,
                        factor: format!("(a_{} n - {})", s + 1, l),
                    });
                }
                den *= f;
            }
        }
        coeffs[k] = num / den;
    }
    Ok(ExactPolynomial::new(coeffs))
}

/// Associated Laguerre polynomial
/// `L_n^(gamma)(x) = sum (-1)^k C(n+gamma, n-k) x^k / k!`, rational `gamma`.
/// Binomials with arbitrary rational top are exact products (no gamma
/// function, hence no poles to dodge).
pub fn laguerre_poly(n: usize, gamma: &Rat) -> ExactPolynomial {
    let top = gamma + rat_int(n as i64);
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut kfact = Rat::one();
    for k in 0..=n {
        if k > 0 {
            kfact *= rat_int(k as i64);
        }
        let mut v = binomial_rat(&top, n - k) / &kfact;
        if k % 2 == 1 {
            v = -v;
        }
        coeffs.push(v);
    }
    ExactPolynomial::new(coeffs)
}

/// Sign-flipped Laguerre `L_n^(gamma)(-x)`: all coefficients nonnegative for
/// `gamma > -1`, the version profile work runs on.
pub fn laguerre_poly_nonneg(n: usize, gamma: &Rat) -> ExactPolynomial {
    let l = laguerre_poly(n, gamma);
    let coeffs = l
        .coeffs
        .into_iter()
        .enumerate()
        .map(|(k, v)| if k % 2 == 1 { -v } else { v })
        .collect();
    ExactPolynomial::new(coeffs)
}

/// Probabilist Hermite polynomial `He_n`, coefficients
/// `n! (-1)^m / (m! 2^m (n-2m)!)` at `x^{n-2m}`.
pub fn hermite_poly(n: usize) -> ExactPolynomial {
    let nf = factorial(n);
    let mut coeffs = vec![Rat::zero(); n + 1];
    for m in 0..=n / 2 {
        let den = factorial(m) * (big(2).pow(m as u32)) * factorial(n - 2 * m);
        let mut v = Rat::new(nf.clone(), den);
        if m % 2 == 1 {
            v = -v;
        }
        coeffs[n - 2 * m] = v;
    }
    ExactPolynomial::new(coeffs)
}

/// Jacobi polynomial `J_n^(u,v)` in the monomial basis, from the 2F1 sum with
/// argument `(1-x)/2`, expanded exactly.
pub fn jacobi_poly(n: usize, u: &Rat, v: &Rat) -> Result<ExactPolynomial> {
    let neg_one = rat_int(-1);
    if u <= &neg_one || v <= &neg_one {
        return Err(Error::Domain(format!(
            "jacobi requires u, v > -1, got u={u}, v={v}"
        )));
    }
    let pre = rising(&(u + Rat::one()), n) / Rat::from_integer(factorial(n));
    // (1-x)/2 as a polynomial
    let half_one_minus_x = RatPoly::new(vec![exact::rat(1, 2), exact::rat(-1, 2)]);
    let mut acc = RatPoly::zero(n + 1);
    let mut term_pow = RatPoly::from_i64(&[1]);
    let mut factor = Rat::one();
    for k in 0..=n {
        if k > 0 {
            // incremental rising factorials
            let kk = rat_int((k - 1) as i64);
            factor *= &(rat_int(-(n as i64)) + &kk)
                * &(Rat::one() + u + v + rat_int(n as i64) + &kk)
                / (&(u + Rat::one() + &kk) * rat_int(k as i64));
            term_pow = term_pow.mul(&half_one_minus_x);
        }
        acc = acc.add(&term_pow.scale(&factor));
    }
    let mut c = acc.scale(&pre).c;
    c.resize(n + 1, Rat::zero());
    Ok(ExactPolynomial::new(c))
}

/// Little q-Laguerre coefficients of `P_n(-x; a|q)` with `q = exp(-lambda/n)`
/// evaluated in MPFR; the one family whose coefficients are fundamentally
/// non-rational. `lambda` is a float since the natural parameter points
/// (e.g. `ln 2`) are not rational.
pub fn little_q_laguerre_poly(n: usize, a: &Rat, lambda: f64) -> Result<FloatPolynomial> {
    if a.is_negative() || a > &Rat::one() {
        return Err(Error::Domain(format!(
            "little q-Laguerre needs 0 <= a <= 1 < 1/q (nonnegativity of coefficients), got a={a}"
        )));
    }
    if !(lambda > 0.0) {
        return Err(Error::Domain(format!(
            "little q-Laguerre needs lambda > 0, got {lambda}"
        )));
    }
    let prec = hp::PREC;
    let lam = Real::with_val(prec, lambda);
    let af = hp::real_from_rat(prec, a);
    let q = (-lam / Real::with_val(prec, n as f64)).exp();
    let qinv = Real::with_val(prec, 1) / q.clone();
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(Real::with_val(prec, 1));
    let mut qj = Real::with_val(prec, 1); // q^j
    let mut qjmn = {
        // q^{-n}
        let mut acc = Real::with_val(prec, 1);
        for _ in 0..n {
            acc *= &qinv;
        }
        acc
    };
    let mut acc = Real::with_val(prec, 1);
    for _j in 1..=n {
        qj *= &q;
        qjmn *= &q;
        let numer = qjmn.clone() - q.clone();
        let d1 = Real::with_val(prec, 1) - af.clone() * &qj;
        let d2 = Real::with_val(prec, 1) - qj.clone();
        acc = acc * numer / (d1 * d2);
        coeffs.push(acc.clone());
    }
    Ok(FloatPolynomial::new(coeffs, prec))
}

/// Free multiplicative Hermite polynomial
/// `G_n(x; sigma^2) = sum (-1)^{n-k} C(n,k) exp(sigma^2 k(n-k)/2) x^k`.
pub fn free_mult_hermite_poly(n: usize, sigma2: &Rat) -> Result<FloatPolynomial> {
    if sigma2.is_negative() {
        return Err(Error::Domain(format!(
            "free multiplicative Hermite needs sigma^2 >= 0, got {sigma2}"
        )));
    }
    let prec = hp::PREC;
    let s2 = hp::real_from_rat(prec, sigma2);
    let mut coeffs = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let e = s2.clone() * Real::with_val(prec, (k * (n - k)) as f64) / 2u32;
        let mut v = hp::real_from_bigint(prec, &binomial(n, k)) * e.exp();
        if (n - k) % 2 == 1 {
            v = -v;
        }
        coeffs.push(v);
    }
    Ok(FloatPolynomial::new(coeffs, prec))
}

/// Free multiplicative Poisson polynomial
/// `P_n(x; b, c) = sum (-1)^{n-k} C(n,k) |k+b|^c x^k`, `b` outside `(-n, 0)`,
/// integer `c >= 0`.
pub fn free_mult_poisson_poly(n: usize, b: &Rat, c: u32) -> Result<ExactPolynomial> {
    if b.is_negative() && *b > rat_int(-(n as i64)) {
        return Err(Error::Domain(format!(
            "free multiplicative Poisson needs b >= 0 or b <= -n (Laguerre-class hypothesis), got b={b}, n={n}"
        )));
    }
    Ok(free_mult_poisson_poly_unchecked(n, b, c))
}

pub fn free_mult_poisson_poly_unchecked(n: usize, b: &Rat, c: u32) -> ExactPolynomial {
    let coeffs = (0..=n)
        .map(|k| {
            let base = (b + rat_int(k as i64)).abs();
            let mut v = Rat::from_integer(binomial(n, k)) * exact::pow_rat(&base, c as usize);
            if (n - k) % 2 == 1 {
                v = -v;
            }
            v
        })
        .collect();
    ExactPolynomial::new(coeffs)
}

/// Hexfloat rendering of an `f64` (`0x1.9p+3` style), bit-exact.
pub fn f64_to_hex(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0x0p+0" } else { "0x0p+0" }.into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { "-" } else { "" };
    let exp_raw = ((bits >> 52) & 0x7ff) as i64;
    let mantissa = bits & ((1u64 << 52) - 1);
    let (lead, exp) = if exp_raw == 0 {
        (0u64, -1022i64)
    } else {
        (1u64, exp_raw - 1023)
    };
    let mut frac = String::new();
    let mut m = mantissa;
    while m != 0 {
        write!(frac, "{:x}", (m >> 48) & 0xf).unwrap();
        m <<= 4;
        m &= (1u64 << 52) - 1;
    }
    if frac.is_empty() {
        format!("{sign}0x{lead}p{exp:+}")
    } else {
        format!("{sign}0x{lead}.{frac}p{exp:+}")
    }
}

pub fn hex_to_f64(s: &str) -> Result<f64> {
    let t = s.trim();
    match t {
        "nan" => return Ok(f64::NAN),
        "inf" => return Ok(f64::INFINITY),
        "-inf" => return Ok(f64::NEG_INFINITY),
        _ => {}
    }
    let (sign, rest) = if let Some(r) = t.strip_prefix('-') {
        (-1.0, r)
    } else {
        (1.0, t)
    };
    let rest = rest
        .strip_prefix("0x")
        .ok_or_else(|| Error::Parse(format!("bad hexfloat {s}")))?;
    let (mant, exp) = rest
        .split_once('p')
        .ok_or_else(|| Error::Parse(format!("bad hexfloat {s}")))?;
    let exp: i32 = exp
        .parse()
        .map_err(|_| Error::Parse(format!("bad hexfloat exponent in {s}")))?;
    let (int_part, frac_part) = match mant.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mant, ""),
    };
    let mut val = u64::from_str_radix(int_part, 16)
        .map_err(|_| Error::Parse(format!("bad hexfloat mantissa in {s}")))? as f64;
    let mut scale = 1.0f64 / 16.0;
    for ch in frac_part.chars() {
        let d = ch
            .to_digit(16)
            .ok_or_else(|| Error::Parse(format!("bad hexfloat digit in {s}")))?;
        val += d as f64 * scale;
        scale /= 16.0;
    }
    Ok(sign * val * (exp as f64).exp2())
}

/// Line-oriented coefficient serialization:
/// `family=<id> n=<n> params=<k=v,...>` then one `k <num>/<den>` per line.
pub fn write_exact_coeffs<W: std::io::Write>(
    w: &mut W,
    spec: &FamilySpec,
    poly: &ExactPolynomial,
    extra_params: &[(String, String)],
) -> Result<()> {
    write_header(w, spec, extra_params)?;
    for (k, c) in poly.coeffs.iter().enumerate() {
        writeln!(w, "{} {}/{}", k, c.numer(), c.denom())?;
    }
    Ok(())
}

pub fn write_float_coeffs<W: std::io::Write>(
    w: &mut W,
    spec: &FamilySpec,
    poly: &FloatPolynomial,
    extra_params: &[(String, String)],
) -> Result<()> {
    write_header(w, spec, extra_params)?;
    for (k, c) in poly.coeffs.iter().enumerate() {
        writeln!(w, "{} {}", k, f64_to_hex(c.to_f64()))?;
    }
    Ok(())
}

fn write_header<W: std::io::Write>(
    w: &mut W,
    spec: &FamilySpec,
    extra_params: &[(String, String)],
) -> Result<()> {
    let mut params = spec.family.params();
    params.extend_from_slice(extra_params);
    let params = params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(",");
    writeln!(w, "family={} n={} params={}", spec.family.id(), spec.n, params)?;
    Ok(())
}
