//! Exact big-integer / big-rational arithmetic helpers and a small dense
//! polynomial type used by the family constructors and the convolution and
//! root-isolation machinery.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rat = BigRational;

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Binomial coefficient with integer arguments, `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Binomial coefficient `C(t, k)` with arbitrary rational top argument,
/// computed as the product `t (t-1) ... (t-k+1) / k!`. Well defined for all
/// rational `t`; no gamma function is ever evaluated.
pub fn binomial_rat(top: &Rat, k: usize) -> Rat {
    let mut acc = Rat::one();
    for i in 0..k {
        acc *= top - rat_int(i as i64);
    }
    acc / Rat::from_integer(factorial(k))
}

/// Falling factorial `x^(m) = x (x-1) ... (x-m+1)` over the rationals.
pub fn falling(x: &Rat, m: usize) -> Rat {
    let mut acc = Rat::one();
    for i in 0..m {
        acc *= x - rat_int(i as i64);
    }
    acc
}

/// Rising factorial `x^(m) = x (x+1) ... (x+m-1)` over the rationals.
pub fn rising(x: &Rat, m: usize) -> Rat {
    let mut acc = Rat::one();
    for i in 0..m {
        acc *= x + rat_int(i as i64);
    }
    acc
}

pub fn pow_rat(x: &Rat, k: usize) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

/// Dense univariate polynomial over the big rationals, lowest degree first.
///
/// The coefficient vector is kept at its declared length; use [`RatPoly::deg`]
/// for the true degree (trailing zeros allowed, matching "degree at most n").
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    pub c: Vec<Rat>,
}

impl RatPoly {
    pub fn new(c: Vec<Rat>) -> Self {
        RatPoly { c }
    }

    pub fn zero(len: usize) -> Self {
        RatPoly {
            c: vec![Rat::zero(); len.max(1)],
        }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        RatPoly {
            c: c.iter().map(|&v| rat_int(v)).collect(),
        }
    }

    /// `x^k`
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![Rat::zero(); k + 1];
        c[k] = Rat::one();
        RatPoly { c }
    }

    /// True degree; 0 for the zero polynomial.
    pub fn deg(&self) -> usize {
        for i in (0..self.c.len()).rev() {
            if !self.c[i].is_zero() {
                return i;
            }
        }
        0
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|v| v.is_zero())
    }

    pub fn trim(mut self) -> Self {
        while self.c.len() > 1 && self.c.last().unwrap().is_zero() {
            self.c.pop();
        }
        self
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for coeff in self.c.iter().rev() {
            acc = acc * x + coeff;
        }
        acc
    }

    pub fn derivative(&self) -> RatPoly {
        if self.c.len() <= 1 {
            return RatPoly::zero(1);
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, v)| v * rat_int(i as i64))
            .collect();
        RatPoly { c }
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let len = self.c.len().max(other.c.len());
        let mut c = vec![Rat::zero(); len];
        for (i, v) in self.c.iter().enumerate() {
            c[i] += v;
        }
        for (i, v) in other.c.iter().enumerate() {
            c[i] += v;
        }
        RatPoly { c }
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero(1);
        }
        let mut c = vec![Rat::zero(); self.deg() + other.deg() + 1];
        for (i, a) in self.c.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.c.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                c[i + j] += a * b;
            }
        }
        RatPoly { c }
    }

    pub fn scale(&self, s: &Rat) -> RatPoly {
        RatPoly {
            c: self.c.iter().map(|v| v * s).collect(),
        }
    }

    /// Substitute `x -> s*x`, i.e. multiply coefficient `a_k` by `s^k`.
    pub fn scale_argument(&self, s: &Rat) -> RatPoly {
        let mut pow = Rat::one();
        let mut c = Vec::with_capacity(self.c.len());
        for v in &self.c {
            c.push(v * &pow);
            pow *= s;
        }
        RatPoly { c }
    }

    /// Exact Taylor shift `P(x) -> P(x + a)` by repeated synthetic division.
    pub fn taylor_shift(&self, a: &Rat) -> RatPoly {
        let mut c = self.c.clone();
        let n = c.len();
        if n <= 1 || a.is_zero() {
            return RatPoly { c };
        }
        // After pass i, c[i..] holds the coefficients of P expanded at `a`
        // up to order i.
        for i in 0..n - 1 {
            for j in (i..n - 1).rev() {
                let add = &c[j + 1] * a;
                c[j] += add;
            }
        }
        RatPoly { c }
    }

    /// Substitute `x -> q(x)`, exact composition.
    pub fn compose(&self, q: &RatPoly) -> RatPoly {
        let mut acc = RatPoly::zero(1);
        for coeff in self.c.iter().rev() {
            acc = acc.mul(q);
            if acc.c.is_empty() {
                acc.c.push(Rat::zero());
            }
            acc.c[0] += coeff;
        }
        acc
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.c.iter().map(crate::hp::rat_to_f64).collect()
    }
}

/// Dense integer polynomial, lowest degree first. Used by the Sturm chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    pub c: Vec<BigInt>,
}

impl IntPoly {
    pub fn deg(&self) -> usize {
        for i in (0..self.c.len()).rev() {
            if !self.c[i].is_zero() {
                return i;
            }
        }
        0
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|v| v.is_zero())
    }

    pub fn trim(mut self) -> Self {
        while self.c.len() > 1 && self.c.last().unwrap().is_zero() {
            self.c.pop();
        }
        self
    }

    /// Clear denominators: returns the primitive integer polynomial with the
    /// same roots.
    pub fn from_rat(p: &RatPoly) -> IntPoly {
        let mut lcm = BigInt::one();
        for v in &p.c {
            lcm = lcm.lcm(v.denom());
        }
        let c: Vec<BigInt> = p
            .c
            .iter()
            .map(|v| v.numer() * (&lcm / v.denom()))
            .collect();
        IntPoly { c }.primitive()
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for v in &self.c {
            if !v.is_zero() {
                g = g.gcd(v);
            }
        }
        if g.is_zero() {
            BigInt::one()
        } else {
            g
        }
    }

    /// Divide out content and normalize the leading coefficient positive? No:
    /// Sturm sign bookkeeping must preserve signs, so only the (positive)
    /// content is divided out.
    pub fn primitive(mut self) -> IntPoly {
        let g = self.content();
        if !g.is_one() {
            for v in &mut self.c {
                *v /= &g;
            }
        }
        self.trim()
    }

    pub fn derivative(&self) -> IntPoly {
        if self.c.len() <= 1 {
            return IntPoly {
                c: vec![BigInt::zero()],
            };
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, v)| v * BigInt::from(i))
            .collect();
        IntPoly { c }
    }

    /// Sign of `P(num/den)` for `den > 0`, evaluated exactly without
    /// constructing rationals: computes `den^deg * P(num/den)`.
    pub fn sign_at(&self, num: &BigInt, den: &BigInt) -> Sign {
        let d = self.deg();
        let mut acc = BigInt::zero();
        for i in (0..=d).rev() {
            acc = acc * num + &self.c[i] * den.pow((d - i) as u32);
        }
        acc.sign()
    }

    /// Sign of the value at +inf (sign of leading coefficient).
    pub fn sign_at_pos_inf(&self) -> Sign {
        self.c[self.deg()].sign()
    }

    pub fn sign_at_neg_inf(&self) -> Sign {
        let d = self.deg();
        let s = self.c[d].sign();
        if d % 2 == 0 {
            s
        } else {
            match s {
                Sign::Plus => Sign::Minus,
                Sign::Minus => Sign::Plus,
                Sign::NoSign => Sign::NoSign,
            }
        }
    }
}

/// Exact polynomial gcd over the rationals (monic output), Euclidean
/// remainders with primitive-part reduction. Intended for moderate degrees.
pub fn ratpoly_gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut f = IntPoly::from_rat(a);
    let mut g = IntPoly::from_rat(b);
    if f.is_zero() {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_zero() {
        let r = pseudo_rem(&f, &g).primitive();
        f = g;
        g = r;
    }
    let lead = f.c[f.deg()].clone();
    RatPoly {
        c: f.c
            .iter()
            .map(|v| Rat::new(v.clone(), lead.clone()))
            .collect(),
    }
}

/// Pseudo-remainder of `a` by `b`: `lc(b)^(deg a - deg b + 1) * a mod b`,
/// sign-corrected so that it equals a positive multiple of `a mod b`.
pub fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let db = b.deg();
    let lb = b.c[db].clone();
    let mut r = a.c.clone();
    let da = a.deg();
    if da < db {
        return a.clone();
    }
    let steps = da - db + 1;
    for k in (db..=da).rev() {
        // multiply the remainder-so-far by lb, then eliminate degree k
        for v in r.iter_mut() {
            *v *= &lb;
        }
        let q = r[k].clone() / &lb; // exact: r[k] just got a factor lb
        for j in 0..db {
            let sub = &q * &b.c[j];
            r[k - db + j] -= sub;
        }
        r[k] = BigInt::zero();
    }
    let mut out = IntPoly { c: r }.trim();
    // lc(b)^steps may be negative for odd exponents; keep the sign that a true
    // remainder would have so Sturm sign rules survive.
    if lb.sign() == Sign::Minus && steps % 2 == 1 {
        for v in out.c.iter_mut() {
            *v = -v.clone();
        }
    }
    out
}
