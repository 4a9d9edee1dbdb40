//! Convolution sums, the finite continued fraction, the arctangent relations
//! and the reciprocal doubling sum.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad::constants;
use crate::seq::{fib, lucas, SeqParams};
use crate::{Mode, QuadRat, Rat};

fn fib_row(p: SeqParams, n: usize) -> Vec<BigInt> {
    let k = p.k_big();
    let mut out = Vec::with_capacity(n + 1);
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..=n {
        out.push(a.clone());
        let next = &k * &b + &a;
        a = std::mem::replace(&mut b, next);
    }
    out
}

/// `S_m(n)`: sum over `j_1 + ... + j_m = n` of `F(j_1)...F(j_m)`, by
/// repeated truncated Cauchy products.
pub fn convolution_s(p: SeqParams, m: u32, n: u32) -> Result<BigInt> {
    if m < 1 {
        return Err(Error::domain("convolution", "m must be >= 1"));
    }
    let n = n as usize;
    let f = fib_row(p, n);
    let mut acc = f.clone();
    for _ in 1..m {
        acc = (0..=n)
            .map(|t| (0..=t).map(|s| &acc[s] * &f[t - s]).sum())
            .collect();
    }
    Ok(acc[n].clone())
}

/// `S_m(n)` from the three-term recurrence
/// `r W_r = k (r+m-1) W_(r-1) + (r+2m-2) W_(r-2)`, `W_0 = 1`, `W_1 = mk`,
/// with `S_m(n) = W_(n-m)`. Checked against [`convolution_s`] and for
/// integrality.
pub fn convolution_closed(p: SeqParams, m: u32, n: u32) -> Result<Rat> {
    if m < 1 {
        return Err(Error::domain("convolution", "m must be >= 1"));
    }
    let value = if n < m {
        Rat::zero()
    } else {
        let r_max = (n - m) as i64;
        let (mi, k) = (m as i64, Rat::from_integer(p.k_big()));
        let mut w_prev = Rat::one();
        let mut w = Rat::from_integer(BigInt::from(mi)) * k.clone();
        if r_max == 0 {
            w = w_prev.clone();
        }
        for r in 2..=r_max {
            let rr = Rat::from_integer(r.into());
            let next = (k.clone() * Rat::from_integer((r + mi - 1).into()) * w.clone()
                + Rat::from_integer((r + 2 * mi - 2).into()) * w_prev)
                / rr;
            w_prev = std::mem::replace(&mut w, next);
        }
        w
    };
    let dp = convolution_s(p, m, n)?;
    if !value.is_integer() || value != Rat::from_integer(dp.clone()) {
        return Err(Error::Inconsistent(format!(
            "convolution recurrence {value} != {dp} at k = {}, m = {m}, n = {n}",
            p.k()
        )));
    }
    Ok(value)
}

fn rising(a: Rat, j: u32) -> Rat {
    (0..j).fold(Rat::one(), |acc, i| acc * (a.clone() + Rat::from_integer(i.into())))
}

fn factorial(n: u32) -> Rat {
    Rat::from_integer((1..=n as u64).map(BigInt::from).product())
}

/// Ultraspherical series for `S_m(n)`.
///
/// `Mode::Corrected` evaluates
/// `(2m)_r / 2^r sum_j k^(r-2j) ((k^2+4)/4)^j / (j! (m+1/2)_j (r-2j)!)`
/// with `r = n - m`; `Mode::Verbatim` is the same series with `k = 1`
/// hard-wired (`(5/4)^j`), which is only right for the classical numbers.
pub fn convolution_series(p: SeqParams, m: u32, n: u32, mode: Mode) -> Result<Rat> {
    if m < 1 {
        return Err(Error::domain("convolution", "m must be >= 1"));
    }
    if n < m {
        return Ok(Rat::zero());
    }
    let r = n - m;
    let (k, c) = match mode {
        Mode::Corrected => (Rat::from_integer(p.k_big()), Rat::new(p.d().into(), 4.into())),
        Mode::Verbatim => (Rat::one(), Rat::new(5.into(), 4.into())),
    };
    let half = Rat::new(1.into(), 2.into());
    let m_r = Rat::from_integer(m.into());
    let sum = (0..=r / 2).fold(Rat::zero(), |acc, j| {
        acc + k.pow((r - 2 * j) as i32) * c.pow(j as i32)
            / (factorial(j) * rising(m_r.clone() + half.clone(), j) * factorial(r - 2 * j))
    });
    Ok(rising(Rat::from_integer((2 * m).into()), r) / Rat::from_integer(BigInt::from(2).pow(r)) * sum)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContinuedFraction {
    pub k: i64,
    pub m: u32,
    pub t: u32,
    /// Every partial quotient is `L(m)`.
    #[serde(serialize_with = "crate::fmt::int_vec")]
    pub quotients: Vec<BigInt>,
    /// Numerator sign `(-1)^m` in `L(m) - (-1)^m / (L(m) - ...)`.
    pub sign: i64,
    #[serde(serialize_with = "crate::fmt::rat")]
    pub value: Rat,
    pub depth: usize,
    /// The printed count of quotients, `m`; it agrees with `depth` only when `m = t`.
    pub printed_count: u32,
    pub printed_count_holds: bool,
}

/// Expand `F(m(t+1)) / F(mt)` as `L(m) - (-1)^m / (L(m) - (-1)^m / ...)`.
pub fn continued_fraction(p: SeqParams, m: u32, t: u32) -> Result<ContinuedFraction> {
    if m < 1 || t < 1 {
        return Err(Error::domain("continued fraction", "m and t must be >= 1"));
    }
    let (mi, ti) = (m as i64, t as i64);
    let lm = lucas(p, mi);
    let sign: i64 = if m % 2 == 0 { 1 } else { -1 };
    let s = Rat::from_integer(sign.into());
    let l = Rat::from_integer(lm.clone());
    let mut r = l.clone();
    for i in 1..ti {
        let step = fib(p, mi * (i + 1));
        let rebuilt = &lm * fib(p, mi * i) - sign * fib(p, mi * (i - 1));
        if step != rebuilt {
            return Err(Error::Inconsistent(format!("index recursion fails at m = {m}, i = {i}")));
        }
        r = l.clone() - s.clone() / r;
    }
    let target = Rat::new(fib(p, mi * (ti + 1)), fib(p, mi * ti));
    if r != target {
        return Err(Error::Inconsistent(format!(
            "continued fraction {r} != {target} at k = {}, m = {m}, t = {t}",
            p.k()
        )));
    }
    Ok(ContinuedFraction {
        k: p.k(),
        m,
        t,
        quotients: vec![lm; t as usize],
        sign,
        value: r,
        depth: t as usize,
        printed_count: m,
        printed_count_holds: m == t,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArctanReport {
    pub k: i64,
    pub m_max: u32,
    /// `k[1 + F(2m+2)F(2m)] = k F(2m+1)^2` and the tangent-addition form, for `0 <= m <= m_max`.
    pub exact_holds: bool,
    pub first_exact_failure: Option<u32>,
    pub max_step_residual: f64,
    pub tail_terms: u32,
    pub partial_sum: f64,
    pub target: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub tail_holds: bool,
}

pub const ARCTAN_TOLERANCE: f64 = 1e-9;

/// Exact check of the rational identity behind
/// `arctan(k/F(2m+1)) + arctan(1/F(2m+2)) = arctan(1/F(2m))`, plus the float
/// partial sum `sum_{n=0..tail_terms} arctan(k/F(2n+3))` against `arctan(1/k)`.
pub fn arctan_suite(p: SeqParams, m_max: u32, tail_terms: u32) -> Result<ArctanReport> {
    if m_max < 1 || tail_terms < 1 {
        return Err(Error::domain("arctan suite", "m_max and tail_terms must be >= 1"));
    }
    let top = (2 * m_max.max(tail_terms) + 4) as usize;
    let f = fib_row(p, top);
    let k = p.k_big();
    let first_exact_failure = (0..=m_max).find(|&m| {
        let m = m as usize;
        let (a, b, c) = (&f[2 * m], &f[2 * m + 1], &f[2 * m + 2]);
        let step = &k * (BigInt::one() + c * a) == &k * b * b;
        let tangent = (&k * c + b) * a == b * c - &k;
        !(step && tangent)
    });
    let fl = |i: usize| f[i].to_f64().unwrap_or(f64::INFINITY);
    let kf = p.k() as f64;
    let max_step_residual = (0..=m_max.min(20) as usize)
        .map(|m| ((kf / fl(2 * m + 1)).atan() + (1.0 / fl(2 * m + 2)).atan() - 1f64.atan2(fl(2 * m))).abs())
        .fold(0.0, f64::max);
    let partial_sum: f64 = (0..=tail_terms as usize).map(|n| (kf / fl(2 * n + 3)).atan()).sum();
    let target = (1.0 / kf).atan();
    let residual = (partial_sum - target).abs();
    Ok(ArctanReport {
        k: p.k(),
        m_max,
        exact_holds: first_exact_failure.is_none(),
        first_exact_failure,
        max_step_residual,
        tail_terms,
        partial_sum,
        target,
        residual,
        tolerance: ARCTAN_TOLERANCE,
        tail_holds: residual < ARCTAN_TOLERANCE,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReciprocalRow {
    pub n: u32,
    /// `sum_{j=0..n} 1/F(2^j)`.
    #[serde(serialize_with = "crate::fmt::rat")]
    pub partial: Rat,
    /// `(k+2)/k - F(2^n-1)/F(2^n)`; the telescoping starts at `n = 1`.
    #[serde(serialize_with = "crate::fmt::opt_rat")]
    pub closed: Option<Rat>,
    pub holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReciprocalReport {
    pub k: i64,
    pub rows: Vec<ReciprocalRow>,
    /// `(k+2)/k - e^-theta`.
    pub limit: QuadRat,
    /// `1 + e^-theta coth(theta)` with `coth(theta) = sqrt(k^2+4)/k`.
    pub limit_alt: QuadRat,
    pub limits_agree: bool,
    pub limit_decimal: String,
    /// Summing `1/F(j)` from `j = 0` is undefined because `F(0) = 0`.
    pub printed_summand_defined: bool,
}

pub const RECIPROCAL_MAX_N: u32 = 16;

pub fn reciprocal_sum(p: SeqParams, n_max: u32) -> Result<ReciprocalReport> {
    if n_max > RECIPROCAL_MAX_N {
        return Err(Error::BoundExceeded {
            context: "reciprocal sum",
            bound: n_max as u64,
            max: RECIPROCAL_MAX_N as u64,
        });
    }
    let k = Rat::from_integer(p.k_big());
    let head = (k.clone() + Rat::from_integer(2.into())) / k.clone();
    let mut rows = Vec::with_capacity(n_max as usize + 1);
    let mut partial = Rat::zero();
    for n in 0..=n_max {
        let pw = 1i64 << n;
        partial += Rat::new(BigInt::one(), fib(p, pw));
        let closed = (n >= 1).then(|| head.clone() - Rat::new(fib(p, pw - 1), fib(p, pw)));
        let holds = closed.as_ref().map(|c| *c == partial);
        if holds == Some(false) {
            return Err(Error::Inconsistent(format!("reciprocal sum fails at k = {}, n = {n}", p.k())));
        }
        rows.push(ReciprocalRow {
            n,
            partial: partial.clone(),
            closed,
            holds,
        });
    }
    let fc = constants(p.k())?;
    let d = fc.d;
    let limit = QuadRat::from_scalar(head, d)?.sub(&fc.e_neg_theta)?;
    let coth = QuadRat::new(Rat::zero(), k.recip(), d)?;
    let limit_alt = fc.e_neg_theta.mul(&coth)?.add_scalar(&Rat::one());
    let limits_agree = limit == limit_alt;
    if !limits_agree {
        return Err(Error::Inconsistent(format!("reciprocal limits differ at k = {}", p.k())));
    }
    Ok(ReciprocalReport {
        k: p.k(),
        rows,
        limit_decimal: limit.to_decimal(7)?,
        limit,
        limit_alt,
        limits_agree,
        printed_summand_defined: false,
    })
}
