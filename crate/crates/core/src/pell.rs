//! Descent solvers for `x^2(k^2+4) +- 4 = y^2` and `y^2 - kxy - x^2 = +-1`,
//! their brute-force oracles, and the cubic surface
//! `z^3 - k^3 y^3 - x^3 = 3kxyz`.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::seq::{fib, lucas, SeqParams};

/// Integer square root when `v` is a perfect square.
pub fn is_square(v: &BigInt) -> Result<Option<BigInt>> {
    if v.is_negative() {
        return Err(Error::domain("is_square", format!("{v} is negative")));
    }
    let r = v.sqrt();
    Ok((&r * &r == *v).then_some(r))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentStep {
    #[serde(serialize_with = "crate::fmt::int")]
    pub x: BigInt,
    #[serde(serialize_with = "crate::fmt::int")]
    pub y: BigInt,
    /// `y^2 - D x^2` (`+-4`) or `y^2 - kxy - x^2` (`+-1`).
    pub sign: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentTrace {
    pub k: i64,
    pub steps: Vec<DescentStep>,
    pub index: Option<i64>,
}

impl DescentTrace {
    pub fn terminal(&self) -> Option<&DescentStep> {
        self.steps.last()
    }
}

fn depth_bound(x: &BigInt) -> usize {
    // log base golden ratio of x, from the bit length.
    let bits = x.bits().max(1) as f64;
    (4.0 * bits * std::f64::consts::LN_2 / 1.618_033_988_749_895f64.ln()) as usize + 16
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discriminant {
    pub sign: i64,
    #[serde(serialize_with = "crate::fmt::int")]
    pub value: BigInt,
    pub square: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub k: i64,
    #[serde(serialize_with = "crate::fmt::int")]
    pub n: BigInt,
    pub member: bool,
    pub index: Option<i64>,
    #[serde(serialize_with = "opt_int")]
    pub companion: Option<BigInt>,
    pub trace: Option<DescentTrace>,
    /// `n^2 (k^2+4) - 4` and `n^2 (k^2+4) + 4`.
    pub discriminants: Vec<Discriminant>,
    /// False when the parity hypothesis was lifted.
    pub within_hypothesis: bool,
}

fn opt_int<S: serde::Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => crate::fmt::int(v, s),
        None => s.serialize_none(),
    }
}

/// Decide whether `n` is some `F(m)` via the squareness of `n^2 (k^2+4) +- 4`
/// and, if so, recover `m` and `L(m)` by descent.
///
/// The statement assumes `k` odd and `k > 1`; `experimental` admits any
/// `k >= 1` and marks the result as outside that hypothesis.
pub fn classify_general_fib(p: SeqParams, n: &BigInt, experimental: bool) -> Result<Classification> {
    let k = p.k();
    let in_hypothesis = k > 1 && k % 2 == 1;
    if !in_hypothesis && !experimental {
        return Err(Error::domain(
            "classify",
            format!("k = {k} must be odd and > 1 (use the experimental flag to lift this)"),
        ));
    }
    if *n < BigInt::one() {
        return Err(Error::domain("classify", format!("n = {n} must be >= 1")));
    }
    let d = BigInt::from(p.d());
    let base = n * n * &d;
    let mut discriminants = Vec::new();
    let mut start = None;
    for sign in [-4i64, 4] {
        let value = &base + sign;
        let root = is_square(&value)?;
        discriminants.push(Discriminant {
            sign,
            value,
            square: root.is_some(),
        });
        if start.is_none() {
            start = root.map(|y| (y, sign));
        }
    }
    let Some((y0, s0)) = start else {
        return Ok(Classification {
            k,
            n: n.clone(),
            member: false,
            index: None,
            companion: None,
            trace: None,
            discriminants,
            within_hypothesis: in_hypothesis,
        });
    };
    let kb = p.k_big();
    let mut steps = vec![DescentStep {
        x: n.clone(),
        y: y0.clone(),
        sign: s0,
    }];
    let limit = depth_bound(n);
    let (mut x, mut y) = (n.clone(), y0.clone());
    while !x.is_one() {
        if steps.len() > limit {
            return Err(Error::Inconsistent(format!("descent from {n} exceeded {limit} steps")));
        }
        let x2: BigInt = (&y - &kb * &x) / 2;
        let t: BigInt = (&kb * &y - &d * &x) / 2;
        let y2 = t.abs();
        if x2 <= BigInt::zero() || x2 >= x {
            return Err(Error::Inconsistent(format!("descent did not decrease at x = {x}")));
        }
        let s: BigInt = &y2 * &y2 - &d * &x2 * &x2;
        let sign = s.to_i64().filter(|v| v.abs() == 4).ok_or_else(|| {
            Error::Inconsistent(format!("descent left the curve at ({x2}, {y2})"))
        })?;
        steps.push(DescentStep {
            x: x2.clone(),
            y: y2.clone(),
            sign,
        });
        x = x2;
        y = y2;
    }
    // x = 1: y = k is F(1), L(1); for k = 1 the extra point y = 3 is F(2), L(2).
    let mut m = steps.len() as i64;
    if y != kb {
        if k == 1 && y == BigInt::from(3) {
            m += 1;
        } else {
            return Err(Error::Inconsistent(format!("descent ended at (1, {y}) with k = {k}")));
        }
    }
    if fib(p, m) != *n || lucas(p, m) != y0 {
        return Err(Error::Inconsistent(format!("descent index {m} does not regenerate {n}")));
    }
    Ok(Classification {
        k,
        n: n.clone(),
        member: true,
        index: Some(m),
        companion: Some(y0),
        trace: Some(DescentTrace {
            k,
            steps,
            index: Some(m),
        }),
        discriminants,
        within_hypothesis: in_hypothesis,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PellSolution {
    #[serde(serialize_with = "crate::fmt::int")]
    pub x: BigInt,
    #[serde(serialize_with = "crate::fmt::int")]
    pub y: BigInt,
    /// `(x, y) = (F(n), F(n+1))`.
    pub n: i64,
    /// `y^2 - kxy - x^2`.
    pub sign: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolvedPair {
    pub solution: PellSolution,
    pub trace: DescentTrace,
    /// False for `k = 1`, where the `k > 1` hypothesis is relaxed.
    pub within_hypothesis: bool,
}

fn curve_value(k: &BigInt, x: &BigInt, y: &BigInt) -> BigInt {
    y * y - k * x * y - x * x
}

/// Descend a `+1` point `(x, y)` through `((k^2+1)x - ky, y - kx)` to the
/// base `(k, k^2+1) = (F(2), F(3))`; returns the steps and the index of `x`.
fn descend_plus(p: SeqParams, x: &BigInt, y: &BigInt) -> Result<(Vec<DescentStep>, i64)> {
    let k = p.k_big();
    let k2p1 = &k * &k + 1;
    let limit = depth_bound(x);
    let (mut x, mut y) = (x.clone(), y.clone());
    let mut steps = vec![DescentStep {
        x: x.clone(),
        y: y.clone(),
        sign: 1,
    }];
    while !(x == k && y == k2p1) {
        if steps.len() > limit {
            return Err(Error::Inconsistent(format!("+1 descent exceeded {limit} steps")));
        }
        let x0 = &k2p1 * &x - &k * &y;
        let y0 = &y - &k * &x;
        if x0 <= BigInt::zero() || x0 >= x || y0 <= BigInt::zero() {
            return Err(Error::Inconsistent(format!("+1 descent stalled at ({x}, {y})")));
        }
        if curve_value(&k, &x0, &y0) != BigInt::one() {
            return Err(Error::Inconsistent(format!("+1 descent left the curve at ({x0}, {y0})")));
        }
        steps.push(DescentStep {
            x: x0.clone(),
            y: y0.clone(),
            sign: 1,
        });
        x = x0;
        y = y0;
    }
    Ok((steps.clone(), 2 * steps.len() as i64))
}

/// Recover `n` with `(x, y) = (F(n), F(n+1))` from a point of
/// `y^2 - kxy - x^2 = +-1`, or `None` when the point is off both curves.
pub fn solve_pm1(p: SeqParams, x: &BigInt, y: &BigInt) -> Result<Option<SolvedPair>> {
    if *x < BigInt::one() || *y < BigInt::one() {
        return Err(Error::domain("solve_pm1", format!("need x, y >= 1, got ({x}, {y})")));
    }
    let k = p.k_big();
    let v = curve_value(&k, x, y);
    let (steps, n, sign) = if v.is_one() {
        let (steps, idx) = descend_plus(p, x, y)?;
        (steps, idx, 1)
    } else if v == -BigInt::one() {
        let (sx, sy) = (y.clone(), x + &k * y);
        let (mut steps, idx) = descend_plus(p, &sx, &sy)?;
        steps.insert(
            0,
            DescentStep {
                x: x.clone(),
                y: y.clone(),
                sign: -1,
            },
        );
        (steps, idx - 1, -1)
    } else {
        return Ok(None);
    };
    if fib(p, n) != *x || fib(p, n + 1) != *y {
        return Err(Error::Inconsistent(format!("index {n} does not regenerate ({x}, {y})")));
    }
    Ok(Some(SolvedPair {
        solution: PellSolution {
            x: x.clone(),
            y: y.clone(),
            n,
            sign,
        },
        trace: DescentTrace {
            k: p.k(),
            steps,
            index: Some(n),
        },
        within_hypothesis: p.k() > 1,
    }))
}

/// `(F(n), F(n+1))` for `n >= 1` with `F(n) <= x_bound`, sign `(-1)^n`.
pub fn enumerate_pm1(p: SeqParams, x_bound: &BigInt) -> Vec<PellSolution> {
    let mut out = Vec::new();
    let k = p.k_big();
    let (mut a, mut b) = (BigInt::one(), k.clone());
    let mut n = 1i64;
    while a <= *x_bound {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        debug_assert_eq!(curve_value(&k, &a, &b), BigInt::from(sign));
        out.push(PellSolution {
            x: a.clone(),
            y: b.clone(),
            n,
            sign,
        });
        let next = &k * &b + &a;
        a = std::mem::replace(&mut b, next);
        n += 1;
    }
    out
}

pub const BRUTE_FORCE_MAX: u64 = 1_000_000;

/// Discriminant scan: for each `x <= x_bound`, `y = (kx + sqrt(x^2 (k^2+4) + 4s)) / 2`.
/// The index is filled in from the sequence so results compare directly
/// with [`enumerate_pm1`].
pub fn brute_force_pm1(p: SeqParams, x_bound: u64) -> Result<Vec<PellSolution>> {
    if x_bound > BRUTE_FORCE_MAX {
        return Err(Error::BoundExceeded {
            context: "brute_force_pm1",
            bound: x_bound,
            max: BRUTE_FORCE_MAX,
        });
    }
    let k = p.k() as u128;
    let d = p.d() as u128;
    let hits: Vec<(u128, u128, i64)> = (1..=x_bound as u128)
        .into_par_iter()
        .flat_map_iter(|x| {
            let base = d * x * x;
            // s = +1 needs disc = base + 4; s = -1 needs base - 4. Smaller y first.
            [(-1i64, base - 4), (1, base + 4)]
                .into_iter()
                .filter_map(move |(s, disc)| {
                    let r = disc.sqrt();
                    (r * r == disc && (k * x + r) % 2 == 0).then(|| (x, (k * x + r) / 2, s))
                })
        })
        .collect();
    let mut out: Vec<PellSolution> = hits
        .into_iter()
        .map(|(x, y, s)| PellSolution {
            x: BigInt::from(x),
            y: BigInt::from(y),
            n: 0,
            sign: s,
        })
        .collect();
    out.sort_by(|a, b| (&a.x, &a.y).cmp(&(&b.x, &b.y)));
    // Index by matching against the sequence.
    let k_big = p.k_big();
    let (mut a, mut b, mut n) = (BigInt::one(), k_big.clone(), 1i64);
    for s in &mut out {
        while (&a, &b) < (&s.x, &s.y) {
            let next = &k_big * &b + &a;
            a = std::mem::replace(&mut b, next);
            n += 1;
        }
        s.n = if a == s.x && b == s.y { n } else { 0 };
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TripleKind {
    ConsecutiveFib,
    ConsecutiveLucas,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfacePoint {
    pub x: u64,
    pub y: u64,
    pub z: u64,
    pub kind: TripleKind,
    pub pairwise_coprime: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceReport {
    pub k: i64,
    pub bound: u64,
    pub points: Vec<SurfacePoint>,
    /// Every point found has `z = x + ky`.
    pub all_linear: bool,
    /// Every `(x, y)` with `x + ky <= bound` was found.
    pub linear_family_complete: bool,
    pub consecutive: usize,
    pub other_coprime: usize,
    pub other_non_coprime: usize,
    /// Some point is not a consecutive triple of either family.
    pub suspicion_refuted: bool,
}

pub const SURFACE_MAX: u64 = 500;

fn consecutive_triples(p: SeqParams, bound: u64, lucas_family: bool) -> Vec<(u64, u64, u64)> {
    let k = p.k() as u128;
    let (mut a, mut b): (u128, u128) = if lucas_family { (2, k) } else { (1, k) };
    let mut out = Vec::new();
    loop {
        let c = k * b + a;
        if c > bound as u128 {
            break;
        }
        out.push((a as u64, b as u64, c as u64));
        a = b;
        b = c;
    }
    out
}

/// Exhaustive scan of `1 <= x, y, z <= bound` on the surface.
pub fn carlitz_surface_search(p: SeqParams, bound: u64) -> Result<SurfaceReport> {
    if bound > SURFACE_MAX {
        return Err(Error::BoundExceeded {
            context: "carlitz surface search",
            bound,
            max: SURFACE_MAX,
        });
    }
    let k = p.k() as i128;
    let mut found: Vec<(u64, u64, u64)> = (1..=bound)
        .into_par_iter()
        .flat_map_iter(|x| {
            (1..=bound).flat_map(move |y| {
                let (xi, yi) = (x as i128, y as i128);
                let fixed = k * k * k * yi * yi * yi + xi * xi * xi;
                (1..=bound).filter_map(move |z| {
                    let zi = z as i128;
                    (zi * zi * zi - fixed == 3 * k * xi * yi * zi).then_some((x, y, z))
                })
            })
        })
        .collect();
    found.sort();
    let fibs = consecutive_triples(p, bound, false);
    let lucs = consecutive_triples(p, bound, true);
    let points: Vec<SurfacePoint> = found
        .iter()
        .map(|&(x, y, z)| {
            let kind = if fibs.contains(&(x, y, z)) {
                TripleKind::ConsecutiveFib
            } else if lucs.contains(&(x, y, z)) {
                TripleKind::ConsecutiveLucas
            } else {
                TripleKind::Other
            };
            SurfacePoint {
                x,
                y,
                z,
                kind,
                pairwise_coprime: x.gcd(&y) == 1 && y.gcd(&z) == 1 && x.gcd(&z) == 1,
            }
        })
        .collect();
    let ku = p.k() as u64;
    let all_linear = points.iter().all(|pt| pt.z == pt.x + ku * pt.y);
    let expected = (1..=bound)
        .flat_map(|y| (1..=bound).map(move |x| (x, y)))
        .filter(|&(x, y)| x + ku * y <= bound)
        .count();
    let consecutive = points.iter().filter(|pt| pt.kind != TripleKind::Other).count();
    let other_coprime = points
        .iter()
        .filter(|pt| pt.kind == TripleKind::Other && pt.pairwise_coprime)
        .count();
    let other_non_coprime = points.len() - consecutive - other_coprime;
    Ok(SurfaceReport {
        k: p.k(),
        bound,
        linear_family_complete: all_linear && points.len() == expected,
        all_linear,
        consecutive,
        other_coprime,
        other_non_coprime,
        suspicion_refuted: other_coprime + other_non_coprime > 0,
        points,
    })
}
