//! Coefficient fitting for difference-of-products identities.
//!
//! A left-hand side is a signed sum of monomials in shifted `F`/`L` terms.
//! The ansatz is `(-1)^(n+s) sum_b c_b B_b(n)`. For each `k` the unknown
//! `c_b` are solved exactly from sample rows, then re-checked on a disjoint
//! window of `n` (including negative indices). Per-`k` coefficients are
//! finally interpolated as polynomials in `k` when they admit one.

use std::ops::RangeInclusive;

use num_traits::{One, Zero};
use serde::Serialize;

use super::Ctx;
use crate::error::{Error, Result};
use crate::matrix::{solve, Matrix, Solution};
use crate::seq::{Family, SeqParams};
use crate::Rat;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub family: Family,
    pub offset: i64,
    pub power: u32,
}

impl Factor {
    pub fn fib(offset: i64, power: u32) -> Self {
        Factor {
            family: Family::Fib,
            offset,
            power,
        }
    }

    pub fn lucas(offset: i64, power: u32) -> Self {
        Factor {
            family: Family::Lucas,
            offset,
            power,
        }
    }

    fn render(&self) -> String {
        let idx = match self.offset {
            0 => "n".to_string(),
            o if o > 0 => format!("n+{o}"),
            o => format!("n-{}", -o),
        };
        let base = format!("{}({idx})", self.family.symbol());
        if self.power == 1 {
            base
        } else {
            format!("{base}^{}", self.power)
        }
    }
}

/// Product of factors; the empty product is `1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Monomial(pub Vec<Factor>);

impl Monomial {
    fn eval(&self, c: &Ctx, n: i64) -> Rat {
        self.0.iter().fold(Rat::one(), |acc, f| {
            let v = match f.family {
                Family::Fib => c.f(n + f.offset),
                Family::Lucas => c.l(n + f.offset),
            };
            acc * v.pow(f.power as i32)
        })
    }

    pub fn render(&self) -> String {
        if self.0.is_empty() {
            "1".to_string()
        } else {
            self.0.iter().map(Factor::render).collect()
        }
    }
}

/// `sum_t coeff_t * monomial_t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LhsSpec {
    pub terms: Vec<(i64, Monomial)>,
}

impl LhsSpec {
    /// `a - b`, the usual difference of two products.
    pub fn difference(a: Monomial, b: Monomial) -> Self {
        LhsSpec {
            terms: vec![(1, a), (-1, b)],
        }
    }

    fn eval(&self, c: &Ctx, n: i64) -> Rat {
        self.terms
            .iter()
            .fold(Rat::zero(), |acc, (coef, m)| acc + Rat::from_integer((*coef).into()) * m.eval(c, n))
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for (i, (coef, m)) in self.terms.iter().enumerate() {
            let mag = coef.abs();
            let body = if mag == 1 { m.render() } else { format!("{mag} {}", m.render()) };
            match (i, *coef < 0) {
                (0, false) => s.push_str(&body),
                (0, true) => s.push_str(&format!("-{body}")),
                (_, false) => s.push_str(&format!(" + {body}")),
                (_, true) => s.push_str(&format!(" - {body}")),
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ansatz {
    /// The sign factor is `(-1)^(n + sign_shift)`.
    pub sign_shift: i64,
    pub basis: Vec<Monomial>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KFit {
    pub k: i64,
    #[serde(serialize_with = "crate::fmt::rat_vec")]
    pub coeffs: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Fit {
    pub lhs: String,
    pub sign_shift: i64,
    pub basis: Vec<String>,
    pub per_k: Vec<KFit>,
    /// Ascending coefficients in `k` for each basis term, when every
    /// per-`k` coefficient sequence is polynomial.
    #[serde(serialize_with = "opt_rat_rows")]
    pub poly: Option<Vec<Vec<Rat>>>,
    /// Rendered right-hand side, when `poly` exists.
    pub text: Option<String>,
    pub sample: RangeInclusive<i64>,
    pub check: Vec<RangeInclusive<i64>>,
}

fn opt_rat_rows<S: serde::Serializer>(v: &Option<Vec<Vec<Rat>>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(rows) => crate::fmt::rat_rows(rows, s),
        None => s.serialize_none(),
    }
}

fn sign(e: i64) -> Rat {
    if e.rem_euclid(2) == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// Fit `lhs = (-1)^(n+s) sum c_b B_b` for each `k` in `ks`.
///
/// Returns `Ok(None)` when some `k` admits no exact fit or a fit fails the
/// independent re-check.
pub fn correction_solve(lhs: &LhsSpec, ansatz: &Ansatz, ks: &[i64]) -> Result<Option<Fit>> {
    let b = ansatz.basis.len();
    if b == 0 {
        return Err(Error::UnderdeterminedAnsatz("empty ansatz".into()));
    }
    if ks.is_empty() {
        return Err(Error::domain("correction solve", "no values of k"));
    }
    let sample = 2..=(2 + b as i64 + 3);
    let check = vec![-25..=-1, 20..=40];
    let mut per_k = Vec::with_capacity(ks.len());
    for &k in ks {
        let ctx = Ctx::new(SeqParams::new(k)?);
        let row = |n: i64| -> Vec<Rat> {
            let s = sign(n + ansatz.sign_shift);
            ansatz.basis.iter().map(|m| s.clone() * m.eval(&ctx, n)).collect()
        };
        let rows: Vec<Vec<Rat>> = sample.clone().map(row).collect();
        let rhs: Vec<Rat> = sample.clone().map(|n| lhs.eval(&ctx, n)).collect();
        let a = Matrix::from_rows(rows)?;
        let coeffs = match solve(&a, &rhs)? {
            Solution::Unique(c) => c,
            Solution::Inconsistent => return Ok(None),
            Solution::Underdetermined { rank } => {
                return Err(Error::UnderdeterminedAnsatz(format!(
                    "basis of size {b} has rank {rank} on the sample at k = {k}"
                )))
            }
        };
        let survives = check.iter().flat_map(|r| r.clone()).all(|n| {
            let fitted = row(n)
                .into_iter()
                .zip(&coeffs)
                .fold(Rat::zero(), |acc, (x, c)| acc + x * c.clone());
            fitted == lhs.eval(&ctx, n)
        });
        if !survives {
            return Ok(None);
        }
        per_k.push(KFit { k, coeffs });
    }
    let poly: Option<Vec<Vec<Rat>>> = (0..b)
        .map(|j| {
            let pts: Vec<(i64, Rat)> = per_k.iter().map(|f| (f.k, f.coeffs[j].clone())).collect();
            interpolate(&pts)
        })
        .collect();
    let basis: Vec<String> = ansatz.basis.iter().map(Monomial::render).collect();
    let text = poly.as_ref().map(|p| render_rhs(ansatz.sign_shift, p, &basis));
    Ok(Some(Fit {
        lhs: lhs.render(),
        sign_shift: ansatz.sign_shift,
        basis,
        per_k,
        poly,
        text,
        sample,
        check,
    }))
}

/// Lowest-degree polynomial through the points, required to leave at least
/// one point as a check when more than one is given.
fn interpolate(pts: &[(i64, Rat)]) -> Option<Vec<Rat>> {
    if pts.len() == 1 {
        return Some(vec![pts[0].1.clone()]);
    }
    for deg in 0..pts.len() - 1 {
        let a = Matrix::from_fn(deg + 1, deg + 1, |i, e| Rat::from_integer(pts[i].0.into()).pow(e as i32));
        let rhs: Vec<Rat> = pts[..=deg].iter().map(|p| p.1.clone()).collect();
        let Ok(Solution::Unique(c)) = solve(&a, &rhs) else {
            continue;
        };
        let fits = pts.iter().all(|(k, v)| {
            let kr = Rat::from_integer((*k).into());
            c.iter().rev().fold(Rat::zero(), |acc, ci| acc * kr.clone() + ci.clone()) == *v
        });
        if fits {
            let mut c = c;
            while c.len() > 1 && c.last().is_some_and(Zero::is_zero) {
                c.pop();
            }
            return Some(c);
        }
    }
    None
}

fn render_poly(c: &[Rat]) -> String {
    let mut parts: Vec<(bool, String)> = Vec::new();
    for (e, v) in c.iter().enumerate().rev() {
        if v.is_zero() {
            continue;
        }
        let neg = *v < Rat::zero();
        let mag = if neg { -v.clone() } else { v.clone() };
        let kpart = match e {
            0 => String::new(),
            1 => "k".to_string(),
            _ => format!("k^{e}"),
        };
        let body = match (mag.is_one(), kpart.is_empty()) {
            (true, true) => "1".to_string(),
            (true, false) => kpart,
            (false, true) => mag.to_string(),
            (false, false) => format!("{mag} {kpart}"),
        };
        parts.push((neg, body));
    }
    let mut s = String::new();
    for (i, (neg, body)) in parts.iter().enumerate() {
        match (i, neg) {
            (0, false) => s.push_str(body),
            (0, true) => s.push_str(&format!("-{body}")),
            (_, false) => s.push_str(&format!(" + {body}")),
            (_, true) => s.push_str(&format!(" - {body}")),
        }
    }
    if s.is_empty() {
        "0".to_string()
    } else {
        s
    }
}

fn render_rhs(shift: i64, poly: &[Vec<Rat>], basis: &[String]) -> String {
    let sign = if shift.rem_euclid(2) == 0 { "(-1)^n" } else { "(-1)^(n+1)" };
    let mut terms: Vec<String> = Vec::new();
    for (p, m) in poly.iter().zip(basis) {
        if p.iter().all(Zero::is_zero) {
            continue;
        }
        let nonzero = p.iter().filter(|v| !v.is_zero()).count();
        let coef = render_poly(p);
        let t = if nonzero > 1 {
            format!("({coef}) {m}")
        } else if coef == "1" {
            m.clone()
        } else if coef == "-1" {
            format!("-{m}")
        } else {
            format!("{coef} {m}")
        };
        terms.push(t);
    }
    let mut body = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i == 0 {
            body.push_str(t);
        } else if let Some(rest) = t.strip_prefix('-') {
            body.push_str(&format!(" - {rest}"));
        } else {
            body.push_str(&format!(" + {t}"));
        }
    }
    if body.is_empty() {
        body.push('0');
    }
    format!("{sign} [{body}]")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(o: i64, p: u32) -> Factor {
        Factor::fib(o, p)
    }

    fn m(fs: Vec<Factor>) -> Monomial {
        Monomial(fs)
    }

    fn r(v: i64) -> Rat {
        Rat::from_integer(v.into())
    }

    #[test]
    fn recovers_known_identity() {
        let lhs = LhsSpec::difference(m(vec![f(-2, 1), f(1, 2)]), m(vec![f(0, 3)]));
        let ansatz = Ansatz {
            sign_shift: 0,
            basis: vec![m(vec![f(0, 1)]), m(vec![f(-1, 1)])],
        };
        let fit = correction_solve(&lhs, &ansatz, &[1]).unwrap().unwrap();
        assert_eq!(fit.per_k[0].coeffs, vec![r(0), r(-1)]);
        assert_eq!(fit.text.as_deref(), Some("(-1)^n [-F(n-1)]"));
    }

    #[test]
    fn general_fits() {
        let ks: Vec<i64> = (1..=8).collect();
        let lhs = LhsSpec::difference(m(vec![f(1, 1), f(2, 1), f(6, 1)]), m(vec![f(3, 3)]));
        let ansatz = Ansatz {
            sign_shift: 0,
            basis: vec![m(vec![f(0, 1)]), m(vec![f(1, 1)])],
        };
        let fit = correction_solve(&lhs, &ansatz, &ks).unwrap().unwrap();
        assert_eq!(fit.text.as_deref(), Some("(-1)^n [k^3 F(n) + (k^4 - 1) F(n+1)]"));

        let printed = LhsSpec::difference(m(vec![f(1, 1), f(2, 1), f(6, 1)]), m(vec![f(3, 2)]));
        assert_eq!(correction_solve(&printed, &ansatz, &ks).unwrap(), None);

        let lhs = LhsSpec::difference(m(vec![f(3, 1), f(-1, 3)]), m(vec![f(0, 4)]));
        let ansatz = Ansatz {
            sign_shift: 0,
            basis: vec![m(vec![f(0, 2)]), m(vec![f(0, 1), f(-1, 1)]), m(vec![f(-1, 2)])],
        };
        let fit = correction_solve(&lhs, &ansatz, &ks).unwrap().unwrap();
        assert_eq!(fit.text.as_deref(), Some("(-1)^n [F(n)^2 + k F(n)F(n-1) + (k^2 + 1) F(n-1)^2]"));
    }

    #[test]
    fn rational_coefficients_have_no_polynomial() {
        let lhs = LhsSpec::difference(m(vec![f(0, 1), f(4, 1), f(5, 1)]), m(vec![f(3, 3)]));
        let ansatz = Ansatz {
            sign_shift: 1,
            basis: vec![m(vec![f(6, 1)]), m(vec![f(4, 1)])],
        };
        let fit = correction_solve(&lhs, &ansatz, &[1, 2, 3, 4]).unwrap().unwrap();
        assert_eq!(fit.per_k[1].coeffs, vec![Rat::new(1.into(), 2.into()), Rat::new(15.into(), 2.into())]);
        assert!(fit.poly.is_none());
    }

    #[test]
    fn degenerate_ansatz() {
        let lhs = LhsSpec::difference(m(vec![f(1, 2)]), m(vec![f(0, 2)]));
        let empty = Ansatz {
            sign_shift: 0,
            basis: vec![],
        };
        assert!(matches!(correction_solve(&lhs, &empty, &[1]), Err(Error::UnderdeterminedAnsatz(_))));
        let cassini = LhsSpec::difference(m(vec![f(1, 1), f(-1, 1)]), m(vec![f(0, 2)]));
        let repeated = Ansatz {
            sign_shift: 0,
            basis: vec![m(vec![]), m(vec![])],
        };
        assert!(matches!(correction_solve(&cassini, &repeated, &[1]), Err(Error::UnderdeterminedAnsatz(_))));
    }
}
