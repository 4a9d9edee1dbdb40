//! Generalized Fibonacci and Lucas numbers for an integer parameter `k >= 1`.
//!
//! `F` and `L` both solve `y(n+1) = k*y(n) + y(n-1)`, with `F(1) = 1, F(2) = k`
//! and `L(0) = 2, L(1) = k`. Negative indices follow `F(-n) = (-1)^(n-1) F(n)`
//! and `L(-n) = (-1)^n L(n)`.
//!
//! Every value here is produced by more than one route (plain recurrence,
//! index doubling, field closed form, hyperbolic binomial sum) so that the
//! routes can check each other.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad::{constants, Quad};
use crate::{Mode, QuadRat, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Fib,
    Lucas,
}

impl Family {
    pub fn symbol(self) -> char {
        match self {
            Family::Fib => 'F',
            Family::Lucas => 'L',
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Fib => "fib",
            Family::Lucas => "lucas",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fib" | "F" => Ok(Family::Fib),
            "lucas" | "L" => Ok(Family::Lucas),
            other => Err(Error::domain("family", format!("unknown family `{other}`"))),
        }
    }
}

/// The integer parameter `k = 2 sinh(theta)` and its discriminant `k^2 + 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SeqParams {
    k: i64,
    #[serde(rename = "D")]
    d: i64,
}

impl SeqParams {
    pub fn new(k: i64) -> Result<Self> {
        if k < 1 {
            return Err(Error::domain("sequence parameters", format!("k = {k} must be >= 1")));
        }
        let d = k
            .checked_mul(k)
            .and_then(|v| v.checked_add(4))
            .ok_or_else(|| Error::domain("sequence parameters", format!("k = {k} too large")))?;
        Ok(SeqParams { k, d })
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn k_big(&self) -> BigInt {
        BigInt::from(self.k)
    }
}

fn run_recurrence(k: &BigInt, mut prev: BigInt, mut cur: BigInt, steps: u64) -> BigInt {
    for _ in 0..steps {
        let next = k * &cur + &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    prev
}

/// `F(n)` by direct recurrence.
pub fn fib(p: SeqParams, n: i64) -> BigInt {
    let m = n.unsigned_abs();
    let v = run_recurrence(&p.k_big(), BigInt::zero(), BigInt::one(), m);
    if n < 0 && m % 2 == 0 {
        -v
    } else {
        v
    }
}

/// `L(n)` by direct recurrence.
pub fn lucas(p: SeqParams, n: i64) -> BigInt {
    let m = n.unsigned_abs();
    let v = run_recurrence(&p.k_big(), BigInt::from(2), p.k_big(), m);
    if n < 0 && m % 2 == 1 {
        -v
    } else {
        v
    }
}

pub fn term(p: SeqParams, family: Family, n: i64) -> BigInt {
    match family {
        Family::Fib => fib(p, n),
        Family::Lucas => lucas(p, n),
    }
}

/// `(F(n), F(n+1), L(n))` from index doubling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Doubled {
    #[serde(serialize_with = "crate::fmt::int")]
    pub f_n: BigInt,
    #[serde(serialize_with = "crate::fmt::int")]
    pub f_next: BigInt,
    #[serde(serialize_with = "crate::fmt::int")]
    pub l_n: BigInt,
}

/// O(log n) evaluation via `F(2n) = F(n)L(n)`, `F(2n+1) = F(n+1)^2 + F(n)^2`
/// and `L(2n) = L(n)^2 - 2(-1)^n`.
pub fn pair_doubling(p: SeqParams, n: u64) -> Doubled {
    let k = p.k_big();
    let mut f = BigInt::zero();
    let mut f1 = BigInt::one();
    let mut l = BigInt::from(2);
    let mut idx: u64 = 0;
    for bit in (0..u64::BITS - n.leading_zeros()).rev() {
        // (idx) -> (2 idx)
        let two_sign = if idx % 2 == 0 { BigInt::from(2) } else { BigInt::from(-2) };
        let f2 = &f * &l;
        let f2_1 = &f1 * &f1 + &f * &f;
        let l2 = &l * &l - two_sign;
        f = f2;
        f1 = f2_1;
        l = l2;
        idx *= 2;
        if (n >> bit) & 1 == 1 {
            // (idx) -> (idx + 1): L(m+1) = F(m+2) + F(m)
            let f_next2 = &k * &f1 + &f;
            l = &f_next2 + &f;
            f = std::mem::replace(&mut f1, f_next2);
            idx += 1;
        }
    }
    debug_assert_eq!(idx, n);
    Doubled {
        f_n: f,
        f_next: f1,
        l_n: l,
    }
}

/// Field closed form: `F(n) = e^((n-1)t) (1 - q^n)/(1 - q)`,
/// `L(n) = e^(nt) (1 + q^n)`. The result must be a rational integer.
pub fn closed_form(p: SeqParams, family: Family, n: i64) -> Result<QuadRat> {
    let c = constants(p.k())?;
    let one = Quad::one(c.d)?;
    let qn = c.q.pow(n)?;
    match family {
        Family::Fib => {
            let num = one.sub(&qn)?;
            let den = one.sub(&c.q)?;
            c.e_theta.pow(n - 1)?.mul(&num)?.div(&den)
        }
        Family::Lucas => c.e_theta.pow(n)?.mul(&one.add(&qn)?),
    }
}

fn binom(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Result of evaluating a hyperbolic binomial sum against its claimed value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HyperbolicCheck {
    pub family: Family,
    pub n: u64,
    #[serde(serialize_with = "crate::fmt::rat")]
    pub sum: Rat,
    #[serde(serialize_with = "crate::fmt::int")]
    pub claimed: BigInt,
    pub holds: bool,
}

/// Binomial sum in `sinh = k/2`, `cosh^2 = (k^2+4)/4`.
///
/// Corrected form: `F(n+1) = sum_j C(n+1, 2j+1) sinh^(n-2j) cosh^(2j)` and
/// `L(n) = 2 sum_j C(n, 2j) sinh^(n-2j) cosh^(2j)`. Verbatim form compares
/// the first sum against `F(n)` and the second (without the factor 2)
/// against `L(n)`.
pub fn hyperbolic_sum(p: SeqParams, family: Family, n: u64, mode: Mode) -> HyperbolicCheck {
    let sinh = Rat::new(p.k_big(), BigInt::from(2));
    let cosh2 = Rat::new(BigInt::from(p.d()), BigInt::from(4));
    let mut sum = Rat::zero();
    for j in 0..=n / 2 {
        let c = match family {
            Family::Fib => binom(n + 1, 2 * j + 1),
            Family::Lucas => binom(n, 2 * j),
        };
        let t = Rat::from_integer(c)
            * num_traits::pow(sinh.clone(), (n - 2 * j) as usize)
            * num_traits::pow(cosh2.clone(), j as usize);
        sum += t;
    }
    let n_i = n as i64;
    let (sum, claimed) = match (family, mode) {
        (Family::Fib, Mode::Corrected) => (sum, fib(p, n_i + 1)),
        (Family::Fib, Mode::Verbatim) => (sum, fib(p, n_i)),
        (Family::Lucas, Mode::Corrected) => (sum * Rat::from_integer(2.into()), lucas(p, n_i)),
        (Family::Lucas, Mode::Verbatim) => (sum, lucas(p, n_i)),
    };
    let holds = sum == Rat::from_integer(claimed.clone());
    HyperbolicCheck {
        family,
        n,
        sum,
        claimed,
        holds,
    }
}

/// Corrected hyperbolic sum, asserted equal to `F(n+1)` (resp. `L(n)`).
pub fn explicit_hyperbolic(p: SeqParams, family: Family, n: u64) -> Result<Rat> {
    let check = hyperbolic_sum(p, family, n, Mode::Corrected);
    if !check.holds {
        return Err(Error::Inconsistent(format!(
            "hyperbolic sum {} != {} for {family} at k = {}, n = {n}",
            check.sum,
            check.claimed,
            p.k()
        )));
    }
    Ok(check.sum)
}

/// Fibonomial by the product quotient `F(n)...F(n-j+1) / (F(1)...F(j))`.
pub fn fibonomial_quotient(p: SeqParams, n: i64, j: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::domain("fibonomial", format!("n = {n} must be >= 0")));
    }
    if j < 0 || j > n {
        return Ok(BigInt::zero());
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 1..=j {
        num *= fib(p, n - i + 1);
        den *= fib(p, i);
    }
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::Inconsistent(format!(
            "fibonomial <{n},{j}> not integral at k = {}",
            p.k()
        )));
    }
    Ok(q)
}

/// Fibonomial row by row from `<n,j> = F(j-1)<n-1,j> + F(n-j+1)<n-1,j-1>`.
pub fn fibonomial_recurrence(p: SeqParams, n: i64, j: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::domain("fibonomial", format!("n = {n} must be >= 0")));
    }
    if j < 0 || j > n {
        return Ok(BigInt::zero());
    }
    let table = FibBinomTable::build(p, n as usize)?;
    Ok(table.entry(n as usize, j as usize).clone())
}

/// Fibonomial coefficient, computed by quotient and by recurrence and
/// cross-checked. Zero outside `0 <= j <= n`.
pub fn fibonomial(p: SeqParams, n: i64, j: i64) -> Result<BigInt> {
    let a = fibonomial_quotient(p, n, j)?;
    let b = fibonomial_recurrence(p, n, j)?;
    if a != b {
        return Err(Error::Inconsistent(format!(
            "fibonomial <{n},{j}>: quotient {a} != recurrence {b} at k = {}",
            p.k()
        )));
    }
    Ok(a)
}

/// Triangular table of fibonomials built by the row recurrence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibBinomTable {
    pub k: i64,
    #[serde(serialize_with = "int_rows")]
    rows: Vec<Vec<BigInt>>,
}

fn int_rows<S: serde::Serializer>(rows: &[Vec<BigInt>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<Vec<crate::fmt::IntRef<'_>>> = rows
        .iter()
        .map(|r| r.iter().map(crate::fmt::IntRef).collect())
        .collect();
    v.serialize(s)
}

impl FibBinomTable {
    pub fn build(p: SeqParams, n_max: usize) -> Result<Self> {
        let f: Vec<BigInt> = (-1..=n_max as i64 + 1).map(|i| fib(p, i)).collect();
        let fv = |i: i64| &f[(i + 1) as usize];
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for n in 1..=n_max {
            let prev = &rows[n - 1];
            let get = |j: i64| -> BigInt {
                if j < 0 || j as usize >= prev.len() {
                    BigInt::zero()
                } else {
                    prev[j as usize].clone()
                }
            };
            let row: Vec<BigInt> = (0..=n as i64)
                .map(|j| fv(j - 1) * get(j) + fv(n as i64 - j + 1) * get(j - 1))
                .collect();
            rows.push(row);
        }
        let table = FibBinomTable { k: p.k(), rows };
        table.check()?;
        Ok(table)
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn entry(&self, n: usize, j: usize) -> &BigInt {
        &self.rows[n][j]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Positivity and row symmetry.
    pub fn check(&self) -> Result<()> {
        for (n, row) in self.rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_positive() || *v != row[n - j] {
                    return Err(Error::Inconsistent(format!(
                        "fibonomial table at k = {} broken at ({n},{j})",
                        self.k
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Luconomial {
    #[serde(serialize_with = "crate::fmt::rat")]
    pub value: Rat,
    pub is_integer: bool,
}

/// Lucas analogue `L(n)...L(n-j+1) / (L(1)...L(j))`; generally not an integer.
pub fn luconomial(p: SeqParams, n: i64, j: i64) -> Result<Luconomial> {
    if n < 0 || j < 0 || j > n {
        return Err(Error::domain(
            "luconomial",
            format!("need 0 <= j <= n, got n = {n}, j = {j}"),
        ));
    }
    let mut value = Rat::one();
    for i in 1..=j {
        value *= Rat::new(lucas(p, n - i + 1), lucas(p, i));
    }
    let is_integer = value.is_integer();
    Ok(Luconomial { value, is_integer })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OddLuconomialEntry {
    pub n: i64,
    pub j: i64,
    #[serde(serialize_with = "crate::fmt::rat")]
    pub value: Rat,
    pub is_integer: bool,
}

/// Quotients built from odd-indexed Lucas numbers only:
/// `prod_{i<=j} L(2(n-j+i)-1) / prod_{i<=j} L(2i-1)`.
pub fn odd_luconomial_probe(p: SeqParams, n_max: i64) -> Result<Vec<OddLuconomialEntry>> {
    if n_max < 1 {
        return Err(Error::domain("odd luconomial probe", "n_max must be >= 1"));
    }
    let mut out = Vec::new();
    for n in 1..=n_max {
        for j in 0..=n {
            let mut value = Rat::one();
            for i in 1..=j {
                value *= Rat::new(lucas(p, 2 * (n - j + i) - 1), lucas(p, 2 * i - 1));
            }
            out.push(OddLuconomialEntry {
                n,
                j,
                is_integer: value.is_integer(),
                value,
            });
        }
    }
    Ok(out)
}

pub type Mat2 = [[BigInt; 2]; 2];

fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixPower {
    pub n: u64,
    #[serde(serialize_with = "mat2_ser")]
    pub matrix: Mat2,
    #[serde(serialize_with = "crate::fmt::int")]
    pub det: BigInt,
}

fn mat2_ser<S: serde::Serializer>(m: &Mat2, s: S) -> std::result::Result<S::Ok, S::Error> {
    use crate::fmt::IntRef;
    [[IntRef(&m[0][0]), IntRef(&m[0][1])], [IntRef(&m[1][0]), IntRef(&m[1][1])]].serialize(s)
}

/// `[[k,1],[1,0]]^n` by binary exponentiation, checked against
/// `[[F(n+1),F(n)],[F(n),F(n-1)]]` with determinant `(-1)^n`.
pub fn matrix_power(p: SeqParams, n: u64) -> Result<MatrixPower> {
    if n < 1 {
        return Err(Error::domain("matrix power", "n must be >= 1"));
    }
    let base: Mat2 = [[p.k_big(), BigInt::one()], [BigInt::one(), BigInt::zero()]];
    let mut result: Mat2 = [[BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]];
    let mut b = base;
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result = mat2_mul(&result, &b);
        }
        e >>= 1;
        if e > 0 {
            b = mat2_mul(&b, &b);
        }
    }
    let ni = n as i64;
    let expected: Mat2 = [
        [fib(p, ni + 1), fib(p, ni)],
        [fib(p, ni), fib(p, ni - 1)],
    ];
    let det = &result[0][0] * &result[1][1] - &result[0][1] * &result[1][0];
    let want_det = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    if result != expected || det != want_det {
        return Err(Error::Inconsistent(format!("matrix power mismatch at k = {}, n = {n}", p.k())));
    }
    Ok(MatrixPower {
        n,
        matrix: result,
        det,
    })
}

/// Cached `F` and `L` over a symmetric index window, for sweeps.
#[derive(Clone, Debug)]
pub struct SeqTable {
    params: SeqParams,
    radius: i64,
    f: Vec<BigInt>,
    l: Vec<BigInt>,
}

impl SeqTable {
    pub fn new(params: SeqParams, radius: u32) -> Self {
        let radius = radius as i64;
        let (f, l) = (-radius..=radius)
            .map(|n| (fib(params, n), lucas(params, n)))
            .unzip();
        SeqTable {
            params,
            radius,
            f,
            l,
        }
    }

    pub fn params(&self) -> SeqParams {
        self.params
    }

    pub fn k(&self) -> i64 {
        self.params.k()
    }

    pub fn f(&self, n: i64) -> BigInt {
        if n.abs() <= self.radius {
            self.f[(n + self.radius) as usize].clone()
        } else {
            fib(self.params, n)
        }
    }

    pub fn l(&self, n: i64) -> BigInt {
        if n.abs() <= self.radius {
            self.l[(n + self.radius) as usize].clone()
        } else {
            lucas(self.params, n)
        }
    }

    pub fn get(&self, family: Family, n: i64) -> BigInt {
        match family {
            Family::Fib => self.f(n),
            Family::Lucas => self.l(n),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(k: i64) -> SeqParams {
        SeqParams::new(k).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn fib_values() {
        let got: Vec<_> = (1..=7).map(|n| fib(p(1), n)).collect();
        assert_eq!(got, ints(&[1, 1, 2, 3, 5, 8, 13]));
        let got: Vec<_> = (1..=6).map(|n| fib(p(2), n)).collect();
        assert_eq!(got, ints(&[1, 2, 5, 12, 29, 70]));
        assert_eq!(fib(p(2), -3), BigInt::from(5));
        assert_eq!(fib(p(2), -2), BigInt::from(-2));
    }

    #[test]
    fn lucas_values() {
        let got: Vec<_> = (0..=6).map(|n| lucas(p(1), n)).collect();
        assert_eq!(got, ints(&[2, 1, 3, 4, 7, 11, 18]));
        let got: Vec<_> = (0..=5).map(|n| lucas(p(2), n)).collect();
        assert_eq!(got, ints(&[2, 2, 6, 14, 34, 82]));
        assert_eq!(lucas(p(3), 4), BigInt::from(119));
        assert_eq!(lucas(p(1), -3), BigInt::from(-4));
    }

    #[test]
    fn doubling() {
        let d = pair_doubling(p(1), 10);
        assert_eq!((d.f_n, d.f_next, d.l_n), (55.into(), 89.into(), 123.into()));
        assert_eq!(pair_doubling(p(2), 8).f_n, BigInt::from(408));
        let d = pair_doubling(p(1), 0);
        assert_eq!((d.f_n, d.f_next, d.l_n), (0.into(), 1.into(), 2.into()));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form(p(1), Family::Fib, 5).unwrap().as_integer(), Some(5.into()));
        assert_eq!(closed_form(p(2), Family::Lucas, 3).unwrap().as_integer(), Some(14.into()));
        assert_eq!(closed_form(p(1), Family::Fib, -4).unwrap().as_integer(), Some((-3).into()));
    }

    #[test]
    fn hyperbolic() {
        assert_eq!(explicit_hyperbolic(p(1), Family::Fib, 1).unwrap(), Rat::from_integer(1.into()));
        assert_eq!(explicit_hyperbolic(p(2), Family::Fib, 2).unwrap(), Rat::from_integer(5.into()));
        assert_eq!(explicit_hyperbolic(p(1), Family::Lucas, 2).unwrap(), Rat::from_integer(3.into()));
        assert!(!hyperbolic_sum(p(2), Family::Fib, 1, Mode::Verbatim).holds);
        assert!(!hyperbolic_sum(p(1), Family::Lucas, 0, Mode::Verbatim).holds);
    }

    #[test]
    fn fibonomials() {
        assert_eq!(fibonomial(p(1), 5, 2).unwrap(), BigInt::from(15));
        assert_eq!(fibonomial(p(2), 4, 2).unwrap(), BigInt::from(30));
        for k in 1..4 {
            for n in 0..8 {
                assert_eq!(fibonomial(p(k), n, 0).unwrap(), BigInt::one());
                assert_eq!(fibonomial(p(k), n, n + 1).unwrap(), BigInt::zero());
                assert_eq!(fibonomial(p(k), n, -1).unwrap(), BigInt::zero());
            }
        }
        assert!(fibonomial(p(1), -1, 0).is_err());
    }

    #[test]
    fn luconomials() {
        let v = luconomial(p(1), 4, 2).unwrap();
        assert_eq!(v.value, Rat::new(28.into(), 3.into()));
        assert!(!v.is_integer);
        assert_eq!(luconomial(p(1), 3, 1).unwrap().value, Rat::from_integer(4.into()));
        assert_eq!(luconomial(p(5), 6, 0).unwrap().value, Rat::one());
        assert!(luconomial(p(1), 3, 4).is_err());
    }

    #[test]
    fn odd_probe() {
        let table = odd_luconomial_probe(p(1), 4).unwrap();
        let find = |n, j| table.iter().find(|e| e.n == n && e.j == j).unwrap().clone();
        assert_eq!(find(2, 1).value, Rat::from_integer(4.into()));
        assert_eq!(find(3, 2).value, Rat::from_integer(11.into()));
        let e = find(4, 2);
        assert_eq!(e.value, Rat::new(319.into(), 4.into()));
        assert!(!e.is_integer);
    }

    #[test]
    fn matrix_powers() {
        let m = matrix_power(p(1), 5).unwrap();
        assert_eq!(m.matrix, [[8.into(), 5.into()], [5.into(), 3.into()]]);
        assert_eq!(m.det, BigInt::from(-1));
        let m = matrix_power(p(2), 3).unwrap();
        assert_eq!(m.matrix, [[12.into(), 5.into()], [5.into(), 2.into()]]);
        let m = matrix_power(p(7), 1).unwrap();
        assert_eq!(m.matrix, [[7.into(), 1.into()], [1.into(), 0.into()]]);
    }

    #[test]
    fn table_lookup_matches_direct() {
        let t = SeqTable::new(p(3), 10);
        for n in -15..15 {
            assert_eq!(t.f(n), fib(p(3), n));
            assert_eq!(t.l(n), lucas(p(3), n));
        }
    }

    #[test]
    fn bad_k() {
        assert!(SeqParams::new(0).is_err());
    }
}
