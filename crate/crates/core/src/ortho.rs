//! Moment sequences, monic orthogonal polynomials, kernel-polynomial Hankel
//! inversion and closed forms for reciprocal Hankel matrices
//! `{1/Z(alpha+i+j)}` with `Z = F` or `L`.
//!
//! The moment functional sends `x^j` to `s_j = Z(alpha)/Z(alpha+j)`. For odd
//! `alpha` it is sign-indefinite, so norms are kept as signed monic norms
//! `h_j = <P_j, P_j>` and determinants as `prod h_j`, which needs no
//! positivity.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{bareiss_det, exact_inverse, Matrix};
use crate::scalar::Scalar;
use crate::seq::{luconomial, Family, FibBinomTable, SeqParams, SeqTable};
use crate::{IntMatrix, Mode, Rat, RatBasis, RatMatrix};

fn check_alpha(context: &'static str, alpha: i64) -> Result<()> {
    if alpha < 1 {
        return Err(Error::domain(context, format!("alpha = {alpha} must be >= 1")));
    }
    Ok(())
}

fn parity_sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn choose2(j: i64) -> i64 {
    j * (j - 1) / 2
}

/// `s_j = Z(alpha)/Z(alpha+j)` for `j < count`.
pub fn moments(family: Family, p: SeqParams, alpha: i64, count: usize) -> Result<Vec<Rat>> {
    check_alpha("moments", alpha)?;
    let seq = SeqTable::new(p, 0);
    let base = seq.get(family, alpha);
    Ok((0..count as i64)
        .map(|j| Rat::new(base.clone(), seq.get(family, alpha + j)))
        .collect())
}

/// Moments `s_0..s_2n` of order `n`, viewed as an `(n+1)x(n+1)` Hankel matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentHankel {
    pub family: Family,
    pub k: i64,
    pub alpha: i64,
    pub order: usize,
    #[serde(serialize_with = "crate::fmt::rat_vec")]
    pub moments: Vec<Rat>,
}

impl MomentHankel {
    pub fn new(family: Family, p: SeqParams, alpha: i64, order: usize) -> Result<Self> {
        let moments = moments(family, p, alpha, 2 * order + 1)?;
        Ok(MomentHankel {
            family,
            k: p.k(),
            alpha,
            order,
            moments,
        })
    }

    pub fn params(&self) -> SeqParams {
        SeqParams::new(self.k).expect("validated at construction")
    }

    /// `H[i][j] = s_(i+j)`.
    pub fn matrix(&self) -> RatMatrix {
        let n = self.order + 1;
        Matrix::from_fn(n, n, |i, j| self.moments[i + j].clone())
    }

    /// `Z(alpha)`, the factor between the moment matrix and the reciprocal one.
    pub fn scale(&self) -> BigInt {
        crate::seq::term(self.params(), self.family, self.alpha)
    }

    /// `{1/Z(alpha+i+j)} = H / Z(alpha)`.
    pub fn reciprocal_matrix(&self) -> RatMatrix {
        let s = Rat::from_integer(self.scale());
        self.matrix().map(|v| v.clone() / s.clone())
    }
}

/// The reciprocal Hankel matrix `{1/Z(alpha+i+j) : 0 <= i,j <= n}`.
pub fn reciprocal_hankel(family: Family, p: SeqParams, alpha: i64, n: usize) -> Result<RatMatrix> {
    Ok(MomentHankel::new(family, p, alpha, n)?.reciprocal_matrix())
}

/// Monic orthogonal polynomials `P_0..P_n` (ascending coefficient rows) and
/// their signed norms `h_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthoBasis<T> {
    pub polys: Vec<Vec<T>>,
    pub norms: Vec<T>,
}

fn pair_with<T: Scalar>(moments: &[T], p: &[T], q: &[T]) -> T {
    let mut acc = T::zero();
    for (a, pa) in p.iter().enumerate() {
        if pa.is_zero() {
            continue;
        }
        for (b, qb) in q.iter().enumerate() {
            acc = acc + pa.clone() * qb.clone() * moments[a + b].clone();
        }
    }
    acc
}

impl<T: Scalar> OrthoBasis<T> {
    /// Gram-Schmidt on `1, x, ..., x^n` against the functional `x^j -> s_j`.
    pub fn from_moments(moments: &[T], n: usize) -> Result<Self> {
        if moments.len() < 2 * n + 1 {
            return Err(Error::domain("monic basis", "need 2n+1 moments"));
        }
        let mut polys: Vec<Vec<T>> = Vec::with_capacity(n + 1);
        let mut norms: Vec<T> = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let mut xj = vec![T::zero(); j + 1];
            xj[j] = T::one();
            let mut pj = xj.clone();
            for (r, (pr, hr)) in polys.iter().zip(&norms).enumerate() {
                let c = pair_with(moments, &xj, pr) / hr.clone();
                for (t, v) in pr.iter().enumerate().take(r + 1) {
                    pj[t] = pj[t].clone() - c.clone() * v.clone();
                }
            }
            let h = pair_with(moments, &pj, &pj);
            if h.is_zero() {
                return Err(Error::DegenerateMoments { order: j });
            }
            polys.push(pj);
            norms.push(h);
        }
        Ok(OrthoBasis { polys, norms })
    }

    pub fn degree(&self) -> usize {
        self.polys.len() - 1
    }

    /// `prod h_j`, equal to the Hankel determinant of order `n`.
    pub fn norm_product(&self) -> T {
        self.norms.iter().fold(T::one(), |acc, h| acc * h.clone())
    }

    /// Gram matrix of the basis against `moments`.
    pub fn gram(&self, moments: &[T]) -> Matrix<T> {
        let n = self.polys.len();
        Matrix::from_fn(n, n, |i, j| pair_with(moments, &self.polys[i], &self.polys[j]))
    }
}

impl Serialize for OrthoBasis<Rat> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        #[derive(Serialize)]
        struct Rows<'a>(#[serde(serialize_with = "crate::fmt::rat_rows")] &'a [Vec<Rat>]);
        #[derive(Serialize)]
        struct Vals<'a>(#[serde(serialize_with = "crate::fmt::rat_vec")] &'a [Rat]);
        let mut st = s.serialize_struct("OrthoBasis", 2)?;
        st.serialize_field("polys", &Rows(&self.polys))?;
        st.serialize_field("norms", &Vals(&self.norms))?;
        st.end()
    }
}

/// Monic basis of a moment Hankel functional.
pub fn monic_basis(mh: &MomentHankel) -> Result<RatBasis> {
    OrthoBasis::from_moments(&mh.moments, mh.order)
}

/// Coefficient table of the kernel `sum_r P_r(x) P_r(y) / h_r`; it is the
/// inverse of the Hankel matrix of the moments the basis came from.
pub fn kernel_inverse<T: Scalar>(basis: &OrthoBasis<T>) -> Result<Matrix<T>> {
    let n = basis.polys.len();
    let mut a = Matrix::from_fn(n, n, |_, _| T::zero());
    for (p, h) in basis.polys.iter().zip(&basis.norms) {
        if h.is_zero() {
            return Err(Error::DegenerateMoments { order: p.len() - 1 });
        }
        for (j, pj) in p.iter().enumerate() {
            for (k, pk) in p.iter().enumerate() {
                a[(j, k)] = a[(j, k)].clone() + pj.clone() * pk.clone() / h.clone();
            }
        }
    }
    Ok(a)
}

struct Fibonomials {
    table: FibBinomTable,
}

impl Fibonomials {
    fn new(p: SeqParams, n_max: i64) -> Result<Self> {
        Ok(Fibonomials {
            table: FibBinomTable::build(p, n_max.max(0) as usize)?,
        })
    }

    fn get(&self, n: i64, j: i64) -> BigInt {
        if n < 0 || j < 0 || j > n {
            BigInt::zero()
        } else {
            self.table.entry(n as usize, j as usize).clone()
        }
    }
}

/// Closed-form integer inverse of `{1/F(alpha+i+j) : 0 <= i,j <= n}`:
/// entry `(j,l)` is
/// `(-1)^((alpha+j+l)n - C(j,2) - C(l,2)) F(alpha+j+l) <alpha+n+j, n-l>
///  <alpha+n+l, n-j> <alpha+j+l-1, j> <alpha+j+l-1, l>`.
pub fn filbert_inverse_closed(p: SeqParams, alpha: i64, n: usize) -> Result<IntMatrix> {
    check_alpha("filbert inverse", alpha)?;
    let ni = n as i64;
    let fb = Fibonomials::new(p, alpha + 2 * ni)?;
    let seq = SeqTable::new(p, 0);
    Ok(Matrix::from_fn(n + 1, n + 1, |j, l| {
        let (j, l) = (j as i64, l as i64);
        let sign = parity_sign((alpha + j + l) * ni - choose2(j) - choose2(l));
        let v = seq.f(alpha + j + l)
            * fb.get(alpha + ni + j, ni - l)
            * fb.get(alpha + ni + l, ni - j)
            * fb.get(alpha + j + l - 1, j)
            * fb.get(alpha + j + l - 1, l);
        v * sign
    }))
}

/// Closed form for `det{1/F(alpha+i+j)}`.
///
/// Corrected: `(-1)^(alpha C(n+1,2)) / (F(alpha) prod_{j=1..n} F(alpha+2j) <alpha+2j-1, j>^2)`.
/// Verbatim: the same with `F(alpha)^n` in place of `F(alpha)` and the
/// fibonomial unsquared.
pub fn filbert_det_closed(p: SeqParams, alpha: i64, n: usize, mode: Mode) -> Result<Rat> {
    check_alpha("filbert determinant", alpha)?;
    let ni = n as i64;
    let fb = Fibonomials::new(p, alpha + 2 * ni)?;
    let seq = SeqTable::new(p, 0);
    let f_alpha = seq.f(alpha);
    let mut den = match mode {
        Mode::Corrected => f_alpha,
        Mode::Verbatim => num_traits::pow(f_alpha, n),
    };
    for j in 1..=ni {
        let c = fb.get(alpha + 2 * j - 1, j);
        let c = match mode {
            Mode::Corrected => &c * &c,
            Mode::Verbatim => c,
        };
        den *= seq.f(alpha + 2 * j) * c;
    }
    let sign = parity_sign(alpha * (ni + 1) * ni / 2);
    Ok(Rat::new(BigInt::from(sign), den))
}

/// Closed form printed for `det{1/L(alpha+i+j)}`:
/// `(-1)^(alpha C(n+1,2)) L(alpha)^-n [prod_{j=1..n} L(alpha+2j) <alpha+2j-1, j>_L]^-1`.
pub fn lucas_det_printed(p: SeqParams, alpha: i64, n: usize) -> Result<Rat> {
    check_alpha("lucas determinant", alpha)?;
    let ni = n as i64;
    let seq = SeqTable::new(p, 0);
    let mut v = Rat::one() / num_traits::pow(Rat::from_integer(seq.l(alpha)), n);
    for j in 1..=ni {
        let c = luconomial(p, alpha + 2 * j - 1, j)?.value;
        v /= Rat::from_integer(seq.l(alpha + 2 * j)) * c;
    }
    Ok(v * Rat::from_integer(parity_sign(alpha * (ni + 1) * ni / 2).into()))
}

/// Coefficients (ascending in `x`) of the degree-`n` polynomial
/// `sum_j <n,j> <alpha+n+j-1, n> (-1)^(nj + C(j,2)) x^j`, built from
/// fibonomials (fib family) or luconomials (lucas family).
pub fn qjacobi_coeffs(family: Family, p: SeqParams, alpha: i64, n: usize) -> Result<Vec<Rat>> {
    check_alpha("q-Jacobi coefficients", alpha)?;
    let ni = n as i64;
    let binom = |a: i64, b: i64| -> Result<Rat> {
        match family {
            Family::Fib => Ok(Rat::from_integer(crate::seq::fibonomial_quotient(p, a, b)?)),
            Family::Lucas => Ok(luconomial(p, a, b)?.value),
        }
    };
    (0..=ni)
        .map(|j| {
            let sign = parity_sign(ni * j + choose2(j));
            Ok(binom(ni, j)? * binom(alpha + ni + j - 1, ni)? * Rat::from_integer(sign.into()))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GramReport {
    pub family: Family,
    pub k: i64,
    pub alpha: i64,
    pub n_max: usize,
    pub gram: RatMatrix,
    pub is_diagonal: bool,
    /// Observed constants `zeta_j` (the Gram diagonal).
    #[serde(serialize_with = "crate::fmt::rat_vec")]
    pub diagonal: Vec<Rat>,
    /// `(-1)^(alpha j) Z(alpha)/Z(alpha+j)`, the constant as printed.
    #[serde(serialize_with = "crate::fmt::rat_vec")]
    pub printed_law: Vec<Rat>,
    pub printed_law_holds: Vec<bool>,
    /// `(-1)^(alpha j) F(alpha)/F(alpha+2j)`; asserted for the fib family only.
    #[serde(serialize_with = "opt_rat_vec")]
    pub corrected_law: Option<Vec<Rat>>,
}

fn opt_rat_vec<S: serde::Serializer>(v: &Option<Vec<Rat>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => crate::fmt::rat_vec(v, s),
        None => s.serialize_none(),
    }
}

impl GramReport {
    /// First degree at which the printed constant disagrees, if any.
    pub fn first_printed_failure(&self) -> Option<usize> {
        self.printed_law_holds.iter().position(|ok| !ok)
    }
}

/// Gram matrix of the `qjacobi_coeffs` polynomials of degree `0..=n_max`
/// against the moment functional.
///
/// For the fib family an off-diagonal entry or a departure from the
/// corrected constant law is an internal inconsistency. The lucas family is
/// reported as observed.
pub fn gram_report(family: Family, p: SeqParams, alpha: i64, n_max: usize) -> Result<GramReport> {
    check_alpha("gram report", alpha)?;
    let s = moments(family, p, alpha, 2 * n_max + 1)?;
    let basis = OrthoBasis {
        polys: (0..=n_max)
            .map(|n| qjacobi_coeffs(family, p, alpha, n))
            .collect::<Result<Vec<_>>>()?,
        norms: vec![Rat::one(); n_max + 1],
    };
    let gram = basis.gram(&s);
    let is_diagonal = (0..=n_max).all(|i| (0..=n_max).all(|j| i == j || gram[(i, j)].is_zero()));
    let diagonal: Vec<Rat> = (0..=n_max).map(|i| gram[(i, i)].clone()).collect();
    let seq = SeqTable::new(p, 0);
    let z = |n: i64| seq.get(family, n);
    let printed_law: Vec<Rat> = (0..=n_max as i64)
        .map(|j| Rat::new(z(alpha) * parity_sign(alpha * j), z(alpha + j)))
        .collect();
    let printed_law_holds = printed_law.iter().zip(&diagonal).map(|(a, b)| a == b).collect();
    let corrected_law = match family {
        Family::Fib => {
            let law: Vec<Rat> = (0..=n_max as i64)
                .map(|j| Rat::new(seq.f(alpha) * parity_sign(alpha * j), seq.f(alpha + 2 * j)))
                .collect();
            if !is_diagonal || law != diagonal {
                return Err(Error::Inconsistent(format!(
                    "fib Gram matrix not diagonal with the expected constants at k = {}, alpha = {alpha}",
                    p.k()
                )));
            }
            Some(law)
        }
        Family::Lucas => None,
    };
    Ok(GramReport {
        family,
        k: p.k(),
        alpha,
        n_max,
        gram,
        is_diagonal,
        diagonal,
        printed_law,
        printed_law_holds,
        corrected_law,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LucasHankelRow {
    pub n: usize,
    #[serde(serialize_with = "crate::fmt::rat")]
    pub det: Rat,
    #[serde(serialize_with = "crate::fmt::rat")]
    pub printed_det: Rat,
    pub printed_holds: bool,
    pub inverse: RatMatrix,
    pub inverse_has_non_integer: bool,
    /// Monic norms of the normalized Lucas moment functional.
    #[serde(serialize_with = "crate::fmt::rat_vec")]
    pub norms: Vec<Rat>,
}

/// Exact determinants and inverses of `{1/L(alpha+i+j)}` for `n = 0..=n_max`,
/// next to the printed determinant formula.
pub fn lucas_hankel_report(p: SeqParams, alpha: i64, n_max: usize) -> Result<Vec<LucasHankelRow>> {
    check_alpha("lucas hankel report", alpha)?;
    (0..=n_max)
        .map(|n| {
            let mh = MomentHankel::new(Family::Lucas, p, alpha, n)?;
            let m = mh.reciprocal_matrix();
            let det = bareiss_det(&m)?;
            let inverse = exact_inverse(&m)?;
            let printed_det = lucas_det_printed(p, alpha, n)?;
            let norms = monic_basis(&mh)?.norms;
            let inverse_has_non_integer = inverse.iter().any(|v| !v.is_integer());
            Ok(LucasHankelRow {
                n,
                printed_holds: printed_det == det,
                det,
                printed_det,
                inverse_has_non_integer,
                inverse,
                norms,
            })
        })
        .collect()
}

/// One `(k, alpha, n)` point of the fib-family oracle comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridRow {
    pub k: i64,
    pub alpha: i64,
    pub n: usize,
    pub inverse_matches_oracle: bool,
    pub kernel_matches_oracle: bool,
    pub inverse_all_integer: bool,
    #[serde(serialize_with = "crate::fmt::rat")]
    pub det_oracle: Rat,
    #[serde(serialize_with = "crate::fmt::rat")]
    pub det_corrected: Rat,
    #[serde(serialize_with = "crate::fmt::rat")]
    pub det_verbatim: Rat,
    /// `det_verbatim / det_oracle`.
    #[serde(serialize_with = "crate::fmt::rat")]
    pub verbatim_ratio: Rat,
    pub det_times_inverse_det_is_one: bool,
    pub norm_product_matches: bool,
}

impl GridRow {
    pub fn corrected_ok(&self) -> bool {
        self.inverse_matches_oracle
            && self.kernel_matches_oracle
            && self.inverse_all_integer
            && self.det_corrected == self.det_oracle
            && self.det_times_inverse_det_is_one
            && self.norm_product_matches
    }

    pub fn verbatim_ok(&self) -> bool {
        self.det_verbatim == self.det_oracle
    }
}

/// Compare closed forms, oracle and kernel inversion at one grid point.
pub fn filbert_grid_row(p: SeqParams, alpha: i64, n: usize) -> Result<GridRow> {
    let mh = MomentHankel::new(Family::Fib, p, alpha, n)?;
    let recip = mh.reciprocal_matrix();
    let oracle_inv = exact_inverse(&recip)?;
    let closed = filbert_inverse_closed(p, alpha, n)?.map(|v| Rat::from_integer(v.clone()));

    // The kernel inverts the moment matrix H = F(alpha) * recip.
    let basis = monic_basis(&mh)?;
    let scale = Rat::from_integer(mh.scale());
    let kernel = kernel_inverse(&basis)?.map(|v| v.clone() * scale.clone());

    let det_oracle = bareiss_det(&recip)?;
    let det_corrected = filbert_det_closed(p, alpha, n, Mode::Corrected)?;
    let det_verbatim = filbert_det_closed(p, alpha, n, Mode::Verbatim)?;
    let det_inv = bareiss_det(&closed)?;
    let moment_det = bareiss_det(&mh.matrix())?;
    let inverse_all_integer = oracle_inv.iter().all(|v| v.is_integer());
    Ok(GridRow {
        k: p.k(),
        alpha,
        n,
        inverse_matches_oracle: closed == oracle_inv,
        kernel_matches_oracle: kernel == oracle_inv,
        inverse_all_integer,
        verbatim_ratio: det_verbatim.clone() / det_oracle.clone(),
        det_times_inverse_det_is_one: (det_oracle.clone() * det_inv).is_one(),
        norm_product_matches: basis.norm_product() == moment_det,
        det_oracle,
        det_corrected,
        det_verbatim,
    })
}

/// Grid sweep in deterministic `(k, alpha, n)` order.
pub fn filbert_grid(ks: &[i64], alphas: &[i64], ns: &[usize]) -> Result<Vec<GridRow>> {
    let points: Vec<(i64, i64, usize)> = ks
        .iter()
        .flat_map(|&k| alphas.iter().flat_map(move |&a| ns.iter().map(move |&n| (k, a, n))))
        .collect();
    points
        .par_iter()
        .map(|&(k, a, n)| filbert_grid_row(SeqParams::new(k)?, a, n))
        .collect()
}

/// Sign of the moment Hankel determinant, for the positivity check.
pub fn moment_det_sign(family: Family, p: SeqParams, alpha: i64, n: usize) -> Result<i8> {
    let det = bareiss_det(&MomentHankel::new(family, p, alpha, n)?.matrix())?;
    Ok(if det.is_zero() {
        0
    } else if det.is_positive() {
        1
    } else {
        -1
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(k: i64) -> SeqParams {
        SeqParams::new(k).unwrap()
    }

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn int_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
        m.to_rows()
            .iter()
            .map(|row| row.iter().map(|v| i64::try_from(v).unwrap()).collect())
            .collect()
    }

    #[test]
    fn moment_values() {
        assert_eq!(
            moments(Family::Fib, p(1), 1, 5).unwrap(),
            vec![r(1, 1), r(1, 1), r(1, 2), r(1, 3), r(1, 5)]
        );
        assert_eq!(moments(Family::Fib, p(2), 2, 3).unwrap(), vec![r(1, 1), r(2, 5), r(1, 6)]);
        assert_eq!(
            moments(Family::Lucas, p(1), 1, 4).unwrap(),
            vec![r(1, 1), r(1, 3), r(1, 4), r(1, 7)]
        );
        assert!(moments(Family::Fib, p(1), 0, 3).is_err());
    }

    #[test]
    fn monic_basis_values() {
        let mh = MomentHankel::new(Family::Fib, p(1), 1, 2).unwrap();
        let b = monic_basis(&mh).unwrap();
        assert_eq!(b.polys[1], vec![r(-1, 1), r(1, 1)]);
        assert_eq!(b.polys[2], vec![r(-1, 6), r(-1, 3), r(1, 1)]);
        assert_eq!(b.norms, vec![r(1, 1), r(-1, 2), r(1, 180)]);

        let mh = MomentHankel::new(Family::Lucas, p(1), 1, 1).unwrap();
        let b = monic_basis(&mh).unwrap();
        assert_eq!(b.polys[1], vec![r(-1, 3), r(1, 1)]);
        assert_eq!(b.norms[1], r(5, 36));
    }

    #[test]
    fn degenerate_moments() {
        let s = vec![r(1, 1), r(1, 1), r(1, 1)];
        assert_eq!(OrthoBasis::from_moments(&s, 1), Err(Error::DegenerateMoments { order: 1 }));
    }

    #[test]
    fn kernel_inverse_values() {
        let mh = MomentHankel::new(Family::Fib, p(1), 1, 2).unwrap();
        let a = kernel_inverse(&monic_basis(&mh).unwrap()).unwrap();
        assert_eq!(a[(0, 0)], r(4, 1));
        assert_eq!(a[(1, 2)], r(-60, 1));
        assert_eq!(a[(2, 2)], r(180, 1));
        assert!(a.is_symmetric());
        assert_eq!(a, exact_inverse(&mh.matrix()).unwrap());

        let mh0 = MomentHankel::new(Family::Fib, p(3), 2, 0).unwrap();
        let a0 = kernel_inverse(&monic_basis(&mh0).unwrap()).unwrap();
        assert_eq!(a0.to_rows(), vec![vec![r(1, 1)]]);
    }

    #[test]
    fn closed_inverse() {
        assert_eq!(int_rows(&filbert_inverse_closed(p(1), 1, 1).unwrap()), vec![vec![-1, 2], vec![2, -2]]);
        assert_eq!(
            int_rows(&filbert_inverse_closed(p(1), 1, 2).unwrap()),
            vec![vec![4, 12, -30], vec![12, 18, -60], vec![-30, -60, 180]]
        );
        for k in 1..4 {
            for a in 1..4 {
                let m = filbert_inverse_closed(p(k), a, 0).unwrap();
                assert_eq!(m.to_rows(), vec![vec![crate::seq::fib(p(k), a)]]);
            }
        }
    }

    #[test]
    fn closed_determinants() {
        assert_eq!(filbert_det_closed(p(1), 1, 2, Mode::Corrected).unwrap(), r(-1, 360));
        assert_eq!(filbert_det_closed(p(1), 1, 2, Mode::Verbatim).unwrap(), r(-1, 60));
        assert_eq!(filbert_det_closed(p(1), 2, 1, Mode::Corrected).unwrap(), r(1, 12));
        assert_eq!(filbert_det_closed(p(1), 1, 1, Mode::Corrected).unwrap(), r(-1, 2));
        assert_eq!(filbert_det_closed(p(1), 1, 1, Mode::Verbatim).unwrap(), r(-1, 2));
    }

    #[test]
    fn qjacobi_values() {
        assert_eq!(qjacobi_coeffs(Family::Fib, p(1), 1, 1).unwrap(), vec![r(1, 1), r(-1, 1)]);
        assert_eq!(qjacobi_coeffs(Family::Fib, p(1), 1, 2).unwrap(), vec![r(1, 1), r(2, 1), r(-6, 1)]);
        assert_eq!(qjacobi_coeffs(Family::Lucas, p(1), 1, 1).unwrap(), vec![r(1, 1), r(-3, 1)]);
    }

    #[test]
    fn gram_values() {
        let g = gram_report(Family::Fib, p(1), 1, 2).unwrap();
        assert!(g.is_diagonal);
        assert_eq!(g.diagonal[1], r(-1, 2));
        assert_eq!(g.diagonal[2], r(1, 5));
        assert_eq!(g.printed_law[1], r(-1, 1));
        assert_eq!(g.first_printed_failure(), Some(1));

        let g = gram_report(Family::Fib, p(1), 2, 1).unwrap();
        assert_eq!(g.diagonal[1], r(1, 3));

        let g = gram_report(Family::Lucas, p(1), 1, 2).unwrap();
        assert_eq!(g.diagonal[1], r(5, 4));
        assert_eq!(g.printed_law[1], r(-1, 3));
        assert!(!g.printed_law_holds[1]);
        assert!(!g.is_diagonal);
        assert!(g.corrected_law.is_none());
    }

    #[test]
    fn lucas_rows() {
        let rows = lucas_hankel_report(p(1), 1, 1).unwrap();
        assert_eq!(rows[1].det, r(5, 36));
        assert_eq!(rows[1].printed_det, r(-1, 12));
        assert!(!rows[1].printed_holds);
        assert_eq!(
            rows[1].inverse.to_rows(),
            vec![vec![r(9, 5), r(-12, 5)], vec![r(-12, 5), r(36, 5)]]
        );
        assert!(rows[1].inverse_has_non_integer);
        let rows = lucas_hankel_report(p(2), 1, 0).unwrap();
        assert_eq!(rows[0].det, r(1, 2));
    }

    #[test]
    fn float_basis_tracks_exact_one() {
        let s: Vec<f64> = [1.0, 1.0, 0.5, 1.0 / 3.0, 0.2].to_vec();
        let b = OrthoBasis::from_moments(&s, 2).unwrap();
        assert!((b.norms[2] - 1.0 / 180.0).abs() < 1e-12);
        assert!((b.norm_product() + 1.0 / 360.0).abs() < 1e-12);
    }
}
