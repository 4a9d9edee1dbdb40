//! Exact arithmetic for one-parameter generalized Fibonacci and Lucas numbers.
//!
//! For an integer `k >= 1` the sequences `F(n)` and `L(n)` solve
//! `y(n+1) = k*y(n) + y(n-1)`; `k = 1` gives the classical numbers. The crate
//! covers
//!
//! * [`quad`]: the quadratic field `Q(sqrt(k^2+4))` that houses the closed forms,
//! * [`seq`]: sequence generation, fibonomials, luconomials and matrix powers,
//! * [`matrix`] and [`ortho`]: exact Hankel determinants and inverses, monic
//!   orthogonal polynomials from moments, kernel-polynomial inversion and the
//!   closed forms for reciprocal (Filbert-type) Hankel matrices,
//! * [`identity`]: a registry of identities with exact sweeps, counterexample
//!   capture and a coefficient-fitting correction solver,
//! * [`pell`]: descent solvers for `y^2 - kxy - x^2 = +-1`, `n^2(k^2+4) +- 4`
//!   squares and the cubic surface `z^3 - k^3 y^3 - x^3 = 3kxyz`,
//! * [`errata`]: the one-shot run that assembles every check into a ledger.
//!
//! Linear algebra and field arithmetic are generic over [`scalar::Scalar`];
//! the aliases below fix the exact instantiation used everywhere else.

pub mod errata;
pub mod error;
pub mod fmt;
pub mod identity;
pub mod matrix;
pub mod ortho;
pub mod pell;
pub mod quad;
pub mod scalar;
pub mod seq;

use serde::Serialize;

pub use error::{Error, Result};
pub use quad::{constants, ArithOp, FieldConstants, Quad};
pub use seq::{Family, SeqParams};

/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;
/// Canonical exact rational (`gcd(num, den) = 1`, `den > 0`).
pub type Rat = num_rational::BigRational;
/// Element of `Q(sqrt(D))` with rational coordinates.
pub type QuadRat = Quad<Rat>;
/// Dense exact rational matrix.
pub type RatMatrix = matrix::Matrix<Rat>;
/// Dense big-integer matrix.
pub type IntMatrix = matrix::Matrix<Int>;
/// Monic orthogonal basis with exact rational coefficients.
pub type RatBasis = ortho::OrthoBasis<Rat>;

/// Which reading of a closed form to evaluate: the repaired statement or the
/// expression exactly as originally printed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Corrected,
    Verbatim,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "corrected" => Ok(Mode::Corrected),
            "verbatim" => Ok(Mode::Verbatim),
            other => Err(Error::Domain {
                context: "mode",
                message: format!("unknown mode `{other}`"),
            }),
        }
    }
}
