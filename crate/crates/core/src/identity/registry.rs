use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Ctx, Expectation, Form, Identity, Side, Sym};
use crate::seq::{hyperbolic_sum, Family};
use crate::{Mode, Rat};

use Expectation::{Holds, Misprint};
use Sym::{Alpha, I, J, M, N};

fn sg(e: i64) -> Rat {
    if e.rem_euclid(2) == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

fn int(v: i64) -> Rat {
    Rat::from_integer(v.into())
}

fn big(v: BigInt) -> Rat {
    Rat::from_integer(v)
}

fn ok(l: Rat, r: Rat) -> (Side, Side) {
    (Some(l), Some(r))
}

fn modulo(a: BigInt, m: BigInt) -> Rat {
    if m.is_zero() {
        return big(a);
    }
    big(a.mod_floor(&m.abs()))
}

fn gcd(a: BigInt, b: BigInt) -> Rat {
    big(a.gcd(&b))
}

/// `F(-n)` by running the recurrence backwards from `F(1), F(0)`.
fn fib_backward(c: &Ctx, n: i64) -> BigInt {
    let k = c.params().k_big();
    let (mut hi, mut lo) = (BigInt::one(), BigInt::zero());
    for _ in 0..n {
        let next = &hi - &k * &lo;
        hi = std::mem::replace(&mut lo, next);
    }
    lo
}

fn lucas_backward(c: &Ctx, n: i64) -> BigInt {
    let k = c.params().k_big();
    let (mut hi, mut lo) = (k.clone(), BigInt::from(2));
    for _ in 0..n {
        let next = &hi - &k * &lo;
        hi = std::mem::replace(&mut lo, next);
    }
    lo
}

fn cosh_2theta(c: &Ctx) -> Rat {
    let fc = crate::quad::constants(c.params().k()).expect("k >= 1");
    let e2 = fc.e_theta.pow(2).expect("unit");
    let s = e2.add(&e2.inverse().expect("unit")).expect("same field");
    s.a().clone() / int(2)
}

fn hyperbolic(c: &Ctx, family: Family, n: i64, mode: Mode) -> (Side, Side) {
    let h = hyperbolic_sum(c.params(), family, n as u64, mode);
    ok(h.sum, big(h.claimed))
}

fn recip_rhs(c: &Ctx, n: i64) -> Rat {
    let p = 1i64 << n;
    (c.k() + int(2)) / c.k() - c.f(p - 1) / c.f(p)
}

fn general_6_lhs(c: &Ctx, n: i64) -> Rat {
    c.f(n + 3) * c.f(n - 1).pow(3) - c.f(n).pow(4)
}

fn form(text: &'static str, eval: super::Eval) -> Form {
    Form { text, eval }
}

fn entry(
    id: &'static str,
    symbols: &'static [Sym],
    expectation: Expectation,
    printed: Form,
    corrected: Option<Form>,
) -> Identity {
    Identity {
        id,
        symbols,
        bounds: &[],
        classical_only: false,
        expectation,
        printed,
        corrected,
    }
}

fn build() -> Vec<Identity> {
    let mut v = vec![
        entry(
            "shift-product-fib",
            &[Alpha, N, I, J],
            Holds,
            form(
                "F(a+n+i)F(a+n+j) - (-1)^(a+i+j) F(n-i)F(n-j) = F(a+2n)F(a+i+j)",
                |c, b| {
                    let (a, n, i, j) = (b[0], b[1], b[2], b[3]);
                    ok(
                        c.f(a + n + i) * c.f(a + n + j) - sg(a + i + j) * c.f(n - i) * c.f(n - j),
                        c.f(a + 2 * n) * c.f(a + i + j),
                    )
                },
            ),
            None,
        ),
        entry(
            "index-product-fib",
            &[N, I, J],
            Holds,
            form("F(n+i)F(n+j) - F(n)F(n+i+j) = (-1)^n F(i)F(j)", |c, b| {
                let (n, i, j) = (b[0], b[1], b[2]);
                ok(c.f(n + i) * c.f(n + j) - c.f(n) * c.f(n + i + j), sg(n) * c.f(i) * c.f(j))
            }),
            None,
        ),
        entry(
            "shift-product-lucas",
            &[Alpha, N, I, J],
            Misprint,
            form(
                "L(a+n+i)L(a+n+j) - (-1)^(a+i+j) (k^2+4) L(n-i)L(n-j) = L(a+2n)L(a+i+j)",
                |c, b| {
                    let (a, n, i, j) = (b[0], b[1], b[2], b[3]);
                    ok(
                        c.l(a + n + i) * c.l(a + n + j) - sg(a + i + j) * c.d() * c.l(n - i) * c.l(n - j),
                        c.l(a + 2 * n) * c.l(a + i + j),
                    )
                },
            ),
            Some(form(
                "L(a+n+i)L(a+n+j) + (-1)^(a+i+j) (k^2+4) F(n-i)F(n-j) = L(a+2n)L(a+i+j)",
                |c, b| {
                    let (a, n, i, j) = (b[0], b[1], b[2], b[3]);
                    ok(
                        c.l(a + n + i) * c.l(a + n + j) + sg(a + i + j) * c.d() * c.f(n - i) * c.f(n - j),
                        c.l(a + 2 * n) * c.l(a + i + j),
                    )
                },
            )),
        ),
        entry(
            "index-product-lucas",
            &[N, I, J],
            Holds,
            form("L(n+i)L(n+j) - L(n)L(n+i+j) = (-1)^(n+1) (k^2+4) F(i)F(j)", |c, b| {
                let (n, i, j) = (b[0], b[1], b[2]);
                ok(
                    c.l(n + i) * c.l(n + j) - c.l(n) * c.l(n + i + j),
                    sg(n + 1) * c.d() * c.f(i) * c.f(j),
                )
            }),
            None,
        ),
        Identity {
            bounds: &[(N, 1, 50)],
            ..entry(
                "owings-congruence",
                &[N],
                Holds,
                form("F(2n+1)^2 + k^2 = 0 (mod F(2n-1))", |c, b| {
                    let n = b[0];
                    let k = c.params().k_big();
                    ok(modulo(c.fi(2 * n + 1).pow(2) + &k * &k, c.fi(2 * n - 1)), Rat::zero())
                }),
                None,
            )
        },
        Identity {
            bounds: &[(N, 1, 50)],
            ..entry(
                "owings-congruence-swap",
                &[N],
                Holds,
                form("F(2n-1)^2 + k^2 = 0 (mod F(2n+1))", |c, b| {
                    let n = b[0];
                    let k = c.params().k_big();
                    ok(modulo(c.fi(2 * n - 1).pow(2) + &k * &k, c.fi(2 * n + 1)), Rat::zero())
                }),
                None,
            )
        },
        entry(
            "catalan",
            &[N, J],
            Holds,
            form("F(n+j)F(n-j) - F(n)^2 = (-1)^(n+j+1) F(j)^2", |c, b| {
                let (n, j) = (b[0], b[1]);
                ok(c.f(n + j) * c.f(n - j) - c.f(n).pow(2), sg(n + j + 1) * c.f(j).pow(2))
            }),
            None,
        ),
        entry(
            "cassini",
            &[N],
            Holds,
            form("F(n+1)F(n-1) - F(n)^2 = (-1)^n", |c, b| {
                let n = b[0];
                ok(c.f(n + 1) * c.f(n - 1) - c.f(n).pow(2), sg(n))
            }),
            None,
        ),
        entry(
            "matrix-power-det",
            &[N],
            Holds,
            form("det [[F(n+1), F(n)], [F(n), F(n-1)]] = (-1)^n", |c, b| {
                let n = b[0];
                ok(c.f(n + 1) * c.f(n - 1) - c.f(n) * c.f(n), sg(n))
            }),
            None,
        ),
        Identity {
            bounds: &[(N, 0, i64::MAX)],
            ..entry(
                "sum-squares",
                &[N],
                Misprint,
                form("sum_{j=1..n} F(j)^2 = k F(n)F(n+1)", |c, b| {
                    let n = b[0];
                    let s = (1..=n).fold(Rat::zero(), |acc, j| acc + c.f(j).pow(2));
                    ok(s, c.k() * c.f(n) * c.f(n + 1))
                }),
                Some(form("k sum_{j=1..n} F(j)^2 = F(n)F(n+1)", |c, b| {
                    let n = b[0];
                    let s = (1..=n).fold(Rat::zero(), |acc, j| acc + c.f(j).pow(2));
                    ok(c.k() * s, c.f(n) * c.f(n + 1))
                })),
            )
        },
        entry(
            "sum-two-squares",
            &[N],
            Holds,
            form("F(n+1)^2 + F(n)^2 = F(2n+1)", |c, b| {
                let n = b[0];
                ok(c.f(n + 1).pow(2) + c.f(n).pow(2), c.f(2 * n + 1))
            }),
            None,
        ),
        entry(
            "sum-diff-squares",
            &[N],
            Misprint,
            form("F(n+1)^2 - F(n)^2 = k F(2n+1)", |c, b| {
                let n = b[0];
                ok(c.f(n + 1).pow(2) - c.f(n).pow(2), c.k() * c.f(2 * n + 1))
            }),
            Some(form("F(n+1)^2 - F(n-1)^2 = k F(2n)", |c, b| {
                let n = b[0];
                ok(c.f(n + 1).pow(2) - c.f(n - 1).pow(2), c.k() * c.f(2 * n))
            })),
        ),
        entry(
            "lucas-from-fib",
            &[N],
            Holds,
            form("L(n) = F(n+1) + F(n-1)", |c, b| {
                let n = b[0];
                ok(c.l(n), c.f(n + 1) + c.f(n - 1))
            }),
            None,
        ),
        entry(
            "lucas-neighbor-sum",
            &[N],
            Holds,
            form("L(n+1) + L(n-1) = (k^2+4) F(n)", |c, b| {
                let n = b[0];
                ok(c.l(n + 1) + c.l(n - 1), c.d() * c.f(n))
            }),
            None,
        ),
        entry(
            "fib-lucas-gap",
            &[N],
            Misprint,
            form("F(n+2) - L(n-2) = k L(n)", |c, b| {
                let n = b[0];
                ok(c.f(n + 2) - c.l(n - 2), c.k() * c.l(n))
            }),
            Some(form("F(n+2) - F(n-2) = k L(n)", |c, b| {
                let n = b[0];
                ok(c.f(n + 2) - c.f(n - 2), c.k() * c.l(n))
            })),
        ),
        entry(
            "lucas-fib-product",
            &[M, N],
            Misprint,
            form("L(m)F(n) - F(m+n) = (-1)^m L(n-m)", |c, b| {
                let (m, n) = (b[0], b[1]);
                ok(c.l(m) * c.f(n) - c.f(m + n), sg(m) * c.l(n - m))
            }),
            Some(form("L(m)F(n) - F(m+n) = (-1)^m F(n-m)", |c, b| {
                let (m, n) = (b[0], b[1]);
                ok(c.l(m) * c.f(n) - c.f(m + n), sg(m) * c.f(n - m))
            })),
        ),
        entry(
            "continued-fraction-step",
            &[M, N],
            Holds,
            form("F(m(n+1)) = L(m)F(mn) - (-1)^m F(m(n-1))", |c, b| {
                let (m, n) = (b[0], b[1]);
                ok(c.f(m * (n + 1)), c.l(m) * c.f(m * n) - sg(m) * c.f(m * (n - 1)))
            }),
            None,
        ),
        entry(
            "double-index",
            &[N],
            Holds,
            form("F(2n) = F(n)L(n)", |c, b| {
                let n = b[0];
                ok(c.f(2 * n), c.f(n) * c.l(n))
            }),
            None,
        ),
        entry(
            "addition-lucas",
            &[M, N],
            Holds,
            form("F(n+m) + (-1)^m F(n-m) = F(n)L(m)", |c, b| {
                let (m, n) = (b[0], b[1]);
                ok(c.f(n + m) + sg(m) * c.f(n - m), c.f(n) * c.l(m))
            }),
            None,
        ),
        Identity {
            bounds: &[(N, 1, 12)],
            ..entry(
                "reciprocal-doubling-sum",
                &[N],
                Misprint,
                form("sum_{j=0..n} 1/F(j) = (k+2)/k - F(2^n-1)/F(2^n)", |c, b| {
                    let n = b[0];
                    let mut s = Some(Rat::zero());
                    for j in 0..=n {
                        let f = c.f(j);
                        s = match s {
                            Some(acc) if !f.is_zero() => Some(acc + f.recip()),
                            _ => None,
                        };
                    }
                    (s, Some(recip_rhs(c, n)))
                }),
                Some(form("sum_{j=0..n} 1/F(2^j) = (k+2)/k - F(2^n-1)/F(2^n), n >= 1", |c, b| {
                    let n = b[0];
                    let s = (0..=n).fold(Rat::zero(), |acc, j| acc + c.f(1i64 << j).recip());
                    ok(s, recip_rhs(c, n))
                })),
            )
        },
        entry(
            "pm1-curve",
            &[N],
            Holds,
            form("F(n+1)^2 - k F(n)F(n+1) - F(n)^2 = (-1)^n", |c, b| {
                let n = b[0];
                ok(c.f(n + 1).pow(2) - c.k() * c.f(n) * c.f(n + 1) - c.f(n).pow(2), sg(n))
            }),
            None,
        ),
        entry(
            "norm-form",
            &[N],
            Holds,
            form("(k^2+4) F(n)^2 - L(n)^2 = 4 (-1)^(n+1)", |c, b| {
                let n = b[0];
                ok(c.d() * c.f(n).pow(2) - c.l(n).pow(2), int(4) * sg(n + 1))
            }),
            None,
        ),
        entry(
            "fib-lucas-common-divisor",
            &[N],
            Holds,
            form("gcd(F(n), L(n)) divides 2", |c, b| {
                let n = b[0];
                let g = c.fi(n).gcd(&c.li(n));
                ok(modulo(BigInt::from(2), g), Rat::zero())
            }),
            None,
        ),
        entry(
            "fib-lucas-parity",
            &[N],
            Misprint,
            form("F(n) = L(n) (mod 2)", |c, b| {
                let n = b[0];
                ok(modulo(c.li(n) - c.fi(n), BigInt::from(2)), Rat::zero())
            }),
            Some(form("L(n) = k F(n) (mod 2); same parity exactly when k is odd", |c, b| {
                let n = b[0];
                ok(modulo(c.li(n) - c.params().k_big() * c.fi(n), BigInt::from(2)), Rat::zero())
            })),
        ),
        entry(
            "coprime-consecutive-fib",
            &[N],
            Holds,
            form("gcd(F(n), F(n+1)) = 1", |c, b| {
                let n = b[0];
                ok(gcd(c.fi(n), c.fi(n + 1)), Rat::one())
            }),
            None,
        ),
        entry(
            "coprime-consecutive-lucas",
            &[N],
            Misprint,
            form("gcd(L(n), L(n+1)) = 1", |c, b| {
                let n = b[0];
                ok(gcd(c.li(n), c.li(n + 1)), Rat::one())
            }),
            Some(form("gcd(L(n), L(n+1)) = gcd(2, k)", |c, b| {
                let n = b[0];
                ok(gcd(c.li(n), c.li(n + 1)), gcd(BigInt::from(2), c.params().k_big()))
            })),
        ),
        Identity {
            bounds: &[(N, 0, i64::MAX)],
            ..entry(
                "neg-index-fib",
                &[N],
                Holds,
                form("F(-n) = (-1)^(n-1) F(n)", |c, b| {
                    let n = b[0];
                    ok(big(fib_backward(c, n)), sg(n - 1) * c.f(n))
                }),
                None,
            )
        },
        Identity {
            bounds: &[(N, 0, i64::MAX)],
            ..entry(
                "neg-index-lucas",
                &[N],
                Holds,
                form("L(-n) = (-1)^n L(n)", |c, b| {
                    let n = b[0];
                    ok(big(lucas_backward(c, n)), sg(n) * c.l(n))
                }),
                None,
            )
        },
        Identity {
            bounds: &[(N, 0, i64::MAX)],
            ..entry(
                "hyperbolic-sum-fib",
                &[N],
                Misprint,
                form("F(n) = sum_j C(n+1, 2j+1) sinh^(n-2j) cosh^(2j)", |c, b| {
                    hyperbolic(c, Family::Fib, b[0], Mode::Verbatim)
                }),
                Some(form("F(n+1) = sum_j C(n+1, 2j+1) sinh^(n-2j) cosh^(2j)", |c, b| {
                    hyperbolic(c, Family::Fib, b[0], Mode::Corrected)
                })),
            )
        },
        Identity {
            bounds: &[(N, 0, i64::MAX)],
            ..entry(
                "hyperbolic-sum-lucas",
                &[N],
                Misprint,
                form("L(n) = sum_j C(n, 2j) sinh^(n-2j) cosh^(2j)", |c, b| {
                    hyperbolic(c, Family::Lucas, b[0], Mode::Verbatim)
                }),
                Some(form("L(n) = 2 sum_j C(n, 2j) sinh^(n-2j) cosh^(2j)", |c, b| {
                    hyperbolic(c, Family::Lucas, b[0], Mode::Corrected)
                })),
            )
        },
        entry(
            "lucas-two-cosh",
            &[],
            Misprint,
            form("L(2) = cosh(2 theta)", |c, _| ok(c.l(2), cosh_2theta(c))),
            Some(form("L(2) = 2 cosh(2 theta) = k^2 + 2", |c, _| ok(c.l(2), int(2) * cosh_2theta(c)))),
        ),
        entry(
            "arctan-step",
            &[M],
            Holds,
            form("k [1 + F(2m+2)F(2m)] = k F(2m+1)^2", |c, b| {
                let m = b[0];
                ok(c.k() * (Rat::one() + c.f(2 * m + 2) * c.f(2 * m)), c.k() * c.f(2 * m + 1).pow(2))
            }),
            None,
        ),
        entry(
            "arctan-tangent",
            &[M],
            Holds,
            form("[k F(2m+2) + F(2m+1)] F(2m) = F(2m+1)F(2m+2) - k", |c, b| {
                let m = b[0];
                ok(
                    (c.k() * c.f(2 * m + 2) + c.f(2 * m + 1)) * c.f(2 * m),
                    c.f(2 * m + 1) * c.f(2 * m + 2) - c.k(),
                )
            }),
            None,
        ),
        entry(
            "carlitz-cubes-fib",
            &[N],
            Misprint,
            form("F(n+1)^3 - (k/2)^3 F(n)^3 - F(n-1)^3 = 3 (k/2) F(n+1)F(n)F(n-1)", |c, b| {
                let n = b[0];
                let h = c.k() / int(2);
                ok(
                    c.f(n + 1).pow(3) - h.pow(3) * c.f(n).pow(3) - c.f(n - 1).pow(3),
                    int(3) * h * c.f(n + 1) * c.f(n) * c.f(n - 1),
                )
            }),
            Some(form("F(n+1)^3 - k^3 F(n)^3 - F(n-1)^3 = 3k F(n+1)F(n)F(n-1)", |c, b| {
                let n = b[0];
                ok(
                    c.f(n + 1).pow(3) - c.k().pow(3) * c.f(n).pow(3) - c.f(n - 1).pow(3),
                    int(3) * c.k() * c.f(n + 1) * c.f(n) * c.f(n - 1),
                )
            })),
        ),
        entry(
            "carlitz-cubes-lucas",
            &[N],
            Misprint,
            form("L(n+1)^3 - (k/2)^3 L(n)^3 - L(n-1)^3 = 3 (k/2) L(n+1)L(n)L(n-1)", |c, b| {
                let n = b[0];
                let h = c.k() / int(2);
                ok(
                    c.l(n + 1).pow(3) - h.pow(3) * c.l(n).pow(3) - c.l(n - 1).pow(3),
                    int(3) * h * c.l(n + 1) * c.l(n) * c.l(n - 1),
                )
            }),
            Some(form("L(n+1)^3 - k^3 L(n)^3 - L(n-1)^3 = 3k L(n+1)L(n)L(n-1)", |c, b| {
                let n = b[0];
                ok(
                    c.l(n + 1).pow(3) - c.k().pow(3) * c.l(n).pow(3) - c.l(n - 1).pow(3),
                    int(3) * c.k() * c.l(n + 1) * c.l(n) * c.l(n - 1),
                )
            })),
        ),
    ];
    v.extend(difference_products());
    v
}

fn classical(id: &'static str, expectation: Expectation, printed: Form, corrected: Option<Form>) -> Identity {
    Identity {
        classical_only: true,
        ..entry(id, &[N], expectation, printed, corrected)
    }
}

fn difference_products() -> Vec<Identity> {
    vec![
        classical(
            "diffprod-classic-1",
            Misprint,
            form("F(n+1)F(n+2)F(n+6) - F(n+3)^2 = (-1)^n F(n)", |c, b| {
                let n = b[0];
                ok(c.f(n + 1) * c.f(n + 2) * c.f(n + 6) - c.f(n + 3).pow(2), sg(n) * c.f(n))
            }),
            Some(form("F(n+1)F(n+2)F(n+6) - F(n+3)^3 = (-1)^n F(n)", |c, b| {
                let n = b[0];
                ok(c.f(n + 1) * c.f(n + 2) * c.f(n + 6) - c.f(n + 3).pow(3), sg(n) * c.f(n))
            })),
        ),
        classical(
            "diffprod-classic-2",
            Misprint,
            form("F(n)F(n+4)F(n+5) - F(n+1)^3 = (-1)^(n+1) F(n+6)", |c, b| {
                let n = b[0];
                ok(c.f(n) * c.f(n + 4) * c.f(n + 5) - c.f(n + 1).pow(3), sg(n + 1) * c.f(n + 6))
            }),
            Some(form("F(n)F(n+4)F(n+5) - F(n+3)^3 = (-1)^(n+1) F(n+6)", |c, b| {
                let n = b[0];
                ok(c.f(n) * c.f(n + 4) * c.f(n + 5) - c.f(n + 3).pow(3), sg(n + 1) * c.f(n + 6))
            })),
        ),
        classical(
            "diffprod-classic-3",
            Holds,
            form("F(n-2)F(n+1)^2 - F(n)^3 = (-1)^(n-1) F(n-1)", |c, b| {
                let n = b[0];
                ok(c.f(n - 2) * c.f(n + 1).pow(2) - c.f(n).pow(3), sg(n - 1) * c.f(n - 1))
            }),
            None,
        ),
        classical(
            "diffprod-classic-4",
            Holds,
            form("F(n+2)F(n-1)^2 - F(n)^3 = (-1)^n F(n+1)", |c, b| {
                let n = b[0];
                ok(c.f(n + 2) * c.f(n - 1).pow(2) - c.f(n).pow(3), sg(n) * c.f(n + 1))
            }),
            None,
        ),
        classical(
            "diffprod-classic-5",
            Holds,
            form("F(n-3)F(n+1)^3 - F(n)^4 = (-1)^n [F(n-1)F(n+3) + 2F(n)^2]", |c, b| {
                let n = b[0];
                ok(
                    c.f(n - 3) * c.f(n + 1).pow(3) - c.f(n).pow(4),
                    sg(n) * (c.f(n - 1) * c.f(n + 3) + int(2) * c.f(n).pow(2)),
                )
            }),
            None,
        ),
        classical(
            "diffprod-classic-6",
            Holds,
            form("F(n+3)F(n-1)^3 - F(n)^4 = (-1)^n [F(n)^2 + F(n)F(n-1) + 2F(n-1)^2]", |c, b| {
                let n = b[0];
                ok(
                    general_6_lhs(c, n),
                    sg(n) * (c.f(n).pow(2) + c.f(n) * c.f(n - 1) + int(2) * c.f(n - 1).pow(2)),
                )
            }),
            None,
        ),
        classical(
            "diffprod-classic-7",
            Holds,
            form("F(n+3)F(n-1)^3 - F(n)^4 = (-1)^n [F(n)F(n+1) + 2F(n-1)^2]", |c, b| {
                let n = b[0];
                ok(
                    general_6_lhs(c, n),
                    sg(n) * (c.f(n) * c.f(n + 1) + int(2) * c.f(n - 1).pow(2)),
                )
            }),
            None,
        ),
        entry(
            "diffprod-general-1",
            &[N],
            Misprint,
            form(
                "F(n+1)F(n+2)F(n+6) - F(n+3)^2 = (-1)^n [k^2 F(n) + (k^3-1) F(n+1)]",
                |c, b| {
                    let n = b[0];
                    let k = c.k();
                    ok(
                        c.f(n + 1) * c.f(n + 2) * c.f(n + 6) - c.f(n + 3).pow(2),
                        sg(n) * (k.pow(2) * c.f(n) + (k.pow(3) - int(1)) * c.f(n + 1)),
                    )
                },
            ),
            Some(form(
                "F(n+1)F(n+2)F(n+6) - F(n+3)^3 = (-1)^n [k^3 F(n) + (k^4-1) F(n+1)]",
                |c, b| {
                    let n = b[0];
                    let k = c.k();
                    ok(
                        c.f(n + 1) * c.f(n + 2) * c.f(n + 6) - c.f(n + 3).pow(3),
                        sg(n) * (k.pow(3) * c.f(n) + (k.pow(4) - int(1)) * c.f(n + 1)),
                    )
                },
            )),
        ),
        entry(
            "diffprod-general-2",
            &[N],
            Misprint,
            form(
                "F(n)F(n+4)F(n+5) - F(n+1)^3 = (-1)^(n+1) [F(n+6) + k(k-1) F(n+4)]",
                |c, b| {
                    let n = b[0];
                    let k = c.k();
                    ok(
                        c.f(n) * c.f(n + 4) * c.f(n + 5) - c.f(n + 1).pow(3),
                        sg(n + 1) * (c.f(n + 6) + k.clone() * (k - int(1)) * c.f(n + 4)),
                    )
                },
            ),
            Some(form(
                "F(n)F(n+4)F(n+5) - F(n+3)^3 = (-1)^(n+1) [k^3 F(n+4) + F(n+5)]",
                |c, b| {
                    let n = b[0];
                    ok(
                        c.f(n) * c.f(n + 4) * c.f(n + 5) - c.f(n + 3).pow(3),
                        sg(n + 1) * (c.k().pow(3) * c.f(n + 4) + c.f(n + 5)),
                    )
                },
            )),
        ),
        entry(
            "diffprod-general-3",
            &[N],
            Holds,
            form("F(n-2)F(n+1)^2 - F(n)^3 = (-1)^(n-1) [k F(n-1) + (k^2-1) F(n)]", |c, b| {
                let n = b[0];
                let k = c.k();
                ok(
                    c.f(n - 2) * c.f(n + 1).pow(2) - c.f(n).pow(3),
                    sg(n - 1) * (k.clone() * c.f(n - 1) + (k.pow(2) - int(1)) * c.f(n)),
                )
            }),
            None,
        ),
        entry(
            "diffprod-general-4",
            &[N],
            Holds,
            form("F(n+2)F(n-1)^2 - F(n)^3 = (-1)^n [F(n) + k F(n-1)]", |c, b| {
                let n = b[0];
                ok(
                    c.f(n + 2) * c.f(n - 1).pow(2) - c.f(n).pow(3),
                    sg(n) * (c.f(n) + c.k() * c.f(n - 1)),
                )
            }),
            None,
        ),
        entry(
            "diffprod-general-5",
            &[N],
            Holds,
            form(
                "F(n-3)F(n+1)^3 - F(n)^4 = (-1)^n [F(n-1)F(n+3) + 2F(n)^2 + (k^2-1) F(n)F(n+2)]",
                |c, b| {
                    let n = b[0];
                    ok(
                        c.f(n - 3) * c.f(n + 1).pow(3) - c.f(n).pow(4),
                        sg(n)
                            * (c.f(n - 1) * c.f(n + 3)
                                + int(2) * c.f(n).pow(2)
                                + (c.k().pow(2) - int(1)) * c.f(n) * c.f(n + 2)),
                    )
                },
            ),
            None,
        ),
        entry(
            "diffprod-general-6",
            &[N],
            Misprint,
            form("F(n+3)F(n-1)^3 - F(n)^4 = (-1)^n [F(n)^2 + F(n)F(n-1) + 2F(n-1)^2]", |c, b| {
                let n = b[0];
                ok(
                    general_6_lhs(c, n),
                    sg(n) * (c.f(n).pow(2) + c.f(n) * c.f(n - 1) + int(2) * c.f(n - 1).pow(2)),
                )
            }),
            Some(form(
                "F(n+3)F(n-1)^3 - F(n)^4 = (-1)^n [F(n)^2 + k F(n)F(n-1) + (k^2+1) F(n-1)^2]",
                |c, b| {
                    let n = b[0];
                    let k = c.k();
                    ok(
                        general_6_lhs(c, n),
                        sg(n) * (c.f(n).pow(2)
                            + k.clone() * c.f(n) * c.f(n - 1)
                            + (k.pow(2) + int(1)) * c.f(n - 1).pow(2)),
                    )
                },
            )),
        ),
    ]
}

/// All registered identities in report order.
pub fn registry() -> &'static [Identity] {
    static REG: OnceLock<Vec<Identity>> = OnceLock::new();
    REG.get_or_init(build)
}
