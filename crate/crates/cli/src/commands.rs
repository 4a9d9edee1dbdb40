//! Routing from parsed arguments to library calls. No arithmetic happens here
//! beyond comparing values the library returns.

use genfib::errata::{solver_fits, verify_all, ErrataConfig, EntryStatus};
use genfib::fmt::{IntRef, RatRef};
use genfib::identity::{self, IdentityInstance, IndexRanges, Status};
use genfib::matrix::exact_inverse;
use genfib::ortho::{
    filbert_grid_row, filbert_inverse_closed, gram_report, lucas_det_printed, monic_basis, moment_det_sign,
    qjacobi_coeffs, reciprocal_hankel, MomentHankel,
};
use genfib::pell::{self, PellSolution};
use genfib::seq::{self, FibBinomTable};
use genfib::{matrix, Error, Family, Mode, Quad, Rat, Result, SeqParams};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::*;
use crate::report::{aligned, scalar, Report};

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types always serialize")
}

fn domain(context: &'static str, message: impl Into<String>) -> Error {
    Error::Domain {
        context,
        message: message.into(),
    }
}

fn u64_index(context: &'static str, n: i64) -> Result<u64> {
    u64::try_from(n).map_err(|_| domain(context, format!("n = {n} must be >= 0")))
}

pub fn dispatch(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Seq(a) => seq_cmd(a),
        Command::Binom(a) => binom(a),
        Command::Hankel(a) => hankel(a),
        Command::Orthopoly(a) => orthopoly(a),
        Command::Identity(c) => identity_cmd(c),
        Command::Pell(c) => pell_cmd(c),
        Command::Convolve(a) => convolve(a),
        Command::Cf(a) => cf(a),
        Command::VerifyAll => verify_all_cmd(),
    }
}

const MAX_TERMS: i64 = 100_000;

fn seq_cmd(a: &SeqArgs) -> Result<Report> {
    let p = SeqParams::new(a.common.k)?;
    let fam = a.common.family;
    let view = format!("{:?}", a.view).to_lowercase();
    let params = |extra: Value| {
        let mut base = json!({"k": p.k(), "family": fam, "view": view});
        if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
            b.extend(e);
        }
        base
    };
    let n_or = |default: i64| a.n.unwrap_or(default);
    let report = match a.view {
        SeqView::Terms => {
            let (from, to) = match a.n {
                Some(n) => (n, n),
                None => (a.from.unwrap_or(0), a.to.unwrap_or(10)),
            };
            if from > to {
                return Err(domain("seq", format!("--from {from} exceeds --to {to}")));
            }
            if to - from >= MAX_TERMS {
                return Err(domain("seq", format!("at most {MAX_TERMS} terms per call")));
            }
            let terms: Vec<BigInt> = (from..=to).map(|n| seq::term(p, fam, n)).collect();
            let row = terms.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ");
            let rows = (from..=to).zip(&terms).map(|(n, t)| vec![n.to_string(), t.to_string()]).collect();
            Report::new(
                "seq",
                params(json!({"from": from, "to": to})),
                json!({"terms": terms.iter().map(|t| to_value(&IntRef(t))).collect::<Vec<_>>()}),
            )
            .plain(vec![row])
            .table(vec!["n", "value"], rows)
        }
        SeqView::Closed => {
            let n = n_or(10);
            let closed = seq::closed_form(p, fam, n)?;
            let value = seq::term(p, fam, n);
            let agrees = closed == Quad::from_scalar(Rat::from_integer(value.clone()), p.d())?;
            Report::new(
                "seq",
                params(json!({"n": n})),
                json!({"closed_form": to_value(&closed), "recurrence": to_value(&IntRef(&value)), "agree": agrees}),
            )
            .failed_if(!agrees)
        }
        SeqView::Doubling => {
            let n = u64_index("seq", n_or(10))?;
            Report::new("seq", params(json!({"n": n})), to_value(&seq::pair_doubling(p, n)))
        }
        SeqView::Matrix => {
            let n = u64_index("seq", n_or(10))?;
            Report::new("seq", params(json!({"n": n})), to_value(&seq::matrix_power(p, n)?))
        }
        SeqView::Hyperbolic => {
            let n = u64_index("seq", n_or(10))?;
            let check = seq::hyperbolic_sum(p, fam, n, a.mode);
            let explicit = seq::explicit_hyperbolic(p, fam, n)?;
            Report::new(
                "seq",
                params(json!({"n": n, "mode": a.mode})),
                json!({"check": to_value(&check), "explicit": to_value(&RatRef(&explicit))}),
            )
            .failed_if(a.mode == Mode::Corrected && !check.holds)
        }
        SeqView::Field => {
            let c = genfib::constants(p.k())?;
            let e = c.e_theta.to_decimal(20)?;
            Report::new("seq", params(json!({})), json!({"constants": to_value(&c), "e_theta_decimal": e}))
        }
        SeqView::Arctan => {
            let m = a.m.unwrap_or(50);
            let tail = u32::try_from(n_or(25)).map_err(|_| domain("seq", "tail length must be >= 0"))?;
            let r = identity::arctan_suite(p, m, tail)?;
            let ok = r.exact_holds && r.tail_holds;
            Report::new("seq", params(json!({"m": m, "n": tail})), to_value(&r)).failed_if(!ok)
        }
        SeqView::Reciprocal => {
            let n = u32::try_from(n_or(12)).map_err(|_| domain("seq", "n must be >= 0"))?;
            let r = identity::reciprocal_sum(p, n)?;
            Report::new("seq", params(json!({"n": n})), to_value(&r)).failed_if(!r.limits_agree)
        }
    };
    Ok(report)
}

fn binom(a: &BinomArgs) -> Result<Report> {
    let p = SeqParams::new(a.common.k)?;
    if a.n < 0 {
        return Err(domain("binom", "n must be >= 0"));
    }
    let params = json!({"k": p.k(), "family": a.common.family, "n": a.n, "odd": a.odd});
    match (a.common.family, a.odd) {
        (Family::Fib, true) => Err(domain("binom", "--odd applies to the lucas family")),
        (Family::Fib, false) => {
            let t = FibBinomTable::build(p, a.n as usize)?;
            t.check()?;
            let rows: Vec<Vec<String>> =
                t.rows().iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect();
            let payload = json!({"rows": t.rows().iter().map(|r| r.iter().map(|v| to_value(&IntRef(v))).collect::<Vec<_>>()).collect::<Vec<_>>()});
            let table = rows.iter().enumerate().flat_map(|(n, r)| r.iter().enumerate().map(move |(j, v)| vec![n.to_string(), j.to_string(), v.clone()])).collect();
            Ok(Report::new("binom", params, payload)
                .plain(rows.iter().map(|r| r.join(" ")).collect())
                .table(vec!["n", "j", "value"], table))
        }
        (Family::Lucas, false) => {
            let mut rows = Vec::new();
            let mut table = Vec::new();
            let mut non_integer = 0usize;
            for n in 0..=a.n {
                let mut row = Vec::new();
                for j in 0..=n {
                    let l = seq::luconomial(p, n, j)?;
                    non_integer += usize::from(!l.is_integer);
                    table.push(vec![n.to_string(), j.to_string(), l.value.to_string(), l.is_integer.to_string()]);
                    row.push(l.value.to_string());
                }
                rows.push(row);
            }
            Ok(Report::new("binom", params, json!({"rows": rows}))
                .summary(json!({"non_integer": non_integer}))
                .plain(rows.iter().map(|r| r.join(" ")).collect())
                .table(vec!["n", "j", "value", "integer"], table))
        }
        (Family::Lucas, true) => {
            let probe = seq::odd_luconomial_probe(p, a.n)?;
            let integers = probe.iter().filter(|e| e.is_integer).count();
            Ok(Report::new("binom", params, to_value(&probe))
                .summary(json!({"entries": probe.len(), "integers": integers})))
        }
    }
}

fn hankel(a: &HankelArgs) -> Result<Report> {
    let p = SeqParams::new(a.common.k)?;
    let fam = a.common.family;
    let show = format!("{:?}", a.show).to_lowercase();
    let params = json!({"k": p.k(), "family": fam, "alpha": a.alpha, "n": a.n, "show": show, "mode": a.mode});
    let report = match (fam, a.show) {
        (Family::Fib, Show::Det) => {
            let row = filbert_grid_row(p, a.alpha, a.n)?;
            let closed = match a.mode {
                Mode::Corrected => &row.det_corrected,
                Mode::Verbatim => &row.det_verbatim,
            };
            let matches = *closed == row.det_oracle;
            Report::new(
                "hankel",
                params,
                json!({
                    "det": to_value(&RatRef(&row.det_oracle)),
                    "closed_form": to_value(&RatRef(closed)),
                    "matches": matches,
                    "moment_det_sign": moment_det_sign(fam, p, a.alpha, a.n)?,
                }),
            )
            .failed_if(a.mode == Mode::Corrected && !matches)
        }
        (Family::Fib, Show::Inverse) => {
            let row = filbert_grid_row(p, a.alpha, a.n)?;
            let inv = filbert_inverse_closed(p, a.alpha, a.n)?;
            let ok = row.inverse_matches_oracle && row.kernel_matches_oracle && row.inverse_all_integer;
            Report::new("hankel", params, json!({"inverse": to_value(&inv)}))
                .summary(json!({
                    "matches_oracle": row.inverse_matches_oracle,
                    "kernel_matches_oracle": row.kernel_matches_oracle,
                    "all_integer": row.inverse_all_integer,
                }))
                .failed_if(!ok)
        }
        (Family::Lucas, Show::Det) => {
            let det = matrix::bareiss_det(&reciprocal_hankel(fam, p, a.alpha, a.n)?)?;
            let printed = lucas_det_printed(p, a.alpha, a.n)?;
            Report::new(
                "hankel",
                params,
                json!({
                    "det": to_value(&RatRef(&det)),
                    "printed": to_value(&RatRef(&printed)),
                    "matches": det == printed,
                    "moment_det_sign": moment_det_sign(fam, p, a.alpha, a.n)?,
                }),
            )
        }
        (Family::Lucas, Show::Inverse) => {
            let inv = exact_inverse(&reciprocal_hankel(fam, p, a.alpha, a.n)?)?;
            let non_integer = inv.iter().filter(|v| !v.is_integer()).count();
            Report::new("hankel", params, json!({"inverse": to_value(&inv)}))
                .summary(json!({"non_integer_entries": non_integer}))
        }
        (_, Show::Basis) => {
            let basis = monic_basis(&MomentHankel::new(fam, p, a.alpha, a.n)?)?;
            let q: Vec<Value> = qjacobi_coeffs(fam, p, a.alpha, a.n)?.iter().map(|r| to_value(&RatRef(r))).collect();
            Report::new("hankel", params, json!({"basis": to_value(&basis), "qjacobi": q}))
        }
        (_, Show::Gram) => {
            let g = gram_report(fam, p, a.alpha, a.n)?;
            let first = g.first_printed_failure();
            Report::new("hankel", params, to_value(&g)).summary(json!({"first_printed_failure": first}))
        }
    };
    Ok(report)
}

fn orthopoly(a: &OrthoArgs) -> Result<Report> {
    let p = SeqParams::new(a.common.k)?;
    let fam = a.common.family;
    let basis = monic_basis(&MomentHankel::new(fam, p, a.alpha, a.n)?)?;
    let g = gram_report(fam, p, a.alpha, a.n)?;
    Ok(Report::new(
        "orthopoly",
        json!({"k": p.k(), "family": fam, "alpha": a.alpha, "n": a.n}),
        json!({"basis": to_value(&basis), "orthogonality": to_value(&g)}),
    )
    .summary(json!({"is_diagonal": g.is_diagonal, "first_printed_failure": g.first_printed_failure()})))
}

fn parse_binding(s: &str) -> Result<(&str, i64)> {
    let bad = || domain("identity", format!("binding `{s}` is not of the form name=INT"));
    let (name, v) = s.split_once('=').ok_or_else(bad)?;
    Ok((name.trim(), v.trim().parse().map_err(|_| bad())?))
}

fn status_name(s: Status) -> String {
    scalar(&to_value(&s)).unwrap_or_default()
}

fn identity_cmd(c: &IdentityCmd) -> Result<Report> {
    match c {
        IdentityCmd::List => {
            let rows: Vec<Value> = identity::registry()
                .iter()
                .map(|e| {
                    json!({
                        "id": e.id,
                        "symbols": e.symbols.iter().map(|s| s.name()).collect::<Vec<_>>(),
                        "expectation": e.expectation,
                        "classical_only": e.classical_only,
                        "printed": e.printed.text,
                        "corrected": e.corrected.as_ref().map(|f| f.text),
                    })
                })
                .collect();
            let table = identity::registry()
                .iter()
                .map(|e| {
                    vec![
                        e.id.to_string(),
                        scalar(&to_value(&e.expectation)).unwrap_or_default(),
                        e.printed.text.to_string(),
                        e.corrected.as_ref().map_or(String::new(), |f| f.text.to_string()),
                    ]
                })
                .collect();
            let plain = identity::registry()
                .iter()
                .map(|e| vec![e.id.to_string(), e.printed.text.to_string()])
                .collect::<Vec<_>>();
            Ok(Report::new("identity list", json!({}), Value::Array(rows))
                .summary(json!({"identities": identity::registry().len()}))
                .plain(aligned(&plain, 0))
                .table(vec!["id", "expectation", "printed", "corrected"], table))
        }
        IdentityCmd::Verify { id, k, bind, mode } => {
            let pairs = bind.iter().map(|b| parse_binding(b)).collect::<Result<Vec<_>>>()?;
            let entry = identity::lookup(id)?;
            let verdict = identity::verify(&IdentityInstance::new(id, *k, pairs)?, *mode)?;
            let expected = *mode == Mode::Corrected || entry.expectation == identity::Expectation::Holds;
            Ok(Report::new(
                "identity verify",
                json!({"id": id, "k": k, "mode": mode}),
                to_value(&verdict),
            )
            .summary(json!({"expected_to_hold": expected}))
            .failed_if(expected && !verdict.holds))
        }
        IdentityCmd::Sweep { id, from, to, n } => {
            if *n < 0 {
                return Err(domain("identity sweep", "n window must be >= 0"));
            }
            let ids: Vec<&str> = id.iter().map(String::as_str).collect();
            let ranges = IndexRanges {
                n: -n..=*n,
                ..IndexRanges::default()
            };
            let reports = identity::sweep(&ids, *from..=*to, &ranges)?;
            let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
            let unexpected = reports.iter().filter(|r| r.unexpected).count();
            let table = reports
                .iter()
                .map(|r| {
                    let cx = r.counterexample.as_ref();
                    vec![
                        r.id.clone(),
                        status_name(r.status),
                        r.instances.to_string(),
                        cx.map_or(String::new(), |c| c.k.to_string()),
                        cx.map_or(String::new(), |c| to_value(&c.bindings).to_string()),
                        cx.map_or(String::new(), |c| scalar(&to_value(c)["lhs"]).unwrap_or_default()),
                        cx.map_or(String::new(), |c| scalar(&to_value(c)["rhs"]).unwrap_or_default()),
                        r.unexpected.to_string(),
                    ]
                })
                .collect::<Vec<_>>();
            let mut plain_rows = vec![vec!["id".into(), "status".into(), "instances".into(), "counterexample".into()]];
            plain_rows.extend(table.iter().map(|r| {
                let cx = if r[3].is_empty() {
                    "-".to_string()
                } else {
                    format!("k={} {} lhs={} rhs={}", r[3], r[4], r[5], r[6])
                };
                vec![r[0].clone(), r[1].clone(), r[2].clone(), cx]
            }));
            let plain = aligned(&plain_rows, 0);
            Ok(Report::new(
                "identity sweep",
                json!({"ids": id, "from": from, "to": to, "n": n}),
                to_value(&reports),
            )
            .summary(json!({
                "holds": count(Status::Holds),
                "holds_with_correction": count(Status::HoldsWithCorrection),
                "fails_as_printed": count(Status::FailsAsPrinted),
                "unexpected": unexpected,
            }))
            .plain(plain)
            .table(vec!["id", "status", "instances", "cx_k", "cx_bindings", "cx_lhs", "cx_rhs", "unexpected"], table)
            .failed_if(unexpected > 0))
        }
        IdentityCmd::Fit => {
            let fits = solver_fits()?;
            let ok = fits.iter().all(|f| f.matches_registry);
            let plain = fits
                .iter()
                .map(|f| {
                    let rhs = f.fit.as_ref().and_then(|x| x.text.clone()).unwrap_or_else(|| "no polynomial fit".into());
                    format!("{}: {} = {}", f.id, f.lhs, rhs)
                })
                .collect();
            Ok(Report::new("identity fit", json!({"ks": "1..=8"}), to_value(&fits))
                .plain(plain)
                .failed_if(!ok))
        }
    }
}

fn solutions_report(command: &str, params: Value, sols: &[PellSolution]) -> Report {
    let plain = if sols.is_empty() {
        vec!["no solutions ≤ bound".to_string()]
    } else {
        let mut rows = vec![vec!["x".to_string(), "y".into(), "n".into(), "sign".into()]];
        rows.extend(sols.iter().map(|s| vec![s.x.to_string(), s.y.to_string(), s.n.to_string(), s.sign.to_string()]));
        aligned(&rows, 0)
    };
    let table = sols
        .iter()
        .map(|s| vec![s.x.to_string(), s.y.to_string(), s.n.to_string(), s.sign.to_string()])
        .collect();
    Report::new(command, params, to_value(&sols))
        .summary(json!({"solutions": sols.len()}))
        .plain(plain)
        .table(vec!["x", "y", "n", "sign"], table)
}

fn pell_cmd(c: &PellCmd) -> Result<Report> {
    match c {
        PellCmd::Classify { k, n, experimental } => {
            let p = SeqParams::new(*k)?;
            let c = pell::classify_general_fib(p, n, *experimental)?;
            let trace: Vec<Value> = c
                .trace
                .iter()
                .flat_map(|t| &t.steps)
                .map(|s| json!([to_value(&IntRef(&s.x)), to_value(&IntRef(&s.y))]))
                .collect();
            let payload = json!({
                "member": c.member,
                "index": c.index,
                "companion": c.companion.as_ref().map(|v| to_value(&IntRef(v))),
                "trace": trace,
            });
            Ok(Report::new("pell classify", json!({"k": k, "n": to_value(&IntRef(n)), "experimental": experimental}), payload)
                .summary(json!({"within_hypothesis": c.within_hypothesis, "discriminants": to_value(&c.discriminants)})))
        }
        PellCmd::Solve { k, x, y } => {
            let p = SeqParams::new(*k)?;
            let solved = pell::solve_pm1(p, x, y)?;
            let params = json!({"k": k, "x": to_value(&IntRef(x)), "y": to_value(&IntRef(y))});
            let report = match &solved {
                Some(s) => Report::new("pell solve", params, to_value(s)),
                None => Report::new("pell solve", params, Value::Null).plain(vec!["not on the curve".into()]),
            };
            Ok(report)
        }
        PellCmd::Enumerate { k, bound } => {
            let p = SeqParams::new(*k)?;
            let sols = pell::enumerate_pm1(p, bound);
            Ok(solutions_report("pell enumerate", json!({"k": k, "bound": to_value(&IntRef(bound))}), &sols))
        }
        PellCmd::Brute { k, bound } => {
            let p = SeqParams::new(*k)?;
            let sols = pell::brute_force_pm1(p, *bound)?;
            Ok(solutions_report("pell brute", json!({"k": k, "bound": bound}), &sols))
        }
        PellCmd::Surface { k, bound } => {
            let p = SeqParams::new(*k)?;
            let r = pell::carlitz_surface_search(p, *bound)?;
            let table = r
                .points
                .iter()
                .map(|q| {
                    vec![
                        q.x.to_string(),
                        q.y.to_string(),
                        q.z.to_string(),
                        scalar(&to_value(&q.kind)).unwrap_or_default(),
                        q.pairwise_coprime.to_string(),
                    ]
                })
                .collect();
            Ok(Report::new("pell surface", json!({"k": k, "bound": bound}), to_value(&r))
                .table(vec!["x", "y", "z", "kind", "pairwise_coprime"], table)
                .failed_if(!r.all_linear || !r.linear_family_complete))
        }
    }
}

fn convolve(a: &ConvolveArgs) -> Result<Report> {
    let p = SeqParams::new(a.k)?;
    let dp = identity::convolution_s(p, a.m, a.n)?;
    let closed = identity::convolution_closed(p, a.m, a.n)?;
    let series = identity::convolution_series(p, a.m, a.n, a.mode)?;
    let dp_closed = Rat::from_integer(dp.clone()) == closed;
    let series_agrees = series == closed;
    Ok(Report::new(
        "convolve",
        json!({"k": a.k, "m": a.m, "n": a.n, "mode": a.mode}),
        json!({
            "convolution": to_value(&IntRef(&dp)),
            "closed_form": to_value(&RatRef(&closed)),
            "series": to_value(&RatRef(&series)),
        }),
    )
    .summary(json!({"convolution_matches_closed_form": dp_closed, "series_matches": series_agrees}))
    .failed_if(!dp_closed || (a.mode == Mode::Corrected && !series_agrees)))
}

fn cf(a: &CfArgs) -> Result<Report> {
    let p = SeqParams::new(a.k)?;
    let c = identity::continued_fraction(p, a.m, a.t)?;
    Ok(Report::new("cf", json!({"k": a.k, "m": a.m, "t": a.t}), to_value(&c)).failed_if(c.depth != a.t as usize))
}

fn verify_all_cmd() -> Result<Report> {
    let cfg = ErrataConfig::default();
    let ledger = verify_all(&cfg)?;
    let [id_line, entry_line] = ledger.summary_lines();

    let mut plain = vec!["closed forms and claims".to_string()];
    let mut rows = Vec::new();
    for e in &ledger.entries {
        rows.push(vec![e.topic.to_string(), scalar(&to_value(&e.status)).unwrap_or_default()]);
    }
    plain.extend(aligned(&rows, 2));
    plain.push(String::new());
    plain.push("identities".into());
    let id_rows: Vec<Vec<String>> = ledger
        .identities
        .iter()
        .map(|r| {
            let cx = r.counterexample.as_ref().map_or("-".to_string(), |c| {
                let v = to_value(c);
                format!(
                    "k={} {} lhs={} rhs={}",
                    c.k,
                    v["bindings"],
                    scalar(&v["lhs"]).unwrap_or_default(),
                    scalar(&v["rhs"]).unwrap_or_default()
                )
            });
            vec![r.id.clone(), status_name(r.status), cx]
        })
        .collect();
    plain.extend(aligned(&id_rows, 2));
    let unexpected: Vec<&str> = ledger
        .entries
        .iter()
        .filter(|e| e.status == EntryStatus::Unexpected)
        .map(|e| e.topic)
        .chain(ledger.identities.iter().filter(|r| r.unexpected).map(|r| r.id.as_str()))
        .collect();
    if !unexpected.is_empty() {
        plain.push(String::new());
        plain.push(format!("unexpected: {}", unexpected.join(", ")));
    }
    plain.push(String::new());
    plain.push(id_line.clone());
    plain.push(entry_line.clone());

    let table = ledger
        .entries
        .iter()
        .map(|e| {
            vec![
                "claim".to_string(),
                e.topic.to_string(),
                scalar(&to_value(&e.status)).unwrap_or_default(),
                e.printed.clone(),
                e.correction.clone().unwrap_or_default(),
            ]
        })
        .chain(ledger.identities.iter().map(|r| {
            vec![
                "identity".to_string(),
                r.id.clone(),
                status_name(r.status),
                r.printed.clone(),
                r.correction.clone().unwrap_or_default(),
            ]
        }))
        .collect();
    Ok(Report::new("verify-all", to_value(&cfg), to_value(&ledger))
        .summary(json!({
            "identities": to_value(&ledger.identity_summary),
            "claims": to_value(&ledger.entry_summary),
            "lines": [id_line, entry_line],
        }))
        .plain(plain)
        .plain_without_summary()
        .table(vec!["kind", "id", "status", "printed", "correction"], table)
        .failed_if(ledger.has_unexpected()))
}
