//! Identity registry, exact verification and sweeps.
//!
//! Every entry carries the statement as originally printed and, where that
//! reading is wrong, a repaired statement. Both are plain Rust evaluators
//! over exact rationals; a side may be undefined (a division by `F(0)`).

mod analytic;
mod correction;
mod registry;

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::seq::{SeqParams, SeqTable};
use crate::{Mode, Rat};

pub use analytic::{
    arctan_suite, continued_fraction, convolution_closed, convolution_s, convolution_series,
    reciprocal_sum, ArctanReport, ContinuedFraction, ReciprocalReport, ReciprocalRow, ARCTAN_TOLERANCE,
    RECIPROCAL_MAX_N,
};
pub use correction::{correction_solve, Ansatz, Factor, Fit, LhsSpec, Monomial};
pub use registry::registry;

/// Value of one side of an identity; `None` when undefined.
pub type Side = Option<Rat>;

/// Index symbols that identities quantify over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    Alpha,
    N,
    M,
    I,
    J,
}

impl Sym {
    pub fn name(self) -> &'static str {
        match self {
            Sym::Alpha => "alpha",
            Sym::N => "n",
            Sym::M => "m",
            Sym::I => "i",
            Sym::J => "j",
        }
    }

    pub fn parse(s: &str) -> Option<Sym> {
        match s {
            "alpha" | "α" => Some(Sym::Alpha),
            "n" => Some(Sym::N),
            "m" => Some(Sym::M),
            "i" => Some(Sym::I),
            "j" => Some(Sym::J),
            _ => None,
        }
    }
}

/// Exact evaluation context for one value of `k`.
pub struct Ctx {
    seq: SeqTable,
}

impl Ctx {
    pub fn new(p: SeqParams) -> Self {
        Ctx {
            seq: SeqTable::new(p, 160),
        }
    }

    pub fn params(&self) -> SeqParams {
        self.seq.params()
    }

    pub fn fi(&self, n: i64) -> BigInt {
        self.seq.f(n)
    }

    pub fn li(&self, n: i64) -> BigInt {
        self.seq.l(n)
    }

    pub fn f(&self, n: i64) -> Rat {
        Rat::from_integer(self.seq.f(n))
    }

    pub fn l(&self, n: i64) -> Rat {
        Rat::from_integer(self.seq.l(n))
    }

    pub fn k(&self) -> Rat {
        Rat::from_integer(self.seq.k().into())
    }

    pub fn d(&self) -> Rat {
        Rat::from_integer(self.params().d().into())
    }
}

pub(crate) type Eval = fn(&Ctx, &[i64]) -> (Side, Side);

/// One reading of an identity.
pub struct Form {
    pub text: &'static str,
    pub(crate) eval: Eval,
}

/// What the sweep is expected to find for the printed statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Holds,
    Misprint,
}

pub struct Identity {
    pub id: &'static str,
    pub symbols: &'static [Sym],
    /// Hard limits on individual symbols, intersected with sweep ranges.
    pub bounds: &'static [(Sym, i64, i64)],
    /// Only meaningful at `k = 1`.
    pub classical_only: bool,
    pub expectation: Expectation,
    pub printed: Form,
    pub corrected: Option<Form>,
}

impl Identity {
    fn form(&self, mode: Mode) -> &Form {
        match mode {
            Mode::Verbatim => &self.printed,
            Mode::Corrected => self.corrected.as_ref().unwrap_or(&self.printed),
        }
    }

    fn bound(&self, s: Sym) -> (i64, i64) {
        self.bounds
            .iter()
            .find(|(b, _, _)| *b == s)
            .map(|&(_, lo, hi)| (lo, hi))
            .unwrap_or((i64::MIN, i64::MAX))
    }

    fn admits_k(&self, k: i64) -> bool {
        k >= 1 && (!self.classical_only || k == 1)
    }
}

pub fn lookup(id: &str) -> Result<&'static Identity> {
    registry()
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

/// Index bindings in the identity's own symbol order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bindings(pub Vec<(Sym, i64)>);

impl Bindings {
    pub fn values(&self) -> Vec<i64> {
        self.0.iter().map(|&(_, v)| v).collect()
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, i64)>) -> Result<Self> {
        let mut out = Vec::new();
        for (name, v) in pairs {
            let s = Sym::parse(name).ok_or_else(|| Error::domain("bindings", format!("unknown symbol `{name}`")))?;
            out.push((s, v));
        }
        Ok(Bindings(out))
    }
}

impl Serialize for Bindings {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (sym, v) in &self.0 {
            m.serialize_entry(sym.name(), v)?;
        }
        m.end()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityInstance {
    pub id: String,
    pub k: i64,
    pub bindings: Bindings,
}

impl IdentityInstance {
    pub fn new<'a>(id: &str, k: i64, pairs: impl IntoIterator<Item = (&'a str, i64)>) -> Result<Self> {
        Ok(IdentityInstance {
            id: id.to_string(),
            k,
            bindings: Bindings::from_pairs(pairs)?,
        })
    }
}

fn side_ser<S: Serializer>(v: &Side, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_str("undefined"),
    }
}

/// Exact outcome of evaluating one instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub id: String,
    pub mode: Mode,
    pub k: i64,
    pub bindings: Bindings,
    #[serde(serialize_with = "side_ser")]
    pub lhs: Side,
    #[serde(serialize_with = "side_ser")]
    pub rhs: Side,
    pub holds: bool,
}

fn holds(lhs: &Side, rhs: &Side) -> bool {
    matches!((lhs, rhs), (Some(a), Some(b)) if a == b)
}

/// Normalize bindings to the identity's symbol order and check them.
fn check_bindings(entry: &Identity, k: i64, b: &Bindings) -> Result<Vec<i64>> {
    let bad = |message: String| Error::InvalidBinding {
        id: entry.id.to_string(),
        message,
    };
    if !entry.admits_k(k) {
        return Err(bad(if entry.classical_only {
            format!("stated for k = 1 only, got k = {k}")
        } else {
            format!("k = {k} must be >= 1")
        }));
    }
    let mut seen = BTreeMap::new();
    for &(s, v) in &b.0 {
        if seen.insert(s, v).is_some() {
            return Err(bad(format!("symbol `{}` bound twice", s.name())));
        }
    }
    let mut out = Vec::with_capacity(entry.symbols.len());
    for &s in entry.symbols {
        let v = seen
            .remove(&s)
            .ok_or_else(|| bad(format!("missing binding for `{}`", s.name())))?;
        let (lo, hi) = entry.bound(s);
        if v < lo || v > hi {
            return Err(bad(format!("{} = {v} outside {lo}..={hi}", s.name())));
        }
        out.push(v);
    }
    if let Some((s, _)) = seen.into_iter().next() {
        return Err(bad(format!("`{}` is not an index of this identity", s.name())));
    }
    Ok(out)
}

/// Evaluate both sides of one instance exactly.
pub fn verify(instance: &IdentityInstance, mode: Mode) -> Result<Verdict> {
    let entry = lookup(&instance.id)?;
    let values = check_bindings(entry, instance.k, &instance.bindings)?;
    let ctx = Ctx::new(SeqParams::new(instance.k)?);
    let (lhs, rhs) = (entry.form(mode).eval)(&ctx, &values);
    Ok(Verdict {
        id: entry.id.to_string(),
        mode,
        k: instance.k,
        bindings: Bindings(entry.symbols.iter().copied().zip(values).collect()),
        holds: holds(&lhs, &rhs),
        lhs,
        rhs,
    })
}

/// Default index windows for sweeps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexRanges {
    pub n: RangeInclusive<i64>,
    pub m: RangeInclusive<i64>,
    pub ij: RangeInclusive<i64>,
    pub alpha: RangeInclusive<i64>,
}

impl Default for IndexRanges {
    fn default() -> Self {
        IndexRanges {
            n: -60..=60,
            m: 1..=10,
            ij: -3..=3,
            alpha: 1..=4,
        }
    }
}

impl IndexRanges {
    fn range(&self, s: Sym) -> &RangeInclusive<i64> {
        match s {
            Sym::Alpha => &self.alpha,
            Sym::N => &self.n,
            Sym::M => &self.m,
            Sym::I | Sym::J => &self.ij,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    FailsAsPrinted,
    HoldsWithCorrection,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub k: i64,
    pub bindings: Bindings,
    #[serde(serialize_with = "side_ser")]
    pub lhs: Side,
    #[serde(serialize_with = "side_ser")]
    pub rhs: Side,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub status: Status,
    pub printed: String,
    /// Minimal failing instance of the printed statement.
    pub counterexample: Option<Counterexample>,
    pub correction: Option<String>,
    /// Minimal failing instance of the correction, if it fails too.
    pub correction_counterexample: Option<Counterexample>,
    pub expectation: Expectation,
    pub instances: usize,
    pub unexpected: bool,
}

fn instances(entry: &Identity, ranges: &IndexRanges) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for &s in entry.symbols {
        let (lo, hi) = entry.bound(s);
        let r = ranges.range(s);
        let (a, b) = ((*r.start()).max(lo), (*r.end()).min(hi));
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (a..=b).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

/// Ordering for minimal counterexamples: `k`, then total absolute size of the
/// bindings, then the bindings lexicographically.
fn cx_key(k: i64, v: &[i64]) -> (i64, i64, Vec<i64>) {
    (k, v.iter().map(|x| x.abs()).sum(), v.to_vec())
}

fn first_failure(entry: &Identity, form: &Form, ctxs: &[Ctx], points: &[Vec<i64>]) -> Option<Counterexample> {
    ctxs.iter().find_map(|ctx| {
        let k = ctx.params().k();
        if !entry.admits_k(k) {
            return None;
        }
        points
            .par_iter()
            .filter_map(|v| {
                let (lhs, rhs) = (form.eval)(ctx, v);
                (!holds(&lhs, &rhs)).then(|| (cx_key(k, v), lhs, rhs))
            })
            .min_by(|a, b| a.0.cmp(&b.0))
            .map(|((k, _, v), lhs, rhs)| Counterexample {
                k,
                bindings: Bindings(entry.symbols.iter().copied().zip(v).collect()),
                lhs,
                rhs,
            })
    })
}

fn report(entry: &Identity, ctxs: &[Ctx], ranges: &IndexRanges) -> IdentityReport {
    let points = instances(entry, ranges);
    let count = ctxs.iter().filter(|c| entry.admits_k(c.params().k())).count() * points.len();
    let printed_cx = first_failure(entry, &entry.printed, ctxs, &points);
    let (status, correction, correction_cx) = match (&printed_cx, &entry.corrected) {
        (None, _) => (Status::Holds, None, None),
        (Some(_), None) => (Status::FailsAsPrinted, None, None),
        (Some(_), Some(c)) => match first_failure(entry, c, ctxs, &points) {
            None => (Status::HoldsWithCorrection, Some(c.text.to_string()), None),
            Some(cx) => (Status::FailsAsPrinted, None, Some(cx)),
        },
    };
    let unexpected = match entry.expectation {
        Expectation::Holds => status != Status::Holds,
        Expectation::Misprint => status != Status::HoldsWithCorrection,
    } || count == 0;
    IdentityReport {
        id: entry.id.to_string(),
        status,
        printed: entry.printed.text.to_string(),
        counterexample: printed_cx,
        correction,
        correction_counterexample: correction_cx,
        expectation: entry.expectation,
        instances: count,
        unexpected,
    }
}

/// Exhaustive exact sweep; reports follow the order of `ids` (registry order
/// when `ids` is empty).
pub fn sweep(ids: &[&str], ks: RangeInclusive<i64>, ranges: &IndexRanges) -> Result<Vec<IdentityReport>> {
    let entries: Vec<&Identity> = if ids.is_empty() {
        registry().iter().collect()
    } else {
        ids.iter().map(|id| lookup(id)).collect::<Result<_>>()?
    };
    let ctxs: Vec<Ctx> = ks
        .filter(|&k| k >= 1)
        .map(|k| SeqParams::new(k).map(Ctx::new))
        .collect::<Result<_>>()?;
    Ok(entries.into_iter().map(|e| report(e, &ctxs, ranges)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Side {
        Some(Rat::from_integer(n.into()))
    }

    #[test]
    fn catalan_instance() {
        let inst = IdentityInstance::new("catalan", 2, [("n", 3), ("j", 2)]).unwrap();
        let v = verify(&inst, Mode::Verbatim).unwrap();
        assert_eq!((v.lhs, v.rhs, v.holds), (r(4), r(4), true));
    }

    #[test]
    fn shift_product_lucas_instance() {
        let inst = IdentityInstance::new("shift-product-lucas", 1, [("alpha", 1), ("n", 1), ("i", 0), ("j", 0)]).unwrap();
        let v = verify(&inst, Mode::Verbatim).unwrap();
        assert_eq!((v.lhs.clone(), v.rhs.clone(), v.holds), (r(14), r(4), false));
        let v = verify(&inst, Mode::Corrected).unwrap();
        assert_eq!((v.lhs, v.rhs, v.holds), (r(4), r(4), true));
    }

    #[test]
    fn diffprod_exponent() {
        let inst = IdentityInstance::new("diffprod-classic-1", 1, [("n", 1)]).unwrap();
        let v = verify(&inst, Mode::Verbatim).unwrap();
        assert_eq!((v.lhs, v.rhs), (r(17), r(-1)));
        let v = verify(&inst, Mode::Corrected).unwrap();
        assert_eq!((v.lhs, v.rhs), (r(-1), r(-1)));
    }

    #[test]
    fn printed_misprints_at_k2() {
        let v = verify(&IdentityInstance::new("sum-squares", 2, [("n", 3)]).unwrap(), Mode::Verbatim).unwrap();
        assert_eq!((v.lhs, v.rhs), (r(30), r(120)));
        let v = verify(&IdentityInstance::new("sum-squares", 2, [("n", 3)]).unwrap(), Mode::Corrected).unwrap();
        assert!(v.holds);
        let v = verify(&IdentityInstance::new("fib-lucas-gap", 2, [("n", 3)]).unwrap(), Mode::Verbatim).unwrap();
        assert_eq!((v.lhs, v.rhs), (r(27), r(28)));
        let v = verify(&IdentityInstance::new("diffprod-general-6", 2, [("n", 2)]).unwrap(), Mode::Verbatim).unwrap();
        assert_eq!((v.lhs, v.rhs), (r(13), r(8)));
    }

    #[test]
    fn undefined_side() {
        let v = verify(&IdentityInstance::new("reciprocal-doubling-sum", 1, [("n", 2)]).unwrap(), Mode::Verbatim).unwrap();
        assert_eq!(v.lhs, None);
        assert!(!v.holds);
        let v = verify(&IdentityInstance::new("reciprocal-doubling-sum", 1, [("n", 2)]).unwrap(), Mode::Corrected).unwrap();
        assert_eq!(v.lhs, Some(Rat::new(7.into(), 3.into())));
        assert!(v.holds);
    }

    #[test]
    fn binding_errors() {
        assert!(matches!(
            verify(&IdentityInstance::new("nope", 1, []).unwrap(), Mode::Corrected),
            Err(Error::UnknownIdentity(_))
        ));
        let missing = IdentityInstance::new("catalan", 1, [("n", 3)]).unwrap();
        assert!(matches!(verify(&missing, Mode::Corrected), Err(Error::InvalidBinding { .. })));
        let extra = IdentityInstance::new("cassini", 1, [("n", 3), ("m", 1)]).unwrap();
        assert!(matches!(verify(&extra, Mode::Corrected), Err(Error::InvalidBinding { .. })));
        let classical = IdentityInstance::new("diffprod-classic-3", 2, [("n", 3)]).unwrap();
        assert!(matches!(verify(&classical, Mode::Corrected), Err(Error::InvalidBinding { .. })));
        let owings = IdentityInstance::new("owings-congruence", 1, [("n", 0)]).unwrap();
        assert!(matches!(verify(&owings, Mode::Corrected), Err(Error::InvalidBinding { .. })));
    }

    #[test]
    fn registry_ids_unique() {
        let mut ids: Vec<_> = registry().iter().map(|e| e.id).collect();
        let len = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), len);
    }

    #[test]
    fn small_sweep_statuses() {
        let ranges = IndexRanges {
            n: -8..=8,
            m: 1..=3,
            ij: -2..=2,
            alpha: 1..=2,
        };
        let reports = sweep(&[], 1..=3, &ranges).unwrap();
        for rep in &reports {
            assert!(!rep.unexpected, "{rep:?}");
        }
        let l1 = reports.iter().find(|r| r.id == "shift-product-lucas").unwrap();
        assert_eq!(l1.status, Status::HoldsWithCorrection);
        let cx = l1.counterexample.as_ref().unwrap();
        assert_eq!(cx.k, 1);
        assert_eq!(cx.bindings.values(), vec![1, 0, 0, 0]);
    }
}
