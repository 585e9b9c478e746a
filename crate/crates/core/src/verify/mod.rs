//! Exact verification of the four evaluation theorems and the supporting
//! identities, with per-case reports.

mod lemmas;
mod report;
mod scan;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;

pub use lemmas::{verify_lemmas, LemmaConfig, LemmaOutcome, LemmaTag, ORACLE_TOLERANCE};
pub use report::{CsvSink, JsonSink, OutputFormat, ReportSink};
pub use scan::{scan, ScanConfig, ScanSummary};

use crate::characters::MulChar;
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::field::PrimeContext;
use crate::hecke::{hecke_value, CmCurve};
use crate::hypergeometric::{hg2f1, HgValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TheoremId {
    One,
    Two,
    Three,
    Four,
}

impl TheoremId {
    pub const ALL: [TheoremId; 4] = [
        TheoremId::One,
        TheoremId::Two,
        TheoremId::Three,
        TheoremId::Four,
    ];

    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    /// Order of `psi`.
    pub fn order(self) -> u32 {
        [4, 8, 6, 12][self as usize]
    }

    /// The theorem applies to primes `p = 1 mod modulus`.
    pub fn modulus(self) -> u64 {
        self.order() as u64
    }

    pub fn curve(self) -> CmCurve {
        [
            CmCurve::X3MinusX,
            CmCurve::X3Plus4X2Plus2X,
            CmCurve::X3Plus1,
            CmCurve::X3Minus3X,
        ][self as usize]
    }

    pub fn applies(self, p: u64) -> bool {
        p % self.modulus() == 1
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "theorem{}", self.number())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix("theorem").unwrap_or(t);
        match t {
            "1" => Ok(TheoremId::One),
            "2" => Ok(TheoremId::Two),
            "3" => Ok(TheoremId::Three),
            "4" => Ok(TheoremId::Four),
            _ => Err(Error::Parse(format!("unknown theorem {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseRow {
    pub case: String,
    pub lhs: String,
    pub rhs: String,
    pub matched: bool,
    pub elapsed_us: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub object: String,
    pub p: u64,
    /// The root `r_N` fixing the prime above `p`.
    pub ideal_root: u64,
    pub rows: Vec<CaseRow>,
    pub elapsed_us: u64,
}

impl VerificationReport {
    pub fn attempted(&self) -> usize {
        self.rows.len()
    }

    pub fn verified(&self) -> usize {
        self.rows.iter().filter(|r| r.matched).count()
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &CaseRow> {
        self.rows.iter().filter(|r| !r.matched)
    }

    pub fn is_clean(&self) -> bool {
        self.rows.iter().all(|r| r.matched)
    }

    /// A one-row report recording an error that prevented the checks.
    pub fn failed(object: impl Into<String>, p: u64, err: &Error) -> Self {
        VerificationReport {
            object: object.into(),
            p,
            ideal_root: 0,
            rows: vec![CaseRow {
                case: "error".into(),
                lhs: err.to_string(),
                rhs: String::new(),
                matched: false,
                elapsed_us: 0,
            }],
            elapsed_us: 0,
        }
    }
}

pub(crate) struct ReportBuilder {
    report: VerificationReport,
    start: Instant,
}

/// Rendered sides and whether they agree.
pub(crate) type Comparison = (String, String, bool);

impl ReportBuilder {
    pub(crate) fn new(object: impl Into<String>, p: u64, ideal_root: u64) -> Self {
        ReportBuilder {
            report: VerificationReport {
                object: object.into(),
                p,
                ideal_root,
                rows: Vec::new(),
                elapsed_us: 0,
            },
            start: Instant::now(),
        }
    }

    pub(crate) fn case(&mut self, case: impl Into<String>, f: impl FnOnce() -> Result<Comparison>) {
        let t = Instant::now();
        let (lhs, rhs, matched) = f().unwrap_or_else(|e| (e.to_string(), String::new(), false));
        self.report.rows.push(CaseRow {
            case: case.into(),
            lhs,
            rhs,
            matched,
            elapsed_us: t.elapsed().as_micros() as u64,
        });
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.report.rows.is_empty()
    }

    pub(crate) fn finish(mut self) -> VerificationReport {
        self.report.elapsed_us = self.start.elapsed().as_micros() as u64;
        self.report
    }
}

pub(crate) fn cmp_hg(a: &HgValue, b: &HgValue) -> Comparison {
    let (l, r) = HgValue::render_pair(a, b);
    (l, r, a == b)
}

pub(crate) fn cmp_cyc(a: &CycInt, b: &CycInt) -> Comparison {
    let (x, y) = a.common(b);
    let eq = x == y;
    (x.render_tagged(), y.render_tagged(), eq)
}

pub(crate) fn cmp_int(a: i64, b: i64) -> Comparison {
    (a.to_string(), b.to_string(), a == b)
}

fn int(n: i64) -> CycInt {
    CycInt::from_int(1, n)
}

/// One displayed identity: `2F1(A, B; phi | a)` against `coeff(b) chi / p` for
/// square `a = b^2` outside the vanishing set.
#[derive(Clone, Copy)]
struct Identity<'c> {
    label: &'static str,
    a: MulChar<'c>,
    b: MulChar<'c>,
    /// `sign * (c(1+b) + c(1-b))`; `None` for the quartic form `-2 phi(1+b)`,
    /// which also vanishes when `1-a` is a nonsquare.
    pair: Option<(MulChar<'c>, i64)>,
}

impl Identity<'_> {
    fn vanishes(&self, ctx: &PrimeContext, a: u64) -> bool {
        let nonsquare = |v: i64| ctx.quadratic_character(v) == -1;
        nonsquare(a as i64) || (self.pair.is_none() && nonsquare(1 - a as i64))
    }

    fn coeff(&self, ctx: &PrimeContext, b: u64) -> Result<CycInt> {
        match self.pair {
            None => Ok(int(-2 * ctx.quadratic_character(1 + b as i64) as i64)),
            Some((c, s)) => {
                let sum = &c.value(1 + b as i64)? + &c.value(1 - b as i64)?;
                Ok(sum.scale(&BigInt::from(s)))
            }
        }
    }
}

/// Exact sides of one identity at one `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremCase {
    pub case: String,
    pub lhs: HgValue,
    /// The right side for each square root `b` of `a`, or a single `(None, 0)`
    /// in the vanishing cases.
    pub rhs: Vec<(Option<u64>, HgValue)>,
}

impl TheoremCase {
    fn comparison(&self) -> Comparison {
        let (_, r0) = &self.rhs[0];
        let (l, r, ok) = cmp_hg(&self.lhs, r0);
        if self.rhs.iter().all(|(_, v)| v == r0) {
            return (l, r, ok);
        }
        let rs: Vec<String> = self
            .rhs
            .iter()
            .map(|(b, v)| {
                format!(
                    "b={}: {}",
                    b.unwrap_or(0),
                    HgValue::render_pair(&self.lhs, v).1
                )
            })
            .collect();
        (l, rs.join("; "), false)
    }

    /// Both sides agree, for every choice of `b`.
    pub fn holds(&self) -> bool {
        self.rhs.iter().all(|(_, v)| *v == self.lhs)
    }
}

fn identities<'c>(ctx: &'c PrimeContext, id: TheoremId) -> Result<Vec<Identity<'c>>> {
    let p = ctx.p();
    if !id.applies(p) {
        return Err(Error::CongruenceViolation {
            p,
            modulus: id.modulus(),
        });
    }
    let psi = MulChar::from_ideal(ctx, id.order())?;
    let phi = MulChar::quadratic(ctx);
    let sign = |e: u64| if e.is_multiple_of(2) { 1 } else { -1 };
    let psibar2 = psi.conj().pow(2);
    let psi2 = psi.pow(2);
    let shaped = |label, c, s| Identity {
        label,
        a: phi.mul(&psi),
        b: psi,
        pair: Some((c, s)),
    };
    Ok(match id {
        TheoremId::One => vec![Identity {
            label: "",
            a: psi.conj(),
            b: psi,
            pair: None,
        }],
        TheoremId::Two => vec![shaped("", psibar2, -sign((p - 1) / 8))],
        TheoremId::Three => vec![
            Identity {
                label: ";psi^2",
                a: phi.mul(&psi2),
                b: psi2,
                pair: Some((psi2, -phi.sign())),
            },
            shaped(";psi", psibar2, -1),
        ],
        TheoremId::Four => vec![shaped("", psibar2, -sign((p - 1) / 12))],
    })
}

fn theorem_chi(ctx: &PrimeContext, id: TheoremId) -> Result<CycInt> {
    let hecke = hecke_value(ctx, id.curve())?;
    hecke.check(ctx)?;
    Ok(hecke.value.to_cyc())
}

fn evaluate_identity(
    ctx: &PrimeContext,
    idn: &Identity<'_>,
    chi: &CycInt,
    a: u64,
) -> Result<TheoremCase> {
    let p = ctx.p();
    let phi = MulChar::quadratic(ctx);
    let lhs = hg2f1(ctx, &idn.a, &idn.b, &phi, a as i64)?;
    let case = format!("a={a}{}", idn.label);
    if idn.vanishes(ctx, a) {
        return Ok(TheoremCase {
            case,
            lhs,
            rhs: vec![(None, HgValue::zero(p))],
        });
    }
    let b = ctx.sqrt(a as i64).expect("a is a square");
    let rhs = [b, p - b]
        .into_iter()
        .map(|b| Ok((Some(b), HgValue::new(&idn.coeff(ctx, b)? * chi, p, 1))))
        .collect::<Result<_>>()?;
    Ok(TheoremCase { case, lhs, rhs })
}

/// Both sides of theorem `id` at a single `a`, one entry per displayed
/// identity.
pub fn evaluate_theorem(ctx: &PrimeContext, id: TheoremId, a: i64) -> Result<Vec<TheoremCase>> {
    let a = ctx.reduce(a);
    if a < 2 {
        return Err(Error::BadParams(format!(
            "a must lie outside {{0, 1}} mod {}",
            ctx.p()
        )));
    }
    let ids = identities(ctx, id)?;
    let chi = theorem_chi(ctx, id)?;
    ids.iter()
        .map(|idn| evaluate_identity(ctx, idn, &chi, a))
        .collect()
}

/// Checks every `a` in `F_p \ {0, 1}` for theorem `id`, using the context's
/// root of order `N` for `psi` and the matching Hecke character.
pub fn verify_theorem(ctx: &PrimeContext, id: TheoremId) -> Result<VerificationReport> {
    let ids = identities(ctx, id)?;
    let chi = theorem_chi(ctx, id)?;
    let mut rep = ReportBuilder::new(id.to_string(), ctx.p(), ctx.root(id.order())?);
    for a in 2..ctx.p() {
        for idn in &ids {
            rep.case(format!("a={a}{}", idn.label), || {
                Ok(evaluate_identity(ctx, idn, &chi, a)?.comparison())
            });
        }
    }
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::primes_in;

    #[test]
    fn theorem_examples() {
        let c13 = PrimeContext::full(13).unwrap();
        let r = verify_theorem(&c13, TheoremId::One).unwrap();
        assert_eq!((r.attempted(), r.verified()), (11, 11));
        assert_eq!(r.ideal_root, 5);
        let c17 = PrimeContext::full(17).unwrap();
        let r = verify_theorem(&c17, TheoremId::Two).unwrap();
        assert_eq!((r.attempted(), r.verified()), (15, 15));
        assert_eq!(
            verify_theorem(&c13, TheoremId::Two).unwrap_err(),
            Error::CongruenceViolation { p: 13, modulus: 8 }
        );
        let r = verify_theorem(&c13, TheoremId::Three).unwrap();
        assert_eq!((r.attempted(), r.verified()), (22, 22));
        let r = verify_theorem(&c13, TheoremId::Four).unwrap();
        assert!(r.is_clean());
    }

    #[test]
    fn theorems_small_primes() {
        for p in primes_in(5, 200) {
            let ctx = PrimeContext::full(p).unwrap();
            for id in TheoremId::ALL.into_iter().filter(|id| id.applies(p)) {
                let r = verify_theorem(&ctx, id).unwrap();
                let bad: Vec<_> = r.mismatches().collect();
                assert!(bad.is_empty(), "{id} p={p}: {bad:?}");
            }
        }
    }

    #[test]
    fn conjugate_roots_also_verify() {
        let p = 73;
        let base = PrimeContext::full(p).unwrap();
        for id in TheoremId::ALL {
            for r in base.roots_of_unity(id.order()) {
                let mut o = std::collections::BTreeMap::new();
                o.insert(id.order(), r);
                let ctx = PrimeContext::with_roots(p, &[1, 2, 3, 4, 6, 8, 12, 24], &o).unwrap();
                assert!(verify_theorem(&ctx, id).unwrap().is_clean(), "{id} r={r}");
            }
        }
    }

    #[test]
    fn single_a_evaluation() {
        let ctx = PrimeContext::full(13).unwrap();
        let cases = evaluate_theorem(&ctx, TheoremId::Three, 4).unwrap();
        assert_eq!(cases.len(), 2);
        assert!(cases.iter().all(|c| c.holds() && c.rhs.len() == 2));
        assert_eq!(cases[1].case, "a=4;psi");
        // 2 is a nonsquare mod 13, so theorem 1 vanishes there.
        let c = &evaluate_theorem(&ctx, TheoremId::One, 2).unwrap()[0];
        assert_eq!(c.rhs, vec![(None, HgValue::zero(13))]);
        assert!(c.holds());
        assert!(matches!(
            evaluate_theorem(&ctx, TheoremId::One, 14),
            Err(Error::BadParams(_))
        ));
    }

    #[test]
    fn theorem_id_parsing() {
        assert_eq!("3".parse::<TheoremId>().unwrap(), TheoremId::Three);
        assert_eq!("theorem4".parse::<TheoremId>().unwrap(), TheoremId::Four);
        assert!("5".parse::<TheoremId>().is_err());
        assert_eq!(TheoremId::Two.to_string(), "theorem2");
    }
}
