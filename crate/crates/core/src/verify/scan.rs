use std::collections::BTreeMap;

use serde::Serialize;

use super::{
    verify_lemmas, verify_theorem, LemmaConfig, LemmaOutcome, LemmaTag, ReportSink, TheoremId,
    VerificationReport,
};
use crate::error::{Error, Result};
use crate::field::{primes_in, PrimeContext};
use crate::par::Executor;

/// Primes handed to the workers at a time; results are written in prime order
/// after each batch.
const BATCH: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanConfig {
    pub pmin: u64,
    pub pmax: u64,
    pub theorems: Vec<TheoremId>,
    pub lemmas: Vec<LemmaTag>,
    /// Worker count; `0` uses every core.
    pub jobs: usize,
    pub lemma_config: LemmaConfig,
    /// Verify theorems for every root of unity of the relevant order, not only
    /// the smallest.
    pub all_roots: bool,
}

impl ScanConfig {
    pub fn new(pmin: u64, pmax: u64) -> Self {
        ScanConfig {
            pmin,
            pmax,
            theorems: Vec::new(),
            lemmas: Vec::new(),
            jobs: 1,
            lemma_config: LemmaConfig::default(),
            all_roots: false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub primes: usize,
    pub reports: usize,
    pub attempted: usize,
    pub verified: usize,
    pub mismatches: usize,
    pub skipped: usize,
}

impl ScanSummary {
    fn absorb(&mut self, r: &VerificationReport) {
        self.reports += 1;
        self.attempted += r.attempted();
        self.verified += r.verified();
        self.mismatches += r.attempted() - r.verified();
    }

    pub fn is_clean(&self) -> bool {
        self.mismatches == 0
    }
}

/// Runs the configured theorems and lemma checks over the odd primes in
/// `[pmin, pmax]`, streaming reports to `sink` in increasing `p`.
/// Mismatches are recorded, never fatal.
pub fn scan(cfg: &ScanConfig, sink: &mut dyn ReportSink) -> Result<ScanSummary> {
    if cfg.pmin > cfg.pmax {
        return Err(Error::Usage(format!(
            "empty range: pmin = {} exceeds pmax = {}",
            cfg.pmin, cfg.pmax
        )));
    }
    let primes: Vec<u64> = primes_in(cfg.pmin, cfg.pmax)
        .filter(|&p| !cfg.lemmas.is_empty() || cfg.theorems.iter().any(|t| t.applies(p)))
        .collect();
    let exec = Executor::new(cfg.jobs);
    let mut summary = ScanSummary::default();
    for batch in primes.chunks(BATCH) {
        for (reports, skipped) in exec.map(batch, |&p| at_prime(cfg, p)) {
            summary.primes += 1;
            summary.skipped += skipped;
            for r in &reports {
                summary.absorb(r);
                sink.write_report(r)?;
            }
        }
    }
    sink.finish()?;
    Ok(summary)
}

fn at_prime(cfg: &ScanConfig, p: u64) -> (Vec<VerificationReport>, usize) {
    let ctx = match PrimeContext::full(p) {
        Ok(c) => c,
        Err(e) => return (vec![VerificationReport::failed("context", p, &e)], 0),
    };
    let mut out = Vec::new();
    for &id in cfg.theorems.iter().filter(|t| t.applies(p)) {
        let run = |c: &PrimeContext| {
            verify_theorem(c, id)
                .unwrap_or_else(|e| VerificationReport::failed(id.to_string(), p, &e))
        };
        if cfg.all_roots {
            for r in ctx.roots_of_unity(id.order()) {
                let overrides = BTreeMap::from([(id.order(), r)]);
                match PrimeContext::full_with_roots(p, &overrides) {
                    Ok(c) => out.push(run(&c)),
                    Err(e) => out.push(VerificationReport::failed(id.to_string(), p, &e)),
                }
            }
        } else {
            out.push(run(&ctx));
        }
    }
    let mut skipped = 0;
    for o in verify_lemmas(&ctx, &cfg.lemmas, &cfg.lemma_config) {
        match o {
            LemmaOutcome::Verified(r) => out.push(r),
            LemmaOutcome::Skipped { .. } => skipped += 1,
        }
    }
    (out, skipped)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::CsvSink;

    fn run(cfg: &ScanConfig) -> (ScanSummary, String) {
        let mut sink = CsvSink::new(Vec::new(), false).unwrap();
        let s = scan(cfg, &mut sink).unwrap();
        (s, String::from_utf8(sink.into_inner().unwrap()).unwrap())
    }

    #[test]
    fn theorem_one_to_100() {
        let mut cfg = ScanConfig::new(2, 100);
        cfg.theorems = vec![TheoremId::One];
        let (s, text) = run(&cfg);
        let ps: std::collections::BTreeSet<u64> = text
            .lines()
            .skip(1)
            .map(|l| l.split(',').next().unwrap().parse().unwrap())
            .collect();
        assert_eq!(
            ps.into_iter().collect::<Vec<_>>(),
            vec![5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97]
        );
        assert!(s.is_clean());
        assert_eq!(s.primes, 11);
    }

    #[test]
    fn empty_and_inverted_ranges() {
        let mut cfg = ScanConfig::new(2, 3);
        cfg.theorems = vec![TheoremId::One];
        let (s, text) = run(&cfg);
        assert_eq!(s, ScanSummary::default());
        assert_eq!(text, "p,object,case,lhs,rhs,match,elapsed_us\n");
        let mut sink = CsvSink::new(Vec::new(), false).unwrap();
        assert!(matches!(
            scan(&ScanConfig::new(100, 2), &mut sink),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn output_independent_of_jobs() {
        let mut cfg = ScanConfig::new(3, 160);
        cfg.theorems = TheoremId::ALL.to_vec();
        cfg.lemmas = vec![LemmaTag::Dnc, LemmaTag::HelloAgain];
        let (a, ta) = run(&cfg);
        cfg.jobs = 4;
        let (b, tb) = run(&cfg);
        assert_eq!(a, b);
        assert_eq!(ta, tb);
        assert!(a.is_clean());
    }

    #[test]
    fn all_roots_multiplies_reports() {
        let mut cfg = ScanConfig::new(73, 73);
        cfg.theorems = vec![TheoremId::Two];
        cfg.all_roots = true;
        let (s, _) = run(&cfg);
        assert_eq!(s.reports, 4);
        assert!(s.is_clean());
    }
}
