//! Table verification: every entry is checked independently and the
//! outcome collected into a [`Report`].

use rayon::prelude::*;
use serde::Serialize;

use super::catalog::{catalog, entry, CatalogEntry};
use super::classify::{Classification, Classifier};
use super::derivation::derivation_replay;
use super::minimality::{is_minimal_weak_base, MinimalityMode};
use crate::boolfn::Budget;
use crate::error::Result;
use crate::galois::{c_cols, ppol_k_with, Fingerprint};
use crate::relcore::Relation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyOptions {
    pub n_max: usize,
    /// Partial-polymorphism arity for the weak-base check; 0 skips it.
    pub k_partial: usize,
    pub exhaustive_minimality: bool,
    /// Allow `k_partial = 4`.
    pub slow_k4: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            n_max: 4,
            k_partial: 3,
            exhaustive_minimality: false,
            slow_k4: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub check_id: String,
    pub subject: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub options: VerifyOptions,
    pub fingerprint_arity: usize,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    fn new(options: VerifyOptions, fingerprint_arity: usize, records: Vec<Record>) -> Report {
        let passed = records.iter().filter(|r| r.pass).count();
        Report {
            options,
            fingerprint_arity,
            summary: Summary {
                total: records.len(),
                passed,
                failed: records.len() - passed,
            },
            records,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.pass)
    }

    /// One line per record: `PASS|FAIL check subject: observed`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let mark = if r.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("{mark} {:<11} {:<8} {}", r.check_id, r.subject, r.observed));
            if let (false, Some(w)) = (r.pass, &r.witness) {
                out.push_str(&format!("  [{w}]"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{} checks, {} passed, {} failed\n",
            self.summary.total, self.summary.passed, self.summary.failed
        ));
        out
    }
}

fn record(
    check: &str,
    subject: &CatalogEntry,
    expected: impl ToString,
    observed: impl ToString,
    pass: bool,
    witness: Option<String>,
) -> Record {
    let observed = observed.to_string();
    Record {
        check_id: check.to_string(),
        subject: subject.id.to_string(),
        expected: expected.to_string(),
        witness: if pass { witness } else { witness.or_else(|| Some(observed.clone())) },
        observed,
        pass,
    }
}

fn error_record(check: &str, e: &CatalogEntry, expected: &str, err: impl ToString) -> Record {
    let msg = err.to_string();
    record(check, e, expected, format!("error: {msg}"), false, Some(msg))
}

fn first_difference(a: &Fingerprint, b: &Fingerprint) -> Option<String> {
    (1..=a.max_arity()).find_map(|m| {
        let (x, y) = (a.layer(m), b.layer(m));
        x.symmetric_difference(y).next().map(|i| {
            let side = if x.contains(i) { "base only" } else { "C(COLS^s) only" };
            let f = crate::boolfn::PartialFn::from_index(m, i as u64)
                .map(|f| f.to_string())
                .unwrap_or_default();
            format!("{f} ({side})")
        })
    })
}

fn check_classify(c: &Classifier, e: &CatalogEntry) -> Record {
    match c.classify(&e.weak_base) {
        Ok(class) => {
            let pass = class == Classification::Known(e.id);
            record("classify", e, e.id, &class, pass, None)
        }
        Err(err) => error_record("classify", e, &e.id.to_string(), err),
    }
}

fn check_derivation(e: &CatalogEntry) -> Option<Record> {
    let chain = e.derivation.as_ref()?;
    Some(match derivation_replay(chain) {
        Ok(r) => {
            let pass = r == e.weak_base;
            record(
                "derivation",
                e,
                e.weak_base.to_literal(),
                r.to_literal(),
                pass,
                (!pass).then(|| chain.to_string()),
            )
        }
        Err(err) => error_record("derivation", e, &e.weak_base.to_literal(), err),
    })
}

fn check_minimal(c: &Classifier, e: &CatalogEntry, mode: MinimalityMode) -> Record {
    match is_minimal_weak_base(c, &e.weak_base, e.id, mode) {
        Ok(v) => {
            let how = if v.exhaustive { "exhaustive" } else { "single-removal" };
            let witness = v.counterexamples().next().map(|w| {
                let removed: Vec<String> = w.removed.iter().map(|t| t.to_string()).collect();
                format!("removing {{{}}} keeps {}", removed.join(","), e.id)
            });
            let observed = format!(
                "{} ({how}, {} subsets)",
                if v.minimal { "minimal" } else { "not minimal" },
                v.subsets_checked
            );
            record("minimal", e, "minimal", observed, v.minimal, witness)
        }
        Err(err) => error_record("minimal", e, "minimal", err),
    }
}

fn check_ppol(e: &CatalogEntry, k: usize, budget: Budget) -> Option<Record> {
    if k == 0 || e.core_size > 3 {
        return None;
    }
    let run = || -> Result<(Fingerprint, Fingerprint)> {
        let cols = c_cols(std::slice::from_ref(&e.weak_base), e.core_size)?;
        Ok((
            ppol_k_with(std::slice::from_ref(&e.weak_base), k, budget)?,
            ppol_k_with(&[cols], k, budget)?,
        ))
    };
    Some(match run() {
        Ok((a, b)) => {
            let pass = a == b;
            let observed = if pass {
                format!("equal {:?}", a.cardinalities())
            } else {
                format!("{:?} vs {:?}", a.cardinalities(), b.cardinalities())
            };
            record(
                "ppol-equal",
                e,
                format!("pPol_{k}(base) = pPol_{k}(C(COLS^{}))", e.core_size),
                observed,
                pass,
                first_difference(&a, &b),
            )
        }
        Err(err) => error_record("ppol-equal", e, "equal", err),
    })
}

fn check_dual(e: &CatalogEntry, entries: &[CatalogEntry]) -> Record {
    let other = entries
        .iter()
        .find(|x| x.id == e.dual_id)
        .cloned()
        .map(Ok)
        .unwrap_or_else(|| entry(e.dual_id));
    let run = || -> Result<(Relation, Relation)> {
        let other = other.clone()?;
        Ok((e.weak_base.dual().permute_args(&e.dual_perm)?, other.weak_base))
    };
    match run() {
        Ok((mapped, target)) => {
            let pass = mapped == target;
            record(
                "dual",
                e,
                format!("{} via {}", e.dual_id, e.dual_perm),
                if pass { e.dual_id.to_string() } else { mapped.to_literal() },
                pass,
                (!pass).then(|| format!("expected {}", target.to_literal())),
            )
        }
        Err(err) => error_record("dual", e, &e.dual_id.to_string(), err),
    }
}

/// Runs every check on `entries`, classifying against `classifier`.
///
/// Records appear in entry order, then check order, independent of how the
/// work is scheduled.
pub fn verify_entries(
    classifier: &Classifier,
    entries: &[CatalogEntry],
    options: VerifyOptions,
) -> Report {
    let budget = if options.slow_k4 { Budget::Slow } else { Budget::Default };
    let k = options.k_partial.min(budget.partial_cap());
    let mode = if options.exhaustive_minimality {
        MinimalityMode::Exhaustive
    } else {
        MinimalityMode::Auto
    };
    let records: Vec<Record> = entries
        .par_iter()
        .flat_map_iter(|e| {
            let mut out = vec![check_classify(classifier, e)];
            out.extend(check_derivation(e));
            out.push(check_minimal(classifier, e, mode));
            out.extend(check_ppol(e, k, budget));
            out.push(check_dual(e, entries));
            out
        })
        .collect();
    Report::new(options, classifier.arity(), records)
}

/// Builds the catalog and classifier for `options.n_max` and verifies it.
pub fn verify_table(options: VerifyOptions) -> Result<Report> {
    let classifier = Classifier::new(options.n_max)?;
    let entries = catalog(options.n_max)?;
    Ok(verify_entries(&classifier, &entries, options))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_table_passes() {
        let opts = VerifyOptions {
            n_max: 2,
            k_partial: 2,
            ..Default::default()
        };
        let report = verify_table(opts).unwrap();
        assert!(report.all_pass(), "{}", report.to_text());
        assert_eq!(report.summary.total, report.records.len());
    }

    #[test]
    fn corrupted_entry_is_flagged() {
        let c = Classifier::new(2).unwrap();
        let mut e = entry("IE2".parse().unwrap()).unwrap();
        e.weak_base = e.weak_base.without_word(0b00001);
        let opts = VerifyOptions {
            n_max: 2,
            k_partial: 0,
            ..Default::default()
        };
        let report = verify_entries(&c, &[e], opts);
        let classify = &report.records[0];
        assert!(!classify.pass);
        assert_eq!(classify.observed, "BR");
        assert!(report.records.iter().all(|r| r.pass || r.witness.is_some()));
        assert!(!report.records.iter().any(|r| r.check_id == "ppol-equal"));
    }
}
