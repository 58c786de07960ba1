//! Deterministic verification reports.
//!
//! A run produces one [`RunReport`] holding one [`SuiteReport`] per executed
//! suite.  All collections are emitted in a fixed order (corpus order for
//! per-group rows, construction order for witnesses), so two runs over the
//! same corpus serialize identically except for the `elapsed_ms` fields.

use std::collections::BTreeMap;

use serde::Serialize;

pub const REPORT_SCHEMA: &str = "formlab-report/1";

/// One violation of a suite's expectation, with enough data to replay the
/// single hypothesis instance that produced it.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Witness {
    /// Corpus entry the violation occurred on ("-" for corpus-independent
    /// checks).
    pub group: String,
    /// Human-readable hypothesis instance.
    pub instance: String,
    /// Generators of the distinguished subgroup, in cycle notation; empty
    /// when no subgroup is involved.
    pub subgroup_gens: Vec<String>,
    /// The recomputed facts (both membership verdicts, orders, …).
    pub facts: BTreeMap<String, String>,
}

impl Witness {
    pub fn new(group: impl Into<String>, instance: impl Into<String>) -> Witness {
        Witness {
            group: group.into(),
            instance: instance.into(),
            subgroup_gens: Vec::new(),
            facts: BTreeMap::new(),
        }
    }

    pub fn with_subgroup(mut self, gens: &[formcore::Perm]) -> Witness {
        self.subgroup_gens = gens.iter().map(|p| p.to_string()).collect();
        self
    }

    pub fn fact(mut self, key: &str, value: impl ToString) -> Witness {
        self.facts.insert(key.into(), value.to_string());
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupVerdict {
    pub group: String,
    pub checks: u64,
    pub violations: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    /// Free-form context: proxy hypotheses, expected-witness confirmations.
    pub notes: Vec<String>,
    pub groups: Vec<GroupVerdict>,
    pub checks: u64,
    pub witnesses: Vec<Witness>,
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>) -> SuiteReport {
        SuiteReport {
            suite: suite.into(),
            notes: Vec::new(),
            groups: Vec::new(),
            checks: 0,
            witnesses: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn is_clean(&self) -> bool {
        self.witnesses.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusInfo {
    pub source: String,
    pub entries: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub corpus: CorpusInfo,
    pub suites: Vec<SuiteReport>,
    pub clean: bool,
    pub elapsed_ms: u128,
}

impl RunReport {
    pub fn new(corpus: CorpusInfo, suites: Vec<SuiteReport>, elapsed_ms: u128) -> RunReport {
        let clean = suites.iter().all(SuiteReport::is_clean);
        RunReport {
            schema: REPORT_SCHEMA,
            corpus,
            suites,
            clean,
            elapsed_ms,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports serialize");
        text.push('\n');
        text
    }

    /// Text rendering: per suite one line per group plus a summary footer.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for suite in &self.suites {
            out.push_str(&format!("suite {}\n", suite.suite));
            for note in &suite.notes {
                out.push_str(&format!("  note: {note}\n"));
            }
            for row in &suite.groups {
                out.push_str(&format!(
                    "  {}: {} checks, {} violations\n",
                    row.group, row.checks, row.violations
                ));
            }
            for w in &suite.witnesses {
                out.push_str(&format!("  witness {}: {}\n", w.group, w.instance));
                for gen in &w.subgroup_gens {
                    out.push_str(&format!("    subgroup gen {gen}\n"));
                }
                for (k, v) in &w.facts {
                    out.push_str(&format!("    {k}: {v}\n"));
                }
            }
            out.push_str(&format!(
                "  summary: {} checks, {} violations ({} ms)\n",
                suite.checks,
                suite.witnesses.len(),
                suite.elapsed_ms
            ));
        }
        let verdict = if self.clean { "clean" } else { "violations found" };
        out.push_str(&format!(
            "total: {} suites over {} groups ({}), {} ({} ms)\n",
            self.suites.len(),
            self.corpus.entries,
            self.corpus.source,
            verdict,
            self.elapsed_ms
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_serializes_cleanly() {
        let report = RunReport::new(
            CorpusInfo {
                source: "builtin".into(),
                entries: 0,
                max_order: Some(360),
                max_degree: Some(24),
            },
            vec![SuiteReport::new("x")],
            0,
        );
        let json = report.to_json();
        assert!(json.contains("\"witnesses\": []"));
        assert!(json.contains("\"clean\": true"));
        assert!(report.to_text().contains("summary: 0 checks, 0 violations"));
    }

    #[test]
    fn witness_facts_are_ordered() {
        let w = Witness::new("Q8", "kernel of order 2")
            .fact("quotient-in-class", true)
            .fact("group-in-class", false);
        let json = serde_json::to_string(&w).unwrap();
        let a = json.find("group-in-class").unwrap();
        let b = json.find("quotient-in-class").unwrap();
        assert!(a < b);
    }
}
