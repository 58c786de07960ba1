//! Verification harness around the formcore engine: corpus management,
//! saturation audits, lemma/theorem suites, and deterministic reports.

pub mod audit;
pub mod corpus;
pub mod report;
pub mod suites;
