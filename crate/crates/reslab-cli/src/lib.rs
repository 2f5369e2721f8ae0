//! Scenario runner for the resonance laboratory: JSON scenario ingestion,
//! parallel check sweeps, and deterministic CSV/JSON report emission.

pub mod bundled;
pub mod report;
pub mod runner;
pub mod scenario;
