//! Seeded corpus batteries, one per acceptance criterion.
//!
//! Each battery generates its instances from the configured seed, checks
//! them with `par::map_ordered` and reports every violation in instance
//! order, so both execution modes print identical reports.

mod classes;
mod constructions;
mod games;

use std::time::Instant;

use serde::Serialize;

use crate::error::Result;
use crate::par::{map_ordered, ExecMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub mode: ExecMode,
    pub seed: u64,
    /// Size of the random corpora; other batteries scale with it but never
    /// drop below their required minimum.
    pub instances: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            mode: ExecMode::Parallel,
            seed: 2024,
            instances: 200,
        }
    }
}

impl SuiteConfig {
    /// `base` instances at the default size, scaled, at least `required`.
    pub(crate) fn count(&self, base: usize, required: usize) -> usize {
        (base * self.instances / 200).max(required)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub instances: usize,
    pub required: usize,
    pub violations: Vec<String>,
    pub notes: Vec<String>,
    pub elapsed_ms: u128,
}

impl CriterionReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty() && self.instances >= self.required
    }

    /// `[PASS] 4 diagonal selection: 120 instances, 0 violations`
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {}: {} instances (need {}), {} violations, {} ms",
            if self.pass() { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.instances,
            self.required,
            self.violations.len(),
            self.elapsed_ms
        )
    }
}

pub const CRITERIA: [(usize, &str); 12] = [
    (1, "duality"),
    (2, "translation soundness"),
    (3, "menger equivalence"),
    (4, "diagonal selection"),
    (5, "menger extraction"),
    (6, "point-open extraction"),
    (7, "cantor witness"),
    (8, "fortissimo grid"),
    (9, "refinement"),
    (10, "scattered spaces"),
    (11, "self-consistency"),
    (12, "classifier laws"),
];

/// Outcome of one instance.
#[derive(Default)]
pub(crate) struct Check {
    pub violations: Vec<String>,
    pub notes: Vec<String>,
    /// Instances that do not count towards the required total.
    pub skipped: bool,
}

impl Check {
    pub fn fail(&mut self, msg: impl Into<String>) {
        self.violations.push(msg.into());
    }

    pub fn expect(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.violations.push(msg());
        }
    }
}

/// Runs `f` on every instance and folds the outcomes into a report.
pub(crate) fn battery<T, F>(
    id: usize,
    required: usize,
    mode: ExecMode,
    items: &[T],
    label: impl Fn(&T) -> String + Sync + Send,
    f: F,
) -> CriterionReport
where
    T: Sync,
    F: Fn(&T) -> Result<Check> + Sync + Send,
{
    let start = Instant::now();
    let outcomes = map_ordered(mode, items, |item| (label(item), f(item)));
    let mut report = CriterionReport {
        id,
        name: CRITERIA[id - 1].1,
        instances: 0,
        required,
        violations: Vec::new(),
        notes: Vec::new(),
        elapsed_ms: 0,
    };
    for (name, outcome) in outcomes {
        match outcome {
            Ok(c) => {
                if !c.skipped {
                    report.instances += 1;
                }
                report
                    .violations
                    .extend(c.violations.into_iter().map(|v| format!("{name}: {v}")));
                report.notes.extend(c.notes.into_iter().map(|v| format!("{name}: {v}")));
            }
            Err(e) => {
                report.instances += 1;
                report.violations.push(format!("{name}: error: {e}"));
            }
        }
    }
    report.elapsed_ms = start.elapsed().as_millis();
    report
}

pub fn run_criterion(id: usize, cfg: SuiteConfig) -> Option<CriterionReport> {
    Some(match id {
        1 => games::duality(cfg),
        2 => games::translation(cfg),
        3 => games::menger_equivalence(cfg),
        4 => constructions::diagonal(cfg),
        5 => constructions::menger_extraction(cfg),
        6 => constructions::pointopen_extraction(cfg),
        7 => constructions::cantor(cfg),
        8 => constructions::fortissimo(cfg),
        9 => constructions::refinement(cfg),
        10 => constructions::scattered(cfg),
        11 => games::self_consistency(cfg),
        12 => classes::classifier_laws(cfg),
        _ => return None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub instances: usize,
    pub checks: Vec<CriterionReport>,
    pub pass: bool,
    pub elapsed_ms: u128,
}

pub fn run_all(cfg: SuiteConfig) -> SuiteReport {
    run_selected(cfg, &(1..=CRITERIA.len()).collect::<Vec<_>>())
}

/// Runs the listed criteria in order; unknown ids are ignored.
pub fn run_selected(cfg: SuiteConfig, ids: &[usize]) -> SuiteReport {
    let start = Instant::now();
    let checks: Vec<CriterionReport> = ids.iter().filter_map(|&id| run_criterion(id, cfg)).collect();
    SuiteReport {
        seed: cfg.seed,
        instances: cfg.instances,
        pass: checks.iter().all(|c| c.pass()),
        checks,
        elapsed_ms: start.elapsed().as_millis(),
    }
}
