//! One catalog over every check (identities, trees, gamma), parallel
//! execution, and the summary that separates required outcomes from
//! recorded ones.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exactalg::{IdentityReport, QMode};
use crate::gamma::{verify_gamma, GAMMA_CHECKS};
use crate::identities::{self, Class, CATALOG};
use crate::perm::Distributions;
use crate::trees::{verify_tree, TREE_CHECKS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Identity,
    Tree,
    Gamma,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckInfo {
    pub id: &'static str,
    pub suite: Suite,
    pub class: Class,
    pub nmax: usize,
    pub max_n: usize,
    /// Modes a full run uses, each with whether its outcome is required.
    pub modes: Vec<(QMode, bool)>,
    pub summary: &'static str,
}

pub fn catalog() -> Vec<CheckInfo> {
    let identities = CATALOG.iter().map(|s| CheckInfo {
        id: s.id,
        suite: Suite::Identity,
        class: s.class,
        nmax: s.nmax,
        max_n: s.max_order,
        modes: s.scope.modes().iter().map(|&m| (m, s.scope.required(m))).collect(),
        summary: s.summary,
    });
    let trees = TREE_CHECKS.iter().map(|c| CheckInfo {
        id: c.id,
        suite: Suite::Tree,
        class: Class::TypeA,
        nmax: c.nmax,
        max_n: c.max_n,
        modes: vec![(QMode::One, true)],
        summary: c.summary,
    });
    let gamma = GAMMA_CHECKS.iter().map(|c| CheckInfo {
        id: c.id,
        suite: Suite::Gamma,
        class: c.class,
        nmax: c.nmax,
        max_n: c.max_n,
        modes: vec![(QMode::One, true)],
        summary: c.summary,
    });
    identities.chain(trees).chain(gamma).collect()
}

pub fn find(id: &str) -> Result<CheckInfo> {
    catalog().into_iter().find(|c| c.id == id).ok_or_else(|| Error::InvalidArgument(format!("unknown check id `{id}`")))
}

/// Truncation bounds. An explicit `nmax` applies to every selected check
/// and must be supported by each; the per-class bounds are clamped to what
/// each check supports.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub nmax: Option<usize>,
    pub nmax_a: Option<usize>,
    pub nmax_b: Option<usize>,
}

impl Bounds {
    fn resolve(&self, check: &CheckInfo) -> Result<usize> {
        if let Some(n) = self.nmax {
            if n > check.max_n {
                return invalid(format!("{}: n = {n} exceeds the supported {}", check.id, check.max_n));
            }
            return Ok(n);
        }
        let class_bound = match check.class {
            Class::TypeA => self.nmax_a,
            Class::TypeB => self.nmax_b,
        };
        Ok(class_bound.map_or(check.nmax, |n| n.min(check.max_n)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Task {
    pub id: String,
    pub suite: Suite,
    pub nmax: usize,
    pub qmode: QMode,
    pub required: bool,
}

/// Expands a selection of ids (all of them when `ids` is `None`) into tasks.
pub fn plan(ids: Option<&[String]>, bounds: Bounds, qmode: Option<QMode>) -> Result<Vec<Task>> {
    let checks = match ids {
        None => catalog(),
        Some([]) => return invalid("empty id filter"),
        Some(ids) => ids.iter().map(|id| find(id)).collect::<Result<Vec<_>>>()?,
    };
    let mut tasks = Vec::new();
    for check in &checks {
        let nmax = bounds.resolve(check)?;
        let modes: Vec<(QMode, bool)> = match qmode {
            None => check.modes.clone(),
            Some(m) => match check.modes.iter().find(|(mode, _)| *mode == m) {
                Some(&found) => vec![found],
                None if check.suite == Suite::Identity && identities::lookup(check.id)?.scope.allows(m) => {
                    vec![(m, true)]
                }
                None => return invalid(format!("{} does not run with q = {}", check.id, m.name())),
            },
        };
        for (mode, required) in modes {
            tasks.push(Task { id: check.id.to_string(), suite: check.suite, nmax, qmode: mode, required });
        }
    }
    Ok(tasks)
}

pub fn run_task(task: &Task, ctx: &Distributions) -> Result<IdentityReport> {
    match task.suite {
        Suite::Identity => identities::verify(&task.id, task.nmax, task.qmode, ctx),
        Suite::Tree => verify_tree(&task.id, task.nmax),
        Suite::Gamma => verify_gamma(&task.id, task.nmax, ctx),
    }
}

/// Runs `tasks` on a pool of `jobs` threads (the global pool when `None`).
/// Reports come back in task order.
pub fn run_tasks(tasks: &[Task], ctx: &Distributions, jobs: Option<usize>) -> Result<Vec<IdentityReport>> {
    let work = || tasks.par_iter().map(|t| run_task(t, ctx)).collect::<Result<Vec<_>>>();
    match jobs {
        None => work(),
        Some(0) => invalid("--jobs must be at least 1"),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("cannot start {j} worker threads: {e}")))?
            .install(work),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub passed: usize,
    pub failed: usize,
    pub reports: Vec<IdentityReport>,
}

impl Section {
    fn push(&mut self, r: IdentityReport) {
        if r.passed() {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        self.reports.push(r);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub all_required_passed: bool,
    pub required: Section,
    pub recorded: Section,
}

impl Summary {
    pub fn new(tasks: &[Task], reports: Vec<IdentityReport>) -> Self {
        let mut required = Section::default();
        let mut recorded = Section::default();
        for (task, report) in tasks.iter().zip(reports) {
            if task.required {
                required.push(report);
            } else {
                recorded.push(report);
            }
        }
        Summary { all_required_passed: required.failed == 0, required, recorded }
    }

    /// Equality up to timings.
    pub fn same_outcome(&self, other: &Summary) -> bool {
        let same = |a: &Section, b: &Section| {
            a.passed == b.passed
                && a.failed == b.failed
                && a.reports.len() == b.reports.len()
                && a.reports.iter().zip(&b.reports).all(|(x, y)| x.same_outcome(y))
        };
        self.all_required_passed == other.all_required_passed
            && same(&self.required, &other.required)
            && same(&self.recorded, &other.recorded)
    }
}

/// Runs the whole catalog.
pub fn report_all(bounds: Bounds, ctx: &Distributions, jobs: Option<usize>) -> Result<Summary> {
    let tasks = plan(None, bounds, None)?;
    let reports = run_tasks(&tasks, ctx, jobs)?;
    Ok(Summary::new(&tasks, reports))
}
