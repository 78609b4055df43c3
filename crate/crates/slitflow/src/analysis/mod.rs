//! Verification checks: parameter sweeps, log-log fits and the assertions
//! made on them.

mod dynamics;
mod fields;
mod maps;
mod norms;

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use slitflow_core::{fit_loglog, RateFit};

use crate::output::{num, Table};
use crate::AppError;

pub use dynamics::{convergence_sweep, ConvergenceRow};
pub use norms::{limit_discrepancy_l1, velocity_lp_norm};

/// The ε values of the scaling sweeps.
pub const EPS_SWEEP: [f64; 4] = [0.4, 0.2, 0.1, 0.05];

/// One assertion inside a check.
#[derive(Debug, Clone, PartialEq)]
pub struct Item {
    pub label: String,
    pub measured: f64,
    pub tolerance: String,
    pub passed: bool,
}

impl Item {
    pub fn within(label: impl Into<String>, measured: f64, target: f64, tol: f64) -> Item {
        Item {
            label: label.into(),
            measured,
            tolerance: format!("{target} +/- {tol}"),
            passed: (measured - target).abs() <= tol,
        }
    }

    pub fn at_most(label: impl Into<String>, measured: f64, bound: f64) -> Item {
        Item {
            label: label.into(),
            measured,
            tolerance: format!("<= {bound:e}"),
            passed: measured <= bound,
        }
    }

    pub fn at_least(label: impl Into<String>, measured: f64, bound: f64) -> Item {
        Item {
            label: label.into(),
            measured,
            tolerance: format!(">= {bound}"),
            passed: measured >= bound,
        }
    }

    pub fn in_range(label: impl Into<String>, measured: f64, lo: f64, hi: f64) -> Item {
        Item {
            label: label.into(),
            measured,
            tolerance: format!("in [{lo}, {hi}]"),
            passed: (lo..=hi).contains(&measured),
        }
    }

    /// A yes/no property; `measured` is the number that decides it.
    pub fn holds(label: impl Into<String>, measured: f64, what: &str, ok: bool) -> Item {
        Item {
            label: label.into(),
            measured,
            tolerance: what.to_string(),
            passed: ok,
        }
    }

    /// Records a value without asserting anything about it.
    pub fn recorded(label: impl Into<String>, measured: f64) -> Item {
        Item {
            label: label.into(),
            measured,
            tolerance: "recorded".to_string(),
            passed: measured.is_finite(),
        }
    }
}

/// What a check job produces before it is written out.
#[derive(Debug, Clone, Default)]
pub struct CheckOutput {
    pub items: Vec<Item>,
    /// `(suffix, table)`; written to `<check>_<suffix>.csv`.
    pub tables: Vec<(String, Table)>,
}

impl CheckOutput {
    fn table(&mut self, suffix: &str, t: Table) {
        self.tables.push((suffix.to_string(), t));
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        })
    }
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub criterion: Option<u8>,
    pub status: Status,
    pub items: Vec<Item>,
    pub artifacts: Vec<PathBuf>,
    /// Set when the job itself failed to run.
    pub error: Option<String>,
}

impl CheckResult {
    /// The item reported in the summary: the first failure, else the first item.
    pub fn headline(&self) -> Option<&Item> {
        self.items
            .iter()
            .find(|i| !i.passed)
            .or_else(|| self.items.first())
    }
}

/// Shared inputs and memoized expensive runs.
#[derive(Debug, Default)]
pub struct CheckContext {
    pub seed: u64,
    gaussian_run: OnceLock<Result<dynamics::GaussianRun, String>>,
    cutoff_region: OnceLock<Result<Vec<norms::CutoffRegionNorms>, String>>,
}

impl CheckContext {
    pub fn new(seed: u64) -> Self {
        CheckContext {
            seed,
            ..Default::default()
        }
    }
}

type Job = fn(&CheckContext) -> slitflow_core::Result<CheckOutput>;

pub struct CheckSpec {
    pub name: &'static str,
    pub criterion: Option<u8>,
    job: Job,
}

pub const CHECKS: &[CheckSpec] = &[
    CheckSpec {
        name: "endpoint_rates",
        criterion: Some(1),
        job: maps::endpoint_rates,
    },
    CheckSpec {
        name: "joukowski_roundtrip",
        criterion: Some(2),
        job: maps::joukowski_roundtrip,
    },
    CheckSpec {
        name: "frac_identity",
        criterion: Some(3),
        job: maps::frac_identity,
    },
    CheckSpec {
        name: "harmonic_normalization",
        criterion: Some(4),
        job: fields::harmonic_normalization,
    },
    CheckSpec {
        name: "tangency",
        criterion: Some(5),
        job: fields::tangency,
    },
    CheckSpec {
        name: "circulation_structure",
        criterion: Some(6),
        job: fields::circulation_structure,
    },
    CheckSpec {
        name: "i_est_scaling",
        criterion: Some(7),
        job: fields::i_est_scaling,
    },
    CheckSpec {
        name: "cutoff_lemma",
        criterion: Some(8),
        job: norms::cutoff_lemma,
    },
    CheckSpec {
        name: "h_limit",
        criterion: Some(9),
        job: norms::h_limit,
    },
    CheckSpec {
        name: "velocity_lp",
        criterion: Some(10),
        job: norms::velocity_lp,
    },
    CheckSpec {
        name: "v_phi_estimate",
        criterion: Some(11),
        job: norms::v_phi_estimate,
    },
    CheckSpec {
        name: "transport_conservation",
        criterion: Some(12),
        job: dynamics::transport_conservation,
    },
    CheckSpec {
        name: "support_growth",
        criterion: Some(13),
        job: dynamics::support_growth,
    },
    CheckSpec {
        name: "convergence_to_limit",
        criterion: Some(14),
        job: dynamics::convergence_to_limit,
    },
    CheckSpec {
        name: "assumption31_family",
        criterion: Some(15),
        job: maps::assumption31_family,
    },
    CheckSpec {
        name: "integrator_order",
        criterion: Some(16),
        job: dynamics::integrator_order,
    },
    CheckSpec {
        name: "biholo_scalings",
        criterion: None,
        job: maps::biholo_scalings,
    },
    CheckSpec {
        name: "jump_function",
        criterion: None,
        job: fields::jump_function,
    },
    CheckSpec {
        name: "kernel_far_field",
        criterion: None,
        job: fields::kernel_far_field,
    },
    CheckSpec {
        name: "remark_phi",
        criterion: None,
        job: norms::remark_phi,
    },
];

pub fn find_check(name: &str) -> Option<&'static CheckSpec> {
    CHECKS.iter().find(|c| c.name == name)
}

/// Runs one check, writes its tables into `out_dir` and returns the result.
pub fn run_check(
    spec: &CheckSpec,
    ctx: &CheckContext,
    out_dir: &Path,
) -> Result<CheckResult, AppError> {
    let (output, error) = match (spec.job)(ctx) {
        Ok(o) => (o, None),
        Err(e) => (CheckOutput::default(), Some(e.to_string())),
    };
    let mut artifacts = Vec::new();
    for (suffix, table) in &output.tables {
        let path = out_dir.join(format!("{}_{}.csv", spec.name, suffix));
        table.write_to(&path).map_err(|e| AppError::io(&path, e))?;
        artifacts.push(path);
    }
    let status = if error.is_some() {
        Status::Error
    } else if !output.items.is_empty() && output.items.iter().all(|i| i.passed) {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(CheckResult {
        name: spec.name,
        criterion: spec.criterion,
        status,
        items: output.items,
        artifacts,
        error,
    })
}

/// Runs the selected checks in registry order and writes `summary.csv`.
pub fn run_checks(
    filter: Option<&str>,
    ctx: &CheckContext,
    out_dir: &Path,
    mut on_result: impl FnMut(&CheckResult),
) -> Result<Vec<CheckResult>, AppError> {
    let selected: Vec<&CheckSpec> = match filter {
        Some(name) => vec![find_check(name).ok_or_else(|| {
            let names: Vec<&str> = CHECKS.iter().map(|c| c.name).collect();
            AppError::Usage(format!(
                "unknown check `{name}`; available: {}",
                names.join(", ")
            ))
        })?],
        None => CHECKS.iter().collect(),
    };
    crate::output::ensure_dir(out_dir).map_err(|e| AppError::io(out_dir, e))?;
    let mut results = Vec::new();
    for spec in selected {
        let r = run_check(spec, ctx, out_dir)?;
        on_result(&r);
        results.push(r);
    }
    let mut summary = Table::new(&["name", "status", "measured", "tolerance"]);
    for r in &results {
        let (measured, tolerance) = match (r.headline(), &r.error) {
            (_, Some(e)) => (String::new(), e.replace(',', ";")),
            (Some(i), None) => (
                num(i.measured),
                format!("{}: {}", i.label, i.tolerance).replace(',', ";"),
            ),
            (None, None) => (String::new(), String::new()),
        };
        summary.push(vec![
            r.name.to_string(),
            r.status.to_string(),
            measured,
            tolerance,
        ]);
    }
    let path = out_dir.join("summary.csv");
    summary
        .write_to(&path)
        .map_err(|e| AppError::io(&path, e))?;
    Ok(results)
}

/// One line per check, with its failing items underneath.
pub fn describe(r: &CheckResult) -> String {
    let tag = match r.criterion {
        Some(c) => format!("[{c:>2}]"),
        None => "[ +]".to_string(),
    };
    let status = match r.status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Error => "ERROR",
    };
    let mut s = match (r.headline(), &r.error) {
        (_, Some(e)) => format!("{tag} {status} {}: {e}", r.name),
        (Some(i), None) => format!(
            "{tag} {status} {}: {} = {:.6e} ({})",
            r.name, i.label, i.measured, i.tolerance
        ),
        (None, None) => format!("{tag} {status} {}", r.name),
    };
    for i in r.items.iter().filter(|i| !i.passed).skip(1) {
        s.push_str(&format!(
            "\n       {} = {:.6e} ({})",
            i.label, i.measured, i.tolerance
        ));
    }
    s
}

pub(crate) fn fit(xs: &[f64], ys: &[f64]) -> slitflow_core::Result<RateFit> {
    fit_loglog(xs, ys)
}

pub(crate) fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

/// Largest ratio between consecutive entries, `v[k+1] / v[k]`; below 1 means
/// strictly decreasing.
pub(crate) fn worst_step_ratio(v: &[f64]) -> f64 {
    v.windows(2)
        .map(|w| w[1] / w[0])
        .fold(f64::NEG_INFINITY, f64::max)
}

pub(crate) fn spread(v: &[f64]) -> f64 {
    let max = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = v.iter().cloned().fold(f64::INFINITY, f64::min);
    max / min
}
