//! The acceptance suite: every criterion at every parameter point, as one report.

mod checks;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::par;

pub const VERSION: &str = concat!("skein-core ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub n_max: usize,
    pub eps_orders: Vec<u32>,
    pub seed: u64,
    /// Swap in the perturbed R-matrix wherever an R-matrix is used.
    pub inject_fault: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { n_max: 4, eps_orders: vec![1, 2, 4], seed: 0, inject_fault: false }
    }
}

impl VerifyConfig {
    pub fn check(&self) -> Result<()> {
        if self.n_max == 0 {
            return Err(Error::Precondition("--n-max must be at least 1".into()));
        }
        if self.eps_orders.is_empty() {
            return Err(Error::Precondition("at least one epsilon order is needed".into()));
        }
        if let Some(o) = self.eps_orders.iter().find(|&&o| o == 0 || 4 % o != 0) {
            return Err(Error::Precondition(format!("epsilon order {o} does not divide 4")));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Params {
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub eps_order: Option<u32>,
}

impl Params {
    pub fn n(n: usize) -> Params {
        Params { n: Some(n), ..Params::default() }
    }

    fn to_json(self) -> Value {
        let mut m = serde_json::Map::new();
        if let Some(n) = self.n {
            m.insert("n".into(), json!(n));
        }
        if let Some(k) = self.k {
            m.insert("k".into(), json!(k));
        }
        if let Some(o) = self.eps_order {
            m.insert("eps_order".into(), json!(o));
        }
        Value::Object(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub parameters: Params,
    pub passed: bool,
    pub elapsed: Duration,
    pub artifacts: BTreeMap<String, String>,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    /// Results for one criterion (`name` is the part after the number, e.g. `"ybe"`).
    pub fn criterion(&self, number: usize) -> Vec<&CheckResult> {
        let prefix = format!("c{number:02}-");
        self.checks.iter().filter(|c| c.name.starts_with(&prefix)).collect()
    }

    /// With `timings` off, `elapsed` is `null` so that reruns are byte-identical.
    pub fn to_json(&self, timings: bool) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "parameters": c.parameters.to_json(),
                    "status": if c.passed { "pass" } else { "fail" },
                    "elapsed": if timings { json!(c.elapsed.as_secs_f64()) } else { Value::Null },
                    "artifacts": c.artifacts,
                })
            })
            .collect();
        json!({
            "version": VERSION,
            "seed": self.config.seed,
            "n_max": self.config.n_max,
            "eps_orders": self.config.eps_orders,
            "inject_fault": self.config.inject_fault,
            "passed": self.passed(),
            "checks": checks,
        })
    }

    pub fn to_pretty(&self, timings: bool) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let mut p = vec![];
            if let Some(n) = c.parameters.n {
                p.push(format!("n={n}"));
            }
            if let Some(k) = c.parameters.k {
                p.push(format!("k={k}"));
            }
            if let Some(o) = c.parameters.eps_order {
                p.push(format!("order={o}"));
            }
            let t = if timings { format!("  {:.3}s", c.elapsed.as_secs_f64()) } else { String::new() };
            out.push_str(&format!("{:<4} {:<22} {}{}\n", if c.passed { "ok" } else { "FAIL" }, c.name, p.join(" "), t));
            if !c.passed {
                for (k, v) in &c.artifacts {
                    out.push_str(&format!("       {k}: {v}\n"));
                }
            }
        }
        out.push_str(&format!(
            "{}: {} checks, {} failed\n",
            VERSION,
            self.checks.len(),
            self.checks.iter().filter(|c| !c.passed).count()
        ));
        out
    }
}

pub(crate) type Artifacts = BTreeMap<String, String>;

/// One parameter point of one criterion. The closure returns whether it passed.
pub(crate) struct Job {
    name: &'static str,
    params: Params,
    run: Box<dyn Fn(&mut Artifacts) -> Result<bool> + Send + Sync>,
}

impl Job {
    pub(crate) fn new(
        name: &'static str,
        params: Params,
        run: impl Fn(&mut Artifacts) -> Result<bool> + Send + Sync + 'static,
    ) -> Job {
        Job { name, params, run: Box::new(run) }
    }
}

/// Run every check. Checks are independent and may run in parallel; the order is canonical.
pub fn run(config: &VerifyConfig) -> Result<VerifyReport> {
    config.check()?;
    let jobs = checks::jobs(config);
    let mut checks = par::map(&jobs, |j| {
        let start = Instant::now();
        let mut artifacts = Artifacts::new();
        let passed = match (j.run)(&mut artifacts) {
            Ok(p) => p,
            Err(e) => {
                artifacts.insert("error".into(), e.to_string());
                false
            }
        };
        CheckResult { name: j.name.to_string(), parameters: j.params, passed, elapsed: start.elapsed(), artifacts }
    });
    checks.sort_by(|a, b| (&a.name, a.parameters).cmp(&(&b.name, b.parameters)));
    Ok(VerifyReport { config: config.clone(), checks })
}
