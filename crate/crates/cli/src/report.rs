//! The serializable summary of one comparison.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use giv_core::{Comparison, EngineConfig, Verdict, Witness};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictKind {
    NonIsomorphic,
    PresumedIsomorphic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessReport {
    Size {
        left: usize,
        right: usize,
    },
    Component {
        iteration: usize,
        prime: u32,
        component: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigReport {
    pub diagonal: i64,
    pub prime_count: usize,
    pub iterations: usize,
    pub quick_reject: bool,
}

/// Timing lives apart from everything else so that outputs can be compared
/// with it masked.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub iteration_millis: Vec<f64>,
    pub total_millis: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub verdict: VerdictKind,
    pub iterations_run: usize,
    pub witness: Option<WitnessReport>,
    pub primes: Vec<u32>,
    /// Minor pairs computed per route (`inverse`, `interpolated`, `direct`).
    pub paths: BTreeMap<String, usize>,
    pub warnings: Vec<String>,
    pub config: ConfigReport,
    pub timings: Timings,
}

impl RunReport {
    pub fn new(c: &Comparison, cfg: &EngineConfig, total_millis: f64) -> Self {
        let witness = c.verdict.witness().map(|w| match w {
            Witness::Size { left, right } => WitnessReport::Size { left, right },
            Witness::Component {
                iteration,
                prime,
                component,
            } => WitnessReport::Component {
                iteration,
                prime,
                component: component.as_str().to_string(),
            },
        });
        RunReport {
            verdict: match c.verdict {
                Verdict::NonIsomorphic { .. } => VerdictKind::NonIsomorphic,
                Verdict::PresumedIsomorphic { .. } => VerdictKind::PresumedIsomorphic,
            },
            iterations_run: c.verdict.iterations_run(),
            witness,
            primes: c.primes.clone(),
            paths: c
                .paths
                .iter()
                .map(|(p, n)| (p.as_str().to_string(), *n))
                .collect(),
            warnings: c.warnings.clone(),
            config: ConfigReport {
                diagonal: cfg.diagonal,
                prime_count: cfg.prime_count,
                iterations: cfg.iterations,
                quick_reject: cfg.quick_reject,
            },
            timings: Timings {
                iteration_millis: c.iteration_millis.clone(),
                total_millis,
            },
        }
    }

    /// 0 for presumed isomorphic, 1 for non-isomorphic.
    pub fn exit_code(&self) -> u8 {
        match self.verdict {
            VerdictKind::PresumedIsomorphic => 0,
            VerdictKind::NonIsomorphic => 1,
        }
    }

    /// `key: value` lines; every line that carries a time starts `timing.`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let verdict = match self.verdict {
            VerdictKind::NonIsomorphic => "NonIsomorphic",
            VerdictKind::PresumedIsomorphic => "PresumedIsomorphic",
        };
        let _ = writeln!(out, "verdict: {verdict}");
        match &self.witness {
            Some(WitnessReport::Size { left, right }) => {
                let _ = writeln!(out, "witness: size {left} vs {right}");
            }
            Some(WitnessReport::Component {
                iteration,
                prime,
                component,
            }) => {
                let _ = writeln!(
                    out,
                    "witness: iteration {iteration}, prime {prime}, {component}"
                );
            }
            None => {}
        }
        let _ = writeln!(out, "iterations run: {}", self.iterations_run);
        let c = &self.config;
        let _ = writeln!(
            out,
            "config: diagonal={} primes={} iterations={} quick={}",
            c.diagonal, c.prime_count, c.iterations, c.quick_reject
        );
        if let (Some(first), Some(last)) = (self.primes.first(), self.primes.last()) {
            let _ = writeln!(out, "primes: {} ({first}..{last})", self.primes.len());
        }
        let paths: Vec<String> = self.paths.iter().map(|(p, n)| format!("{p}={n}")).collect();
        let _ = writeln!(out, "paths: {}", paths.join(" "));
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        let per: Vec<String> = self
            .timings
            .iteration_millis
            .iter()
            .map(|t| format!("{t:.3}"))
            .collect();
        let _ = writeln!(out, "timing.iteration_ms: {}", per.join(" "));
        let _ = writeln!(out, "timing.total_ms: {:.3}", self.timings.total_millis);
        out
    }
}
