//! Timing tables over the generator families.

use std::fmt::Write as _;
use std::time::Instant;

use anyhow::Result;
use giv_core::generators::{
    desarguesian_plane, dual_plane, miyazaki, random_graph, twisted_miyazaki,
};
use giv_core::{apply_permutation, compare, incidence_graph, EngineConfig, Graph, Permutation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::report::VerdictKind;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub instance: String,
    /// Family parameter: rungs, plane order, or vertex count.
    pub size: usize,
    pub dimension: usize,
    pub verdict: VerdictKind,
    pub iterations: usize,
    pub seconds: f64,
}

fn row(
    instance: String,
    size: usize,
    g: &Graph,
    h: &Graph,
    cfg: &EngineConfig,
) -> Result<BenchRow> {
    let start = Instant::now();
    let verdict = compare(g, h, cfg)?;
    Ok(BenchRow {
        instance,
        size,
        dimension: g.n(),
        verdict: if verdict.is_non_isomorphic() {
            VerdictKind::NonIsomorphic
        } else {
            VerdictKind::PresumedIsomorphic
        },
        iterations: verdict.iterations_run(),
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Ladder against its twist at rung 1, for `k = 2, 4, …, max_k`.
pub fn ladders(max_k: usize, cfg: &EngineConfig) -> Result<Vec<BenchRow>> {
    (2..=max_k)
        .step_by(2)
        .map(|k| {
            row(
                format!("miyazaki({k}) vs twisted({k},1)"),
                k,
                &miyazaki(k)?,
                &twisted_miyazaki(k, 1)?,
                cfg,
            )
        })
        .collect()
}

/// PG(2,q) against its dual for each order up to `max_q`.
pub fn planes(orders: &[usize], max_q: usize, cfg: &EngineConfig) -> Result<Vec<BenchRow>> {
    orders
        .iter()
        .filter(|&&q| q <= max_q)
        .map(|&q| {
            let s = desarguesian_plane(q)?;
            let g = incidence_graph(&s)?;
            let d = incidence_graph(&dual_plane(&s)?)?;
            row(format!("PG(2,{q}) vs dual"), q, &g, &d, cfg)
        })
        .collect()
}

/// `pairs` random graphs on `n` vertices against relabelled copies.
pub fn random_pairs(
    n: usize,
    pairs: usize,
    seed: u64,
    cfg: &EngineConfig,
) -> Result<Vec<BenchRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..pairs)
        .map(|k| {
            let g = random_graph(n, 0.5, rng.gen())?;
            let h = apply_permutation(&g, &Permutation::random(n, &mut rng))?;
            row(format!("random #{k} vs relabelled"), n, &g, &h, cfg)
        })
        .collect()
}

pub fn to_table(rows: &[BenchRow]) -> String {
    let width = rows
        .iter()
        .map(|r| r.instance.len())
        .max()
        .unwrap_or(0)
        .max(8);
    let mut out = format!(
        "{:<width$}  {:>5}  {:>9}  {:<18}  {:>10}  {:>9}\n",
        "instance", "size", "dimension", "verdict", "iterations", "seconds"
    );
    for r in rows {
        let verdict = format!("{:?}", r.verdict);
        let _ = writeln!(
            out,
            "{:<width$}  {:>5}  {:>9}  {:<18}  {:>10}  {:>9.3}",
            r.instance,
            r.size,
            format!("{0}x{0}", r.dimension),
            verdict,
            r.iterations,
            r.seconds
        );
    }
    out
}
