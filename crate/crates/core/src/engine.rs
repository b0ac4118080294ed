//! Signatures, the iterated comparison of two graphs, and certificates.
//!
//! One round on a working matrix `W` (initially the connection matrix) for
//! one prime produces the minor pair `(Amat, Cmat)` of `W`, the sorted
//! entries of both, and `det(Amat)`, `det(Cmat)`. All four are invariant
//! under relabelling the vertices. The next round runs on `Amat`.
//!
//! Within a round, primes are compared in ascending order and, for each
//! prime, the components in the order A-multiset, `det(Amat)`, `det(Cmat)`,
//! C-multiset. The first disagreement is the witness.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::time::Instant;

use crate::crt::{crt_reconstruct_signed, prime_window, PrimeBasis, FULL_BASIS};
use crate::error::{Error, Result};
use crate::graph::{connection_matrix, Graph};
use crate::minors::{minor_pair, MinorPath};
use crate::modular::ResidueMatrix;
use crate::parallel::map_ordered;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    /// Diagonal of the connection matrix for vertices without a weight.
    pub diagonal: i64,
    pub prime_count: usize,
    pub iterations: usize,
    /// Try a single-prime, single-round comparison before the full run.
    pub quick_reject: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            diagonal: 1,
            prime_count: FULL_BASIS,
            iterations: 2,
            quick_reject: true,
        }
    }
}

impl EngineConfig {
    pub fn validate(&self) -> Result<()> {
        if self.iterations == 0 {
            return Err(Error::InvalidParameter(
                "iterations must be at least 1".into(),
            ));
        }
        if self.prime_count == 0 {
            return Err(Error::InvalidParameter(
                "prime count must be at least 1".into(),
            ));
        }
        Ok(())
    }

    fn basis(&self) -> Result<PrimeBasis> {
        self.validate()?;
        prime_window(self.prime_count)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    AMultiset,
    ADeterminant,
    CDeterminant,
    CMultiset,
}

impl Component {
    pub const ORDER: [Component; 4] = [
        Component::AMultiset,
        Component::ADeterminant,
        Component::CDeterminant,
        Component::CMultiset,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Component::AMultiset => "A-multiset",
            Component::ADeterminant => "A-determinant",
            Component::CDeterminant => "C-determinant",
            Component::CMultiset => "C-multiset",
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Invariants of one working matrix modulo one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeComponent {
    pub prime: u32,
    /// Determinant of the working matrix itself.
    pub det_working: u32,
    pub a_multiset: Vec<u32>,
    pub c_multiset: Vec<u32>,
    /// `det(Amat)`.
    pub a_det: u32,
    /// `det(Cmat)`.
    pub c_det: u32,
    pub path: MinorPath,
}

impl PrimeComponent {
    pub fn first_difference(&self, other: &PrimeComponent) -> Option<Component> {
        Component::ORDER.into_iter().find(|c| match c {
            Component::AMultiset => self.a_multiset != other.a_multiset,
            Component::ADeterminant => self.a_det != other.a_det,
            Component::CDeterminant => self.c_det != other.c_det,
            Component::CMultiset => self.c_multiset != other.c_multiset,
        })
    }
}

/// Per-prime components of one round, ascending by prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    pub n: usize,
    pub components: Vec<PrimeComponent>,
}

impl Signature {
    /// First `(prime, component)` where the two disagree.
    pub fn first_difference(&self, other: &Signature) -> Option<(u32, Component)> {
        self.components
            .iter()
            .zip(&other.components)
            .find_map(|(a, b)| a.first_difference(b).map(|c| (a.prime, c)))
    }
}

/// Round on one working matrix: invariants plus the next working matrix.
fn round(working: &ResidueMatrix) -> (PrimeComponent, ResidueMatrix) {
    let pair = minor_pair(working);
    let component = PrimeComponent {
        prime: working.prime(),
        det_working: pair.det_a,
        a_multiset: pair.amat.sorted_entries(),
        c_multiset: pair.cmat.sorted_entries(),
        a_det: pair.amat.det(),
        c_det: pair.cmat.det(),
        path: pair.path,
    };
    (component, pair.amat)
}

fn initial_working(g: &Graph, cfg: &EngineConfig, basis: &PrimeBasis) -> Vec<ResidueMatrix> {
    let a = connection_matrix(g, cfg.diagonal);
    basis.moduli().iter().map(|&m| a.reduce(m)).collect()
}

/// Signatures of every round, `cfg.iterations` of them.
pub fn signature_chain(g: &Graph, cfg: &EngineConfig) -> Result<Vec<Signature>> {
    let basis = cfg.basis()?;
    let mut working = initial_working(g, cfg, &basis);
    let mut chain = Vec::with_capacity(cfg.iterations);
    for _ in 0..cfg.iterations {
        let (components, next): (Vec<_>, Vec<_>) = map_ordered(&working, round).into_iter().unzip();
        chain.push(Signature {
            n: g.n(),
            components,
        });
        working = next;
    }
    Ok(chain)
}

/// First-round signature over all configured primes.
pub fn signature_of(g: &Graph, cfg: &EngineConfig) -> Result<Signature> {
    let first = EngineConfig {
        iterations: 1,
        ..*cfg
    };
    Ok(signature_chain(g, &first)?.remove(0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    /// Different vertex counts.
    Size { left: usize, right: usize },
    Component {
        iteration: usize,
        prime: u32,
        component: Component,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Size { left, right } => write!(f, "size {left} vs {right}"),
            Witness::Component {
                iteration,
                prime,
                component,
            } => write!(f, "iteration {iteration}, prime {prime}, {component}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    NonIsomorphic {
        witness: Witness,
        iterations_run: usize,
    },
    PresumedIsomorphic {
        iterations_run: usize,
    },
}

impl Verdict {
    pub fn is_non_isomorphic(&self) -> bool {
        matches!(self, Verdict::NonIsomorphic { .. })
    }

    pub fn witness(&self) -> Option<Witness> {
        match self {
            Verdict::NonIsomorphic { witness, .. } => Some(*witness),
            Verdict::PresumedIsomorphic { .. } => None,
        }
    }

    pub fn iterations_run(&self) -> usize {
        match self {
            Verdict::NonIsomorphic { iterations_run, .. }
            | Verdict::PresumedIsomorphic { iterations_run } => *iterations_run,
        }
    }
}

/// A verdict with the bookkeeping a report needs.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub verdict: Verdict,
    pub primes: Vec<u32>,
    /// Wall time of each round, milliseconds. The quick pass, when it runs,
    /// is counted into round 1.
    pub iteration_millis: Vec<f64>,
    /// How many minor pairs each route produced, over both graphs.
    pub paths: BTreeMap<MinorPath, usize>,
    pub warnings: Vec<String>,
}

fn size_mismatch(g: &Graph, h: &Graph) -> Option<Verdict> {
    (g.n() != h.n()).then_some(Verdict::NonIsomorphic {
        witness: Witness::Size {
            left: g.n(),
            right: h.n(),
        },
        iterations_run: 0,
    })
}

/// Single-prime, single-round comparison. `Some` only for a definite
/// `NonIsomorphic`; `None` means inconclusive.
pub fn quick_reject(g: &Graph, h: &Graph, cfg: &EngineConfig) -> Result<Option<Verdict>> {
    cfg.validate()?;
    if let Some(v) = size_mismatch(g, h) {
        return Ok(Some(v));
    }
    let basis = prime_window(1)?;
    let quick = quick_round(g, h, cfg, &basis);
    Ok(quick.verdict)
}

struct QuickRound {
    verdict: Option<Verdict>,
    results: Vec<(PrimeComponent, ResidueMatrix)>,
}

fn quick_round(g: &Graph, h: &Graph, cfg: &EngineConfig, basis: &PrimeBasis) -> QuickRound {
    let m = basis.moduli()[0];
    let inputs = [
        connection_matrix(g, cfg.diagonal).reduce(m),
        connection_matrix(h, cfg.diagonal).reduce(m),
    ];
    let results = map_ordered(&inputs, round);
    let verdict = results[0]
        .0
        .first_difference(&results[1].0)
        .map(|component| Verdict::NonIsomorphic {
            witness: Witness::Component {
                iteration: 1,
                prime: m.value(),
                component,
            },
            iterations_run: 1,
        });
    QuickRound { verdict, results }
}

/// The iterated comparison, returning only the verdict.
pub fn compare(g: &Graph, h: &Graph, cfg: &EngineConfig) -> Result<Verdict> {
    compare_detailed(g, h, cfg).map(|c| c.verdict)
}

/// The iterated comparison.
///
/// Each round computes both graphs' components for every prime (fanned out
/// over primes and graphs), then scans for the first disagreement. Without
/// one, each graph's working matrix becomes its `Amat` for that prime. The
/// verdict does not depend on `cfg.quick_reject` or the thread count.
pub fn compare_detailed(g: &Graph, h: &Graph, cfg: &EngineConfig) -> Result<Comparison> {
    let basis = cfg.basis()?;
    let primes = basis.primes();
    let mut paths = BTreeMap::new();
    let mut warnings = Vec::new();
    if let Some(verdict) = size_mismatch(g, h) {
        return Ok(Comparison {
            verdict,
            primes,
            iteration_millis: Vec::new(),
            paths,
            warnings,
        });
    }

    let start = Instant::now();
    let mut cached = None;
    if cfg.quick_reject {
        let quick = quick_round(g, h, cfg, &basis);
        for (c, _) in &quick.results {
            *paths.entry(c.path).or_insert(0) += 1;
        }
        if let Some(verdict) = quick.verdict {
            return Ok(Comparison {
                verdict,
                primes,
                iteration_millis: vec![millis(start)],
                paths,
                warnings,
            });
        }
        cached = Some(quick.results);
    }

    let k = basis.len();
    let mut working_g = initial_working(g, cfg, &basis);
    let mut working_h = initial_working(h, cfg, &basis);
    let mut iteration_millis = Vec::with_capacity(cfg.iterations);
    for iteration in 1..=cfg.iterations {
        let round_start = if iteration == 1 {
            start
        } else {
            Instant::now()
        };
        // Task t < k is graph g at prime t, t >= k is graph h at prime t - k.
        let reuse = cached.take().filter(|_| iteration == 1);
        let skip_first = reuse.is_some();
        let tasks: Vec<usize> = (0..2 * k)
            .filter(|&t| !(skip_first && t % k == 0))
            .collect();
        let computed = map_ordered(&tasks, |&t| {
            if t < k {
                round(&working_g[t])
            } else {
                round(&working_h[t - k])
            }
        });
        let mut results: Vec<Option<(PrimeComponent, ResidueMatrix)>> = vec![None; 2 * k];
        for (t, r) in tasks.into_iter().zip(computed) {
            *paths.entry(r.0.path).or_insert(0) += 1;
            results[t] = Some(r);
        }
        if let Some(mut quick) = reuse {
            results[k] = quick.pop();
            results[0] = quick.pop();
        }
        let results: Vec<(PrimeComponent, ResidueMatrix)> =
            results.into_iter().map(Option::unwrap).collect();

        if iteration == 1 {
            for (label, r) in [("first", &results[0]), ("second", &results[k])] {
                if r.0.det_working == 0 {
                    let msg = format!(
                        "connection matrix of the {label} graph is singular modulo {}; \
                         using the slower interpolation route (a larger --diagonal such as 3 may avoid this)",
                        r.0.prime
                    );
                    log::warn!("{msg}");
                    warnings.push(msg);
                }
            }
        }

        let (res_g, res_h) = results.split_at(k);
        let mismatch = res_g
            .iter()
            .zip(res_h)
            .find_map(|(a, b)| a.0.first_difference(&b.0).map(|c| (a.0.prime, c)));
        iteration_millis.push(millis(round_start));
        if let Some((prime, component)) = mismatch {
            return Ok(Comparison {
                verdict: Verdict::NonIsomorphic {
                    witness: Witness::Component {
                        iteration,
                        prime,
                        component,
                    },
                    iterations_run: iteration,
                },
                primes,
                iteration_millis,
                paths,
                warnings,
            });
        }
        let mut next: Vec<ResidueMatrix> = results.into_iter().map(|(_, amat)| amat).collect();
        working_h = next.split_off(k);
        working_g = next;
    }
    Ok(Comparison {
        verdict: Verdict::PresumedIsomorphic {
            iterations_run: cfg.iterations,
        },
        primes,
        iteration_millis,
        paths,
        warnings,
    })
}

fn millis(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

/// Offset and multiplier of the multiset digest.
pub const DIGEST_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
pub const DIGEST_BASE: u64 = 0x0000_0100_0000_01b3;

/// Polynomial rolling digest over `Z/2^64`: start at [`DIGEST_OFFSET`], fold
/// each value as `h ← h·B + (x + 1)`, and finish with `h ← h·B + len`.
pub fn multiset_digest(sorted: &[u32]) -> u64 {
    let h = sorted.iter().fold(DIGEST_OFFSET, |h, &x| {
        h.wrapping_mul(DIGEST_BASE).wrapping_add(x as u64 + 1)
    });
    h.wrapping_mul(DIGEST_BASE)
        .wrapping_add(sorted.len() as u64)
}

/// Deterministic text form of every round's signature.
///
/// ```text
/// giv1
/// n=<n> diagonal=<d> primes=<k> iterations=<t>
/// iteration=1
/// p=<prime> Adigest=<hex> Cdigest=<hex> detA=<res> A=<res> C=<res>
/// ...
/// Aint=<signed> Cint=<signed>
/// iteration=2
/// ...
/// ```
///
/// `detA` is the determinant of the round's working matrix, `A` and `C` the
/// determinants of its minor matrices. The `Aint`/`Cint` line, the CRT
/// reconstruction of `A` and `C` over all primes, appears only when the full
/// 72-prime basis (or more) is in use.
pub fn certificate(g: &Graph, cfg: &EngineConfig) -> Result<String> {
    render_certificate(g, cfg, false)
}

/// [`certificate`] plus the raw sorted multisets after each record.
pub fn certificate_verbose(g: &Graph, cfg: &EngineConfig) -> Result<String> {
    render_certificate(g, cfg, true)
}

fn render_certificate(g: &Graph, cfg: &EngineConfig, verbose: bool) -> Result<String> {
    let basis = cfg.basis()?;
    let chain = signature_chain(g, cfg)?;
    let mut out = String::from("giv1\n");
    let _ = writeln!(
        out,
        "n={} diagonal={} primes={} iterations={}",
        g.n(),
        cfg.diagonal,
        cfg.prime_count,
        cfg.iterations
    );
    let join = |v: &[u32]| {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    for (it, sig) in chain.iter().enumerate() {
        let _ = writeln!(out, "iteration={}", it + 1);
        for c in &sig.components {
            let _ = writeln!(
                out,
                "p={} Adigest={:016x} Cdigest={:016x} detA={} A={} C={}",
                c.prime,
                multiset_digest(&c.a_multiset),
                multiset_digest(&c.c_multiset),
                c.det_working,
                c.a_det,
                c.c_det
            );
            if verbose {
                let _ = writeln!(out, "Asorted={}", join(&c.a_multiset));
                let _ = writeln!(out, "Csorted={}", join(&c.c_multiset));
            }
        }
        if cfg.prime_count >= FULL_BASIS {
            let a: Vec<u32> = sig.components.iter().map(|c| c.a_det).collect();
            let c: Vec<u32> = sig.components.iter().map(|c| c.c_det).collect();
            let _ = writeln!(
                out,
                "Aint={} Cint={}",
                crt_reconstruct_signed(&a, &basis)?,
                crt_reconstruct_signed(&c, &basis)?
            );
        }
    }
    Ok(out)
}
