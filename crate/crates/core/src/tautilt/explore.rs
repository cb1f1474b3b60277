//! Breadth-first exploration of the support τ-tilting exchange graph.
//!
//! Starting from `(Λ, 0)`, every pair is expanded by all of its down
//! mutations; each Hasse edge is found exactly once, from its upper end.
//! Levels are processed in key order and in fixed-size chunks. Within a
//! chunk mutations run on a worker pool against a frozen registry; new
//! summands and pairs are merged sequentially afterwards, pair by pair in
//! frontier order, so the result depends neither on the number of workers nor
//! on the chunk size unless the clock stops the run.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::{Duration, Instant};

use log::{debug, info};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{Algebra, BoundPresentation};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};

use super::{Replacement, TauTiltingContext, TauTiltingPair};

#[derive(Clone, Debug)]
pub struct ExploreOptions {
    /// Maximal number of pairs before giving up.
    pub budget: usize,
    /// Wall-clock limit in seconds.
    pub seconds: f64,
    /// Recorded in the report; exploration itself is deterministic.
    pub seed: u64,
    pub workers: usize,
    pub chunk: usize,
    /// Re-check the pair invariants on every mutation step.
    pub validate: bool,
    /// Largest module handled during a mutation; beyond it the run stops.
    pub max_module_dim: usize,
}

impl Default for ExploreOptions {
    fn default() -> Self {
        Self {
            budget: 50_000,
            seconds: 600.0,
            seed: 0,
            workers: 1,
            chunk: 256,
            validate: true,
            max_module_dim: 256,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ExploreStatus {
    Finite,
    BudgetExceeded,
}

/// Summary of a run. Everything except `elapsed_ms` is a function of the
/// algebra and the budget, unless the time limit stopped it.
#[derive(Clone, Debug, Serialize)]
pub struct ExplorationReport {
    pub status: ExploreStatus,
    pub count: usize,
    pub hasse_edges: usize,
    pub max_depth: usize,
    pub frontier: usize,
    /// Distinct module summands among the explored pairs.
    pub summands: usize,
    pub vertices: usize,
    /// Multiset of in-degrees as `degree -> number of pairs`.
    pub in_degrees: BTreeMap<usize, usize>,
    pub out_degrees: BTreeMap<usize, usize>,
    pub regular: bool,
    pub unique_source: bool,
    pub unique_sink: bool,
    pub connected: bool,
    pub budget: usize,
    pub seconds: f64,
    pub seed: u64,
    pub field: String,
    pub elapsed_ms: u64,
}

impl ExplorationReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// The report without the elapsed time.
    pub fn deterministic_json(&self) -> Value {
        let mut v = self.to_json();
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    }

    pub fn is_finite(&self) -> bool {
        self.status == ExploreStatus::Finite
    }
}

/// Hasse quiver of the explored pairs; edges point downwards.
#[derive(Clone, Debug, Serialize)]
pub struct HasseGraph {
    pub keys: Vec<Vec<Vec<i64>>>,
    pub edges: Vec<(usize, usize)>,
}

impl HasseGraph {
    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.keys.len()];
        for &(_, b) in &self.edges {
            d[b] += 1;
        }
        d
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.keys.len()];
        for &(a, _) in &self.edges {
            d[a] += 1;
        }
        d
    }

    pub fn is_connected(&self) -> bool {
        let n = self.keys.len();
        if n == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn label(key: &[Vec<i64>]) -> String {
        let cols: Vec<String> = key
            .iter()
            .map(|c| c.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
            .collect();
        format!("[{}]", cols.join(" | "))
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph hasse {\n  rankdir=TB;\n  node [shape=box, fontsize=10];\n");
        for (i, k) in self.keys.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", Self::label(k));
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "nodes": self.keys.iter().enumerate().map(|(i, k)| json!({"id": i, "g_matrix": k})).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
        })
    }
}

/// Full result: report, pairs in discovery order and the Hasse quiver.
#[derive(Debug)]
pub struct Exploration<F: Field> {
    pub report: ExplorationReport,
    pub pairs: Vec<TauTiltingPair>,
    pub hasse: HasseGraph,
    pub context: Arc<TauTiltingContext<F>>,
}

fn degree_multiset(d: &[usize]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for &x in d {
        *m.entry(x).or_insert(0) += 1;
    }
    m
}

/// All down mutations of one pair, computed against the current registry.
/// `Error::Budget` signals the deadline or the module size limit.
fn expand<F: Field>(
    ctx: &TauTiltingContext<F>,
    pair: &TauTiltingPair,
    opts: &ExploreOptions,
    deadline: Instant,
) -> Result<Vec<(usize, Replacement<F>)>> {
    let mut out = Vec::new();
    for k in 0..pair.modules.len() {
        if Instant::now() > deadline {
            return Err(Error::Budget("time limit reached".into()));
        }
        if let Some(r) = ctx.down_mutation_bounded(pair, k, opts.max_module_dim)? {
            if opts.validate {
                ctx.validate_replacement(pair, k, &r)?;
            }
            out.push((k, r));
        }
    }
    Ok(out)
}

pub fn explore<F: Field>(alg: Arc<Algebra<F>>, opts: &ExploreOptions) -> Result<Exploration<F>> {
    explore_in(Arc::new(TauTiltingContext::new(alg)), opts)
}

/// Explores using an existing context, reusing its registry and caches.
pub fn explore_in<F: Field>(ctx: Arc<TauTiltingContext<F>>, opts: &ExploreOptions) -> Result<Exploration<F>> {
    if opts.budget == 0 {
        return Err(Error::Budget("the pair budget must be positive".into()));
    }
    if opts.seconds.is_nan() || opts.seconds <= 0.0 {
        return Err(Error::Budget("the time budget must be positive".into()));
    }
    if opts.workers == 0 || opts.chunk == 0 || opts.max_module_dim == 0 {
        return Err(Error::Budget("workers, chunk size and module size limit must be positive".into()));
    }
    let start = Instant::now();
    let deadline = start + Duration::from_secs_f64(opts.seconds.min(1e9));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| Error::Internal(format!("worker pool: {e}")))?;

    let n = ctx.rank();
    let initial = ctx.initial_pair()?;
    if opts.validate {
        ctx.validate_pair(&initial)?;
    }
    let mut index: HashMap<Vec<Vec<i64>>, usize> = HashMap::new();
    let mut pairs = vec![initial.clone()];
    let mut keys = vec![ctx.key(&initial)];
    index.insert(keys[0].clone(), 0);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut frontier = vec![0usize];
    let mut depth = 0;
    let mut exceeded = false;

    'levels: while !frontier.is_empty() {
        let mut next = Vec::new();
        let mut done = 0;
        for chunk in frontier.chunks(opts.chunk) {
            let results: Vec<Result<Vec<(usize, Replacement<F>)>>> =
                pool.install(|| chunk.par_iter().map(|&p| expand(&ctx, &pairs[p], opts, deadline)).collect());
            // merge in frontier order so every stop except the clock is schedule independent
            let mut stopped = None;
            for (&p, res) in chunk.iter().zip(results) {
                let steps = match res {
                    Ok(steps) => steps,
                    Err(Error::Budget(why)) => {
                        stopped = Some((done, why));
                        break;
                    }
                    Err(e) => return Err(e),
                };
                for (k, r) in steps {
                    let r = ctx.resolve(r);
                    let q = ctx.replace(&pairs[p], k, &r);
                    let key = ctx.key(&q);
                    let target = match index.get(&key) {
                        Some(&t) => t,
                        None => {
                            let t = pairs.len();
                            index.insert(key.clone(), t);
                            pairs.push(q);
                            keys.push(key);
                            next.push(t);
                            t
                        }
                    };
                    edges.push((p, target));
                }
                done += 1;
                if pairs.len() > opts.budget {
                    stopped = Some((done, "pair limit".into()));
                    break;
                }
            }
            if stopped.is_none() && Instant::now() > deadline {
                stopped = Some((done, "time limit".into()));
            }
            if let Some((at, why)) = stopped {
                debug!(
                    "budget exhausted at depth {depth} with {} pairs after {:.1}s ({why})",
                    pairs.len(),
                    start.elapsed().as_secs_f64()
                );
                exceeded = true;
                next.extend_from_slice(&frontier[at..]);
                frontier = next;
                break 'levels;
            }
        }
        next.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        if !next.is_empty() {
            depth += 1;
        }
        info!("level {depth}: {} new pairs, {} total", next.len(), pairs.len());
        frontier = next;
    }

    let hasse = HasseGraph { keys, edges };
    let ins = hasse.in_degrees();
    let outs = hasse.out_degrees();
    let finite = !exceeded;
    let report = ExplorationReport {
        status: if finite { ExploreStatus::Finite } else { ExploreStatus::BudgetExceeded },
        count: pairs.len(),
        hasse_edges: hasse.edges.len(),
        max_depth: depth,
        frontier: if finite { 0 } else { frontier.len() },
        summands: pairs
            .iter()
            .flat_map(|p| p.modules.iter().copied())
            .collect::<HashSet<_>>()
            .len(),
        vertices: n,
        regular: ins.iter().zip(&outs).all(|(a, b)| a + b == n),
        unique_source: ins.iter().filter(|&&d| d == 0).count() == 1,
        unique_sink: outs.iter().filter(|&&d| d == 0).count() == 1,
        connected: hasse.is_connected(),
        in_degrees: degree_multiset(&ins),
        out_degrees: degree_multiset(&outs),
        budget: opts.budget,
        seconds: opts.seconds,
        seed: opts.seed,
        field: ctx.algebra().field().spec().to_string(),
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    Ok(Exploration {
        report,
        pairs,
        hasse,
        context: ctx,
    })
}

/// Explores `p` over its own field, returning the report and Hasse quiver.
pub fn explore_presentation(p: &BoundPresentation, opts: &ExploreOptions) -> Result<(ExplorationReport, HasseGraph)> {
    fn run<F: Field>(p: &BoundPresentation, f: F, opts: &ExploreOptions) -> Result<(ExplorationReport, HasseGraph)> {
        let e = explore(Arc::new(Algebra::compute(p, f)?), opts)?;
        Ok((e.report, e.hasse))
    }
    match p.field {
        FieldSpec::Prime(q) => run(p, PrimeField::new(q)?, opts),
        FieldSpec::Rationals => run(p, Rationals, opts),
    }
}
