//! Classifier verdicts checked against exploration, plus the tensor shadow
//! and two-cycle experiments.

use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{format, tensor_product, triangular_matrix, truncated_polynomial, BoundPresentation};
use crate::error::{Error, Result};
use crate::tautilt::{explore_presentation, ExplorationReport, ExploreOptions, ExploreStatus};

use super::{classify_tn_tau_finiteness, reduce_two_cycle, Conclusion, Provenance, RuleId};

#[derive(Clone, Debug)]
pub struct CorpusItem {
    pub id: String,
    pub presentation: BoundPresentation,
    pub n: usize,
    /// `None` when the corpus does not state an expectation.
    pub expected: Option<Conclusion>,
}

fn parse_expected(s: &str) -> Option<Option<Conclusion>> {
    Some(match s.to_ascii_lowercase().as_str() {
        "finite" | "taufinite" => Some(Conclusion::TauFinite),
        "infinite" | "tauinfinite" => Some(Conclusion::TauInfinite),
        "unknown" => Some(Conclusion::Unknown),
        "-" | "any" => None,
        _ => return None,
    })
}

/// Parses corpus lines `<algebra file> <n> <finite|infinite|unknown|->`,
/// resolving files relative to `base`.
pub fn parse_corpus(text: &str, base: &Path) -> Result<Vec<CorpusItem>> {
    let mut items = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let [file, n, expected] = fields.as_slice() else {
            return Err(Error::Parse {
                line,
                msg: format!("expected `<file> <n> <expectation>`, found `{content}`"),
            });
        };
        let n: usize = n.parse().map_err(|_| Error::Parse {
            line,
            msg: format!("`{n}` is not a positive integer"),
        })?;
        let expected = parse_expected(expected).ok_or_else(|| Error::Parse {
            line,
            msg: format!("unknown expectation `{expected}`"),
        })?;
        let presentation = format::read_file(&base.join(file)).map_err(|e| match e {
            Error::Parse { line: inner, msg } => Error::Parse {
                line,
                msg: format!("{file}:{inner}: {msg}"),
            },
            other => other,
        })?;
        items.push(CorpusItem {
            id: format!("{file}@n={n}"),
            presentation,
            n,
            expected,
        });
    }
    Ok(items)
}

pub fn read_corpus(path: &Path) -> Result<Vec<CorpusItem>> {
    let text = std::fs::read_to_string(path)?;
    parse_corpus(&text, path.parent().unwrap_or(Path::new(".")))
}

#[derive(Clone, Debug)]
pub struct CrosscheckOptions {
    pub explore: ExploreOptions,
    /// Corpus items processed at once.
    pub workers: usize,
    /// Algebras `Λ` for which `Λ⊗K[x]/(x²)` and `Λ` must have equally many
    /// support τ-tilting pairs.
    pub shadow: Vec<(String, BoundPresentation)>,
    /// Cyclic Nakayama algebras with two simples and the `n` to compare at.
    pub two_cycle: Vec<(String, BoundPresentation, usize)>,
}

impl Default for CrosscheckOptions {
    fn default() -> Self {
        let linear = |m| crate::algebra::path_algebra_linear(m).expect("valid size");
        let cyc = crate::algebra::nakayama(2, true, 3).expect("valid size");
        Self {
            explore: ExploreOptions::default(),
            workers: 1,
            shadow: vec![
                ("K".into(), linear(1)),
                ("KA2".into(), linear(2)),
                ("KA3".into(), linear(3)),
            ],
            two_cycle: vec![("cyclic Nakayama, 2 simples, cap 3".into(), cyc, 2)],
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ItemReport {
    pub item: String,
    pub n: usize,
    pub conclusion: Conclusion,
    pub rule: Option<RuleId>,
    pub provenance: Option<Provenance>,
    pub reductions: Vec<String>,
    pub expected: Option<Conclusion>,
    pub explorer_status: Option<ExploreStatus>,
    pub count: Option<usize>,
    pub consistent: bool,
    pub problems: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ShadowReport {
    pub algebra: String,
    pub count: Option<usize>,
    pub tensor_count: Option<usize>,
    pub consistent: bool,
    pub problems: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoCycleReport {
    pub algebra: String,
    pub n: usize,
    pub count: Option<usize>,
    pub reduced_count: Option<usize>,
    pub in_degrees: Option<BTreeMap<usize, usize>>,
    pub reduced_in_degrees: Option<BTreeMap<usize, usize>>,
    pub out_degrees: Option<BTreeMap<usize, usize>>,
    pub reduced_out_degrees: Option<BTreeMap<usize, usize>>,
    pub consistent: bool,
    pub problems: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckReport {
    pub items: Vec<ItemReport>,
    pub shadow: Vec<ShadowReport>,
    pub two_cycle: Vec<TwoCycleReport>,
    pub consistent: bool,
}

fn tn(p: &BoundPresentation, n: usize) -> Result<BoundPresentation> {
    if n == 1 {
        Ok(p.clone())
    } else {
        triangular_matrix(p, n)
    }
}

fn finite_run(p: &BoundPresentation, opts: &ExploreOptions, what: &str, problems: &mut Vec<String>) -> Option<ExplorationReport> {
    match explore_presentation(p, opts) {
        Ok((r, _)) if r.is_finite() => Some(r),
        Ok((r, _)) => {
            problems.push(format!("{what}: exploration stopped with {} pairs", r.count));
            None
        }
        Err(e) => {
            problems.push(format!("{what}: {e}"));
            None
        }
    }
}

fn check_item(item: &CorpusItem, opts: &ExploreOptions) -> ItemReport {
    let mut problems = Vec::new();
    let verdict = match classify_tn_tau_finiteness(&item.presentation, item.n) {
        Ok(v) => Some(v),
        Err(e) => {
            problems.push(format!("classifier: {e}"));
            None
        }
    };
    let base = reduce_two_cycle(&item.presentation, item.n)
        .map(|r| r.presentation)
        .unwrap_or_else(|| item.presentation.clone());
    let run = tn(&base, item.n).and_then(|p| explore_presentation(&p, opts));
    let report = match run {
        Ok((r, _)) => Some(r),
        Err(e) => {
            problems.push(format!("explorer: {e}"));
            None
        }
    };
    let conclusion = verdict.as_ref().map_or(Conclusion::Unknown, |v| v.conclusion);
    let status = report.as_ref().map(|r| r.status);
    match (conclusion, status) {
        (Conclusion::TauFinite, Some(ExploreStatus::BudgetExceeded)) => {
            problems.push("classified finite but exploration exhausted its budget".into())
        }
        (Conclusion::TauInfinite, Some(ExploreStatus::Finite)) => {
            problems.push("classified infinite but exploration terminated".into())
        }
        _ => {}
    }
    if let Some(r) = &report {
        if r.is_finite() && !(r.regular && r.unique_source && r.unique_sink && r.connected) {
            problems.push("finite Hasse quiver violates regularity, extremes or connectedness".into());
        }
    }
    if let Some(exp) = item.expected {
        if verdict.is_some() && exp != conclusion {
            problems.push(format!("expected {exp:?}, classifier says {conclusion:?}"));
        }
    }
    ItemReport {
        item: item.id.clone(),
        n: item.n,
        conclusion,
        rule: verdict.as_ref().map(|v| v.rule),
        provenance: verdict.as_ref().and_then(|v| v.provenance.clone()),
        reductions: verdict.map(|v| v.reductions).unwrap_or_default(),
        expected: item.expected,
        explorer_status: status,
        count: report.as_ref().map(|r| r.count),
        consistent: problems.is_empty(),
        problems,
    }
}

fn check_shadow(name: &str, p: &BoundPresentation, opts: &ExploreOptions) -> ShadowReport {
    let mut problems = Vec::new();
    let base = finite_run(p, opts, "Λ", &mut problems);
    let tensor = match truncated_polynomial(2).and_then(|d| tensor_product(p, &d.with_field(p.field))) {
        Ok(t) => finite_run(&t, opts, "Λ⊗K[x]/(x²)", &mut problems),
        Err(e) => {
            problems.push(format!("tensor product: {e}"));
            None
        }
    };
    let (count, tensor_count) = (base.map(|r| r.count), tensor.map(|r| r.count));
    if let (Some(a), Some(b)) = (count, tensor_count) {
        if a != b {
            problems.push(format!("{a} pairs for Λ but {b} for Λ⊗K[x]/(x²)"));
        }
    }
    ShadowReport {
        algebra: name.to_string(),
        count,
        tensor_count,
        consistent: problems.is_empty(),
        problems,
    }
}

fn check_two_cycle(name: &str, p: &BoundPresentation, n: usize, opts: &ExploreOptions) -> TwoCycleReport {
    let mut problems = Vec::new();
    let (full, reduced) = match reduce_two_cycle(p, n) {
        None => {
            problems.push("not a cyclic Nakayama algebra with two simples".into());
            (None, None)
        }
        Some(red) => {
            let full = tn(p, n).ok().and_then(|t| finite_run(&t, opts, "T_n(Λ)", &mut problems));
            let reduced = tn(&red.presentation, n)
                .ok()
                .and_then(|t| finite_run(&t, opts, "T_n(Λ/rad²)", &mut problems));
            (full, reduced)
        }
    };
    if let (Some(a), Some(b)) = (&full, &reduced) {
        if a.count != b.count {
            problems.push(format!("counts differ: {} vs {}", a.count, b.count));
        }
        if a.in_degrees != b.in_degrees || a.out_degrees != b.out_degrees {
            problems.push("Hasse degree multisets differ".into());
        }
    }
    TwoCycleReport {
        algebra: name.to_string(),
        n,
        count: full.as_ref().map(|r| r.count),
        reduced_count: reduced.as_ref().map(|r| r.count),
        in_degrees: full.as_ref().map(|r| r.in_degrees.clone()),
        reduced_in_degrees: reduced.as_ref().map(|r| r.in_degrees.clone()),
        out_degrees: full.as_ref().map(|r| r.out_degrees.clone()),
        reduced_out_degrees: reduced.as_ref().map(|r| r.out_degrees.clone()),
        consistent: problems.is_empty(),
        problems,
    }
}

/// Runs every corpus item and both experiments. Failures are recorded in
/// the report; only a broken worker pool is an error.
pub fn crosscheck(corpus: &[CorpusItem], opts: &CrosscheckOptions) -> Result<CrosscheckReport> {
    if opts.workers == 0 {
        return Err(Error::Budget("workers must be positive".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| Error::Internal(format!("worker pool: {e}")))?;
    let explore = ExploreOptions {
        workers: 1,
        ..opts.explore.clone()
    };
    let (mut items, (shadow, two_cycle)) = pool.install(|| {
        let items: Vec<ItemReport> = corpus.par_iter().map(|it| check_item(it, &explore)).collect();
        let shadow: Vec<ShadowReport> =
            opts.shadow.par_iter().map(|(name, p)| check_shadow(name, p, &explore)).collect();
        let two: Vec<TwoCycleReport> = opts
            .two_cycle
            .par_iter()
            .map(|(name, p, n)| check_two_cycle(name, p, *n, &explore))
            .collect();
        (items, (shadow, two))
    });
    items.sort_by(|a, b| a.item.cmp(&b.item));
    let consistent = items.iter().all(|i| i.consistent)
        && shadow.iter().all(|s| s.consistent)
        && two_cycle.iter().all(|t| t.consistent);
    Ok(CrosscheckReport {
        items,
        shadow,
        two_cycle,
        consistent,
    })
}
