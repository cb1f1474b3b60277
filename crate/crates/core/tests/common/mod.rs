#![allow(dead_code)]

use std::collections::HashSet;
use std::path::PathBuf;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tautri::algebra::{format, triangular_matrix, Algebra, BoundPresentation};
use tautri::field::{FieldSpec, PrimeField};
use tautri::quiver::Quiver;
use tautri::tautilt::{explore_in, Exploration, ExploreOptions, TauTiltingContext, TauTiltingPair};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn corpus(name: &str) -> BoundPresentation {
    format::read_file(&corpus_dir().join(name)).unwrap()
}

pub fn field() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

pub fn context(p: &BoundPresentation) -> Arc<TauTiltingContext<PrimeField>> {
    Arc::new(TauTiltingContext::new(Arc::new(Algebra::compute(p, field()).unwrap())))
}

pub fn explore_with(p: &BoundPresentation, opts: &ExploreOptions) -> Exploration<PrimeField> {
    explore_in(context(p), opts).unwrap()
}

/// Small budgets for randomly generated algebras.
pub fn small_options() -> ExploreOptions {
    ExploreOptions {
        budget: 3_000,
        seconds: 60.0,
        max_module_dim: 64,
        ..ExploreOptions::default()
    }
}

/// A connected bound quiver with up to three vertices, loops allowed, and
/// sometimes its T_2.
pub fn random_algebra(rng: &mut ChaCha8Rng) -> BoundPresentation {
    loop {
        let n = rng.gen_range(1..=3);
        let arrows = rng.gen_range(n - 1..=n + 1);
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let list: Vec<(String, String, String)> = (0..arrows)
            .map(|k| {
                let s = rng.gen_range(0..n);
                let t = rng.gen_range(0..n);
                (format!("a{k}"), names[s].clone(), names[t].clone())
            })
            .collect();
        let q = Quiver::new(names, list).unwrap();
        if !q.is_connected() {
            continue;
        }
        let cap = rng.gen_range(2..=3);
        let p = BoundPresentation::new(q, Vec::new(), cap, FieldSpec::default()).unwrap();
        if p.vertex_count() <= 2 && rng.gen_bool(0.3) {
            return triangular_matrix(&p, 2).unwrap();
        }
        return p;
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Position (modules first, then projectives) of the summand of `q` that is
/// not in `p`.
pub fn exchanged_position(p: &TauTiltingPair, q: &TauTiltingPair) -> usize {
    let old_m: HashSet<usize> = p.modules.iter().copied().collect();
    let old_p: HashSet<usize> = p.projectives.iter().copied().collect();
    if let Some(i) = q.modules.iter().position(|m| !old_m.contains(m)) {
        return i;
    }
    let j = q.projectives.iter().position(|v| !old_p.contains(v)).expect("pairs differ");
    q.modules.len() + j
}
