//! Explore the support τ-tilting pairs of T2(KA3) and print the Hasse quiver.

use std::sync::Arc;

use tautri::algebra::{path_algebra_linear, triangular_matrix, Algebra};
use tautri::field::PrimeField;
use tautri::tautilt::{explore, ExploreOptions};

fn main() -> tautri::Result<()> {
    let p = triangular_matrix(&path_algebra_linear(3)?, 2)?;
    let alg = Arc::new(Algebra::compute(&p, PrimeField::new(32003)?)?);
    let opts = ExploreOptions {
        workers: 2,
        ..ExploreOptions::default()
    };
    let e = explore(alg, &opts)?;
    println!("{}", serde_json::to_string_pretty(&e.report.deterministic_json()).unwrap());

    // the first few pairs by g-matrix
    for (pair, key) in e.pairs.iter().zip(&e.hasse.keys).take(3) {
        println!("modules {:?}, shifted projectives {:?}, g-matrix {key:?}", pair.modules, pair.projectives);
    }
    let (top, bottom) = (e.context.initial_pair()?, e.context.final_pair());
    println!("top ≥ bottom: {}", e.context.leq(&bottom, &top));

    // mutating the top pair at each position moves down the order
    for k in 0..top.len() {
        let (q, direction) = e.context.mutate(&top, k)?;
        println!("mutation at {k}: {direction:?}, g-matrix {:?}", e.context.key(&q));
    }
    Ok(())
}
