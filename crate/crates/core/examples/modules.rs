//! Representations: projectives, Hom spaces, τ, bricks and decomposition.

use std::sync::Arc;

use tautri::algebra::{nakayama, Algebra};
use tautri::field::PrimeField;
use tautri::repmod::{ar_translate, decompose, hom_space, injective, is_brick, projective, simple, Representation};

fn main() -> tautri::Result<()> {
    let alg = Arc::new(Algebra::compute(&nakayama(3, false, 3)?, PrimeField::new(32003)?)?);
    for i in 0..alg.vertex_count() {
        let (p, s, e) = (projective(&alg, i), simple(&alg, i), injective(&alg, i));
        let tau = ar_translate(&s)?;
        println!(
            "vertex {i}: dim P = {:?}, dim I = {:?}, dim τS = {:?}, S is a brick: {}",
            p.dims(),
            e.dims(),
            tau.dims(),
            is_brick(&s)?
        );
    }
    let (p0, s2) = (projective(&alg, 0), simple(&alg, 2));
    println!("dim Hom(P1, S3) = {}", hom_space(&p0, &s2).len());

    let mixed = Representation::direct_sum(&alg, &[&p0, &s2, &s2]);
    println!("decomposing a module with dimension vector {:?}:", mixed.dims());
    for (summand, multiplicity) in decompose(&mixed)? {
        println!("  {:?} with multiplicity {multiplicity}", summand.dims());
    }
    Ok(())
}
