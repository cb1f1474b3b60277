//! Krull-Schmidt decomposition by Fitting splitting.
//!
//! For an endomorphism `φ` of `M` and an eigenvalue `λ`,
//! `M = ker (φ-λ)^d ⊕ im (φ-λ)^d` with `d = dim M`. Basis endomorphisms are
//! tried first, then seeded random combinations. A module is certified
//! indecomposable when every endomorphism is a scalar plus a nilpotent.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, RowSpan};

use super::{hom_space, is_isomorphic, Morphism, Representation};

pub const DECOMPOSE_ATTEMPTS: usize = 32;

fn flatten<F: Field>(phi: &Morphism<F>) -> Vec<F::Elem> {
    phi.iter().flat_map(|m| m.data().iter().cloned()).collect()
}

fn trace<F: Field>(f: &F, phi: &Morphism<F>) -> F::Elem {
    let mut acc = f.zero();
    for m in phi {
        for i in 0..m.rows() {
            acc = f.add(&acc, m.get(i, i));
        }
    }
    acc
}

fn shift<F: Field>(f: &F, phi: &Morphism<F>, lambda: &F::Elem) -> Morphism<F> {
    phi.iter()
        .map(|m| m.sub(&Matrix::identity(f, m.rows()).scale(lambda)))
        .collect()
}

/// Eigenvalues of `φ` found from Krylov polynomials of unit vectors.
fn eigenvalue_candidates<F: Field>(f: &F, phi: &Morphism<F>) -> Vec<F::Elem> {
    let mut out: Vec<F::Elem> = Vec::new();
    for m in phi {
        for k in 0..m.rows().min(2) {
            let mut v = vec![f.zero(); m.rows()];
            v[k] = f.one();
            for root in f.roots(&m.krylov_polynomial(&v)) {
                if !out.contains(&root) {
                    out.push(root);
                }
            }
        }
    }
    out
}

fn is_nilpotent<F: Field>(phi: &Morphism<F>) -> bool {
    phi.iter().all(|m| m.rows() == 0 || m.pow(m.rows()).is_zero())
}

/// Whether `End(M)` (given by a basis) is local with residue field the ground
/// field: each basis element is a scalar plus a nilpotent and those
/// nilpotent parts generate a nilpotent ideal.
pub fn certify_local<F: Field>(m: &Representation<F>, end: &[Morphism<F>]) -> bool {
    let f = m.field();
    let d = m.dim();
    if d == 0 {
        return false;
    }
    let dd = f.from_i64(d as i64);
    let mut nilpotent_parts = Vec::with_capacity(end.len());
    for phi in end {
        let candidates: Vec<F::Elem> = if !f.is_zero(&dd) {
            vec![f.mul(&trace(f, phi), &f.inv(&dd))]
        } else {
            match f.elements() {
                Some(all) => all,
                None => return false,
            }
        };
        let Some(n) = candidates
            .iter()
            .map(|l| shift(f, phi, l))
            .find(is_nilpotent)
        else {
            return false;
        };
        nilpotent_parts.push(n);
    }
    // powers of the span of the nilpotent parts must reach zero
    let width: usize = m.dims().iter().map(|x| x * x).sum();
    let independent = |items: Vec<Morphism<F>>| -> Vec<Morphism<F>> {
        let mut span = RowSpan::new(f, width);
        items.into_iter().filter(|x| span.insert(&flatten(x))).collect()
    };
    let base = independent(nilpotent_parts);
    let mut power = base.clone();
    for _ in 0..=d {
        if power.is_empty() {
            return true;
        }
        let products = power
            .iter()
            .flat_map(|x| base.iter().map(move |y| super::compose(x, y)))
            .collect();
        power = independent(products);
    }
    false
}

pub fn decompose<F: Field>(m: &Representation<F>) -> Result<Vec<(Representation<F>, usize)>> {
    decompose_seeded(m, 0)
}

/// Indecomposable summands with multiplicities, using a generator seeded
/// afresh on every call.
pub fn decompose_seeded<F: Field>(m: &Representation<F>, seed: u64) -> Result<Vec<(Representation<F>, usize)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pieces = Vec::new();
    split(m, &mut rng, &mut pieces)?;
    let mut groups: Vec<(Representation<F>, usize)> = Vec::new();
    for p in pieces {
        match groups.iter_mut().find(|(g, _)| is_isomorphic(g, &p)) {
            Some((_, k)) => *k += 1,
            None => groups.push((p, 1)),
        }
    }
    Ok(groups)
}

fn split<F: Field>(m: &Representation<F>, rng: &mut ChaCha8Rng, out: &mut Vec<Representation<F>>) -> Result<()> {
    if m.is_zero() {
        return Ok(());
    }
    let end = hom_space(m, m);
    if end.len() == 1 || certify_local(m, &end) {
        out.push(m.clone());
        return Ok(());
    }
    let f = m.field();
    let d = m.dim();
    // basis elements first, then random combinations
    let randoms = (0..DECOMPOSE_ATTEMPTS).map(|_| {
        let mut phi: Morphism<F> = end[0].iter().map(|x| Matrix::zeros(f, x.rows(), x.cols())).collect();
        for b in &end {
            let c = f.sample(rng);
            for (acc, x) in phi.iter_mut().zip(b) {
                acc.add_scaled(&c, x);
            }
        }
        phi
    });
    let candidates: Vec<Morphism<F>> = end.iter().cloned().chain(randoms).collect();
    for phi in candidates {
        for lambda in eigenvalue_candidates(f, &phi) {
            let psi: Morphism<F> = shift(f, &phi, &lambda).iter().map(|x| x.pow(d)).collect();
            let nullity: usize = psi.iter().map(|x| x.cols() - x.rank()).sum();
            if nullity == 0 || nullity == d {
                continue;
            }
            let (ker, _) = m.kernel_of(&psi);
            let im = Representation::image_in(m, &psi);
            split(&ker, rng, out)?;
            split(&im, rng, out)?;
            return Ok(());
        }
    }
    Err(Error::DecompositionUnresolved(DECOMPOSE_ATTEMPTS))
}
