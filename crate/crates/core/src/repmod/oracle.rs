//! Exhaustive count of support τ-tilting pairs over the field with two
//! elements, for algebras of dimension at most 6.
//!
//! Every representation whose dimension vector is bounded by the regular
//! module is enumerated, isomorphism classes are found by sweeping whole
//! base-change orbits, indecomposability is decided by searching End for
//! idempotents, and τ is computed through the Nakayama functor. Maximal
//! compatible sets are then counted directly. Nothing here shares code with
//! the explorer's presentation-based rigidity test.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::algebra::{Algebra, BoundPresentation};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::linalg::Matrix;

use super::{ar_translate, compose, hom_space, regular, Morphism, Representation};

pub const ORACLE_MAX_DIM: usize = 6;
const MAX_MATRIX_BITS: usize = 20;
const MAX_ORBIT_WORK: u64 = 50_000_000;
const MAX_END_DIM: usize = 16;

/// All invertible `d x d` matrices over F2, row-major bit vectors.
fn general_linear(f: &PrimeField, d: usize) -> Vec<Matrix<PrimeField>> {
    let mut out = Vec::new();
    for bits in 0u64..(1 << (d * d)) {
        let data = (0..d * d).map(|k| ((bits >> k) & 1) as u32).collect();
        let m = Matrix::from_vec(f, d, d, data);
        if m.is_invertible() {
            out.push(m);
        }
    }
    out
}

/// Order of GL_d(F2).
fn general_linear_order(d: usize) -> u64 {
    (0..d).fold(1u64, |acc, i| acc.saturating_mul((1u64 << d).saturating_sub(1 << i)))
}

fn encode(maps: &[Matrix<PrimeField>]) -> Vec<u32> {
    maps.iter().flat_map(|m| m.data().iter().copied()).collect()
}

/// Indecomposable iff End has no idempotent besides 0 and 1.
fn is_indecomposable(m: &Representation<PrimeField>) -> Result<bool> {
    let end = hom_space(m, m);
    if end.len() > MAX_END_DIM {
        return Err(Error::OracleDomain(format!("End has dimension {} > {MAX_END_DIM}", end.len())));
    }
    let f = m.field();
    let identity: Morphism<PrimeField> = m.dims().iter().map(|&d| Matrix::identity(f, d)).collect();
    for bits in 1u64..(1 << end.len()) {
        let mut e: Morphism<PrimeField> = end[0].iter().map(|x| Matrix::zeros(f, x.rows(), x.cols())).collect();
        for (k, b) in end.iter().enumerate() {
            if (bits >> k) & 1 == 1 {
                for (acc, x) in e.iter_mut().zip(b) {
                    *acc = acc.add(x);
                }
            }
        }
        if e != identity && compose(&e, &e) == e {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Indecomposable τ-rigid modules in the enumeration range.
pub fn tau_rigid_indecomposables(alg: &Arc<Algebra<PrimeField>>) -> Result<Vec<Representation<PrimeField>>> {
    let f = *alg.field();
    if f.order() != 2 {
        return Err(Error::OracleDomain(format!("the oracle works over fp:2, not {}", f.spec())));
    }
    if alg.dim() > ORACLE_MAX_DIM {
        return Err(Error::OracleDomain(format!("dimension {} > {ORACLE_MAX_DIM}", alg.dim())));
    }
    let q = alg.quiver();
    let bound = regular(alg).dims().to_vec();
    // the sweep at the bound is the largest one
    let bits: usize = q.arrows().iter().map(|a| bound[a.target] * bound[a.source]).sum();
    if bits > MAX_MATRIX_BITS {
        return Err(Error::OracleDomain(format!("{bits} matrix entries for dimension vector {bound:?}")));
    }
    let group_size = bound.iter().fold(1u64, |acc, &d| acc.saturating_mul(general_linear_order(d)));
    if group_size.saturating_mul(1 << bits) > MAX_ORBIT_WORK {
        return Err(Error::OracleDomain(format!("orbit sweep too large for {bound:?}")));
    }
    let groups: Vec<Vec<Matrix<PrimeField>>> = (0..=*bound.iter().max().unwrap_or(&0))
        .map(|d| general_linear(&f, d))
        .collect();

    let mut found = Vec::new();
    let mut dims = vec![0usize; bound.len()];
    loop {
        // next dimension vector below the bound
        let mut k = 0;
        loop {
            if k == dims.len() {
                return Ok(found);
            }
            dims[k] += 1;
            if dims[k] <= bound[k] {
                break;
            }
            dims[k] = 0;
            k += 1;
        }
        let shapes: Vec<(usize, usize)> = q.arrows().iter().map(|a| (dims[a.target], dims[a.source])).collect();
        let bits: usize = shapes.iter().map(|(r, c)| r * c).sum();
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        for word in 0u64..(1 << bits) {
            let mut pos = 0;
            let maps: Vec<Matrix<PrimeField>> = shapes
                .iter()
                .map(|&(r, c)| {
                    let data = (0..r * c).map(|k| ((word >> (pos + k)) & 1) as u32).collect();
                    pos += r * c;
                    Matrix::from_vec(&f, r, c, data)
                })
                .collect();
            if seen.contains(&encode(&maps)) {
                continue;
            }
            let rep = Representation::from_parts(alg, dims.clone(), maps);
            if rep.check_relations().is_err() {
                continue;
            }
            // sweep the orbit under base change
            let mut choice = vec![0usize; dims.len()];
            loop {
                let bases: Vec<Matrix<PrimeField>> =
                    dims.iter().zip(&choice).map(|(&d, &c)| groups[d][c].clone()).collect();
                seen.insert(encode(rep.change_basis(&bases).maps()));
                let mut k = 0;
                loop {
                    if k == choice.len() {
                        break;
                    }
                    choice[k] += 1;
                    if choice[k] < groups[dims[k]].len() {
                        break;
                    }
                    choice[k] = 0;
                    k += 1;
                }
                if k == choice.len() {
                    break;
                }
            }
            if is_indecomposable(&rep)? && hom_space(&rep, &ar_translate(&rep)?).is_empty() {
                found.push(rep);
            }
        }
    }
}

/// Number of support τ-tilting pairs, counted as compatible sets of size `n`
/// among indecomposable τ-rigid modules and shifted projectives.
pub fn brute_force_stau_count(pres: &BoundPresentation) -> Result<usize> {
    let f = PrimeField::new(2)?;
    let alg = Arc::new(Algebra::compute(pres, f)?);
    let n = alg.vertex_count();
    let modules = tau_rigid_indecomposables(&alg)?;
    let taus: Vec<Representation<PrimeField>> = modules.iter().map(ar_translate).collect::<Result<_>>()?;
    // items: modules first, then shifted projectives P(i)[1]
    let total = modules.len() + n;
    let mut compatible = vec![vec![false; total]; total];
    for i in 0..modules.len() {
        for j in 0..modules.len() {
            compatible[i][j] = i == j
                || (hom_space(&modules[i], &taus[j]).is_empty() && hom_space(&modules[j], &taus[i]).is_empty());
        }
        for v in 0..n {
            let ok = modules[i].dims()[v] == 0;
            compatible[i][modules.len() + v] = ok;
            compatible[modules.len() + v][i] = ok;
        }
    }
    for a in 0..n {
        for b in 0..n {
            compatible[modules.len() + a][modules.len() + b] = true;
        }
    }
    let mut cliques = Vec::new();
    let mut short_maximal = 0;
    extend(&compatible, 0, &mut Vec::new(), n, &mut cliques, &mut short_maximal);
    if short_maximal > 0 {
        return Err(Error::OracleDomain(format!(
            "{short_maximal} maximal compatible sets have fewer than {n} members; the enumeration range misses modules"
        )));
    }
    // a finite exchange graph is closed: each almost complete set has exactly two completions
    let mut completions: HashMap<Vec<usize>, usize> = HashMap::new();
    for c in &cliques {
        for k in 0..n {
            let mut face = c.clone();
            face.remove(k);
            *completions.entry(face).or_default() += 1;
        }
    }
    let open = completions.values().filter(|&&c| c != 2).count();
    if open > 0 {
        return Err(Error::OracleDomain(format!(
            "{open} almost complete sets lack a second completion in range; the exchange graph leaves the enumeration range"
        )));
    }
    Ok(cliques.len())
}

fn extend(
    compatible: &[Vec<bool>],
    start: usize,
    clique: &mut Vec<usize>,
    n: usize,
    cliques: &mut Vec<Vec<usize>>,
    short_maximal: &mut usize,
) {
    let can_add = |x: usize, clique: &[usize]| !clique.contains(&x) && clique.iter().all(|&y| compatible[x][y]);
    if clique.len() == n {
        cliques.push(clique.clone());
        return;
    }
    if (0..compatible.len()).all(|x| !can_add(x, clique)) {
        *short_maximal += 1;
        return;
    }
    for x in start..compatible.len() {
        if can_add(x, clique) {
            clique.push(x);
            extend(compatible, x + 1, clique, n, cliques, short_maximal);
            clique.pop();
        }
    }
}
