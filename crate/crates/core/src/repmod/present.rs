//! Minimal projective presentations and the functors built on them:
//! the AR translate `τ = ker ν(f)` and the transpose `Tr = coker f*`.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, RowSpan};

use super::{injective, projective, Morphism, Representation};

/// `P1 -f-> P0 -> M -> 0` with `P0 = ⊕_t P(top[t])`, `P1 = ⊕_s P(syzygy[s])`.
///
/// `f` sends the generator of the `s`-th summand of `P1` to
/// `Σ_t relations[s][t]`, where `relations[s][t]` lies in
/// `e_{top[t]} Λ e_{syzygy[s]}` (block coordinates).
#[derive(Clone, Debug)]
pub struct Presentation<F: Field> {
    pub top: Vec<usize>,
    /// Image in `M_{top[t]}` of the `t`-th generator.
    pub generators: Vec<Vec<F::Elem>>,
    pub syzygy: Vec<usize>,
    pub relations: Vec<Vec<Vec<F::Elem>>>,
}

impl<F: Field> Presentation<F> {
    /// `[P0] - [P1]` in the basis of indecomposable projectives.
    pub fn g_vector(&self, vertices: usize) -> Vec<i64> {
        let mut g = vec![0i64; vertices];
        for &v in &self.top {
            g[v] += 1;
        }
        for &w in &self.syzygy {
            g[w] -= 1;
        }
        g
    }

    pub fn is_projective(&self) -> bool {
        self.syzygy.is_empty()
    }
}

fn unit<F: Field>(f: &F, n: usize, k: usize) -> Vec<F::Elem> {
    let mut v = vec![f.zero(); n];
    v[k] = f.one();
    v
}

/// Offsets of the summands of `⊕_t P(tops[t])` at vertex `w`.
fn offsets<F: Field>(alg: &Algebra<F>, tops: &[usize], w: usize) -> Vec<usize> {
    let mut off = Vec::with_capacity(tops.len() + 1);
    off.push(0);
    for &v in tops {
        off.push(off.last().unwrap() + alg.block(v, w).len());
    }
    off
}

pub fn minimal_projective_presentation<F: Field>(m: &Representation<F>) -> Result<Presentation<F>> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let alg = m.algebra();
    let f = m.field();
    let q = alg.quiver();
    let nv = q.vertex_count();
    let dims = m.dims();

    let mut top = Vec::new();
    let mut generators = Vec::new();
    for v in 0..nv {
        let mut rad = RowSpan::new(f, dims[v]);
        for a in q.arrows_into(v) {
            rad.insert_columns(m.map(a));
        }
        for c in rad.complement_indices() {
            top.push(v);
            generators.push(unit(f, dims[v], c));
        }
    }

    let actions = m.basis_actions();
    let offs: Vec<Vec<usize>> = (0..nv).map(|w| offsets(alg, &top, w)).collect();
    let kernels: Vec<Matrix<F>> = (0..nv)
        .map(|w| {
            let cols = *offs[w].last().unwrap();
            let mut pi = Matrix::zeros(f, dims[w], cols);
            for (t, &v) in top.iter().enumerate() {
                for (k, &b) in alg.block(v, w).iter().enumerate() {
                    let image = actions[b].mul_vec(&generators[t]);
                    for (r, x) in image.into_iter().enumerate() {
                        pi.set(r, offs[w][t] + k, x);
                    }
                }
            }
            pi.kernel()
        })
        .collect();

    // right multiplication by an arrow on P0
    let p0_arrow = |a: usize| -> Matrix<F> {
        let arr = q.arrow(a);
        let (w, w2) = (arr.source, arr.target);
        let ab = alg.arrow_basis(a);
        let mut mat = Matrix::zeros(f, *offs[w2].last().unwrap(), *offs[w].last().unwrap());
        for (t, &v) in top.iter().enumerate() {
            for (k, &p) in alg.block(v, w).iter().enumerate() {
                for (b, c) in alg.product(p, ab) {
                    mat.set(offs[w2][t] + alg.block_pos(*b), offs[w][t] + k, c.clone());
                }
            }
        }
        mat
    };

    let mut syzygy = Vec::new();
    let mut relations = Vec::new();
    for w in 0..nv {
        if kernels[w].cols() == 0 {
            continue;
        }
        let mut span = RowSpan::new(f, kernels[w].rows());
        for a in q.arrows_into(w) {
            let src = q.arrow(a).source;
            span.insert_columns(&p0_arrow(a).mul(&kernels[src]));
        }
        for c in 0..kernels[w].cols() {
            let col = kernels[w].column(c);
            if span.insert(&col) {
                syzygy.push(w);
                relations.push(
                    (0..top.len())
                        .map(|t| col[offs[w][t]..offs[w][t + 1]].to_vec())
                        .collect(),
                );
            }
        }
    }
    Ok(Presentation {
        top,
        generators,
        syzygy,
        relations,
    })
}

/// The matrix of `Hom(P0, N) -> Hom(P1, N)`, i.e. `(n_t) ↦ (Σ_t n_t · x_ts)_s`.
///
/// Its kernel is `Hom(M, N)`; it is onto iff `Hom(N, τM) = 0`.
pub fn hom_matrix<F: Field>(pres: &Presentation<F>, n: &Representation<F>, n_actions: &[Matrix<F>]) -> Matrix<F> {
    let f = n.field();
    let dims = n.dims();
    let col_off: Vec<usize> = std::iter::once(0)
        .chain(pres.top.iter().scan(0, |acc, &v| {
            *acc += dims[v];
            Some(*acc)
        }))
        .collect();
    let row_off: Vec<usize> = std::iter::once(0)
        .chain(pres.syzygy.iter().scan(0, |acc, &w| {
            *acc += dims[w];
            Some(*acc)
        }))
        .collect();
    let mut mat = Matrix::zeros(f, *row_off.last().unwrap(), *col_off.last().unwrap());
    for (s, &w) in pres.syzygy.iter().enumerate() {
        if dims[w] == 0 {
            continue;
        }
        for (t, &v) in pres.top.iter().enumerate() {
            if dims[v] == 0 || pres.relations[s][t].iter().all(|x| f.is_zero(x)) {
                continue;
            }
            let block = n.element_action(n_actions, v, w, &pres.relations[s][t]);
            mat.set_block(row_off[s], col_off[t], &block);
        }
    }
    mat
}

/// `Hom(M, N)` as vectors `(n_t)`: images of the generators of `M`.
pub fn hom_via_presentation<F: Field>(pres: &Presentation<F>, n: &Representation<F>) -> Matrix<F> {
    hom_matrix(pres, n, &n.basis_actions()).kernel()
}

/// Cokernel of `⊕_u P(domain[u]) -> ⊕_r P(codomain[r])` sending the `u`-th
/// generator to `Σ_r elems[u][r]`, with `elems[u][r] ∈ e_{codomain[r]} A e_{domain[u]}`.
pub fn coker_of_projectives<F: Field>(
    alg: &Arc<Algebra<F>>,
    domain: &[usize],
    codomain: &[usize],
    elems: &[Vec<Vec<F::Elem>>],
) -> Representation<F> {
    let f = alg.field();
    let nv = alg.vertex_count();
    let parts: Vec<Representation<F>> = codomain.iter().map(|&b| projective(alg, b)).collect();
    let target = Representation::direct_sum(alg, &parts.iter().collect::<Vec<_>>());
    let phi: Morphism<F> = (0..nv)
        .map(|k| {
            let row_off = offsets(alg, codomain, k);
            let col_off = offsets(alg, domain, k);
            let mut mat = Matrix::zeros(f, *row_off.last().unwrap(), *col_off.last().unwrap());
            for (u, &a) in domain.iter().enumerate() {
                for (r, &b) in codomain.iter().enumerate() {
                    for (y, c) in alg.block(b, a).iter().zip(&elems[u][r]) {
                        if f.is_zero(c) {
                            continue;
                        }
                        for (zi, &z) in alg.block(a, k).iter().enumerate() {
                            for (out, d) in alg.product(*y, z) {
                                let (row, col) = (row_off[r] + alg.block_pos(*out), col_off[u] + zi);
                                let val = f.add(mat.get(row, col), &f.mul(c, d));
                                mat.set(row, col, val);
                            }
                        }
                    }
                }
            }
            mat
        })
        .collect();
    target.cokernel_of(&phi).0
}

/// `τM`, the kernel of `ν(P1) -> ν(P0)` with `ν P(i) = I(i)`.
pub fn ar_translate<F: Field>(m: &Representation<F>) -> Result<Representation<F>> {
    let alg = m.algebra();
    if m.is_zero() {
        return Ok(Representation::zero(alg));
    }
    let pres = minimal_projective_presentation(m)?;
    if pres.is_projective() {
        return Ok(Representation::zero(alg));
    }
    let f = m.field();
    let nv = alg.vertex_count();
    let inj = |vs: &[usize]| {
        let parts: Vec<Representation<F>> = vs.iter().map(|&v| injective(alg, v)).collect();
        Representation::direct_sum(alg, &parts.iter().collect::<Vec<_>>())
    };
    let source = inj(&pres.syzygy);
    // at vertex k: transpose of right multiplication e_kΛe_{v_t} -> e_kΛe_{w_s}
    let block_offsets = |vs: &[usize], k: usize| {
        let mut off = vec![0];
        for &v in vs {
            off.push(off.last().unwrap() + alg.block(k, v).len());
        }
        off
    };
    let phi: Morphism<F> = (0..nv)
        .map(|k| {
            let row_off = block_offsets(&pres.top, k);
            let col_off = block_offsets(&pres.syzygy, k);
            let mut mat = Matrix::zeros(f, *row_off.last().unwrap(), *col_off.last().unwrap());
            for (s, &w) in pres.syzygy.iter().enumerate() {
                for (t, &v) in pres.top.iter().enumerate() {
                    for (xb, c) in alg.block(v, w).iter().zip(&pres.relations[s][t]) {
                        if f.is_zero(c) {
                            continue;
                        }
                        for (zi, &z) in alg.block(k, v).iter().enumerate() {
                            for (y, d) in alg.product(z, *xb) {
                                let (row, col) = (row_off[t] + zi, col_off[s] + alg.block_pos(*y));
                                let val = f.add(mat.get(row, col), &f.mul(c, d));
                                mat.set(row, col, val);
                            }
                        }
                    }
                }
            }
            mat
        })
        .collect();
    Ok(source.kernel_of(&phi).0)
}

/// `Tr M = coker(f*: P0* -> P1*)`, a module over the opposite algebra `op`.
pub fn transpose<F: Field>(m: &Representation<F>, op: &Arc<Algebra<F>>) -> Result<Representation<F>> {
    if m.is_zero() {
        return Ok(Representation::zero(op));
    }
    let pres = minimal_projective_presentation(m)?;
    let elems: Vec<Vec<Vec<F::Elem>>> = (0..pres.top.len())
        .map(|t| (0..pres.syzygy.len()).map(|s| pres.relations[s][t].clone()).collect())
        .collect();
    Ok(coker_of_projectives(op, &pres.top, &pres.syzygy, &elems))
}

#[cfg(test)]
mod tests {
    use super::super::tests::alg;
    use super::super::{hom_space, is_isomorphic, simple};
    use super::*;
    use crate::algebra::{nakayama, path_algebra_linear, triangular_matrix, truncated_polynomial};

    #[test]
    fn presentations_of_small_modules() {
        let a2 = alg(&path_algebra_linear(2).unwrap());
        let p = minimal_projective_presentation(&projective(&a2, 0)).unwrap();
        assert_eq!((p.top.clone(), p.syzygy.clone()), (vec![0], vec![]));
        let s = minimal_projective_presentation(&simple(&a2, 0)).unwrap();
        assert_eq!((s.top.clone(), s.syzygy.clone()), (vec![0], vec![1]));
        assert_eq!(s.g_vector(2), vec![1, -1]);
        let loc = alg(&truncated_polynomial(2).unwrap());
        let ls = minimal_projective_presentation(&simple(&loc, 0)).unwrap();
        assert_eq!((ls.top.len(), ls.syzygy.len()), (1, 1));
        assert!(minimal_projective_presentation(&Representation::zero(&a2)).is_err());
    }

    #[test]
    fn modules_are_cokernels_of_their_presentations() {
        let a = alg(&triangular_matrix(&nakayama(2, true, 3).unwrap(), 2).unwrap());
        for i in 0..a.vertex_count() {
            for m in [simple(&a, i), crate::repmod::injective(&a, i), projective(&a, i)] {
                let p = minimal_projective_presentation(&m).unwrap();
                let c = coker_of_projectives(&a, &p.syzygy, &p.top, &p.relations);
                c.check_relations().unwrap();
                assert!(is_isomorphic(&c, &m));
            }
        }
    }

    #[test]
    fn hom_from_presentation_matches_linear_system() {
        let a = alg(&triangular_matrix(&nakayama(2, true, 3).unwrap(), 2).unwrap());
        let mods: Vec<_> = (0..a.vertex_count())
            .flat_map(|i| [simple(&a, i), crate::repmod::injective(&a, i), projective(&a, i)])
            .collect();
        for m in &mods {
            let p = minimal_projective_presentation(m).unwrap();
            for n in &mods {
                assert_eq!(hom_via_presentation(&p, n).cols(), hom_space(m, n).len());
            }
        }
    }

    #[test]
    fn translates_of_small_modules() {
        let a2 = alg(&path_algebra_linear(2).unwrap());
        let t = ar_translate(&simple(&a2, 0)).unwrap();
        assert!(is_isomorphic(&t, &simple(&a2, 1)));
        assert!(ar_translate(&projective(&a2, 0)).unwrap().is_zero());
        let loc = alg(&truncated_polynomial(2).unwrap());
        let s = simple(&loc, 0);
        let ts = ar_translate(&s).unwrap();
        assert!(is_isomorphic(&ts, &s));
        assert!(is_isomorphic(&ar_translate(&ts).unwrap(), &s));
    }

    #[test]
    fn translate_is_additive_and_valid() {
        let a = alg(&triangular_matrix(&path_algebra_linear(2).unwrap(), 2).unwrap());
        let mods: Vec<_> = (0..a.vertex_count())
            .flat_map(|i| [simple(&a, i), crate::repmod::injective(&a, i)])
            .collect();
        for x in &mods {
            let tx = ar_translate(x).unwrap();
            tx.check_relations().unwrap();
            for y in &mods {
                let ty = ar_translate(y).unwrap();
                let sum = Representation::direct_sum(&a, &[x, y]);
                let tsum = ar_translate(&sum).unwrap();
                let expected = Representation::direct_sum(&a, &[&tx, &ty]);
                assert_eq!(tsum.dims(), expected.dims());
                for probe in &mods {
                    assert_eq!(hom_space(probe, &tsum).len(), hom_space(probe, &expected).len());
                }
            }
        }
    }

    #[test]
    fn transpose_twice_is_identity_on_nonprojectives() {
        let a = alg(&triangular_matrix(&nakayama(2, true, 3).unwrap(), 2).unwrap());
        let op = Arc::new(a.opposite());
        let back = Arc::new(op.opposite());
        for i in 0..a.vertex_count() {
            let s = simple(&a, i);
            if minimal_projective_presentation(&s).unwrap().is_projective() {
                continue;
            }
            let tr = transpose(&s, &op).unwrap();
            tr.check_relations().unwrap();
            let trtr = transpose(&tr, &back).unwrap();
            let s_back = Representation::from_parts(&back, s.dims().to_vec(), s.maps().to_vec());
            assert!(is_isomorphic(&trtr, &s_back));
            let pres = minimal_projective_presentation(&s).unwrap();
            let tpres = minimal_projective_presentation(&tr).unwrap();
            let neg: Vec<i64> = pres.g_vector(a.vertex_count()).iter().map(|x| -x).collect();
            assert_eq!(tpres.g_vector(a.vertex_count()), neg);
        }
    }
}
