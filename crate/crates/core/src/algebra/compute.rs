//! From a presentation to a basis with structure constants.
//!
//! Paths shorter than the cap span a finite space. The relation ideal is
//! generated inside it by the two-sided multiples `u r w`; echelonizing those
//! with the longest paths first makes the leading terms the ideal's standard
//! monomials, and the remaining paths are the basis. Basis labels are
//! therefore the least paths in deg-lex order.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::RowSpan;
use crate::quiver::Quiver;

use super::BoundPresentation;

/// Sparse coordinates: `(basis index, coefficient)` pairs.
pub type SparseVec<F> = Vec<(usize, <F as Field>::Elem)>;

const MAX_PATHS: usize = 250_000;

/// A basis element, labelled by its canonical path.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl BasisElement {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// A finite dimensional algebra computed from a bound presentation.
#[derive(Clone, Debug)]
pub struct Algebra<F: Field> {
    field: F,
    presentation: BoundPresentation,
    basis: Vec<BasisElement>,
    products: Vec<SparseVec<F>>,
    blocks: Vec<Vec<usize>>,
    block_pos: Vec<usize>,
    arrow_basis: Vec<usize>,
    vertex_basis: Vec<usize>,
    normal_forms: HashMap<(usize, Vec<usize>), SparseVec<F>>,
}

fn deg_lex(a: &(usize, Vec<usize>), b: &(usize, Vec<usize>)) -> Ordering {
    a.1.len()
        .cmp(&b.1.len())
        .then_with(|| a.0.cmp(&b.0))
        .then_with(|| a.1.cmp(&b.1))
}

impl<F: Field> Algebra<F> {
    pub fn compute(pres: &BoundPresentation, field: F) -> Result<Self> {
        pres.validate()?;
        if field.spec() != pres.field {
            log::debug!("computing a {} presentation over {}", pres.field, field.spec());
        }
        let q = &pres.quiver;
        let cap = pres.cap;
        for (k, rel) in pres.relations.iter().enumerate() {
            if rel.terms.len() > 1 && rel.max_length() >= cap {
                log::warn!(
                    "relation {} has a path of length {} >= cap {}; the cap may truncate intended structure",
                    k + 1,
                    rel.max_length(),
                    cap
                );
            }
        }

        // all paths of length < cap, shortest first
        let mut paths: Vec<(usize, Vec<usize>)> = (0..q.vertex_count()).map(|v| (v, Vec::new())).collect();
        let mut frontier: Vec<usize> = (0..paths.len()).collect();
        for _ in 1..cap {
            let mut next = Vec::new();
            for &pi in &frontier {
                let (s, arrows) = paths[pi].clone();
                let end = arrows.last().map_or(s, |&a| q.arrow(a).target);
                for a in q.arrows_from(end) {
                    let mut np = arrows.clone();
                    np.push(a);
                    next.push(paths.len());
                    paths.push((s, np));
                    if paths.len() > MAX_PATHS {
                        return Err(Error::Presentation(format!(
                            "more than {MAX_PATHS} paths below the cap {cap}; lower the cap"
                        )));
                    }
                }
            }
            frontier = next;
        }
        let target_of = |p: &(usize, Vec<usize>)| p.1.last().map_or(p.0, |&a| q.arrow(a).target);

        // column order: largest path first
        let mut order: Vec<usize> = (0..paths.len()).collect();
        order.sort_by(|&x, &y| deg_lex(&paths[y], &paths[x]));
        let mut column = vec![0usize; paths.len()];
        for (c, &pi) in order.iter().enumerate() {
            column[pi] = c;
        }
        let index: HashMap<(usize, Vec<usize>), usize> =
            paths.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();

        let mut ending_at: Vec<Vec<usize>> = vec![Vec::new(); q.vertex_count()];
        let mut starting_at: Vec<Vec<usize>> = vec![Vec::new(); q.vertex_count()];
        for (i, p) in paths.iter().enumerate() {
            ending_at[target_of(p)].push(i);
            starting_at[p.0].push(i);
        }

        let ncols = paths.len();
        let mut ideal = RowSpan::new(&field, ncols);
        for rel in &pres.relations {
            let rel = rel.normalized();
            if rel.terms.is_empty() {
                continue;
            }
            let (s, t) = pres.path_ends(&rel.terms[0].1).expect("validated");
            let coeffs: Vec<F::Elem> = rel
                .terms
                .iter()
                .map(|(c, _)| field.from_coeff(c))
                .collect::<Result<_>>()?;
            let min_len = rel.min_length();
            for &ui in &ending_at[s] {
                let u = &paths[ui];
                if u.1.len() + min_len >= cap {
                    continue;
                }
                for &wi in &starting_at[t] {
                    let w = &paths[wi];
                    if u.1.len() + min_len + w.1.len() >= cap {
                        continue;
                    }
                    let mut row = vec![field.zero(); ncols];
                    let mut nonzero = false;
                    for ((_, p), c) in rel.terms.iter().zip(&coeffs) {
                        if u.1.len() + p.len() + w.1.len() >= cap {
                            continue;
                        }
                        let mut full = u.1.clone();
                        full.extend_from_slice(p);
                        full.extend_from_slice(&w.1);
                        let col = column[index[&(u.0, full)]];
                        row[col] = field.add(&row[col], c);
                        nonzero = true;
                    }
                    if nonzero {
                        ideal.insert(&row);
                    }
                }
            }
        }

        let mut is_pivot = vec![false; ncols];
        for &p in ideal.pivots() {
            is_pivot[p] = true;
        }
        // basis in ascending deg-lex order
        let mut basis_paths: Vec<usize> = order.iter().rev().copied().filter(|&pi| !is_pivot[column[pi]]).collect();
        basis_paths.sort_by(|&x, &y| deg_lex(&paths[x], &paths[y]));
        let mut basis_of_column = vec![usize::MAX; ncols];
        for (b, &pi) in basis_paths.iter().enumerate() {
            basis_of_column[column[pi]] = b;
        }

        let mut normal_forms = HashMap::with_capacity(paths.len());
        for (pi, p) in paths.iter().enumerate() {
            let col = column[pi];
            let nf: SparseVec<F> = if !is_pivot[col] {
                vec![(basis_of_column[col], field.one())]
            } else {
                let mut v = vec![field.zero(); ncols];
                v[col] = field.one();
                ideal.reduce(&mut v);
                let mut nf: SparseVec<F> = v
                    .into_iter()
                    .enumerate()
                    .filter(|(_, x)| !field.is_zero(x))
                    .map(|(c, x)| (basis_of_column[c], x))
                    .collect();
                nf.sort_by_key(|e| e.0);
                nf
            };
            normal_forms.insert(p.clone(), nf);
        }

        let basis: Vec<BasisElement> = basis_paths
            .iter()
            .map(|&pi| BasisElement {
                source: paths[pi].0,
                target: target_of(&paths[pi]),
                arrows: paths[pi].1.clone(),
            })
            .collect();
        let d = basis.len();
        let mut products = Vec::with_capacity(d * d);
        for x in &basis {
            for y in &basis {
                if x.target != y.source || x.len() + y.len() >= cap {
                    products.push(Vec::new());
                    continue;
                }
                let mut full = x.arrows.clone();
                full.extend_from_slice(&y.arrows);
                products.push(normal_forms[&(x.source, full)].clone());
            }
        }
        Ok(Self::assemble(field, pres.clone(), basis, products, normal_forms))
    }

    fn assemble(
        field: F,
        presentation: BoundPresentation,
        basis: Vec<BasisElement>,
        products: Vec<SparseVec<F>>,
        normal_forms: HashMap<(usize, Vec<usize>), SparseVec<F>>,
    ) -> Self {
        let n = presentation.quiver.vertex_count();
        let mut blocks = vec![Vec::new(); n * n];
        let mut block_pos = vec![0; basis.len()];
        let mut arrow_basis = vec![usize::MAX; presentation.quiver.arrow_count()];
        let mut vertex_basis = vec![usize::MAX; n];
        for (b, e) in basis.iter().enumerate() {
            let blk = &mut blocks[e.source * n + e.target];
            block_pos[b] = blk.len();
            blk.push(b);
            match e.arrows.as_slice() {
                [] => vertex_basis[e.source] = b,
                [a] => arrow_basis[*a] = b,
                _ => {}
            }
        }
        debug_assert!(arrow_basis.iter().all(|&b| b != usize::MAX));
        Self {
            field,
            presentation,
            basis,
            products,
            blocks,
            block_pos,
            arrow_basis,
            vertex_basis,
            normal_forms,
        }
    }

    /// The opposite algebra on the same basis: arrows reversed, products
    /// swapped. `a.opposite().opposite()` has identical structure to `a`.
    pub fn opposite(&self) -> Self {
        let d = self.dim();
        let basis = self
            .basis
            .iter()
            .map(|e| BasisElement {
                source: e.target,
                target: e.source,
                arrows: e.arrows.iter().rev().copied().collect(),
            })
            .collect();
        let mut products = Vec::with_capacity(d * d);
        for x in 0..d {
            for y in 0..d {
                products.push(self.products[y * d + x].clone());
            }
        }
        let q = &self.presentation.quiver;
        let normal_forms = self
            .normal_forms
            .iter()
            .map(|((s, arrows), nf)| {
                let t = arrows.last().map_or(*s, |&a| q.arrow(a).target);
                ((t, arrows.iter().rev().copied().collect()), nf.clone())
            })
            .collect();
        Self::assemble(
            self.field.clone(),
            self.presentation.opposite(),
            basis,
            products,
            normal_forms,
        )
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn presentation(&self) -> &BoundPresentation {
        &self.presentation
    }

    pub fn quiver(&self) -> &Quiver {
        &self.presentation.quiver
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.presentation.quiver.vertex_count()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    /// Basis elements of `e_i Λ e_j`, i.e. path classes from `i` to `j`.
    pub fn block(&self, i: usize, j: usize) -> &[usize] {
        &self.blocks[i * self.vertex_count() + j]
    }

    /// Position of a basis element inside its block.
    pub fn block_pos(&self, b: usize) -> usize {
        self.block_pos[b]
    }

    pub fn product(&self, x: usize, y: usize) -> &SparseVec<F> {
        &self.products[x * self.dim() + y]
    }

    pub fn arrow_basis(&self, a: usize) -> usize {
        self.arrow_basis[a]
    }

    pub fn vertex_basis(&self, v: usize) -> usize {
        self.vertex_basis[v]
    }

    /// Normal form of a path shorter than the cap; longer paths are zero.
    pub fn reduce_path(&self, source: usize, arrows: &[usize]) -> SparseVec<F> {
        self.normal_forms
            .get(&(source, arrows.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    /// Product of block elements `x ∈ e_iΛe_j` and `y ∈ e_jΛe_k`, in block
    /// coordinates of `e_iΛe_k`.
    pub fn multiply_blocks(&self, i: usize, j: usize, k: usize, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.block(i, k).len()];
        for (bx, cx) in self.block(i, j).iter().zip(x) {
            if f.is_zero(cx) {
                continue;
            }
            for (by, cy) in self.block(j, k).iter().zip(y) {
                if f.is_zero(cy) {
                    continue;
                }
                let c = f.mul(cx, cy);
                for (b, v) in self.product(*bx, *by) {
                    let pos = self.block_pos[*b];
                    out[pos] = f.add(&out[pos], &f.mul(&c, v));
                }
            }
        }
        out
    }

    pub fn is_radical_square_zero(&self) -> bool {
        self.dim() == self.vertex_count() + self.quiver().arrow_count()
    }

    /// Largest path length among basis labels, plus one.
    pub fn loewy_bound(&self) -> usize {
        self.basis.iter().map(|b| b.len()).max().unwrap_or(0) + 1
    }
}
