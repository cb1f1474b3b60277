//! Right modules as quiver representations.
//!
//! A path `a1...ak` acts on a representation as `M_ak ... M_a1`, so arrow
//! matrices are `target x source` and `Hom(P(i), X) = X_i`. `P(i)` is `e_iΛ`
//! with basis the path classes starting at `i`; `I(i)` is `D(Λe_i)`.

mod decompose;
pub mod oracle;
mod present;

use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, RowSpan};

pub use decompose::{certify_local, decompose, decompose_seeded, DECOMPOSE_ATTEMPTS};
pub use present::{
    ar_translate, coker_of_projectives, hom_matrix, hom_via_presentation, minimal_projective_presentation,
    transpose, Presentation,
};

/// A module morphism as one matrix per vertex.
pub type Morphism<F> = Vec<Matrix<F>>;

#[derive(Clone, Debug)]
pub struct Representation<F: Field> {
    alg: Arc<Algebra<F>>,
    dims: Vec<usize>,
    maps: Vec<Matrix<F>>,
}

impl<F: Field> Representation<F> {
    /// Checks matrix shapes and that every relation acts as zero.
    pub fn new(alg: &Arc<Algebra<F>>, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Result<Self> {
        let q = alg.quiver();
        if dims.len() != q.vertex_count() || maps.len() != q.arrow_count() {
            return Err(Error::Representation(format!(
                "expected {} dimensions and {} matrices, got {} and {}",
                q.vertex_count(),
                q.arrow_count(),
                dims.len(),
                maps.len()
            )));
        }
        for (a, (arrow, m)) in q.arrows().iter().zip(&maps).enumerate() {
            if m.rows() != dims[arrow.target] || m.cols() != dims[arrow.source] {
                return Err(Error::Representation(format!(
                    "matrix of arrow {} is {}x{}, expected {}x{}",
                    q.arrow(a).id,
                    m.rows(),
                    m.cols(),
                    dims[arrow.target],
                    dims[arrow.source]
                )));
            }
        }
        let rep = Self::from_parts(alg, dims, maps);
        rep.check_relations()?;
        Ok(rep)
    }

    pub(crate) fn from_parts(alg: &Arc<Algebra<F>>, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Self {
        Self {
            alg: Arc::clone(alg),
            dims,
            maps,
        }
    }

    pub fn zero(alg: &Arc<Algebra<F>>) -> Self {
        let q = alg.quiver();
        let f = alg.field();
        Self::from_parts(
            alg,
            vec![0; q.vertex_count()],
            q.arrows().iter().map(|_| Matrix::zeros(f, 0, 0)).collect(),
        )
    }

    /// Every relation and every path of cap length acts as zero.
    pub fn check_relations(&self) -> Result<()> {
        let pres = self.alg.presentation();
        let f = self.field();
        for (k, rel) in pres.relations.iter().enumerate() {
            let (s, t) = pres.path_ends(&rel.terms[0].1).expect("validated presentation");
            let mut acc = Matrix::zeros(f, self.dims[t], self.dims[s]);
            for (c, path) in &rel.terms {
                acc.add_scaled(&f.from_coeff(c)?, &self.path_action(s, path));
            }
            if !acc.is_zero() {
                return Err(Error::Representation(format!("relation {} does not vanish", k + 1)));
            }
        }
        for path in pres.paths_of_length(pres.cap) {
            let s = pres.quiver.arrow(path[0]).source;
            if !self.path_action(s, &path).is_zero() {
                return Err(Error::Representation(format!(
                    "path {} of cap length does not vanish",
                    pres.format_path(&path)
                )));
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.alg
    }

    pub fn field(&self) -> &F {
        self.alg.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn map(&self, a: usize) -> &Matrix<F> {
        &self.maps[a]
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    /// Action of a path starting at `source`.
    pub fn path_action(&self, source: usize, arrows: &[usize]) -> Matrix<F> {
        let mut acc = Matrix::identity(self.field(), self.dims[source]);
        for &a in arrows {
            acc = self.maps[a].mul(&acc);
        }
        acc
    }

    /// Action of a basis element of the algebra.
    pub fn basis_action(&self, b: usize) -> Matrix<F> {
        let e = &self.alg.basis()[b];
        self.path_action(e.source, &e.arrows)
    }

    /// Actions of all basis elements, indexed by basis index.
    pub fn basis_actions(&self) -> Vec<Matrix<F>> {
        (0..self.alg.dim()).map(|b| self.basis_action(b)).collect()
    }

    /// Action `M_i -> M_j` of an element of `e_iΛe_j` in block coordinates.
    pub fn element_action(&self, actions: &[Matrix<F>], i: usize, j: usize, x: &[F::Elem]) -> Matrix<F> {
        let f = self.field();
        let mut acc = Matrix::zeros(f, self.dims[j], self.dims[i]);
        for (b, c) in self.alg.block(i, j).iter().zip(x) {
            if !f.is_zero(c) {
                acc.add_scaled(c, &actions[*b]);
            }
        }
        acc
    }

    pub fn direct_sum(alg: &Arc<Algebra<F>>, parts: &[&Self]) -> Self {
        let q = alg.quiver();
        let f = alg.field();
        let dims: Vec<usize> = (0..q.vertex_count())
            .map(|v| parts.iter().map(|p| p.dims[v]).sum())
            .collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                let mut m = Matrix::zeros(f, dims[arr.target], dims[arr.source]);
                let (mut r, mut c) = (0, 0);
                for p in parts {
                    m.set_block(r, c, &p.maps[a]);
                    r += p.dims[arr.target];
                    c += p.dims[arr.source];
                }
                m
            })
            .collect();
        Self::from_parts(alg, dims, maps)
    }

    /// The same module in the basis given by the columns of `bases[v]`.
    pub fn change_basis(&self, bases: &[Matrix<F>]) -> Self {
        let inverses: Vec<Matrix<F>> = bases
            .iter()
            .map(|b| b.inverse().expect("change of basis must be invertible"))
            .collect();
        let maps = self
            .alg
            .quiver()
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(arr, m)| inverses[arr.target].mul(&m.mul(&bases[arr.source])))
            .collect();
        Self::from_parts(&self.alg, self.dims.clone(), maps)
    }

    /// Submodule spanned at each vertex by the columns of `spans[v]`, which
    /// must be linearly independent and closed under the arrows.
    pub fn submodule(&self, spans: &[Matrix<F>]) -> Self {
        let lefts: Vec<Matrix<F>> = spans.iter().map(Matrix::left_inverse).collect();
        let maps = self
            .alg
            .quiver()
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(arr, m)| lefts[arr.target].mul(&m.mul(&spans[arr.source])))
            .collect();
        Self::from_parts(&self.alg, spans.iter().map(Matrix::cols).collect(), maps)
    }

    /// Kernel of a morphism `self -> target` with the inclusion matrices.
    pub fn kernel_of(&self, phi: &Morphism<F>) -> (Self, Morphism<F>) {
        let spans: Vec<Matrix<F>> = phi.iter().map(Matrix::kernel).collect();
        (self.submodule(&spans), spans)
    }

    /// Image of a morphism `self -> target`, as a submodule of `target`.
    pub fn image_in(target: &Self, phi: &Morphism<F>) -> Self {
        let spans: Vec<Matrix<F>> = phi.iter().map(Matrix::image).collect();
        target.submodule(&spans)
    }

    /// Cokernel of a morphism `source -> self`, with the projection matrices.
    pub fn cokernel_of(&self, phi: &Morphism<F>) -> (Self, Morphism<F>) {
        let f = self.field();
        let mut projections = Vec::with_capacity(self.dims.len());
        let mut kept = Vec::with_capacity(self.dims.len());
        for (v, m) in phi.iter().enumerate() {
            let d = self.dims[v];
            let mut span = RowSpan::new(f, d);
            span.insert_columns(m);
            let comp = span.complement_indices();
            let image = m.image();
            let mut basis = Matrix::zeros(f, d, d);
            basis.set_block(0, 0, &image);
            for (k, &c) in comp.iter().enumerate() {
                basis.set(c, image.cols() + k, f.one());
            }
            let inv = basis.inverse().expect("image plus complement spans");
            projections.push(inv.block(image.cols(), 0, comp.len(), d));
            kept.push(comp);
        }
        let maps = self
            .alg
            .quiver()
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(arr, m)| {
                projections[arr.target].mul(&m.select_columns(&kept[arr.source]))
            })
            .collect();
        let dims = kept.iter().map(Vec::len).collect();
        (Self::from_parts(&self.alg, dims, maps), projections)
    }

    /// JSON dump: field, dimension vector and row-major arrow matrices.
    pub fn to_json(&self) -> Value {
        let f = self.field();
        let q = self.alg.quiver();
        let cell = |x: &F::Elem| {
            let s = f.format(x);
            s.parse::<i64>().map_or(Value::String(s), Value::from)
        };
        let arrows: serde_json::Map<String, Value> = q
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(arr, m)| {
                let rows: Vec<Value> = (0..m.rows())
                    .map(|r| Value::Array(m.row(r).iter().map(cell).collect()))
                    .collect();
                (arr.id.clone(), Value::Array(rows))
            })
            .collect();
        json!({
            "field": f.spec().to_string(),
            "vertices": q.vertices(),
            "dim_vector": self.dims,
            "arrows": arrows,
        })
    }
}

/// `P(i) = e_iΛ`; at vertex `j` the basis is the path classes from `i` to `j`.
pub fn projective<F: Field>(alg: &Arc<Algebra<F>>, i: usize) -> Representation<F> {
    let q = alg.quiver();
    let f = alg.field();
    let dims: Vec<usize> = (0..q.vertex_count()).map(|j| alg.block(i, j).len()).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            let mut m = Matrix::zeros(f, dims[arr.target], dims[arr.source]);
            let ab = alg.arrow_basis(a);
            for (col, &p) in alg.block(i, arr.source).iter().enumerate() {
                for (b, c) in alg.product(p, ab) {
                    m.set(alg.block_pos(*b), col, c.clone());
                }
            }
            m
        })
        .collect();
    Representation::from_parts(alg, dims, maps)
}

/// `I(i) = D(Λe_i)`; at vertex `j` the dual basis of paths from `j` to `i`.
pub fn injective<F: Field>(alg: &Arc<Algebra<F>>, i: usize) -> Representation<F> {
    let q = alg.quiver();
    let f = alg.field();
    let dims: Vec<usize> = (0..q.vertex_count()).map(|j| alg.block(j, i).len()).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            let mut m = Matrix::zeros(f, dims[arr.target], dims[arr.source]);
            let ab = alg.arrow_basis(a);
            for (row, &y) in alg.block(arr.target, i).iter().enumerate() {
                for (z, c) in alg.product(ab, y) {
                    m.set(row, alg.block_pos(*z), c.clone());
                }
            }
            m
        })
        .collect();
    Representation::from_parts(alg, dims, maps)
}

pub fn simple<F: Field>(alg: &Arc<Algebra<F>>, i: usize) -> Representation<F> {
    let q = alg.quiver();
    let f = alg.field();
    let mut dims = vec![0; q.vertex_count()];
    dims[i] = 1;
    let maps = q
        .arrows()
        .iter()
        .map(|arr| Matrix::zeros(f, dims[arr.target], dims[arr.source]))
        .collect();
    Representation::from_parts(alg, dims, maps)
}

/// The regular module `Λ_Λ = ⊕ P(i)`.
pub fn regular<F: Field>(alg: &Arc<Algebra<F>>) -> Representation<F> {
    let parts: Vec<Representation<F>> = (0..alg.vertex_count()).map(|i| projective(alg, i)).collect();
    Representation::direct_sum(alg, &parts.iter().collect::<Vec<_>>())
}

/// Basis of `Hom(M, N)` from the intertwining equations `N_a φ_s = φ_t M_a`.
pub fn hom_space<F: Field>(m: &Representation<F>, n: &Representation<F>) -> Vec<Morphism<F>> {
    let f = m.field();
    let q = m.alg.quiver();
    let nv = q.vertex_count();
    let mut offset = vec![0; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
    }
    let unknowns = offset[nv];
    if unknowns == 0 {
        return Vec::new();
    }
    let var = |v: usize, r: usize, c: usize| offset[v] + r * m.dims[v] + c;
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for (a, arr) in q.arrows().iter().enumerate() {
        let (s, t) = (arr.source, arr.target);
        let (na, ma) = (&n.maps[a], &m.maps[a]);
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                let mut row = vec![f.zero(); unknowns];
                for k in 0..n.dims[s] {
                    let x = na.get(r, k);
                    if !f.is_zero(x) {
                        let i = var(s, k, c);
                        row[i] = f.add(&row[i], x);
                    }
                }
                for k in 0..m.dims[t] {
                    let x = ma.get(k, c);
                    if !f.is_zero(x) {
                        let i = var(t, r, k);
                        row[i] = f.sub(&row[i], x);
                    }
                }
                if row.iter().any(|x| !f.is_zero(x)) {
                    rows.push(row);
                }
            }
        }
    }
    let system = Matrix::from_rows(f, unknowns, &rows);
    let kernel = system.kernel();
    (0..kernel.cols())
        .map(|j| {
            (0..nv)
                .map(|v| {
                    let data = (0..n.dims[v] * m.dims[v])
                        .map(|k| kernel.get(offset[v] + k, j).clone())
                        .collect();
                    Matrix::from_vec(f, n.dims[v], m.dims[v], data)
                })
                .collect()
        })
        .collect()
}

pub fn compose<F: Field>(psi: &Morphism<F>, phi: &Morphism<F>) -> Morphism<F> {
    psi.iter().zip(phi).map(|(a, b)| a.mul(b)).collect()
}

pub fn is_brick<F: Field>(m: &Representation<F>) -> Result<bool> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    Ok(hom_space(m, m).len() == 1)
}

/// Whether `X` is a quotient of a direct sum of copies of `M`, i.e. the
/// evaluation map `Hom(M, X) ⊗ M -> X` is onto.
pub fn in_fac<F: Field>(m: &Representation<F>, x: &Representation<F>) -> bool {
    let f = m.field();
    let homs = hom_space(m, x);
    (0..x.dims.len()).all(|v| {
        let mut span = RowSpan::new(f, x.dims[v]);
        for phi in &homs {
            span.insert_columns(&phi[v]);
        }
        span.is_full()
    })
}

/// A module morphism given by its vertex matrices is an isomorphism.
pub fn is_invertible_morphism<F: Field>(phi: &Morphism<F>) -> bool {
    phi.iter().all(Matrix::is_invertible)
}

/// Searches `Hom(M, N)` for an isomorphism. Exhaustive over small fields when
/// the search space is small, seeded random combinations otherwise.
pub fn is_isomorphic<F: Field>(m: &Representation<F>, n: &Representation<F>) -> bool {
    use rand::SeedableRng;
    if m.dims != n.dims {
        return false;
    }
    if m.is_zero() {
        return true;
    }
    let homs = hom_space(m, n);
    if homs.is_empty() || homs.len() != hom_space(m, m).len() {
        return false;
    }
    let f = m.field();
    let combine = |coeffs: &[F::Elem]| -> Morphism<F> {
        let mut acc: Morphism<F> = homs[0].iter().map(|x| Matrix::zeros(f, x.rows(), x.cols())).collect();
        for (c, h) in coeffs.iter().zip(&homs) {
            if f.is_zero(c) {
                continue;
            }
            for (a, x) in acc.iter_mut().zip(h) {
                a.add_scaled(c, x);
            }
        }
        acc
    };
    if let Some(elems) = f.elements() {
        let q = elems.len() as u128;
        if q.checked_pow(homs.len() as u32).is_some_and(|total| total <= 1 << 16) {
            let mut digits = vec![0usize; homs.len()];
            loop {
                let coeffs: Vec<F::Elem> = digits.iter().map(|&d| elems[d].clone()).collect();
                if is_invertible_morphism(&combine(&coeffs)) {
                    return true;
                }
                let mut k = 0;
                loop {
                    if k == digits.len() {
                        return false;
                    }
                    digits[k] += 1;
                    if digits[k] < elems.len() {
                        break;
                    }
                    digits[k] = 0;
                    k += 1;
                }
            }
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    (0..64).any(|_| {
        let coeffs: Vec<F::Elem> = homs.iter().map(|_| f.sample(&mut rng)).collect();
        is_invertible_morphism(&combine(&coeffs))
    })
}
