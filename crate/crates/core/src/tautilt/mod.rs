//! Support τ-tilting pairs, their g-matrices and mutation.
//!
//! Indecomposable τ-rigid modules are interned in a registry keyed by
//! g-vector, each stored in generator coordinates: at every vertex the basis
//! vectors are `g_t · b` for a generator `g_t` and a path class `b`. In those
//! coordinates a homomorphism out of a summand is determined by the images of
//! its generators, which is how Hom-spaces are computed:
//! `Hom(X, N) = ker(Hom(P0, N) -> Hom(P1, N))`. The same matrix is onto
//! exactly when `Hom(N, τX) = 0`.
//!
//! Down mutation at `X ∉ Fac U` takes the cokernel of a minimal left
//! `add U`-approximation. Up mutation goes through the opposite algebra,
//! where `(M, P) ↦ (Tr M_np ⊕ P*, M_pr*)` reverses the order.

mod explore;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, RowSpan};
use crate::repmod::{hom_matrix, minimal_projective_presentation, projective, transpose, Presentation, Representation};

pub use explore::{explore, explore_in, explore_presentation, Exploration, ExplorationReport, ExploreOptions, ExploreStatus, HasseGraph};

/// An indecomposable τ-rigid module with cached data for Hom computations.
#[derive(Debug)]
pub struct Summand<F: Field> {
    id: usize,
    module: Representation<F>,
    presentation: Presentation<F>,
    g: Vec<i64>,
    actions: Vec<Matrix<F>>,
    /// Per vertex, the `(generator, basis element)` behind each basis vector.
    spanning: Vec<Vec<(usize, usize)>>,
    /// Position of generator `t` inside `X_{top[t]}`.
    generator_pos: Vec<usize>,
    rad_end: OnceLock<Result<Vec<Vec<F::Elem>>, String>>,
}

const UNREGISTERED: usize = usize::MAX;

impl<F: Field> Summand<F> {
    /// Rewrites `module` in generator coordinates. The module must be
    /// nonzero; indecomposability is the caller's responsibility.
    pub fn new(module: &Representation<F>) -> Result<Self> {
        let pres = minimal_projective_presentation(module)?;
        let alg = module.algebra();
        let f = module.field();
        let nv = alg.vertex_count();
        let actions = module.basis_actions();
        let mut spanning = vec![Vec::new(); nv];
        let mut bases = Vec::with_capacity(nv);
        for (v, span_v) in spanning.iter_mut().enumerate() {
            let d = module.dims()[v];
            let mut span = RowSpan::new(f, d);
            let mut cols = Vec::with_capacity(d);
            let gens = pres.top.iter().enumerate().filter(|(_, &w)| w == v).map(|(t, _)| (t, alg.vertex_basis(v)));
            let rest = pres.top.iter().enumerate().flat_map(|(t, &w)| {
                alg.block(w, v)
                    .iter()
                    .filter(move |&&b| b != alg.vertex_basis(v))
                    .map(move |&b| (t, b))
            });
            for (t, b) in gens.chain(rest) {
                if span.is_full() {
                    break;
                }
                let col = actions[b].mul_vec(&pres.generators[t]);
                if span.insert(&col) {
                    cols.push(col);
                    span_v.push((t, b));
                }
            }
            if cols.len() != d {
                return Err(Error::Internal("generators do not span the module".into()));
            }
            bases.push(Matrix::from_columns(f, d, &cols));
        }
        let module = module.change_basis(&bases);
        let generator_pos: Vec<usize> = pres
            .top
            .iter()
            .enumerate()
            .map(|(t, &v)| {
                spanning[v]
                    .iter()
                    .position(|&(s, b)| s == t && b == alg.vertex_basis(v))
                    .expect("generators come first")
            })
            .collect();
        let generators = pres
            .top
            .iter()
            .zip(&generator_pos)
            .map(|(&v, &p)| {
                let mut e = vec![f.zero(); module.dims()[v]];
                e[p] = f.one();
                e
            })
            .collect();
        let presentation = Presentation {
            generators,
            ..pres
        };
        let g = presentation.g_vector(nv);
        let actions = module.basis_actions();
        Ok(Self {
            id: UNREGISTERED,
            module,
            presentation,
            g,
            actions,
            spanning,
            generator_pos,
            rad_end: OnceLock::new(),
        })
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn module(&self) -> &Representation<F> {
        &self.module
    }

    pub fn presentation(&self) -> &Presentation<F> {
        &self.presentation
    }

    pub fn g_vector(&self) -> &[i64] {
        &self.g
    }

    pub fn is_projective(&self) -> bool {
        self.presentation.is_projective()
    }

    fn top_len(&self) -> usize {
        self.presentation.top.len()
    }

    /// Offsets of generator images of `self` inside `dst`.
    fn image_offsets(&self, dst: &Summand<F>) -> Vec<usize> {
        let mut off = vec![0];
        for &v in &self.presentation.top {
            off.push(off.last().unwrap() + dst.module.dims()[v]);
        }
        off
    }

    /// Vertex matrix at `v` of the morphism `self -> dst` sending the
    /// generators to the slices of `images`.
    fn vertex_matrix(&self, dst: &Summand<F>, images: &[F::Elem], off: &[usize], v: usize) -> Matrix<F> {
        let f = self.module.field();
        let cols: Vec<Vec<F::Elem>> = self.spanning[v]
            .iter()
            .map(|&(t, b)| dst.actions[b].mul_vec(&images[off[t]..off[t + 1]]))
            .collect();
        Matrix::from_columns(f, dst.module.dims()[v], &cols)
    }

    fn identity_images(&self) -> Vec<F::Elem> {
        let f = self.module.field();
        let mut out = Vec::new();
        for (t, &v) in self.presentation.top.iter().enumerate() {
            let mut e = vec![f.zero(); self.module.dims()[v]];
            e[self.generator_pos[t]] = f.one();
            out.extend(e);
        }
        out
    }
}

/// `Hom(src, dst)` as generator images, and whether `Hom(dst, τ src) = 0`.
#[derive(Debug)]
pub struct HomData<F: Field> {
    pub basis: Matrix<F>,
    pub tau_vanishes: bool,
}

fn compute_hom<F: Field>(src: &Summand<F>, dst: &Summand<F>) -> HomData<F> {
    let phi = hom_matrix(&src.presentation, &dst.module, &dst.actions);
    let basis = phi.kernel();
    let tau_vanishes = phi.cols() - basis.cols() == phi.rows();
    HomData { basis, tau_vanishes }
}

/// The radical of `End(X)` as generator images, assuming a local
/// endomorphism ring with residue field the ground field.
fn radical_of_end<F: Field>(x: &Summand<F>, end: &Matrix<F>) -> Result<Vec<Vec<F::Elem>>, String> {
    let f = x.module.field();
    let top = x.top_len();
    let inv_top = f.from_i64(top as i64);
    if f.is_zero(&inv_top) {
        return Err("top length divisible by the characteristic".into());
    }
    let inv_top = f.inv(&inv_top);
    let id = x.identity_images();
    let off = x.image_offsets(x);
    let mut span = RowSpan::new(f, id.len());
    let mut out = Vec::new();
    for c in 0..end.cols() {
        let col = end.column(c);
        let mut tr = f.zero();
        for t in 0..top {
            tr = f.add(&tr, &col[off[t] + x.generator_pos[t]]);
        }
        let lambda = f.mul(&tr, &inv_top);
        let shifted: Vec<F::Elem> = col.iter().zip(&id).map(|(a, e)| f.sub(a, &f.mul(&lambda, e))).collect();
        if span.insert(&shifted) {
            out.push(shifted);
        }
    }
    if out.len() + 1 != end.cols() {
        return Err(format!(
            "endomorphism ring of dimension {} is not local with residue field the ground field",
            end.cols()
        ));
    }
    Ok(out)
}

/// A support τ-tilting pair `(M, P)`: summand ids of `M` (sorted) and the
/// vertices of `P` (sorted).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TauTiltingPair {
    pub modules: Vec<usize>,
    pub projectives: Vec<usize>,
}

impl TauTiltingPair {
    pub fn len(&self) -> usize {
        self.modules.len() + self.projectives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Columns are g-vectors of the module summands followed by `-e_i` for the
/// projective part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GMatrix(pub Vec<Vec<i64>>);

impl GMatrix {
    /// Columns sorted lexicographically; identifies the pair.
    pub fn canonical_key(&self) -> Vec<Vec<i64>> {
        let mut cols = self.0.clone();
        cols.sort();
        cols
    }

    pub fn determinant(&self) -> i128 {
        let n = self.0.len();
        if n == 0 {
            return 1;
        }
        // Bareiss fraction-free elimination on the transpose
        let mut a: Vec<Vec<i128>> = self.0.iter().map(|c| c.iter().map(|&x| x as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                let Some(swap) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                    return 0;
                };
                a.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
                a[i][k] = 0;
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs() == 1
    }
}

/// Whether a mutation moved down (to a smaller torsion class) or up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Down,
    Up,
}

/// The summand replacing the mutated one.
#[derive(Debug)]
pub(crate) enum Replacement<F: Field> {
    Known(usize),
    Fresh(Summand<F>),
    Projective(usize),
}

#[derive(Debug, Default)]
struct Registry<F: Field> {
    list: Vec<Arc<Summand<F>>>,
    by_g: HashMap<Vec<i64>, usize>,
}

/// Shared state for mutation over one algebra: the summand registry and a
/// Hom cache between registered summands.
#[derive(Debug)]
pub struct TauTiltingContext<F: Field> {
    alg: Arc<Algebra<F>>,
    registry: RwLock<Registry<F>>,
    homs: Mutex<HashMap<(usize, usize), Arc<HomData<F>>>>,
    hom_cache_limit: usize,
    op: OnceLock<Box<TauTiltingContext<F>>>,
}

/// Default bound on cached Hom spaces.
pub const HOM_CACHE_LIMIT: usize = 1_500_000;

impl<F: Field> TauTiltingContext<F> {
    pub fn new(alg: Arc<Algebra<F>>) -> Self {
        Self {
            alg,
            registry: RwLock::new(Registry {
                list: Vec::new(),
                by_g: HashMap::new(),
            }),
            homs: Mutex::new(HashMap::new()),
            hom_cache_limit: HOM_CACHE_LIMIT,
            op: OnceLock::new(),
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.alg
    }

    pub fn rank(&self) -> usize {
        self.alg.vertex_count()
    }

    pub fn summand(&self, id: usize) -> Arc<Summand<F>> {
        Arc::clone(&self.registry.read().unwrap().list[id])
    }

    pub fn summand_count(&self) -> usize {
        self.registry.read().unwrap().list.len()
    }

    pub fn lookup(&self, g: &[i64]) -> Option<usize> {
        self.registry.read().unwrap().by_g.get(g).copied()
    }

    /// Registers a summand, returning the existing id for a known g-vector.
    pub(crate) fn insert(&self, mut s: Summand<F>) -> usize {
        let mut reg = self.registry.write().unwrap();
        if let Some(&id) = reg.by_g.get(&s.g) {
            return id;
        }
        let id = reg.list.len();
        s.id = id;
        reg.by_g.insert(s.g.clone(), id);
        reg.list.push(Arc::new(s));
        id
    }

    /// Registers an indecomposable τ-rigid module.
    pub fn intern(&self, module: &Representation<F>) -> Result<usize> {
        let s = Summand::new(module)?;
        if let Some(id) = self.lookup(&s.g) {
            return Ok(id);
        }
        Ok(self.insert(s))
    }

    pub(crate) fn resolve(&self, r: Replacement<F>) -> Replacement<F> {
        match r {
            Replacement::Fresh(s) => Replacement::Known(self.insert(s)),
            other => other,
        }
    }

    fn hom(&self, src: &Summand<F>, dst: &Summand<F>) -> Arc<HomData<F>> {
        if src.id == UNREGISTERED || dst.id == UNREGISTERED {
            return Arc::new(compute_hom(src, dst));
        }
        let key = (src.id, dst.id);
        if let Some(h) = self.homs.lock().unwrap().get(&key) {
            return Arc::clone(h);
        }
        let h = Arc::new(compute_hom(src, dst));
        let mut cache = self.homs.lock().unwrap();
        if cache.len() < self.hom_cache_limit {
            cache.insert(key, Arc::clone(&h));
        }
        h
    }

    fn rad_end(&self, x: &Summand<F>) -> Result<Vec<Vec<F::Elem>>> {
        x.rad_end
            .get_or_init(|| radical_of_end(x, &self.hom(x, x).basis))
            .clone()
            .map_err(Error::Internal)
    }

    /// `(Λ, 0)`.
    pub fn initial_pair(&self) -> Result<TauTiltingPair> {
        let mut modules = (0..self.rank())
            .map(|i| self.intern(&projective(&self.alg, i)))
            .collect::<Result<Vec<_>>>()?;
        modules.sort_unstable();
        Ok(TauTiltingPair {
            modules,
            projectives: Vec::new(),
        })
    }

    /// `(0, Λ)`.
    pub fn final_pair(&self) -> TauTiltingPair {
        TauTiltingPair {
            modules: Vec::new(),
            projectives: (0..self.rank()).collect(),
        }
    }

    pub fn g_matrix(&self, pair: &TauTiltingPair) -> GMatrix {
        let n = self.rank();
        let mut cols: Vec<Vec<i64>> = pair.modules.iter().map(|&id| self.summand(id).g.clone()).collect();
        for &i in &pair.projectives {
            let mut e = vec![0; n];
            e[i] = -1;
            cols.push(e);
        }
        GMatrix(cols)
    }

    pub fn key(&self, pair: &TauTiltingPair) -> Vec<Vec<i64>> {
        self.g_matrix(pair).canonical_key()
    }

    /// Whether the top of `x` is generated by maps from the given summands.
    fn generated_by(&self, x: &Summand<F>, sources: &[Arc<Summand<F>>]) -> bool {
        let f = self.alg.field();
        let mut span = RowSpan::new(f, x.top_len());
        for u in sources {
            let h = self.hom(u, x);
            let off = u.image_offsets(x);
            for c in 0..h.basis.cols() {
                let col = h.basis.column(c);
                for (t, &v) in u.presentation.top.iter().enumerate() {
                    let img = &col[off[t]..off[t + 1]];
                    let mut top = vec![f.zero(); x.top_len()];
                    let mut nonzero = false;
                    for (s, &w) in x.presentation.top.iter().enumerate() {
                        if w == v {
                            top[s] = img[x.generator_pos[s]].clone();
                            nonzero |= !f.is_zero(&top[s]);
                        }
                    }
                    if nonzero {
                        span.insert(&top);
                        if span.is_full() {
                            return true;
                        }
                    }
                }
            }
        }
        span.is_full()
    }

    /// `Fac M1 ⊆ Fac M2`, the order on support τ-tilting pairs.
    pub fn leq(&self, a: &TauTiltingPair, b: &TauTiltingPair) -> bool {
        let sources: Vec<Arc<Summand<F>>> = b.modules.iter().map(|&id| self.summand(id)).collect();
        a.modules.iter().all(|&id| {
            let x = self.summand(id);
            self.generated_by(&x, &sources)
        })
    }

    /// Down mutation at module position `k`, or `None` when `X ∈ Fac U`.
    pub(crate) fn down_mutation(&self, pair: &TauTiltingPair, k: usize) -> Result<Option<Replacement<F>>> {
        self.down_mutation_bounded(pair, k, usize::MAX)
    }

    /// As `down_mutation`, failing with `Error::Budget` when the
    /// approximating module would exceed `max_dim`.
    pub(crate) fn down_mutation_bounded(
        &self,
        pair: &TauTiltingPair,
        k: usize,
        max_dim: usize,
    ) -> Result<Option<Replacement<F>>> {
        let f = self.alg.field();
        let x = self.summand(pair.modules[k]);
        let others: Vec<Arc<Summand<F>>> = pair
            .modules
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, &id)| self.summand(id))
            .collect();
        if self.generated_by(&x, &others) {
            return Ok(None);
        }
        let x_top = &x.presentation.top;
        let homs_from_x: Vec<Arc<HomData<F>>> = others.iter().map(|u| self.hom(&x, u)).collect();

        // a minimal left add(U)-approximation of X
        let mut chosen: Vec<(usize, Vec<F::Elem>)> = Vec::new();
        for (l, ul) in others.iter().enumerate() {
            let hl = &homs_from_x[l];
            if hl.basis.cols() == 0 {
                continue;
            }
            let off_l = x.image_offsets(ul);
            let mut radical = RowSpan::new(f, hl.basis.rows());
            for (j, uj) in others.iter().enumerate() {
                let hj = &homs_from_x[j];
                if hj.basis.cols() == 0 {
                    continue;
                }
                let psis: Vec<Vec<F::Elem>> = if j == l {
                    self.rad_end(ul)?
                } else {
                    let h = self.hom(uj, ul);
                    (0..h.basis.cols()).map(|c| h.basis.column(c)).collect()
                };
                let off_psi = uj.image_offsets(ul);
                let off_j = x.image_offsets(uj);
                for psi in &psis {
                    let mut at: HashMap<usize, Matrix<F>> = HashMap::new();
                    for &v in x_top {
                        at.entry(v).or_insert_with(|| uj.vertex_matrix(ul, psi, &off_psi, v));
                    }
                    for c in 0..hj.basis.cols() {
                        let phi = hj.basis.column(c);
                        let mut comp = Vec::with_capacity(hl.basis.rows());
                        for (t, &v) in x_top.iter().enumerate() {
                            comp.extend(at[&v].mul_vec(&phi[off_j[t]..off_j[t + 1]]));
                        }
                        radical.insert(&comp);
                    }
                }
            }
            debug_assert_eq!(off_l.last().copied(), Some(hl.basis.rows()));
            for c in 0..hl.basis.cols() {
                let col = hl.basis.column(c);
                if radical.insert(&col) {
                    chosen.push((l, col));
                }
            }
        }

        let nv = self.rank();
        let total: usize = chosen.iter().map(|(l, _)| others[*l].module.dim()).sum();
        if total > max_dim {
            return Err(Error::Budget(format!("approximation of dimension {total} exceeds {max_dim}")));
        }
        let parts: Vec<&Representation<F>> = chosen.iter().map(|(l, _)| &others[*l].module).collect();
        let target = Representation::direct_sum(&self.alg, &parts);
        let approximation: Vec<Matrix<F>> = (0..nv)
            .map(|v| {
                let blocks: Vec<Matrix<F>> = chosen
                    .iter()
                    .map(|(l, col)| x.vertex_matrix(&others[*l], col, &x.image_offsets(&others[*l]), v))
                    .collect();
                let refs: Vec<&Matrix<F>> = blocks.iter().collect();
                Matrix::vstack(f, x.module.dims()[v], &refs)
            })
            .collect();
        let (y, _) = target.cokernel_of(&approximation);
        if y.is_zero() {
            let free: Vec<usize> = (0..nv)
                .filter(|&i| !pair.projectives.contains(&i) && others.iter().all(|u| u.module.dims()[i] == 0))
                .collect();
            return match free.as_slice() {
                [i] => Ok(Some(Replacement::Projective(*i))),
                _ => Err(Error::Internal(format!(
                    "mutation to a projective summand found {} candidate vertices",
                    free.len()
                ))),
            };
        }
        let summand = Summand::new(&y)?;
        Ok(Some(match self.lookup(&summand.g) {
            Some(id) => Replacement::Known(id),
            None => Replacement::Fresh(summand),
        }))
    }

    /// The pair obtained by replacing summand `k` (modules first, then
    /// projectives) with a registered replacement.
    pub(crate) fn replace(&self, pair: &TauTiltingPair, k: usize, r: &Replacement<F>) -> TauTiltingPair {
        let mut modules = pair.modules.clone();
        let mut projectives = pair.projectives.clone();
        if k < modules.len() {
            modules.remove(k);
        } else {
            projectives.remove(k - pair.modules.len());
        }
        match r {
            Replacement::Known(id) => modules.push(*id),
            Replacement::Projective(i) => projectives.push(*i),
            Replacement::Fresh(_) => unreachable!("fresh summands are registered first"),
        }
        modules.sort_unstable();
        projectives.sort_unstable();
        TauTiltingPair { modules, projectives }
    }

    /// Checks the new summand against the rest of the pair: τ-rigidity in
    /// both directions, vanishing on the projective part, size and a
    /// unimodular g-matrix.
    pub(crate) fn validate_replacement(
        &self,
        pair: &TauTiltingPair,
        k: usize,
        r: &Replacement<F>,
    ) -> Result<()> {
        let known;
        let y: &Summand<F> = match r {
            Replacement::Known(id) => {
                known = self.summand(*id);
                &known
            }
            Replacement::Fresh(s) => s,
            Replacement::Projective(i) => {
                let bad = pair
                    .modules
                    .iter()
                    .enumerate()
                    .any(|(j, &id)| j != k && self.summand(id).module.dims()[*i] != 0);
                if bad {
                    return Err(Error::Internal(format!("new projective P({i}) maps to the module part")));
                }
                return Ok(());
            }
        };
        let fail = |what: String| Err(Error::Internal(format!("mutated pair fails validation: {what}")));
        if !self.hom(y, y).tau_vanishes {
            return fail("new summand is not τ-rigid".into());
        }
        for (j, &id) in pair.modules.iter().enumerate() {
            if j == k {
                continue;
            }
            let u = self.summand(id);
            if !self.hom(&u, y).tau_vanishes || !self.hom(y, &u).tau_vanishes {
                return fail(format!("summand {:?} is not compatible with {:?}", y.g, u.g));
            }
        }
        let proj_start = pair.modules.len();
        for (p, &i) in pair.projectives.iter().enumerate() {
            if proj_start + p != k && y.module.dims()[i] != 0 {
                return fail(format!("new summand is supported on the projective vertex {i}"));
            }
        }
        let mut cols = self.g_matrix(pair).0;
        cols[k] = y.g.clone();
        if !GMatrix(cols).is_unimodular() {
            return fail("g-matrix is not unimodular".into());
        }
        Ok(())
    }

    /// Full check that a pair is support τ-tilting.
    pub fn validate_pair(&self, pair: &TauTiltingPair) -> Result<()> {
        let n = self.rank();
        if pair.len() != n {
            return Err(Error::Internal(format!("pair has {} summands, expected {n}", pair.len())));
        }
        let mods: Vec<Arc<Summand<F>>> = pair.modules.iter().map(|&id| self.summand(id)).collect();
        for a in &mods {
            for b in &mods {
                if !self.hom(a, b).tau_vanishes {
                    return Err(Error::Internal(format!("Hom({:?}, τ{:?}) is nonzero", b.g, a.g)));
                }
            }
            for &i in &pair.projectives {
                if a.module.dims()[i] != 0 {
                    return Err(Error::Internal(format!("Hom(P({i}), {:?}) is nonzero", a.g)));
                }
            }
        }
        if !self.g_matrix(pair).is_unimodular() {
            return Err(Error::Internal("g-matrix is not unimodular".into()));
        }
        Ok(())
    }

    fn opposite_context(&self) -> &TauTiltingContext<F> {
        self.op
            .get_or_init(|| Box::new(TauTiltingContext::new(Arc::new(self.alg.opposite()))))
    }

    /// `(M, P) ↦ (Tr M_np ⊕ P*, M_pr*)` over the opposite algebra, together
    /// with the position of each summand's image.
    fn dagger(&self, pair: &TauTiltingPair) -> Result<(TauTiltingPair, Vec<Image>)> {
        let op = self.opposite_context();
        let mut images = Vec::with_capacity(pair.len());
        for &id in &pair.modules {
            let x = self.summand(id);
            if x.is_projective() {
                images.push(Image::Projective(x.presentation.top[0]));
            } else {
                let tr = transpose(&x.module, op.algebra())?;
                images.push(Image::Module(op.intern(&tr)?));
            }
        }
        for &i in &pair.projectives {
            images.push(Image::Module(op.intern(&projective(op.algebra(), i))?));
        }
        let mut modules: Vec<usize> = Vec::new();
        let mut projectives = Vec::new();
        for im in &images {
            match im {
                Image::Module(id) => modules.push(*id),
                Image::Projective(i) => projectives.push(*i),
            }
        }
        modules.sort_unstable();
        projectives.sort_unstable();
        Ok((TauTiltingPair { modules, projectives }, images))
    }

    /// Mutation at summand `k` (modules first, then projectives), going down
    /// when the summand is a module outside `Fac U` and up otherwise.
    pub fn mutate(&self, pair: &TauTiltingPair, k: usize) -> Result<(TauTiltingPair, Direction)> {
        if k >= pair.len() {
            return Err(Error::InvalidSize(format!("summand {k} of a pair with {} summands", pair.len())));
        }
        if k < pair.modules.len() {
            if let Some(r) = self.down_mutation(pair, k)? {
                let r = self.resolve(r);
                return Ok((self.replace(pair, k, &r), Direction::Down));
            }
        }
        let op = self.opposite_context();
        let (dual, images) = self.dagger(pair)?;
        let Image::Module(target) = images[k] else {
            return Err(Error::Internal("up mutation at a summand dual to a projective".into()));
        };
        let pos = dual.modules.iter().position(|&id| id == target).expect("image is in the dual pair");
        let r = op
            .down_mutation(&dual, pos)?
            .ok_or_else(|| Error::Internal("dual summand lies in Fac of the rest".into()))?;
        let back = match op.resolve(r) {
            Replacement::Known(id) => {
                let y = op.summand(id);
                if y.is_projective() {
                    Replacement::Projective(y.presentation.top[0])
                } else {
                    Replacement::Known(self.intern(&transpose(&y.module, &self.alg)?)?)
                }
            }
            Replacement::Projective(i) => Replacement::Known(self.intern(&projective(&self.alg, i))?),
            Replacement::Fresh(_) => unreachable!(),
        };
        Ok((self.replace(pair, k, &back), Direction::Up))
    }
}

enum Image {
    Module(usize),
    Projective(usize),
}

#[cfg(test)]
mod tests;
