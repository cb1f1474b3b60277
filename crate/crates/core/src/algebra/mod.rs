//! Bound quiver presentations and the constructions used throughout the crate:
//! tensor products, triangular matrix algebras, radical-square truncations,
//! Nakayama and truncated polynomial algebras.

mod compute;
pub mod format;

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{Coeff, FieldSpec, PrimeField, Rationals};
use crate::quiver::{Arrow, Quiver};

pub use compute::{Algebra, BasisElement, SparseVec};

/// A formal linear combination of parallel paths, each of length at least 2.
/// Paths are arrow index sequences read left to right (`a.b` is `a` then `b`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub terms: Vec<(Coeff, Vec<usize>)>,
}

impl Relation {
    pub fn monomial(path: Vec<usize>) -> Self {
        Self {
            terms: vec![(Coeff::from_integer(1), path)],
        }
    }

    /// Merges repeated paths and drops zero coefficients.
    pub fn normalized(&self) -> Self {
        let mut acc: BTreeMap<Vec<usize>, Coeff> = BTreeMap::new();
        for (c, p) in &self.terms {
            *acc.entry(p.clone()).or_insert_with(|| Coeff::from_integer(0)) += *c;
        }
        let mut terms: Vec<(Coeff, Vec<usize>)> = Vec::new();
        for (p, c) in acc {
            if *c.numer() != 0 {
                terms.push((c, p));
            }
        }
        // keep the caller's term order where possible
        let order: Vec<&Vec<usize>> = self.terms.iter().map(|(_, p)| p).collect();
        terms.sort_by_key(|(_, p)| order.iter().position(|q| *q == p));
        Self { terms }
    }

    pub fn min_length(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }

    pub fn max_length(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).max().unwrap_or(0)
    }

    fn reversed(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(c, p)| (*c, p.iter().rev().copied().collect()))
                .collect(),
        }
    }
}

/// How a presentation was produced, for rules that cannot be read off a raw
/// presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstructionTag {
    TriangularMatrix { base: Box<BoundPresentation>, n: usize },
    Tensor { factors: Vec<BoundPresentation> },
    RadSquareTruncation { base: Box<BoundPresentation> },
}

/// A quiver with admissible relations; every path of length `cap` or more is
/// zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundPresentation {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub cap: usize,
    pub field: FieldSpec,
    pub tag: Option<ConstructionTag>,
}

impl BoundPresentation {
    pub fn new(quiver: Quiver, relations: Vec<Relation>, cap: usize, field: FieldSpec) -> Result<Self> {
        let pres = Self {
            quiver,
            relations,
            cap,
            field,
            tag: None,
        };
        pres.validate()?;
        Ok(pres)
    }

    pub fn with_field(mut self, field: FieldSpec) -> Self {
        self.field = field;
        self
    }

    pub fn with_tag(mut self, tag: ConstructionTag) -> Self {
        self.tag = Some(tag);
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.field.validate()?;
        if self.cap < 2 {
            return Err(Error::Presentation(format!("cap must be at least 2, got {}", self.cap)));
        }
        for (k, rel) in self.relations.iter().enumerate() {
            let mut ends = None;
            for (_, path) in &rel.terms {
                if path.len() < 2 {
                    return Err(Error::Presentation(format!(
                        "relation {} has a path of length {} (relations must lie in rad^2)",
                        k + 1,
                        path.len()
                    )));
                }
                let (s, t) = self.path_ends(path).ok_or_else(|| {
                    Error::Presentation(format!("relation {} contains a non-composable path", k + 1))
                })?;
                match ends {
                    None => ends = Some((s, t)),
                    Some(e) if e != (s, t) => {
                        return Err(Error::Presentation(format!(
                            "relation {} mixes paths with different endpoints",
                            k + 1
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    /// Source and target of a nonempty arrow sequence, if it composes.
    pub fn path_ends(&self, path: &[usize]) -> Option<(usize, usize)> {
        let first = self.quiver.arrows().get(*path.first()?)?;
        let mut at = first.target;
        for &a in &path[1..] {
            let arrow = self.quiver.arrows().get(a)?;
            if arrow.source != at {
                return None;
            }
            at = arrow.target;
        }
        Some((first.source, at))
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn is_local(&self) -> bool {
        self.quiver.vertex_count() == 1
    }

    pub fn is_nakayama(&self) -> bool {
        self.quiver.is_linear_an_shape() || self.quiver.is_cyclic_shape()
    }

    /// Dimension over the presentation's own field.
    pub fn dimension(&self) -> Result<usize> {
        Ok(match self.field {
            FieldSpec::Prime(p) => Algebra::compute(self, PrimeField::new(p)?)?.dim(),
            FieldSpec::Rationals => Algebra::compute(self, Rationals)?.dim(),
        })
    }

    pub fn is_radical_square_zero(&self) -> Result<bool> {
        Ok(self.dimension()? == self.quiver.vertex_count() + self.quiver.arrow_count())
    }

    /// The path algebra of a linearly oriented `A_n`.
    pub fn is_path_algebra_an(&self) -> Result<bool> {
        let n = self.quiver.vertex_count();
        Ok(self.quiver.is_linear_an_shape() && self.dimension()? == n * (n + 1) / 2)
    }

    /// All paths of exactly the given length.
    pub fn paths_of_length(&self, len: usize) -> Vec<Vec<usize>> {
        let q = &self.quiver;
        let mut layer: Vec<Vec<usize>> = (0..q.arrow_count()).map(|a| vec![a]).collect();
        if len == 0 {
            return Vec::new();
        }
        for _ in 1..len {
            let mut next = Vec::new();
            for p in &layer {
                let end = q.arrow(*p.last().unwrap()).target;
                for a in q.arrows_from(end) {
                    let mut np = p.clone();
                    np.push(a);
                    next.push(np);
                }
            }
            layer = next;
        }
        layer
    }

    pub fn opposite(&self) -> Self {
        Self {
            quiver: self.quiver.opposite(),
            relations: self.relations.iter().map(Relation::reversed).collect(),
            cap: self.cap,
            field: self.field,
            tag: None,
        }
    }

    pub fn format_path(&self, path: &[usize]) -> String {
        path.iter()
            .map(|&a| self.quiver.arrow(a).id.as_str())
            .collect::<Vec<_>>()
            .join(".")
    }
}

impl Serialize for BoundPresentation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format::to_text(self))
    }
}

impl<'de> Deserialize<'de> for BoundPresentation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        format::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// Path algebra of the linearly oriented `A_n` quiver.
pub fn path_algebra_linear(n: usize) -> Result<BoundPresentation> {
    BoundPresentation::new(Quiver::linear(n)?, Vec::new(), n.max(2), FieldSpec::default())
}

/// The ground field itself, as a one-vertex presentation.
pub fn ground_field() -> BoundPresentation {
    path_algebra_linear(1).expect("one vertex is a valid size")
}

fn combined_field(a: &BoundPresentation, b: &BoundPresentation) -> Result<FieldSpec> {
    if a.field != b.field {
        return Err(Error::FieldMismatch(a.field.to_string(), b.field.to_string()));
    }
    Ok(a.field)
}

/// Relations of `p` together with its cap paths, which are implicit in the
/// presentation but must be made explicit once the cap grows.
fn relations_with_cap_paths(p: &BoundPresentation) -> Vec<Relation> {
    let mut rels: Vec<Relation> = p.relations.clone();
    let have: HashSet<Vec<usize>> = p
        .relations
        .iter()
        .filter(|r| r.terms.len() == 1)
        .map(|r| r.terms[0].1.clone())
        .collect();
    for path in p.paths_of_length(p.cap) {
        if !have.contains(&path) {
            rels.push(Relation::monomial(path));
        }
    }
    rels
}

/// `A ⊗ B` presented on the product quiver with commutativity relations.
pub fn tensor_product(a: &BoundPresentation, b: &BoundPresentation) -> Result<BoundPresentation> {
    let field = combined_field(a, b)?;
    let (qa, qb) = (&a.quiver, &b.quiver);
    let (na, nb) = (qa.vertex_count(), qb.vertex_count());
    let vid = |i: usize, j: usize| i * nb + j;
    let mut vertices = Vec::with_capacity(na * nb);
    for i in 0..na {
        for j in 0..nb {
            vertices.push(format!("{}_{}", qa.vertex_id(i), qb.vertex_id(j)));
        }
    }
    // (alpha, j) arrows first, then (i, beta)
    let mut arrows = Vec::new();
    let a_arrow = |alpha: usize, j: usize| alpha * nb + j;
    for (alpha, arr) in qa.arrows().iter().enumerate() {
        for j in 0..nb {
            debug_assert_eq!(arrows.len(), a_arrow(alpha, j));
            arrows.push(Arrow {
                id: format!("{}_{}", arr.id, qb.vertex_id(j)),
                source: vid(arr.source, j),
                target: vid(arr.target, j),
            });
        }
    }
    let offset = arrows.len();
    let b_arrow = |i: usize, beta: usize| offset + i * qb.arrow_count() + beta;
    for i in 0..na {
        for arr in qb.arrows() {
            arrows.push(Arrow {
                id: format!("{}_{}", qa.vertex_id(i), arr.id),
                source: vid(i, arr.source),
                target: vid(i, arr.target),
            });
        }
    }
    let mut seen = HashSet::new();
    for arr in &arrows {
        if !seen.insert(arr.id.clone()) {
            return Err(Error::Presentation(format!(
                "tensor product produces the ambiguous arrow id `{}`",
                arr.id
            )));
        }
    }
    let mut vseen = HashSet::new();
    for v in &vertices {
        if !vseen.insert(v.clone()) {
            return Err(Error::Presentation(format!(
                "tensor product produces the ambiguous vertex id `{v}`"
            )));
        }
    }
    let quiver = Quiver::from_parts(vertices, arrows);

    let mut relations = Vec::new();
    for rel in relations_with_cap_paths(a) {
        for j in 0..nb {
            relations.push(Relation {
                terms: rel
                    .terms
                    .iter()
                    .map(|(c, p)| (*c, p.iter().map(|&al| a_arrow(al, j)).collect()))
                    .collect(),
            });
        }
    }
    for rel in relations_with_cap_paths(b) {
        for i in 0..na {
            relations.push(Relation {
                terms: rel
                    .terms
                    .iter()
                    .map(|(c, p)| (*c, p.iter().map(|&be| b_arrow(i, be)).collect()))
                    .collect(),
            });
        }
    }
    for (alpha, aa) in qa.arrows().iter().enumerate() {
        for (beta, bb) in qb.arrows().iter().enumerate() {
            let one = Coeff::from_integer(1);
            relations.push(Relation {
                terms: vec![
                    (one, vec![a_arrow(alpha, bb.source), b_arrow(aa.target, beta)]),
                    (-one, vec![b_arrow(aa.source, beta), a_arrow(alpha, bb.target)]),
                ],
            });
        }
    }
    let pres = BoundPresentation::new(quiver, relations, a.cap + b.cap - 1, field)?;
    Ok(pres.with_tag(ConstructionTag::Tensor {
        factors: vec![a.clone(), b.clone()],
    }))
}

/// `T_n(A) = A ⊗ K A_n`.
pub fn triangular_matrix(a: &BoundPresentation, n: usize) -> Result<BoundPresentation> {
    let an = path_algebra_linear(n)?.with_field(a.field);
    let mut pres = tensor_product(a, &an)?;
    pres.tag = Some(ConstructionTag::TriangularMatrix {
        base: Box::new(a.clone()),
        n,
    });
    Ok(pres)
}

/// Same quiver, all paths of length two declared zero.
pub fn radical_square_truncation(a: &BoundPresentation) -> BoundPresentation {
    let relations = a.paths_of_length(2).into_iter().map(Relation::monomial).collect();
    BoundPresentation {
        quiver: a.quiver.clone(),
        relations,
        cap: 2,
        field: a.field,
        tag: Some(ConstructionTag::RadSquareTruncation {
            base: Box::new(a.clone()),
        }),
    }
}

/// Linear or cyclic Nakayama algebra with `r` vertices, every path of length
/// `length_cap` declared zero.
pub fn nakayama(r: usize, cyclic: bool, length_cap: usize) -> Result<BoundPresentation> {
    if length_cap < 2 {
        return Err(Error::Presentation(format!(
            "Nakayama truncation length must be at least 2, got {length_cap}"
        )));
    }
    let quiver = if cyclic { Quiver::cyclic(r)? } else { Quiver::linear(r)? };
    let mut pres = BoundPresentation::new(quiver, Vec::new(), length_cap, FieldSpec::default())?;
    pres.relations = pres.paths_of_length(length_cap).into_iter().map(Relation::monomial).collect();
    Ok(pres)
}

/// `K[x]/(x^m)`.
pub fn truncated_polynomial(m: usize) -> Result<BoundPresentation> {
    if m < 2 {
        return Err(Error::Presentation(format!("K[x]/(x^m) needs m >= 2, got {m}")));
    }
    let quiver = Quiver::new(["1"], [("x".to_string(), "1".to_string(), "1".to_string())])?;
    BoundPresentation::new(quiver, vec![Relation::monomial(vec![0; m])], m, FieldSpec::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(p: &BoundPresentation) -> usize {
        p.dimension().unwrap()
    }

    fn two_cycle(cap: usize) -> BoundPresentation {
        nakayama(2, true, cap).unwrap()
    }

    #[test]
    fn basic_dimensions() {
        assert_eq!(dim(&path_algebra_linear(2).unwrap()), 3);
        assert_eq!(dim(&two_cycle(2)), 4);
        assert_eq!(dim(&truncated_polynomial(2).unwrap()), 2);
        assert_eq!(dim(&nakayama(2, true, 4).unwrap()), 8);
        assert_eq!(dim(&nakayama(2, true, 3).unwrap()), 6);
    }

    #[test]
    fn tensor_dimensions() {
        let a2 = path_algebra_linear(2).unwrap();
        let sq = tensor_product(&a2, &a2).unwrap();
        assert_eq!(sq.quiver.vertex_count(), 4);
        assert_eq!(dim(&sq), 9);
        let te = tensor_product(&truncated_polynomial(2).unwrap(), &a2).unwrap();
        assert_eq!(dim(&te), 6);
        let cube = tensor_product(&sq, &a2).unwrap();
        assert_eq!(cube.quiver.vertex_count(), 8);
        assert_eq!(cube.quiver.arrow_count(), 12);
        assert_eq!(dim(&cube), 27);
    }

    #[test]
    fn triangular_matrix_dimensions() {
        let a2 = path_algebra_linear(2).unwrap();
        assert_eq!(dim(&triangular_matrix(&a2, 2).unwrap()), 9);
        assert_eq!(dim(&triangular_matrix(&ground_field(), 4).unwrap()), 10);
        let ladder = triangular_matrix(&path_algebra_linear(5).unwrap(), 2).unwrap();
        assert_eq!(ladder.vertex_count(), 10);
        assert_eq!(dim(&ladder), 45);
        let a3 = path_algebra_linear(3).unwrap();
        let t1 = triangular_matrix(&a3, 1).unwrap();
        assert_eq!((dim(&t1), t1.vertex_count()), (dim(&a3), a3.vertex_count()));
        // truncation cap of the factor must survive the tensor product
        let c = two_cycle(3);
        assert_eq!(dim(&triangular_matrix(&c, 2).unwrap()), 18);
        let p3 = truncated_polynomial(3).unwrap();
        assert_eq!(dim(&tensor_product(&p3, &p3).unwrap()), 9);
    }

    #[test]
    fn radical_square_truncations() {
        let a3 = path_algebra_linear(3).unwrap();
        let r = radical_square_truncation(&a3);
        assert_eq!(dim(&r), 5);
        assert!(r.is_radical_square_zero().unwrap());
        assert_eq!(dim(&radical_square_truncation(&two_cycle(4))), 4);
        assert_eq!(dim(&radical_square_truncation(&truncated_polynomial(3).unwrap())), 2);
        let twice = radical_square_truncation(&r);
        assert_eq!(dim(&twice), dim(&r));
    }

    #[test]
    fn predicates() {
        let a2 = path_algebra_linear(2).unwrap();
        assert!(a2.is_path_algebra_an().unwrap() && a2.is_nakayama());
        assert!(truncated_polynomial(2).unwrap().is_local());
        let r4 = nakayama(4, false, 2).unwrap();
        assert!(r4.is_nakayama() && r4.is_radical_square_zero().unwrap());
        assert!(!r4.is_path_algebra_an().unwrap());
        assert!(nakayama(3, false, 1).is_err());
    }

    #[test]
    fn rejects_bad_relations() {
        let q = Quiver::linear(3).unwrap();
        let short = BoundPresentation::new(q.clone(), vec![Relation::monomial(vec![0])], 3, FieldSpec::default());
        assert!(short.is_err());
        let bad = BoundPresentation::new(q.clone(), vec![Relation::monomial(vec![1, 0])], 3, FieldSpec::default());
        assert!(bad.is_err());
        let sq = tensor_product(&path_algebra_linear(2).unwrap(), &path_algebra_linear(2).unwrap()).unwrap();
        let mixed = Relation {
            terms: vec![(Coeff::from_integer(1), vec![0, 6]), (Coeff::from_integer(1), vec![1])],
        };
        assert!(BoundPresentation::new(sq.quiver.clone(), vec![mixed], 3, FieldSpec::default()).is_err());
        let a = path_algebra_linear(2).unwrap();
        let b = path_algebra_linear(2).unwrap().with_field(FieldSpec::Rationals);
        assert!(matches!(tensor_product(&a, &b), Err(Error::FieldMismatch(..))));
    }
}
