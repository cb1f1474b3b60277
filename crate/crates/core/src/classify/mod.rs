//! Rule-based decisions for `T_n(Λ)`: τ-tilting finiteness, silting
//! discreteness, and the two-cycle reduction. Every rule checks its own
//! hypotheses; anything unmatched is `Unknown` and left to the explorer.

mod crosscheck;

use serde::{Deserialize, Serialize};

use crate::algebra::{radical_square_truncation, BoundPresentation, ConstructionTag};
use crate::error::{Error, Result};
use crate::quiver::{component_types, separated_quiver};

pub use crosscheck::{
    crosscheck, parse_corpus, read_corpus, CorpusItem, CrosscheckOptions, CrosscheckReport, ItemReport,
    ShadowReport, TwoCycleReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Conclusion {
    TauFinite,
    TauInfinite,
    SiltingDiscrete,
    NotSiltingDiscrete,
    Unknown,
}

/// Rules R1-R8 decide τ-tilting finiteness, S1-S4 silting discreteness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleId {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    S1,
    S2,
    S3,
    S4,
}

impl RuleId {
    pub const ALL: [RuleId; 12] = [
        RuleId::R1,
        RuleId::R2,
        RuleId::R3,
        RuleId::R4,
        RuleId::R5,
        RuleId::R6,
        RuleId::R7,
        RuleId::R8,
        RuleId::S1,
        RuleId::S2,
        RuleId::S3,
        RuleId::S4,
    ];
}

/// The result a rule rests on, as a short name and a statement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub result: &'static str,
    pub statement: &'static str,
}

/// Fixed provenance per rule; the fallback rules have none.
pub fn provenance(rule: RuleId) -> Option<Provenance> {
    let (result, statement) = match rule {
        RuleId::R1 | RuleId::S1 => (
            "local base algebra",
            "if Λ is local then T_n(Λ) is silting-discrete for every n, in particular τ-tilting finite",
        ),
        RuleId::R2 => (
            "bound on n for nonlocal algebras",
            "if Λ is connected and nonlocal and T_n(Λ) is τ-tilting finite then n ≤ 4",
        ),
        RuleId::R3 => (
            "at least three simples",
            "for n ≥ 3 and a loop-free Λ with at least three vertices, T_n(Λ) is τ-tilting finite \
             exactly when n = 3 and Λ is a Nakayama algebra with radical square zero",
        ),
        RuleId::R4 => (
            "exactly two simples",
            "for n ≥ 3 and a loop-free Λ with two vertices, T_n(Λ) is τ-tilting finite exactly when \
             n = 3 and Λ is Nakayama, or n = 4 and Λ = KA_2",
        ),
        RuleId::R5 => (
            "commutative ladders",
            "T_2(KA_m) is τ-tilting finite exactly when m ≤ 4",
        ),
        RuleId::R6 => (
            "separated quiver obstruction",
            "for a loop-free Λ, T_2(Λ) is τ-tilting infinite when some component of the separated \
             quiver of Λ is not of type A",
        ),
        RuleId::R7 => (
            "triple tensor products",
            "a tensor product of three nonlocal algebras is τ-tilting infinite, and T_2(Γ⊗Σ) is one \
             when Γ and Σ are nonlocal",
        ),
        RuleId::S2 => (
            "radical-square-zero linear Nakayama algebras",
            "for the radical-square-zero linear Nakayama algebra with r simples, T_n is \
             silting-discrete exactly when n = 1, when r = 1, when n = 2 and r ≤ 4, or when r = 2 \
             and n ≤ 4",
        ),
        RuleId::S3 => (
            "tensoring with a local algebra",
            "if Λ' is silting-discrete and R is local then R⊗Λ' is silting-discrete",
        ),
        RuleId::R8 | RuleId::S4 => return None,
    };
    Some(Provenance { result, statement })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub conclusion: Conclusion,
    pub rule: RuleId,
    pub provenance: Option<Provenance>,
    /// Reductions applied before the rule fired.
    pub reductions: Vec<String>,
}

impl Verdict {
    fn new(conclusion: Conclusion, rule: RuleId) -> Self {
        Self {
            conclusion,
            rule,
            provenance: if conclusion == Conclusion::Unknown { None } else { provenance(rule) },
            reductions: Vec::new(),
        }
    }

    fn tau(finite: bool, rule: RuleId) -> Self {
        Self::new(if finite { Conclusion::TauFinite } else { Conclusion::TauInfinite }, rule)
    }

    fn silting(discrete: bool, rule: RuleId) -> Self {
        Self::new(
            if discrete { Conclusion::SiltingDiscrete } else { Conclusion::NotSiltingDiscrete },
            rule,
        )
    }
}

/// A replacement algebra with the same support τ-tilting poset for `T_n`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub presentation: BoundPresentation,
    pub note: String,
}

/// For a cyclic Nakayama algebra with exactly two simples, `T_n(Λ)` and
/// `T_n(Λ/rad²Λ)` have isomorphic support τ-tilting posets.
pub fn reduce_two_cycle(p: &BoundPresentation, n: usize) -> Option<Reduction> {
    if p.vertex_count() != 2 || !p.quiver.is_cyclic_shape() {
        return None;
    }
    Some(Reduction {
        presentation: radical_square_truncation(p),
        note: format!(
            "replaced Λ by Λ/rad²Λ: T_{n} of a cyclic Nakayama algebra with two simples has the support \
             τ-tilting poset of T_{n} of its radical-square truncation"
        ),
    })
}

fn check_hypotheses(p: &BoundPresentation, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Hypothesis("n must be at least 1".into()));
    }
    if p.vertex_count() == 0 {
        return Err(Error::Hypothesis("the algebra has no vertices".into()));
    }
    if !p.quiver.is_connected() {
        return Err(Error::Hypothesis("the algebra is not connected".into()));
    }
    p.validate()
}

/// Number of nonlocal tensor factors recorded by the construction tags,
/// counting an untagged algebra as one factor.
fn nonlocal_factors(p: &BoundPresentation) -> usize {
    match &p.tag {
        Some(ConstructionTag::Tensor { factors }) => factors.iter().map(nonlocal_factors).sum(),
        Some(ConstructionTag::TriangularMatrix { base, n }) => nonlocal_factors(base) + usize::from(*n >= 2),
        _ => usize::from(!p.is_local()),
    }
}

/// Checks that a tensor-shaped tag matches the presentation.
fn tag_consistent(p: &BoundPresentation) -> Result<bool> {
    let (vertices, dim) = match &p.tag {
        Some(ConstructionTag::Tensor { factors }) => {
            let mut v = 1;
            let mut d = 1;
            for f in factors {
                v *= f.vertex_count();
                d *= f.dimension()?;
            }
            (v, d)
        }
        Some(ConstructionTag::TriangularMatrix { base, n }) => {
            (base.vertex_count() * n, base.dimension()? * n * (n + 1) / 2)
        }
        _ => return Ok(true),
    };
    Ok(vertices == p.vertex_count() && dim == p.dimension()?)
}

/// Decides τ-tilting finiteness of `T_n(Λ)` by the first matching rule.
pub fn classify_tn_tau_finiteness(p: &BoundPresentation, n: usize) -> Result<Verdict> {
    check_hypotheses(p, n)?;
    if let Some(red) = reduce_two_cycle(p, n) {
        let mut v = tau_rules(&red.presentation, n)?;
        v.reductions.insert(0, red.note);
        return Ok(v);
    }
    tau_rules(p, n)
}

fn tau_rules(p: &BoundPresentation, n: usize) -> Result<Verdict> {
    let q = &p.quiver;
    let vertices = q.vertex_count();
    let loops = q.has_loop();
    if p.is_local() {
        return Ok(Verdict::tau(true, RuleId::R1));
    }
    if n >= 5 {
        return Ok(Verdict::tau(false, RuleId::R2));
    }
    if n >= 3 && vertices >= 3 && !loops {
        let finite = n == 3 && p.is_nakayama() && p.is_radical_square_zero()?;
        return Ok(Verdict::tau(finite, RuleId::R3));
    }
    if n >= 3 && vertices == 2 && !loops {
        let finite = (n == 3 && p.is_nakayama()) || (n == 4 && p.is_path_algebra_an()?);
        return Ok(Verdict::tau(finite, RuleId::R4));
    }
    if n == 2 && p.is_path_algebra_an()? {
        return Ok(Verdict::tau(vertices <= 4, RuleId::R5));
    }
    if n == 2 && !loops {
        let sep = separated_quiver(q);
        if component_types(&sep.quiver).iter().any(|(_, ty)| !ty.is_type_a()) {
            return Ok(Verdict::tau(false, RuleId::R6));
        }
    }
    if n == 2 && nonlocal_factors(p) >= 2 {
        if !tag_consistent(p)? {
            return Err(Error::Hypothesis("construction tag does not match the presentation".into()));
        }
        return Ok(Verdict::tau(false, RuleId::R7));
    }
    Ok(Verdict::new(Conclusion::Unknown, RuleId::R8))
}

/// The table for radical-square-zero linear Nakayama algebras with `r`
/// simples.
pub fn silting_discrete_table(r: usize, n: usize) -> bool {
    n == 1 || r == 1 || (n == 2 && 1 < r && r <= 4) || (1 < n && n <= 4 && r == 2)
}

/// Decides silting discreteness of `T_n(Λ)`.
pub fn classify_silting_discreteness(p: &BoundPresentation, n: usize) -> Result<Verdict> {
    check_hypotheses(p, n)?;
    if p.is_local() {
        return Ok(Verdict::silting(true, RuleId::S1));
    }
    if p.quiver.is_linear_an_shape() && p.is_radical_square_zero()? {
        return Ok(Verdict::silting(silting_discrete_table(p.vertex_count(), n), RuleId::S2));
    }
    if let Some(ConstructionTag::Tensor { factors }) = &p.tag {
        if let [a, b] = factors.as_slice() {
            let other = match (a.is_local(), b.is_local()) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            };
            if let Some(other) = other {
                if tag_consistent(p)? && other.quiver.is_connected() {
                    let inner = classify_silting_discreteness(other, n)?;
                    if inner.conclusion == Conclusion::SiltingDiscrete {
                        let mut v = Verdict::silting(true, RuleId::S3);
                        v.reductions.push(format!("inner factor decided by rule {:?}", inner.rule));
                        return Ok(v);
                    }
                }
            }
        }
    }
    Ok(Verdict::new(Conclusion::Unknown, RuleId::S4))
}

#[cfg(test)]
mod tests;
