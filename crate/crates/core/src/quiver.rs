//! Finite quivers, separated quivers and Dynkin/Euclidean classification of
//! their underlying graphs.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// A finite directed multigraph with named vertices and arrows.
///
/// Loops and parallel arrows are allowed. Vertices and arrows are addressed by
/// their position; ids are only used at the boundary.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds a quiver from vertex ids and `(arrow id, source id, target id)`.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.as_str(), i).is_some() {
                return Err(Error::Quiver(format!("duplicate vertex `{v}`")));
            }
        }
        let mut seen = HashMap::new();
        let mut out = Vec::new();
        for (id, s, t) in arrows {
            let lookup = |v: &str| {
                index
                    .get(v)
                    .copied()
                    .ok_or_else(|| Error::Quiver(format!("arrow `{id}` uses undeclared vertex `{v}`")))
            };
            let source = lookup(&s)?;
            let target = lookup(&t)?;
            if seen.insert(id.clone(), ()).is_some() {
                return Err(Error::Quiver(format!("duplicate arrow `{id}`")));
            }
            out.push(Arrow { id, source, target });
        }
        Ok(Self { vertices, arrows: out })
    }

    pub(crate) fn from_parts(vertices: Vec<String>, arrows: Vec<Arrow>) -> Self {
        Self { vertices, arrows }
    }

    /// The linearly oriented quiver `1 -> 2 -> ... -> n`.
    pub fn linear(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize("a linear quiver needs at least one vertex".into()));
        }
        let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows = (1..n).map(|i| Arrow {
            id: format!("a{i}"),
            source: i - 1,
            target: i,
        });
        Ok(Self::from_parts(vertices, arrows.collect()))
    }

    /// An oriented cycle `1 -> 2 -> ... -> r -> 1`.
    pub fn cyclic(r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidSize("a cyclic quiver needs at least one vertex".into()));
        }
        let vertices: Vec<String> = (1..=r).map(|i| i.to_string()).collect();
        let arrows = (0..r).map(|i| Arrow {
            id: format!("a{}", i + 1),
            source: i,
            target: (i + 1) % r,
        });
        Ok(Self::from_parts(vertices, arrows.collect()))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.arrows_from(v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.arrows_into(v).count()
    }

    /// Same vertices, every arrow reversed.
    pub fn opposite(&self) -> Self {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                id: a.id.clone(),
                source: a.target,
                target: a.source,
            })
            .collect();
        Self::from_parts(self.vertices.clone(), arrows)
    }

    /// Connected components of the underlying undirected graph, each sorted,
    /// ordered by their smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for a in &self.arrows {
            let (x, y) = (find(&mut parent, a.source), find(&mut parent, a.target));
            if x != y {
                parent[x.max(y)] = x.min(y);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            let root = find(&mut parent, v);
            groups.entry(root).or_default().push(v);
        }
        let mut comps: Vec<Vec<usize>> = groups.into_values().collect();
        comps.sort_by_key(|c| c[0]);
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn has_loop(&self) -> bool {
        self.arrows.iter().any(|a| a.source == a.target)
    }

    /// Two arrows with the same source and the same target.
    pub fn has_multiple_arrow(&self) -> bool {
        let mut seen = HashMap::new();
        self.arrows
            .iter()
            .any(|a| seen.insert((a.source, a.target), ()).is_some())
    }

    fn degrees_at_most_one(&self) -> bool {
        (0..self.vertex_count()).all(|v| self.in_degree(v) <= 1 && self.out_degree(v) <= 1)
    }

    /// Linearly oriented `A_n`: a directed path through every vertex.
    pub fn is_linear_an_shape(&self) -> bool {
        self.is_connected()
            && self.degrees_at_most_one()
            && self.arrow_count() + 1 == self.vertex_count()
    }

    /// A single oriented cycle through every vertex (a loop when `n = 1`).
    pub fn is_cyclic_shape(&self) -> bool {
        self.vertex_count() > 0
            && self.is_connected()
            && self.degrees_at_most_one()
            && self.arrow_count() == self.vertex_count()
    }

    /// Graphviz rendering, stable across runs.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph \"{name}\" {{\n");
        for v in &self.vertices {
            out.push_str(&format!("  \"{v}\" [label=\"{v}\"];\n"));
        }
        let mut edges: Vec<(&str, &str, &str)> = self
            .arrows
            .iter()
            .map(|a| (self.vertex_id(a.source), self.vertex_id(a.target), a.id.as_str()))
            .collect();
        edges.sort();
        for (s, t, id) in edges {
            out.push_str(&format!("  \"{s}\" -> \"{t}\" [label=\"{id}\"];\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// The separated quiver together with the "character" of each vertex: the
/// original vertex it was copied from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatedQuiver {
    pub quiver: Quiver,
    /// Original vertex index for every separated vertex.
    pub character: Vec<usize>,
    /// Whether the vertex is a primed copy.
    pub primed: Vec<bool>,
}

impl SeparatedQuiver {
    pub fn same_character(&self, u: usize, v: usize) -> bool {
        self.character[u] == self.character[v]
    }

    /// Whether all vertices of `set` carry pairwise different characters.
    pub fn distinct_characters(&self, set: &[usize]) -> bool {
        let mut seen = HashMap::new();
        set.iter().all(|&v| seen.insert(self.character[v], ()).is_none())
    }
}

/// Vertices `i` and `i'`; an arrow `i -> j'` for every arrow `i -> j`.
pub fn separated_quiver(q: &Quiver) -> SeparatedQuiver {
    let n = q.vertex_count();
    let mut vertices: Vec<String> = q.vertices.clone();
    vertices.extend(q.vertices.iter().map(|v| format!("{v}'")));
    let arrows = q
        .arrows
        .iter()
        .map(|a| Arrow {
            id: a.id.clone(),
            source: a.source,
            target: n + a.target,
        })
        .collect();
    SeparatedQuiver {
        quiver: Quiver::from_parts(vertices, arrows),
        character: (0..2 * n).map(|v| v % n.max(1)).collect(),
        primed: (0..2 * n).map(|v| v >= n).collect(),
    }
}

/// Underlying graph type of a connected component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DiagramType {
    A(usize),
    D(usize),
    E(usize),
    AffineA(usize),
    AffineD(usize),
    AffineE(usize),
    Other,
}

impl DiagramType {
    pub fn is_type_a(&self) -> bool {
        matches!(self, DiagramType::A(_))
    }

    pub fn is_dynkin(&self) -> bool {
        matches!(self, DiagramType::A(_) | DiagramType::D(_) | DiagramType::E(_))
    }

    pub fn is_euclidean(&self) -> bool {
        matches!(
            self,
            DiagramType::AffineA(_) | DiagramType::AffineD(_) | DiagramType::AffineE(_)
        )
    }
}

impl fmt::Display for DiagramType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramType::A(n) => write!(f, "A{n}"),
            DiagramType::D(n) => write!(f, "D{n}"),
            DiagramType::E(n) => write!(f, "E{n}"),
            DiagramType::AffineA(n) => write!(f, "A~{n}"),
            DiagramType::AffineD(n) => write!(f, "D~{n}"),
            DiagramType::AffineE(n) => write!(f, "E~{n}"),
            DiagramType::Other => write!(f, "Other"),
        }
    }
}

/// Classifies every connected component of the underlying graph of `q`.
pub fn component_types(q: &Quiver) -> Vec<(Vec<usize>, DiagramType)> {
    q.components()
        .into_iter()
        .map(|comp| {
            let ty = classify_component(q, &comp);
            (comp, ty)
        })
        .collect()
}

fn classify_component(q: &Quiver, comp: &[usize]) -> DiagramType {
    let local: HashMap<usize, usize> = comp.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = comp.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut edges = 0;
    for a in q.arrows() {
        let (Some(&s), Some(&t)) = (local.get(&a.source), local.get(&a.target)) else {
            continue;
        };
        if s == t {
            return DiagramType::Other;
        }
        adj[s].push(t);
        adj[t].push(s);
        edges += 1;
    }
    let deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    if edges == n {
        return if deg.iter().all(|&d| d == 2) {
            DiagramType::AffineA(n - 1)
        } else {
            DiagramType::Other
        };
    }
    if edges + 1 != n {
        return DiagramType::Other;
    }
    // A tree from here on.
    let high: Vec<usize> = (0..n).filter(|&v| deg[v] >= 3).collect();
    match high.as_slice() {
        [] => DiagramType::A(n),
        [c] if deg[*c] == 4 => {
            if n == 5 {
                DiagramType::AffineD(4)
            } else {
                DiagramType::Other
            }
        }
        [c] if deg[*c] == 3 => {
            let mut arms: Vec<usize> = adj[*c].iter().map(|&nb| arm_length(&adj, *c, nb)).collect();
            arms.sort_unstable();
            match (arms[0], arms[1], arms[2]) {
                (1, 1, k) => DiagramType::D(k + 3),
                (1, 2, 2) => DiagramType::E(6),
                (1, 2, 3) => DiagramType::E(7),
                (1, 2, 4) => DiagramType::E(8),
                (2, 2, 2) => DiagramType::AffineE(6),
                (1, 3, 3) => DiagramType::AffineE(7),
                (1, 2, 5) => DiagramType::AffineE(8),
                _ => DiagramType::Other,
            }
        }
        [x, y] if deg[*x] == 3 && deg[*y] == 3 => {
            let leaves = |c: usize| adj[c].iter().filter(|&&nb| deg[nb] == 1).count();
            if leaves(*x) >= 2 && leaves(*y) >= 2 {
                DiagramType::AffineD(n - 1)
            } else {
                DiagramType::Other
            }
        }
        _ => DiagramType::Other,
    }
}

/// Number of vertices on the arm starting at `start`, walking away from `center`.
fn arm_length(adj: &[Vec<usize>], center: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (center, start, 1);
    loop {
        if adj[cur].len() != 2 {
            return len;
        }
        let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
        prev = cur;
        cur = next;
        len += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn quiver(vs: &[&str], arrows: &[(&str, &str, &str)]) -> Quiver {
        Quiver::new(
            vs.iter().copied(),
            arrows.iter().map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string())),
        )
        .unwrap()
    }

    #[test]
    fn linear_quivers() {
        assert!(Quiver::linear(0).is_err());
        let q1 = Quiver::linear(1).unwrap();
        assert_eq!((q1.vertex_count(), q1.arrow_count()), (1, 0));
        let q2 = Quiver::linear(2).unwrap();
        assert_eq!(q2.arrow(0).source, 0);
        assert_eq!(q2.arrow(0).target, 1);
        assert!(q2.is_linear_an_shape());
        assert!(!q2.has_loop());
        assert_eq!(Quiver::linear(3).unwrap().arrow_count(), 2);
    }

    #[test]
    fn rejects_bad_quivers() {
        assert!(Quiver::new(["1", "1"], []).is_err());
        assert!(Quiver::new(["1"], [("a".into(), "1".into(), "2".into())]).is_err());
        assert!(Quiver::new(
            ["1", "2"],
            [
                ("a".into(), "1".into(), "2".into()),
                ("a".into(), "2".into(), "1".into())
            ]
        )
        .is_err());
    }

    #[test]
    fn separated_quiver_of_a2() {
        let sp = separated_quiver(&Quiver::linear(2).unwrap());
        assert_eq!(sp.quiver.vertices(), &["1", "2", "1'", "2'"]);
        assert_eq!(sp.quiver.arrow_count(), 1);
        let types = component_types(&sp.quiver);
        assert_eq!(
            types,
            vec![
                (vec![0, 3], DiagramType::A(2)),
                (vec![1], DiagramType::A(1)),
                (vec![2], DiagramType::A(1)),
            ]
        );
    }

    #[test]
    fn loop_separates_into_an_a2() {
        let q = quiver(&["1"], &[("x", "1", "1")]);
        let sp = separated_quiver(&q);
        assert_eq!(component_types(&sp.quiver), vec![(vec![0, 1], DiagramType::A(2))]);
        assert!(sp.same_character(0, 1));
    }

    #[test]
    fn shapes_and_predicates() {
        let ce = quiver(&["1", "2", "3"], &[("x", "1", "1"), ("a", "1", "2"), ("b", "1", "3")]);
        assert!(ce.has_loop());
        assert!(!ce.is_linear_an_shape() && !ce.is_cyclic_shape());
        let two_cycle = quiver(&["1", "2"], &[("x", "1", "2"), ("y", "2", "1")]);
        assert!(two_cycle.is_cyclic_shape());
        assert!(!two_cycle.has_multiple_arrow());
        let kronecker = quiver(&["1", "2"], &[("x", "1", "2"), ("y", "1", "2")]);
        assert!(kronecker.has_multiple_arrow());
        assert_eq!(component_types(&kronecker)[0].1, DiagramType::AffineA(1));
        assert!(quiver(&["1"], &[("x", "1", "1")]).is_cyclic_shape());
    }

    #[test]
    fn classifies_small_diagrams() {
        let path3 = quiver(&["1", "2", "3"], &[("a", "1", "2"), ("b", "3", "2")]);
        assert_eq!(component_types(&path3)[0].1, DiagramType::A(3));
        let star = quiver(
            &["c", "1", "2", "3"],
            &[("a", "c", "1"), ("b", "c", "2"), ("d", "3", "c")],
        );
        assert_eq!(component_types(&star)[0].1, DiagramType::D(4));
        let hexagon = quiver(
            &["1", "2", "3", "4", "5", "6"],
            &[
                ("a", "1", "2"),
                ("b", "3", "2"),
                ("c", "3", "4"),
                ("d", "5", "4"),
                ("e", "5", "6"),
                ("f", "1", "6"),
            ],
        );
        assert_eq!(component_types(&hexagon)[0].1, DiagramType::AffineA(5));
        let e6 = quiver(
            &["c", "1", "2", "3", "4", "5"],
            &[("a", "c", "1"), ("b", "c", "2"), ("d", "2", "3"), ("e", "c", "4"), ("f", "4", "5")],
        );
        assert_eq!(component_types(&e6)[0].1, DiagramType::E(6));
        let affine_d5 = quiver(
            &["x", "y", "1", "2", "3", "4"],
            &[("a", "x", "y"), ("b", "x", "1"), ("c", "x", "2"), ("d", "y", "3"), ("e", "y", "4")],
        );
        assert_eq!(component_types(&affine_d5)[0].1, DiagramType::AffineD(5));
        let affine_d4 = quiver(
            &["c", "1", "2", "3", "4"],
            &[("a", "c", "1"), ("b", "c", "2"), ("d", "c", "3"), ("e", "c", "4")],
        );
        assert_eq!(component_types(&affine_d4)[0].1, DiagramType::AffineD(4));
    }

    #[test]
    fn dot_is_sorted() {
        let q = quiver(&["1", "2"], &[("b", "2", "1"), ("a", "1", "2")]);
        let dot = q.to_dot("q");
        let a = dot.find("\"1\" -> \"2\"").unwrap();
        let b = dot.find("\"2\" -> \"1\"").unwrap();
        assert!(a < b);
    }

    fn random_quiver() -> impl Strategy<Value = Quiver> {
        (1usize..7)
            .prop_flat_map(|n| (Just(n), proptest::collection::vec((0..n, 0..n), 0..9)))
            .prop_map(|(n, arrows)| {
                let vs: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
                let arrows = arrows
                    .into_iter()
                    .enumerate()
                    .map(|(k, (s, t))| Arrow { id: format!("a{k}"), source: s, target: t })
                    .collect();
                Quiver::from_parts(vs, arrows)
            })
    }

    fn relabel(q: &Quiver, perm: &[usize]) -> Quiver {
        let mut vertices = vec![String::new(); q.vertex_count()];
        for (v, &p) in perm.iter().enumerate() {
            vertices[p] = q.vertex_id(v).to_string();
        }
        let arrows = q
            .arrows()
            .iter()
            .map(|a| Arrow { id: a.id.clone(), source: perm[a.source], target: perm[a.target] })
            .collect();
        Quiver::from_parts(vertices, arrows)
    }

    proptest! {
        #[test]
        fn separated_quiver_is_bipartite(q in random_quiver()) {
            let sp = separated_quiver(&q);
            let n = q.vertex_count();
            prop_assert_eq!(sp.quiver.vertex_count(), 2 * n);
            prop_assert_eq!(sp.quiver.arrow_count(), q.arrow_count());
            for a in sp.quiver.arrows() {
                prop_assert!(!sp.primed[a.source] && sp.primed[a.target]);
            }
        }

        #[test]
        fn classification_ignores_labels(q in random_quiver(), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut perm: Vec<usize> = (0..q.vertex_count()).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let mut a: Vec<DiagramType> = component_types(&q).into_iter().map(|c| c.1).collect();
            let mut b: Vec<DiagramType> =
                component_types(&relabel(&q, &perm)).into_iter().map(|c| c.1).collect();
            a.sort_by_key(|t| t.to_string());
            b.sort_by_key(|t| t.to_string());
            prop_assert_eq!(a, b);
        }

        #[test]
        fn classified_types_have_expected_counts(q in random_quiver()) {
            for (comp, ty) in component_types(&q) {
                let edges = q
                    .arrows()
                    .iter()
                    .filter(|a| comp.contains(&a.source))
                    .count();
                match ty {
                    DiagramType::A(n) | DiagramType::D(n) | DiagramType::E(n) => {
                        prop_assert_eq!(comp.len(), n);
                        prop_assert_eq!(edges + 1, n);
                    }
                    DiagramType::AffineA(n) => {
                        prop_assert_eq!(comp.len(), n + 1);
                        prop_assert_eq!(edges, n + 1);
                    }
                    DiagramType::AffineD(n) | DiagramType::AffineE(n) => {
                        prop_assert_eq!(comp.len(), n + 1);
                        prop_assert_eq!(edges, n);
                    }
                    DiagramType::Other => {}
                }
            }
        }
    }
}
