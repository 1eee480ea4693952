//! Finite simplicial graphs, links and stars, the link-star preorder and its
//! equivalence classes, component machinery, and graph-symmetry enumeration.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of a vertex inside its owning [`Graph`]. Indices follow canonical
/// name order, so comparing ids compares names.
pub type VertexId = usize;

/// A set of vertices of some graph, always read as the induced subgraph.
pub type VertexSet = BTreeSet<VertexId>;

/// Default ceiling for symmetry enumeration.
pub const SYMMETRY_CEILING: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("self-loop at `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(String, String),
    #[error("edge endpoint `{0}` is not a declared vertex")]
    UnknownEndpoint(String),
    #[error("graph has {0} vertices, above the symmetry-search ceiling of {1}")]
    SymmetryCeiling(usize, usize),
    #[error("vertex sets are not disjoint")]
    NotDisjoint,
    #[error("vertex id {0} out of range")]
    BadVertexId(usize),
    #[error("equivalence class of `{0}` is neither complete nor edgeless")]
    ClassDichotomyViolated(String),
}

/// Shape of the induced subgraph on a link-star equivalence class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassShape {
    Complete,
    Discrete,
}

/// Serialization schema for the graph text format: a `vertices` list and an
/// `edges` list of 2-element lists.
#[derive(Debug, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

/// A finite simplicial graph with named vertices.
///
/// Vertices are stored sorted by name; all set-valued outputs iterate in that
/// canonical order. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Builds a graph from vertex names and edges given as name pairs.
    pub fn new<S: AsRef<str>, T: AsRef<str>>(
        vertices: &[S],
        edges: &[(T, T)],
    ) -> Result<Self, GraphError> {
        let mut names: Vec<String> = vertices.iter().map(|s| s.as_ref().to_owned()).collect();
        names.sort();
        for pair in names.windows(2) {
            if pair[0] == pair[1] {
                return Err(GraphError::DuplicateVertex(pair[0].clone()));
            }
        }
        let index: HashMap<String, VertexId> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        let mut adj = vec![VertexSet::new(); names.len()];
        for (a, b) in edges {
            let a = a.as_ref();
            let b = b.as_ref();
            let ia = *index
                .get(a)
                .ok_or_else(|| GraphError::UnknownEndpoint(a.to_owned()))?;
            let ib = *index
                .get(b)
                .ok_or_else(|| GraphError::UnknownEndpoint(b.to_owned()))?;
            if ia == ib {
                return Err(GraphError::SelfLoop(a.to_owned()));
            }
            if adj[ia].contains(&ib) {
                return Err(GraphError::DuplicateEdge(a.to_owned(), b.to_owned()));
            }
            adj[ia].insert(ib);
            adj[ib].insert(ia);
        }
        Ok(Graph { names, index, adj })
    }

    /// Builds an edgeless graph.
    pub fn discrete<S: AsRef<str>>(vertices: &[S]) -> Result<Self, GraphError> {
        Graph::new::<S, &str>(vertices, &[])
    }

    /// The induced subgraph on a vertex subset, keeping names.
    pub fn induced(&self, s: &VertexSet) -> Result<Graph, GraphError> {
        for &v in s {
            self.check_vertex(v)?;
        }
        let verts: Vec<&str> = s.iter().map(|&v| self.name(v)).collect();
        let mut edges = Vec::new();
        for &u in s {
            for &v in &self.adj[u] {
                if u < v && s.contains(&v) {
                    edges.push((self.name(u), self.name(v)));
                }
            }
        }
        Graph::new(&verts, &edges)
    }

    pub fn from_doc(doc: &GraphDoc) -> Result<Self, GraphError> {
        let edges: Vec<(&str, &str)> = doc
            .edges
            .iter()
            .map(|[a, b]| (a.as_str(), b.as_str()))
            .collect();
        let verts: Vec<&str> = doc.vertices.iter().map(|s| s.as_str()).collect();
        Graph::new(&verts, &edges)
    }

    pub fn to_doc(&self) -> GraphDoc {
        let mut edges = Vec::new();
        for u in self.vertex_ids() {
            for &v in &self.adj[u] {
                if u < v {
                    edges.push([self.names[u].clone(), self.names[v].clone()]);
                }
            }
        }
        GraphDoc {
            vertices: self.names.clone(),
            edges,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vertex_ids(&self) -> std::ops::Range<VertexId> {
        0..self.names.len()
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId, GraphError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(name.to_owned()))
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn names(&self, s: &VertexSet) -> Vec<String> {
        s.iter().map(|&v| self.names[v].clone()).collect()
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v < self.names.len() {
            Ok(())
        } else {
            Err(GraphError::BadVertexId(v))
        }
    }

    pub fn all_vertices(&self) -> VertexSet {
        self.vertex_ids().collect()
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn is_isolated(&self, v: VertexId) -> bool {
        self.adj[v].is_empty()
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.vertex_ids().any(|v| self.is_isolated(v))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Vertices adjacent to `v`.
    pub fn link(&self, v: VertexId) -> Result<&VertexSet, GraphError> {
        self.check_vertex(v)?;
        Ok(&self.adj[v])
    }

    /// Link of `v` together with `v` itself.
    pub fn star(&self, v: VertexId) -> Result<VertexSet, GraphError> {
        self.check_vertex(v)?;
        let mut s = self.adj[v].clone();
        s.insert(v);
        Ok(s)
    }

    /// The link-star preorder: `u <= v` iff `lk(u) ⊆ st(v)`.
    pub fn leq_linkstar(&self, u: VertexId, v: VertexId) -> Result<bool, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.adj[u].iter().all(|&w| w == v || self.adj[v].contains(&w)))
    }

    /// Equivalence class of `v` under the symmetrized link-star order, with the
    /// shape of its induced subgraph. Singleton classes report `Discrete`.
    pub fn ls_class(&self, v: VertexId) -> Result<(VertexSet, ClassShape), GraphError> {
        self.check_vertex(v)?;
        let class: VertexSet = self
            .vertex_ids()
            .filter(|&u| {
                self.leq_linkstar(u, v).unwrap() && self.leq_linkstar(v, u).unwrap()
            })
            .collect();
        let members: Vec<VertexId> = class.iter().copied().collect();
        let mut complete = true;
        let mut edgeless = true;
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if self.adjacent(a, b) {
                    edgeless = false;
                } else {
                    complete = false;
                }
            }
        }
        // The dichotomy is a theorem; failing both branches means a bug.
        if !complete && !edgeless {
            return Err(GraphError::ClassDichotomyViolated(self.names[v].clone()));
        }
        let shape = if members.len() == 1 || edgeless {
            ClassShape::Discrete
        } else {
            ClassShape::Complete
        };
        Ok((class, shape))
    }

    /// `{u : v <= u}` in the link-star order.
    pub fn above_set(&self, v: VertexId) -> Result<VertexSet, GraphError> {
        self.check_vertex(v)?;
        Ok(self
            .vertex_ids()
            .filter(|&u| self.leq_linkstar(v, u).unwrap())
            .collect())
    }

    /// Orders the vertices so that every strictly link-star-greater vertex
    /// comes first; ties broken by name.
    pub fn order_vertices(&self) -> Vec<VertexId> {
        let strictly_greater = |a: VertexId, b: VertexId| {
            self.leq_linkstar(b, a).unwrap() && !self.leq_linkstar(a, b).unwrap()
        };
        let mut remaining: Vec<VertexId> = self.vertex_ids().collect();
        let mut out = Vec::with_capacity(remaining.len());
        while !remaining.is_empty() {
            // Maximal among the remaining, in name order.
            let maximal: Vec<VertexId> = remaining
                .iter()
                .copied()
                .filter(|&v| !remaining.iter().any(|&u| u != v && strictly_greater(u, v)))
                .collect();
            assert!(!maximal.is_empty(), "strict link-star order has a cycle");
            remaining.retain(|v| !maximal.contains(v));
            out.extend(maximal);
        }
        out
    }

    /// Connected components of the induced subgraph on `s`, each sorted,
    /// listed by least vertex.
    pub fn components(&self, s: &VertexSet) -> Result<Vec<VertexSet>, GraphError> {
        for &v in s {
            self.check_vertex(v)?;
        }
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for &start in s {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = VertexSet::new();
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                if !comp.insert(v) {
                    continue;
                }
                for &w in &self.adj[v] {
                    if s.contains(&w) && !comp.contains(&w) {
                        stack.push(w);
                    }
                }
            }
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        Ok(out)
    }

    /// Components of the graph minus the star of `v`.
    pub fn conj_components(&self, v: VertexId) -> Result<Vec<VertexSet>, GraphError> {
        let star = self.star(v)?;
        let rest: VertexSet = self.vertex_ids().filter(|u| !star.contains(u)).collect();
        self.components(&rest)
    }

    /// True iff some edge joins `s1` to `s2`. The sets must be disjoint.
    pub fn adjacent_sets(&self, s1: &VertexSet, s2: &VertexSet) -> Result<bool, GraphError> {
        if s1.intersection(s2).next().is_some() {
            return Err(GraphError::NotDisjoint);
        }
        for &v in s1 {
            self.check_vertex(v)?;
        }
        for &v in s2 {
            self.check_vertex(v)?;
        }
        Ok(s1.iter().any(|&a| self.adj[a].iter().any(|b| s2.contains(b))))
    }

    /// All adjacency-preserving vertex bijections, by backtracking with
    /// degree and class-cardinality pruning. Deterministic order.
    pub fn graph_symmetries(&self) -> Result<Vec<Perm>, GraphError> {
        self.graph_symmetries_with_ceiling(SYMMETRY_CEILING)
    }

    pub fn graph_symmetries_with_ceiling(&self, ceiling: usize) -> Result<Vec<Perm>, GraphError> {
        if self.len() > ceiling {
            return Err(GraphError::SymmetryCeiling(self.len(), ceiling));
        }
        let class_size: Vec<usize> = self
            .vertex_ids()
            .map(|v| self.ls_class(v).unwrap().0.len())
            .collect();
        let candidates: Vec<Vec<VertexId>> = self
            .vertex_ids()
            .map(|v| {
                self.vertex_ids()
                    .filter(|&u| self.degree(u) == self.degree(v) && class_size[u] == class_size[v])
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        let mut image = vec![usize::MAX; self.len()];
        let mut used = vec![false; self.len()];
        self.symmetry_search(0, &candidates, &mut image, &mut used, &mut out);
        Ok(out)
    }

    fn symmetry_search(
        &self,
        v: VertexId,
        candidates: &[Vec<VertexId>],
        image: &mut Vec<VertexId>,
        used: &mut Vec<bool>,
        out: &mut Vec<Perm>,
    ) {
        if v == self.len() {
            out.push(Perm(image.clone()));
            return;
        }
        'cand: for &u in &candidates[v] {
            if used[u] {
                continue;
            }
            for w in 0..v {
                if self.adjacent(v, w) != self.adjacent(u, image[w]) {
                    continue 'cand;
                }
            }
            image[v] = u;
            used[u] = true;
            self.symmetry_search(v + 1, candidates, image, used, out);
            used[u] = false;
            image[v] = usize::MAX;
        }
    }
}

/// A vertex bijection of a graph, stored as the image list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(pub Vec<VertexId>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn apply(&self, v: VertexId) -> VertexId {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self` after `other`: `(other * self)(v) = self(other(v))`.
    pub fn after(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&v| self.0[v]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    /// True iff this bijection preserves adjacency of `g`.
    pub fn is_symmetry_of(&self, g: &Graph) -> bool {
        if self.0.len() != g.len() {
            return false;
        }
        let mut seen = vec![false; g.len()];
        for &x in &self.0 {
            if x >= g.len() || seen[x] {
                return false;
            }
            seen[x] = true;
        }
        g.vertex_ids().all(|u| {
            g.vertex_ids()
                .all(|v| g.adjacent(u, v) == g.adjacent(self.0[u], self.0[v]))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn c4() -> Graph {
        Graph::new(
            &["w", "x", "y", "z"],
            &[("w", "x"), ("x", "y"), ("y", "z"), ("z", "w")],
        )
        .unwrap()
    }

    pub fn k3() -> Graph {
        Graph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap()
    }

    fn set(g: &Graph, names: &[&str]) -> VertexSet {
        names.iter().map(|n| g.vertex(n).unwrap()).collect()
    }

    #[test]
    fn link_and_star() {
        let g = c4();
        let w = g.vertex("w").unwrap();
        assert_eq!(*g.link(w).unwrap(), set(&g, &["x", "z"]));
        assert_eq!(g.star(w).unwrap(), set(&g, &["w", "x", "z"]));

        let free = Graph::discrete(&["a", "b"]).unwrap();
        let a = free.vertex("a").unwrap();
        assert!(free.link(a).unwrap().is_empty());
        assert_eq!(free.star(a).unwrap(), set(&free, &["a"]));
    }

    #[test]
    fn hex_base_links() {
        let g = crate::fixtures::hex_base();
        let y = g.vertex("y").unwrap();
        let s = g.vertex("s").unwrap();
        assert_eq!(*g.link(y).unwrap(), set(&g, &["a", "b", "s", "z"]));
        assert_eq!(g.star(s).unwrap(), set(&g, &["s", "x", "y", "z"]));
    }

    #[test]
    fn linkstar_order() {
        let g = c4();
        let w = g.vertex("w").unwrap();
        let y = g.vertex("y").unwrap();
        assert!(g.leq_linkstar(w, y).unwrap());
        assert!(g.leq_linkstar(w, w).unwrap());

        let hex = crate::fixtures::hex_base();
        let x = hex.vertex("x").unwrap();
        let s = hex.vertex("s").unwrap();
        assert!(hex.leq_linkstar(x, s).unwrap());
        assert!(!hex.leq_linkstar(s, x).unwrap());
    }

    #[test]
    fn classes_and_above() {
        let g = c4();
        let w = g.vertex("w").unwrap();
        let (class, shape) = g.ls_class(w).unwrap();
        assert_eq!(class, set(&g, &["w", "y"]));
        assert_eq!(shape, ClassShape::Discrete);
        assert_eq!(g.above_set(w).unwrap(), set(&g, &["w", "y"]));

        let k = k3();
        let a = k.vertex("a").unwrap();
        let (class, shape) = k.ls_class(a).unwrap();
        assert_eq!(class.len(), 3);
        assert_eq!(shape, ClassShape::Complete);
        assert_eq!(k.above_set(a).unwrap().len(), 3);

        let hex = crate::fixtures::hex_base();
        let z = hex.vertex("z").unwrap();
        assert_eq!(hex.ls_class(z).unwrap().0, set(&hex, &["z"]));
        let x = hex.vertex("x").unwrap();
        // lk(x) = {s} ⊆ st(y) and st(z), so y and z also sit above x.
        assert_eq!(hex.above_set(x).unwrap(), set(&hex, &["s", "x", "y", "z"]));
    }

    #[test]
    fn vertex_ordering() {
        let hex = crate::fixtures::hex_base();
        let order = hex.order_vertices();
        let s = hex.vertex("s").unwrap();
        let x = hex.vertex("x").unwrap();
        let pos = |v| order.iter().position(|&u| u == v).unwrap();
        assert!(pos(s) < pos(x));

        let discrete = Graph::discrete(&["c", "a", "b"]).unwrap();
        let names: Vec<&str> = discrete.order_vertices().iter().map(|&v| discrete.name(v)).collect();
        assert_eq!(names, vec!["a", "b", "c"]);

        // No strictly-smaller vertex may precede a strictly-greater one.
        let g = c4();
        let order = g.order_vertices();
        for (i, &a) in order.iter().enumerate() {
            for &b in &order[i + 1..] {
                let strict = g.leq_linkstar(a, b).unwrap() && !g.leq_linkstar(b, a).unwrap();
                assert!(!strict, "strictly smaller vertex precedes greater");
            }
        }
    }

    #[test]
    fn component_machinery() {
        let g = c4();
        let w = g.vertex("w").unwrap();
        let comps = g.conj_components(w).unwrap();
        assert_eq!(comps, vec![set(&g, &["y"])]);
        assert!(g.components(&VertexSet::new()).unwrap().is_empty());

        let nl = crate::fixtures::notlift_base();
        let v = nl.vertex("v").unwrap();
        let comps = nl.conj_components(v).unwrap();
        assert_eq!(comps.len(), 3);
        let blue = set(&nl, &["v2", "v2b"]);
        let red = set(&nl, &["r1", "r2"]);
        let square = set(&nl, &["v4", "v4b"]);
        assert!(comps.contains(&blue));
        assert!(comps.contains(&red));
        assert!(comps.contains(&square));
    }

    #[test]
    fn adjacency_between_sets() {
        let c8 = crate::fixtures::c8_total();
        let s1 = set(&c8, &["3"]);
        let s2 = set(&c8, &["8", "1", "2"]);
        assert!(c8.adjacent_sets(&s1, &s2).unwrap());

        let two = Graph::discrete(&["a", "b"]).unwrap();
        let sa = set(&two, &["a"]);
        let sb = set(&two, &["b"]);
        assert!(!two.adjacent_sets(&sa, &sb).unwrap());
        assert_eq!(two.adjacent_sets(&sa, &sa), Err(GraphError::NotDisjoint));

        let nl = crate::fixtures::notlift_base();
        let blue = set(&nl, &["v2", "v2b"]);
        let v1 = set(&nl, &["v1"]);
        assert!(nl.adjacent_sets(&blue, &v1).unwrap());
    }

    #[test]
    fn symmetry_enumeration() {
        let g = c4();
        let syms = g.graph_symmetries().unwrap();
        assert_eq!(syms.len(), 8);
        let k = k3();
        assert_eq!(k.graph_symmetries().unwrap().len(), 6);

        // Closed under composition and inverse.
        for a in &syms {
            assert!(syms.contains(&a.inverse()));
            for b in &syms {
                assert!(syms.contains(&a.after(b)));
            }
        }
    }

    #[test]
    fn hex_total_half_turn() {
        let hex = crate::fixtures::hex_total();
        let syms = hex.graph_symmetries().unwrap();
        let pairs = [
            ("x1", "x2"),
            ("p", "q"),
            ("y1", "y2"),
            ("z1", "z2"),
            ("a1", "a2"),
            ("b1", "b2"),
        ];
        let mut image: Vec<VertexId> = (0..hex.len()).collect();
        for (a, b) in pairs {
            let a = hex.vertex(a).unwrap();
            let b = hex.vertex(b).unwrap();
            image[a] = b;
            image[b] = a;
        }
        let half_turn = Perm(image);
        assert!(syms.contains(&half_turn));
    }

    #[test]
    fn symmetry_ceiling() {
        let names: Vec<String> = (0..30).map(|i| format!("v{i:02}")).collect();
        let g = Graph::discrete(&names).unwrap();
        assert!(matches!(
            g.graph_symmetries(),
            Err(GraphError::SymmetryCeiling(30, _))
        ));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            Graph::discrete(&["a", "a"]),
            Err(GraphError::DuplicateVertex(_))
        ));
        assert!(matches!(
            Graph::new(&["a"], &[("a", "a")]),
            Err(GraphError::SelfLoop(_))
        ));
        assert!(matches!(
            Graph::new(&["a", "b"], &[("a", "b"), ("b", "a")]),
            Err(GraphError::DuplicateEdge(_, _))
        ));
        assert!(matches!(
            Graph::new(&["a"], &[("a", "b")]),
            Err(GraphError::UnknownEndpoint(_))
        ));
    }
}
