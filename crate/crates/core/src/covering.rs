//! Graph covering maps: validation, fibers, deck group, regularity, the
//! cover-refined order, the closure of component unions, symmetry lifting,
//! voltage-derived covers, and the augmented total graph used for homology.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphDoc, GraphError, Perm, VertexId, VertexSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoverError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("total vertex `{0}` has no image in the map")]
    UnmappedVertex(String),
    #[error("map key `{0}` is not a total vertex")]
    UnknownTotalVertex(String),
    #[error("map value `{0}` is not a base vertex")]
    UnknownBaseVertex(String),
    #[error("not simplicial: edge {{{0}, {1}}} does not map to a base edge")]
    NotSimplicial(String, String),
    #[error("not surjective: base vertex `{0}` has empty fiber")]
    VertexNotCovered(String),
    #[error("not surjective: base edge {{{0}, {1}}} is not covered")]
    EdgeNotCovered(String, String),
    #[error("not a local bijection at `{0}`: link does not map bijectively")]
    NotLocalBijection(String),
    #[error("fiber mates `{0}` and `{1}` are at distance {2} < 3")]
    FiberMatesTooClose(String, String, usize),
    #[error("isolated vertex `{0}` maps to a non-isolated vertex")]
    IsolatedNotPreserved(String),
    #[error("`{0}` is not a base graph symmetry")]
    NotBaseSymmetry(String),
    #[error("vertex set is not a union of components of the complement of st({0})")]
    NotComponentUnion(String),
    #[error("operation requires a regular cover")]
    NotRegular,
    #[error("voltage table does not match the base edges (offender: {0})")]
    BadVoltageTable(String),
}

/// Serialization schema for a cover file: two graph documents and the vertex
/// map from total to base.
#[derive(Debug, Serialize, Deserialize)]
pub struct CoverDoc {
    pub total: GraphDoc,
    pub base: GraphDoc,
    pub map: BTreeMap<String, String>,
}

/// Serialization schema for a voltage file: a base graph, a cyclic group
/// order, and one voltage per oriented base edge.
#[derive(Debug, Serialize, Deserialize)]
pub struct VoltageDoc {
    pub base: GraphDoc,
    pub n: u32,
    pub voltages: Vec<(String, String, u32)>,
}

/// The data behind the closure of one constituent component `B` off a base
/// star: the chosen preimage component `B̃`, for each fiber member `u` the
/// component `C(u, B̃)` of the total graph off st(u) containing `B̃`, their
/// intersection `D`, and the closure `bar = φ(D)`. `pinned` records a fiber
/// member whose component equals `D`, when one exists.
#[derive(Debug, Clone)]
pub struct ClosureBlock {
    pub b_tilde: VertexSet,
    pub fiber_components: Vec<(VertexId, VertexSet)>,
    pub d: VertexSet,
    pub bar: VertexSet,
    pub pinned: Option<VertexId>,
}

/// A validated covering map of graphs, with cached fibers, deck group, and
/// regularity. Immutable after construction.
#[derive(Debug, Clone)]
pub struct CoveringMap {
    pub total: Graph,
    pub base: Graph,
    vmap: Vec<VertexId>,
    fibers: Vec<VertexSet>,
    deck: Vec<Perm>,
    regular: bool,
}

impl CoveringMap {
    /// Builds and fully validates a covering map from a total-name →
    /// base-name assignment.
    pub fn new(
        total: Graph,
        base: Graph,
        assignment: &BTreeMap<String, String>,
    ) -> Result<Self, CoverError> {
        for key in assignment.keys() {
            if total.vertex(key).is_err() {
                return Err(CoverError::UnknownTotalVertex(key.clone()));
            }
        }
        let mut vmap = Vec::with_capacity(total.len());
        for u in total.vertex_ids() {
            let name = total.name(u);
            let target = assignment
                .get(name)
                .ok_or_else(|| CoverError::UnmappedVertex(name.to_owned()))?;
            let v = base
                .vertex(target)
                .map_err(|_| CoverError::UnknownBaseVertex(target.clone()))?;
            vmap.push(v);
        }
        validate_raw(&total, &base, &vmap)?;
        let fibers = (0..base.len())
            .map(|v| total.vertex_ids().filter(|&u| vmap[u] == v).collect())
            .collect();
        let mut cover = CoveringMap {
            total,
            base,
            vmap,
            fibers,
            deck: Vec::new(),
            regular: false,
        };
        cover.deck = cover.lift_symmetry_perm(&Perm::identity(cover.base.len()));
        cover.regular = cover.compute_regular();
        Ok(cover)
    }

    pub fn from_doc(doc: &CoverDoc) -> Result<Self, CoverError> {
        let total = Graph::from_doc(&doc.total)?;
        let base = Graph::from_doc(&doc.base)?;
        CoveringMap::new(total, base, &doc.map)
    }

    pub fn to_doc(&self) -> CoverDoc {
        CoverDoc {
            total: self.total.to_doc(),
            base: self.base.to_doc(),
            map: self
                .total
                .vertex_ids()
                .map(|u| {
                    (
                        self.total.name(u).to_owned(),
                        self.base.name(self.vmap[u]).to_owned(),
                    )
                })
                .collect(),
        }
    }

    /// The identity cover of `g`.
    pub fn identity(g: &Graph) -> Self {
        let assignment = g
            .vertex_ids()
            .map(|v| (g.name(v).to_owned(), g.name(v).to_owned()))
            .collect();
        CoveringMap::new(g.clone(), g.clone(), &assignment)
            .expect("identity assignment is a covering")
    }

    pub fn map_vertex(&self, u: VertexId) -> VertexId {
        self.vmap[u]
    }

    pub fn map_set(&self, s: &VertexSet) -> VertexSet {
        s.iter().map(|&u| self.vmap[u]).collect()
    }

    /// The preimage of a base vertex.
    pub fn fiber(&self, v: VertexId) -> Result<&VertexSet, CoverError> {
        self.base.check_vertex(v)?;
        Ok(&self.fibers[v])
    }

    pub fn preimage(&self, s: &VertexSet) -> VertexSet {
        self.total.vertex_ids().filter(|&u| s.contains(&self.vmap[u])).collect()
    }

    /// Covering degree: the common fiber cardinality (fibers of a regular
    /// cover with connected base all agree; for safety, the maximum).
    pub fn degree(&self) -> usize {
        self.fibers.iter().map(|f| f.len()).max().unwrap_or(0)
    }

    pub fn deck_group(&self) -> &[Perm] {
        &self.deck
    }

    pub fn is_regular(&self) -> bool {
        self.regular
    }

    fn compute_regular(&self) -> bool {
        self.fibers.iter().all(|fiber| {
            let Some(&first) = fiber.iter().next() else {
                return true;
            };
            fiber
                .iter()
                .all(|&u| self.deck.iter().any(|mu| mu.apply(first) == u))
        })
    }

    /// The cover-refined order: every fiber member of `v` lies below some
    /// fiber member of `v2` in the total graph's link-star order.
    pub fn leq_phi(&self, v: VertexId, v2: VertexId) -> Result<bool, CoverError> {
        self.base.check_vertex(v)?;
        self.base.check_vertex(v2)?;
        Ok(self.fibers[v].iter().all(|&u| {
            self.fibers[v2]
                .iter()
                .any(|&u2| self.total.leq_linkstar(u, u2).unwrap())
        }))
    }

    /// Equivalence class of `v` under the symmetrized cover-refined order.
    pub fn phi_class(&self, v: VertexId) -> Result<VertexSet, CoverError> {
        self.base.check_vertex(v)?;
        let class: VertexSet = self
            .base
            .vertex_ids()
            .filter(|&v2| self.leq_phi(v, v2).unwrap() && self.leq_phi(v2, v).unwrap())
            .collect();
        // The induced subgraph is complete or edgeless (a theorem).
        let members: Vec<VertexId> = class.iter().copied().collect();
        let mut complete = true;
        let mut edgeless = true;
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if self.base.adjacent(a, b) {
                    edgeless = false;
                } else {
                    complete = false;
                }
            }
        }
        assert!(complete || edgeless, "phi-class dichotomy violated");
        Ok(class)
    }

    /// The component of the total graph minus `st(u)` that contains the
    /// connected set `seed` (which must not intersect `st(u)`).
    fn component_off_star(&self, u: VertexId, seed: VertexId) -> VertexSet {
        let star = self.total.star(u).unwrap();
        let rest: VertexSet = self
            .total
            .vertex_ids()
            .filter(|w| !star.contains(w))
            .collect();
        self.total
            .components(&rest)
            .unwrap()
            .into_iter()
            .find(|c| c.contains(&seed))
            .expect("seed avoids the star")
    }

    fn components_of_preimage(&self, b: &VertexSet) -> Vec<VertexSet> {
        self.total.components(&self.preimage(b)).unwrap()
    }

    /// The closure of a union `C` of components of the base minus `st(v)`:
    /// the set forced to be conjugated together by every fiber star.
    pub fn bar(&self, v: VertexId, c: &VertexSet) -> Result<VertexSet, CoverError> {
        if !self.regular {
            return Err(CoverError::NotRegular);
        }
        let comps = self.base.conj_components(v)?;
        let constituents: Vec<&VertexSet> = comps.iter().filter(|b| !b.is_disjoint(c)).collect();
        let union: VertexSet = constituents.iter().flat_map(|b| b.iter().copied()).collect();
        if &union != c {
            return Err(CoverError::NotComponentUnion(self.base.name(v).to_owned()));
        }
        let mut out = VertexSet::new();
        for b in constituents {
            out.extend(self.bar_component(v, b));
        }
        // Closure facts: the result contains C and is a union of components.
        assert!(out.is_superset(c), "closure must contain its input");
        let covered: VertexSet = comps
            .iter()
            .filter(|comp| !comp.is_disjoint(&out))
            .flat_map(|comp| comp.iter().copied())
            .collect();
        assert_eq!(covered, out, "closure must be a union of components");
        Ok(out)
    }

    fn bar_component(&self, v: VertexId, b: &VertexSet) -> VertexSet {
        self.closure_block(v, b).bar
    }

    /// How one constituent component `b` off st(`v`) closes up: the chosen
    /// preimage component, the per-fiber-member components containing it,
    /// their intersection D, its image (the closure), and — when D coincides
    /// with the component off one fiber star — that fiber member.
    pub fn closure_block(&self, v: VertexId, b: &VertexSet) -> ClosureBlock {
        // Deterministic choice: the preimage component containing the least
        // vertex; independence from this choice is property-tested.
        let b_tilde = self.components_of_preimage(b)[0].clone();
        let seed = *b_tilde.iter().next().unwrap();
        let fiber_components: Vec<(VertexId, VertexSet)> = self.fibers[v]
            .iter()
            .map(|&u| (u, self.component_off_star(u, seed)))
            .collect();
        let mut d = fiber_components[0].1.clone();
        for (_, comp) in &fiber_components[1..] {
            d = d.intersection(comp).copied().collect();
        }
        let pinned = fiber_components
            .iter()
            .find(|(_, comp)| *comp == d)
            .map(|(u, _)| *u);
        // Minimality lemma sanity check for connected graphs.
        let base_connected = self.base.components(&self.base.all_vertices()).unwrap().len() == 1;
        let total_connected =
            self.total.components(&self.total.all_vertices()).unwrap().len() == 1;
        if base_connected && total_connected {
            let pre_b = self.preimage(b);
            assert!(
                pre_b.is_subset(&d) || pinned.is_some(),
                "closure minimality lemma violated"
            );
        }
        ClosureBlock {
            b_tilde,
            fiber_components,
            d: d.clone(),
            bar: self.map_set(&d),
            pinned,
        }
    }

    /// All total-graph symmetries `mu` with `vmap ∘ mu = sigma ∘ vmap`.
    /// Deterministic order; empty iff `sigma` has no covering symmetry.
    pub fn lift_symmetry(&self, sigma: &Perm) -> Result<Vec<Perm>, CoverError> {
        if !sigma.is_symmetry_of(&self.base) {
            return Err(CoverError::NotBaseSymmetry(format!("{sigma:?}")));
        }
        Ok(self.lift_symmetry_perm(sigma))
    }

    fn lift_symmetry_perm(&self, sigma: &Perm) -> Vec<Perm> {
        let candidates: Vec<Vec<VertexId>> = self
            .total
            .vertex_ids()
            .map(|u| {
                self.fibers[sigma.apply(self.vmap[u])]
                    .iter()
                    .copied()
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        let mut image = vec![usize::MAX; self.total.len()];
        let mut used = vec![false; self.total.len()];
        self.search_cover_symmetry(0, &candidates, &mut image, &mut used, &mut out);
        out
    }

    fn search_cover_symmetry(
        &self,
        u: VertexId,
        candidates: &[Vec<VertexId>],
        image: &mut Vec<VertexId>,
        used: &mut Vec<bool>,
        out: &mut Vec<Perm>,
    ) {
        if u == self.total.len() {
            out.push(Perm(image.clone()));
            return;
        }
        'cand: for &t in &candidates[u] {
            if used[t] {
                continue;
            }
            for w in 0..u {
                if self.total.adjacent(u, w) != self.total.adjacent(t, image[w]) {
                    continue 'cand;
                }
            }
            image[u] = t;
            used[t] = true;
            self.search_cover_symmetry(u + 1, candidates, image, used, out);
            used[t] = false;
            image[u] = usize::MAX;
        }
    }

    /// The graph on the total vertices with extra edges between fiber mates
    /// and between preimages of adjacent base vertices. Vertex names (hence
    /// ids) coincide with the total graph's.
    pub fn lambda_plus(&self) -> Graph {
        let names: Vec<String> = self
            .total
            .vertex_ids()
            .map(|u| self.total.name(u).to_owned())
            .collect();
        let mut edges = Vec::new();
        for a in self.total.vertex_ids() {
            for b in a + 1..self.total.len() {
                let (va, vb) = (self.vmap[a], self.vmap[b]);
                if self.total.adjacent(a, b) || va == vb || self.base.adjacent(va, vb) {
                    edges.push((names[a].clone(), names[b].clone()));
                }
            }
        }
        let edge_refs: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let plus = Graph::new(&name_refs, &edge_refs).expect("augmented graph is simplicial");
        debug_assert!(self
            .total
            .vertex_ids()
            .all(|u| plus.vertex(self.total.name(u)).unwrap() == u));
        plus
    }
}

fn validate_raw(total: &Graph, base: &Graph, vmap: &[VertexId]) -> Result<(), CoverError> {
    // Simpliciality: edges map to edges, never collapse.
    for u in total.vertex_ids() {
        for &w in total.link(u).unwrap() {
            if u < w && !base.adjacent(vmap[u], vmap[w]) {
                return Err(CoverError::NotSimplicial(
                    total.name(u).to_owned(),
                    total.name(w).to_owned(),
                ));
            }
        }
    }
    // Vertex and edge surjectivity.
    for v in base.vertex_ids() {
        if !total.vertex_ids().any(|u| vmap[u] == v) {
            return Err(CoverError::VertexNotCovered(base.name(v).to_owned()));
        }
        for &v2 in base.link(v).unwrap() {
            if v < v2 {
                let covered = total.vertex_ids().any(|u| {
                    vmap[u] == v
                        && total
                            .link(u)
                            .unwrap()
                            .iter()
                            .any(|&w| vmap[w] == v2)
                });
                if !covered {
                    return Err(CoverError::EdgeNotCovered(
                        base.name(v).to_owned(),
                        base.name(v2).to_owned(),
                    ));
                }
            }
        }
    }
    // Local bijectivity on links.
    for u in total.vertex_ids() {
        let image: VertexSet = total.link(u).unwrap().iter().map(|&w| vmap[w]).collect();
        let lk = total.link(u).unwrap();
        if image.len() != lk.len() || image != *base.link(vmap[u]).unwrap() {
            return Err(CoverError::NotLocalBijection(total.name(u).to_owned()));
        }
    }
    // Derived fact: distinct fiber mates are at distance >= 3.
    let dist = all_pairs_distances(total);
    for u1 in total.vertex_ids() {
        for u2 in u1 + 1..total.len() {
            if vmap[u1] == vmap[u2] {
                if let Some(d) = dist[u1][u2] {
                    if d < 3 {
                        return Err(CoverError::FiberMatesTooClose(
                            total.name(u1).to_owned(),
                            total.name(u2).to_owned(),
                            d,
                        ));
                    }
                }
            }
        }
    }
    // Derived fact: isolated vertices map to isolated vertices.
    for u in total.vertex_ids() {
        if total.is_isolated(u) && !base.is_isolated(vmap[u]) {
            return Err(CoverError::IsolatedNotPreserved(total.name(u).to_owned()));
        }
    }
    Ok(())
}

fn all_pairs_distances(g: &Graph) -> Vec<Vec<Option<usize>>> {
    g.vertex_ids()
        .map(|start| {
            let mut dist = vec![None; g.len()];
            dist[start] = Some(0);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let d = dist[v].unwrap();
                for &w in g.link(v).unwrap() {
                    if dist[w].is_none() {
                        dist[w] = Some(d + 1);
                        queue.push_back(w);
                    }
                }
            }
            dist
        })
        .collect()
}

/// Unrolls a cyclic voltage assignment into the derived regular cover.
/// Total vertices are named `{base}.{k}` for `k` in `0..n`.
pub fn derived_cover(doc: &VoltageDoc) -> Result<CoveringMap, CoverError> {
    let base = Graph::from_doc(&doc.base)?;
    let n = doc.n;
    if n == 0 {
        return Err(CoverError::BadVoltageTable("n must be positive".into()));
    }
    let mut voltage: HashMap<(VertexId, VertexId), u32> = HashMap::new();
    for (a, b, t) in &doc.voltages {
        let a = base
            .vertex(a)
            .map_err(|_| CoverError::BadVoltageTable(a.clone()))?;
        let b = base
            .vertex(b)
            .map_err(|_| CoverError::BadVoltageTable(b.clone()))?;
        if !base.adjacent(a, b) {
            return Err(CoverError::BadVoltageTable(format!(
                "{}-{} is not a base edge",
                base.name(a),
                base.name(b)
            )));
        }
        if voltage.contains_key(&(a, b)) || voltage.contains_key(&(b, a)) {
            return Err(CoverError::BadVoltageTable(format!(
                "duplicate voltage for {}-{}",
                base.name(a),
                base.name(b)
            )));
        }
        voltage.insert((a, b), t % n);
    }
    for a in base.vertex_ids() {
        for &b in base.link(a).unwrap() {
            if a < b && !voltage.contains_key(&(a, b)) && !voltage.contains_key(&(b, a)) {
                return Err(CoverError::BadVoltageTable(format!(
                    "missing voltage for {}-{}",
                    base.name(a),
                    base.name(b)
                )));
            }
        }
    }
    let name = |v: VertexId, k: u32| format!("{}.{}", base.name(v), k);
    let mut vertices = Vec::new();
    let mut assignment = BTreeMap::new();
    for v in base.vertex_ids() {
        for k in 0..n {
            vertices.push(name(v, k));
            assignment.insert(name(v, k), base.name(v).to_owned());
        }
    }
    let mut edges = Vec::new();
    for (&(a, b), &t) in &voltage {
        for k in 0..n {
            edges.push((name(a, k), name(b, (k + t) % n)));
        }
    }
    let vert_refs: Vec<&str> = vertices.iter().map(|s| s.as_str()).collect();
    let edge_refs: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let total = Graph::new(&vert_refs, &edge_refs)?;
    CoveringMap::new(total, base, &assignment)
}
