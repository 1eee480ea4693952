//! Elementary automorphisms, composite automorphism words, evaluation,
//! structural predicates, graph-symmetry extraction, the conjugating/h-part
//! decomposition, and the peeling of conjugating automorphisms into partial
//! conjugations.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, Perm, VertexId, VertexSet};
use crate::words::{
    cyclic_reduce, equals, esupp, is_conjugate_to_generator, reduce, Letter, Word, WordError,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AutError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("invalid transvection: lk(`{target}`) is not contained in st(`{multiplier}`)")]
    InvalidTransvection { target: String, multiplier: String },
    #[error("invalid partial conjugation at `{vertex}`: set is not a union of components off the star")]
    InvalidPartialConj { vertex: String },
    #[error("invalid commutator transvection at `{x}`")]
    InvalidCommutator { x: String },
    #[error("map is not a symmetry of the graph")]
    InvalidSymmetry,
    #[error("generator power must be +1 or -1")]
    BadPower,
    #[error("not a conjugating automorphism: image of `{vertex}` is not a conjugate of it")]
    NotConjugating { vertex: String },
    #[error("no compatible graph symmetry exists; input is not an automorphism")]
    NotAutomorphism,
    #[error("the identity automorphism has no decomposition steps")]
    IdentityInput,
    #[error("letter is not extractable")]
    NotExtractable,
    #[error("peeling stuck at vertex `{vertex}` on word `{word}`")]
    Stuck { vertex: String, word: String },
    #[error("exponent sum of `{vertex}` in `{word}` is {sum}, expected ±1")]
    ExponentSum {
        vertex: String,
        word: String,
        sum: i64,
    },
    #[error("support of the image of `{vertex}` contains the disallowed multiplier `{offender}`")]
    SupportOutsideOrder { vertex: String, offender: String },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Side on which a transvection multiplies its target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A single generator of the automorphism group.
///
/// `Transvection { target: t, multiplier: m, side: Left, power: 1 }` maps
/// t ↦ m·t; `Right` multiplies on the right; `power: -1` inverts the
/// multiplier. `PartialConj` conjugates every vertex of `component` by
/// `vertex^power`; `component` must be a union of connected components of the
/// complement of st(vertex). `Inner { word: z, power: p }` conjugates every
/// generator by z^p. `CommutatorTransvection` maps x ↦ x·[y,z]^power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementaryAut {
    Symmetry(Perm),
    Inversion(VertexId),
    Transvection {
        target: VertexId,
        multiplier: VertexId,
        side: Side,
        power: i8,
    },
    PartialConj {
        vertex: VertexId,
        component: VertexSet,
        power: i8,
    },
    Inner {
        word: Word,
        power: i8,
    },
    CommutatorTransvection {
        x: VertexId,
        y: VertexId,
        z: VertexId,
        power: i8,
    },
}

impl ElementaryAut {
    pub fn inverse(&self) -> ElementaryAut {
        match self {
            ElementaryAut::Symmetry(p) => ElementaryAut::Symmetry(p.inverse()),
            ElementaryAut::Inversion(v) => ElementaryAut::Inversion(*v),
            ElementaryAut::Transvection {
                target,
                multiplier,
                side,
                power,
            } => ElementaryAut::Transvection {
                target: *target,
                multiplier: *multiplier,
                side: *side,
                power: -power,
            },
            ElementaryAut::PartialConj {
                vertex,
                component,
                power,
            } => ElementaryAut::PartialConj {
                vertex: *vertex,
                component: component.clone(),
                power: -power,
            },
            ElementaryAut::Inner { word, power } => ElementaryAut::Inner {
                word: word.clone(),
                power: -power,
            },
            ElementaryAut::CommutatorTransvection { x, y, z, power } => {
                ElementaryAut::CommutatorTransvection {
                    x: *x,
                    y: *y,
                    z: *z,
                    power: -power,
                }
            }
        }
    }

    /// Image of the positive generator `v`, unreduced.
    fn image_of(&self, v: VertexId) -> Word {
        let gen = Word::generator(v);
        match self {
            ElementaryAut::Symmetry(p) => Word::generator(p.apply(v)),
            ElementaryAut::Inversion(u) => {
                if *u == v {
                    gen.inverse()
                } else {
                    gen
                }
            }
            ElementaryAut::Transvection {
                target,
                multiplier,
                side,
                power,
            } => {
                if *target != v {
                    return gen;
                }
                let m = Word::generator(*multiplier).pow(*power as i64);
                match side {
                    Side::Left => m.concat(&gen),
                    Side::Right => gen.concat(&m),
                }
            }
            ElementaryAut::PartialConj {
                vertex,
                component,
                power,
            } => {
                if !component.contains(&v) {
                    return gen;
                }
                let c = Word::generator(*vertex).pow(*power as i64);
                c.concat(&gen).concat(&c.inverse())
            }
            ElementaryAut::Inner { word, power } => {
                let c = word.pow(*power as i64);
                c.concat(&gen).concat(&c.inverse())
            }
            ElementaryAut::CommutatorTransvection { x, y, z, power } => {
                if *x != v {
                    return gen;
                }
                let comm = Word::from_letters([(*y, 1), (*z, 1), (*y, -1), (*z, -1)]);
                gen.concat(&comm.pow(*power as i64))
            }
        }
    }
}

/// A composite automorphism: the sequence `[g1, g2, …, gk]` applies `g1`
/// first, then `g2`, and so on (as a function it is gk∘…∘g1).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AutWord(pub Vec<ElementaryAut>);

impl AutWord {
    pub fn empty() -> Self {
        AutWord(Vec::new())
    }

    pub fn singleton(e: ElementaryAut) -> Self {
        AutWord(vec![e])
    }

    /// Applies `self` first, then `other`.
    pub fn compose(&self, other: &AutWord) -> AutWord {
        let mut list = self.0.clone();
        list.extend(other.0.iter().cloned());
        AutWord(list)
    }

    pub fn invert(&self) -> AutWord {
        AutWord(self.0.iter().rev().map(|e| e.inverse()).collect())
    }
}

/// Checks every generator's structural invariant against the ambient graph.
pub fn validate(g: &Graph, a: &AutWord) -> Result<(), AutError> {
    for e in &a.0 {
        validate_generator(g, e)?;
    }
    Ok(())
}

pub fn validate_generator(g: &Graph, e: &ElementaryAut) -> Result<(), AutError> {
    let power_ok = |p: i8| if p == 1 || p == -1 { Ok(()) } else { Err(AutError::BadPower) };
    match e {
        ElementaryAut::Symmetry(p) => {
            if p.len() != g.len() || !p.is_symmetry_of(g) {
                return Err(AutError::InvalidSymmetry);
            }
        }
        ElementaryAut::Inversion(v) => g.check_vertex(*v)?,
        ElementaryAut::Transvection {
            target,
            multiplier,
            power,
            ..
        } => {
            g.check_vertex(*target)?;
            g.check_vertex(*multiplier)?;
            power_ok(*power)?;
            if target == multiplier || !g.leq_linkstar(*target, *multiplier)? {
                return Err(AutError::InvalidTransvection {
                    target: g.name(*target).to_owned(),
                    multiplier: g.name(*multiplier).to_owned(),
                });
            }
        }
        ElementaryAut::PartialConj {
            vertex,
            component,
            power,
        } => {
            g.check_vertex(*vertex)?;
            power_ok(*power)?;
            let comps = g.conj_components(*vertex)?;
            let union_ok = comps
                .iter()
                .all(|c| c.is_subset(component) || c.is_disjoint(component))
                && component
                    .iter()
                    .all(|v| comps.iter().any(|c| c.contains(v)));
            if component.is_empty() || !union_ok {
                return Err(AutError::InvalidPartialConj {
                    vertex: g.name(*vertex).to_owned(),
                });
            }
        }
        ElementaryAut::Inner { word, power } => {
            power_ok(*power)?;
            for l in &word.0 {
                g.check_vertex(l.vertex)?;
            }
        }
        ElementaryAut::CommutatorTransvection { x, y, z, power } => {
            g.check_vertex(*x)?;
            g.check_vertex(*y)?;
            g.check_vertex(*z)?;
            power_ok(*power)?;
            let sty = g.star(*y)?;
            let stz = g.star(*z)?;
            let lk_ok = g.link(*x)?.iter().all(|v| sty.contains(v) && stz.contains(v));
            if x == y || x == z || y == z || !lk_ok {
                return Err(AutError::InvalidCommutator {
                    x: g.name(*x).to_owned(),
                });
            }
        }
    }
    Ok(())
}

fn apply_generator(g: &Graph, e: &ElementaryAut, w: &Word) -> Word {
    let mut out = Vec::new();
    for l in &w.0 {
        let img = e.image_of(l.vertex);
        let piece = if l.sign > 0 { img } else { img.inverse() };
        out.extend(piece.0);
    }
    reduce(g, &Word(out))
}

/// Homomorphic evaluation: substitutes letter images generator by generator,
/// reducing after each stage. Returns a normal form.
pub fn apply(g: &Graph, a: &AutWord, w: &Word) -> Word {
    let mut cur = reduce(g, w);
    for e in &a.0 {
        cur = apply_generator(g, e, &cur);
    }
    cur
}

/// Base vertex → normal form of its image: the semantic fingerprint of an
/// automorphism. Two automorphism words are equal as maps iff their image
/// maps coincide.
pub type ImageMap = BTreeMap<VertexId, Word>;

pub fn image_map(g: &Graph, a: &AutWord) -> ImageMap {
    g.vertex_ids()
        .map(|v| (v, apply(g, a, &Word::generator(v))))
        .collect()
}

pub fn is_identity(g: &Graph, a: &AutWord) -> bool {
    g.vertex_ids()
        .all(|v| apply(g, a, &Word::generator(v)) == Word::generator(v))
}

/// Whether every vertex maps to a conjugate of itself.
pub fn is_conjugating(g: &Graph, a: &AutWord) -> bool {
    g.vertex_ids().all(|v| {
        is_conjugate_to_generator(g, &apply(g, a, &Word::generator(v)), v).unwrap_or(false)
    })
}

/// Whether `v` appears in the cyclically reduced image of `v`, for all `v`.
pub fn is_essential(g: &Graph, a: &AutWord) -> bool {
    g.vertex_ids()
        .all(|v| esupp(g, &apply(g, a, &Word::generator(v))).contains(&v))
}

/// Finds a graph symmetry σ with σ(v) ∈ esupp(a(v)) for every vertex, by
/// backtracking with the identity-first candidate order. Existence for
/// genuine automorphisms is a theorem; failure reports a non-automorphism.
pub fn find_symmetry(g: &Graph, a: &AutWord) -> Result<Perm, AutError> {
    let esupps: Vec<VertexSet> = g
        .vertex_ids()
        .map(|v| esupp(g, &apply(g, a, &Word::generator(v))))
        .collect();
    let n = g.len();
    let mut assign: Vec<Option<VertexId>> = vec![None; n];
    let mut used = vec![false; n];
    fn backtrack(
        g: &Graph,
        esupps: &[VertexSet],
        assign: &mut Vec<Option<VertexId>>,
        used: &mut Vec<bool>,
        v: VertexId,
    ) -> bool {
        if v == g.len() {
            return true;
        }
        // Identity-first: try v itself, then the rest in canonical order.
        let mut candidates: Vec<VertexId> = Vec::new();
        if esupps[v].contains(&v) {
            candidates.push(v);
        }
        candidates.extend(esupps[v].iter().copied().filter(|&c| c != v));
        'cand: for c in candidates {
            if used[c] || g.degree(c) != g.degree(v) {
                continue;
            }
            for u in 0..v {
                let cu = assign[u].unwrap();
                if g.adjacent(u, v) != g.adjacent(cu, c) {
                    continue 'cand;
                }
            }
            assign[v] = Some(c);
            used[c] = true;
            if backtrack(g, esupps, assign, used, v + 1) {
                return true;
            }
            assign[v] = None;
            used[c] = false;
        }
        false
    }
    if !backtrack(g, &esupps, &mut assign, &mut used, 0) {
        return Err(AutError::NotAutomorphism);
    }
    let sigma = Perm(assign.into_iter().map(|c| c.unwrap()).collect());
    debug_assert!(sigma.is_symmetry_of(g));
    // Pre-composing with σ^{-1} makes the automorphism essential.
    debug_assert!(is_essential(
        g,
        &AutWord::singleton(ElementaryAut::Symmetry(sigma.inverse())).compose(a),
    ));
    Ok(sigma)
}

/// Whether some occurrence of `letter` can be shuffled to the front of `w`:
/// all earlier letters commute with it and involve a different vertex.
pub fn leftmost_extractable(g: &Graph, w: &Word, letter: Letter) -> bool {
    extract_position(g, w, letter).is_some()
}

fn extract_position(g: &Graph, w: &Word, letter: Letter) -> Option<usize> {
    for (i, l) in w.0.iter().enumerate() {
        if *l == letter {
            return Some(i);
        }
        if l.vertex == letter.vertex || !g.adjacent(l.vertex, letter.vertex) {
            return None;
        }
    }
    None
}

/// Removes a front-shufflable occurrence of `letter`.
pub fn strip_leftmost(g: &Graph, w: &Word, letter: Letter) -> Result<Word, AutError> {
    let i = extract_position(g, w, letter).ok_or(AutError::NotExtractable)?;
    let mut letters = w.0.clone();
    letters.remove(i);
    Ok(reduce(g, &Word(letters)))
}

/// Whether the reduced word `prefix` is a left-most word of `w`: stripping it
/// from the left cancels it entirely.
pub fn has_leftmost_prefix(g: &Graph, prefix: &Word, w: &Word) -> bool {
    let p = reduce(g, prefix);
    let w = reduce(g, w);
    if p.len() > w.len() {
        return false;
    }
    reduce(g, &p.inverse().concat(&w)).len() == w.len() - p.len()
}

/// One recorded step of the partial-conjugation peeling: conjugating vertex,
/// conjugated component union, and power.
pub type ConjStep = (VertexId, VertexSet, i8);

/// Decomposes a conjugating automorphism into partial conjugations.
///
/// Classical peeling: per round, find vertices (v1, v2) such that with
/// a(v1) = w1·v1·w1^{-1} reduced, w1·v1^ε is a left-most word in the
/// conjugating word of a(v2); conjugate the component of v2 (or, when
/// `maximal`, every qualifying component) back by v1^ε and repeat. The total
/// conjugator length strictly decreases each round. The returned steps
/// recompose to the input in application order — verified before returning.
pub fn laurence_decompose(
    g: &Graph,
    a: &AutWord,
    maximal: bool,
) -> Result<Vec<ConjStep>, AutError> {
    let conj_words = |a: &AutWord| -> Result<Vec<Word>, AutError> {
        let mut out = Vec::new();
        for v in g.vertex_ids() {
            let im = apply(g, a, &Word::generator(v));
            let cd = cyclic_reduce(g, &im);
            if cd.core != Word::generator(v) {
                return Err(AutError::NotConjugating {
                    vertex: g.name(v).to_owned(),
                });
            }
            out.push(reduce(g, &cd.conjugator));
        }
        Ok(out)
    };
    let mut cur = a.clone();
    let mut words = conj_words(&cur)?;
    let mut total: usize = words.iter().map(|w| w.len()).sum();
    if total == 0 {
        return Err(AutError::IdentityInput);
    }
    let mut steps: Vec<ConjStep> = Vec::new();
    while total > 0 {
        let mut found = None;
        'outer: for v1 in g.vertex_ids() {
            let star1 = g.star(v1)?;
            for eps in [1i8, -1] {
                let prefix = reduce(
                    g,
                    &words[v1].concat(&Word::generator(v1).pow(eps as i64)),
                );
                for v2 in g.vertex_ids() {
                    if star1.contains(&v2) || words[v2].is_empty() {
                        continue;
                    }
                    if has_leftmost_prefix(g, &prefix, &words[v2]) {
                        found = Some((v1, v2, eps, prefix));
                        break 'outer;
                    }
                }
            }
        }
        let Some((v1, v2, eps, prefix)) = found else {
            return Err(AutError::Internal(
                "no peeling pair found for a conjugating automorphism".into(),
            ));
        };
        let comps = g.conj_components(v1)?;
        let component: VertexSet = if maximal {
            let c: VertexSet = g
                .vertex_ids()
                .filter(|&v| {
                    !g.star(v1).unwrap().contains(&v) && has_leftmost_prefix(g, &prefix, &words[v])
                })
                .collect();
            // The qualifying set is a union of components off st(v1).
            if !comps.iter().all(|k| k.is_subset(&c) || k.is_disjoint(&c)) {
                return Err(AutError::Internal(
                    "left-most qualifying set is not a union of components".into(),
                ));
            }
            c
        } else {
            comps
                .into_iter()
                .find(|k| k.contains(&v2))
                .expect("v2 lies off st(v1)")
        };
        steps.push((v1, component.clone(), eps));
        // Undo the step at the source side: conjugate the component back.
        let undo = ElementaryAut::PartialConj {
            vertex: v1,
            component,
            power: -eps,
        };
        cur = AutWord::singleton(undo).compose(&cur);
        words = conj_words(&cur)?;
        let new_total = words.iter().map(|w| w.len()).sum();
        if new_total >= total {
            return Err(AutError::Internal(
                "total conjugator length failed to decrease".into(),
            ));
        }
        total = new_total;
    }
    // Recomposition check: the steps, applied in recorded order, equal `a`.
    let rebuilt = AutWord(
        steps
            .iter()
            .map(|(v, c, eps)| ElementaryAut::PartialConj {
                vertex: *v,
                component: c.clone(),
                power: *eps,
            })
            .collect(),
    );
    if image_map(g, &rebuilt) != image_map(g, a) {
        return Err(AutError::Internal(
            "partial-conjugation recomposition mismatch".into(),
        ));
    }
    Ok(steps)
}

fn exponent_sum(w: &Word, v: VertexId) -> i64 {
    w.0.iter()
        .filter(|l| l.vertex == v)
        .map(|l| l.sign as i64)
        .sum()
}

/// Builds a product of transvections (and possibly one inversion) fixing all
/// vertices except `v` and sending v ↦ w, by greedily peeling extractable
/// letters off both ends. Every multiplier must satisfy `allowed`. Returns
/// `Stuck` when neither end has a strippable non-`v` letter.
pub fn express_as_transvections(
    g: &Graph,
    v: VertexId,
    w: &Word,
    allowed: &dyn Fn(VertexId) -> bool,
) -> Result<AutWord, AutError> {
    let target = reduce(g, w);
    for l in &target.0 {
        if l.vertex != v && !allowed(l.vertex) {
            return Err(AutError::SupportOutsideOrder {
                vertex: g.name(v).to_owned(),
                offender: g.name(l.vertex).to_owned(),
            });
        }
    }
    let sum = exponent_sum(&target, v);
    if sum.abs() != 1 {
        return Err(AutError::ExponentSum {
            vertex: g.name(v).to_owned(),
            word: target.format(g),
            sum,
        });
    }
    let mut cur = target.clone();
    let mut peels: Vec<ElementaryAut> = Vec::new();
    let residue_negative = loop {
        if cur == Word::generator(v) {
            break false;
        }
        if cur == Word::generator(v).inverse() {
            break true;
        }
        // Left end first, then right end; first extractable non-v letter.
        let left = cur
            .0
            .iter()
            .position(|l| l.vertex == v)
            .map_or(cur.0.len(), |i| i)
            .min(cur.0.len());
        let mut peeled = false;
        for i in 0..left {
            let l = cur.0[i];
            if (0..i).all(|j| cur.0[j].vertex != l.vertex && g.adjacent(cur.0[j].vertex, l.vertex))
            {
                peels.push(ElementaryAut::Transvection {
                    target: v,
                    multiplier: l.vertex,
                    side: Side::Left,
                    power: l.sign,
                });
                let mut letters = cur.0.clone();
                letters.remove(i);
                cur = reduce(g, &Word(letters));
                peeled = true;
                break;
            }
        }
        if peeled {
            continue;
        }
        let n = cur.0.len();
        let right = cur
            .0
            .iter()
            .rposition(|l| l.vertex == v)
            .map_or(0, |i| i + 1);
        for i in (right..n).rev() {
            let l = cur.0[i];
            if (i + 1..n)
                .all(|j| cur.0[j].vertex != l.vertex && g.adjacent(cur.0[j].vertex, l.vertex))
            {
                peels.push(ElementaryAut::Transvection {
                    target: v,
                    multiplier: l.vertex,
                    side: Side::Right,
                    power: l.sign,
                });
                let mut letters = cur.0.clone();
                letters.remove(i);
                cur = reduce(g, &Word(letters));
                peeled = true;
                break;
            }
        }
        if !peeled {
            return Err(AutError::Stuck {
                vertex: g.name(v).to_owned(),
                word: cur.format(g),
            });
        }
    };
    // Peels are applied in peel order; an inversion residue is applied last.
    let mut list = peels;
    if residue_negative {
        list.push(ElementaryAut::Inversion(v));
    }
    let e = AutWord(list);
    debug_assert!(equals(g, &apply(g, &e, &Word::generator(v)), &target));
    Ok(e)
}

/// Splits an automorphism as a = h∘g (g applied first) with `g` conjugating
/// and `h` a product of a symmetry, inversions, and transvections whose
/// vertex images are cyclically reduced. Both parts are returned in
/// application-order form and the recomposition is verified.
///
/// Per ordered vertex v, an E_v built from transvections sends v to the
/// cyclic core W of the current image of v; post-composing E_v^{-1} turns the
/// image z·W·z^{-1} into a conjugate of v, and all vertices handled earlier
/// stay conjugates because E_v fixes them as generators. What accumulates on
/// the right is conjugating; what is stripped off forms h.
pub fn decompose_gh(g: &Graph, a: &AutWord) -> Result<(AutWord, AutWord), AutError> {
    if is_conjugating(g, a) {
        return Ok((a.clone(), AutWord::empty()));
    }
    let sigma = find_symmetry(g, a)?;
    // cur = σ^{-1}∘a (a applied first) is essential.
    let mut cur = if sigma.is_identity() {
        a.clone()
    } else {
        a.compose(&AutWord::singleton(ElementaryAut::Symmetry(sigma.inverse())))
    };
    let mut parts: Vec<AutWord> = Vec::new();
    for v in g.order_vertices() {
        let above = g.above_set(v)?;
        let im = apply(g, &cur, &Word::generator(v));
        let core = cyclic_reduce(g, &im).core;
        let e = express_as_transvections(g, v, &core, &|m| above.contains(&m))?;
        if e.0.is_empty() {
            continue;
        }
        // cur ← E_v^{-1} ∘ cur; v now maps to a conjugate of v.
        cur = cur.compose(&e.invert());
        if !is_conjugate_to_generator(g, &apply(g, &cur, &Word::generator(v)), v)? {
            return Err(AutError::Internal(
                "peeled vertex image is not a conjugate of the vertex".into(),
            ));
        }
        parts.push(e);
    }
    let conj = cur;
    if !is_conjugating(g, &conj) {
        return Err(AutError::Internal(
            "conjugating part failed its defining property".into(),
        ));
    }
    // a = σ ∘ E_1 ∘ … ∘ E_k ∘ conj, so h = σ∘E_1∘…∘E_k (E_k applied first).
    let mut h = AutWord::empty();
    for e in parts.iter().rev() {
        h = h.compose(e);
    }
    if !sigma.is_identity() {
        h = h.compose(&AutWord::singleton(ElementaryAut::Symmetry(sigma)));
    }
    if image_map(g, &conj.compose(&h)) != image_map(g, a) {
        return Err(AutError::Internal("g·h recomposition mismatch".into()));
    }
    for v in g.vertex_ids() {
        let hv = apply(g, &h, &Word::generator(v));
        if cyclic_reduce(g, &hv).core != hv {
            return Err(AutError::Internal(
                "h-part image is not cyclically reduced".into(),
            ));
        }
    }
    Ok((conj, h))
}

/// Serialization schema for one generator record.
#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorDoc {
    Symmetry {
        map: BTreeMap<String, String>,
    },
    Inversion {
        vertex: String,
    },
    Transvection {
        target: String,
        multiplier: String,
        side: Side,
        power: i8,
    },
    PartialConj {
        vertex: String,
        component_vertices: Vec<String>,
        power: i8,
    },
    Inner {
        word: String,
        power: i8,
    },
    CommutatorTransvection {
        x: String,
        y: String,
        z: String,
        power: i8,
    },
}

/// An automorphism file: generator records in application order.
pub type AutDoc = Vec<GeneratorDoc>;

pub fn from_doc(g: &Graph, doc: &AutDoc) -> Result<AutWord, AutError> {
    let mut list = Vec::new();
    for rec in doc {
        let e = match rec {
            GeneratorDoc::Symmetry { map } => {
                let mut perm = vec![usize::MAX; g.len()];
                for (from, to) in map {
                    perm[g.vertex(from)?] = g.vertex(to)?;
                }
                if perm.contains(&usize::MAX) {
                    return Err(AutError::InvalidSymmetry);
                }
                ElementaryAut::Symmetry(Perm(perm))
            }
            GeneratorDoc::Inversion { vertex } => ElementaryAut::Inversion(g.vertex(vertex)?),
            GeneratorDoc::Transvection {
                target,
                multiplier,
                side,
                power,
            } => ElementaryAut::Transvection {
                target: g.vertex(target)?,
                multiplier: g.vertex(multiplier)?,
                side: *side,
                power: *power,
            },
            GeneratorDoc::PartialConj {
                vertex,
                component_vertices,
                power,
            } => {
                let mut component = VertexSet::new();
                for n in component_vertices {
                    component.insert(g.vertex(n)?);
                }
                ElementaryAut::PartialConj {
                    vertex: g.vertex(vertex)?,
                    component,
                    power: *power,
                }
            }
            GeneratorDoc::Inner { word, power } => ElementaryAut::Inner {
                word: Word::parse(g, word)?,
                power: *power,
            },
            GeneratorDoc::CommutatorTransvection { x, y, z, power } => {
                ElementaryAut::CommutatorTransvection {
                    x: g.vertex(x)?,
                    y: g.vertex(y)?,
                    z: g.vertex(z)?,
                    power: *power,
                }
            }
        };
        validate_generator(g, &e)?;
        list.push(e);
    }
    Ok(AutWord(list))
}

pub fn to_doc(g: &Graph, a: &AutWord) -> AutDoc {
    a.0.iter()
        .map(|e| match e {
            ElementaryAut::Symmetry(p) => GeneratorDoc::Symmetry {
                map: g
                    .vertex_ids()
                    .map(|v| (g.name(v).to_owned(), g.name(p.apply(v)).to_owned()))
                    .collect(),
            },
            ElementaryAut::Inversion(v) => GeneratorDoc::Inversion {
                vertex: g.name(*v).to_owned(),
            },
            ElementaryAut::Transvection {
                target,
                multiplier,
                side,
                power,
            } => GeneratorDoc::Transvection {
                target: g.name(*target).to_owned(),
                multiplier: g.name(*multiplier).to_owned(),
                side: *side,
                power: *power,
            },
            ElementaryAut::PartialConj {
                vertex,
                component,
                power,
            } => GeneratorDoc::PartialConj {
                vertex: g.name(*vertex).to_owned(),
                component_vertices: g.names(component),
                power: *power,
            },
            ElementaryAut::Inner { word, power } => GeneratorDoc::Inner {
                word: word.format(g),
                power: *power,
            },
            ElementaryAut::CommutatorTransvection { x, y, z, power } => {
                GeneratorDoc::CommutatorTransvection {
                    x: g.name(*x).to_owned(),
                    y: g.name(*y).to_owned(),
                    z: g.name(*z).to_owned(),
                    power: *power,
                }
            }
        })
        .collect()
}
