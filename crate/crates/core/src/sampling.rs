//! Seeded random generators for the property suites: graphs, words, voltage
//! covers, automorphism words, and fiber-distorting elements. Everything is
//! driven by a caller-supplied ChaCha stream so suites are reproducible.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::autos::{validate_generator, AutWord, ElementaryAut, Side};
use crate::covering::{derived_cover, CoveringMap, VoltageDoc};
use crate::graph::{Graph, Perm, VertexId, VertexSet};
use crate::liftability::{
    commutator_transvection_in_fd, lift_inner, lift_inversion, lift_partial_conj,
    lift_symmetry_aut, lift_transvection, LiftError,
};
use crate::words::{Letter, Word};

/// Fresh deterministic stream for a suite.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random simplicial graph with 1..=max_vertices vertices named `n0`, `n1`, …
/// and independently sampled edges.
pub fn random_graph(r: &mut impl Rng, max_vertices: usize) -> Graph {
    let n = r.gen_range(1..=max_vertices.max(1));
    let names: Vec<String> = (0..n).map(|i| format!("n{i}")).collect();
    let p = *[0.2, 0.35, 0.5, 0.7].choose(r).unwrap();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if r.gen_bool(p) {
                edges.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    Graph::new(&names, &edges).expect("sampled vertex/edge lists are well-formed")
}

/// Random (unreduced) word of length 0..=max_len over the generators of `g`.
pub fn random_word(r: &mut impl Rng, g: &Graph, max_len: usize) -> Word {
    let len = r.gen_range(0..=max_len);
    Word(
        (0..len)
            .map(|_| {
                Letter::new(
                    r.gen_range(0..g.len()),
                    if r.gen_bool(0.5) { 1 } else { -1 },
                )
            })
            .collect(),
    )
}

fn random_sign(r: &mut impl Rng) -> i8 {
    if r.gen_bool(0.5) {
        1
    } else {
        -1
    }
}

/// Random valid elementary automorphism of `g`. Candidate kinds that the
/// graph does not support (no dominated pair, no partial-conjugation
/// component, …) are skipped by retrying.
pub fn random_generator(r: &mut impl Rng, g: &Graph) -> ElementaryAut {
    assert!(!g.is_empty(), "cannot sample automorphisms of the empty graph");
    for _ in 0..64 {
        let e = match r.gen_range(0..6) {
            0 => ElementaryAut::Inversion(r.gen_range(0..g.len())),
            1 => {
                let pairs: Vec<(VertexId, VertexId)> = g
                    .vertex_ids()
                    .flat_map(|t| g.vertex_ids().map(move |m| (t, m)))
                    .filter(|&(t, m)| t != m && g.leq_linkstar(t, m).unwrap())
                    .collect();
                let Some(&(target, multiplier)) = pairs.choose(r) else {
                    continue;
                };
                ElementaryAut::Transvection {
                    target,
                    multiplier,
                    side: if r.gen_bool(0.5) { Side::Left } else { Side::Right },
                    power: random_sign(r),
                }
            }
            2 => {
                let vertex = r.gen_range(0..g.len());
                let comps = g.conj_components(vertex).unwrap();
                if comps.is_empty() {
                    continue;
                }
                let mut component = VertexSet::new();
                for comp in &comps {
                    if r.gen_bool(0.5) {
                        component.extend(comp);
                    }
                }
                if component.is_empty() {
                    component = comps.choose(r).unwrap().clone();
                }
                ElementaryAut::PartialConj {
                    vertex,
                    component,
                    power: random_sign(r),
                }
            }
            3 => {
                let word = random_word(r, g, 3);
                if word.is_empty() {
                    continue;
                }
                ElementaryAut::Inner {
                    word,
                    power: random_sign(r),
                }
            }
            4 => {
                if g.len() > 6 {
                    continue;
                }
                let syms = g.graph_symmetries().unwrap();
                ElementaryAut::Symmetry(syms.choose(r).unwrap().clone())
            }
            _ => {
                let triples: Vec<(VertexId, VertexId, VertexId)> = g
                    .vertex_ids()
                    .flat_map(|x| {
                        g.vertex_ids().flat_map(move |y| {
                            g.vertex_ids().map(move |z| (x, y, z))
                        })
                    })
                    .filter(|&(x, y, z)| {
                        validate_generator(
                            g,
                            &ElementaryAut::CommutatorTransvection { x, y, z, power: 1 },
                        )
                        .is_ok()
                    })
                    .collect();
                let Some(&(x, y, z)) = triples.choose(r) else {
                    continue;
                };
                ElementaryAut::CommutatorTransvection {
                    x,
                    y,
                    z,
                    power: random_sign(r),
                }
            }
        };
        debug_assert!(validate_generator(g, &e).is_ok());
        return e;
    }
    ElementaryAut::Inversion(r.gen_range(0..g.len()))
}

/// Random valid automorphism word with 0..=max_gens generators.
pub fn random_aut(r: &mut impl Rng, g: &Graph, max_gens: usize) -> AutWord {
    let k = r.gen_range(0..=max_gens);
    AutWord((0..k).map(|_| random_generator(r, g)).collect())
}

/// Random conjugating automorphism: a product of inner automorphisms and
/// partial conjugations only.
pub fn random_conjugating(r: &mut impl Rng, g: &Graph, max_gens: usize) -> AutWord {
    let k = r.gen_range(0..=max_gens);
    let mut gens = Vec::new();
    while gens.len() < k {
        match random_generator(r, g) {
            e @ (ElementaryAut::Inner { .. } | ElementaryAut::PartialConj { .. }) => gens.push(e),
            _ => {}
        }
    }
    AutWord(gens)
}

/// Random regular cover built from a cyclic voltage assignment on a random
/// base graph; degree 2..=max_degree.
pub fn random_voltage_cover(
    r: &mut impl Rng,
    max_base_vertices: usize,
    max_degree: u32,
) -> CoveringMap {
    loop {
        let base = random_graph(r, max_base_vertices);
        let n = r.gen_range(2..=max_degree.max(2));
        let doc = base.to_doc();
        let voltages = doc
            .edges
            .iter()
            .map(|[a, b]| (a.clone(), b.clone(), r.gen_range(0..n)))
            .collect();
        if let Ok(c) = derived_cover(&VoltageDoc {
            base: doc,
            n,
            voltages,
        }) {
            return c;
        }
    }
}

/// A base automorphism paired with a certified lift.
#[derive(Debug, Clone)]
pub struct LiftablePair {
    pub base: AutWord,
    pub lift: AutWord,
}

/// Random product of base generators that are liftable by construction,
/// together with the concatenation of their generator-level lifts. Lifting is
/// functorial over application-order concatenation, so the pair is a verified
/// lift of the product.
pub fn random_liftable_pair(
    r: &mut impl Rng,
    c: &CoveringMap,
    max_gens: usize,
) -> Result<LiftablePair, LiftError> {
    let g = &c.base;
    let k = r.gen_range(0..=max_gens);
    let mut base = AutWord::empty();
    let mut lift = AutWord::empty();
    let mut placed = 0;
    let mut attempts = 0;
    while placed < k && attempts < 64 * k.max(1) {
        attempts += 1;
        let piece: Option<(AutWord, AutWord)> = match r.gen_range(0..5) {
            0 => {
                let v = r.gen_range(0..g.len());
                let res = lift_inversion(c, v)?;
                res.lift().map(|l| {
                    (
                        AutWord::singleton(ElementaryAut::Inversion(v)),
                        l.clone(),
                    )
                })
            }
            1 => {
                let pairs: Vec<(VertexId, VertexId)> = g
                    .vertex_ids()
                    .flat_map(|t| g.vertex_ids().map(move |m| (t, m)))
                    .filter(|&(t, m)| {
                        t != m
                            && g.leq_linkstar(t, m).unwrap()
                            && c.leq_phi(t, m).unwrap()
                    })
                    .collect();
                match pairs.choose(r) {
                    Some(&(t, m)) => lift_transvection(c, t, m)?.lift().map(|l| {
                        (
                            AutWord::singleton(ElementaryAut::Transvection {
                                target: t,
                                multiplier: m,
                                side: Side::Right,
                                power: 1,
                            }),
                            l.clone(),
                        )
                    }),
                    None => None,
                }
            }
            2 => {
                let v = r.gen_range(0..g.len());
                let comps = g.conj_components(v).unwrap();
                match comps.choose(r) {
                    Some(comp) => {
                        let cset = c.bar(v, comp)?;
                        lift_partial_conj(c, v, &cset)?.lift().map(|l| {
                            (
                                AutWord::singleton(ElementaryAut::PartialConj {
                                    vertex: v,
                                    component: cset.clone(),
                                    power: 1,
                                }),
                                l.clone(),
                            )
                        })
                    }
                    None => None,
                }
            }
            3 => {
                let z = random_word(r, g, 3);
                let l = lift_inner(c, &z)?;
                Some((
                    AutWord::singleton(ElementaryAut::Inner { word: z, power: 1 }),
                    l,
                ))
            }
            _ => {
                if g.len() > 6 {
                    None
                } else {
                    let syms = g.graph_symmetries().unwrap();
                    let sigma = syms.choose(r).unwrap().clone();
                    lift_symmetry_aut(c, &sigma)?.lift().map(|l| {
                        (
                            AutWord::singleton(ElementaryAut::Symmetry(sigma)),
                            l.clone(),
                        )
                    })
                }
            }
        };
        if let Some((b, l)) = piece {
            base = base.compose(&b);
            lift = lift.compose(&l);
            placed += 1;
        }
    }
    Ok(LiftablePair { base, lift })
}

/// A total word mapping to the trivial base element: a random total word
/// times the inverse of the letter-wise least preimage of its projection.
pub fn random_kernel_word(r: &mut impl Rng, c: &CoveringMap, max_len: usize) -> Word {
    let w = random_word(r, &c.total, max_len);
    let shadow = Word(
        w.0.iter()
            .map(|l| {
                let v = c.map_vertex(l.vertex);
                let u = *c.fiber(v).unwrap().iter().next().unwrap();
                Letter::new(u, l.sign)
            })
            .collect(),
    );
    w.concat(&shadow.inverse())
}

/// Random fiber-distorting element: 1..=max_factors factors drawn from
/// kernel-word inner automorphisms, commutator transvections that project
/// trivially, and deck symmetries. Every factor lifts the identity, so the
/// product does as well.
pub fn random_fd_element(
    r: &mut impl Rng,
    c: &CoveringMap,
    max_factors: usize,
) -> Result<AutWord, LiftError> {
    let fd_triples: Vec<(VertexId, VertexId, VertexId)> = c
        .total
        .vertex_ids()
        .flat_map(|x| {
            c.total
                .vertex_ids()
                .flat_map(move |y| c.total.vertex_ids().map(move |z| (x, y, z)))
        })
        .filter(|&(x, y, z)| {
            validate_generator(
                &c.total,
                &ElementaryAut::CommutatorTransvection { x, y, z, power: 1 },
            )
            .is_ok()
                && commutator_transvection_in_fd(c, x, y, z).unwrap_or(false)
        })
        .collect();
    let k = r.gen_range(1..=max_factors.max(1));
    let mut gens = Vec::new();
    while gens.len() < k {
        match r.gen_range(0..3) {
            0 => gens.push(ElementaryAut::Inner {
                word: random_kernel_word(r, c, 3),
                power: random_sign(r),
            }),
            1 => {
                if let Some(&(x, y, z)) = fd_triples.choose(r) {
                    gens.push(ElementaryAut::CommutatorTransvection {
                        x,
                        y,
                        z,
                        power: random_sign(r),
                    });
                }
            }
            _ => {
                let deck = c.deck_group();
                gens.push(ElementaryAut::Symmetry(
                    deck[r.gen_range(0..deck.len())].clone(),
                ));
            }
        }
    }
    Ok(AutWord(gens))
}

/// Random deck transformation.
pub fn random_deck(r: &mut impl Rng, c: &CoveringMap) -> Perm {
    let deck = c.deck_group();
    deck[r.gen_range(0..deck.len())].clone()
}
