//! Acceptance gate: one test per criterion, each printing a PASS/FAIL line.
//!
//! 1. Figure-2 cover: exact generator verdicts through the CLI.
//! 2. Figure-3 cover: commutator transvection lifts the identity.
//! 3. Free-cover inner automorphisms: fiber-distortion membership.
//! 4. Double-covered 4-cycle goldens, recomputed by local oracles.
//! 5. Word-problem equivalence against the BFS shuffle-cancel oracle.
//! 6. Round-trip suites: decompositions, certificates, closure.
//! 7. Homology properties: blow-ups, functoriality, Σ, Torelli witnesses.
//! 8. Structural lemma suites over an exhaustive graph corpus.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::Rng;

use raaglift::autos::{
    self, apply, is_conjugating, is_identity, laurence_decompose, AutError, AutWord,
    ElementaryAut,
};
use raaglift::covering::CoveringMap;
use raaglift::fixtures;
use raaglift::graph::{Graph, VertexId, VertexSet};
use raaglift::homology::{
    abelianization_matrix, deck_basis, fd_torelli_witness, ia_check, induced_base_order,
    is_blowup, sigma,
};
use raaglift::liftability::{
    decide_liftable, lift_partial_conj, lift_transvection, verify_lift, LiftResult,
};
use raaglift::sampling;
use raaglift::words::{
    bfs_oracle_equals, cyclic_reduce, equals, esupp, rank, reduce, supp, Word,
};

fn criterion(n: u32, name: &str, body: impl FnOnce() + UnwindSafe) {
    let result = catch_unwind(body);
    println!(
        "ACCEPTANCE CRITERION {n} ({name}): {}",
        if result.is_ok() { "PASS" } else { "FAIL" }
    );
    if let Err(e) = result {
        resume_unwind(e);
    }
}

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn parse(g: &Graph, text: &str) -> Word {
    Word::parse(g, text).unwrap()
}

// ---------------------------------------------------------------------------

#[test]
fn criterion_1_figure_2_cover() {
    criterion(1, "figure-2 cover verdicts", || {
        let start = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_raaglift"))
            .arg("analyze")
            .arg(fixtures_dir().join("fix_notlift.cover.json"))
            .args(["--format", "json"])
            .output()
            .unwrap();
        let elapsed = start.elapsed();
        assert!(out.status.success(), "analyze failed: {out:?}");
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();

        let trans = v["transvections"].as_array().unwrap();
        let row = |t: &str, m: &str| {
            trans
                .iter()
                .find(|r| r["target"] == t && r["multiplier"] == m)
                .unwrap_or_else(|| panic!("missing transvection row ({t}, {m})"))
        };
        let t43 = row("v4", "v3");
        assert_eq!(t43["verdict"], "liftable");
        assert_eq!(t43["verified"], true);
        let t21 = row("v2", "v1");
        assert_eq!(t21["verdict"], "not_liftable");

        let pcs = v["partial_conjugations"].as_array().unwrap();
        let pc_row = |comp: &[&str]| {
            pcs.iter()
                .find(|r| r["vertex"] == "v" && r["component"] == serde_json::json!(comp))
                .unwrap_or_else(|| panic!("missing partial-conjugation row {comp:?}"))
        };
        let blue_red = serde_json::json!(["r1", "r2", "v2", "v2b"]);
        let blue = pc_row(&["v2", "v2b"]);
        assert_eq!(blue["component_verdict"]["verdict"], "not_liftable");
        assert_eq!(blue["bar"], blue_red);
        assert_eq!(blue["closure_verdict"]["verdict"], "liftable");
        assert_eq!(blue["closure_verdict"]["verified"], true);
        let red = pc_row(&["r1", "r2"]);
        assert_eq!(red["component_verdict"]["verdict"], "not_liftable");
        assert_eq!(red["bar"], blue_red);
        assert_eq!(red["closure_verdict"]["verdict"], "liftable");

        assert!(elapsed < Duration::from_secs(1), "analyze took {elapsed:?}");
    });
}

#[test]
fn criterion_2_figure_3_cover() {
    criterion(2, "figure-3 commutator transvection", || {
        let start = Instant::now();
        let c = fixtures::fix_hex();
        assert_eq!(c.deck_group().len(), 2);
        let f = AutWord::singleton(ElementaryAut::CommutatorTransvection {
            x: c.total.vertex("x1").unwrap(),
            y: c.total.vertex("y1").unwrap(),
            z: c.total.vertex("z1").unwrap(),
            power: 1,
        });
        assert!(verify_lift(&c, &f, &AutWord::empty()).unwrap());
        assert!(ia_check(&c.total, &f).unwrap());
        let mu = fd_torelli_witness(&c, &f, true).unwrap().unwrap();
        assert!(mu.is_identity());
        let elapsed = start.elapsed();
        assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    });
}

#[test]
fn criterion_3_free_cover_inners() {
    criterion(3, "free-cover fiber distortion", || {
        let c = fixtures::fix_free();
        let inner = |text: &str| {
            AutWord::singleton(ElementaryAut::Inner {
                word: parse(&c.total, text),
                power: 1,
            })
        };
        let member = inner("b1 a3 a2^-1 b2^-1");
        assert!(verify_lift(&c, &member, &AutWord::empty()).unwrap());
        let non_member = inner("b1 a3 a2^-1 c1 b2^-1 c1^-1");
        assert!(!verify_lift(&c, &non_member, &AutWord::empty()).unwrap());
    });
}

// Local BFS component oracle, independent of graph.rs internals.
fn oracle_component(g: &Graph, seed: VertexId, forbidden: &VertexSet) -> VertexSet {
    let mut seen = VertexSet::new();
    let mut queue = VecDeque::from([seed]);
    seen.insert(seed);
    while let Some(u) = queue.pop_front() {
        for w in g.vertex_ids() {
            if g.adjacent(u, w) && !forbidden.contains(&w) && seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen
}

#[test]
fn criterion_4_c8_goldens() {
    criterion(4, "double-covered 4-cycle goldens", || {
        let c = fixtures::fix_c8();
        let g = &c.base;
        let w = g.vertex("w").unwrap();
        let y = g.vertex("y").unwrap();
        assert!(g.leq_linkstar(w, y).unwrap());
        assert!(!c.leq_phi(w, y).unwrap());

        // Fiber oracle for the cover-refined order: every fiber member of w
        // must sit below some fiber member of y upstairs.
        let oracle_leq_phi = c.fiber(w).unwrap().iter().all(|&u| {
            c.fiber(y).unwrap().iter().any(|&u2| {
                c.total
                    .link(u)
                    .unwrap()
                    .iter()
                    .all(|&t| u2 == t || c.total.adjacent(u2, t))
            })
        });
        assert!(!oracle_leq_phi);

        match lift_transvection(&c, w, y).unwrap() {
            LiftResult::NotLiftable { .. } => {}
            other => panic!("expected NotLiftable, got {other:?}"),
        }

        // Closure oracle: intersect the components of the chosen preimage of
        // {y} off each fiber member's star, then push down.
        let y_set: VertexSet = [y].into();
        let b_tilde = *c.preimage(&y_set).iter().next().unwrap();
        let mut d: Option<VertexSet> = None;
        for &u in c.fiber(w).unwrap() {
            let comp = oracle_component(&c.total, b_tilde, &c.total.star(u).unwrap());
            d = Some(match d {
                None => comp,
                Some(prev) => prev.intersection(&comp).copied().collect(),
            });
        }
        let oracle_bar = c.map_set(&d.unwrap());
        assert_eq!(oracle_bar, y_set);
        assert_eq!(c.bar(w, &y_set).unwrap(), y_set);

        match lift_partial_conj(&c, w, &y_set).unwrap() {
            LiftResult::Liftable { verified, .. } => assert!(verified),
            other => panic!("expected Liftable, got {other:?}"),
        }
        assert_eq!(c.deck_group().len(), 2);
    });
}

#[test]
fn criterion_5_word_oracle() {
    criterion(5, "word-problem oracle equivalence", || {
        let start = Instant::now();
        let mut r = sampling::rng(0x505);
        let mut graphs = 0;
        while graphs < 20 {
            let g = sampling::random_graph(&mut r, 5);
            graphs += 1;
            // Exhaustive triviality check over a bounded alphabet.
            let alphabet: Vec<(VertexId, i8)> = g
                .vertex_ids()
                .take(3)
                .flat_map(|v| [(v, 1i8), (v, -1i8)])
                .collect();
            let mut words: Vec<Vec<(VertexId, i8)>> = vec![Vec::new()];
            for len in 1..=4 {
                let mut level = Vec::new();
                for w in words.iter().filter(|w| w.len() == len - 1) {
                    for &l in &alphabet {
                        let mut next = w.clone();
                        next.push(l);
                        level.push(next);
                    }
                }
                words.extend(level);
            }
            for letters in &words {
                let w = Word::from_letters(letters.iter().copied());
                let ours = equals(&g, &w, &Word::empty());
                let oracle = bfs_oracle_equals(&g, &w, &Word::empty(), 8).unwrap();
                assert_eq!(ours, oracle, "disagreement on {}", w.format(&g));
            }
            // Sampled pairwise equality up to combined length 8.
            for _ in 0..200 {
                let w1 = sampling::random_word(&mut r, &g, 4);
                let w2 = sampling::random_word(&mut r, &g, 4);
                let ours = equals(&g, &w1, &w2);
                let oracle = bfs_oracle_equals(&g, &w1, &w2, 8).unwrap();
                assert_eq!(
                    ours,
                    oracle,
                    "disagreement on {} vs {}",
                    w1.format(&g),
                    w2.format(&g)
                );
            }
        }
        let elapsed = start.elapsed();
        assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    });
}

/// The shared closure suite for criteria 6(c)/(d) and 7: seeded covers with
/// products of generator-level liftable base automorphisms.
fn closure_suite(cases: usize) -> Vec<(CoveringMap, AutWord)> {
    let mut r = sampling::rng(0x606);
    (0..cases)
        .map(|_| {
            let c = sampling::random_voltage_cover(&mut r, 5, 3);
            let pair = sampling::random_liftable_pair(&mut r, &c, 4).unwrap();
            (c, pair.base)
        })
        .collect()
}

#[test]
fn criterion_6_round_trips() {
    criterion(6, "round-trip suites", || {
        // (a) partial-conjugation peeling recomposes.
        let mut r = sampling::rng(0x6a);
        let mut done = 0;
        while done < 500 {
            let g = sampling::random_graph(&mut r, 6);
            let a = sampling::random_conjugating(&mut r, &g, 4);
            if is_identity(&g, &a) {
                continue;
            }
            let maximal = r.gen_bool(0.5);
            // Recomposition is verified inside before returning.
            laurence_decompose(&g, &a, maximal).unwrap();
            done += 1;
        }

        // (b) conjugating-times-reduced decomposition recomposes. The greedy
        // transvection peeling is incomplete (a documented open question);
        // Stuck diagnostics are logged and bounded like suite (d)'s.
        let mut r = sampling::rng(0x6b);
        let mut stuck = 0;
        for _ in 0..500 {
            let g = sampling::random_graph(&mut r, 6);
            let a = sampling::random_aut(&mut r, &g, 5);
            match autos::decompose_gh(&g, &a) {
                Ok((conj, reduced)) => {
                    assert!(is_conjugating(&g, &conj));
                    for v in g.vertex_ids() {
                        let hv = apply(&g, &reduced, &Word::generator(v));
                        assert_eq!(cyclic_reduce(&g, &hv).core, hv);
                    }
                }
                Err(e @ (AutError::Stuck { .. } | AutError::ExponentSum { .. })) => {
                    println!("decomposition suite stuck: {e}");
                    stuck += 1;
                }
                Err(e) => panic!("decomposition failed: {e}"),
            }
        }
        println!("decomposition suite: {}/500 decomposed ({stuck} stuck)", 500 - stuck);
        assert!(stuck * 100 <= 500, "stuck rate above 1%");

        // (c) + (d) closure: products of liftable generators decide Liftable,
        // and every certificate re-verifies.
        let mut unknown = 0;
        let suite = closure_suite(500);
        for (c, f) in &suite {
            match decide_liftable(c, f).unwrap() {
                LiftResult::Liftable { lift, verified } => {
                    assert!(verified);
                    assert!(verify_lift(c, &lift, f).unwrap());
                }
                LiftResult::NotLiftable { witness } => {
                    panic!("liftable-by-construction input judged NotLiftable: {witness}")
                }
                LiftResult::Unknown { diagnostic } => {
                    println!("closure suite Unknown: {diagnostic}");
                    unknown += 1;
                }
            }
        }
        println!(
            "closure suite: {}/{} decided Liftable ({unknown} Unknown)",
            suite.len() - unknown,
            suite.len()
        );
        assert!(unknown * 100 <= suite.len(), "Unknown rate above 1%");
    });
}

#[test]
fn criterion_7_homology() {
    criterion(7, "homology properties", || {
        // Blow-up predicate for every verified lift of the closure suite.
        let mut blowups = 0;
        for (c, f) in &closure_suite(500) {
            // The blow-up lemma needs an isolated-vertex-free base.
            if c.base.has_isolated_vertex() {
                continue;
            }
            let LiftResult::Liftable { lift, .. } = decide_liftable(c, f).unwrap() else {
                continue;
            };
            let db = deck_basis(c, None).unwrap();
            let big = abelianization_matrix(&c.total, &lift, &db.order).unwrap();
            let base_order = induced_base_order(c, &db);
            let small = abelianization_matrix(&c.base, f, &base_order).unwrap();
            assert!(is_blowup(&big, &small).unwrap(), "lift matrix is not a blow-up");
            blowups += 1;
        }
        println!("blow-up suite: {blowups} verified lifts checked");
        assert!(blowups >= 100, "too few blow-up cases");

        // Functoriality on random generator pairs.
        let mut r = sampling::rng(0x7f);
        for _ in 0..500 {
            let g = sampling::random_graph(&mut r, 6);
            let a = sampling::random_aut(&mut r, &g, 3);
            let b = sampling::random_aut(&mut r, &g, 3);
            let basis: Vec<VertexId> = g.vertex_ids().collect();
            let ma = abelianization_matrix(&g, &a, &basis).unwrap();
            let mb = abelianization_matrix(&g, &b, &basis).unwrap();
            let mab = abelianization_matrix(&g, &a.compose(&b), &basis).unwrap();
            // a.compose(b) applies a first, so the matrix is M(b)·M(a).
            assert_eq!(mab, mb.mul(&ma).unwrap());
        }

        // Σ additivity, reduction invariance, and the commutator-kernel
        // characterization against an independent letter count.
        let mut r = sampling::rng(0x75);
        for _ in 0..500 {
            let c = sampling::random_voltage_cover(&mut r, 4, 3);
            let w1 = sampling::random_word(&mut r, &c.total, 5);
            let w2 = sampling::random_word(&mut r, &c.total, 5);
            let s1 = sigma(&c, &w1).unwrap();
            let s2 = sigma(&c, &w2).unwrap();
            let s12 = sigma(&c, &w1.concat(&w2)).unwrap();
            let sum: Vec<i64> = s1.iter().zip(&s2).map(|(a, b)| a + b).collect();
            assert_eq!(s12, sum);
            assert_eq!(sigma(&c, &reduce(&c.total, &w1)).unwrap(), s1);
            let mut counts: BTreeMap<VertexId, i64> = BTreeMap::new();
            for l in &w1.0 {
                *counts.entry(l.vertex).or_default() += l.sign as i64;
            }
            let in_commutator = counts.values().all(|&k| k == 0);
            assert_eq!(s1.iter().all(|&k| k == 0), in_commutator);
        }

        // Torelli-correcting witness for generated fiber-distorting elements.
        let mut r = sampling::rng(0x73);
        for _ in 0..200 {
            let c = sampling::random_voltage_cover(&mut r, 4, 3);
            let f = sampling::random_fd_element(&mut r, &c, 6).unwrap();
            let mu = fd_torelli_witness(&c, &f, true).unwrap();
            if !c.base.has_isolated_vertex() {
                assert!(mu.is_some(), "no witness for a fiber-distorting element");
            }
        }
    });
}

fn distance(g: &Graph, a: VertexId, b: VertexId) -> Option<usize> {
    let mut dist = vec![None; g.len()];
    dist[a] = Some(0);
    let mut queue = VecDeque::from([a]);
    while let Some(u) = queue.pop_front() {
        for w in g.vertex_ids() {
            if g.adjacent(u, w) && dist[w].is_none() {
                dist[w] = Some(dist[u].unwrap() + 1);
                queue.push_back(w);
            }
        }
    }
    dist[b]
}

#[test]
fn criterion_8_structural_lemmas() {
    criterion(8, "structural lemma suites", || {
        let mut graphs: Vec<Graph> = vec![
            fixtures::c4(),
            fixtures::k3(),
            fixtures::c8_total(),
            fixtures::hex_base(),
            fixtures::hex_total(),
            fixtures::notlift_base(),
            fixtures::notlift_total(),
            fixtures::free_base(),
        ];
        let mut r = sampling::rng(0x808);
        for _ in 0..40 {
            graphs.push(sampling::random_graph(&mut r, 8));
        }

        for g in &graphs {
            // Link-star preorder: reflexive and transitive (all triples).
            for v in g.vertex_ids() {
                assert!(g.leq_linkstar(v, v).unwrap());
            }
            for a in g.vertex_ids() {
                for b in g.vertex_ids() {
                    for c in g.vertex_ids() {
                        if g.leq_linkstar(a, b).unwrap() && g.leq_linkstar(b, c).unwrap() {
                            assert!(g.leq_linkstar(a, c).unwrap());
                        }
                    }
                }
            }
            // Class dichotomy: induced subgraph complete or edgeless.
            for v in g.vertex_ids() {
                let (class, _) = g.ls_class(v).unwrap();
                let members: Vec<VertexId> = class.iter().copied().collect();
                let complete = members
                    .iter()
                    .all(|&a| members.iter().all(|&b| a == b || g.adjacent(a, b)));
                let edgeless = members
                    .iter()
                    .all(|&a| members.iter().all(|&b| !g.adjacent(a, b)));
                assert!(complete || edgeless);
            }
            // Adjacency lemma: classes of adjacent vertices pairwise joined.
            for v1 in g.vertex_ids() {
                for v2 in g.vertex_ids() {
                    if !g.adjacent(v1, v2) {
                        continue;
                    }
                    let (c1, _) = g.ls_class(v1).unwrap();
                    let (c2, _) = g.ls_class(v2).unwrap();
                    for &u1 in &c1 {
                        for &u2 in &c2 {
                            if u1 != u2 {
                                assert!(g.adjacent(u1, u2));
                            }
                        }
                    }
                }
            }
            // order_vertices: no later vertex strictly dominates an earlier.
            let order = g.order_vertices();
            for i in 0..order.len() {
                for j in (i + 1)..order.len() {
                    let strictly_greater = g.leq_linkstar(order[i], order[j]).unwrap()
                        && !g.leq_linkstar(order[j], order[i]).unwrap();
                    assert!(!strictly_greater);
                }
            }
            // Rank lemma on random words.
            let mut rw = sampling::rng(0x81);
            for _ in 0..30 {
                let w = sampling::random_word(&mut rw, g, 6);
                let core = cyclic_reduce(g, &w).core;
                if core.is_empty() {
                    continue;
                }
                let rk = rank(g, &core).unwrap();
                for &v in &supp(g, &core) {
                    let st = g.star(v).unwrap().len();
                    assert!(st >= rk, "|st(v)| < rank(core)");
                    if st == rk {
                        for &v2 in &supp(g, &core) {
                            assert!(g.leq_linkstar(v, v2).unwrap());
                        }
                    }
                }
            }
            // Far-vertices lemma on isolated-vertex-free graphs.
            if !g.has_isolated_vertex() {
                let mut rf = sampling::rng(0x8f);
                for _ in 0..5 {
                    let f = sampling::random_aut(&mut rf, g, 4);
                    for v1 in g.vertex_ids() {
                        let im = apply(g, &f, &Word::generator(v1));
                        let es = esupp(g, &im);
                        if !es.contains(&v1) {
                            continue;
                        }
                        for v2 in g.vertex_ids() {
                            if distance(g, v1, v2).map_or(true, |d| d >= 3) {
                                assert!(
                                    !es.contains(&v2),
                                    "far vertex in an essential support"
                                );
                            }
                        }
                    }
                }
            }
        }

        // Covering-map lemmas over fixture and sampled covers.
        let mut covers: Vec<CoveringMap> = vec![
            CoveringMap::identity(&fixtures::c4()),
            fixtures::fix_c8(),
            fixtures::fix_hex(),
            fixtures::fix_notlift(),
            fixtures::fix_free(),
        ];
        let mut r = sampling::rng(0x809);
        for _ in 0..20 {
            covers.push(sampling::random_voltage_cover(&mut r, 5, 3));
        }
        for c in &covers {
            for u1 in c.total.vertex_ids() {
                // Order preservation downstairs, and the up-set image law.
                for u2 in c.total.vertex_ids() {
                    if c.total.leq_linkstar(u1, u2).unwrap() {
                        assert!(c
                            .base
                            .leq_linkstar(c.map_vertex(u1), c.map_vertex(u2))
                            .unwrap());
                    }
                    // Rigidity for non-isolated vertices.
                    if !c.total.is_isolated(u1)
                        && c.total.leq_linkstar(u1, u2).unwrap()
                        && c.map_vertex(u1) == c.map_vertex(u2)
                    {
                        assert_eq!(u1, u2);
                    }
                }
                let up_total: VertexSet = c
                    .total
                    .vertex_ids()
                    .filter(|&u2| c.total.leq_linkstar(u1, u2).unwrap())
                    .collect();
                let up_base: VertexSet = c
                    .base
                    .vertex_ids()
                    .filter(|&v2| c.leq_phi(c.map_vertex(u1), v2).unwrap())
                    .collect();
                assert_eq!(c.map_set(&up_total), up_base);
            }
            // Bar closure laws per base vertex.
            for v in c.base.vertex_ids() {
                let comps = c.base.conj_components(v).unwrap();
                let bars: Vec<BTreeSet<VertexId>> = comps
                    .iter()
                    .map(|b| c.bar(v, b).unwrap())
                    .collect();
                for (b, bar) in comps.iter().zip(&bars) {
                    assert!(b.is_subset(bar));
                    assert_eq!(&c.bar(v, bar).unwrap(), bar);
                }
                for i in 0..bars.len() {
                    for j in (i + 1)..bars.len() {
                        assert!(
                            bars[i] == bars[j] || bars[i].is_disjoint(&bars[j]),
                            "closures neither equal nor disjoint"
                        );
                    }
                }
            }
        }
    });
}
