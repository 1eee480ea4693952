//! Hand-built graphs and covering maps used across the test suites and
//! shipped as data files under `fixtures/`.

use std::collections::BTreeMap;

use crate::covering::CoveringMap;
use crate::graph::Graph;

/// The 4-cycle w–x–y–z–w.
pub fn c4() -> Graph {
    Graph::new(
        &["w", "x", "y", "z"],
        &[("w", "x"), ("x", "y"), ("y", "z"), ("z", "w")],
    )
    .unwrap()
}

/// The complete graph on a, b, c.
pub fn k3() -> Graph {
    Graph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap()
}

/// The 8-cycle 1–2–…–8–1.
pub fn c8_total() -> Graph {
    let names: Vec<String> = (1..=8).map(|i| i.to_string()).collect();
    let edges: Vec<(String, String)> = (1..=8)
        .map(|i| (i.to_string(), (i % 8 + 1).to_string()))
        .collect();
    Graph::new(&names, &edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect::<Vec<_>>())
        .unwrap()
}

/// The 8-cycle double-covering the 4-cycle: `i` maps to `w x y z` cyclically.
pub fn fix_c8() -> CoveringMap {
    let base_names = ["w", "x", "y", "z"];
    let assignment: BTreeMap<String, String> = (1..=8u32)
        .map(|i| (i.to_string(), base_names[((i - 1) % 4) as usize].to_owned()))
        .collect();
    CoveringMap::new(c8_total(), c4(), &assignment).unwrap()
}

/// Triangle-with-attachments base: triangle s–y–z with a pendant x at s,
/// and a triangle y–a–b attached at y.
pub fn hex_base() -> Graph {
    Graph::new(
        &["x", "s", "y", "z", "a", "b"],
        &[
            ("x", "s"),
            ("s", "y"),
            ("s", "z"),
            ("y", "z"),
            ("y", "a"),
            ("y", "b"),
            ("a", "b"),
        ],
    )
    .unwrap()
}

/// Hexagon-with-attachments total graph of the double cover of `hex_base`.
pub fn hex_total() -> Graph {
    Graph::new(
        &[
            "x1", "x2", "p", "q", "y1", "y2", "z1", "z2", "a1", "a2", "b1", "b2",
        ],
        &[
            ("x1", "p"),
            ("p", "y1"),
            ("y1", "z2"),
            ("z2", "q"),
            ("q", "y2"),
            ("y2", "z1"),
            ("z1", "p"),
            ("x2", "q"),
            ("y1", "a1"),
            ("a1", "b1"),
            ("b1", "y1"),
            ("y2", "a2"),
            ("a2", "b2"),
            ("b2", "y2"),
        ],
    )
    .unwrap()
}

/// The hexagon double cover: strips trailing digits; p and q map to s.
pub fn fix_hex() -> CoveringMap {
    let assignment: BTreeMap<String, String> = [
        ("x1", "x"),
        ("x2", "x"),
        ("p", "s"),
        ("q", "s"),
        ("y1", "y"),
        ("y2", "y"),
        ("z1", "z"),
        ("z2", "z"),
        ("a1", "a"),
        ("a2", "a"),
        ("b1", "b"),
        ("b2", "b"),
    ]
    .map(|(k, v)| (k.to_owned(), v.to_owned()))
    .into();
    CoveringMap::new(hex_total(), hex_base(), &assignment).unwrap()
}

/// Base of the not-liftable example: a center v with three triangles hung
/// off it — the blue pair {v2, v2b} behind v1, the red pair {r1, r2} behind
/// v1b, and the square remnant {v4, v4b} behind v3.
pub fn notlift_base() -> Graph {
    Graph::new(
        &["v", "v1", "v1b", "v2", "v2b", "r1", "r2", "v3", "v4", "v4b"],
        &[
            ("v", "v1"),
            ("v1", "v2"),
            ("v2", "v2b"),
            ("v2b", "v1"),
            ("v", "v1b"),
            ("v1b", "r1"),
            ("r1", "r2"),
            ("r2", "v1b"),
            ("v", "v3"),
            ("v3", "v4"),
            ("v4", "v4b"),
            ("v4b", "v3"),
        ],
    )
    .unwrap()
}

/// Total graph of the not-liftable double cover: the v3-triangles unroll to
/// two disjoint squares while the blue and red triangles unroll to 6-cycles
/// weaving through both sheets.
pub fn notlift_total() -> Graph {
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut push = |a: &str, b: &str| edges.push((a.to_owned(), b.to_owned()));
    for i in ["_1", "_2"] {
        push(&format!("v{i}"), &format!("v1{i}"));
        push(&format!("v{i}"), &format!("v1b{i}"));
        push(&format!("v{i}"), &format!("v3{i}"));
        push(&format!("v3{i}"), &format!("v4{i}"));
        push(&format!("v4{i}"), &format!("v4b{i}"));
        push(&format!("v4b{i}"), &format!("v3{i}"));
    }
    // Blue 6-cycle.
    push("v1_1", "v2_1");
    push("v2_1", "v2b_1");
    push("v2b_1", "v1_2");
    push("v1_2", "v2_2");
    push("v2_2", "v2b_2");
    push("v2b_2", "v1_1");
    // Red 6-cycle.
    push("v1b_1", "r1_1");
    push("r1_1", "r2_1");
    push("r2_1", "v1b_2");
    push("v1b_2", "r1_2");
    push("r1_2", "r2_2");
    push("r2_2", "v1b_1");
    let vertices: Vec<String> = notlift_base()
        .vertex_ids()
        .flat_map(|v| {
            let name = notlift_base().name(v).to_owned();
            [format!("{name}_1"), format!("{name}_2")]
        })
        .collect();
    Graph::new(
        &vertices.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
        &edges
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect::<Vec<_>>(),
    )
    .unwrap()
}

/// The not-liftable double cover: `name_i` maps to `name`.
pub fn fix_notlift() -> CoveringMap {
    let base = notlift_base();
    let assignment: BTreeMap<String, String> = base
        .vertex_ids()
        .flat_map(|v| {
            let name = base.name(v).to_owned();
            [
                (format!("{name}_1"), name.clone()),
                (format!("{name}_2"), name),
            ]
        })
        .collect();
    CoveringMap::new(notlift_total(), base, &assignment).unwrap()
}

/// Three isolated vertices (a free group of rank 3).
pub fn free_base() -> Graph {
    Graph::discrete(&["a", "b", "c"]).unwrap()
}

/// Nine isolated vertices triple-covering three.
pub fn fix_free() -> CoveringMap {
    let names: Vec<String> = ["a", "b", "c"]
        .iter()
        .flat_map(|n| (1..=3).map(move |i| format!("{n}{i}")))
        .collect();
    let total =
        Graph::discrete(&names)
            .unwrap();
    let assignment: BTreeMap<String, String> = names
        .iter()
        .map(|n| (n.clone(), n[..1].to_owned()))
        .collect();
    CoveringMap::new(total, free_base(), &assignment).unwrap()
}

/// A connected 3-fold cover with trivial deck group (hence not regular):
/// two squares sharing a vertex, unrolled by non-commuting permutation
/// voltages in the symmetric group on three sheets.
pub fn nonregular_cover() -> CoveringMap {
    let base = Graph::new(
        &["v", "a1", "a2", "a3", "b1", "b2", "b3"],
        &[
            ("v", "a1"),
            ("a1", "a2"),
            ("a2", "a3"),
            ("a3", "v"),
            ("v", "b1"),
            ("b1", "b2"),
            ("b2", "b3"),
            ("b3", "v"),
        ],
    )
    .unwrap();
    // Sheet permutations per oriented base edge: a transposition on a2-a3
    // and a 3-cycle on b2-b3, identity elsewhere.
    let perm_for = |a: &str, b: &str| -> [usize; 3] {
        match (a, b) {
            ("a2", "a3") => [1, 0, 2],
            ("b2", "b3") => [1, 2, 0],
            _ => [0, 1, 2],
        }
    };
    let name = |v: &str, k: usize| format!("{v}.{k}");
    let mut vertices = Vec::new();
    let mut assignment = BTreeMap::new();
    for v in base.vertex_ids() {
        for k in 0..3 {
            vertices.push(name(base.name(v), k));
            assignment.insert(name(base.name(v), k), base.name(v).to_owned());
        }
    }
    let mut edges = Vec::new();
    for a in base.vertex_ids() {
        for &b in base.link(a).unwrap() {
            if a < b {
                let pi = perm_for(base.name(a), base.name(b));
                for (k, &img) in pi.iter().enumerate() {
                    edges.push((name(base.name(a), k), name(base.name(b), img)));
                }
            }
        }
    }
    let total = Graph::new(
        &vertices.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
        &edges
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect::<Vec<_>>(),
    )
    .unwrap();
    CoveringMap::new(total, base, &assignment).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nonregular_fixture_is_connected_and_irregular() {
        let cover = nonregular_cover();
        assert_eq!(
            cover
                .total
                .components(&cover.total.all_vertices())
                .unwrap()
                .len(),
            1
        );
        assert_eq!(cover.deck_group().len(), 1);
        assert!(!cover.is_regular());
    }
}
