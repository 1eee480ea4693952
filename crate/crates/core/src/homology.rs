//! The action on first homology: abelianization matrices, the per-deck-class
//! occurrence-counting maps, deck-ordered bases, the blow-up predicate,
//! exchange reduction over the augmented total graph, IA membership, and the
//! Torelli-correcting deck element for fiber-distortion automorphisms.

use crate::autos::{self, AutError, AutWord, ElementaryAut};
use crate::covering::{CoverError, CoveringMap};
use crate::graph::{Graph, GraphError, Perm, VertexId};
use crate::liftability::{verify_lift, LiftError};
use crate::words::{reduce, Word, WordError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HomologyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("word does not map to the trivial base element")]
    NotInKernel,
    #[error("preferred vertices are comparable: {0}")]
    ComparableVertices(String),
    #[error("input is not a lift of the identity")]
    NotFiberDistortion,
    #[error("no Torelli-correcting deck element; existence is open for isolated-vertex bases")]
    Undecidable,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// A square integer matrix with an attached ordered vertex basis. Row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub basis: Vec<VertexId>,
    pub entries: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(basis: Vec<VertexId>) -> Self {
        let n = basis.len();
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        IntMatrix { basis, entries }
    }

    pub fn n(&self) -> usize {
        self.basis.len()
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.n() + col]
    }

    pub fn is_identity(&self) -> bool {
        self == &IntMatrix::identity(self.basis.clone())
    }

    /// Matrix product `self · rhs` (bases must agree).
    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, HomologyError> {
        if self.basis != rhs.basis {
            return Err(HomologyError::BasisMismatch(
                "product of matrices over different bases".to_owned(),
            ));
        }
        let n = self.n();
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        Ok(IntMatrix {
            basis: self.basis.clone(),
            entries,
        })
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> i64 {
        let n = self.n();
        if n == 0 {
            return 1;
        }
        let mut m: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j)).collect())
            .collect();
        let mut sign = 1i64;
        let mut prev = 1i64;
        for k in 0..n - 1 {
            if m[k][k] == 0 {
                let Some(swap) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                    return 0;
                };
                m.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
                m[i][k] = 0;
            }
            prev = m[k][k];
        }
        sign * m[n - 1][n - 1]
    }
}

fn basis_positions(g: &Graph, basis: &[VertexId]) -> Result<Vec<usize>, HomologyError> {
    if basis.len() != g.len() {
        return Err(HomologyError::BasisMismatch(format!(
            "basis has {} entries for a graph on {} vertices",
            basis.len(),
            g.len()
        )));
    }
    let mut pos = vec![usize::MAX; g.len()];
    for (i, &v) in basis.iter().enumerate() {
        g.check_vertex(v)?;
        if pos[v] != usize::MAX {
            return Err(HomologyError::BasisMismatch(format!(
                "vertex `{}` repeats in the basis",
                g.name(v)
            )));
        }
        pos[v] = i;
    }
    Ok(pos)
}

/// The matrix of the induced action on first homology, columns-as-images:
/// the column of a basis vertex holds the signed letter counts of its image.
/// Composition corresponds to matrix product (later-applied on the left).
pub fn abelianization_matrix(
    g: &Graph,
    a: &AutWord,
    basis: &[VertexId],
) -> Result<IntMatrix, HomologyError> {
    autos::validate(g, a)?;
    let pos = basis_positions(g, basis)?;
    let n = basis.len();
    let mut entries = vec![0i64; n * n];
    for (col, &v) in basis.iter().enumerate() {
        let im = autos::apply(g, a, &Word::generator(v));
        for l in &im.0 {
            entries[pos[l.vertex] * n + col] += l.sign as i64;
        }
    }
    let m = IntMatrix {
        basis: basis.to_vec(),
        entries,
    };
    let det = m.det();
    if det != 1 && det != -1 {
        return Err(HomologyError::Internal(format!(
            "automorphism matrix has determinant {det}"
        )));
    }
    Ok(m)
}

/// Membership in the Torelli kernel at the homology level: the induced
/// matrix is the identity.
pub fn ia_check(g: &Graph, a: &AutWord) -> Result<bool, HomologyError> {
    let basis: Vec<VertexId> = g.vertex_ids().collect();
    Ok(abelianization_matrix(g, a, &basis)?.is_identity())
}

/// An ordered basis of the total graph whose contiguous runs are the
/// deck-equivalence classes (the fibers), classes ordered so that every
/// strictly link-star-greater class comes first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeckBasis {
    pub order: Vec<VertexId>,
    pub classes: Vec<Vec<VertexId>>,
}

/// Orders the deck classes greatest-first and blows each class up into its
/// members. When `prefer_first = (u, u′)` with link-star-incomparable
/// classes, the class of `u` is additionally placed before the class of
/// `u′`.
pub fn deck_basis(
    c: &CoveringMap,
    prefer_first: Option<(VertexId, VertexId)>,
) -> Result<DeckBasis, HomologyError> {
    // Classes are the fibers, keyed by base vertex; members in id order.
    let classes: Vec<Vec<VertexId>> = c
        .base
        .vertex_ids()
        .map(|v| c.fiber(v).unwrap().iter().copied().collect())
        .collect();
    // Class-level preorder: [x] ≳ [y] iff some member of [x] dominates some
    // member of [y]; deck symmetry makes this well defined.
    let geq = |a: usize, b: usize| {
        classes[a].iter().any(|&x| {
            classes[b]
                .iter()
                .any(|&y| c.total.leq_linkstar(y, x).unwrap())
        })
    };
    let mut first_part: Vec<usize> = (0..classes.len()).collect();
    let mut second_part: Vec<usize> = Vec::new();
    if let Some((u, u2)) = prefer_first {
        c.total.check_vertex(u)?;
        c.total.check_vertex(u2)?;
        let cu = c.map_vertex(u);
        let cu2 = c.map_vertex(u2);
        if geq(cu2, cu) {
            return Err(HomologyError::ComparableVertices(format!(
                "the class of `{}` already dominates the class of `{}`",
                c.total.name(u2),
                c.total.name(u)
            )));
        }
        // Everything below-or-equivalent to u′'s class goes last; the class
        // of u is not among it, so it lands in front.
        second_part = (0..classes.len()).filter(|&i| geq(cu2, i)).collect();
        first_part.retain(|i| !second_part.contains(i));
    }
    let layer_sort = |mut remaining: Vec<usize>| -> Vec<usize> {
        let mut out = Vec::with_capacity(remaining.len());
        while !remaining.is_empty() {
            let maximal: Vec<usize> = remaining
                .iter()
                .copied()
                .filter(|&i| {
                    !remaining
                        .iter()
                        .any(|&j| j != i && geq(j, i) && !geq(i, j))
                })
                .collect();
            assert!(!maximal.is_empty(), "class order has a strict cycle");
            remaining.retain(|i| !maximal.contains(i));
            out.extend(maximal);
        }
        out
    };
    let mut class_order = layer_sort(first_part);
    class_order.extend(layer_sort(second_part));
    let classes: Vec<Vec<VertexId>> = class_order.into_iter().map(|i| classes[i].clone()).collect();
    let order: Vec<VertexId> = classes.iter().flatten().copied().collect();
    Ok(DeckBasis { order, classes })
}

/// The base order induced from a deck basis through the covering map.
pub fn induced_base_order(c: &CoveringMap, db: &DeckBasis) -> Vec<VertexId> {
    db.classes.iter().map(|class| c.map_vertex(class[0])).collect()
}

/// The concatenated per-class signed occurrence vectors of a word over the
/// total graph (or the augmented total graph — same vertices): its
/// abelianization in the deck-basis order.
pub fn sigma(c: &CoveringMap, w: &Word) -> Result<Vec<i64>, HomologyError> {
    let db = deck_basis(c, None)?;
    let mut counts = vec![0i64; c.total.len()];
    for l in &w.0 {
        c.total.check_vertex(l.vertex)?;
        counts[l.vertex] += l.sign as i64;
    }
    Ok(db.order.iter().map(|&u| counts[u]).collect())
}

/// Whether `big` is a blow up of `small`: in every block, every column is
/// zero except for exactly one entry equal to the corresponding entry of
/// `small` (zero entries force zero blocks).
pub fn is_blowup(big: &IntMatrix, small: &IntMatrix) -> Result<bool, HomologyError> {
    let m = small.n();
    if m == 0 || big.n() % m != 0 {
        return Err(HomologyError::BasisMismatch(format!(
            "block structure mismatch: {}×{} against {}×{}",
            big.n(),
            big.n(),
            m,
            m
        )));
    }
    let n = big.n() / m;
    for bi in 0..m {
        for bj in 0..m {
            let want = small.get(bi, bj);
            for col in 0..n {
                let column: Vec<i64> = (0..n)
                    .map(|row| big.get(bi * n + row, bj * n + col))
                    .collect();
                let nonzero: Vec<i64> = column.into_iter().filter(|&x| x != 0).collect();
                let ok = if want == 0 {
                    nonzero.is_empty()
                } else {
                    nonzero == [want]
                };
                if !ok {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// One exchange: the letter at `position` (in the original word) had its
/// vertex replaced by the deck-equivalent `to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exchange {
    pub position: usize,
    pub from: VertexId,
    pub to: VertexId,
}

/// An exchange certificate: the recorded exchanges and the exchanged word,
/// which is trivial over the augmented total graph (validated).
#[derive(Debug, Clone)]
pub struct ExchangeCertificate {
    pub exchanges: Vec<Exchange>,
    pub word: Word,
}

/// Mirrors the cancellation schedule of the base image of `w`: whenever a
/// base cancellation pairs letters with different preimages, an exchange
/// aligns them. The exchanged word is trivial over the augmented total
/// graph. Requires the base image of `w` to be trivial.
pub fn exchange_witness(
    c: &CoveringMap,
    w: &Word,
) -> Result<ExchangeCertificate, HomologyError> {
    for l in &w.0 {
        c.total.check_vertex(l.vertex)?;
    }
    let down = Word(
        w.0.iter()
            .map(|l| crate::words::Letter::new(c.map_vertex(l.vertex), l.sign))
            .collect(),
    );
    if !reduce(&c.base, &down).is_empty() {
        return Err(HomologyError::NotInKernel);
    }
    let mut letters = w.0.clone();
    let mut alive: Vec<usize> = (0..letters.len()).collect();
    let mut exchanges = Vec::new();
    while !alive.is_empty() {
        // Leftmost cancellable pair of the base projection of the live
        // subword: nearest matching partner, all letters in between
        // base-adjacent to the cancelling vertex (hence commuting both
        // downstairs and over the augmented graph).
        let mut found = None;
        'outer: for (jj, &j) in alive.iter().enumerate() {
            let bj = c.map_vertex(letters[j].vertex);
            for ii in (0..jj).rev() {
                let i = alive[ii];
                let bi = c.map_vertex(letters[i].vertex);
                if bi == bj {
                    if letters[i].sign == -letters[j].sign
                        && alive[ii + 1..jj]
                            .iter()
                            .all(|&k| c.base.adjacent(c.map_vertex(letters[k].vertex), bj))
                    {
                        found = Some((ii, jj));
                        break 'outer;
                    }
                    break;
                }
                if !c.base.adjacent(bi, bj) {
                    break;
                }
            }
        }
        let Some((ii, jj)) = found else {
            return Err(HomologyError::Internal(
                "trivial base word admits no cancellable pair".to_owned(),
            ));
        };
        let (i, j) = (alive[ii], alive[jj]);
        if letters[i].vertex != letters[j].vertex {
            exchanges.push(Exchange {
                position: j,
                from: letters[j].vertex,
                to: letters[i].vertex,
            });
            letters[j].vertex = letters[i].vertex;
        }
        alive.remove(jj);
        alive.remove(ii);
    }
    let word = Word(letters);
    // Stepwise soundness: exchanges stay fiber-wise, and the exchanged word
    // is trivial over the augmented graph.
    for (x, orig) in word.0.iter().zip(&w.0) {
        if c.map_vertex(x.vertex) != c.map_vertex(orig.vertex) || x.sign != orig.sign {
            return Err(HomologyError::Internal(
                "exchange left its deck class".to_owned(),
            ));
        }
    }
    if !reduce(&c.lambda_plus(), &word).is_empty() {
        return Err(HomologyError::Internal(
            "exchanged word is not trivial over the augmented graph".to_owned(),
        ));
    }
    Ok(ExchangeCertificate { exchanges, word })
}

/// The unique deck element μ making `F∘μ` act trivially on first homology,
/// for `F` a lift of the identity. With `must_be_fd` the precondition is
/// verified. Returns `None` only when the base has isolated vertices and the
/// scan is inconclusive.
pub fn fd_torelli_witness(
    c: &CoveringMap,
    cap_f: &AutWord,
    must_be_fd: bool,
) -> Result<Option<Perm>, HomologyError> {
    if must_be_fd && !verify_lift(c, cap_f, &AutWord::empty())? {
        return Err(HomologyError::NotFiberDistortion);
    }
    let mut hits = Vec::new();
    for mu in c.deck_group() {
        let cand = cap_f.compose(&AutWord::singleton(ElementaryAut::Symmetry(mu.clone())));
        if ia_check(&c.total, &cand)? {
            hits.push(mu.clone());
        }
    }
    match hits.len() {
        1 => Ok(Some(hits.into_iter().next().unwrap())),
        0 if c.base.has_isolated_vertex() => Ok(None),
        0 => Err(HomologyError::Internal(
            "no deck element corrects the lift into the Torelli kernel".to_owned(),
        )),
        _ => Err(HomologyError::Internal(
            "several deck elements correct the lift into the Torelli kernel".to_owned(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autos::Side;
    use crate::fixtures::*;
    use crate::liftability::{self, LiftResult};

    fn w(g: &Graph, text: &str) -> Word {
        Word::parse(g, text).unwrap()
    }

    fn canonical(g: &Graph) -> Vec<VertexId> {
        g.vertex_ids().collect()
    }

    #[test]
    fn abelianization_examples() {
        let g = c4();
        let basis = canonical(&g);
        let id = abelianization_matrix(&g, &AutWord::empty(), &basis).unwrap();
        assert!(id.is_identity());
        assert_eq!(id.det(), 1);

        let v = g.vertex("w").unwrap();
        let inv =
            abelianization_matrix(&g, &AutWord::singleton(ElementaryAut::Inversion(v)), &basis)
                .unwrap();
        assert_eq!(inv.get(v, v), -1);
        assert_eq!(inv.det(), -1);

        // w ↦ y·w: identity plus a 1 in (row y, col w).
        let y = g.vertex("y").unwrap();
        let t = AutWord::singleton(ElementaryAut::Transvection {
            target: v,
            multiplier: y,
            side: Side::Left,
            power: 1,
        });
        let m = abelianization_matrix(&g, &t, &basis).unwrap();
        assert_eq!(m.get(y, v), 1);
        assert_eq!(m.get(v, v), 1);
        assert_eq!(m.det(), 1);

        // Functoriality: columns-as-images composes contravariantly in list
        // order (the later-applied factor multiplies on the left).
        let a = AutWord(vec![
            ElementaryAut::Inversion(y),
            ElementaryAut::Transvection {
                target: v,
                multiplier: y,
                side: Side::Right,
                power: -1,
            },
        ]);
        let ma = abelianization_matrix(&g, &a, &basis).unwrap();
        let mt = abelianization_matrix(&g, &t, &basis).unwrap();
        let composed = abelianization_matrix(&g, &t.compose(&a), &basis).unwrap();
        assert_eq!(composed, ma.mul(&mt).unwrap());
    }

    #[test]
    fn ia_examples() {
        let g = notlift_base();
        let inner = AutWord::singleton(ElementaryAut::Inner {
            word: w(&g, "v v1 v^-1"),
            power: 1,
        });
        assert!(ia_check(&g, &inner).unwrap());
        assert!(!ia_check(
            &g,
            &AutWord::singleton(ElementaryAut::Inversion(g.vertex("v").unwrap()))
        )
        .unwrap());

        let c = fix_hex();
        let t = &c.total;
        let comm = AutWord::singleton(ElementaryAut::CommutatorTransvection {
            x: t.vertex("x1").unwrap(),
            y: t.vertex("y1").unwrap(),
            z: t.vertex("z1").unwrap(),
            power: 1,
        });
        assert!(ia_check(t, &comm).unwrap());
    }

    #[test]
    fn deck_bases() {
        // C8 over C4: all classes incomparable, contiguous fibers.
        let c = fix_c8();
        let db = deck_basis(&c, None).unwrap();
        let names: Vec<Vec<&str>> = db
            .classes
            .iter()
            .map(|cl| cl.iter().map(|&u| c.total.name(u)).collect())
            .collect();
        assert_eq!(
            names,
            vec![vec!["1", "5"], vec!["2", "6"], vec!["3", "7"], vec!["4", "8"]]
        );
        assert_eq!(db.order.len(), 8);

        // Identity cover: singleton classes following the vertex order.
        let g = notlift_base();
        let c = CoveringMap::identity(&g);
        let db = deck_basis(&c, None).unwrap();
        assert_eq!(db.order, g.order_vertices());

        // Preferred pair: the class of 3 leads when asked.
        let c = fix_c8();
        let one = c.total.vertex("1").unwrap();
        let three = c.total.vertex("3").unwrap();
        let db = deck_basis(&c, Some((three, one))).unwrap();
        assert!(pos_of(&db, three) < pos_of(&db, one));
        let db = deck_basis(&c, Some((one, three))).unwrap();
        assert!(pos_of(&db, one) < pos_of(&db, three));

        // A dominated preferred vertex is rejected: x sits below y.
        let c = fix_hex();
        let x1 = c.total.vertex("x1").unwrap();
        let y1 = c.total.vertex("y1").unwrap();
        assert!(matches!(
            deck_basis(&c, Some((x1, y1))),
            Err(HomologyError::ComparableVertices(_))
        ));
    }

    fn pos_of(db: &DeckBasis, u: VertexId) -> usize {
        db.order.iter().position(|&x| x == u).unwrap()
    }

    #[test]
    fn sigma_examples() {
        let c = fix_c8();
        assert_eq!(sigma(&c, &Word::empty()).unwrap(), vec![0; 8]);
        let one = w(&c.total, "1");
        let v = sigma(&c, &one).unwrap();
        assert_eq!(v.iter().sum::<i64>(), 1);
        let db = deck_basis(&c, None).unwrap();
        assert_eq!(v[pos_of(&db, c.total.vertex("1").unwrap())], 1);

        let c = fix_hex();
        let comm = w(&c.total, "y1 z1 y1^-1 z1^-1");
        assert_eq!(sigma(&c, &comm).unwrap(), vec![0; 12]);
    }

    #[test]
    fn blowup_examples() {
        // Identity cover: a matrix is a blow up of itself (n = 1).
        let g = c4();
        let basis = canonical(&g);
        let id = IntMatrix::identity(basis);
        assert!(is_blowup(&id, &id).unwrap());

        // C8: the lifted inversion blows up the base inversion.
        let c = fix_c8();
        let db = deck_basis(&c, None).unwrap();
        let base_order = induced_base_order(&c, &db);
        let v = c.base.vertex("w").unwrap();
        let f = AutWord::singleton(ElementaryAut::Inversion(v));
        let LiftResult::Liftable { lift, .. } = liftability::lift_inversion(&c, v).unwrap()
        else {
            panic!();
        };
        let big = abelianization_matrix(&c.total, &lift, &db.order).unwrap();
        let small = abelianization_matrix(&c.base, &f, &base_order).unwrap();
        assert!(is_blowup(&big, &small).unwrap());

        // The deck rotation blows up the base identity (permutation blocks).
        let rot = c.deck_group().iter().find(|p| !p.is_identity()).unwrap();
        let big = abelianization_matrix(
            &c.total,
            &AutWord::singleton(ElementaryAut::Symmetry(rot.clone())),
            &db.order,
        )
        .unwrap();
        let small = IntMatrix::identity(base_order);
        assert!(is_blowup(&big, &small).unwrap());

        // A verified lift of a partial conjugation blows up its (identity)
        // homology matrix.
        let c = fix_notlift();
        let db = deck_basis(&c, None).unwrap();
        let base_order = induced_base_order(&c, &db);
        let vb = c.base.vertex("v").unwrap();
        let both: crate::graph::VertexSet = ["v2", "v2b", "r1", "r2"]
            .iter()
            .map(|n| c.base.vertex(n).unwrap())
            .collect();
        let LiftResult::Liftable { lift, .. } =
            liftability::lift_partial_conj(&c, vb, &both).unwrap()
        else {
            panic!();
        };
        let f = AutWord::singleton(ElementaryAut::PartialConj {
            vertex: vb,
            component: both,
            power: 1,
        });
        let big = abelianization_matrix(&c.total, &lift, &db.order).unwrap();
        let small = abelianization_matrix(&c.base, &f, &base_order).unwrap();
        assert!(is_blowup(&big, &small).unwrap());
    }

    #[test]
    fn exchange_reduction() {
        // Already trivial upstairs: no exchanges.
        let c = fix_c8();
        let cert = exchange_witness(&c, &w(&c.total, "1 2 2^-1 1^-1")).unwrap();
        assert!(cert.exchanges.is_empty());

        // Same fiber, different sheets: one exchange aligns the pair.
        let cert = exchange_witness(&c, &w(&c.total, "1 5^-1")).unwrap();
        assert_eq!(cert.exchanges.len(), 1);
        assert_eq!(cert.exchanges[0].position, 1);
        assert_eq!(cert.exchanges[0].from, c.total.vertex("5").unwrap());
        assert_eq!(cert.exchanges[0].to, c.total.vertex("1").unwrap());

        // Hexagon: one exchange, then commutation over the augmented graph.
        let c = fix_hex();
        let cert = exchange_witness(&c, &w(&c.total, "y1 z1 y1^-1 z2^-1")).unwrap();
        assert_eq!(
            cert.exchanges,
            vec![Exchange {
                position: 3,
                from: c.total.vertex("z2").unwrap(),
                to: c.total.vertex("z1").unwrap(),
            }]
        );

        // Nontrivial base image is rejected.
        assert!(matches!(
            exchange_witness(&c, &w(&c.total, "y1 z1")),
            Err(HomologyError::NotInKernel)
        ));
    }

    #[test]
    fn torelli_witnesses() {
        // An inner by a kernel element: corrected by the identity.
        let c = fix_c8();
        let inner = AutWord::singleton(ElementaryAut::Inner {
            word: w(&c.total, "1 5^-1"),
            power: 1,
        });
        let mu = fd_torelli_witness(&c, &inner, true).unwrap().unwrap();
        assert!(mu.is_identity());

        // The hexagon commutator transvection is already Torelli.
        let c = fix_hex();
        let comm = AutWord::singleton(ElementaryAut::CommutatorTransvection {
            x: c.total.vertex("x1").unwrap(),
            y: c.total.vertex("y1").unwrap(),
            z: c.total.vertex("z1").unwrap(),
            power: 1,
        });
        let mu = fd_torelli_witness(&c, &comm, true).unwrap().unwrap();
        assert!(mu.is_identity());

        // The deck half-turn is corrected by itself.
        let half = c
            .deck_group()
            .iter()
            .find(|p| !p.is_identity())
            .unwrap()
            .clone();
        let f = AutWord::singleton(ElementaryAut::Symmetry(half.clone()));
        let mu = fd_torelli_witness(&c, &f, true).unwrap().unwrap();
        assert_eq!(mu, half);

        // A non-lift-of-identity is rejected under must_be_fd.
        let inv = AutWord::singleton(ElementaryAut::Inversion(c.total.vertex("x1").unwrap()));
        assert!(matches!(
            fd_torelli_witness(&c, &inv, true),
            Err(HomologyError::NotFiberDistortion)
        ));
    }
}
