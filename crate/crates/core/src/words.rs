//! The RAAG word problem: reduction to a canonical normal form, cyclic
//! reduction, supports, word links, the centralizer decomposition, rank, and a
//! brute-force BFS oracle used by the test suites.

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexId, VertexSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("operation requires a nonempty word")]
    EmptyWord,
    #[error("oracle budget exceeded: combined length {0} > {1}")]
    BudgetExceeded(usize, usize),
    #[error("letter {0}^{1} is not extractable")]
    NotExtractable(String, i8),
    #[error("cannot parse word token `{0}`")]
    BadToken(String),
}

/// One signed generator occurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub vertex: VertexId,
    pub sign: i8,
}

impl Letter {
    pub fn new(vertex: VertexId, sign: i8) -> Self {
        assert!(sign == 1 || sign == -1);
        Letter { vertex, sign }
    }

    pub fn inverse(self) -> Self {
        Letter {
            vertex: self.vertex,
            sign: -self.sign,
        }
    }
}

/// A word in the generators of a RAAG; unreduced words are allowed. The
/// ambient graph is passed to each operation explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn generator(v: VertexId) -> Self {
        Word(vec![Letter::new(v, 1)])
    }

    pub fn from_letters(letters: impl IntoIterator<Item = (VertexId, i8)>) -> Self {
        Word(letters.into_iter().map(|(v, s)| Letter::new(v, s)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Parses the word text syntax: whitespace-separated `name`, `name^-1`, or
    /// `name^k` tokens; the empty string is the identity.
    pub fn parse(g: &Graph, text: &str) -> Result<Word, WordError> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let (name, exp) = match token.split_once('^') {
                Some((name, e)) => {
                    let e: i64 = e.parse().map_err(|_| WordError::BadToken(token.to_owned()))?;
                    (name, e)
                }
                None => (token, 1),
            };
            if name.is_empty() {
                return Err(WordError::BadToken(token.to_owned()));
            }
            let v = g.vertex(name)?;
            let sign = if exp < 0 { -1 } else { 1 };
            for _ in 0..exp.unsigned_abs() {
                letters.push(Letter::new(v, sign));
            }
        }
        Ok(Word(letters))
    }

    /// Formats a word in the same syntax `parse` accepts, merging runs of one
    /// letter into `name^k` tokens.
    pub fn format(&self, g: &Graph) -> String {
        let mut out: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            let run = (j - i) as i64 * l.sign as i64;
            if run == 1 {
                out.push(g.name(l.vertex).to_owned());
            } else {
                out.push(format!("{}^{}", g.name(l.vertex), run));
            }
            i = j;
        }
        out.join(" ")
    }
}

fn commutes(g: &Graph, a: VertexId, b: VertexId) -> bool {
    a != b && g.adjacent(a, b)
}

/// Deletes inverse pairs `v^e … v^{-e}` whose intervening letters all commute
/// with `v`, to fixpoint. The result is reduced but not yet canonical.
fn cancel_to_fixpoint(g: &Graph, letters: &mut Vec<Letter>) {
    'outer: loop {
        for i in 0..letters.len() {
            let a = letters[i];
            for j in i + 1..letters.len() {
                let b = letters[j];
                if b.vertex == a.vertex {
                    if b.sign == -a.sign {
                        letters.remove(j);
                        letters.remove(i);
                        continue 'outer;
                    }
                    break;
                }
                if !g.adjacent(a.vertex, b.vertex) {
                    break;
                }
            }
        }
        return;
    }
}

/// Greedy leftmost-lex linearization of a reduced word: repeatedly emit the
/// least extractable letter (vertex order, `+` before `-`).
fn linearize(g: &Graph, mut letters: Vec<Letter>) -> Vec<Letter> {
    let mut out = Vec::with_capacity(letters.len());
    while !letters.is_empty() {
        let mut best: Option<usize> = None;
        for (i, &l) in letters.iter().enumerate() {
            if letters[..i].iter().all(|p| commutes(g, p.vertex, l.vertex)) {
                let better = match best {
                    None => true,
                    Some(b) => {
                        let key = |x: Letter| (x.vertex, if x.sign > 0 { 0 } else { 1 });
                        key(l) < key(letters[b])
                    }
                };
                if better {
                    best = Some(i);
                }
            }
        }
        let i = best.expect("front letter is always extractable");
        out.push(letters.remove(i));
    }
    out
}

/// Reduces `w` to the canonical normal form of its group element: exhaustive
/// cancellation followed by greedy leftmost-lex linearization.
pub fn reduce(g: &Graph, w: &Word) -> Word {
    let mut letters = w.0.clone();
    cancel_to_fixpoint(g, &mut letters);
    Word(linearize(g, letters))
}

/// Word-problem decision: true iff `w1` and `w2` represent the same element.
pub fn equals(g: &Graph, w1: &Word, w2: &Word) -> bool {
    reduce(g, &w1.concat(&w2.inverse())).is_empty()
}

/// `w = conjugator · core · conjugator^{-1}` with `core` cyclically reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicDecomposition {
    pub conjugator: Word,
    pub core: Word,
}

/// Index of an occurrence of some letter that can be shuffled to the front.
fn front_extractable(g: &Graph, letters: &[Letter], want: Letter) -> Option<usize> {
    for (i, &l) in letters.iter().enumerate() {
        if l == want && letters[..i].iter().all(|p| commutes(g, p.vertex, l.vertex)) {
            return Some(i);
        }
        if l.vertex == want.vertex {
            return None;
        }
    }
    None
}

fn back_extractable(g: &Graph, letters: &[Letter], want: Letter) -> Option<usize> {
    for i in (0..letters.len()).rev() {
        let l = letters[i];
        if l == want && letters[i + 1..].iter().all(|p| commutes(g, p.vertex, l.vertex)) {
            return Some(i);
        }
        if l.vertex == want.vertex {
            return None;
        }
    }
    None
}

/// Conjugacy normal form: strips front/back inverse pairs until the core has
/// minimal length within the conjugacy class.
pub fn cyclic_reduce(g: &Graph, w: &Word) -> CyclicDecomposition {
    let mut letters = reduce(g, w).0;
    let mut conjugator = Vec::new();
    'outer: loop {
        let vertices: VertexSet = letters.iter().map(|l| l.vertex).collect();
        for &v in &vertices {
            for sign in [1, -1] {
                let front = Letter::new(v, sign);
                if let Some(i) = front_extractable(g, &letters, front) {
                    if let Some(j) = back_extractable(g, &letters, front.inverse()) {
                        if i != j {
                            letters.remove(j);
                            letters.remove(i);
                            conjugator.push(front);
                            continue 'outer;
                        }
                    }
                }
            }
        }
        break;
    }
    CyclicDecomposition {
        conjugator: reduce(g, &Word(conjugator)),
        core: reduce(g, &Word(letters)),
    }
}

/// Vertices appearing in the reduced form of `w`.
pub fn supp(g: &Graph, w: &Word) -> VertexSet {
    reduce(g, w).0.iter().map(|l| l.vertex).collect()
}

/// Vertices appearing in a cyclically reduced form of `w`.
pub fn esupp(g: &Graph, w: &Word) -> VertexSet {
    cyclic_reduce(g, w).core.0.iter().map(|l| l.vertex).collect()
}

/// Vertices adjacent to every vertex of `esupp(w)`, excluding `esupp(w)`
/// itself. For the empty word this is the whole vertex set.
pub fn word_link(g: &Graph, w: &Word) -> VertexSet {
    let es = esupp(g, w);
    g.vertex_ids()
        .filter(|&u| !es.contains(&u) && es.iter().all(|&v| g.adjacent(u, v)))
        .collect()
}

/// One pure factor of a centralizer decomposition: `primitive_word^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralizerFactor {
    pub primitive_word: Word,
    pub exponent: i64,
}

/// The data of Servatius' centralizer theorem for a cyclically reduced core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralizerData {
    pub factors: Vec<CentralizerFactor>,
    pub link: VertexSet,
}

/// Splits the cyclically reduced core of `w` into its pure factors: supports
/// are the components of the non-commutation graph on `esupp`, and each
/// factor is the maximal power of a primitive word.
pub fn centralizer_decomposition(g: &Graph, w: &Word) -> Result<CentralizerData, WordError> {
    let core = cyclic_reduce(g, w).core;
    if core.is_empty() {
        return Err(WordError::EmptyWord);
    }
    let support: Vec<VertexId> = {
        let s: VertexSet = core.0.iter().map(|l| l.vertex).collect();
        s.into_iter().collect()
    };
    // Components of the non-commutation graph: support vertices related iff
    // they do not commute in the ambient graph.
    let mut part_of: Vec<usize> = (0..support.len()).collect();
    fn find(part_of: &mut Vec<usize>, i: usize) -> usize {
        if part_of[i] != i {
            let r = find(part_of, part_of[i]);
            part_of[i] = r;
            r
        } else {
            i
        }
    }
    for i in 0..support.len() {
        for j in i + 1..support.len() {
            if !g.adjacent(support[i], support[j]) {
                let (ri, rj) = (find(&mut part_of, i), find(&mut part_of, j));
                part_of[ri] = rj;
            }
        }
    }
    let mut roots: Vec<usize> = (0..support.len())
        .map(|i| find(&mut part_of, i))
        .collect();
    let mut seen = Vec::new();
    let mut factors = Vec::new();
    for r in roots.clone() {
        if seen.contains(&r) {
            continue;
        }
        seen.push(r);
        let part: VertexSet = support
            .iter()
            .zip(roots.iter_mut())
            .filter(|(_, root)| **root == r)
            .map(|(&v, _)| v)
            .collect();
        let sub = Word(
            core.0
                .iter()
                .copied()
                .filter(|l| part.contains(&l.vertex))
                .collect(),
        );
        factors.push(primitive_root(g, &sub));
    }
    // Deterministic order: by least support vertex.
    factors.sort_by_key(|f| f.primitive_word.0.iter().map(|l| l.vertex).min());
    Ok(CentralizerData {
        factors,
        link: word_link(g, &core),
    })
}

/// Extracts the maximal-power form `sub = p^d` with `p` primitive, by the
/// divisor test on the letter count. The exponent carries the sign of the
/// leading letter.
fn primitive_root(g: &Graph, sub: &Word) -> CentralizerFactor {
    let n = sub.len();
    debug_assert!(n > 0);
    for d in (2..=n).rev() {
        if n % d != 0 {
            continue;
        }
        let prefix = Word(sub.0[..n / d].to_vec());
        if equals(g, &prefix.pow(d as i64), sub) {
            return signed_factor(prefix, d as i64);
        }
    }
    signed_factor(sub.clone(), 1)
}

fn signed_factor(p: Word, d: i64) -> CentralizerFactor {
    if p.0[0].sign < 0 {
        CentralizerFactor {
            primitive_word: p.inverse(),
            exponent: -d,
        }
    } else {
        CentralizerFactor {
            primitive_word: p,
            exponent: d,
        }
    }
}

/// Rank of the first homology of the centralizer: number of pure factors plus
/// the size of the word link.
pub fn rank(g: &Graph, w: &Word) -> Result<usize, WordError> {
    let data = centralizer_decomposition(g, w)?;
    Ok(data.factors.len() + data.link.len())
}

/// True iff `w` is conjugate to the generator `v` itself (sign matters).
pub fn is_conjugate_to_generator(g: &Graph, w: &Word, v: VertexId) -> Result<bool, WordError> {
    g.check_vertex(v)?;
    let core = cyclic_reduce(g, w).core;
    Ok(core.0 == vec![Letter::new(v, 1)])
}

pub const BFS_ORACLE_BUDGET: usize = 10;

/// Independent ground-truth equality: breadth-first search over single
/// commuting swaps and adjacent inverse-pair cancellations on `w1 · w2^{-1}`.
pub fn bfs_oracle_equals(
    g: &Graph,
    w1: &Word,
    w2: &Word,
    budget: usize,
) -> Result<bool, WordError> {
    let start = w1.concat(&w2.inverse());
    if start.len() > budget {
        return Err(WordError::BudgetExceeded(start.len(), budget));
    }
    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    let mut queue: VecDeque<Vec<Letter>> = VecDeque::new();
    seen.insert(start.0.clone());
    queue.push_back(start.0);
    while let Some(cur) = queue.pop_front() {
        if cur.is_empty() {
            return Ok(true);
        }
        for i in 0..cur.len() - 1 {
            let (a, b) = (cur[i], cur[i + 1]);
            if a.vertex == b.vertex && a.sign == -b.sign {
                let mut next = cur.clone();
                next.remove(i + 1);
                next.remove(i);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
            if commutes(g, a.vertex, b.vertex) {
                let mut next = cur.clone();
                next.swap(i, i + 1);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(false)
}
