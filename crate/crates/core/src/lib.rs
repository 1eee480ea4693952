//! Liftability of right-angled Artin group automorphisms along regular graph
//! covering maps: word-problem machinery, elementary automorphisms and their
//! decompositions, covering-space combinatorics, lift construction and
//! verification, and the induced action on first homology.

pub mod autos;
pub mod covering;
pub mod fixtures;
pub mod graph;
pub mod homology;
pub mod liftability;
pub mod sampling;
pub mod words;
