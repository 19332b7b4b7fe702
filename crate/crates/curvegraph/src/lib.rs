//! Exact combinatorics for finite graphs, right-angled Artin group words,
//! and simple closed curves on punctured surfaces.
//!
//! The crate is organized around five areas:
//!
//! * [`graph`] — finite simplicial graphs, a catalog of named graphs,
//!   predicates (complement, join, anti-connectedness, cliques, thick
//!   stars), and an exhaustive induced-subgraph search.
//! * [`words`] — word algebra in right-angled Artin groups: canonical
//!   normal forms, homomorphisms, ball enumeration, and kernel checks on
//!   balls.
//! * [`curves`] — free-homotopy classes of curves on punctured surfaces,
//!   exact geometric intersection numbers, mapping-class orbit
//!   enumeration, and finite curve-graph samples.
//! * [`complexes`] — pure simplicial complexes, vertex links, and the
//!   thick-star/link-size equivalence check for triangulations.
//! * [`decomposition`] — the complexity-accounting enumeration of
//!   two-sided surface decompositions and its case classification.

pub mod complexes;
pub mod curves;
pub mod decomposition;
pub mod graph;
pub mod words;
